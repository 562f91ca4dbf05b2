"""Shared hypothesis strategies, seeded random generators, and independent
oracles used across the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from shamsuddin import (
    Derivation,
    MultiPoly,
    QMatrix,
    TriangularDerivation,
    UniPoly,
    degree_bound,
    mat_solve_affine,
    normalize,
)
from shamsuddin.polynomials import NEG_INF

# -- hypothesis strategies ----------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-4, max_value=4)


def unipolys(max_deg: int = 4, coeffs=rationals):
    return st.lists(coeffs, min_size=0, max_size=max_deg + 1).map(UniPoly.from_coeffs)


@st.composite
def multipolys(draw, arity: int | None = None, max_arity: int = 3, max_deg: int = 3, max_terms: int = 6):
    n = arity if arity is not None else draw(st.integers(0, max_arity))
    exps = st.tuples(*([st.integers(0, max_deg)] * (n + 1)))
    terms = draw(st.lists(st.tuples(exps, rationals), max_size=max_terms))
    return MultiPoly(n, terms)


@st.composite
def derivations(draw, max_arity: int = 3, max_deg: int = 2):
    n = draw(st.integers(1, max_arity))
    pairs = [(draw(unipolys(max_deg)), draw(unipolys(max_deg))) for _ in range(n)]
    return normalize(pairs)


@st.composite
def q_matrices(draw, max_rows: int = 4, max_cols: int = 4, coeffs=small_ints):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(
        st.lists(
            st.lists(coeffs, min_size=cols, max_size=cols), min_size=rows, max_size=rows
        )
    )
    return QMatrix(entries, cols=cols)


# -- seeded plain-random generators (for fixed-size corpora) -------------------


def rand_unipoly(rng: random.Random, max_deg: int = 3, lo: int = -3, hi: int = 3, allow_zero: bool = True) -> UniPoly:
    deg = rng.randint(-1 if allow_zero else 0, max_deg)
    if deg < 0:
        return UniPoly.zero()
    nonzero = [c for c in range(lo, hi + 1) if c]
    coeffs = {deg: rng.choice(nonzero)}
    for d in range(deg):
        coeffs[d] = rng.randint(lo, hi)
    return UniPoly(coeffs)


def rand_derivation(rng: random.Random, max_arity: int = 4, max_deg: int = 3) -> Derivation:
    n = rng.randint(1, max_arity)
    return normalize([(rand_unipoly(rng, max_deg), rand_unipoly(rng, max_deg)) for _ in range(n)])


def rand_multipoly_in_prefix(
    rng: random.Random, arity: int, prefix: int, max_x_deg: int = 2, max_y_deg: int = 1, terms: int = 3
) -> MultiPoly:
    """Random polynomial in x and y1..y<prefix> inside the full ring."""
    out: dict[tuple[int, ...], int] = {}
    for _ in range(rng.randint(0, terms)):
        exps = [0] * (arity + 1)
        exps[0] = rng.randint(0, max_x_deg)
        for j in range(1, prefix + 1):
            exps[j] = rng.randint(0, max_y_deg)
        out[tuple(exps)] = rng.randint(-3, 3)
    return MultiPoly(arity, out.items())


def rand_triangular(rng: random.Random, constant_a: bool, max_arity: int = 3) -> TriangularDerivation:
    n = rng.randint(1, max_arity)
    a = [UniPoly.constant(rng.randint(-2, 2)) for _ in range(n)]
    if not constant_a:
        i0 = rng.randrange(n)
        deg = rng.randint(1, 2)
        coeffs = {deg: rng.choice([-2, -1, 1, 2])}
        for d in range(deg):
            coeffs[d] = rng.randint(-2, 2)
        a[i0] = UniPoly(coeffs)
    b = [rand_multipoly_in_prefix(rng, n, j) for j in range(n)]
    return TriangularDerivation(n, tuple(a), tuple(b))


# -- independent oracles --------------------------------------------------------


def ode_rows_oracle(a: UniPoly, bs, z_cap: int):
    """Coefficient rows of z' - a z - sum_j k_j b_j over (k, z_0..z_cap),
    written directly from the definition (kept separate from the library's
    row builder on purpose)."""
    r = len(bs)
    deg_a = int(a.degree) if not a.is_zero else -1
    top = max(
        [z_cap + deg_a, z_cap - 1]
        + [int(b.degree) for b in bs if not b.is_zero]
        + [0]
    )
    rows = []
    for d in range(top + 1):
        row = [Fraction(0)] * (r + z_cap + 1)
        for j, b in enumerate(bs):
            row[j] = -b.coeff(d)
        if d + 1 <= z_cap:
            row[r + d + 1] += d + 1
        for i in range(min(d, z_cap) + 1):
            row[r + i] -= a.coeff(d - i)
        rows.append(row)
    return rows


def brute_ode_solutions(a: UniPoly, c: UniPoly, extra: int = 6):
    """All polynomial solutions of z' = a z + c by generic-coefficient
    enumeration with degree headroom: (particular, homogeneous_dim) or None."""
    if c.is_zero and a.is_zero:
        cap = extra
    elif a.is_zero:
        cap = int(c.degree) + 1 + extra
    elif c.is_zero:
        cap = extra
    elif a.degree == 0:
        cap = int(c.degree) + extra
    else:
        cap = max(0, int(c.degree - a.degree)) + extra
    rows = ode_rows_oracle(a, [c], cap)
    matrix = QMatrix([row[1:] for row in rows], cols=cap + 1)
    rhs = [-row[0] for row in rows]
    space = mat_solve_affine(matrix, rhs)
    if space is None:
        return None
    return UniPoly(enumerate(space.particular)), len(space.basis)


def brute_param_nullspace(a: UniPoly, bs, extra: int = 5):
    """Nullspace basis of the parametric system at degree_bound + extra."""
    bound = degree_bound(a, list(bs))
    cap = (bound if bound is not None else -1) + extra
    rows = ode_rows_oracle(a, bs, cap)
    return QMatrix(rows, cols=len(bs) + cap + 1).nullspace(), cap


def exhaustive_nonneg_kernel(matrix: QMatrix, max_entry: int = 5):
    """Smallest nonzero gamma >= 0 with A gamma = 0 and entries <= max_entry,
    by full enumeration.  Conclusive only in the positive direction: a miss
    does not rule out witnesses with larger entries."""
    n = matrix.cols
    for gamma in itertools.product(range(max_entry + 1), repeat=n):
        if any(gamma) and not any(matrix.matvec(gamma)):
            return gamma
    return None


def basic_nonneg_kernel(matrix: QMatrix):
    """Complete exact decision of {gamma >= 0, A gamma = 0, gamma != 0} by
    enumerating basic solutions of {A gamma = 0, sum gamma = 1, gamma >= 0}:
    if the polytope is nonempty it has a vertex, and every vertex is the
    unique solution supported on some linearly independent column set."""
    n = matrix.cols
    rows = matrix.row_list()
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            sub_rows = [[row[j] for j in support] for row in rows]
            sub_rows.append([Fraction(1)] * size)
            sub = QMatrix(sub_rows, cols=size)
            rhs = [0] * len(rows) + [1]
            space = sub.solve_affine(rhs)
            if space is not None and not space.basis and all(v >= 0 for v in space.particular):
                gamma = [Fraction(0)] * n
                for j, v in zip(support, space.particular):
                    gamma[j] = v
                return tuple(gamma)
    return None


def affine_space_contains(space, point) -> bool:
    """Exact membership test: point - particular must lie in span(basis)."""
    from shamsuddin import rref_rows

    shifted = [p - q for p, q in zip(point, space.particular)]
    if not any(shifted):
        return True
    base = rref_rows(space.basis)
    return rref_rows(list(space.basis) + [shifted]) == base


def fraction_rref_rank(matrix: QMatrix) -> int:
    """Rank by plain fraction Gauss-Jordan, independent of the Bareiss path."""
    rows = matrix.row_list()
    rank = 0
    for c in range(matrix.cols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        piv = rows[rank][c]
        rows[rank] = [v / piv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [u - f * w for u, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


assert NEG_INF < 0  # degree marker sanity for the oracles above
