"""Decision procedures for simplicity, isotropy, local finiteness, and the
image classification of Shamsuddin derivations over Q.

Simplicity of a block with coefficient a(x) and inhomogeneous parts b_j(x)
reduces to the parametric ODE z' = a z + sum_j k_j b_j: the block is simple
exactly when no nonzero weight vector k admits a polynomial solution.  A
solution pair (k, z) converts into an explicit non-identity automorphism
commuting with the derivation, and conversely triviality of the commutant is
equivalent to simplicity, block by block.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .derivations import Block, Derivation, TriangularDerivation, apply_derivation
from .endos import AffineEndo, PolyEndo, affine_is_automorphism, affine_to_endo, commutes
from .linalg import AffineSpace, QMatrix, nonneg_kernel_witness
from .ode import degree_bound, has_nonzero_k_solution, solve_parametric
from .polynomials import MultiPoly, Rational, UniPoly

#: solution pair of the parametric ODE: weights k and the polynomial z
Witness = tuple[tuple[Rational, ...], UniPoly]

#: fixed scale for witness automorphisms; any value other than 0 and 1 works,
#: and pinning it keeps all outputs deterministic
WITNESS_SCALE = Fraction(2)


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    per_block: tuple[tuple[int, Witness | None], ...]


def is_simple_block(a: UniPoly, bs: Sequence[UniPoly]) -> tuple[bool, Witness | None]:
    """Decide simplicity of one block; a witness (k, z) certifies failure."""
    found = has_nonzero_k_solution(solve_parametric(a, list(bs)))
    return (found is None), found


def is_simple(d: Derivation) -> SimplicityVerdict:
    """A derivation is simple iff every block is."""
    reports = []
    for i, blk in enumerate(d.blocks):
        _, witness = is_simple_block(blk.a, blk.bs)
        reports.append((i, witness))
    return SimplicityVerdict(all(w is None for _, w in reports), tuple(reports))


def isotropy_is_trivial(d: Derivation) -> bool:
    """The commutant of d inside the automorphism group is trivial iff d is
    simple; the refutation direction is constructive via isotropy_witness."""
    return is_simple(d).simple


# -- witness construction ----------------------------------------------------


def _block_witness_endo(blk: Block, witness: Witness | None) -> PolyEndo:
    """A non-identity automorphism of the block's own ring, fixing x and
    commuting with the block derivation.

    Preference order: scale one variable whose b vanishes; for a = 0 move
    along the antiderivative family; otherwise mix the ODE solution into the
    first weighted coordinate.
    """
    r = blk.size
    e = WITNESS_SCALE
    for j, b in enumerate(blk.bs, start=1):
        if b.is_zero:
            images = [MultiPoly.y(r, t) for t in range(1, r + 1)]
            images[j - 1] = images[j - 1] * e
            return PolyEndo(MultiPoly.x(r), tuple(images))
    if blk.a.is_zero:
        h1 = blk.bs[0].integral()
        images = [MultiPoly.y(r, t) for t in range(1, r + 1)]
        images[0] = images[0] * e - h1.lift(r) * (e - 1)
        return PolyEndo(MultiPoly.x(r), tuple(images))
    assert witness is not None, "non-simple block with a != 0 must carry an ODE witness"
    k, z = witness
    j0 = next(j for j, kj in enumerate(k) if kj)
    assert k[j0] == 1
    img = MultiPoly.y(r, j0 + 1) * (1 - e) + z.lift(r) * e
    for j, kj in enumerate(k):
        if j != j0 and kj:
            img = img - MultiPoly.y(r, j + 1) * (e * kj)
    images = [MultiPoly.y(r, t) for t in range(1, r + 1)]
    images[j0] = img
    return PolyEndo(MultiPoly.x(r), tuple(images))


def isotropy_witness(d: Derivation) -> PolyEndo | None:
    """A verified non-identity automorphism commuting with d, or None when d
    is simple.  The witness acts inside one non-simple block and is extended
    by the identity on all other variables."""
    verdict = is_simple(d)
    if verdict.simple:
        return None
    index, witness = next((i, w) for i, w in verdict.per_block if w is not None)
    local = _block_witness_endo(d.blocks[index], witness)
    rho = embed_block_endo(d, index, local)
    assert not rho.is_identity and commutes(rho, d)
    return rho


def embed_block_endo(d: Derivation, block_index: int, rho_block: PolyEndo) -> PolyEndo:
    """Extend an x-fixing endomorphism of one block's ring by the identity on
    every other variable.  If rho_block commutes with the block's own
    derivation, the extension commutes with the full one."""
    blk = d.blocks[block_index]
    r = blk.size
    if rho_block.arity != r:
        raise ValueError(f"block endo arity {rho_block.arity}, block size {r}")
    if rho_block.image_of_x != MultiPoly.x(r):
        raise ValueError("block endo must fix x")
    n = d.arity
    mapping = {local: blk.var_indices[local - 1] for local in range(1, r + 1)}
    images = [MultiPoly.y(n, j) for j in range(1, n + 1)]
    for local in range(1, r + 1):
        images[mapping[local] - 1] = rho_block.images_of_y[local - 1].remap_y(n, mapping)
    return PolyEndo(MultiPoly.x(n), tuple(images))


# -- isotropy description ----------------------------------------------------


class IsotropyCase(Enum):
    A_ZERO = "a_zero"
    A_CONST = "a_constant"
    A_DEG_GE_1 = "deg_a_ge_1"


@dataclass(frozen=True)
class IsotropyDescription:
    """Parametrization of the commuting automorphisms of a single block.

    a = 0: the full family is x -> x + p(w1..wr), y_t -> h_t(x + p) + q_t(w),
    where w_t = y_t - h_t(x), h_t is the antiderivative of b_t, p is any
    polynomial in the w's and (x + p, q_1..q_r) is any automorphism; h is
    stored here and (p, q) stay free slots.

    a != 0: every member is affine, x -> x + c and y_t -> sum_j C[t][j] y_j
    + g_t(x); the shift c is forced to 0 when deg a >= 1 and is a free
    parameter when a is a nonzero constant.  For a fixed shift, row t of
    (C, g) ranges over an affine solution space with unknowns
    (C[t][1..r], coefficients of g_t), computed exactly; membership
    additionally requires det C != 0.
    """

    case: IsotropyCase
    a: UniPoly
    bs: tuple[UniPoly, ...]
    shift_forced_zero: bool
    h: tuple[UniPoly, ...] | None
    rows_at_zero: tuple[AffineSpace, ...] | None
    g_bound: int | None

    @property
    def arity(self) -> int:
        return len(self.bs)

    def row_spaces(self, c: Rational | int = 0) -> tuple[AffineSpace, ...]:
        """Affine row spaces of (C-row, g coefficients) at the given shift."""
        c = Fraction(c)
        if c and self.shift_forced_zero:
            raise ValueError("shift is forced to 0 for this block")
        if not c and self.rows_at_zero is not None:
            return self.rows_at_zero
        return _iso_row_spaces(self.a, self.bs, c)


def _iso_row_spaces(a: UniPoly, bs: Sequence[UniPoly], c: Fraction) -> tuple[AffineSpace, ...]:
    """Per-row solution spaces of g' = a g + b_t(x+c) - sum_j C[t][j] b_j.

    Unknowns are (C[t][1..r], g_0..g_B) with B the exact degree bound; each
    row is consistent (the identity row solves it at c = 0, integration or the
    invertible constant-coefficient system settle the other cases)."""
    r = len(bs)
    bound = degree_bound(a, list(bs))
    nz = 0 if bound is None else bound + 1
    deg_a = int(a.degree) if not a.is_zero else 0
    top = max(
        [nz - 1 + deg_a if nz else 0]
        + [int(b.degree) for b in bs if not b.is_zero]
    )
    spaces = []
    for t in range(r):
        target = bs[t].shift(c)
        rows, rhs = [], []
        for deg in range(top + 1):
            row = [b.coeff(deg) for b in bs]
            for i in range(nz):
                coeff = Fraction(0)
                if i == deg + 1:
                    coeff += i
                if deg >= i:
                    coeff -= a.coeff(deg - i)
                row.append(coeff)
            rows.append(row)
            rhs.append(target.coeff(deg))
        space = QMatrix(rows, cols=r + nz).solve_affine(rhs)
        assert space is not None, "isotropy row system is always consistent"
        spaces.append(space)
    return tuple(spaces)


def isotropy_describe_block(a: UniPoly, bs: Sequence[UniPoly]) -> IsotropyDescription:
    """Structured description of the commuting automorphisms of one block."""
    bs = tuple(bs)
    if a.is_zero:
        return IsotropyDescription(
            IsotropyCase.A_ZERO,
            a,
            bs,
            shift_forced_zero=False,
            h=tuple(b.integral() for b in bs),
            rows_at_zero=None,
            g_bound=degree_bound(a, list(bs)),
        )
    if a.degree == 0:
        return IsotropyDescription(
            IsotropyCase.A_CONST,
            a,
            bs,
            shift_forced_zero=False,
            h=None,
            rows_at_zero=None,
            g_bound=degree_bound(a, list(bs)),
        )
    return IsotropyDescription(
        IsotropyCase.A_DEG_GE_1,
        a,
        bs,
        shift_forced_zero=True,
        h=None,
        rows_at_zero=_iso_row_spaces(a, bs, Fraction(0)),
        g_bound=degree_bound(a, list(bs)),
    )


def sample_isotropy_element(
    desc: IsotropyDescription, seed: int = 0, attempts: int = 32
) -> AffineEndo | PolyEndo | None:
    """Draw one member of the described family, seeded and verified.

    Affine cases reject draws with singular C and return None only if every
    attempt is singular.  The a = 0 case samples the antiderivative family
    with p constant and q affine, which is always invertible.
    """
    rng = random.Random(seed)
    r = desc.arity
    block = Derivation(r, (Block(desc.a, desc.bs, tuple(range(1, r + 1))),))
    if desc.case is IsotropyCase.A_ZERO:
        assert desc.h is not None
        shift = Fraction(rng.randint(-2, 2))
        f = MultiPoly.x(r) + MultiPoly.const(r, shift)
        images = []
        for t in range(1, r + 1):
            scale = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
            offset = Fraction(rng.randint(-2, 2))
            ht = desc.h[t - 1]
            wbar = MultiPoly.y(r, t) - ht.lift(r)
            images.append(ht.compose(f) + wbar * scale + MultiPoly.const(r, offset))
        rho = PolyEndo(f, tuple(images))
        assert commutes(rho, block)
        return rho
    for _ in range(attempts):
        c = Fraction(0) if desc.shift_forced_zero else Fraction(rng.randint(-3, 3))
        spaces = desc.row_spaces(c)
        c_rows, gs = [], []
        for space in spaces:
            weights = [rng.randint(-2, 2) for _ in range(space.dim)]
            point = space.point(weights)
            c_rows.append(point[:r])
            gs.append(UniPoly(enumerate(point[r:])))
        matrix = QMatrix(c_rows, cols=r)
        candidate = AffineEndo(c, matrix, tuple(gs))
        if not affine_is_automorphism(candidate):
            continue
        assert commutes(affine_to_endo(candidate), block)
        return candidate
    return None


# -- local finiteness and image classification --------------------------------


def is_locally_finite(d: TriangularDerivation) -> bool:
    """Locally finite iff every a_j is constant."""
    return all(aj.degree <= 0 for aj in d.a)


def nat_dependence_witness(a_list: Sequence[UniPoly]) -> tuple[int, ...] | None:
    """Nonzero gamma in N^n with sum_j gamma_j a_j = 0, or None.

    Rows of the decision matrix are indexed by powers of x, columns by j."""
    if not a_list:
        return None
    degrees = [int(a.degree) for a in a_list if not a.is_zero]
    top = max(degrees) if degrees else -1
    rows = [[a.coeff(deg) for a in a_list] for deg in range(top + 1)]
    return nonneg_kernel_witness(QMatrix(rows, cols=len(a_list)))


class MzTag(Enum):
    IS_MZ = "IS_MZ"
    NOT_MZ = "NOT_MZ"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class MzVerdict:
    tag: MzTag
    reason: str
    gamma: tuple[int, ...] | None = None


def mz_classify(d: Derivation) -> MzVerdict:
    """Classify the image of d as a Mathieu-Zhao subspace of the ring.

    All a_j constant: the derivation is locally finite and 1 = D(x) lies in
    the image, hence IS_MZ.  Some deg a_j >= 1 with no nonzero dependence of
    the a_j over the nonnegative integers: a distinguished variable has no
    preimage, hence NOT_MZ.  Anything else is outside the implemented
    criteria and reported UNKNOWN with the dependence witness attached.
    """
    a_per_var = [a for a, _ in d.coeff_pairs()]
    if all(a.degree <= 0 for a in a_per_var):
        return MzVerdict(
            MzTag.IS_MZ,
            "every a_j is constant: the derivation is locally finite and 1 lies in its image",
        )
    gamma = nat_dependence_witness(a_per_var)
    if gamma is None:
        if len(d.blocks) == 1:
            reason = "single coefficient a(x) with deg a >= 1"
        else:
            reason = (
                "some deg a_j >= 1 and the a_j admit no nonzero dependence "
                "over the nonnegative integers"
            )
        return MzVerdict(MzTag.NOT_MZ, reason)
    return MzVerdict(
        MzTag.UNKNOWN,
        "some deg a_j >= 1 but the a_j admit a nonzero nonnegative-integer "
        "dependence; outside the implemented criteria",
        gamma,
    )


# -- bounded preimage solving --------------------------------------------------


def preimage_bounded(
    d: Derivation,
    target: MultiPoly,
    max_x_deg: int = 8,
    max_y_total_deg: int = 4,
) -> MultiPoly | None:
    """Solve D(f) = target for f supported on the monomial box
    {x^i y^alpha : i <= max_x_deg, |alpha| <= max_y_total_deg}.

    A returned f satisfies the equation exactly; None only means no preimage
    exists within the box."""
    n = d.arity
    if target.arity != n:
        raise ValueError("arity mismatch")
    if max_x_deg < 0 or max_y_total_deg < 0:
        raise ValueError("bounds must be nonnegative")
    box = sorted(
        (xe, *ye)
        for ye in _y_exponents(n, max_y_total_deg)
        for xe in range(max_x_deg + 1)
    )
    images = [apply_derivation(d, MultiPoly(n, {exps: 1})) for exps in box]
    row_keys = sorted(set(target.terms()) | {m for im in images for m in im.terms()})
    index = {key: i for i, key in enumerate(row_keys)}
    rows = [[Fraction(0)] * len(box) for _ in row_keys]
    for col, im in enumerate(images):
        for mono, val in im.terms().items():
            rows[index[mono]][col] = val
    rhs = [target.coeff(key) for key in row_keys]
    space = QMatrix(rows, cols=len(box)).solve_affine(rhs)
    if space is None:
        return None
    f = MultiPoly(n, {exps: v for exps, v in zip(box, space.particular) if v})
    assert apply_derivation(d, f) == target
    return f


def _y_exponents(n: int, total: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.product(range(total + 1), repeat=n):
        if sum(combo) <= total:
            out.append(combo)
    return out
