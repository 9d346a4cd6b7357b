"""Measuring symmetry-breaking scalars on concrete matrix models.

Setting: ``big`` is a matrix model of an irreducible of the group on
coordinates ``0..n`` with infinitesimal character ``lam`` (its own-group
highest weight plus rho), ``sub`` one of the subgroup on ``1..n``, and ``T``
a verified equivariant operator between them.  ``F`` denotes the defining
(n+1)-dimensional representation, whose extreme weights in the big weight
coordinates are ``+-e_j`` (plus 0 when the group size n+1 is odd).

Everything is phrased on tuples: an element of ``big (x) F`` is the tuple
``V = (u_0, ..., u_n)`` standing for ``sum_a u_a (x) f_a`` with each ``u_a``
a coordinate vector in the big model.  The coupled lowering-type operator

    ctilde(V)_a = sum_{b<a} X[b,a] u_b - sum_{b>a} X[a,b] u_b

is the matrix form of ``-sum_{i<j} X[i,j] (x) X[i,j]`` acting with the second
leg on ``F``, and the shifted Casimir on the tensor product acts tuple-wise:

    cDelta(V)_a = (casimir(big) + n) u_a + 2 ctilde(V)_a,

since the defining representation's own Casimir scalar is n.  The spectral
projector onto the ``lam + eps e_i`` primary part is the product of the
factors ``cDelta - (|lam + mu|^2 - |rho|^2)`` over the other extreme weights
``mu`` of ``F``; dividing by the product of eigenvalue gaps
``prod_mu (|lam + eps e_i|^2 - |lam + mu|^2)`` normalizes it to an honest
projector.  ``measure_scalar`` measures the scalar of ``(T (x)
first-slot-restriction) o projector o (u -> u (x) f_0)`` against ``T`` as an
exact ratio; non-proportionality to ``T`` raises ``IdentityViolationError``.

The projected probe tuples depend only on ``(big, i, eps)`` — not on the
target representation — so they are cached on the big representation and
shared across every operator measured out of it.  The probe vectors are
drawn deterministically from the representation data; exact arithmetic makes
each probe a rigid consistency equation rather than a floating-point guess.

``b_eval`` measures the same composition for powers of ``ctilde`` instead of
the projector, and ``b_reconstruct`` interpolates those measurements across a
grid of representation pairs into an exact polynomial in the two
infinitesimal characters, using only monomials invariant under both full
orthogonal Weyl groups (even powers coordinate-wise).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    Qi,
    QI_ONE,
    QI_ZERO,
    QiEchelon,
    qadd,
    qdiv,
    qi,
    qis0,
    qmul,
    qneg,
)
from .weights import RankContext, ResourceLimitError, rank_context, rho
from .scalars import RationalFunctionValue
from .matrixrep import MatrixRep, expected_casimir_scalar
from .homspace import SymmetryBreakingOperator

CoordVec = Dict[int, Qi]
Tuple_ = List[CoordVec]


class IdentityViolationError(AssertionError):
    """The measured composition failed to be proportional to the operator —
    the universal-scalar statement would be falsified by this example."""


# ---------------------------------------------------------------------------
# tuple machinery
# ---------------------------------------------------------------------------

def _apply_cols(cols: List[Dict[int, Qi]], vec: CoordVec, scale: Qi = QI_ONE) -> CoordVec:
    out: CoordVec = {}
    for j, c in vec.items():
        col = cols[j]
        if not col:
            continue
        cc = qmul(c, scale)
        for i, a in col.items():
            cur = out.get(i, QI_ZERO)
            new = qadd(cur, qmul(cc, a))
            if qis0(new):
                out.pop(i, None)
            else:
                out[i] = new
    return out


def _vec_add(target: CoordVec, src: CoordVec, scale: Qi = QI_ONE) -> None:
    for i, c in src.items():
        cur = target.get(i, QI_ZERO)
        new = qadd(cur, qmul(c, scale))
        if qis0(new):
            target.pop(i, None)
        else:
            target[i] = new


def coupling_step(big: MatrixRep, V: Tuple_) -> Tuple_:
    """One application of the coupled operator ctilde on a tuple over F."""
    idx = big.indices
    out: Tuple_ = [dict() for _ in idx]
    for pos_a, a in enumerate(idx):
        acc = out[pos_a]
        for pos_b, b in enumerate(idx):
            if b == a:
                continue
            if b < a:
                cols = big.sparse_action(b, a)
                _vec_add(acc, _apply_cols(cols, V[pos_b]))
            else:
                cols = big.sparse_action(a, b)
                _vec_add(acc, _apply_cols(cols, V[pos_b]), qneg(QI_ONE))
    return out


def ambient_weights(ctx: RankContext) -> List[Tuple[Fraction, ...]]:
    """Extreme weights of the defining representation in big coordinates:
    +-e_j for j = 1..r, plus 0 when the group size n+1 is odd."""
    r = ctx.r
    out: List[Tuple[Fraction, ...]] = []
    for j in range(r):
        for s in (1, -1):
            w = [Fraction(0)] * r
            w[j] = Fraction(s)
            out.append(tuple(w))
    if ctx.parity == "even":  # n even <-> group size n+1 odd <-> weight 0 occurs
        out.append(tuple(Fraction(0) for _ in range(r)))
    return out


def _norm2(v: Sequence[Fraction]) -> Fraction:
    return sum(Fraction(c) * Fraction(c) for c in v)


def casimir_shifted_step(big: MatrixRep, ctx: RankContext, V: Tuple_,
                         shift: Fraction) -> Tuple_:
    """One factor (cDelta - shift) V with cDelta the tensor-product Casimir."""
    cas = expected_casimir_scalar(big)
    diag = qi(cas + ctx.n - shift)
    ct = coupling_step(big, V)
    out: Tuple_ = []
    for pos in range(len(V)):
        acc: CoordVec = {}
        _vec_add(acc, V[pos], diag)
        _vec_add(acc, ct[pos], qi(Fraction(2)))
        out.append(acc)
    return out


def projector_factors(ctx: RankContext, lam: Sequence[Fraction], i: int,
                      eps: int) -> Tuple[List[Fraction], Fraction]:
    """Shifts for the spectral-projector factors and the normalizing product.

    Factors run over the extreme weights mu != eps*e_i of the defining
    representation: shift = |lam+mu|^2 - |rho|^2.  The normalizer is
    prod (|lam + eps e_i|^2 - |lam + mu|^2); zero iff the projector direction
    is singular at lam."""
    lam = tuple(Fraction(c) for c in lam)
    if not (1 <= i <= ctx.r):
        raise ValueError(f"direction index i={i} outside 1..{ctx.r}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    r2 = _norm2(rho(ctx))
    target = [Fraction(0)] * ctx.r
    target[i - 1] = Fraction(eps)
    tnorm = _norm2([a + b for a, b in zip(lam, target)])
    shifts: List[Fraction] = []
    norm = Fraction(1)
    for mu in ambient_weights(ctx):
        if list(mu) == target:
            continue
        mnorm = _norm2([a + b for a, b in zip(lam, mu)])
        shifts.append(mnorm - r2)
        norm *= (tnorm - mnorm)
    return shifts, norm


# ---------------------------------------------------------------------------
# probe management (cached per representation and direction)
# ---------------------------------------------------------------------------

def _probe_rng(big: MatrixRep, tag) -> random.Random:
    key = repr((tag, big.dim, tuple(str(c) for c in big.inf_char),
                big.group_tag, big.twist_sign))
    return random.Random(key)


def _rand_coordvec(dim: int, rng: random.Random) -> CoordVec:
    out: CoordVec = {}
    for i in range(dim):
        re = Fraction(rng.randint(-9, 9))
        im = Fraction(rng.randint(-9, 9))
        if re or im:
            out[i] = (re, im)
    return out


def _insert_first_slot(big: MatrixRep, u: CoordVec) -> Tuple_:
    V: Tuple_ = [dict() for _ in big.indices]
    V[0] = dict(u)
    return V


def _projected_probes(big: MatrixRep, i: int, eps: int,
                      probes: int) -> List[Tuple[CoordVec, CoordVec]]:
    """Pairs (u, first slot of the unnormalized projector image of u (x) f_0),
    cached on the representation: the heavy factor product does not depend on
    the target of the operator being measured."""
    key = ("primary-probes", i, eps, probes)
    cached = big.cache.get(key)
    if cached is not None:
        return cached
    ctx = rank_context(len(big.indices) - 1)
    shifts, _norm = projector_factors(ctx, big.inf_char, i, eps)
    rng = _probe_rng(big, ("measure", i, eps))
    us: List[CoordVec] = [{0: QI_ONE}]
    while len(us) < probes:
        us.append(_rand_coordvec(big.dim, rng))
    out = []
    for u in us:
        V = _insert_first_slot(big, u)
        for s in shifts:
            V = casimir_shifted_step(big, ctx, V, s)
        out.append((u, V[0]))
    big.cache[key] = out
    return out


def _power_probes(big: MatrixRep, ell: int, probes: int) -> List[Tuple[CoordVec, CoordVec]]:
    key = ("power-probes", ell, probes)
    cached = big.cache.get(key)
    if cached is not None:
        return cached
    rng = _probe_rng(big, ("power", ell))
    us: List[CoordVec] = [{0: QI_ONE}]
    while len(us) < probes:
        us.append(_rand_coordvec(big.dim, rng))
    out = []
    for u in us:
        V = _insert_first_slot(big, u)
        for _ in range(ell):
            V = coupling_step(big, V)
        out.append((u, V[0]))
    big.cache[key] = out
    return out


def _ratio_against(op: SymmetryBreakingOperator, pairs: List[Tuple[CoordVec, CoordVec]],
                   what: str) -> Qi:
    """The unique c with T(W0(u)) = c T(u) across all probe pairs with
    T(u) != 0; raises IdentityViolationError on any inconsistency."""
    ratio: Optional[Qi] = None
    usable = 0
    for (u, w0) in pairs:
        Tu = op.apply_coords(u)
        if all(qis0(c) for c in Tu):
            continue
        usable += 1
        TV0 = op.apply_coords(w0)
        c_here: Optional[Qi] = None
        for a, b in zip(TV0, Tu):
            if qis0(b):
                if not qis0(a):
                    raise IdentityViolationError(
                        f"{what} composition is not proportional to the operator"
                    )
                continue
            q = qdiv(a, b)
            if c_here is None:
                c_here = q
            elif c_here != q:
                raise IdentityViolationError(
                    f"{what} composition is not proportional to the operator"
                )
        if c_here is None:
            c_here = QI_ZERO
        if ratio is None:
            ratio = c_here
        elif ratio != c_here:
            raise IdentityViolationError(f"{what} scalar differs between probe vectors")
    if usable == 0:
        raise IdentityViolationError(
            f"{what}: no probe vector had T u != 0 (operator may be zero)"
        )
    assert ratio is not None
    return ratio


@dataclass
class MeasureResult:
    """Outcome of measuring the spectral-projector composition against T."""

    value: RationalFunctionValue
    raw_numerator: Qi
    normalizer: Fraction
    probes_checked: int


def measure_scalar(op: SymmetryBreakingOperator, i: int, eps: int,
                   probes: int = 3) -> MeasureResult:
    """Measure the universal scalar of the projector composition.

    Computes ``(T (x) first-slot-restriction) o P_{lam + eps e_i} o
    (u -> u (x) f_0) = scalar * T`` and returns the scalar as an exact
    rational-function value: numerator measured against the raw factor
    product, denominator the eigenvalue-gap normalizer.  Raises
    IdentityViolationError if the composition fails proportionality to T on
    any probe; a zero normalizer yields ``defined=False``."""
    big = op.big
    _ctx = rank_context(len(big.indices) - 1)
    pairs = _projected_probes(big, i, eps, probes)
    ratio = _ratio_against(op, pairs, "projector")
    _shifts, norm = projector_factors(_ctx, big.inf_char, i, eps)
    if norm == 0:
        return MeasureResult(
            value=RationalFunctionValue(numerator=Fraction(0), denominator=Fraction(0),
                                        defined=False),
            raw_numerator=ratio, normalizer=norm, probes_checked=len(pairs),
        )
    if ratio[1] != 0:
        raise IdentityViolationError("measured scalar is not real")
    return MeasureResult(
        value=RationalFunctionValue(numerator=ratio[0], denominator=norm, defined=True),
        raw_numerator=ratio, normalizer=norm, probes_checked=len(pairs),
    )


def b_eval(op: SymmetryBreakingOperator, ell: int, probes: int = 3) -> Fraction:
    """Measured coefficient of the ell-th coupled power:
    T((ctilde^ell (u (x) f_0))_0) = b * T(u), checked across probe vectors."""
    big = op.big
    pairs = _power_probes(big, ell, probes)
    ratio = _ratio_against(op, pairs, "power")
    if ratio[1] != 0:
        raise IdentityViolationError("power scalar is not real")
    return ratio[0]


# ---------------------------------------------------------------------------
# symbolic-vs-matrix cross-verification of the coupled powers
# ---------------------------------------------------------------------------

def verify_power_identity(big: MatrixRep, N: int) -> bool:
    """Check the universal-enveloping expansion of the N-th coupled power:
    ctilde^N (u (x) f_0) = (A_N u) (x) f_0 + sum_j (B_{N,j} u) (x) f_j with
    A_N, B_N the symbolic elements of the enveloping-algebra layer, evaluated
    through the representation's matrices on every basis vector."""
    from .enveloping import build_A, build_B
    from .matrixrep import act
    ctx = rank_context(len(big.indices) - 1)
    A = act(build_A(N, ctx), big)
    Bs = [act(b, big) for b in build_B(N, ctx)]
    dim = big.dim
    for j in range(dim):
        V = _insert_first_slot(big, {j: QI_ONE})
        for _ in range(N):
            V = coupling_step(big, V)
        exp0: CoordVec = {k: A[k][j] for k in range(dim) if not qis0(A[k][j])}
        if V[0] != exp0:
            return False
        for pos in range(1, len(big.indices)):
            mat = Bs[pos - 1]
            expj: CoordVec = {k: mat[k][j] for k in range(dim) if not qis0(mat[k][j])}
            if V[pos] != expj:
                return False
    return True


# ---------------------------------------------------------------------------
# the primary component as an explicit subspace
# ---------------------------------------------------------------------------

@dataclass
class PrimaryComponent:
    """Echelon basis of the image of the factor product on big (x) F.

    Each basis element is a tuple (list indexed like the ambient coordinates)
    of coordinate vectors in the big model.  ``eigenvalue`` is the shifted
    Casimir scalar on the component (None for a rank-0 component)."""

    big: MatrixRep
    i: int
    eps: int
    dim: int
    basis: List[Tuple_]
    eigenvalue: Optional[Fraction]


def _flatten(V: Tuple_) -> Dict[Tuple[int, int], Qi]:
    out: Dict[Tuple[int, int], Qi] = {}
    for pos, comp in enumerate(V):
        for idx, c in comp.items():
            out[(pos, idx)] = c
    return out


def _unflatten(flat: Dict[Tuple[int, int], Qi], slots: int) -> Tuple_:
    V: Tuple_ = [dict() for _ in range(slots)]
    for (pos, idx), c in flat.items():
        V[pos][idx] = c
    return V


def primary_projector(big: MatrixRep, i: int, eps: int) -> PrimaryComponent:
    """Image of the factor product on all of big (x) F, with the Casimir
    eigenvalue check that identifies it as the primary component."""
    ctx = rank_context(len(big.indices) - 1)
    lam = big.inf_char
    shifts, _norm = projector_factors(ctx, lam, i, eps)
    slots = len(big.indices)
    ech = QiEchelon()
    kept: List[Tuple_] = []
    for pos in range(slots):
        for j in range(big.dim):
            V: Tuple_ = [dict() for _ in range(slots)]
            V[pos] = {j: QI_ONE}
            for s in shifts:
                V = casimir_shifted_step(big, ctx, V, s)
            flat = _flatten(V)
            if not flat:
                continue
            if ech.insert(dict(flat)) is not None:
                kept.append(V)
    if not kept:
        return PrimaryComponent(big=big, i=i, eps=eps, dim=0, basis=[], eigenvalue=None)
    # eigenvalue check: cDelta acts on the image by |lam + eps e_i|^2 - |rho|^2
    target = [Fraction(0)] * ctx.r
    target[i - 1] = Fraction(eps)
    eig = _norm2([a + b for a, b in zip(lam, target)]) - _norm2(rho(ctx))
    for V in kept:
        W = casimir_shifted_step(big, ctx, V, eig)
        if any(comp for comp in W):
            raise IdentityViolationError(
                "projector image is not a Casimir eigenspace at the expected value"
            )
    return PrimaryComponent(big=big, i=i, eps=eps, dim=len(kept), basis=kept,
                            eigenvalue=eig)


# ---------------------------------------------------------------------------
# polynomial reconstruction of the power coefficients
# ---------------------------------------------------------------------------

def _inv_monomials(r: int, s: int, half_degree: int):
    """Exponent pairs (a, b) for the Weyl-invariant monomials
    prod lam_k^{2 a_k} prod nu_k^{2 b_k} of plain degree <= 2*half_degree."""
    out = []

    def rec_a(k: int, rem: int, acc: List[int]):
        if k == r:
            rec_b(0, rem, acc, [])
            return
        for e in range(rem + 1):
            rec_a(k + 1, rem - e, acc + [e])

    def rec_b(k: int, rem: int, acc_a: List[int], acc: List[int]):
        if k == s:
            out.append((tuple(acc_a), tuple(acc)))
            return
        for e in range(rem + 1):
            rec_b(k + 1, rem - e, acc_a, acc + [e])

    rec_a(0, half_degree, [])
    return out


def reconstruction_grid(ctx: RankContext, box: int = 2, dim_cap: int = 400):
    """All pairs (operator, lam, nu) from representations of the nested pair
    with big rows bounded by ``box`` and nonzero operator space.  Det-twists
    are skipped: they repeat the same pair of infinitesimal characters."""
    from .matrixrep import construct_irrep
    from .homspace import hom_space
    from .characters import so_rank
    big_size = ctx.n + 1
    sub_size = ctx.n
    rank_big = so_rank(big_size) if big_size > 2 else 1
    rank_sub = so_rank(sub_size) if sub_size > 2 else 1

    def partitions(rank: int, bound: int):
        if rank == 1:
            return [(m,) for m in range(bound + 1)]
        out = []
        for m1 in range(bound + 1):
            for m2 in range(m1 + 1):
                out.append((m1, m2))
        return out

    pairs = []
    for bmu in partitions(rank_big, box):
        try:
            big = construct_irrep(ctx, bmu, which="big", dim_cap=dim_cap)
        except ResourceLimitError:
            continue
        for smu in partitions(rank_sub, box):
            try:
                sub = construct_irrep(ctx, smu, which="sub", dim_cap=dim_cap)
            except ResourceLimitError:
                continue
            mult, ops = hom_space(big, sub)
            if mult == 0:
                continue
            pairs.append((ops[0], big.inf_char, sub.inf_char))
    return pairs


def b_reconstruct(ell: int, ctx: RankContext, box: int = 2,
                  dim_cap: int = 400, pairs=None, half_degree: Optional[int] = None):
    """Interpolate the measured power coefficient into an exact polynomial.

    Evaluates ``b_eval`` on a grid of representation pairs (built internally
    from the highest-weight box unless ``pairs`` is supplied) and solves for
    the coefficients of the Weyl-invariant monomials of plain degree <= ell.
    Returns {((a_1..a_r), (b_1..b_s)): coefficient} for the polynomial
    sum c * prod lam_k^{2 a_k} prod nu_k^{2 b_k}.  Raises ResourceLimitError
    if the grid does not determine every coefficient, and
    IdentityViolationError if the measurements are not polynomial of that
    shape at all."""
    if half_degree is None:
        half_degree = ell // 2
    monos = _inv_monomials(ctx.r, ctx.s, half_degree)
    if pairs is None:
        pairs = reconstruction_grid(ctx, box=box, dim_cap=dim_cap)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for (op, lam, nu) in pairs:
        b = b_eval(op, ell)
        row = []
        for (ea, eb) in monos:
            v = Fraction(1)
            for k, e in enumerate(ea):
                v *= Fraction(lam[k]) ** (2 * e)
            for k, e in enumerate(eb):
                v *= Fraction(nu[k]) ** (2 * e)
            row.append(v)
        rows.append(row)
        rhs.append(b)
    ncols = len(monos)
    aug = [row + [rhs[k]] for k, row in enumerate(rows)]
    nrows = len(aug)
    prow = 0
    pivots: List[int] = []
    for col in range(ncols):
        piv = None
        for r_i in range(prow, nrows):
            if aug[r_i][col] != 0:
                piv = r_i
                break
        if piv is None:
            continue
        aug[prow], aug[piv] = aug[piv], aug[prow]
        pv = aug[prow][col]
        aug[prow] = [x / pv for x in aug[prow]]
        for r_i in range(nrows):
            if r_i != prow and aug[r_i][col] != 0:
                f = aug[r_i][col]
                aug[r_i] = [x - f * y for x, y in zip(aug[r_i], aug[prow])]
        pivots.append(col)
        prow += 1
    for r_i in range(prow, nrows):
        if aug[r_i][ncols] != 0:
            raise IdentityViolationError(
                "power coefficients are not a polynomial of the requested shape"
            )
    if len(pivots) < ncols:
        raise ResourceLimitError(
            f"interpolation grid determines only {len(pivots)} of {ncols} "
            "coefficients; enlarge the box"
        )
    coeffs = {}
    for r_i, col in enumerate(pivots):
        c = aug[r_i][ncols]
        if c != 0:
            coeffs[monos[col]] = c
    return coeffs


def closed_power_polynomial(ell: int, ctx: RankContext):
    """The closed forms of the first three power coefficients in the same
    monomial encoding b_reconstruct uses (independent route for tests)."""
    r, s, n = ctx.r, ctx.s, ctx.n
    zero_a = tuple([0] * r)
    zero_b = tuple([0] * s)
    if ell == 1:
        return {}
    if ell == 2:
        out = {}
        for k in range(r):
            out[(tuple(1 if j == k else 0 for j in range(r)), zero_b)] = Fraction(1)
        for k in range(s):
            out[(zero_a, tuple(1 if j == k else 0 for j in range(s)))] = Fraction(-1)
        out[(zero_a, zero_b)] = -Fraction(n * (n - 1), 8)
        return out
    if ell == 3:
        out = {}
        for k in range(r):
            out[(tuple(1 if j == k else 0 for j in range(r)), zero_b)] = Fraction(1 - n)
        for k in range(s):
            out[(zero_a, tuple(1 if j == k else 0 for j in range(s)))] = Fraction(n)
        out[(zero_a, zero_b)] = Fraction((n - 1) * n * (2 * n - 1), 24)
        return out
    raise ValueError(f"closed forms exist for ell in {{1,2,3}}, got {ell}")
