"""Finite-dimensional branching for the pair O(n+1) > O(n).

The oracle route is pure character arithmetic, independent of any matrix
realization:

1. weight multiset of the big irrep via Freudenthal tables (both so-pieces
   merged when the even-size group label has a full-length row vector),
2. restriction of the multiset to the subgroup torus,
3. highest-weight peeling into so(n)-constituents,
4. resolution of the O(n)-labels (det-twists) by evaluating the universal
   h-determinant character on an eigenvalue multiset drawn from the
   non-identity component of O(n), and peeling that Laurent polynomial over
   the twisted constituent characters.

Labels are `FDLabel` records: group parity tag, weakly decreasing nonnegative
integer rows mu, and an optional sign eps selecting the det-twist (equivalent
to passing the associate partition).  `interlace_predicate` is the closed-form
prediction -- partition interlacing filtered by the two-column validity
condition -- and is cross-validated against the oracle in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from .characters import (
    associate_partition,
    label_to_partition,
    o_char_on_multiset,
    o_irrep_dim,
    partition_to_label,
    partition_valid_for_o,
    peel,
    restrict_weights,
    so_char,
    so_char_laurent,
    so_rank,
    weyl_dim,
)
from .polyarith import p_add, p_scale
from .regions import (
    FencePreconditionError,
    RegionDescriptor,
    away_from_fences,
    region_descriptor,
    same_region,
)
from .weights import (
    RankContext,
    ResourceLimitError,
    Weight,
    as_weight,
    in_chamber,
    lattice_box,
    rank_context,
)

O_ODD = "O_odd"
O_EVEN = "O_even"


@dataclass(frozen=True)
class FDLabel:
    """Finite-dimensional irrep label for an orthogonal group O(N).

    group_tag is "O_odd" (N = 2*rank+1) or "O_even" (N = 2*rank); mu holds the
    row lengths padded to the rank; eps = -1 selects the det-twist (associate
    partition).  For O_odd eps is mandatory; for O_even it defaults to +1 and
    is only meaningful when mu has a zero last row (otherwise the two signs
    name the same irrep and the label is canonicalized to +1).
    """

    group_tag: str
    mu: Tuple[int, ...]
    eps: Optional[int] = None

    def __post_init__(self):
        if self.group_tag not in (O_ODD, O_EVEN):
            raise ValueError(f"unknown group tag {self.group_tag!r}")
        mu = tuple(int(c) for c in self.mu)
        if any(c < 0 for c in mu) or list(mu) != sorted(mu, reverse=True):
            raise ValueError(f"rows {mu} must be weakly decreasing and nonnegative")
        if not mu:
            raise ValueError("rows must have positive length (the group rank)")
        object.__setattr__(self, "mu", mu)
        eps = self.eps
        if self.group_tag == O_ODD:
            if eps not in (1, -1):
                raise ValueError("O_odd labels require eps in {+1,-1}")
        else:
            if eps is None:
                eps = 1
            if eps not in (1, -1):
                raise ValueError("eps must be +1 or -1")
            if mu[-1] >= 1:
                eps = 1  # full-length rows: det-twist is isomorphic; canonical +
        object.__setattr__(self, "eps", eps)

    @property
    def rank(self) -> int:
        return len(self.mu)

    @property
    def group_size(self) -> int:
        return 2 * self.rank + (1 if self.group_tag == O_ODD else 0)

    @property
    def partition(self) -> Tuple[int, ...]:
        return label_to_partition(self.group_size, self.mu, self.eps)

    def dim(self) -> int:
        return o_irrep_dim(self.group_size, self.partition)


def fd_label(group_size: int, mu, eps: Optional[int] = None) -> FDLabel:
    """Build a canonical FDLabel for O(group_size) from row lengths."""
    rank = so_rank(group_size) if group_size > 2 else 1
    if group_size == 2:
        rank = 1
    tag = O_ODD if group_size % 2 else O_EVEN
    mu = tuple(int(c) for c in mu)
    if len(mu) < rank:
        mu = mu + (0,) * (rank - len(mu))
    if len(mu) != rank:
        raise ValueError(f"rows {mu} incompatible with O({group_size}) of rank {rank}")
    if tag == O_ODD and eps is None:
        eps = 1
    return FDLabel(tag, mu, eps)


def label_from_partition(group_size: int, alpha) -> FDLabel:
    mu, eps = partition_to_label(group_size, alpha)
    return fd_label(group_size, mu, eps if group_size % 2 else (eps if eps == -1 else None))


def _own_rho(label: FDLabel) -> Weight:
    r = label.rank
    if label.group_tag == O_ODD:
        return tuple(Fraction(2 * (r - i) + 1, 2) for i in range(1, r + 1))
    return tuple(Fraction(r - i) for i in range(1, r + 1))


def inf_char_of(label: FDLabel, ctx: Optional[RankContext] = None) -> Weight:
    """Infinitesimal character mu + rho taken with the label's own group."""
    if ctx is not None and label.group_size not in (ctx.n, ctx.n + 1):
        raise ValueError(
            f"label lives on O({label.group_size}), not part of the pair "
            f"O({ctx.n + 1}) > O({ctx.n})"
        )
    rho = _own_rho(label)
    return tuple(Fraction(m) + p for m, p in zip(label.mu, rho))


# ---------------------------------------------------------------------------
# Oracle: full restriction decomposition
# ---------------------------------------------------------------------------


def _coset_eigenvalues(big_size: int):
    """Eigenvalue multiset (as single Laurent terms) of a maximal-torus element
    of the non-identity component of O(big_size - 1), embedded in O(big_size).

    Returns (terms, nvars).  Even subgroup size 2s': eigenvalues
    {1} u {1, -1} u {t_k^{+-1} : k < s'}; odd size 2s'+1: {1} u {-1} u
    {-t_k^{+-1} : k <= s'}.
    """
    m = big_size - 1
    one = Fraction(1)
    if m % 2 == 0:
        s2 = m // 2
        nvars = s2 - 1
        zero = (0,) * nvars
        terms = [(zero, one), (zero, one), (zero, -one)]
        for k in range(nvars):
            e = tuple(1 if j == k else 0 for j in range(nvars))
            ei = tuple(-1 if j == k else 0 for j in range(nvars))
            terms.append((e, one))
            terms.append((ei, one))
    else:
        s2 = m // 2
        nvars = s2
        zero = (0,) * nvars
        terms = [(zero, one), (zero, -one)]
        for k in range(nvars):
            e = tuple(1 if j == k else 0 for j in range(nvars))
            ei = tuple(-1 if j == k else 0 for j in range(nvars))
            terms.append((e, -one))
            terms.append((ei, -one))
    return terms, nvars


def _is_partition_exponent(e) -> bool:
    return all(x >= 0 for x in e) and all(e[k] >= e[k + 1] for k in range(len(e) - 1))


@lru_cache(maxsize=None)
def o_restrict_decomposition(big_size: int, alpha) -> "dict[tuple, int]":
    """Decompose the O(big_size)-irrep with partition alpha under O(big_size-1).

    Returns {sub partition: multiplicity}.
    """
    alpha = tuple(a for a in alpha if a)
    if not partition_valid_for_o(big_size, alpha):
        raise ValueError(f"{alpha} is not a valid O({big_size}) label")
    m = big_size - 1
    if m < 2:
        raise ValueError("subgroup smaller than O(2) is not supported")
    mu, _eps = partition_to_label(big_size, alpha)

    # SO-level weight multiset (label sign does not matter on the torus).
    if big_size % 2 == 0 and mu[-1] >= 1:
        weights = dict(so_char(big_size, mu))
        for w, c in so_char(big_size, mu[:-1] + (-mu[-1],)).items():
            weights[w] = weights.get(w, 0) + c
    else:
        weights = so_char(big_size, mu)
    so_labels = peel(restrict_weights(weights, big_size), m)

    out: dict[tuple, int] = {}
    ambiguous: dict[tuple, int] = {}
    if m % 2 == 0:
        for tau, c in so_labels.items():
            if tau[-1] > 0:
                taubar = tau[:-1] + (-tau[-1],)
                assert so_labels.get(taubar, 0) == c, (big_size, alpha, tau)
                beta = tuple(x for x in tau if x)
                out[beta] = out.get(beta, 0) + c
            elif tau[-1] == 0:
                ambiguous[tau] = c
    else:
        ambiguous = dict(so_labels)

    if ambiguous:
        terms, nvars = _coset_eigenvalues(big_size)
        residual = o_char_on_multiset(alpha, terms, nvars)
        diffs: dict[tuple, int] = {}
        if m % 2 == 0:
            # constituents: W_beta = universal char of beta at the subgroup's
            # own coset eigenvalues (big multiset minus the leading 1).
            sub_terms = terms[1:]
            while residual:
                e = max(residual)
                assert _is_partition_exponent(e), (big_size, alpha, e)
                beta = tuple(x for x in e if x)
                w = o_char_on_multiset(beta, sub_terms, nvars)
                lead = w.get(e)
                assert lead, (big_size, alpha, beta)
                d = residual[e] / lead
                assert d.denominator == 1, (big_size, alpha, beta, d)
                residual = p_add(residual, p_scale(w, -d))
                diffs[beta] = diffs.get(beta, 0) + int(d)
        else:
            # constituents: (-1)^{|tau|} times the so(m)-character.
            while residual:
                e = max(residual)
                assert _is_partition_exponent(e), (big_size, alpha, e)
                sign = -1 if sum(e) % 2 else 1
                d = residual[e] * sign
                assert d.denominator == 1, (big_size, alpha, e, d)
                chi = so_char_laurent(m, e, nvars)
                residual = p_add(residual, p_scale(chi, -sign * d))
                diffs[tuple(x for x in e if x)] = diffs.get(tuple(x for x in e if x), 0) + int(d)
        for tau, c in ambiguous.items():
            beta = tuple(x for x in tau if x)
            d = diffs.pop(beta, 0)
            assert (c + d) % 2 == 0 and abs(d) <= c, (big_size, alpha, tau, c, d)
            plus, minus = (c + d) // 2, (c - d) // 2
            if plus:
                out[beta] = out.get(beta, 0) + plus
            if minus:
                bassoc = associate_partition(m, beta)
                out[bassoc] = out.get(bassoc, 0) + minus
        assert not diffs, (big_size, alpha, diffs)
    return out


_DEFAULT_DIM_CAP = 20000


def oracle_multiplicity(big: FDLabel, sub: FDLabel, ctx: Optional[RankContext] = None,
                        dim_cap: int = _DEFAULT_DIM_CAP) -> int:
    """Branching multiplicity [big|_{O(n)} : sub] by exact character arithmetic."""
    if sub.group_size + 1 != big.group_size:
        raise ValueError(
            f"sizes O({big.group_size}) > O({sub.group_size}) do not form an adjacent pair"
        )
    if ctx is not None and ctx.n != sub.group_size:
        raise ValueError("context does not match the subgroup size")
    if big.dim() > dim_cap:
        raise ResourceLimitError(
            f"big irrep dimension {big.dim()} exceeds the cap {dim_cap}"
        )
    decomp = o_restrict_decomposition(big.group_size, big.partition)
    return decomp.get(sub.partition, 0)


def full_decomposition(big: FDLabel, dim_cap: int = _DEFAULT_DIM_CAP):
    """All (sub FDLabel, multiplicity) constituents of the restriction."""
    if big.dim() > dim_cap:
        raise ResourceLimitError(
            f"big irrep dimension {big.dim()} exceeds the cap {dim_cap}"
        )
    decomp = o_restrict_decomposition(big.group_size, big.partition)
    pairs = [(label_from_partition(big.group_size - 1, beta), c) for beta, c in decomp.items()]
    pairs.sort(key=lambda pc: (pc[0].mu, -(pc[0].eps or 1)))
    return pairs


# ---------------------------------------------------------------------------
# Closed-form prediction
# ---------------------------------------------------------------------------


def interlace_predicate(big: FDLabel, sub: FDLabel) -> int:
    """1 if the sub partition interlaces the big partition (row-wise
    alpha_k >= beta_k >= alpha_{k+1}), else 0.  Label validity is enforced by
    the FDLabel constructors; this is the closed-form counterpart of the
    oracle and is exhaustively cross-checked in the tests."""
    if sub.group_size + 1 != big.group_size:
        raise ValueError("labels do not form an adjacent orthogonal pair")
    alpha = big.partition
    beta = sub.partition
    k_max = max(len(alpha), len(beta)) + 1

    def part(p, k):
        return p[k] if k < len(p) else 0

    for k in range(k_max):
        if not (part(alpha, k) >= part(beta, k) >= part(alpha, k + 1)):
            return 0
    return 1


# ---------------------------------------------------------------------------
# Reduced coherent families and stability scans
# ---------------------------------------------------------------------------


def family_base(ctx: RankContext, eps: Optional[int] = None) -> Weight:
    """Base point xi of the reduced family for the big group O(n+1)."""
    r = ctx.r
    if (ctx.n + 1) % 2:
        if eps not in (1, -1):
            raise ValueError("odd-size families carry a sign eps")
        return tuple(Fraction(2 * (r - i) + 1, 2) for i in range(1, r + 1))
    if eps is not None:
        raise ValueError("even-size families carry no sign")
    return tuple(Fraction(r - i + 1) for i in range(1, r + 1))


def _big_rho(ctx: RankContext) -> Weight:
    r = ctx.r
    if (ctx.n + 1) % 2:
        return tuple(Fraction(2 * (r - i) + 1, 2) for i in range(1, r + 1))
    return tuple(Fraction(r - i) for i in range(1, r + 1))


def reduced_family(ctx: RankContext, eps: Optional[int] = None, bound: int = 0):
    """FDLabels of the big group whose infinitesimal characters enumerate
    the lattice box around the family base.  Even-size groups exclude labels
    with a zero last row (those are reachable only through translation)."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    xi = family_base(ctx, eps)
    rho = _big_rho(ctx)
    tag = O_ODD if (ctx.n + 1) % 2 else O_EVEN
    labels = []
    for lam in lattice_box(xi, bound, ctx):
        mu = tuple(int(a - b) for a, b in zip(lam, rho))
        labels.append(FDLabel(tag, mu, eps if tag == O_ODD else None))
    return labels


@dataclass(frozen=True)
class StabilityReport:
    region: RegionDescriptor
    samples: tuple
    constant: bool
    fence_crossings: tuple


def stability_scan(xi, sub: FDLabel, bound: int, eps: Optional[int] = None) -> StabilityReport:
    """Scan branching multiplicities [F(lam - rho) : sub] over the lattice
    points of the box around xi that share xi's region, and report jumps at
    region boundaries.

    xi must be away from all fences of nu = inf_char_of(sub); lattice points
    must shift xi by the integer lattice aligned with the big group's
    finite-dimensional labels.
    """
    n = sub.group_size
    ctx = rank_context(n)
    xi = as_weight(xi)
    if len(xi) != ctx.r:
        raise ValueError(f"base point must have length {ctx.r}")
    nu = inf_char_of(sub)
    if not away_from_fences(xi, nu):
        raise FencePreconditionError(f"base point {xi} sits on or next to a fence of {nu}")
    big_odd = (ctx.n + 1) % 2 == 1
    if big_odd:
        if eps is None:
            eps = 1
    elif eps is not None:
        raise ValueError("even-size big groups carry no family sign")
    rho = _big_rho(ctx)
    for a, b in zip(xi, rho):
        if (a - b).denominator != 1:
            raise ValueError(
                f"base point {xi} is not aligned with the finite-dimensional lattice"
            )
    tag = O_ODD if big_odd else O_EVEN
    region = region_descriptor(xi, nu)

    def mult_at(lam) -> int:
        mu = tuple(int(a - b) for a, b in zip(lam, rho))
        return oracle_multiplicity(FDLabel(tag, mu, eps if big_odd else None), sub, ctx)

    box = lattice_box(xi, bound, ctx)
    in_region = [lam for lam in box if same_region(region, lam)]
    sample_map = {lam: mult_at(lam) for lam in in_region}
    samples = tuple(sorted(sample_map.items()))
    constant = len(set(sample_map.values())) <= 1

    crossings = []
    seen = set()
    for lam in in_region:
        base_mult = sample_map[lam]
        for i in range(ctx.r):
            for step in (1, -1):
                nb = tuple(c + (step if k == i else 0) for k, c in enumerate(lam))
                if nb in seen or nb in sample_map:
                    continue
                if not in_chamber(xi, nb):
                    continue
                if same_region(region, nb):
                    continue
                seen.add(nb)
                crossings.append((lam, nb, mult_at(nb) - base_mult))
    crossings.sort()
    return StabilityReport(region=region, samples=samples, constant=constant,
                           fence_crossings=tuple(crossings))
