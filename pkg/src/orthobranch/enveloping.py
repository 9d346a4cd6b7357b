"""Normal-ordered arithmetic in U(o(n+1, C)).

Generators are X_ij = E_ij - E_ji for 0 <= i < j <= n (X_ji is -X_ij, X_ii = 0),
with the bracket table

    [X_ab, X_ij] = d_bi X_aj + d_bj X_ia + d_ai X_jb + d_aj X_bi.

A monomial is a tuple of canonical (i, j) pairs; normal order means
nondecreasing in the lexicographic generator order, achieved by adjacent
transpositions with bracket correction (memoized).  Elements are dicts from
monomials to Fraction coefficients wrapped in a thin immutable class; `*`
returns normal-ordered products, while `monomial(...)` lets tests build raw
unordered words.

On top of this: the two Casimirs, the recursively defined invariant elements
(the A/B ladder, the D ladder, their pairings), the g_n twist, and the
invariance check used throughout the representation layer.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .weights import RankContext

Pair = Tuple[int, int]
Monomial = Tuple[Pair, ...]


def _canon_gen(i: int, j: int):
    """Return (sign, (i,j)) with i<j, or (0, None) when i == j."""
    if i == j:
        return 0, None
    if i < j:
        return 1, (i, j)
    return -1, (j, i)


class UEElement:
    """Immutable linear combination of monomials in the X_ij."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction] = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff != 0:
                    clean[tuple(tuple(p) for p in mono)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("UEElement is immutable")

    def __eq__(self, other):
        return isinstance(other, UEElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def __add__(self, other: "UEElement") -> "UEElement":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return UEElement(out)

    def __sub__(self, other: "UEElement") -> "UEElement":
        return self + other.scale(-1)

    def scale(self, c) -> "UEElement":
        c = Fraction(c)
        return UEElement({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "UEElement") -> "UEElement":
        """Product, returned in normal-ordered form."""
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for mono, coeff in _normal_order_monomial(m1 + m2).items():
                    new = out.get(mono, Fraction(0)) + c1 * c2 * coeff
                    if new == 0:
                        out.pop(mono, None)
                    else:
                        out[mono] = new
        return UEElement(out)

    def __repr__(self):
        if not self.terms:
            return "UE(0)"
        bits = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            coeff = self.terms[mono]
            word = "*".join(f"X{i}{j}" if max(i, j) < 10 else f"X[{i},{j}]" for i, j in mono) or "1"
            bits.append(f"({coeff})*{word}")
        return "UE(" + " + ".join(bits) + ")"


ZERO = UEElement({})
ONE = UEElement({(): Fraction(1)})


def gen(i: int, j: int) -> UEElement:
    """The generator X_ij as an element (handles X_ji = -X_ij and X_ii = 0)."""
    sign, pair = _canon_gen(i, j)
    if sign == 0:
        return ZERO
    return UEElement({(pair,): Fraction(sign)})


def monomial(pairs: Iterable[Pair], coeff=1) -> UEElement:
    """Raw (possibly unordered) word; factors given as (i, j) with i != j."""
    word = []
    sign = 1
    for i, j in pairs:
        s, pair = _canon_gen(i, j)
        if s == 0:
            return ZERO
        sign *= s
        word.append(pair)
    return UEElement({tuple(word): Fraction(coeff) * sign})


def bracket(x, y) -> UEElement:
    """Lie bracket of two generators, each given as an (i, j) pair."""
    (a, b), (i, j) = tuple(x), tuple(y)
    out = ZERO
    if b == i:
        out = out + gen(a, j)
    if b == j:
        out = out + gen(i, a)
    if a == i:
        out = out + gen(j, b)
    if a == j:
        out = out + gen(b, i)
    return out


_ORDER_MEMO: Dict[Monomial, Dict[Monomial, Fraction]] = {}


def _normal_order_monomial(word: Monomial) -> Dict[Monomial, Fraction]:
    """Canonical form of a word of canonical pairs, as {monomial: coeff}."""
    cached = _ORDER_MEMO.get(word)
    if cached is not None:
        return cached
    swap_at = None
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            swap_at = k
            break
    if swap_at is None:
        result = {word: Fraction(1)}
        _ORDER_MEMO[word] = result
        return result
    k = swap_at
    x, y = word[k], word[k + 1]
    out: Dict[Monomial, Fraction] = {}
    swapped = word[:k] + (y, x) + word[k + 2 :]
    for mono, coeff in _normal_order_monomial(swapped).items():
        out[mono] = out.get(mono, Fraction(0)) + coeff
    correction = bracket(x, y)
    for bmono, bcoeff in correction.terms.items():
        inserted = word[:k] + bmono + word[k + 2 :]
        for mono, coeff in _normal_order_monomial(inserted).items():
            new = out.get(mono, Fraction(0)) + bcoeff * coeff
            if new == 0:
                out.pop(mono, None)
            else:
                out[mono] = new
    out = {m: c for m, c in out.items() if c != 0}
    _ORDER_MEMO[word] = out
    return out


def normal_order(e: UEElement) -> UEElement:
    out: Dict[Monomial, Fraction] = {}
    for word, coeff in e.terms.items():
        for mono, c in _normal_order_monomial(word).items():
            new = out.get(mono, Fraction(0)) + coeff * c
            if new == 0:
                out.pop(mono, None)
            else:
                out[mono] = new
    return UEElement(out)


def _ctx_n(ctx) -> int:
    """Accept a RankContext or a bare integer n >= 1."""
    if isinstance(ctx, RankContext):
        return ctx.n
    if isinstance(ctx, int) and ctx >= 1:
        return ctx
    raise ValueError(f"need a rank context or integer n >= 1, got {ctx!r}")


def casimir(ctx, which: str = "full") -> UEElement:
    """-sum of X_ij^2 over 0 <= i < j <= n ("full") or 1 <= i < j <= n ("sub")."""
    n = _ctx_n(ctx)
    if which not in ("full", "sub"):
        raise ValueError(f"which must be 'full' or 'sub', got {which!r}")
    lo = 0 if which == "full" else 1
    terms: Dict[Monomial, Fraction] = {}
    for i in range(lo, n + 1):
        for j in range(i + 1, n + 1):
            terms[((i, j), (i, j))] = Fraction(-1)
    return UEElement(terms)


_AB_MEMO: Dict[Tuple[int, int], Tuple[UEElement, Tuple[UEElement, ...]]] = {}


def _ab_ladder(N: int, n: int):
    """(A^(N), (B_1^(N), ..., B_n^(N))) by the defining recursion, memoized."""
    key = (N, n)
    if key in _AB_MEMO:
        return _AB_MEMO[key]
    if N == 1:
        a = ZERO
        b = tuple(gen(0, j) for j in range(1, n + 1))
    else:
        a_prev, b_prev = _ab_ladder(N - 1, n)
        a = ZERO
        for k in range(1, n + 1):
            a = a + gen(k, 0) * b_prev[k - 1]
        b = []
        for j in range(1, n + 1):
            term = gen(0, j) * a_prev
            for k in range(1, n + 1):
                term = term + gen(k, j) * b_prev[k - 1]
            b.append(term)
        b = tuple(b)
    _AB_MEMO[key] = (a, b)
    return a, b


def build_A(N: int, ctx) -> UEElement:
    if N < 1:
        raise ValueError("need N >= 1")
    return _ab_ladder(N, _ctx_n(ctx))[0]


def build_B(N: int, ctx) -> Tuple[UEElement, ...]:
    if N < 1:
        raise ValueError("need N >= 1")
    return _ab_ladder(N, _ctx_n(ctx))[1]


_D_MEMO: Dict[Tuple[int, int], Tuple[UEElement, ...]] = {}


def build_Dj(ell: int, ctx) -> Tuple[UEElement, ...]:
    """(D_1^(ell), ..., D_n^(ell)): D_j^(1) = X_j0, D_k^(ell+1) = sum_j D_j^(ell) X_kj."""
    if ell < 1:
        raise ValueError("need ell >= 1")
    n = _ctx_n(ctx)
    key = (ell, n)
    if key in _D_MEMO:
        return _D_MEMO[key]
    if ell == 1:
        d = tuple(gen(j, 0) for j in range(1, n + 1))
    else:
        d_prev = build_Dj(ell - 1, ctx)
        d = []
        for k in range(1, n + 1):
            term = ZERO
            for j in range(1, n + 1):
                term = term + d_prev[j - 1] * gen(k, j)
            d.append(term)
        d = tuple(d)
    _D_MEMO[key] = d
    return d


def build_Dscript(ell: int, N: int, ctx) -> UEElement:
    """sum_j D_j^(ell) B_j^(N)."""
    if ell < 1 or N < 1:
        raise ValueError("need ell >= 1 and N >= 1")
    d = build_Dj(ell, ctx)
    b = build_B(N, ctx)
    out = ZERO
    for dj, bj in zip(d, b):
        out = out + dj * bj
    return out


def build_C(ell: int, ctx) -> UEElement:
    """C^(ell) = sum_j D_j^(ell-1) X_0j; defined for ell >= 2."""
    if ell < 2:
        raise ValueError("C^(ell) is defined for ell >= 2")
    return build_Dscript(ell - 1, 1, ctx)


def ad_gn(e: UEElement, ctx) -> UEElement:
    """Conjugation by diag(1, ..., 1, -1): X_ij -> -X_ij iff exactly one index is n."""
    n = _ctx_n(ctx)
    out: Dict[Monomial, Fraction] = {}
    for word, coeff in e.terms.items():
        sign = 1
        for i, j in word:
            if (i == n) != (j == n):
                sign = -sign
        out[word] = out.get(word, Fraction(0)) + sign * coeff
    return normal_order(UEElement(out))


def commutator(a: UEElement, b: UEElement) -> UEElement:
    return a * b - b * a


def is_invariant(e: UEElement, ctx) -> bool:
    """True iff e commutes with every subalgebra generator X_ab (1 <= a < b <= n)
    and is fixed by the g_n twist."""
    n = _ctx_n(ctx)
    e = normal_order(e)
    if ad_gn(e, ctx) != e:
        return False
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if not commutator(gen(a, b), e).is_zero():
                return False
    return True


def ue_to_obj(e: UEElement):
    """JSON-ready serialization: sorted [{"monomial": [[i,j], ...], "coeff": "p/q"}]."""
    from .rationals import rat_str

    items = sorted(e.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return [
        {"monomial": [[i, j] for i, j in mono], "coeff": rat_str(coeff)}
        for mono, coeff in items
    ]


# ---------------------------------------------------------------------------
# bundled identity suite (shared by the CLI and the acceptance tests)
# ---------------------------------------------------------------------------

def _check(failures, checks, name, params, lhs: UEElement, rhs: UEElement):
    checks[0] += 1
    le, re_ = normal_order(lhs), normal_order(rhs)
    if le != re_:
        failures.append({
            "check": name,
            "params": params,
            "lhs": ue_to_obj(le),
            "rhs": ue_to_obj(re_),
        })


def verify_identities(ctx, max_degree: int = 4):
    """Run the symbolic identity suite up to the given total degree.

    Covers: the degree-2 and degree-3 ladder elements against Casimir
    combinations; the ladder/transfer defining identities; the subalgebra
    commutation relations for every ladder family; the det-twist sign rules;
    and Jacobi on all generator triples.  Returns (checks_run, failures)
    where each failure is a replayable JSON-ready counterexample.
    """
    n = _ctx_n(ctx)
    failures: list = []
    checks = [0]

    # low-degree ladder elements vs Casimir combinations
    cG = casimir(n, "full")
    cGp = casimir(n, "sub")
    _check(failures, checks, "ladder2-casimir", {"n": n},
           build_A(2, n), cG - cGp)
    _check(failures, checks, "ladder3-casimir", {"n": n},
           build_A(3, n), cG.scale(1 - n) + cGp.scale(n))

    sub_pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]

    for total in range(2, max_degree + 1):
        for ell in range(1, total):
            N = total - ell
            # defining identities of the transfer elements
            _check(failures, checks, "transfer-def", {"n": n, "ell": ell, "N": N},
                   build_Dscript(ell, N, n),
                   sum((build_Dj(ell, n)[j] * build_B(N, n)[j] for j in range(n)),
                       ZERO))
            if N >= 2:
                _check(failures, checks, "transfer-split",
                       {"n": n, "ell": ell, "N": N},
                       build_Dscript(ell, N, n),
                       build_C(ell + 1, n) * build_A(N - 1, n)
                       + build_Dscript(ell + 1, N - 1, n))
        if total >= 2:
            _check(failures, checks, "chain-def", {"n": n, "ell": total},
                   build_C(total, n),
                   build_Dscript(total - 1, 1, n))
            dk_prev = build_Dj(total - 1, n)
            dk = build_Dj(total, n)
            for k in range(1, n + 1):
                _check(failures, checks, "chain-step", {"n": n, "ell": total, "k": k},
                       dk[k - 1],
                       sum((dk_prev[j - 1] * gen(k, j) for j in range(1, n + 1)),
                           ZERO))

    # commutation relations with the subalgebra, per family and degree
    for ell in range(1, max_degree):
        A = build_A(ell, n)
        B = build_B(ell, n)
        D = build_Dj(ell, n)
        for (a, b) in sub_pairs:
            x = gen(a, b)
            _check(failures, checks, "commute-A", {"n": n, "ell": ell, "a": a, "b": b},
                   commutator(x, A), ZERO)
            for j in range(1, n + 1):
                rhs = ZERO
                if b == j:
                    rhs = rhs + B[a - 1]
                if a == j:
                    rhs = rhs - B[b - 1]
                _check(failures, checks, "commute-B",
                       {"n": n, "ell": ell, "a": a, "b": b, "j": j},
                       commutator(x, B[j - 1]), rhs)
                rhs = ZERO
                if b == j:
                    rhs = rhs + D[a - 1]
                if a == j:
                    rhs = rhs - D[b - 1]
                _check(failures, checks, "commute-D",
                       {"n": n, "ell": ell, "a": a, "b": b, "j": j},
                       commutator(x, D[j - 1]), rhs)
        for N in range(1, max_degree - ell + 1):
            DS = build_Dscript(ell, N, n)
            for (a, b) in sub_pairs:
                _check(failures, checks, "commute-transfer",
                       {"n": n, "ell": ell, "N": N, "a": a, "b": b},
                       commutator(gen(a, b), DS), ZERO)

    # det-twist sign rules
    for ell in range(1, max_degree):
        _check(failures, checks, "twist-A", {"n": n, "ell": ell},
               ad_gn(build_A(ell, n), n), build_A(ell, n))
        B = build_B(ell, n)
        D = build_Dj(ell, n)
        for j in range(1, n + 1):
            sign = -1 if j == n else 1
            _check(failures, checks, "twist-B", {"n": n, "ell": ell, "j": j},
                   ad_gn(B[j - 1], n), B[j - 1].scale(sign))
            _check(failures, checks, "twist-D", {"n": n, "ell": ell, "j": j},
                   ad_gn(D[j - 1], n), D[j - 1].scale(sign))
        if ell >= 2:
            _check(failures, checks, "twist-chain", {"n": n, "ell": ell},
                   ad_gn(build_C(ell, n), n), build_C(ell, n))
        for N in range(1, max_degree - ell + 1):
            DS = build_Dscript(ell, N, n)
            _check(failures, checks, "twist-transfer", {"n": n, "ell": ell, "N": N},
                   ad_gn(DS, n), DS)

    # Jacobi on all generator triples
    gens = [(i, j) for i in range(0, n + 1) for j in range(i + 1, n + 1)]
    for xi_ in range(len(gens)):
        for yi in range(xi_ + 1, len(gens)):
            for zi in range(yi + 1, len(gens)):
                x, y, z = (gen(*gens[k]) for k in (xi_, yi, zi))
                _check(failures, checks, "jacobi",
                       {"n": n, "triple": [gens[xi_], gens[yi], gens[zi]]},
                       commutator(commutator(x, y), z)
                       + commutator(commutator(y, z), x)
                       + commutator(commutator(z, x), y),
                       ZERO)

    return checks[0], failures
