"""Exact character combinatorics for so(m) and the full orthogonal groups O(m).

Connected side: weight multiplicity tables for so(m)-irreps via Freudenthal's
recursion (types B_s and D_s plus abelian so(2)), Weyl-orbit spreading, and
highest-weight peeling of weight multisets.

Disconnected side: O(m)-irreps are indexed by partitions alpha with
alpha^T_1 + alpha^T_2 <= m; tensoring with det corresponds to the associate
partition (first column replaced by its complement).  Characters on both
components are computed through the classical h-determinant

    char_alpha(g) = det( h_{alpha_i - i + j}(x) - h_{alpha_i - i - j}(x) )

evaluated at the eigenvalue multiset x of g, with h_k the complete homogeneous
sums.  Evaluating at reflection-coset eigenvalues (entries like -1 or -t)
yields the twisted character data that resolves the +-/det-twist labels during
branching, independently of any matrix realization.

Laurent polynomials in torus variables are dicts {exponent tuple: Fraction}
(exponents may be negative), reusing the polyarith add/mul kernels.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .polyarith import p_add, p_mul, p_scale

# ---------------------------------------------------------------------------
# so(m) structure
# ---------------------------------------------------------------------------


def so_alg(m: int):
    """Cartan type of so(m) as ("B"|"D"|"so2", rank)."""
    if m < 2:
        raise ValueError(f"so({m}) is not supported")
    if m == 2:
        return ("so2", 1)
    s, rem = divmod(m, 2)
    return ("B", s) if rem else ("D", s)


def so_rank(m: int) -> int:
    return so_alg(m)[1]


def _positive_roots(kind: str, s: int):
    roots = []
    for i in range(s):
        for j in range(i + 1, s):
            for sign in (1, -1):
                root = [0] * s
                root[i], root[j] = 1, sign
                roots.append(tuple(root))
    if kind == "B":
        for i in range(s):
            root = [0] * s
            root[i] = 1
            roots.append(tuple(root))
    return roots


def _so_rho(kind: str, s: int):
    if kind == "B":
        return tuple(Fraction(2 * (s - i) + 1, 2) for i in range(1, s + 1))
    return tuple(Fraction(s - i) for i in range(1, s + 1))


def is_so_dominant(m: int, mu) -> bool:
    kind, s = so_alg(m)
    mu = tuple(int(c) for c in mu)
    if len(mu) != s:
        return False
    if kind == "so2":
        return True
    for k in range(s - 1):
        if mu[k] < mu[k + 1]:
            return False
    if kind == "B":
        return mu[-1] >= 0
    return s < 2 or mu[-2] >= abs(mu[-1])


def _dominantize(kind: str, v):
    """The dominant representative of the Weyl orbit of v."""
    mags = sorted((abs(c) for c in v), reverse=True)
    if kind == "B":
        return tuple(mags)
    negs = sum(1 for c in v if c < 0)
    out = list(mags)
    if negs % 2 and out[-1] != 0:
        out[-1] = -out[-1]
    return tuple(out)


def _orbit(kind: str, v):
    """All weights in the Weyl orbit of a dominant v."""
    out = set()
    has_zero = any(c == 0 for c in v)
    base_parity = sum(1 for c in v if c < 0) % 2
    for perm in set(permutations(v)):
        nonzero_positions = [k for k, c in enumerate(perm) if c != 0]
        for flips in product((1, -1), repeat=len(nonzero_positions)):
            w = list(perm)
            for pos, f in zip(nonzero_positions, flips):
                w[pos] *= f
            if kind == "D" and not has_zero:
                if sum(1 for c in w if c < 0) % 2 != base_parity:
                    continue
            out.add(tuple(w))
    return out


def _dot(a, b):
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


@lru_cache(maxsize=None)
def so_char(m: int, mu) -> "dict[tuple, int]":
    """Full weight multiset {weight: multiplicity} of the so(m)-irrep with
    (dominant, integral) highest weight mu."""
    kind, s = so_alg(m)
    mu = tuple(int(c) for c in mu)
    if not is_so_dominant(m, mu):
        raise ValueError(f"{mu} is not dominant for so({m})")
    if kind == "so2":
        return {mu: 1}
    pos = _positive_roots(kind, s)
    rho = _so_rho(kind, s)
    mu_norm = _dot(mu, mu)

    # Dominant weights below mu in the root-lattice cone.
    def cone_coords(diff):
        if kind == "B":
            coords = [sum(diff[:j]) for j in range(1, s)] + [sum(diff)]
        else:
            coords = [sum(diff[:j]) for j in range(1, s - 1)]
            head = sum(diff[: s - 2]) if s >= 2 else 0
            twice_a = head + diff[s - 2] - diff[s - 1] if s >= 2 else 0
            twice_b = head + diff[s - 2] + diff[s - 1] if s >= 2 else 0
            if twice_a % 2 or twice_b % 2:
                return None
            coords += [twice_a // 2, twice_b // 2]
        return coords

    bound = abs(mu[0]) if mu else 0
    dominants = []
    for cand in product(range(-bound, bound + 1), repeat=s):
        if not is_so_dominant(m, cand):
            continue
        if _dot(cand, cand) > mu_norm:
            continue
        diff = [a - b for a, b in zip(mu, cand)]
        coords = cone_coords(diff)
        if coords is None or any(c < 0 for c in coords):
            continue
        dominants.append(tuple(cand))

    # Freudenthal, outer weights first.
    dominants.sort(key=lambda v: _dot(v, v), reverse=True)
    mult: dict[tuple, int] = {mu: 1}

    def lookup(w):
        return mult.get(_dominantize(kind, w), 0)

    for v in dominants:
        if v == mu:
            continue
        denom = _dot(mu, mu) + 2 * _dot(mu, rho) - _dot(v, v) - 2 * _dot(v, rho)
        total = Fraction(0)
        for alpha in pos:
            k = 1
            while True:
                w = tuple(a + k * b for a, b in zip(v, alpha))
                if _dot(w, w) > mu_norm:
                    break
                mw = lookup(w)
                if mw:
                    total += 2 * mw * _dot(w, alpha)
                k += 1
        val = total / denom if denom else Fraction(0)
        if val:
            assert val.denominator == 1 and val >= 0, (m, mu, v, val)
            mult[v] = int(val)

    full: dict[tuple, int] = {}
    for v, c in mult.items():
        for w in _orbit(kind, v):
            full[w] = c
    return full


def weyl_dim(m: int, mu) -> int:
    return sum(so_char(m, tuple(mu)).values())


def peel(weights: "dict[tuple, int]", m: int) -> "dict[tuple, int]":
    """Decompose a Weyl-invariant weight multiset into so(m)-irreps by
    repeatedly removing the character of the lexicographically largest weight."""
    kind, _ = so_alg(m)
    remaining = {w: c for w, c in weights.items() if c}
    labels: dict[tuple, int] = {}
    if kind == "so2":
        return dict(sorted(remaining.items()))
    while remaining:
        top = max(remaining)
        count = remaining[top]
        assert count > 0, f"negative multiplicity {count} at {top} while peeling so({m})"
        assert is_so_dominant(m, top), f"lex-max weight {top} not dominant for so({m})"
        labels[top] = labels.get(top, 0) + count
        for w, c in so_char(m, top).items():
            new = remaining.get(w, 0) - count * c
            if new:
                remaining[w] = new
            else:
                remaining.pop(w, None)
    return labels


def restrict_weights(weights: "dict[tuple, int]", m_from: int) -> "dict[tuple, int]":
    """Push a weight multiset of so(m_from) down to the so(m_from - 1) torus.

    Even m_from drops the last coordinate (rank decreases); odd keeps all
    coordinates (equal rank).
    """
    if m_from % 2:
        return dict(weights)
    out: dict[tuple, int] = {}
    for w, c in weights.items():
        key = w[:-1]
        out[key] = out.get(key, 0) + c
    return out


# ---------------------------------------------------------------------------
# Partition bookkeeping for O(m)
# ---------------------------------------------------------------------------


def transpose_partition(alpha):
    alpha = tuple(a for a in alpha if a)
    if not alpha:
        return ()
    return tuple(sum(1 for a in alpha if a >= k) for k in range(1, alpha[0] + 1))


def partition_valid_for_o(m: int, alpha) -> bool:
    """Column condition alpha^T_1 + alpha^T_2 <= m for an O(m) label."""
    t = transpose_partition(alpha)
    c1 = t[0] if t else 0
    c2 = t[1] if len(t) > 1 else 0
    return c1 + c2 <= m


def associate_partition(m: int, alpha):
    """Partner partition under tensoring with det: first column -> m minus it."""
    alpha = tuple(a for a in alpha if a)
    if not partition_valid_for_o(m, alpha):
        raise ValueError(f"{alpha} is not a valid O({m}) label")
    t = list(transpose_partition(alpha))
    if not t:
        t = [0]
    t[0] = m - t[0]
    t = tuple(a for a in t if a)
    # transpose back (t is weakly decreasing by validity)
    return transpose_partition(t)


def label_to_partition(m: int, mu, eps: int):
    """O(m) label (row lengths mu, sign eps) -> partition.

    eps=+1 is the partition mu itself; eps=-1 its associate.  For even m with
    a full-length mu (mu_rank >= 1) both signs name the same representation.
    """
    alpha = tuple(int(c) for c in mu if c)
    if any(c < 0 for c in mu) or list(mu) != sorted(mu, reverse=True):
        raise ValueError(f"row label {mu} must be weakly decreasing and nonnegative")
    if len(alpha) > so_rank(m):
        raise ValueError(f"row label {mu} has more than {so_rank(m)} rows for O({m})")
    if eps not in (1, -1):
        raise ValueError("eps must be +-1")
    if eps == 1:
        return alpha
    return associate_partition(m, alpha)


def partition_to_label(m: int, alpha):
    """Partition -> canonical O(m) label (mu padded to the rank, eps)."""
    alpha = tuple(a for a in alpha if a)
    if not partition_valid_for_o(m, alpha):
        raise ValueError(f"{alpha} is not a valid O({m}) label")
    rank = so_rank(m)
    if len(alpha) <= rank:
        mu = alpha + (0,) * (rank - len(alpha))
        if m % 2 == 0 and len(alpha) == rank:
            return mu, 1  # self-associate: canonical sign +
        return mu, 1
    beta = associate_partition(m, alpha)
    mu = beta + (0,) * (rank - len(beta))
    return mu, -1


def o_irrep_dim(m: int, alpha) -> int:
    """Dimension through the h-determinant at m eigenvalues 1 (label-layer
    oracle, independent of Freudenthal)."""
    ones = [((), Fraction(1))] * m
    poly = o_char_on_multiset(alpha, ones, 0)
    val = poly.get((), Fraction(0))
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# Universal orthogonal characters on arbitrary eigenvalue multisets
# ---------------------------------------------------------------------------


def _h_sequence(terms, K: int, nvars: int):
    """h_0..h_K of a multiset given as single Laurent terms (exp tuple, coeff)."""
    zero_exp = (0,) * nvars
    hs = [dict() for _ in range(K + 1)]
    hs[0][zero_exp] = Fraction(1)
    for exp, coeff in terms:
        new = [dict() for _ in range(K + 1)]
        power_exp, power_coeff = zero_exp, Fraction(1)
        powers = []
        for _ in range(K + 1):
            powers.append((power_exp, power_coeff))
            power_exp = tuple(a + b for a, b in zip(power_exp, exp))
            power_coeff *= coeff
        for d in range(K + 1):
            acc = {}
            for a in range(d + 1):
                pexp, pcoeff = powers[a]
                if not pcoeff:
                    continue
                for e, c in hs[d - a].items():
                    key = tuple(x + y for x, y in zip(e, pexp))
                    v = acc.get(key, Fraction(0)) + c * pcoeff
                    if v:
                        acc[key] = v
                    else:
                        acc.pop(key, None)
            new[d] = acc
        hs = new
    return hs


def _det(rows):
    n = len(rows)
    if n == 0:
        return {(): Fraction(1)}
    if n == 1:
        return rows[0][0]
    out = {}
    for j in range(n):
        entry = rows[0][j]
        if not entry:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = p_mul(entry, _det(minor))
        out = p_add(out, term if j % 2 == 0 else p_scale(term, -1))
    return out


def o_char_on_multiset(alpha, terms, nvars: int):
    """Character of the O-irrep with partition alpha at an eigenvalue multiset.

    terms: the eigenvalues as single Laurent terms in nvars torus variables
    (constants 1 / -1 have the zero exponent).  Returns a Laurent polynomial.
    """
    alpha = tuple(a for a in alpha if a)
    ell = len(alpha)
    if ell == 0:
        return {(0,) * nvars if nvars else (): Fraction(1)}
    K = alpha[0] + ell
    hs = _h_sequence(terms, K, nvars)
    zero_exp = (0,) * nvars

    def h(k):
        if k < 0:
            return {}
        if k == 0:
            return {zero_exp: Fraction(1)}
        return hs[k]

    rows = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            row.append(p_add(h(alpha[i - 1] - i + j), p_scale(h(alpha[i - 1] - i - j), -1)))
        rows.append(row)
    return _det(rows)


def so_char_laurent(m: int, mu, nvars: int):
    """The so(m) character as a Laurent polynomial in its torus variables."""
    out = {}
    for w, c in so_char(m, tuple(mu)).items():
        exp = tuple(int(x) for x in w[:nvars])
        out[exp] = out.get(exp, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}
