"""Explicit matrix models of finite-dimensional orthogonal-group irreducibles.

Coordinates and conventions
---------------------------
A representation lives over a fixed tuple of ambient coordinate indices
(``0..n`` for the larger group of a nested pair, ``1..n`` for the smaller
one).  The Lie algebra basis consists of the rotation generators ``X[a,b]``
(``a < b`` ambient indices) acting on the coordinate functions by

    X[a,b] : z_b -> z_a,   z_a -> -z_b,   (others fixed),

so on column vectors ``X[a,b] = E[a,b] - E[b,a]`` (antisymmetric).  The
abstract bracket is

    [X[a,b], X[c,d]] = d(b,c) X[a,d] - d(a,c) X[b,d]
                       - d(b,d) X[a,c] + d(a,d) X[b,c].

Weight coordinates pair ambient indices from the *top*: weight coordinate
``k`` (1-based) corresponds to the index pair ``(i_{L-2k}, i_{L-2k+1})`` of
the ascending index tuple, and when the tuple has odd length the smallest
index is the left-over "spare".  With this suffix pairing the Cartan of the
smaller group is literally contained in the Cartan of the larger one, and
dropping the last weight coordinate matches the weight-restriction map used
by the character layer.  The distinguished reflection of every group is the
sign flip of the *largest* ambient coordinate, which is also the conjugation
used by the symbolic enveloping-algebra layer.

Irreducible models are built inside polynomials in two vector variables
``z, w``, written in complex weight coordinates: for each index pair ``(p,q)``
the variables ``zeta+ = z_p - i z_q`` (weight ``+e_k``) and
``zeta- = z_p + i z_q`` (weight ``-e_k``), plus the spare coordinate with
weight 0.  Every monomial then has a well-defined weight, so echelon bases
stay weight-homogeneous for free.  A highest-weight label ``(m1, m2)`` is
seeded by ``(zeta1+ in z)^(m1-m2) * D^(m2)`` with
``D = zeta1+(z) zeta2+(w) - zeta2+(z) zeta1+(w)``, the seed is checked to be
killed by all raising root vectors, and the module is the closure of the seed
under the lowering root vectors (plus the distinguished reflection for the
even-size full-row labels, whose orthogonal irreducible is induced from the
rotation subgroup).  Labels with more than two nonzero rows are out of scope
and raise ``ResourceLimitError``.

The det-twist ``eps = -1`` never changes the underlying polynomial model:
it multiplies the action of every reflection by ``-1`` (``twist_sign``).

Construction is self-verifying: seeds must be annihilated by raising
operators, the closure dimension must match the independent
character-theoretic dimension, and the quadratic Casimir must act by the
expected scalar on the whole basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .linalg import (
    Qi,
    QI_ONE,
    QI_ZERO,
    SparseVec,
    TrackedEchelon,
    qadd,
    qdiv,
    qi,
    qi_nullspace,
    qis0,
    qmul,
    qneg,
    qsub,
    sv_add_scaled,
    sv_scale,
)
from .weights import InvalidRankError, RankContext, ResourceLimitError, rank_context
from .characters import o_irrep_dim, so_rank
from .branching import FDLabel, O_EVEN, O_ODD, fd_label, inf_char_of

Pair = Tuple[int, int]
Combo = Dict[Pair, Qi]  # element of the rotation algebra as a combination of X[a,b]
Mono = Tuple[int, ...]  # dense exponent tuple over a frame's variable list
Poly = Dict[Mono, Qi]

_DEFAULT_DIM_CAP = 400


# ---------------------------------------------------------------------------
# abstract bracket on X[a,b] combinations
# ---------------------------------------------------------------------------

def _canon_pair(a: int, b: int) -> Tuple[Pair, Fraction]:
    if a == b:
        return (a, b), Fraction(0)
    if a < b:
        return (a, b), Fraction(1)
    return (b, a), Fraction(-1)


def _combo_add(target: Combo, pair: Pair, coeff: Qi) -> None:
    cur = target.get(pair, QI_ZERO)
    new = qadd(cur, coeff)
    if qis0(new):
        target.pop(pair, None)
    else:
        target[pair] = new


def so_bracket(e1: Combo, e2: Combo) -> Combo:
    """Bracket of two rotation-algebra elements given as X[a,b] combinations."""
    out: Combo = {}
    for (a, b), c1 in e1.items():
        for (c, d), c2 in e2.items():
            coeff = qmul(c1, c2)
            for (x, y), sign in (
                ((a, d), Fraction(1) if b == c else Fraction(0)),
                ((b, d), Fraction(-1) if a == c else Fraction(0)),
                ((a, c), Fraction(-1) if b == d else Fraction(0)),
                ((b, c), Fraction(1) if a == d else Fraction(0)),
            ):
                if sign == 0 or x == y:
                    continue
                pair, flip = _canon_pair(x, y)
                _combo_add(out, pair, qmul(coeff, (sign * flip, Fraction(0))))
    return out


# ---------------------------------------------------------------------------
# frames: index pairing, complex variables, root vectors
# ---------------------------------------------------------------------------

class Frame:
    """All coordinate data attached to one ascending tuple of ambient indices."""

    def __init__(self, indices: Tuple[int, ...]):
        if list(indices) != sorted(set(indices)):
            raise InvalidRankError(f"indices {indices} must be strictly ascending")
        if len(indices) < 1:
            raise InvalidRankError("a frame needs at least one index")
        self.indices = tuple(indices)
        L = len(indices)
        self.size = L
        self.num_pairs = L // 2
        self.spare: Optional[int] = indices[0] if L % 2 else None
        # weight coordinate k (1-based) <-> pair (indices[L-2k], indices[L-2k+1])
        self.pairs: Tuple[Pair, ...] = tuple(
            (indices[L - 2 * k], indices[L - 2 * k + 1]) for k in range(1, self.num_pairs + 1)
        )
        self.rank = self.num_pairs
        self.reflection_index = indices[-1]

        # variable list: for each vector set (0 = z, 1 = w):
        #   for k = 1..m: "+k" then "-k"; finally the spare if present.
        specs: List[Tuple[int, str, int]] = []  # (set, sign-kind, k)
        for set_id in (0, 1):
            for k in range(1, self.num_pairs + 1):
                specs.append((set_id, "+", k))
                specs.append((set_id, "-", k))
            if self.spare is not None:
                specs.append((set_id, "0", 0))
        self.var_specs = tuple(specs)
        self.nvars = len(specs)
        self.var_index: Dict[Tuple[int, str, int], int] = {s: i for i, s in enumerate(specs)}

        wts = []
        for (_set, kind, k) in specs:
            w = [0] * self.rank
            if kind == "+":
                w[k - 1] = 1
            elif kind == "-":
                w[k - 1] = -1
            wts.append(tuple(w))
        self.var_weight: Tuple[Tuple[int, ...], ...] = tuple(wts)

        # variable <-> real coordinate translation: zeta+- = z_p -+ i z_q
        half = Fraction(1, 2)
        self._var_to_z: List[List[Tuple[Tuple[int, int], Qi]]] = []
        z_to_var: Dict[Tuple[int, int], List[Tuple[int, Qi]]] = {}
        for vidx, (set_id, kind, k) in enumerate(specs):
            if kind == "0":
                entry = [((set_id, self.spare), QI_ONE)]
            else:
                p, q = self.pairs[k - 1]
                s = Fraction(-1) if kind == "+" else Fraction(1)
                entry = [((set_id, p), QI_ONE), ((set_id, q), qi(0, s))]
            self._var_to_z.append(entry)
        # inverses: z_p = (v+ + v-)/2 ; z_q = i(v+ - v-)/2 ; z_spare = v0
        for set_id in (0, 1):
            for k in range(1, self.num_pairs + 1):
                p, q = self.pairs[k - 1]
                vp = self.var_index[(set_id, "+", k)]
                vm = self.var_index[(set_id, "-", k)]
                z_to_var[(set_id, p)] = [(vp, qi(half)), (vm, qi(half))]
                z_to_var[(set_id, q)] = [(vp, qi(0, half)), (vm, qi(0, -half))]
            if self.spare is not None:
                z_to_var[(set_id, self.spare)] = [(self.var_index[(set_id, "0", 0)], QI_ONE)]
        self._z_to_var = z_to_var

        # distinguished reflection: flip the largest ambient index.
        # In variables: if it is the second member of pair 1, swap +1 <-> -1
        # (per vector set); if it is the spare (size-1 frame), negate it.
        refl: List[Tuple[int, Fraction]] = [(v, Fraction(1)) for v in range(self.nvars)]
        if self.num_pairs >= 1:
            for set_id in (0, 1):
                vp = self.var_index[(set_id, "+", 1)]
                vm = self.var_index[(set_id, "-", 1)]
                refl[vp] = (vm, Fraction(1))
                refl[vm] = (vp, Fraction(1))
        else:
            for set_id in (0, 1):
                v0 = self.var_index[(set_id, "0", 0)]
                refl[v0] = (v0, Fraction(-1))
        self.reflection_var_map = tuple(refl)

        self._pair_action_cache: Dict[Pair, Dict[int, Dict[int, Qi]]] = {}
        self._roots: Optional[Dict[Tuple[int, ...], Combo]] = None

    # -- linear action of X[a,b] on the variable space ----------------------

    def pair_action(self, a: int, b: int) -> Dict[int, Dict[int, Qi]]:
        """Action of X[a,b] (a < b) on variables: var -> {var': coeff}."""
        key = (a, b)
        cached = self._pair_action_cache.get(key)
        if cached is not None:
            return cached
        if a >= b or a not in self.indices or b not in self.indices:
            raise InvalidRankError(f"generator ({a},{b}) outside frame {self.indices}")
        table: Dict[int, Dict[int, Qi]] = {}
        for vidx in range(self.nvars):
            out: Dict[int, Qi] = {}
            for (set_id, j), coeff in self._var_to_z[vidx]:
                # X[a,b]: z_b -> z_a, z_a -> -z_b
                if j == b:
                    images = [((set_id, a), coeff)]
                elif j == a:
                    images = [((set_id, b), qneg(coeff))]
                else:
                    images = []
                for zkey, c in images:
                    for (v2, c2) in self._z_to_var[zkey]:
                        cur = out.get(v2, QI_ZERO)
                        new = qadd(cur, qmul(c, c2))
                        if qis0(new):
                            out.pop(v2, None)
                        else:
                            out[v2] = new
            if out:
                table[vidx] = out
        self._pair_action_cache[key] = table
        return table

    def combo_tables(self, combo: Combo) -> List[Tuple[Dict[int, Dict[int, Qi]], Qi]]:
        return [(self.pair_action(a, b), c) for (a, b), c in combo.items()]

    # -- Cartan and root vectors -------------------------------------------

    def cartan_combo(self, k: int) -> Combo:
        """h_k = i * X[p_k, q_k]; weights are its eigenvalues' k-th entries."""
        return {self.pairs[k - 1]: qi(0, 1)}

    def _ad_matrix(self, h: Combo, span: List[Pair]) -> List[List[Qi]]:
        pos = {p: i for i, p in enumerate(span)}
        cols = []
        for p in span:
            br = so_bracket(h, {p: QI_ONE})
            col = [QI_ZERO] * len(span)
            for pair, c in br.items():
                if pair not in pos:
                    raise AssertionError(f"ad image {pair} left candidate span {span}")
                col[pos[pair]] = c
            cols.append(col)
        return [[cols[j][i] for j in range(len(span))] for i in range(len(span))]

    def _solve_root(self, span: List[Pair], constraints: List[Tuple[int, int]]) -> Combo:
        """Unique (up to scale) combo in span with [h_k, Y] = c_k * i... eigen."""
        rows: List[List[Qi]] = []
        for (k, c) in constraints:
            mat = self._ad_matrix(self.cartan_combo(k), span)
            for i in range(len(span)):
                row = list(mat[i])
                row[i] = qsub(row[i], qi(c))
                rows.append(row)
        kern = qi_nullspace(rows)
        if len(kern) != 1:
            raise AssertionError(
                f"root space in span {span} with constraints {constraints} has dim {len(kern)}"
            )
        vec = kern[0]
        combo: Combo = {}
        for p, c in zip(span, vec):
            if not qis0(c):
                combo[p] = c
        return combo

    def root_vectors(self) -> Dict[Tuple[int, ...], Combo]:
        """All root vectors keyed by the root in weight coordinates."""
        if self._roots is not None:
            return self._roots
        roots: Dict[Tuple[int, ...], Combo] = {}
        m = self.rank
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                span = []
                for x in self.pairs[i - 1]:
                    for y in self.pairs[j - 1]:
                        pair, _ = _canon_pair(x, y)
                        span.append(pair)
                for ci in (1, -1):
                    for cj in (1, -1):
                        w = [0] * m
                        w[i - 1] = ci
                        w[j - 1] = cj
                        roots[tuple(w)] = self._solve_root(span, [(i, ci), (j, cj)])
            if self.spare is not None:
                u = self.spare
                span = [_canon_pair(u, x)[0] for x in self.pairs[i - 1]]
                for ci in (1, -1):
                    w = [0] * m
                    w[i - 1] = ci
                    roots[tuple(w)] = self._solve_root(span, [(i, ci)])
        self._roots = roots
        return roots

    def lowering_ops(self) -> List[Tuple[Tuple[int, ...], Combo]]:
        out = []
        for w, combo in sorted(self.root_vectors().items(), reverse=True):
            nz = next((c for c in w if c), 0)
            if nz < 0:
                out.append((w, combo))
        return out

    def raising_ops(self) -> List[Tuple[Tuple[int, ...], Combo]]:
        out = []
        for w, combo in sorted(self.root_vectors().items()):
            nz = next((c for c in w if c), 0)
            if nz > 0:
                out.append((w, combo))
        return out

    def own_rho(self) -> Tuple[Fraction, ...]:
        if self.size % 2:
            return tuple(Fraction(2 * (self.rank - k) + 1, 2) for k in range(1, self.rank + 1))
        return tuple(Fraction(self.rank - k) for k in range(1, self.rank + 1))


@lru_cache(maxsize=None)
def get_frame(indices: Tuple[int, ...]) -> Frame:
    return Frame(indices)


# ---------------------------------------------------------------------------
# sparse polynomial operations
# ---------------------------------------------------------------------------

def poly_apply_table(table: Dict[int, Dict[int, Qi]], poly: Poly, scale: Qi = QI_ONE) -> Poly:
    """Derivation action determined by a linear map on the variables."""
    out: Poly = {}
    for mono, coeff in poly.items():
        for v, exp in enumerate(mono):
            if not exp:
                continue
            tab = table.get(v)
            if not tab:
                continue
            base = qmul(coeff, qmul(scale, qi(exp)))
            for v2, c in tab.items():
                lst = list(mono)
                lst[v] -= 1
                lst[v2] += 1
                key = tuple(lst)
                cur = out.get(key, QI_ZERO)
                new = qadd(cur, qmul(base, c))
                if qis0(new):
                    out.pop(key, None)
                else:
                    out[key] = new
    return out


def poly_apply_pair(frame: Frame, a: int, b: int, poly: Poly) -> Poly:
    if a == b:
        return {}
    (aa, bb), sign = _canon_pair(a, b)
    return poly_apply_table(frame.pair_action(aa, bb), poly, qi(sign))


def poly_apply_combo(frame: Frame, combo: Combo, poly: Poly) -> Poly:
    out: Poly = {}
    for (a, b), c in combo.items():
        piece = poly_apply_table(frame.pair_action(a, b), poly, c)
        for k, v in piece.items():
            cur = out.get(k, QI_ZERO)
            new = qadd(cur, v)
            if qis0(new):
                out.pop(k, None)
            else:
                out[k] = new
    return out


def poly_reflect(frame: Frame, poly: Poly) -> Poly:
    out: Poly = {}
    for mono, coeff in poly.items():
        lst = [0] * frame.nvars
        sgn = Fraction(1)
        for v, exp in enumerate(mono):
            if not exp:
                continue
            v2, s = frame.reflection_var_map[v]
            lst[v2] += exp
            if s < 0 and exp % 2:
                sgn = -sgn
        key = tuple(lst)
        c = qmul(coeff, qi(sgn))
        cur = out.get(key, QI_ZERO)
        new = qadd(cur, c)
        if qis0(new):
            out.pop(key, None)
        else:
            out[key] = new
    return out


def mono_weight(frame: Frame, mono: Mono) -> Tuple[int, ...]:
    w = [0] * frame.rank
    for v, exp in enumerate(mono):
        if not exp:
            continue
        vw = frame.var_weight[v]
        for k in range(frame.rank):
            if vw[k]:
                w[k] += vw[k] * exp
    return tuple(w)


def poly_weight(frame: Frame, poly: Poly) -> Tuple[int, ...]:
    it = iter(poly)
    first = mono_weight(frame, next(it))
    for mono in it:
        if mono_weight(frame, mono) != first:
            raise AssertionError("polynomial is not weight-homogeneous")
    return first


_FACT_CACHE: Dict[int, int] = {0: 1}


def _fact(k: int) -> int:
    if k not in _FACT_CACHE:
        _FACT_CACHE[k] = k * _fact(k - 1)
    return _FACT_CACHE[k]


def fischer_pair(frame: Frame, p1: Poly, p2: Poly) -> Qi:
    """Invariant bilinear pairing: monomials pair with their sign-swapped
    duals, contributing (product of exponent factorials) * 2^(paired-variable
    degree).  Symmetric, nondegenerate, and infinitesimally invariant:
    B(Xu, v) = -B(u, Xv) for every rotation generator, B(gu, gv) = B(u, v)
    for the distinguished reflection."""
    total = QI_ZERO
    for mono, c1 in p1.items():
        lst = [0] * frame.nvars
        val = 1
        shift = 0
        for v, exp in enumerate(mono):
            if not exp:
                continue
            set_id, kind, k = frame.var_specs[v]
            if kind == "+":
                lst[frame.var_index[(set_id, "-", k)]] = exp
                shift += exp
            elif kind == "-":
                lst[frame.var_index[(set_id, "+", k)]] = exp
                shift += exp
            else:
                lst[v] = exp
            val *= _fact(exp)
        c2 = p2.get(tuple(lst))
        if c2 is None:
            continue
        total = qadd(total, qmul(qmul(c1, c2), qi(Fraction(val * (2 ** shift)))))
    return total


# ---------------------------------------------------------------------------
# polynomial models
# ---------------------------------------------------------------------------

@dataclass
class Recipe:
    """How basis vector i arose: kind is 'seed', 'op' (ops[op_index] applied
    to parent), or 'refl' (distinguished reflection of parent)."""

    kind: str
    parent: int = -1
    op_index: int = -1


class PolyModel:
    """A weight-graded polynomial realization with construction recipes."""

    def __init__(self, frame: Frame):
        self.frame = frame
        self.vectors: List[Poly] = []
        self.tags: List[Tuple[int, ...]] = []
        self.recipes: List[Recipe] = []
        self.ops: List[Combo] = []  # lowering operators used during closure
        self.ech = TrackedEchelon()
        self._gram_diag: Optional[List[Dict[int, Qi]]] = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates(self, poly: Poly) -> Optional[Dict[int, Qi]]:
        if not poly:
            return {}
        return self.ech.coordinates(poly)

    def try_insert(self, poly: Poly, tag: Tuple[int, ...], recipe: Recipe) -> Optional[int]:
        if not poly:
            return None
        idx = self.ech.insert(poly)
        if idx is None:
            return None
        assert idx == len(self.vectors)
        self.vectors.append(poly)
        self.tags.append(tag)
        self.recipes.append(recipe)
        return idx

    def gram_rows(self) -> List[Dict[int, Qi]]:
        """Sparse rows of the pairing matrix B[i][j] = B(b_i, b_j)."""
        if self._gram_diag is None:
            by_weight: Dict[Tuple[int, ...], List[int]] = {}
            for i, t in enumerate(self.tags):
                by_weight.setdefault(t, []).append(i)
            rows: List[Dict[int, Qi]] = [dict() for _ in range(self.dim)]
            for i in range(self.dim):
                dual = tuple(-c for c in self.tags[i])
                for j in by_weight.get(dual, ()):  # pairing vanishes off opposite weights
                    v = fischer_pair(self.frame, self.vectors[i], self.vectors[j])
                    if not qis0(v):
                        rows[i][j] = v
            self._gram_diag = rows
        return self._gram_diag


def _binom_seed(frame: Frame, mu: Sequence[int]) -> Poly:
    nonzero = [c for c in mu if c]
    if len(nonzero) > 2:
        raise ResourceLimitError(
            f"label rows {tuple(mu)}: models with more than two nonzero rows are out of scope"
        )
    m1 = mu[0] if len(mu) >= 1 else 0
    m2 = mu[1] if len(mu) >= 2 else 0
    if len(nonzero) >= 2 and frame.rank < 2:
        raise InvalidRankError(f"rows {tuple(mu)} need rank >= 2, frame has rank {frame.rank}")
    seed: Poly = {}
    a = m1 - m2
    vz1 = frame.var_index[(0, "+", 1)]
    if m2 == 0:
        mono = [0] * frame.nvars
        mono[vz1] = a
        seed[tuple(mono)] = QI_ONE
        return seed
    vz2 = frame.var_index[(0, "+", 2)]
    vw1 = frame.var_index[(1, "+", 1)]
    vw2 = frame.var_index[(1, "+", 2)]
    for k in range(m2 + 1):
        mono = [0] * frame.nvars
        mono[vz1] = a + (m2 - k)
        mono[vw2] = m2 - k
        mono[vz2] = k
        mono[vw1] = k
        c = Fraction(comb(m2, k) * ((-1) ** k))
        seed[tuple(mono)] = qi(c)
    return seed


def _is_induced(label: FDLabel) -> bool:
    return label.group_tag == O_EVEN and label.mu[-1] >= 1


def _close_model(frame: Frame, label: FDLabel, dim_cap: int) -> PolyModel:
    model = PolyModel(frame)
    mu = tuple(label.mu) + (0,) * (frame.rank - len(label.mu))
    seed = _binom_seed(frame, mu)
    tag = tuple(mu)
    assert poly_weight(frame, seed) == tag

    for w, combo in frame.raising_ops():
        if poly_apply_combo(frame, combo, seed):
            raise AssertionError(f"seed for {label} not annihilated by raising root {w}")

    lows = frame.lowering_ops()
    model.ops = [combo for _w, combo in lows]
    shifts = [w for w, _c in lows]
    use_refl = _is_induced(label)

    model.try_insert(seed, tag, Recipe("seed"))
    queue = [0]
    while queue:
        i = queue.pop()
        base = model.vectors[i]
        base_tag = model.tags[i]
        for op_index, combo in enumerate(model.ops):
            img = poly_apply_combo(frame, combo, base)
            if not img:
                continue
            new_tag = tuple(a + b for a, b in zip(base_tag, shifts[op_index]))
            idx = model.try_insert(img, new_tag, Recipe("op", i, op_index))
            if idx is not None:
                if model.dim > dim_cap:
                    raise ResourceLimitError(
                        f"model for {label} exceeded dimension cap {dim_cap}"
                    )
                queue.append(idx)
        if use_refl:
            img = poly_reflect(frame, base)
            new_tag = (-base_tag[0],) + base_tag[1:] if frame.rank else base_tag
            idx = model.try_insert(img, new_tag, Recipe("refl", i))
            if idx is not None:
                if model.dim > dim_cap:
                    raise ResourceLimitError(
                        f"model for {label} exceeded dimension cap {dim_cap}"
                    )
                queue.append(idx)
    if not use_refl:
        # non-induced labels: the span must already be reflection-stable
        for v in model.vectors:
            if model.coordinates(poly_reflect(frame, v)) is None:
                raise AssertionError(f"model for {label} is not reflection-stable")
    return model


# ---------------------------------------------------------------------------
# representation objects
# ---------------------------------------------------------------------------

@dataclass
class MatrixRep:
    """A concrete finite-dimensional representation with exact matrices.

    ``action`` maps a generator pair (a, b), a < b, to its matrix (rows of
    complex rationals; column j holds the coordinates of the image of basis
    vector j).  ``reflection()`` returns the matrix of the distinguished
    reflection (largest-coordinate sign flip), including the det-twist.
    """

    dim: int
    group_tag: str
    label: Optional[FDLabel]
    highest_weight: Optional[Tuple[int, ...]]
    inf_char: Tuple[Fraction, ...]
    indices: Tuple[int, ...]
    twist_sign: int = 1
    kind: str = "model"
    model: Optional[PolyModel] = None
    _mats: Dict[Pair, List[List[Qi]]] = field(default_factory=dict, repr=False)
    _sparse: Dict[Pair, List[Dict[int, Qi]]] = field(default_factory=dict, repr=False)
    _refl: Optional[List[List[Qi]]] = field(default=None, repr=False)
    cache: Dict = field(default_factory=dict, repr=False)

    @property
    def group_size(self) -> int:
        return len(self.indices)

    @property
    def frame(self) -> Frame:
        return get_frame(self.indices)

    # -- sparse columns of a generator -------------------------------------

    def sparse_action(self, a: int, b: int) -> List[Dict[int, Qi]]:
        """Columns of X[a,b]: col[j] = {i: coeff}.  a < b required."""
        key = (a, b)
        cached = self._sparse.get(key)
        if cached is not None:
            return cached
        if a >= b:
            raise InvalidRankError("sparse_action requires a < b")
        if a not in self.indices or b not in self.indices:
            raise InvalidRankError(
                f"generator ({a},{b}) outside representation coordinates {self.indices}"
            )
        if self.kind == "standard":
            pos = {idx: i for i, idx in enumerate(self.indices)}
            cols: List[Dict[int, Qi]] = [dict() for _ in range(self.dim)]
            cols[pos[b]][pos[a]] = QI_ONE
            cols[pos[a]][pos[b]] = qneg(QI_ONE)
        elif self.model is not None:
            frame = self.frame
            cols = []
            for v in self.model.vectors:
                img = poly_apply_pair(frame, a, b, v)
                coords = self.model.coordinates(img)
                if coords is None:
                    raise AssertionError(
                        f"generator ({a},{b}) image left the model span (dim {self.dim})"
                    )
                cols.append(coords)
        else:
            cols = [dict() for _ in range(self.dim)]
        self._sparse[key] = cols
        return cols

    def action(self, a: int, b: int) -> List[List[Qi]]:
        """Dense matrix of X[a,b] (a < b)."""
        key = (a, b)
        cached = self._mats.get(key)
        if cached is not None:
            return cached
        cols = self.sparse_action(a, b)
        rows = [[QI_ZERO] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(cols):
            for i, c in col.items():
                rows[i][j] = c
        self._mats[key] = rows
        return rows

    def reflection(self) -> List[List[Qi]]:
        """Matrix of the distinguished reflection, det-twist included."""
        if self._refl is not None:
            return self._refl
        tw = qi(Fraction(self.twist_sign))
        if self.kind == "standard":
            pos = {idx: i for i, idx in enumerate(self.indices)}
            rows = [[QI_ZERO] * self.dim for _ in range(self.dim)]
            for idx in self.indices:
                i = pos[idx]
                sign = Fraction(-1) if idx == self.frame.reflection_index else Fraction(1)
                rows[i][i] = qmul(tw, qi(sign))
        elif self.model is not None:
            rows = [[QI_ZERO] * self.dim for _ in range(self.dim)]
            for j, v in enumerate(self.model.vectors):
                img = poly_reflect(self.frame, v)
                coords = self.model.coordinates(img)
                if coords is None:
                    raise AssertionError("reflection image left the model span")
                for i, c in coords.items():
                    rows[i][j] = qmul(tw, c)
        else:
            rows = [[tw if i == j else QI_ZERO for j in range(self.dim)] for i in range(self.dim)]
        self._refl = rows
        return rows

    def weight_tags(self) -> List[Tuple[int, ...]]:
        if self.model is not None:
            return list(self.model.tags)
        if self.kind == "standard":
            # f-basis vectors are not weight vectors; tags are not defined
            raise InvalidRankError("standard-basis representation has no weight-graded basis")
        return [tuple()] * self.dim


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _indices_for(ctx_or_size, which: str) -> Tuple[int, ...]:
    if isinstance(ctx_or_size, RankContext):
        n = ctx_or_size.n
        if which == "big":
            return tuple(range(0, n + 1))
        if which == "sub":
            return tuple(range(1, n + 1))
        raise InvalidRankError(f"unknown side {which!r}")
    raise InvalidRankError("expected a RankContext")


def standard_rep(ctx: RankContext) -> MatrixRep:
    """The defining representation of the larger group on coordinates 0..n,
    with literal antisymmetric generator matrices in the f-basis."""
    indices = _indices_for(ctx, "big")
    size = len(indices)
    mu = (1,) + (0,) * (so_rank(size) - 1) if size > 2 else (1,)
    label = fd_label(size, mu, 1 if size % 2 else None)
    rep = MatrixRep(
        dim=size,
        group_tag=label.group_tag,
        label=label,
        highest_weight=label.mu,
        inf_char=inf_char_of(label),
        indices=indices,
        twist_sign=1,
        kind="standard",
        model=None,
    )
    _verify_rep(rep, probes=size)
    return rep


def trivial_rep(ctx_or_indices, eps: int = 1, which: str = "big") -> MatrixRep:
    """The one-dimensional representation (eps = -1: the determinant)."""
    if isinstance(ctx_or_indices, RankContext):
        indices = _indices_for(ctx_or_indices, which)
    else:
        indices = tuple(ctx_or_indices)
    size = len(indices)
    rank = so_rank(size) if size > 2 else 1
    label = fd_label(size, (0,) * rank, eps if (size % 2 or eps == -1) else None)
    frame = get_frame(indices)
    model = PolyModel(frame)
    model.try_insert({tuple([0] * frame.nvars): QI_ONE}, (0,) * frame.rank, Recipe("seed"))
    return MatrixRep(
        dim=1,
        group_tag=label.group_tag,
        label=label,
        highest_weight=label.mu,
        inf_char=inf_char_of(label),
        indices=indices,
        twist_sign=eps,
        kind="model",
        model=model,
    )


def construct_irrep(
    ctx_or_indices,
    mu,
    eps: Optional[int] = None,
    which: str = "big",
    dim_cap: int = _DEFAULT_DIM_CAP,
    verify: bool = True,
) -> MatrixRep:
    """Build the orthogonal-group irreducible with row lengths mu and sign eps
    over the requested coordinate set ('big' = 0..n, 'sub' = 1..n when given a
    rank context; any ascending index tuple is accepted directly).

    The result is checked against the independent character-theoretic
    dimension, the Casimir scalar, and bracket relations on probe vectors.
    """
    if isinstance(ctx_or_indices, RankContext):
        indices = _indices_for(ctx_or_indices, which)
    else:
        indices = tuple(ctx_or_indices)
    size = len(indices)
    label = fd_label(size, mu, eps)
    if all(c == 0 for c in label.mu):
        return trivial_rep(indices, eps=label.eps if label.eps is not None else 1)
    frame = get_frame(indices)
    twist = 1
    if label.eps == -1:
        if label.group_tag == O_ODD or label.mu[-1] == 0:
            twist = -1
    expected = o_irrep_dim(size, label.partition)
    if expected > dim_cap:
        raise ResourceLimitError(
            f"irreducible {label} has dimension {expected} > cap {dim_cap}"
        )
    model = _close_model(frame, label, dim_cap)
    if model.dim != expected:
        raise AssertionError(
            f"model for {label} has dimension {model.dim}, character theory says {expected}"
        )
    rep = MatrixRep(
        dim=model.dim,
        group_tag=label.group_tag,
        label=label,
        highest_weight=label.mu,
        inf_char=inf_char_of(label),
        indices=indices,
        twist_sign=twist,
        kind="model",
        model=model,
    )
    if verify:
        _verify_rep(rep)
    return rep


def subgroup_irrep(ctx: RankContext, mu, eps: Optional[int] = None,
                   dim_cap: int = _DEFAULT_DIM_CAP) -> MatrixRep:
    return construct_irrep(ctx, mu, eps=eps, which="sub", dim_cap=dim_cap)


# ---------------------------------------------------------------------------
# verification helpers
# ---------------------------------------------------------------------------

def _apply_cols(cols: List[Dict[int, Qi]], vec: Dict[int, Qi]) -> Dict[int, Qi]:
    out: Dict[int, Qi] = {}
    for j, c in vec.items():
        col = cols[j]
        for i, a in col.items():
            cur = out.get(i, QI_ZERO)
            new = qadd(cur, qmul(c, a))
            if qis0(new):
                out.pop(i, None)
            else:
                out[i] = new
    return out


def casimir_scalar(rep: MatrixRep) -> Fraction:
    """Scalar of the quadratic invariant -sum X[a,b]^2 over the frame's own
    generators; raises if the action is not scalar."""
    frame = rep.frame
    pairs = [(a, b) for i, a in enumerate(frame.indices) for b in frame.indices[i + 1:]]
    expected: Optional[Qi] = None
    for j in range(rep.dim):
        vec = {j: QI_ONE}
        acc: Dict[int, Qi] = {}
        for (a, b) in pairs:
            cols = rep.sparse_action(a, b)
            img = _apply_cols(cols, _apply_cols(cols, vec))
            for i, c in img.items():
                cur = acc.get(i, QI_ZERO)
                new = qsub(cur, c)
                if qis0(new):
                    acc.pop(i, None)
                else:
                    acc[i] = new
        scal = acc.get(j, QI_ZERO)
        rest = {i: c for i, c in acc.items() if i != j}
        if rest:
            raise AssertionError("quadratic invariant does not act by a scalar")
        if expected is None:
            expected = scal
        elif expected != scal:
            raise AssertionError("quadratic invariant scalar differs between basis vectors")
    assert expected is not None and expected[1] == 0
    return expected[0]


def expected_casimir_scalar(rep: MatrixRep) -> Fraction:
    frame = rep.frame
    rho_own = frame.own_rho()
    lam = rep.inf_char
    return sum(c * c for c in lam) - sum(c * c for c in rho_own)


def _verify_rep(rep: MatrixRep, probes: int = 3) -> None:
    """Casimir scalar plus bracket fidelity on probe vectors."""
    cas = casimir_scalar(rep)
    exp = expected_casimir_scalar(rep)
    if cas != exp:
        raise AssertionError(f"Casimir scalar {cas} != expected {exp} for {rep.label}")
    frame = rep.frame
    pairs = [(a, b) for i, a in enumerate(frame.indices) for b in frame.indices[i + 1:]]
    pv: List[Dict[int, Qi]] = []
    step = max(1, rep.dim // max(probes, 1))
    for t in range(0, rep.dim, step):
        pv.append({t: QI_ONE, (t + 1) % rep.dim: qi(1, 1)})
    for (a, b) in pairs:
        for (c, d) in pairs:
            br = so_bracket({(a, b): QI_ONE}, {(c, d): QI_ONE})
            c1 = rep.sparse_action(a, b)
            c2 = rep.sparse_action(c, d)
            for vec in pv:
                lhs = _apply_cols(c1, _apply_cols(c2, vec))
                rhs0 = _apply_cols(c2, _apply_cols(c1, vec))
                for i, v in rhs0.items():
                    cur = lhs.get(i, QI_ZERO)
                    new = qsub(cur, v)
                    if qis0(new):
                        lhs.pop(i, None)
                    else:
                        lhs[i] = new
                want: Dict[int, Qi] = {}
                for pair, coeff in br.items():
                    img = _apply_cols(rep.sparse_action(*pair), vec)
                    for i, v in img.items():
                        cur = want.get(i, QI_ZERO)
                        new = qadd(cur, qmul(coeff, v))
                        if qis0(new):
                            want.pop(i, None)
                        else:
                            want[i] = new
                if lhs != want:
                    raise AssertionError(
                        f"bracket fidelity failed for [{(a,b)},{(c,d)}] on {rep.label}"
                    )


# ---------------------------------------------------------------------------
# enveloping-algebra action
# ---------------------------------------------------------------------------

def act(element, rep: MatrixRep) -> List[List[Qi]]:
    """Matrix of a universal-enveloping element (dict of generator-pair words
    to rational coefficients) on the representation.  Word (g1, ..., gk) acts
    as the operator product g1 ... gk.  Generators outside the
    representation's coordinate set raise InvalidRankError."""
    terms = element.terms if hasattr(element, "terms") else element
    dim = rep.dim
    out = [[QI_ZERO] * dim for _ in range(dim)]
    for word, coeff in terms.items():
        c = qi(Fraction(coeff))
        for (a, b) in word:
            if a not in rep.indices or b not in rep.indices:
                raise InvalidRankError(
                    f"generator ({a},{b}) outside representation coordinates {rep.indices}"
                )
        # apply right-to-left on each basis column
        for j in range(dim):
            vec = {j: QI_ONE}
            for (a, b) in reversed(word):
                vec = _apply_cols(rep.sparse_action(a, b), vec)
                if not vec:
                    break
            for i, v in vec.items():
                cur = out[i][j]
                new = qadd(cur, qmul(c, v))
                out[i][j] = new
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def qi_to_string(x: Qi) -> str:
    re, im = x
    if im == 0:
        return f"{re.numerator}/{re.denominator}"
    return f"{re.numerator}/{re.denominator}+{im.numerator}/{im.denominator}i"


def qi_from_string(s: str) -> Qi:
    s = s.strip()
    if s.endswith("i"):
        body = s[:-1]
        cut = body.find("+", 1)
        if cut == -1:
            cut = body.find("-", 1)
            while cut != -1 and body[cut - 1] in "+-/eE":
                cut = body.find("-", cut + 1)
        if cut == -1:
            raise ValueError(f"cannot parse complex rational {s!r}")
        return (Fraction(body[:cut]), Fraction(body[cut:] if body[cut] != "+" else body[cut + 1:]))
    return (Fraction(s), Fraction(0))


def rep_to_bundle(rep: MatrixRep, generators: Optional[List[Pair]] = None) -> dict:
    """JSON-ready bundle: dimension, generator list, row-major matrices as
    exact rational strings, and descriptive metadata."""
    frame = rep.frame
    if generators is None:
        generators = [(a, b) for i, a in enumerate(frame.indices) for b in frame.indices[i + 1:]]
    matrices = {}
    for (a, b) in generators:
        rows = rep.action(a, b)
        matrices[f"{a},{b}"] = [qi_to_string(x) for row in rows for x in row]
    return {
        "dim": rep.dim,
        "generators": [[a, b] for (a, b) in generators],
        "matrices": matrices,
        "metadata": {
            "group_tag": rep.group_tag,
            "rows": list(rep.label.mu) if rep.label else None,
            "eps": rep.label.eps if rep.label else None,
            "indices": list(rep.indices),
            "highest_weight": (
                [str(c) for c in rep.highest_weight] if rep.highest_weight else None
            ),
            "inf_char": [str(Fraction(c)) for c in rep.inf_char],
            "twist_sign": rep.twist_sign,
            "kind": rep.kind,
        },
    }


def det_twisted(rep: MatrixRep) -> MatrixRep:
    """Sibling representation tensored with the determinant character.

    The generator action is unchanged, so the matrix caches are shared; only
    the distinguished-reflection sign and the label's sign flip.  When the
    twist is isomorphic to the original (even group size with a nonzero last
    row), the representation itself is returned."""
    if rep.label is None:
        raise InvalidRankError("det twist needs a labeled representation")
    lbl = rep.label
    if lbl.group_tag == O_EVEN and lbl.mu[-1] >= 1:
        return rep
    new_label = FDLabel(lbl.group_tag, lbl.mu, -lbl.eps)
    return MatrixRep(
        dim=rep.dim,
        group_tag=rep.group_tag,
        label=new_label,
        highest_weight=rep.highest_weight,
        inf_char=rep.inf_char,
        indices=rep.indices,
        twist_sign=-rep.twist_sign,
        kind=rep.kind,
        model=rep.model,
        _mats=rep._mats,
        _sparse=rep._sparse,
        _refl=None,
        cache=rep.cache,
    )


def rep_from_bundle(bundle: dict) -> MatrixRep:
    """Rebuild a literal matrix representation from a serialized bundle.

    The generator matrices are stored verbatim; algebraic sanity (bracket
    fidelity, Casimir scalar) is re-established by the caller via
    verify-style checks, not assumed."""
    meta = bundle["metadata"]
    indices = tuple(int(i) for i in meta["indices"])
    dim = int(bundle["dim"])
    mats: Dict[Pair, List[List[Qi]]] = {}
    sparse: Dict[Pair, List[Dict[int, Qi]]] = {}
    for key, flat in bundle["matrices"].items():
        a_s, b_s = key.split(",")
        pair = (int(a_s), int(b_s))
        vals = [qi_from_string(s) for s in flat]
        if len(vals) != dim * dim:
            raise ValueError(
                f"matrix {key} has {len(vals)} entries, expected {dim * dim}"
            )
        rows = [vals[r * dim:(r + 1) * dim] for r in range(dim)]
        mats[pair] = rows
        cols: List[Dict[int, Qi]] = [dict() for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                if not qis0(rows[i][j]):
                    cols[j][i] = rows[i][j]
        sparse[pair] = cols
    label = None
    if meta.get("rows") is not None:
        from .branching import fd_label
        label = fd_label(len(indices), tuple(meta["rows"]), meta.get("eps"))
    hw = meta.get("highest_weight")
    return MatrixRep(
        dim=dim,
        group_tag=meta["group_tag"],
        label=label,
        highest_weight=tuple(Fraction(c) for c in hw) if hw else None,
        inf_char=tuple(Fraction(c) for c in meta["inf_char"]),
        indices=indices,
        twist_sign=int(meta.get("twist_sign", 1)),
        kind="bundle",
        model=None,
        _mats=mats,
        _sparse=sparse,
    )


def bundle_to_json(bundle: dict) -> str:
    return json.dumps(bundle, sort_keys=True, indent=2)
