"""Fusion multiplicities for tensor products of sl(2) highest-weight modules.

For highest weights ``a`` and ``b``, the tensor product of the two cyclic
modules freely generated over the lowering operator carries, in each weight
``c = a + b - 2k`` (``k`` a non-negative integer), a space of dimension
``k + 1``; the dimension of its subspace killed by the raising operator counts
homomorphisms from the cyclic module of highest weight ``c`` into the tensor
product.  Generically that count is 1; on an explicit fence-bounded region of
integer parameters it jumps to 2.

Two independent routes are provided:

* :func:`fusion_multiplicity` — closed-form region test (piecewise-linear
  fences in the parameters).
* :func:`fusion_oracle` — exact kernel computation of the raising action on
  the standard monomial basis.

The two agree everywhere (this is checked exhaustively in the test suite).

Derivation of the closed form, recorded here because the region's orientation
matters.  Write ``u_m = f^m v_a (x) f^(k-m) v_b`` for ``m = 0..k``.  The
raising operator sends ``u_m`` to ``A_m u'_(m-1) + B'_m u'_m`` where
``A_m = m(a - m + 1)`` and ``B'_m = (k - m)(b - k + m + 1)``, with ``u'_j``
the weight-``(c+2)`` basis.  The resulting ``k x (k+1)`` matrix is chained:
row ``j`` is supported on columns ``j`` and ``j+1``.  Its kernel has dimension
2 exactly when some ``B'`` entry vanishes at a column index no later than a
vanishing ``A`` entry, which unpacks to

    a, b integers in [0, k-1]   and   k <= a + b + 1,

equivalently (eliminating k = (a+b-c)/2):

    |a - b| <= -c - 2   and   a + b + c >= -2,

together with integrality and the parity condition ``a + b - c`` a
non-negative even integer.  The first inequality says the weight fence
crossings of the two factors are nested; the second bounds the depth of the
target weight.  Both inequalities together force ``a, b >= 0``, so no
separate positivity clause is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple

from .linalg import nullspace

__all__ = [
    "FusionQuery",
    "fusion_multiplicity",
    "fusion_oracle",
    "fusion_grid",
]


@dataclass(frozen=True)
class FusionQuery:
    """Triple of highest weights (a, b, c) for a fusion multiplicity query."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))


def _even_natural(x: Fraction) -> bool:
    """True iff x is an even integer >= 0."""
    return x.denominator == 1 and x >= 0 and x.numerator % 2 == 0


def fusion_multiplicity(q: FusionQuery) -> int:
    """Closed-form fusion multiplicity.

    Returns 0 unless ``a + b - c`` is an even integer >= 0 (no vector of
    weight ``c`` of the right kind exists otherwise).  Returns 2 on the
    integer jump region

        ``|a - b| <= -c - 2``  and  ``a + b + c >= -2``,

    and 1 everywhere else.  The region is cut out by fences: the boundary
    hyperplanes are where an interleaving pattern between the two factor
    parameters and the target parameter degenerates.
    """
    a, b, c = q.a, q.b, q.c
    if not _even_natural(a + b - c):
        return 0
    integral = a.denominator == 1 and b.denominator == 1 and c.denominator == 1
    if integral and abs(a - b) <= -c - 2 and a + b + c >= -2:
        return 2
    return 1


def _weight_basis(k: int) -> List[int]:
    """Indices m of the basis u_m = f^m v_a (x) f^(k-m) v_b."""
    return list(range(k + 1))


def fusion_oracle(q: FusionQuery) -> int:
    """Independent multiplicity count by exact linear algebra.

    Computes the kernel dimension of the raising-operator action from the
    weight-``c`` space of the tensor product (dimension ``k + 1`` where
    ``k = (a + b - c)/2``) to the weight-``(c + 2)`` space (dimension ``k``),
    using the standard monomial basis action
    ``e . f^m v = m (a - m + 1) f^(m-1) v`` extended by the coproduct rule.
    """
    a, b, c = q.a, q.b, q.c
    if not _even_natural(a + b - c):
        return 0
    k = int((a + b - c) / 2)
    if k == 0:
        # One basis vector, mapping into a zero-dimensional space.
        return 1
    # rows: weight-(c+2) basis u'_j, j = 0..k-1; cols: u_m, m = 0..k.
    rows: List[List[Fraction]] = [
        [Fraction(0)] * (k + 1) for _ in range(k)
    ]
    for m in _weight_basis(k):
        coeff_a = m * (a - m + 1)  # lands on u'_(m-1)
        coeff_b = (k - m) * (b - (k - m) + 1)  # lands on u'_m
        if m >= 1 and coeff_a != 0:
            rows[m - 1][m] += coeff_a
        if m <= k - 1 and coeff_b != 0:
            rows[m][m] += coeff_b
    return len(nullspace(rows))


def fusion_grid(
    a_values: Iterable[Fraction], k_values: Iterable[int]
) -> List[Tuple[Fraction, Fraction, Fraction, int]]:
    """Tabulate (a, b, c, multiplicity) over all pairs from ``a_values`` and
    depths from ``k_values``, with ``c = a + b - 2k``.  Used by the demo CLI.
    """
    table = []
    avals = [Fraction(x) for x in a_values]
    for a in avals:
        for b in avals:
            for k in k_values:
                c = a + b - 2 * k
                q = FusionQuery(a, b, c)
                table.append((a, b, c, fusion_multiplicity(q)))
    return table
