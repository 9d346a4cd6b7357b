from fractions import Fraction

import pytest

from orthobranch.branching import (
    FDLabel,
    O_EVEN,
    O_ODD,
    family_base,
    fd_label,
    full_decomposition,
    inf_char_of,
    interlace_predicate,
    oracle_multiplicity,
    reduced_family,
    stability_scan,
)
from orthobranch.regions import FencePreconditionError
from orthobranch.weights import rank_context

CTX3 = rank_context(3)
CTX4 = rank_context(4)


def F(size, mu, eps=None):
    return fd_label(size, mu, eps)


def test_label_canonicalization():
    lab = F(5, (1,))
    assert lab.group_tag == O_ODD and lab.mu == (1, 0) and lab.eps == 1
    assert F(4, (2, 1)).eps == 1           # full rows: canonical sign
    assert F(4, (2, 1), -1).eps == 1       # det twist is isomorphic, folded
    assert F(4, (1, 0), -1).eps == -1      # zero last row keeps the sign
    with pytest.raises(ValueError):
        FDLabel(O_ODD, (1, 0), None)
    with pytest.raises(ValueError):
        F(5, (1, 2))


def test_label_dims():
    assert F(5, (1, 0)).dim() == 5
    assert F(5, (1, 0), -1).dim() == 5
    assert F(5, (2, 0)).dim() == 14
    assert F(4, (1, 0)).dim() == 4
    assert F(4, (1, 1)).dim() == 6
    assert F(3, (1,)).dim() == 3
    assert F(3, (0,), -1).dim() == 1


def test_inf_char_examples():
    assert inf_char_of(F(5, (1, 0))) == (Fraction(5, 2), Fraction(1, 2))
    assert inf_char_of(F(5, (0, 0))) == (Fraction(3, 2), Fraction(1, 2))
    assert inf_char_of(F(4, (1, 0))) == (Fraction(2), Fraction(0))
    assert inf_char_of(F(3, (2,))) == (Fraction(5, 2),)


def test_oracle_examples():
    assert oracle_multiplicity(F(5, (1, 0)), F(4, (0, 0))) == 1
    assert oracle_multiplicity(F(5, (3, 3)), F(4, (1, 0))) == 0
    assert oracle_multiplicity(F(5, (4, 2)), F(4, (3, 1))) == 1
    assert oracle_multiplicity(F(4, (1, 0)), F(3, (1,))) == 1
    assert oracle_multiplicity(F(4, (1, 0)), F(3, (0,), -1)) == 0


def test_full_decomposition_counts_dimensions():
    for big in (F(5, (2, 1)), F(4, (2, 1)), F(5, (1, 1))):
        parts = full_decomposition(big)
        assert sum(lab.dim() * c for lab, c in parts) == big.dim()
        assert all(c == 1 for _, c in parts)  # multiplicity-free pair


def test_det_twist_decomposition_mirrors():
    plus = dict((lab.partition, c)
                for lab, c in full_decomposition(F(5, (2, 0), 1)))
    minus = dict((lab.partition, c)
                 for lab, c in full_decomposition(F(5, (2, 0), -1)))
    assert sum(plus.values()) == sum(minus.values())
    assert plus != minus  # the twist moves the constituent labels


def test_interlace_examples():
    assert interlace_predicate(F(5, (4, 2)), F(4, (3, 1))) == 1
    assert interlace_predicate(F(5, (3, 3)), F(4, (1, 0))) == 0
    assert interlace_predicate(F(5, (0, 0)), F(4, (0, 0))) == 1
    assert interlace_predicate(F(5, (2, 1)), F(4, (2, 1))) == 1


def test_interlace_matches_oracle_small_grid():
    bigs = [F(5, mu, e) for mu in [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 1)]
            for e in (1, -1)]
    subs = []
    for m1 in range(4):
        for m2 in range(m1 + 1):
            if m2 >= 1:
                subs.append(F(4, (m1, m2)))
            else:
                subs.extend([F(4, (m1, 0)), F(4, (m1, 0), -1)])
    for big in bigs:
        for sub in subs:
            assert interlace_predicate(big, sub) == oracle_multiplicity(big, sub), \
                (big, sub)


def test_family_base():
    assert family_base(CTX3) == (Fraction(2), Fraction(1))           # big group O(4)
    assert family_base(CTX4, 1) == (Fraction(3, 2), Fraction(1, 2))  # big group O(5)
    with pytest.raises(ValueError):
        family_base(CTX4)  # odd-size big group needs the sign


def test_reduced_family():
    base_only = reduced_family(CTX4, 1, bound=0)
    assert len(base_only) == 1
    assert base_only[0] == FDLabel(O_ODD, (0, 0), 1)
    fam = reduced_family(CTX3, bound=2)
    assert all(lab.group_tag == O_EVEN for lab in fam)
    assert all(lab.mu[-1] >= 1 for lab in fam)  # zero last row excluded
    assert FDLabel(O_EVEN, (1, 1)) in fam
    assert FDLabel(O_EVEN, (3, 1)) in fam


def test_stability_scan_constant_one():
    rep = stability_scan((Fraction(13, 2), Fraction(5, 2)), F(4, (3, 1)), 4)
    assert rep.constant
    mults = dict(rep.samples)
    for t in range(3, 8):
        lam = (Fraction(2 * t + 3, 2), Fraction(5, 2))
        assert mults[lam] == 1
    drops = [(a, b, d) for a, b, d in rep.fence_crossings
             if b[0] == Fraction(7, 2)]
    assert drops and all(d == -1 for _, _, d in drops)


def test_stability_scan_all_zero():
    rep = stability_scan((Fraction(9, 2), Fraction(5, 2)), F(4, (0, 0)), 3)
    assert rep.constant
    assert rep.samples and all(m == 0 for _, m in rep.samples)


def test_stability_scan_fence_precondition():
    # nu = (4,1); xi_1 = 9/2 sits exactly on the fence nu_1 + 1/2
    with pytest.raises(FencePreconditionError):
        stability_scan((Fraction(9, 2), Fraction(5, 2)), F(4, (3, 1)), 2)


def test_stability_scan_lattice_alignment():
    with pytest.raises(ValueError):
        stability_scan((Fraction(6), Fraction(5, 2)), F(4, (3, 1)), 2)
