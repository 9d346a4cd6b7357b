from fractions import Fraction

import pytest

from orthobranch.homspace import hom_space
from orthobranch.matrixrep import act, construct_irrep, standard_rep, trivial_rep
from orthobranch.measure import (
    IdentityViolationError,
    b_eval,
    b_reconstruct,
    closed_power_polynomial,
    measure_scalar,
    primary_projector,
    verify_power_identity,
)
from orthobranch.scalars import C_val, b_closed, scalar_query
from orthobranch.weights import rank_context

CTX3 = rank_context(3)
CTX4 = rank_context(4)

F = Fraction


def only_op(big, sub):
    mult, ops = hom_space(big, sub)
    assert mult == 1
    return ops[0]


def test_anchor_trivial_pair(reps):
    op = only_op(reps.get(4, (0, 0), 1), reps.get(4, (0, 0), None, which="sub"))
    res = measure_scalar(op, 1, 1)
    assert res.value.defined and res.value.value == 1
    q = scalar_query(CTX4, 1, 1, op.big.inf_char, op.sub.inf_char)
    assert res.value.value == C_val(q).value


def test_anchor_vector_pair(reps):
    op = only_op(reps.get(3, (1, 0)), reps.get(3, (0,), 1, which="sub"))
    res = measure_scalar(op, 1, 1)
    assert res.value.defined and res.value.value == F(3, 4)
    q = scalar_query(CTX3, 1, 1, op.big.inf_char, op.sub.inf_char)
    assert C_val(q).value == F(3, 4)


def test_measure_matches_closed_form_both_signs(reps):
    op = only_op(reps.get(3, (2, 1)), reps.get(3, (1,), None, which="sub"))
    for i in (1, 2):
        for eps in (1, -1):
            q = scalar_query(CTX3, i, eps, op.big.inf_char, op.sub.inf_char)
            want = C_val(q)
            if not want.defined:
                continue
            got = measure_scalar(op, i, eps)
            assert got.value.defined
            assert got.value.value == want.value


def test_measure_undefined_at_degenerate_factor(reps):
    # even n, lam_2 = 1/2, eps = -1: the normalizer factor 2*lam_2 + eps
    # vanishes, so the measured value is undefined (0 denominator)
    op = only_op(reps.get(4, (0, 0), 1), reps.get(4, (0, 0), None, which="sub"))
    q = scalar_query(CTX4, 2, -1, op.big.inf_char, op.sub.inf_char)
    from orthobranch.scalars import phi_val
    assert phi_val(q) == 0
    res = measure_scalar(op, 2, -1)
    assert not res.value.defined
    assert res.normalizer == 0


def test_power_identity(reps):
    assert verify_power_identity(standard_rep(CTX3), 1)
    assert verify_power_identity(standard_rep(CTX3), 2)
    assert verify_power_identity(standard_rep(CTX4), 2)
    assert verify_power_identity(trivial_rep(CTX3), 3)
    assert verify_power_identity(reps.get(3, (2, 0)), 2)


def test_b_eval_matches_closed_forms(reps):
    op = only_op(reps.get(4, (0, 0), 1), reps.get(4, (0, 0), None, which="sub"))
    lam, nu = op.big.inf_char, op.sub.inf_char
    assert b_eval(op, 1) == 0
    assert b_eval(op, 2) == b_closed(2, CTX4, lam, nu) == 0
    assert b_eval(op, 3) == b_closed(3, CTX4, lam, nu) == 0
    op2 = only_op(reps.get(3, (2, 1)), reps.get(3, (1,), None, which="sub"))
    lam2, nu2 = op2.big.inf_char, op2.sub.inf_char
    for ell in (1, 2, 3):
        assert b_eval(op2, ell) == b_closed(ell, CTX3, lam2, nu2)


def test_primary_projector_examples(reps):
    triv = reps.get(4, (0, 0), 1)
    comp = primary_projector(triv, 1, 1)
    assert comp.dim == 5
    assert comp.eigenvalue == 4  # Casimir scalar of the vector representation
    vec = reps.get(4, (1, 0), 1)
    comp2 = primary_projector(vec, 1, 1)
    assert comp2.dim == 14
    assert comp2.eigenvalue == 10
    # exit the chamber: rank-0 component
    triv_even = reps.get(3, (1, 1))
    comp3 = primary_projector(triv_even, 2, -1)
    if comp3.dim == 0:
        assert comp3.eigenvalue is None


def test_closed_power_polynomial_encoding():
    poly2 = closed_power_polynomial(2, CTX3)
    # ||lam||^2 - ||nu||^2 - n(n-1)/8 at n=3; keys hold exponents of the
    # squared coordinates ((lam_1^2, lam_2^2), (nu_1^2,))
    assert poly2[((1, 0), (0,))] == 1
    assert poly2[((0, 1), (0,))] == 1
    assert poly2[((0, 0), (1,))] == -1
    assert poly2[((0, 0), (0,))] == -F(3, 4)
    with pytest.raises(ValueError):
        closed_power_polynomial(4, CTX3)


def test_b_reconstruct_small(reps):
    got = b_reconstruct(2, CTX3)
    assert got == closed_power_polynomial(2, CTX3)
    assert b_reconstruct(1, CTX3) == {}
