from fractions import Fraction

import pytest

from orthobranch.enveloping import (
    UEElement,
    ad_gn,
    bracket,
    build_A,
    build_B,
    build_C,
    build_Dj,
    build_Dscript,
    casimir,
    commutator,
    gen,
    is_invariant,
    monomial,
    normal_order,
    ue_to_obj,
    verify_identities,
)

ZERO = UEElement({})


def test_gen_antisymmetry_and_diagonal():
    assert gen(1, 0) == gen(0, 1).scale(-1)
    assert gen(2, 2).is_zero()
    assert gen(0, 1) + gen(1, 0) == ZERO


def test_bracket_examples():
    assert bracket((0, 1), (1, 2)) == gen(0, 2)
    assert bracket((0, 1), (2, 3)).is_zero()
    assert bracket((0, 1), (0, 1)).is_zero()


def test_bracket_antisymmetry_random_pairs():
    pairs = [(0, 1), (1, 2), (0, 3), (2, 3), (1, 3)]
    for x in pairs:
        for y in pairs:
            assert bracket(x, y) == bracket(y, x).scale(-1)


def test_normal_order_single_swap():
    lhs = normal_order(monomial([(1, 2), (0, 1)]))
    rhs = monomial([(0, 1), (1, 2)]) - gen(0, 2)
    assert lhs == rhs


def test_normal_order_fixpoint_and_zero():
    ordered = monomial([(0, 1), (1, 2)])
    assert normal_order(ordered) == ordered
    assert normal_order(ZERO) == ZERO


def test_normal_order_respects_products():
    # (X01 * X12) * X02  ==  X01 * (X12 * X02) after ordering
    a, b, c = gen(0, 1), gen(1, 2), gen(0, 2)
    assert normal_order((a * b) * c) == normal_order(a * (b * c))


def test_casimir_expansion_n2():
    expect = (monomial([(0, 1), (0, 1)])
              + monomial([(0, 2), (0, 2)])
              + monomial([(1, 2), (1, 2)])).scale(-1)
    assert casimir(2, "full") == expect
    assert casimir(2, "sub") == monomial([(1, 2), (1, 2)]).scale(-1)
    assert casimir(1, "full") == monomial([(0, 1), (0, 1)]).scale(-1)


def test_casimir_is_central():
    n = 3
    c = casimir(n, "full")
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            assert normal_order(commutator(gen(i, j), c)).is_zero()


def test_ladder_low_degree():
    n = 4
    assert build_A(1, n).is_zero()
    expect = ZERO
    for a in range(1, n + 1):
        expect = expect + monomial([(a, 0), (0, a)])
    assert normal_order(build_A(2, n)) == normal_order(expect)
    assert build_B(1, n) == tuple(gen(0, j) for j in range(1, n + 1))
    assert build_Dj(1, n) == tuple(gen(j, 0) for j in range(1, n + 1))


def test_degree3_ladder_is_casimir_combination():
    for n in (2, 3, 4):
        lhs = normal_order(build_A(3, n))
        rhs = normal_order(
            casimir(n, "full").scale(1 - n) + casimir(n, "sub").scale(n))
        assert lhs == rhs


def test_chain_and_transfer_definitions():
    n = 3
    assert normal_order(build_C(2, n)) == normal_order(build_Dscript(1, 1, n))
    lhs = normal_order(build_Dscript(2, 2, n))
    rhs = normal_order(build_C(3, n) * build_A(1, n) + build_Dscript(3, 1, n))
    assert lhs == rhs
    with pytest.raises(ValueError):
        build_C(1, n)
    with pytest.raises(ValueError):
        build_A(0, n)


def test_twist_signs():
    n = 3
    assert ad_gn(gen(0, n), n) == gen(0, n).scale(-1)
    assert ad_gn(gen(0, 1), n) == gen(0, 1)
    a3 = build_A(3, n)
    assert ad_gn(a3, n) == normal_order(a3)
    bs = build_B(2, n)
    assert ad_gn(bs[n - 1], n) == normal_order(bs[n - 1]).scale(-1)
    assert ad_gn(bs[0], n) == normal_order(bs[0])


def test_invariance():
    n = 3
    assert is_invariant(build_A(3, n), n)
    assert is_invariant(build_Dscript(2, 2, n), n)
    assert is_invariant(casimir(n, "full"), n)
    assert not is_invariant(gen(0, 1), n)


def test_identity_suite_clean():
    for n in (2, 3):
        checks, failures = verify_identities(n, max_degree=4)
        assert failures == []
        assert checks > 50


def test_serialization_shape():
    e = gen(0, 1).scale(Fraction(3, 2)) + monomial([(0, 1), (1, 2)])
    obj = ue_to_obj(e)
    assert obj == [
        {"monomial": [[0, 1]], "coeff": "3/2"},
        {"monomial": [[0, 1], [1, 2]], "coeff": "1"},
    ]
