import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhpwn.lie import DomainError
from rhpwn.sandwich import (
    commutator,
    eq_expr,
    eq_term,
    exchange_E_past_Q,
    gen_to_word,
    multiply,
    reduce,
    theorem_report_to_json,
    verify_theorem,
)
from rhpwn.scalars import CScalar
from rhpwn.stepfn import FnSymbol, fn_symbol, indicator, pointwise_product
from rhpwn.wick import DeltaAtZeroError, SingularPartError

lams = st.fractions(min_value=-6, max_value=6, max_denominator=8)


def test_gen_to_word_examples():
    w = gen_to_word(2, 1, "t")
    assert w.coeff == CScalar(Fraction(1, 2))
    assert w.left_exp == (("t", Fraction(1, 2)),)
    assert w.q_pow == (("t", 1),)
    assert w.right_exp == (("t", Fraction(1, 2)),)
    w = gen_to_word(3, 0, "t")
    assert w.coeff == CScalar(Fraction(1, 4))
    assert w.left_exp == () and w.right_exp == ()
    assert w.q_pow == (("t", 2),)
    w = gen_to_word(2, -2, "s")
    assert w.left_exp == (("s", Fraction(-1)),)
    assert w.right_exp == (("s", Fraction(-1)),)
    with pytest.raises(DomainError):
        gen_to_word(1, 0, "t")


def test_exchange_rightward_example():
    result = exchange_E_past_Q(Fraction(1, 2), "s", 1, "t", "rightward")
    expected = eq_expr(
        [
            eq_term(1, {}, {"t": 1}, {"s": Fraction(1, 2)}),
            eq_term(1, {}, {}, {"s": Fraction(1, 2)}, delta_L=1),
        ]
    )
    assert result == expected


def test_exchange_empty_power():
    lam = Fraction(7, 3)
    result = exchange_E_past_Q(lam, "s", 0, "t", "rightward")
    assert result == eq_expr([eq_term(1, {}, {}, {"s": lam})])


def test_exchange_leftward_example():
    result = exchange_E_past_Q(Fraction(1), "s", 2, "t", "leftward")
    expected = eq_expr(
        [
            eq_term(1, {"s": 1}, {"t": 2}, {}),
            eq_term(-4, {"s": 1}, {"t": 1}, {}, delta_L=1),
            eq_term(4, {"s": 1}, {}, {}, delta_L=2),
        ]
    )
    assert result == expected


def test_exchange_same_label_rejected():
    with pytest.raises(DeltaAtZeroError):
        exchange_E_past_Q(Fraction(1, 2), "t", 2, "t", "rightward")


@settings(max_examples=60)
@given(lams, st.integers(0, 6))
def test_exchange_round_trip_is_identity(lam, m):
    # moving the exponential rightward across the field power and then back
    # leftward must reproduce the original word exactly
    rightward = exchange_E_past_Q(lam, "s", m, "t", "rightward")
    back = []
    for t in rightward.terms:
        j = dict(t.q_pow).get("t", 0)
        for u in exchange_E_past_Q(lam, "s", j, "t", "leftward").terms:
            back.append(
                eq_term(
                    t.coeff * u.coeff,
                    u.left_exp,
                    u.q_pow,
                    {},
                    delta_L=t.delta_L + u.delta_L,
                )
            )
    assert eq_expr(back) == eq_expr([eq_term(1, {"s": lam}, {"t": m}, {})])


def test_multiply_unit():
    a = gen_to_word(3, 2, "t", fn_symbol("g"))
    identity = eq_term(1)
    assert multiply(a, identity) == eq_expr([a])
    assert multiply(identity, a) == eq_expr([a])


def test_multiply_pure_field_powers_commute():
    a = gen_to_word(3, 0, "t")
    b = gen_to_word(4, 0, "s")
    expected = eq_expr(
        [eq_term(Fraction(1, 2) ** 5, {}, {"t": 2, "s": 3}, {})]
    )
    assert multiply(a, b) == expected
    assert multiply(b, a) == expected


def test_multiply_first_power_expansion():
    # gen(2,1,t) * gen(2,1,s): one leftward and one rightward exchange
    prod = multiply(gen_to_word(2, 1, "t"), gen_to_word(2, 1, "s"))
    half = Fraction(1, 2)
    exps = {"t": half, "s": half}
    expected = eq_expr(
        [
            eq_term(Fraction(1, 4), exps, {"t": 1, "s": 1}, exps),
            eq_term(Fraction(1, 4), exps, {"t": 1}, exps, delta_L=1),
            eq_term(Fraction(-1, 4), exps, {"s": 1}, exps, delta_L=1),
            eq_term(Fraction(-1, 4), exps, {}, exps, delta_L=2),
        ]
    )
    assert prod == expected


def test_multiply_rejects_bad_inputs():
    a = gen_to_word(2, 1, "t")
    with pytest.raises(DeltaAtZeroError):
        multiply(a, gen_to_word(2, 2, "t"))
    with pytest.raises(ValueError):
        multiply(eq_term(1, {}, {"t": 1}, {}, delta_L=1), a)


@given(st.integers(2, 5), st.integers(-3, 3), st.integers(2, 5), st.integers(-3, 3))
def test_commutator_swap_negates(n, k, N, K):
    a = gen_to_word(n, k, "t")
    b = gen_to_word(N, K, "s")
    assert commutator(a, b) == commutator(b, a).scaled(-1)


@given(st.integers(2, 6), st.integers(-4, 4), st.integers(2, 6), st.integers(-4, 4))
def test_commutator_delta_free_part_cancels(n, k, N, K):
    comm = commutator(gen_to_word(n, k, "t"), gen_to_word(N, K, "s"))
    assert all(t.delta_L >= 1 for t in comm.terms)


def test_reduce_merges_single_delta_words():
    a, b = Fraction(1, 3), Fraction(5, 2)
    term = eq_term(
        7,
        {"t": a, "s": b},
        {"t": 2, "s": 3},
        {"t": a, "s": b},
        delta_L=1,
        testfn={"t": fn_symbol("g"), "s": fn_symbol("f")},
    )
    result = reduce(eq_expr([term]))
    merged = eq_term(
        7,
        {"s": a + b},
        {"s": 5},
        {"s": a + b},
        testfn={"s": FnSymbol(("f", "g"), True)},
    )
    assert result.reduced == eq_expr([merged])
    assert result.l0_residual.is_zero and result.dropped_singular == 0


def test_reduce_drops_singular_and_keeps_residual():
    singular = eq_term(1, {}, {"t": 1}, {}, delta_L=2, testfn={"t": fn_symbol("g")})
    plain = eq_term(3, {}, {"t": 1, "s": 1}, {})
    result = reduce(eq_expr([singular, plain]))
    assert result.dropped_singular == 1
    assert result.l0_residual == eq_expr([plain])
    assert result.reduced.is_zero


def test_reduce_strict_requires_vanishing():
    bad = eq_term(
        1, {}, {"t": 1}, {}, delta_L=3, testfn={"t": fn_symbol("g", in_S0=False)}
    )
    with pytest.raises(SingularPartError):
        reduce(eq_expr([bad]), assume_S0=False)
    assert reduce(eq_expr([bad]), assume_S0=True).dropped_singular == 1
    concrete = eq_term(
        1, {}, {"t": 1}, {}, delta_L=2, testfn={"t": indicator([(-1, 1)])}
    )
    with pytest.raises(SingularPartError):
        reduce(eq_expr([concrete]), assume_S0=False)
    vanishing = eq_term(
        1, {}, {"t": 1}, {}, delta_L=2, testfn={"t": indicator([(1, 2)])}
    )
    assert reduce(eq_expr([vanishing]), assume_S0=False).dropped_singular == 1


def test_verify_theorem_examples():
    report = verify_theorem(2, 1, 2, -1)
    assert report.passed and report.expected_coeff == 2
    # the reduced word is 2 * gen(2, 0): the exponentials cancel at k+K = 0
    assert report.computed == eq_expr(
        [gen_to_word(2, 0, "s", FnSymbol(("f", "g"), True))]
    ).scaled(2)

    report = verify_theorem(2, 0, 2, 0)
    assert report.passed and report.expected_coeff == 0
    assert report.computed.is_zero

    report = verify_theorem(3, 2, 4, -1)
    assert report.passed and report.expected_coeff == 8


def test_verify_theorem_rejects_small_indices():
    with pytest.raises(DomainError):
        verify_theorem(1, 0, 2, 0)


def test_verify_theorem_with_concrete_step_functions():
    g = indicator([(1, 3)])
    f = indicator([(2, 4)])
    report = verify_theorem(3, 1, 2, 2, g=g, f=f)
    assert report.passed
    expected = eq_expr(
        [gen_to_word(3, 3, "s", pointwise_product(g, f))]
    ).scaled(report.expected_coeff)
    assert report.computed == expected


def test_verify_theorem_rejects_non_s0_functions():
    bad = indicator([(-1, 1)])
    with pytest.raises(SingularPartError):
        verify_theorem(3, 1, 3, 2, g=bad, f=bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(-4, 4), st.integers(2, 6), st.integers(-4, 4))
def test_exponent_bookkeeping(n, k, N, K):
    report = verify_theorem(n, k, N, K)
    assert report.passed
    for t in report.computed.terms:
        assert dict(t.q_pow) == {"s": n + N - 3}
        for _, lam in t.left_exp + t.right_exp:
            assert lam == Fraction(k + K, 2)


def test_theorem_report_json():
    data = theorem_report_to_json(verify_theorem(2, 1, 3, -2))
    assert data == {
        "n": 2,
        "k": 1,
        "N": 3,
        "K": -2,
        "pass": True,
        "expected_coeff": 1 * 2 - (-2) * 1,
        "dropped_singular_count": data["dropped_singular_count"],
        "l0_residual_terms": [],
    }
    assert data["expected_coeff"] == 4
