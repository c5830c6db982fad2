import pytest
import sympy

from pentashuffle.identities import (
    IdentityReport,
    check_euler_induction,
    check_pnt,
    check_prob_induction,
    euler_tail_term,
    lhs_prob_induction,
    limit_level,
    rhs_euler_induction,
    rhs_prob_induction,
    tail_exponent,
    tail_pattern,
    tail_term,
)
from pentashuffle.pattern_events import Pattern, event_probability
from pentashuffle.qseries import TruncatedSeries, add, mul, one, pentagonal_sum, zero


def poly(*cs, T):
    return TruncatedSeries.from_coeffs(cs, T)


def test_lhs_examples():
    assert lhs_prob_induction(3) == poly(1, -1, -1, T=3)
    assert lhs_prob_induction(1) == one(1)
    T = 30
    acc = one(T)
    for j in range(1, T):
        acc = mul(acc, event_probability(Pattern.of((), {j}), T))
    assert lhs_prob_induction(T) == acc
    assert lhs_prob_induction(T) == event_probability(Pattern(j_to_horizon=True), T, horizon=T - 1)


def test_rhs_prob_induction_base_case_by_hand():
    # 1 - q - q^2 (1 - q) - ... ; modulo q^3 only the k = 1 term survives
    assert rhs_prob_induction(0, 3) == poly(1, -1, -1, T=3)


def test_tail_terms():
    assert euler_tail_term(0, 1, 6) == poly(0, 0, 1, -1, T=6)
    assert tail_term(0, 1, 6) == poly(0, 0, 1, -1, T=6)
    assert tail_pattern(1, 1) == Pattern.of({3, 4}, {2})
    assert tail_term(1, 1, 12) == TruncatedSeries.monomial(1, 7, 12) - TruncatedSeries.monomial(1, 9, 12)


def test_tail_term_n1_k2_against_sympy():
    q = sympy.Symbol("q")
    expr = sympy.expand(q**4 * q**5 * (1 - q**2) * (1 - q**3))
    T = 20
    expected = TruncatedSeries.from_coeffs([sympy.Poly(expr, q).coeff_monomial(q**n) for n in range(T)], T)
    assert tail_term(1, 2, T) == expected


@pytest.mark.parametrize("N", range(0, 11))
def test_tail_closed_form_matches_product(N):
    T = 400
    for k in range(1, 31):
        assert tail_exponent(N, k) == sum(tail_pattern(N, k).I)
        tail_term(N, k, T)


def test_tail_vanishes_past_limit_level():
    T = 60
    N = limit_level(T)
    assert tail_exponent(N, 1) >= T > tail_exponent(N - 1, 1)
    assert rhs_prob_induction(N, T) == pentagonal_sum(T)
    assert rhs_euler_induction(N, T) == pentagonal_sum(T)


def test_rhs_independent_of_N():
    T = 200
    lhs = lhs_prob_induction(T)
    for N in range(11):
        assert rhs_prob_induction(N, T) == lhs
        assert rhs_euler_induction(N, T) == rhs_prob_induction(N, T)


def test_lhs_support_is_pentagonal():
    T = 300
    s = lhs_prob_induction(T)
    n_of = {}
    n = 0
    while n * (3 * n - 1) // 2 < T:
        for m in (n, -n):
            n_of[m * (3 * m + 1) // 2] = m
        n += 1
    assert {e: c for e, c in enumerate(s) if c} == {e: (-1) ** abs(m) for e, m in n_of.items() if e < T}


@pytest.mark.parametrize("T", [1, 2, 13, 100])
def test_check_pnt_small(T):
    r = check_pnt(T)
    assert r.holds and r.first_mismatch is None and r.order == T


def test_check_pnt_every_order():
    for T in range(1, 1001, 37):
        assert check_pnt(T).holds


def test_check_prob_induction():
    assert check_prob_induction(0, 50)[0].holds
    reports = check_prob_induction(5, 200)
    assert [r.N for r in reports] == list(range(6))
    assert all(r.holds for r in reports)


def test_check_euler_induction_reports_both_comparisons():
    reports = check_euler_induction(3, 80)
    assert [(r.name, r.N) for r in reports][:2] == [("euler-induction", 0), ("euler-vs-prob", 0)]
    assert len(reports) == 8 and all(r.holds for r in reports)


def test_corrupted_tail_is_located():
    T = 50
    N = 2

    def bad_tail(N_, k, T_):
        term = event_probability(tail_pattern(N_, k), T_)
        return add(term, TruncatedSeries.monomial(1, 40, T_)) if k == 3 else term

    good = rhs_prob_induction(N, T)
    bad = rhs_prob_induction(N, T, tail=bad_tail)
    mismatch = lhs_prob_induction(T).first_difference(bad)
    assert good == lhs_prob_induction(T)
    assert mismatch is not None and mismatch[0] == 40
    assert mismatch[1] - mismatch[2] == 1  # sign of the N=2 tail is -1


def test_report_json_roundtrip():
    r = IdentityReport("prob-induction", 200, False, (7, 1, 0), 0.012, N=3)
    data = r.to_json()
    assert data["first_mismatch"] == {"exponent": 7, "lhs": "1", "rhs": "0"}
    back = IdentityReport.from_json(data)
    assert (back.name, back.order, back.holds, back.first_mismatch, back.N) == ("prob-induction", 200, False, (7, 1, 0), 3)
    assert zero(3).first_difference(zero(3)) is None
