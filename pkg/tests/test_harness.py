from fractions import Fraction as F
from math import comb

import pytest
import sympy as sp

from supercong.exact_core import (
    INFINITY,
    NotPrimeError,
    central_half_ratio,
    harmonic2,
    padic_valuation,
    rising_factorial,
)
from supercong.harness import (
    CASE_ORDER,
    CONJECTURAL_CASES,
    IDENTITY_DRAWS,
    Requirement,
    lem_thm1_term_series,
    report_entry,
    run_suite,
    select_cases,
    series_case_specs,
    verify_congruence_case,
    verify_exact_case,
    verify_series_case,
)
from supercong.harness import eq10_series_spec, sum_lemma10, thm3_deformed_spec
from supercong.hypergeometric import (
    eval_hyp_sum,
    eval_hyp_sum_series,
    scalarized,
    specialize,
)
from supercong.power_series import coefficient

HALF = F(1, 2)


def to_fraction(value) -> F:
    value = sp.nsimplify(value)
    return F(int(value.p), int(value.q))


def sympy_deformed_sum(p, slopes_num, slopes_den, z, weight):
    """Independent oracle: build the deformed sum symbolically in sympy.

    slopes_num/slopes_den list (base, slope) pairs; term k multiplies
    prod (base + slope*x + i) over i < k, with the usual k! and weight.
    """
    x = sp.symbols("x")
    total = sp.Integer(0)
    for k in range((p - 1) // 2 + 1):
        num = sp.Integer(1)
        den = sp.factorial(k)
        for base, slope in slopes_num:
            for i in range(k):
                num *= sp.nsimplify(base) + sp.nsimplify(slope) * x + i
        for base, slope in slopes_den:
            for i in range(k):
                den *= sp.nsimplify(base) + sp.nsimplify(slope) * x + i
        total += (weight[0] * k + weight[1]) * num / den * sp.nsimplify(z) ** k
    return sp.cancel(sp.together(total)), x


# ---------------------------------------------------------------------------
# congruence cases
# ---------------------------------------------------------------------------


def test_eq0_spot_record():
    rec = verify_congruence_case("EQ0", 5)
    assert rec.lhs == F(435, 512)
    assert rec.rhs == 5
    assert rec.achieved == 3 and rec.passed and not rec.conjectural
    assert rec.required == Requirement("val_ge", 3)
    # 435/512 - 5 = -5^3 * 17 / 512
    assert rec.lhs - rec.rhs == F(-(5**3) * 17, 512)


def test_thm1_spot_records():
    rec = verify_congruence_case("THM1", 5, 1)
    assert rec.lhs == F(6105, 4096) and rec.rhs == 5
    assert rec.achieved == 4 and rec.passed
    assert rec.lhs - rec.rhs == F(-(5**4) * 23, 4096)
    rec = verify_congruence_case("THM1", 5, 2)
    assert rec.rhs == 25 and rec.required == Requirement("val_ge", 5) and rec.passed


def test_thm2_spot_record():
    rec = verify_congruence_case("THM2", 5)
    assert rec.lhs == F(289185, 262144) and rec.rhs == -10
    assert rec.achieved == 4 and rec.passed
    assert rec.lhs - rec.rhs == F(5**4 * 4657, 262144)


def test_kilbourn_spot_records():
    rec = verify_congruence_case("KILBOURN", 5)
    assert rec.lhs == F(4433, 4096) and rec.rhs == -2 and rec.achieved == 3
    rec3 = verify_congruence_case("KILBOURN", 3)
    assert rec3.lhs == F(17, 16) and rec3.rhs == -4 and rec3.achieved == 4 and rec3.passed


def test_thm3_thm4_spot_records():
    rec = verify_congruence_case("THM3", 5)
    assert rec.lhs == F(10335, 8192) and rec.rhs == 5 and rec.achieved == 4
    rec = verify_congruence_case("THM4", 5)
    assert rec.lhs == F(29535, 32768) and rec.rhs == -5
    assert rec.achieved == 3 and rec.passed  # sharper than the required 2, not clamped
    strong = verify_congruence_case("THM4_STRONG", 5)
    assert strong.required == Requirement("val_ge", 3) and strong.passed and strong.conjectural


def test_conj1_records():
    rec = verify_congruence_case("CONJ1", 5, 2)
    assert rec.rhs == 25 * -121 and rec.required == Requirement("val_ge", 5)
    assert rec.passed and rec.conjectural


def test_comconj2_record():
    # brute-force oracle for the harmonic-weighted sum
    m = 2
    total = F(0)
    for k in range(m + 1):
        oh2 = sum((F(1, (2 * j - 1) ** 2) for j in range(1, k + 1)), F(0))
        h2 = sum((F(1, j * j) for j in range(1, k + 1)), F(0))
        total += (6 * k + 1) * central_half_ratio(k) ** 3 * (oh2 - h2 / 16) * F(-1, 8) ** k
    rec = verify_congruence_case("COMCONJ2", 5)
    assert rec.lhs == total == F(-191835, 2097152)
    assert rec.achieved == 1 and rec.passed and rec.conjectural


def test_cai_spot_record():
    rec = verify_congruence_case("CAI", 5, 1)
    assert rec.lhs == 6 and rec.rhs == F(9, 64)
    assert rec.achieved == 3 and rec.passed
    # equivalent classical form: C(p-1, (p-1)/2) = (-1)^((p-1)/2) 4^(p-1) mod p^3
    assert padic_valuation(F(6 - 2**8), 5) == 3


def test_binom_family_records():
    rec = verify_congruence_case("BINOM_NEG", 5, 1)
    worst = min(
        padic_valuation(F((-1) ** k * comb(2, k)) - central_half_ratio(k), 5)
        for k in (1, 2)
    )
    assert rec.achieved == worst == 1 and rec.passed
    rec = verify_congruence_case("BINOM_POS", 5, 1)
    assert rec.achieved == 1 and rec.passed
    rec = verify_congruence_case("BINOM_PROD", 5, 1)
    assert rec.achieved == 2 and rec.passed
    # weakest pair is k = 1: -C(2,1)C(3,1) = -6 vs (1/2)^2, difference -25/4
    assert rec.lhs == -6 and rec.rhs == F(1, 4)


def test_harmonic_case_records():
    assert verify_congruence_case("H2_HALF", 5).lhs == harmonic2(2) == F(5, 4)
    assert verify_congruence_case("H2_HALF", 5).passed
    assert verify_congruence_case("ODDH2_HALF", 5).lhs == F(10, 9)
    rec = verify_congruence_case("H2_REFLECT", 5)
    assert rec.passed and rec.achieved >= 1


def test_thmkey_spot_record():
    rec = verify_congruence_case("THMKEY", 5, 1)
    assert rec.lhs == F(4725, 9216)  # = 525/1024 in lowest terms
    assert rec.achieved == 2 and rec.passed
    for s in (2, 3):
        assert verify_congruence_case("THMKEY", 5, s).passed


def test_congruence_case_validation():
    with pytest.raises(KeyError):
        verify_congruence_case("NOPE", 5)
    with pytest.raises(NotPrimeError):
        verify_congruence_case("EQ0", 6)
    with pytest.raises(ValueError):
        verify_congruence_case("EQ0", 3)
    with pytest.raises(ValueError):
        verify_congruence_case("THM1", 2)


# ---------------------------------------------------------------------------
# exact cases
# ---------------------------------------------------------------------------


def test_comiden0_records():
    rec = verify_exact_case("COMIDEN0", 2)
    # 5 * (1 - 2 + 6/5) = 1
    assert rec.lhs == 5 * (1 - 2 + F(6, 5)) == 1 and rec.passed
    for n in range(2, 60):
        assert verify_exact_case("COMIDEN0", n).passed
    with pytest.raises(ValueError):
        verify_exact_case("COMIDEN0", 1)


def test_comiden1_spot_record():
    rec = verify_exact_case("COMIDEN1", 5)
    assert rec.lhs == (F(5, 16) * F(3, 4)) / (F(-1, 4) * F(-3, 16)) == 5
    assert rec.rhs == 5 and rec.passed
    with pytest.raises(ValueError):
        verify_exact_case("COMIDEN1", 4)


def test_comiden2_spot_record():
    rec = verify_exact_case("COMIDEN2", 5)
    assert rec.lhs == rising_factorial(F(1, 4), 2) / rising_factorial(F(-1, 2), 2) * 4 == -5
    assert rec.rhs == -5 and rec.passed


def test_comiden_hold_for_all_odd_n():
    for n in range(1, 98, 2):
        assert verify_exact_case("COMIDEN1", n).passed
        assert verify_exact_case("COMIDEN2", n).passed


def test_lemma10_and_lemma12_records():
    rec = verify_exact_case("LEMMA10", p=5)
    assert rec.lhs == rec.rhs == 5 and rec.passed
    rec = verify_exact_case("LEMMA12", p=5)
    assert rec.lhs == rec.rhs == -5 and rec.passed
    for p in (7, 11, 13):
        assert verify_exact_case("LEMMA10", p=p).passed
        assert verify_exact_case("LEMMA12", p=p).passed
    with pytest.raises(ValueError):
        verify_exact_case("LEMMA10")
    with pytest.raises(ValueError):
        verify_exact_case("LEMMA10", p=3)


def test_identity_cases_by_draw_and_explicit_params():
    rec = verify_exact_case("WHIPPLE_4F3", 0)
    assert rec.passed and rec.p == 0 and rec.param == 0
    rec = verify_exact_case(
        "WHIPPLE_4F3", params={"a": HALF, "c": F(3), "n": 2}
    )
    assert rec.lhs == rec.rhs == 5
    with pytest.raises(KeyError):
        verify_exact_case("NOT_A_CASE", 0)


# ---------------------------------------------------------------------------
# series cases, with sympy as the independent expansion oracle
# ---------------------------------------------------------------------------


def test_eq10_a2_matches_sympy_expansion():
    p = 5
    expr, x = sympy_deformed_sum(
        p,
        slopes_num=[(HALF, 0), (HALF, F(-1, 2)), (HALF, F(1, 2))],
        slopes_den=[(1, F(1, 2)), (1, F(-1, 2))],
        z=-1,
        weight=(4, 1),
    )
    poly = sp.series(expr, x, 0, 3).removeO()
    rec = verify_series_case("EQ10_A2", p)
    assert rec.lhs == to_fraction(poly.coeff(x, 2))
    assert to_fraction(poly.coeff(x, 0)) == F(435, 512)
    assert rec.achieved >= 1 and rec.passed


def test_six_f_five_record():
    p = 5
    rec = verify_series_case("SIX_F_FIVE_COEFFS", p)
    assert rec.passed and rec.achieved >= 1
    # constant terms of the two deformed sums agree mod p
    assert padic_valuation(rec.lhs - rec.rhs, p) >= 1
    ser = eval_hyp_sum_series(series_case_specs(p)["SIX_F_FIVE_COEFFS"], 4)
    assert all(padic_valuation(c, p) >= 1 for c in ser.coeffs)


def test_lem_thm1_term_expansion_matches_formula_and_sympy():
    # per-term quadratic coefficient is -((1/2)_k/k!)^4 * H2(2k)
    for k in range(3):
        c2 = coefficient(lem_thm1_term_series(k), 2)
        assert c2 == -central_half_ratio(k) ** 4 * harmonic2(2 * k)
    # independent conjugate-pair oracle through sympy's complex arithmetic
    x = sp.symbols("x")
    k = 2
    num = sp.Integer(1)
    den = sp.factorial(k) ** 2
    for i in range(k):
        num *= (sp.Rational(1, 2) + i) ** 2
        num *= (sp.Rational(1, 2) + x / 2 + i) * (sp.Rational(1, 2) - x / 2 + i)
        den *= (1 + sp.I * x / 2 + i) * (1 - sp.I * x / 2 + i)
    poly = sp.series(sp.expand(num / den), x, 0, 3).removeO()
    assert to_fraction(sp.re(poly.coeff(x, 2))) == coefficient(lem_thm1_term_series(2), 2)


def test_lem_thm1_case_record():
    rec = verify_series_case("LEM_THM1_B2K", 5)
    assert rec.passed and rec.lhs == rec.rhs and rec.achieved >= 1


def test_thm3_quotient_matches_sympy_expansion():
    p = 5
    expr, x = sympy_deformed_sum(
        p,
        slopes_num=[(HALF, 0), (HALF, F(-1, 2)), (HALF, F(1, 2))],
        slopes_den=[(1, F(1, 4)), (1, F(-1, 4))],
        z=F(1, 4),
        weight=(6, 1),
    )
    scalar = sp.nsimplify(expr.subs(x, 0))
    poly = sp.series(sp.cancel(expr / scalar), x, 0, 3).removeO()
    rec = verify_series_case("THM3_QUOTIENT_X2", p)
    assert rec.lhs == to_fraction(poly.coeff(x, 2))
    assert rec.passed


def test_thm3_quotient_spot_prime():
    rec = verify_series_case("THM3_QUOTIENT_X2", 7)
    assert rec.achieved >= 1 and rec.passed


def test_exact_div_p_resolution():
    # observed valuation is exactly 1 across the working range; the k = 2
    # numerator product (3/4)(7/4) * (5/4)(9/4) carries a single factor 5
    rec = verify_series_case("EXACT_DIV_P", 5)
    assert rec.lhs == (F(21, 16) * F(45, 16)) / 4 == F(945, 1024)
    assert rec.achieved == 1 and rec.passed
    assert rec.required == Requirement("val_eq", 1)
    for p in (7, 11, 13, 17, 19, 23, 29, 31):
        assert verify_series_case("EXACT_DIV_P", p).achieved == 1


def test_series_case_validation():
    with pytest.raises(KeyError):
        verify_series_case("NOPE", 5)
    with pytest.raises(ValueError):
        verify_series_case("EQ10_A2", 3)


def test_series_specs_scalarize_consistently():
    for p in (5, 7, 13):
        for tag, spec in series_case_specs(p).items():
            ser = eval_hyp_sum_series(spec, 4)
            assert coefficient(ser, 0) == eval_hyp_sum(scalarized(spec)), tag


def test_deformed_specs_specialize_to_exact_evaluations():
    # pinning the deformation variable to p turns the deformed sums into the
    # exactly evaluable ones: the alternating cube deformation becomes the
    # signed prime, and the (6k+1) deformation becomes the shifted-parameter
    # sum of the exact lemma cases
    for p in (5, 7, 11, 13):
        sign = -1 if ((p - 1) // 2) % 2 else 1
        assert eval_hyp_sum(specialize(eq10_series_spec(p), p)) == sign * p
        assert specialize(thm3_deformed_spec(p), p) == sum_lemma10(p)
        assert eval_hyp_sum(specialize(thm3_deformed_spec(p), p)) == sign * p


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------


def test_run_suite_small_range_all_pass():
    records = run_suite([5, 6, 7])
    assert records and all(r.passed for r in records)
    order_index = {tag: i for i, tag in enumerate(CASE_ORDER)}
    keys = [(order_index[r.case], r.p, r.param) for r in records]
    assert keys == sorted(keys)
    by_case = {}
    for r in records:
        by_case.setdefault(r.case, []).append(r)
    assert len(by_case["EQ0"]) == 2
    assert len(by_case["THMKEY"]) == 6  # s in {1,2,3} at two primes
    assert len(by_case["COMIDEN0"]) == 199
    assert len(by_case["WHIPPLE_7F6"]) == IDENTITY_DRAWS
    for tag in CONJECTURAL_CASES:
        assert all(r.conjectural for r in by_case[tag])
    assert all(not r.conjectural for r in by_case["EQ0"])


def test_run_suite_includes_three_only_for_kilbourn():
    records = run_suite([3, 5])
    kilbourn_ps = [r.p for r in records if r.case == "KILBOURN"]
    assert kilbourn_ps == [3, 5]
    for tag in ("EQ0", "THM1", "EQ10_A2", "LEMMA10", "COMIDEN1"):
        assert all(r.p != 3 and r.param != 3 for r in records if r.case == tag)


def test_run_suite_empty_ranges():
    assert run_suite([]) == []
    assert run_suite([4]) == []
    assert run_suite(range(0)) == []


def test_run_suite_r_caps():
    records = run_suite([5, 19, 23, 31, 37], rs=(1, 2, 3), cases=["THM1", "CONJ1"])
    thm1_r2 = [r.p for r in records if r.case == "THM1" and r.param == 2]
    conj1_r2 = [r.p for r in records if r.case == "CONJ1" and r.param == 2]
    assert thm1_r2 == [5, 19, 23, 31]
    assert conj1_r2 == [5, 19]
    assert not any(r.param == 3 for r in records)
    assert all(r.passed for r in records)
    order_index = {tag: i for i, tag in enumerate(CASE_ORDER)}
    keys = [(order_index[r.case], r.p, r.param) for r in records]
    assert keys == sorted(keys)


def test_run_suite_turns_errors_into_failed_records():
    records = run_suite([5], cases=["THM2"], budget=3)
    assert len(records) == 1
    rec = records[0]
    assert not rec.passed and rec.achieved == "error:BudgetError"
    assert rec.lhs is None and rec.rhs is None
    assert report_entry(rec)["lhs"] == ""


def test_select_cases():
    assert select_cases(["eq0", "thm3"]) == ["EQ0", "THM3"]
    assert select_cases(None) == list(CASE_ORDER)
    # canonical order is restored regardless of selection order
    assert select_cases(["THM3", "EQ0"]) == ["EQ0", "THM3"]
    with pytest.raises(KeyError):
        select_cases(["bogus"])


def test_report_entry_shape():
    rec = verify_congruence_case("EQ0", 5)
    entry = report_entry(rec)
    assert list(entry) == [
        "case",
        "p",
        "param",
        "required",
        "achieved",
        "lhs",
        "rhs",
        "pass",
        "conjectural",
    ]
    assert entry["required"] == "v>=3"
    assert entry["achieved"] == "3"
    assert entry["lhs"] == "435/512" and entry["rhs"] == "5"
    assert entry["pass"] is True and entry["conjectural"] is False
    zero = verify_congruence_case("H2_HALF", 7)
    if zero.achieved is INFINITY:
        assert report_entry(zero)["achieved"] == "INF"
