import math

import pytest
from mpmath import mp

from latticebounds.bounds import ValidityError
from latticebounds.schnorr_rankin import (
    RANKIN_6_3_BOUNDS,
    RANKIN_EXACT,
    SCHNORR_SMALL,
    leading_constant,
    log_rankin,
    log_schnorr_upper,
    rankin_bounds,
    rankin_exact,
    rankin_known_bounds,
    rankin_upper_via_beta,
    schnorr_best_upper,
    schnorr_lower,
    schnorr_small,
    schnorr_upper,
)

LN2 = math.log(2)


def mp_new_upper(k):
    with mp.workprec(200):
        ln2 = mp.log(2)
        k = mp.mpf(k)
        c = mp.mpf(2) ** (3 * ln2) / mp.mpf(17) ** (2 * ln2)
        return c * ((4 * k - 1) / 17) ** (1 / (2 * k - 1)) * mp.exp(18 / k) * (k - mp.mpf(1) / 2) ** (2 * ln2)


# --- tables ----------------------------------------------------------------------


def test_rankin_table_contents():
    assert dict(RANKIN_EXACT) == pytest.approx({
        (1, 1): 1.0, (4, 2): 1.5, (6, 2): 3 ** (2 / 3), (8, 2): 3.0, (8, 3): 4.0, (8, 4): 4.0,
    })
    assert rankin_exact(4, 2).value == 1.5
    assert rankin_exact(8, 4).value == 4.0
    assert rankin_exact(10, 5) is None
    with pytest.raises(ValueError):
        rankin_exact(3, 4)


def test_rankin_6_3_is_a_bracket_not_a_value():
    assert rankin_exact(6, 3) is None
    lo, hi = rankin_known_bounds(6, 3)
    assert (lo.kind, hi.kind) == ("lower", "upper")
    assert lo.value == pytest.approx(4 / math.sqrt(3)) and hi.value == pytest.approx(math.sqrt(6))
    assert RANKIN_6_3_BOUNDS[0] < RANKIN_6_3_BOUNDS[1]
    assert rankin_known_bounds(8, 4) is None


def test_schnorr_small_table():
    assert [k for k, (_, kind) in SCHNORR_SMALL.items() if kind == "exact"] == [1]
    assert schnorr_small(1).value == pytest.approx(4 / 3)
    assert schnorr_small(2).value == 1.59
    assert schnorr_small(2).kind == "upper"
    assert schnorr_small(5) is None


# --- Schnorr upper bounds -------------------------------------------------------------


def test_schnorr87():
    assert schnorr_upper(1, "schnorr87").value == 4.0
    assert schnorr_upper(10, "schnorr87").value == pytest.approx(400.0)


def test_old_upper_formula():
    for k in (1, 7, 100):
        assert schnorr_upper(k, "old").value == pytest.approx((1 + k / 2) ** (2 * LN2 + 1 / k), rel=1e-13)


def test_leading_constant_value():
    with mp.workprec(200):
        exact = mp.mpf(2) ** (3 * mp.log(2)) / mp.mpf(17) ** (2 * mp.log(2))
    assert leading_constant() == pytest.approx(float(exact), rel=1e-14)
    # the computed constant sits just above 0.083216; see the proof-check report
    assert 0.0832165 < leading_constant() < 0.0832166


@pytest.mark.parametrize("k", [5, 12, 40, 333, 1000, 10**5])
def test_new_upper_against_mpmath(k):
    assert schnorr_upper(k, "new").value == pytest.approx(float(mp_new_upper(k)), rel=1e-12)


@pytest.mark.parametrize("method", ["new", "simple"])
def test_new_methods_need_k5(method):
    with pytest.raises(ValidityError):
        schnorr_upper(4, method)


def test_unknown_methods():
    with pytest.raises(KeyError):
        schnorr_upper(5, "nope")
    with pytest.raises(KeyError):
        schnorr_lower(5, "nope")
    with pytest.raises(KeyError):
        rankin_bounds(5, "nope")


def test_improvement_ratio_k40_to_1000():
    for k in range(40, 1001):
        r = math.exp(log_schnorr_upper(k, "new") - log_schnorr_upper(k, "old"))
        assert 0.2 < r < 0.3, k


def test_new_upper_beats_old_from_9_only():
    for k in range(5, 9):
        assert schnorr_upper(k, "new").value >= schnorr_upper(k, "old").value
    for k in range(9, 1001):
        assert schnorr_upper(k, "new").value < schnorr_upper(k, "old").value, k


def test_simple_within_five_percent_above_new():
    for k in range(5, 5001):
        r = math.exp(log_schnorr_upper(k, "simple") - log_schnorr_upper(k, "new"))
        assert 1.0 <= r < 1.05, k


def test_asymptotic_constant():
    k = 10**6
    c = math.exp(log_schnorr_upper(k, "new") - 2 * LN2 * math.log(k - 0.5))
    assert 0.0832 <= c <= 0.0834


def test_best_upper_uses_table_then_formulas():
    assert schnorr_best_upper(1).kind == "exact"
    assert schnorr_best_upper(4).value == 2.25
    for k in range(5, 200):
        best = schnorr_best_upper(k)
        assert best.value == min(schnorr_upper(k, m).value for m in ("schnorr87", "old", "new", "simple"))


# --- Schnorr lower bounds --------------------------------------------------------------


def test_lower_examples():
    assert schnorr_lower(12, "old").value == pytest.approx(1.0)
    with pytest.raises(ValidityError):
        schnorr_lower(1, "old")


def test_new_lower_exceeds_k_over_12_exactly_from_8():
    for k in range(2, 1001):
        assert (schnorr_lower(k, "new").value > k / 12) == (k >= 8), k


def test_lower_ratio_limit():
    limit = 24 / (math.pi * math.exp(1.5))
    assert limit == pytest.approx(1.704, abs=1e-3)
    r = schnorr_lower(10**6, "new").value / (10**6 / 12)
    assert r == pytest.approx(limit, rel=1e-4)


def test_lower_below_upper():
    for k in range(5, 1001):
        assert schnorr_lower(k, "new").value <= schnorr_upper(k, "new").value


# --- Rankin bounds -----------------------------------------------------------------------


def test_rankin_old_lower_at_12():
    assert rankin_bounds(12, "old_lower").value == pytest.approx(1.0)


def test_rankin_log_ratio_identity():
    for k in range(5, 51):
        lhs = log_rankin(k, "new_lower") - log_rankin(k, "old_lower")
        rhs = math.log(4 / (math.pi**2 * math.sqrt(k))) + (k / 2) * math.log(24 / (math.pi * math.exp(1.5)))
        assert abs(lhs - rhs) < 1e-9
        assert lhs > math.log(4 / (math.pi**2 * math.sqrt(k))) + (k / 2) * math.log(1.7)


def test_rankin_new_upper_against_mpmath():
    for k in (5, 20, 300):
        with mp.workprec(200):
            kk = mp.mpf(k)
            exact = mp.log(mp.e**9 * mp.mpf("0.0833") ** (kk / 2) * ((4 * kk - 1) / 17) ** (kk / (4 * kk - 2))
                           * (kk - mp.mpf(1) / 2) ** (kk * mp.log(2)))
        assert rankin_bounds(k, "new_upper").log_value == pytest.approx(float(exact), rel=1e-13)
    b = rankin_bounds(5, "new_upper")
    assert math.isfinite(b.value) and b.value > 0


def test_rankin_validity():
    for m in ("new_lower", "new_upper"):
        with pytest.raises(ValidityError):
            rankin_bounds(4, m)
    for m in ("old_lower", "old_upper"):
        with pytest.raises(ValidityError):
            rankin_bounds(1, m)
    with pytest.raises(ValidityError):
        rankin_upper_via_beta(4)


def test_rankin_large_k_survives_in_log_space():
    b = rankin_bounds(1000, "old_lower")
    assert b.value == math.inf
    assert b.log_value == pytest.approx(500 * math.log(1000 / 12))


def test_rankin_sandwich():
    for k in range(5, 201):
        assert log_rankin(k, "new_lower") <= log_rankin(k, "new_upper")
        assert log_rankin(k, "old_lower") <= log_rankin(k, "old_upper")


def test_rankin_new_upper_improves_from_9():
    for k in range(5, 9):
        assert log_rankin(k, "new_upper") >= log_rankin(k, "old_upper")
    for k in range(9, 1001):
        assert log_rankin(k, "new_upper") < log_rankin(k, "old_upper"), k


def test_rankin_new_lower_improves_from_8():
    for k in range(5, 8):
        assert log_rankin(k, "new_lower") <= log_rankin(k, "old_lower")
    for k in range(8, 1001):
        assert log_rankin(k, "new_lower") > log_rankin(k, "old_lower"), k


def test_via_beta():
    for k in range(5, 101):
        via = rankin_upper_via_beta(k)
        assert via.log_value <= rankin_bounds(k, "new_upper").log_value
        assert via.log_value >= rankin_bounds(k, "new_lower").log_value
    assert rankin_upper_via_beta(50).log_value == pytest.approx(25 * math.log(schnorr_upper(50, "new").value), rel=1e-14)
