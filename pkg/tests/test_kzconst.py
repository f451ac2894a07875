import math

import pytest
from mpmath import mp

from latticebounds import hermite
from latticebounds.bounds import ValidityError
from latticebounds.kzconst import (
    KZ_METHODS,
    kz_best_upper,
    kz_candidates,
    kz_upper,
    kz_upper_product,
    log_kz_upper,
)


def test_schnorr87_at_one():
    assert kz_upper(1, "schnorr87").value == 1.0


def test_wc18_at_nine():
    assert kz_upper(9, "wc18").value == pytest.approx(16.275, rel=1e-14)


def test_new_at_109_against_mpmath():
    with mp.workprec(200):
        x = (2 * mp.mpf(109) - 1) / 17
        exact = mp.mpf("8.1") * (mp.mpf(109) / mp.mpf("8.5") + 2) * x ** (mp.log(x) / 2)
    assert kz_upper(109, "new").value == pytest.approx(float(exact), rel=1e-13)
    assert kz_upper(109, "new").value == pytest.approx(3.07e3, rel=2e-3)


def test_hs08_against_direct_product():
    for n in (2, 3, 10, 50):
        with mp.workprec(100):
            exact = n * mp.fprod(mp.mpf(k) ** (mp.mpf(1) / (k - 1)) for k in range(2, n + 1))
        assert kz_upper(n, "hs08").value == pytest.approx(float(exact), rel=1e-13)


@pytest.mark.parametrize("method", ["hs08", "wc18", "new"])
def test_validity_ranges(method):
    start = KZ_METHODS[method]
    with pytest.raises(ValidityError):
        kz_upper(start - 1, method)
    kz_upper(start, method)


def test_unknown_method():
    with pytest.raises(KeyError):
        kz_upper(10, "bogus")


def test_product_small_ranks():
    assert kz_upper_product(1).value == 1.0
    assert kz_upper_product(2).value == pytest.approx(4 / 3, rel=1e-14)


def test_product_at_8_uses_closed_form_constant():
    with mp.workprec(200):
        closed = mp.mpf(2) ** (mp.mpf(827) / 420) * mp.mpf(3) ** (mp.mpf(-8) / 15)
    # gamma_8 = 2 times the product over k = 2..8
    assert kz_upper_product(8).value == pytest.approx(2 * float(closed), rel=1e-13)


def test_product_with_exact_never_exceeds_linear_substitute():
    def linear_only(k):
        return hermite.linear_upper(k, "nv")

    for n in range(1, 60):
        assert kz_upper_product(n).value <= kz_upper_product(n, linear_only).value * (1 + 1e-14)


def test_new_beats_wc18_from_111():
    assert kz_upper(109, "new").value >= kz_upper(109, "wc18").value
    assert kz_upper(110, "new").value >= kz_upper(110, "wc18").value
    for n in range(111, 10001):
        assert log_kz_upper(n, "new") < log_kz_upper(n, "wc18"), n


def test_ratio_strictly_decreasing():
    ratios = [math.exp(log_kz_upper(n, "new") - log_kz_upper(n, "wc18")) for n in range(111, 1001)]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[0] < 1


def test_all_bounds_at_least_one():
    for n in range(1, 400):
        for b in kz_candidates(n):
            assert b.value >= 1.0, (n, b.method)


def test_best_upper_examples():
    assert kz_best_upper(1).value == 1.0
    assert kz_best_upper(2).value <= 4 / 3 + 1e-15
    best = kz_best_upper(200)
    assert best.value == min(b.value for b in kz_candidates(200))


def test_best_upper_never_uses_new_below_109():
    for n in range(9, 109):
        assert kz_best_upper(n).method != "new"
        assert "new" not in {b.method for b in kz_candidates(n)}


def test_large_n_is_finite_in_log_space():
    assert math.isfinite(log_kz_upper(10**6, "new"))
    assert kz_upper_product(3000).log_value > 0
