"""Closed-form worst-case ratio bounds and the lattice constants behind them."""

import math

import numpy as np
import pytest

from latprox.bounds import (
    BOUND_KEYS,
    babai_sin_sq_lower,
    bound_table,
    dual_kz_sic_bound,
    dual_kz_zf_bound,
    dual_lll_sic_bound,
    dual_lll_zf_bound,
    explicit_table2,
    hermite_upper,
    kz_constant_upper,
    kz_sic_bound,
    kz_zf_bound,
    lll_sic_bound,
    lll_zf_bound,
    minv_entry_bound,
)
from latprox.errors import ConfigInvalid


def test_hermite_exact_low_dimensions():
    known_powers = {1: 1.0, 2: 4.0 / 3.0, 3: 2.0, 4: 4.0, 5: 8.0,
                    6: 64.0 / 3.0, 7: 64.0, 8: 256.0}
    for n, g_pow in known_powers.items():
        assert hermite_upper(n) == pytest.approx(g_pow ** (1.0 / n), rel=1e-14)


def test_hermite_blichfeldt_above_eight():
    for n in (9, 12, 16, 32):
        expect = (2.0 / math.pi) * math.exp((2.0 / n) * math.lgamma(2.0 + n / 2.0))
        assert hermite_upper(n) == pytest.approx(expect, rel=1e-12)
    # the estimate grows without bound but stays modest at practical sizes
    assert hermite_upper(9) > hermite_upper(8)


def test_kz_constants():
    assert kz_constant_upper(1) == pytest.approx(1.0)
    assert kz_constant_upper(2) == pytest.approx(4.0 / 3.0)
    assert kz_constant_upper(3) == pytest.approx(1.5)
    seq = [kz_constant_upper(n) for n in range(1, 40)]
    assert all(b >= a - 1e-12 for a, b in zip(seq, seq[1:]))
    n = 10
    cap = n ** (1.0 + math.log(n))
    assert kz_constant_upper(n) <= cap + 1e-9


def test_all_eight_gauss_values():
    table = bound_table(2, delta=1.0)
    for key in BOUND_KEYS:
        assert table.overall[key] == pytest.approx(4.0 / 3.0, abs=1e-12), key


def test_bound_table_shape_and_flags():
    t = bound_table(6, delta=0.75)
    assert t.n == 6 and t.delta == 0.75
    assert set(t.per_index) == set(BOUND_KEYS)
    for key in BOUND_KEYS:
        assert len(t.per_index[key]) == 6
        assert t.overall[key] == pytest.approx(max(t.per_index[key]))
    assert not t.hermite_estimated
    assert bound_table(9, delta=0.75).hermite_estimated


def test_bound_table_validation_and_trivial_size():
    with pytest.raises(ConfigInvalid):
        bound_table(4, delta=0.25)
    with pytest.raises(ConfigInvalid):
        bound_table(0, delta=0.75)
    # one-dimensional lattices: every detector is already optimal
    t = bound_table(1, delta=0.75)
    for key in BOUND_KEYS:
        assert t.overall[key] == pytest.approx(1.0, abs=1e-15)


def test_lll_sic_per_index_formula():
    beta = 2.0
    assert lll_sic_bound(1, beta) == pytest.approx(1.0)
    for i in (2, 3, 6):
        expect = 1.0 + (beta ** i - beta) / (4.0 * (beta - 1.0))
        assert lll_sic_bound(i, beta) == pytest.approx(expect, rel=1e-14)


def test_dual_lll_sic_per_index_formula():
    beta = 2.0
    for i in (1, 2, 5):
        assert dual_lll_sic_bound(i, beta) == pytest.approx(beta ** (i - 1), rel=1e-14)


def test_babai_sin_sq_lower_reference_value():
    # n=4, i=1, beta=2 extremal profile
    assert babai_sin_sq_lower(1, 4, 2.0) == pytest.approx(1.0 / 13.875, rel=1e-12)


def test_zf_bound_at_least_sic_bound():
    for n in (2, 4, 8, 16):
        for beta in (2.0, 4.0 / 3.0):
            for i in range(1, n + 1):
                assert lll_zf_bound(i, n, beta) >= lll_sic_bound(i, beta) - 1e-12
                assert dual_lll_zf_bound(i, n, beta) >= dual_lll_sic_bound(i, beta) - 1e-12
        for i in range(1, n + 1):
            assert kz_zf_bound(i, n) >= kz_sic_bound(i) - 1e-12
            assert dual_kz_zf_bound(i, n) >= dual_kz_sic_bound(i) - 1e-12


def test_kz_sic_bound_is_kz_constant():
    for i in (1, 2, 3, 7):
        assert kz_sic_bound(i) == pytest.approx(kz_constant_upper(i), rel=1e-14)


def test_dual_kz_zf_decomposition():
    n = 6
    for i in range(1, n + 1):
        tail = sum(dual_kz_sic_bound(j) for j in range(i + 1, n + 1))
        expect = dual_kz_sic_bound(i) + 0.25 * tail
        assert dual_kz_zf_bound(i, n) == pytest.approx(expect, rel=1e-12)


def test_minv_entry_bound():
    assert minv_entry_bound(2, 1) == pytest.approx(0.5)
    assert minv_entry_bound(3, 1) == pytest.approx(0.75)
    assert minv_entry_bound(5, 2) == pytest.approx((1.0 / 3.0) * 1.5 ** 3, rel=1e-14)


def test_orderings_across_sizes():
    beta1 = 4.0 / 3.0
    for n in range(2, 33):
        t = bound_table(n, delta=1.0)
        o = t.overall
        for det in ("zf", "sic"):
            for side in ("primal", "dual"):
                kz, lll = o[f"{side}-kz-{det}"], o[f"{side}-lll-{det}"]
                if n == 2:
                    assert kz == pytest.approx(lll, abs=1e-12)
                else:
                    assert kz < lll
        assert o["dual-lll-zf"] == pytest.approx(beta1 ** (n - 1), rel=1e-9)
        if n >= 3:
            assert o["dual-lll-zf"] < o["primal-lll-zf"]
            assert o["dual-kz-zf"] < o["primal-kz-zf"]


def test_closed_form_envelopes_dominate():
    """The delta=3/4 per-size bounds never exceed their growth-rate envelopes."""
    for n in range(2, 33):
        t = bound_table(n, delta=0.75)
        for key in BOUND_KEYS:
            assert t.overall[key] <= explicit_table2(n, key) * (1.0 + 1e-12), (n, key)


def test_envelope_formulas_spot_values():
    n = 5
    ln_env = n ** (1.0 + math.log(n))
    assert explicit_table2(n, "primal-lll-zf") == pytest.approx(4.5 ** n)
    assert explicit_table2(n, "primal-lll-sic") == pytest.approx(2.0 ** n)
    assert explicit_table2(n, "primal-kz-zf") == pytest.approx(2.25 ** n * ln_env)
    assert explicit_table2(n, "primal-kz-sic") == pytest.approx(ln_env)
    assert explicit_table2(n, "dual-lll-zf") == pytest.approx(2.0 ** n)
    assert explicit_table2(n, "dual-lll-sic") == pytest.approx(2.0 ** n)
    assert explicit_table2(n, "dual-kz-zf") == pytest.approx(float(n ** 3))
    assert explicit_table2(n, "dual-kz-sic") == pytest.approx(float(n ** 2))


def test_babai_sin_sq_lower_bounds_real_angles():
    """1/(ZF gain bracket) really is a lower bound for sin^2 on reduced bases."""
    from latprox.geometry import distance_spectrum
    from latprox.reduction import lll_reduce
    from conftest import random_basis

    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        b = lll_reduce(random_basis(rng, n), delta=0.75).reduced
        sp = distance_spectrum(b)
        for i in range(1, n + 1):
            lower = babai_sin_sq_lower(i, n, 2.0)
            assert np.sin(sp.theta[i - 1]) ** 2 >= lower - 1e-9
