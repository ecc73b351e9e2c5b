import math

import numpy as np
import pytest

from noma_outage import (
    VARIANT_CORRECTED,
    VARIANT_PAPER,
    ScenarioSpec,
    UeSpec,
    linear_to_db,
    linearize,
    pathloss_mean_gain,
    pout2,
    pout3,
    pout_rayleigh,
    pout_scenario,
)

# 1 - (2/3) e^(-1/2) - (1/3) e^(-1), cross-checked by quadrature and simulation
POUT_2_1_1 = 0.4730197464677637


def ratio_form_n2(m1, m2, p):
    # independent evaluation path for the two-signal closed form
    return 1.0 - (m1 * math.exp(-p / m1) + m2 * math.exp(-p / m2)) / (m1 + m2)


def ratio_form_n3(m1, m2, m3, p, factor=1.0):
    total = 0.0
    for a, b, c in ((m1, m2, m3), (m2, m1, m3), (m3, m1, m2)):
        total += math.exp(-p / a) * (a / (a + b)) * (a / (a + c))
    return 1.0 - factor * total


def test_single_signal_both_variants():
    for variant in (VARIANT_CORRECTED, VARIANT_PAPER):
        for mean, p in [(1.0, 0.7), (3.5, 0.0), (2e-7, 1e-8)]:
            res = pout_rayleigh([mean], p, variant)
            assert res.value == pytest.approx(-math.expm1(-p / mean), abs=1e-12)
            assert res.method == "closed_form"
            assert res.variant == variant
            assert res.stderr is None


def test_equal_means_zero_threshold_is_null_event():
    assert pout2(1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_reference_two_signal_value():
    assert pout2(2.0, 1.0, 1.0) == pytest.approx(POUT_2_1_1, abs=1e-12)
    assert pout_rayleigh([2.0, 1.0], 1.0).value == pytest.approx(POUT_2_1_1, abs=1e-12)


def test_three_signal_discrepancy_values():
    assert pout3(1.0, 1.0, 1.0, 0.0, VARIANT_CORRECTED) == pytest.approx(0.25, abs=1e-12)
    assert pout3(1.0, 1.0, 1.0, 0.0, VARIANT_PAPER) == pytest.approx(-0.5, abs=1e-12)
    assert pout_rayleigh([1.0] * 4, 0.0).value == pytest.approx(0.5, abs=1e-12)
    assert pout_rayleigh([1.0] * 4, 0.0, VARIANT_PAPER).value == pytest.approx(-2.0, abs=1e-12)


def test_pout2_is_bit_identical_to_general_form():
    rng = np.random.default_rng(11)
    for _ in range(100):
        m1, m2 = np.exp(rng.uniform(np.log(1e-2), np.log(1e2), 2))
        p = rng.uniform(0.0, 5.0) * max(m1, m2)
        assert pout2(m1, m2, p) == pout_rayleigh([m1, m2], p).value
        assert pout2(m1, m2, p) == pout_rayleigh([m1, m2], p, VARIANT_PAPER).value


def test_pout2_matches_ratio_form():
    rng = np.random.default_rng(12)
    for _ in range(200):
        m1, m2 = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
        p = rng.uniform(0.0, 3.0)
        assert pout2(m1, m2, p) == pytest.approx(
            ratio_form_n2(m1, m2, p), rel=1e-12, abs=1e-12
        )


def test_pout2_equal_means_reduce_to_single_exponential():
    for x, p in [(1.0, 0.3), (0.2, 1.7), (7.0, 0.0)]:
        assert pout2(x, x, p) == pytest.approx(-math.expm1(-p / x), abs=1e-12)


def test_pout2_vanishing_second_signal():
    assert pout2(2.0, 2e-14, 1.0) == pytest.approx(-math.expm1(-0.5), rel=1e-9)


def test_pout3_matches_ratio_form_both_variants():
    rng = np.random.default_rng(13)
    for _ in range(200):
        m = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 3))
        p = rng.uniform(0.0, 3.0)
        assert pout3(*m, p, VARIANT_CORRECTED) == pytest.approx(
            ratio_form_n3(*m, p), rel=1e-12, abs=1e-12
        )
        assert pout3(*m, p, VARIANT_PAPER) == pytest.approx(
            ratio_form_n3(*m, p, factor=2.0), rel=1e-12, abs=1e-12
        )


def test_pout3_agrees_with_general_form():
    rng = np.random.default_rng(14)
    for _ in range(50):
        m = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 3))
        p = rng.uniform(0.0, 3.0)
        for variant in (VARIANT_CORRECTED, VARIANT_PAPER):
            general = pout_rayleigh(list(m), p, variant).value
            assert pout3(*m, p, variant) == pytest.approx(general, rel=1e-14, abs=1e-15)


def test_permutation_invariance_is_exact():
    rng = np.random.default_rng(15)
    for _ in range(50):
        n = rng.integers(2, 6)
        means = list(np.exp(rng.uniform(np.log(1e-2), np.log(1e2), n)))
        p = rng.uniform(0.0, 5.0) * max(means)
        base = pout_rayleigh(means, p).value
        for _ in range(3):
            perm = list(rng.permutation(means))
            assert pout_rayleigh(perm, p).value == base


def test_scale_invariance():
    rng = np.random.default_rng(16)
    for _ in range(50):
        n = rng.integers(1, 5)
        means = np.exp(rng.uniform(np.log(1e-2), np.log(1e2), n))
        p = rng.uniform(0.0, 5.0) * means.max()
        base = pout_rayleigh(means, p).value
        for c in (1e-6, 0.37, 1e6):
            scaled = pout_rayleigh(c * means, c * p).value
            assert scaled == pytest.approx(base, rel=1e-12, abs=1e-12)


def test_monotone_in_threshold_and_limits():
    means = [2.5, 0.8, 0.1]
    grid = np.linspace(0.0, 20.0, 60)
    values = [pout_rayleigh(means, p).value for p in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    # saturates at 1 for huge thresholds
    assert pout_rayleigh(means, 60.0 * max(means)).value == pytest.approx(1.0, abs=1e-12)
    # zero-threshold limit: 1 - sum_k prod_{i != k} m_k / (m_k + m_i)
    expect = 1.0 - math.fsum(
        math.prod(mk / (mk + mi) for i, mi in enumerate(means) if i != k)
        for k, mk in enumerate(means)
    )
    assert pout_rayleigh(means, 0.0).value == pytest.approx(expect, abs=1e-14)


def test_corrected_variant_stays_in_unit_interval():
    rng = np.random.default_rng(18)
    for _ in range(500):
        n = rng.integers(1, 5)
        means = list(np.exp(rng.uniform(np.log(1e-2), np.log(1e2), n)))
        p = 0.0 if rng.random() < 0.25 else rng.uniform(0.0, 5.0) * max(means)
        v = pout_rayleigh(means, p).value
        assert 0.0 <= v <= 1.0


def test_paper_equals_corrected_up_to_two_signals():
    rng = np.random.default_rng(19)
    for _ in range(50):
        n = rng.integers(1, 3)
        means = list(np.exp(rng.uniform(np.log(0.1), np.log(10.0), n)))
        p = rng.uniform(0.0, 2.0)
        assert (
            pout_rayleigh(means, p, VARIANT_PAPER).value
            == pout_rayleigh(means, p, VARIANT_CORRECTED).value
        )


def test_large_n_paper_variant_does_not_overflow():
    res = pout_rayleigh([1.0] * 25, 0.0, VARIANT_PAPER)
    assert math.isfinite(res.value)
    assert res.value < -1e10
    assert 0.0 <= pout_rayleigh([1.0] * 25, 0.0).value <= 1.0


def test_argument_validation():
    with pytest.raises(ValueError):
        pout_rayleigh([], 1.0)
    with pytest.raises(ValueError):
        pout_rayleigh([1.0, -1.0], 1.0)
    with pytest.raises(ValueError):
        pout_rayleigh([1.0, 0.0], 1.0)
    with pytest.raises(ValueError):
        pout_rayleigh([1.0], -0.5)
    with pytest.raises(ValueError):
        pout_rayleigh([math.inf], 1.0)
    with pytest.raises(ValueError):
        pout_rayleigh([1.0], 1.0, variant="exact")


def make_spec(ues, carrier_hz=2e9):
    return ScenarioSpec(
        ues=tuple(ues),
        carrier_hz=carrier_hz,
        alpha=4.0,
        pthres_dbm=-75.0,
        cell_radius_m=100.0,
    )


def test_scenario_composition_is_exact():
    spec = make_spec([UeSpec("ue1", 10.0, 11.0), UeSpec("ue2", 100.0, 6.0)])
    lin = linearize(spec)
    for variant in (VARIANT_CORRECTED, VARIANT_PAPER):
        assert (
            pout_scenario(spec, variant).value
            == pout_rayleigh(lin.means, lin.pthres_linear, variant).value
        )


def test_single_ue_unit_ratio_scenario():
    # pick the threshold so that pthres_linear equals the single mean exactly
    kp = pathloss_mean_gain(2e9, 1.0, 4.0)
    spec = ScenarioSpec(
        ues=(UeSpec("u", 1.0, 0.0),),
        carrier_hz=2e9,
        alpha=4.0,
        pthres_dbm=linear_to_db(kp) + 30.0,
        cell_radius_m=100.0,
    )
    assert pout_scenario(spec).value == pytest.approx(1.0 - math.exp(-1.0), rel=1e-12)


def test_reference_scenario_value_and_frequency_effect():
    spec2 = make_spec([UeSpec("ue1", 10.0, 11.0), UeSpec("ue2", 100.0, 6.0)], carrier_hz=2e9)
    spec28 = make_spec([UeSpec("ue1", 10.0, 11.0), UeSpec("ue2", 100.0, 6.0)], carrier_hz=28e9)
    v2 = pout_scenario(spec2).value
    v28 = pout_scenario(spec28).value
    assert v2 == pytest.approx(2.0801967532067732e-04, rel=1e-9)
    assert v28 > v2
