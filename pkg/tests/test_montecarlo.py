import numpy as np
import pytest
import scipy.stats
from numpy.testing import assert_allclose

from thermalqkd.montecarlo import (
    BLOCK_TRIALS,
    ThermalSourceSpec,
    derive_bits,
    run_protocol,
    sample_thermal,
    split_fock,
)
from thermalqkd.protocol import ProtocolConfig


def test_thermal_source_spec():
    src = ThermalSourceSpec.from_mean(1.0)
    assert src.tail_probability() <= 1e-12
    pmf = src.pmf()
    assert abs(pmf[0] - 0.5) < 1e-15
    assert abs(pmf[1] - 0.25) < 1e-15
    assert abs(pmf[2] - 0.125) < 1e-15
    assert abs(pmf.sum() - 1.0) < 1e-11
    assert ThermalSourceSpec.from_mean(0.0).truncation == 0
    assert src.population_median() == 0  # CDF(0) = 1/2 exactly
    assert ThermalSourceSpec.from_mean(2.0).population_median() == 1
    with pytest.raises(ValueError):
        ThermalSourceSpec.from_mean(-1.0)
    with pytest.raises(ValueError):
        ThermalSourceSpec(mean_photon=10.0, truncation=3)


def test_sample_thermal_moments():
    rng = np.random.default_rng(101)
    src = ThermalSourceSpec.from_mean(3.0)
    n = sample_thermal(src, rng, size=200000)
    assert n.min() >= 0
    se_mean = np.sqrt(3.0 * 4.0 / len(n))
    assert abs(n.mean() - 3.0) < 3 * se_mean
    # variance nbar*(nbar+1) = 12, loose band
    assert abs(n.var() - 12.0) < 0.4
    src0 = ThermalSourceSpec.from_mean(0.0)
    assert not sample_thermal(src0, rng, size=1000).any()


def test_split_fock():
    rng = np.random.default_rng(5)
    n = rng.integers(0, 50, size=10000)
    kept, lost = split_fock(n, 1.0, rng)
    assert np.array_equal(kept, n)
    kept, lost = split_fock(n, 0.0, rng)
    assert not kept.any()
    kept, lost = split_fock(n, 0.3, rng)
    assert np.array_equal(kept + lost, n)  # photon number conserved exactly
    assert kept.min() >= 0 and lost.min() >= 0
    p_hat = kept.sum() / n.sum()
    assert abs(p_hat - 0.3) < 3 * np.sqrt(0.3 * 0.7 / n.sum())
    with pytest.raises(ValueError):
        split_fock(n, 1.5, rng)
    with pytest.raises(ValueError):
        split_fock(np.array([-1]), 0.5, rng)


def test_run_protocol_validation():
    cfg = ProtocolConfig.from_power_transmittance(1.0, 0.5)
    with pytest.raises(TypeError):
        run_protocol({"mean_photon": 1.0}, 10, 0)
    with pytest.raises(ValueError):
        run_protocol(cfg, 0, 0)
    with pytest.raises(ValueError):
        run_protocol(cfg, 10, -1)
    with pytest.raises(ValueError):
        run_protocol(cfg, 10, 0, "calorimeter")


def test_run_protocol_conservation():
    cfg = ProtocolConfig.from_power_transmittance(4.0, 0.3)
    ens = run_protocol(cfg, 5000, 2)
    total = ens.alice.counts + ens.bob.counts + ens.eve.counts
    assert np.array_equal(total, ens.source_counts)
    for party in (ens.alice, ens.bob, ens.eve):
        assert np.array_equal(party.detector_one + party.detector_two,
                              party.counts)
        assert np.array_equal(party.values, party.counts)  # photon model
    assert ens.trials == 5000


def test_run_protocol_edge_configs():
    # eve_tau = 1: Eve's stream is exactly empty
    ens = run_protocol(ProtocolConfig.from_power_transmittance(5.0, 1.0),
                       3000, 9)
    assert not ens.eve.counts.any()
    assert ens.bob.counts.sum() > 0
    # dark source: every stream is empty
    ens = run_protocol(ProtocolConfig.from_power_transmittance(0.0, 0.5),
                       1000, 9)
    assert not ens.source_counts.any()
    assert not ens.alice.counts.any()


def test_bob_marginal_is_geometric():
    # thinning a geometric source is geometric with the thinned mean
    cfg = ProtocolConfig.from_power_transmittance(8.0, 0.6)
    ens = run_protocol(cfg, 100000, 31)
    want_mean = 8.0 * 0.6 / 2.0
    want_var = want_mean * (want_mean + 1.0)
    se = np.sqrt(want_var / ens.trials)
    assert abs(ens.bob.counts.mean() - want_mean) < 3 * se
    assert abs(ens.bob.counts.var() / want_var - 1.0) < 0.05


def test_bob_eve_exchangeable_at_even_tap():
    ens = run_protocol(ProtocolConfig.from_power_transmittance(50.0, 0.5),
                       20000, 5)
    stat = scipy.stats.ks_2samp(ens.bob.values, ens.eve.values)
    assert stat.pvalue > 0.01


def test_run_protocol_deterministic():
    cfg = ProtocolConfig.from_power_transmittance(2.0, 0.4)
    a = run_protocol(cfg, 4000, 77)
    b = run_protocol(cfg, 4000, 77)
    assert np.array_equal(a.source_counts, b.source_counts)
    assert np.array_equal(a.alice.values, b.alice.values)
    assert np.array_equal(a.eve.detector_two, b.eve.detector_two)
    c = run_protocol(cfg, 4000, 78)
    assert not np.array_equal(a.source_counts, c.source_counts)


def test_block_prefix_stability():
    # a full first block is unchanged when more blocks follow it
    cfg = ProtocolConfig.from_power_transmittance(1.5, 0.7)
    short = run_protocol(cfg, BLOCK_TRIALS, 13)
    longer = run_protocol(cfg, BLOCK_TRIALS + 3, 13)
    assert np.array_equal(longer.source_counts[:BLOCK_TRIALS],
                          short.source_counts)
    assert np.array_equal(longer.bob.values[:BLOCK_TRIALS], short.bob.values)
    assert len(longer.source_counts) == BLOCK_TRIALS + 3


def test_heterodyne_model():
    cfg = ProtocolConfig.from_power_transmittance(6.0, 0.5)
    photon = run_protocol(cfg, 60000, 19)
    het = run_protocol(cfg, 60000, 19, "heterodyne")
    # count streams agree between models; only the reported value changes
    assert np.array_equal(het.alice.detector_one, photon.alice.detector_one)
    assert np.array_equal(het.eve.counts, photon.eve.counts)
    assert het.measurement == "heterodyne"
    z2 = het.alice.values ** 2
    want = 6.0 / 2.0 / 2.0 + 1.0  # party mean / 2 + 1
    se = z2.std() / np.sqrt(len(z2))
    assert abs(z2.mean() - want) < 3 * se
    assert het.bob.values.min() >= 0
    # continuous values, not plain counts
    assert np.abs(het.alice.values - np.round(het.alice.values)).max() > 1e-3


def test_derive_bits():
    bs = derive_bits(np.array([1.0, 3.0, 5.0, 7.0]))
    assert bs.threshold == 4.0
    assert_allclose(bs.bits, [0, 0, 1, 1])
    assert len(bs) == 4
    assert bs.ones_fraction() == 0.5
    flat = derive_bits(np.full(10, 2.5))
    assert not flat.bits.any()  # ties at the median all land on zero
    skew = derive_bits(np.array([2.0, 2.0, 9.0]))
    assert skew.threshold == 2.0
    assert_allclose(skew.bits, [0, 0, 1])
    with pytest.raises(ValueError):
        derive_bits(np.array([]))
