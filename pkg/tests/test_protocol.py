import numpy as np
import pytest
from numpy.testing import assert_allclose

from thermalqkd.gaussian import ModePartition, von_neumann_entropy
from thermalqkd.protocol import (
    ALICE,
    BOB,
    EVE,
    ProtocolConfig,
    build_final_state,
    closed_form_state,
    closed_form_submatrices,
    global_entropy,
    protocol_mutual_informations,
)

# frozen from an independent dense-solver evaluation at nbar=200, t2=0.5
I_AB_200 = 6.518311668564138
K_RR_200 = 0.4102865454028688
S_A_200 = 8.093740780458802  # = G(100)
K_DR_200_Q25 = -1.08227577594306


def test_config_validation():
    with pytest.raises(ValueError):
        ProtocolConfig(mean_photon=-1.0, eve_tau=0.5)
    with pytest.raises(ValueError):
        ProtocolConfig(mean_photon=1.0, eve_tau=1.5)
    with pytest.raises(ValueError):
        ProtocolConfig.from_power_transmittance(1.0, -0.1)
    cfg = ProtocolConfig.from_power_transmittance(3.0, 0.49)
    assert abs(cfg.eve_tau - 0.7) < 1e-12
    assert abs(cfg.eve_t2 - 0.49) < 1e-12
    assert abs(cfg.eve_mu ** 2 + cfg.eve_t2 - 1.0) < 1e-12
    assert cfg.variance == 7.0


def test_circuit_matches_closed_form_randomized():
    rng = np.random.default_rng(2)
    for _ in range(10):
        cfg = ProtocolConfig.from_power_transmittance(
            rng.uniform(0.0, 300.0), rng.uniform(0.0, 1.0)
        )
        circ = build_final_state(cfg).gamma.entries
        closed = closed_form_state(cfg).entries
        assert np.abs(circ - closed).max() < 1e-9


def test_closed_form_blocks_small_cases():
    # nbar=1 (V=3): Alice block has 1.5 on the diagonal, -0.5 off
    blk = closed_form_submatrices(ProtocolConfig(mean_photon=1.0, eve_tau=1.0))
    assert_allclose(blk["A1A2"], np.kron([[1.5, -0.5], [-0.5, 1.5]], np.eye(2)))
    # eve_tau=1: Eve sees vacuum and is uncorrelated with everyone
    assert_allclose(blk["E1E2"], np.eye(4))
    assert_allclose(blk["BE"], np.zeros((4, 4)))
    assert_allclose(blk["AE"], np.zeros((4, 4)))
    # V=3 at the 50:50 tap: Bob diag 1.25, |C_BE| entries 0.25
    blk = closed_form_submatrices(
        ProtocolConfig.from_power_transmittance(1.0, 0.5)
    )
    assert_allclose(np.diag(blk["B1B2"]), [1.25] * 4)
    assert_allclose(blk["BE"],
                    np.kron([[-0.25, 0.25], [0.25, -0.25]], np.eye(2)),
                    atol=1e-15)


def test_vacuum_source_gives_identity():
    cfg = ProtocolConfig(mean_photon=0.0, eve_tau=0.6)
    assert_allclose(build_final_state(cfg).gamma.entries, np.eye(12),
                    atol=1e-12)


def test_bob_eve_exchange_symmetry():
    # swapping t2 -> 1 - t2 swaps Bob's and Eve's roles
    lo = closed_form_submatrices(ProtocolConfig.from_power_transmittance(4.0, 0.3))
    hi = closed_form_submatrices(ProtocolConfig.from_power_transmittance(4.0, 0.7))
    assert_allclose(lo["B1B2"], hi["E1E2"], atol=1e-12)
    assert_allclose(lo["AB"], -hi["AE"], atol=1e-12)


def test_global_spectrum_and_entropy():
    cfg = ProtocolConfig.from_power_transmittance(5.0, 0.35)
    g = build_final_state(cfg).gamma
    from thermalqkd.gaussian import symplectic_spectrum
    lam = np.asarray(list(symplectic_spectrum(g)))
    assert_allclose(lam, [11.0, 1, 1, 1, 1, 1], rtol=1e-10, atol=1e-10)
    assert abs(von_neumann_entropy(g) - global_entropy(cfg)) < 1e-9


def test_mutual_informations_at_symmetric_tap():
    vn = protocol_mutual_informations(
        ProtocolConfig.from_power_transmittance(200.0, 0.5)
    )
    assert vn.flavor == "von_neumann"
    assert abs(vn.i_ab - I_AB_200) < 1e-9
    assert abs(vn.i_ab - vn.i_ae) < 1e-9  # Bob and Eve are exchangeable here
    assert abs(vn.k_dr) < 1e-9
    assert abs(vn.k_rr - K_RR_200) < 1e-9
    assert abs(vn.h_a - S_A_200) < 1e-9
    assert vn.upper_bound >= vn.lower_bound


def test_direct_reconciliation_crossing():
    def k_dr(t2):
        cfg = ProtocolConfig.from_power_transmittance(200.0, t2)
        return protocol_mutual_informations(cfg).k_dr

    assert abs(k_dr(0.25) - K_DR_200_Q25) < 1e-9
    assert abs(k_dr(0.25) + k_dr(0.75)) < 1e-9  # antisymmetric about 0.5
    assert k_dr(0.4) < 0 < k_dr(0.6)


def test_reverse_reconciliation_always_positive():
    for t2 in (0.05, 0.2, 0.5, 0.8, 1.0):
        vn = protocol_mutual_informations(
            ProtocolConfig.from_power_transmittance(200.0, t2)
        )
        assert vn.k_rr > 0


def test_eve_decouples_at_full_transmittance():
    vn = protocol_mutual_informations(
        ProtocolConfig.from_power_transmittance(50.0, 1.0)
    )
    assert vn.h_e == 0.0
    assert vn.i_ae == 0.0
    assert vn.i_be == 0.0
    assert vn.i_ab > 0


def test_party_partitions():
    assert list(ALICE) == [0, 1]
    assert list(BOB) == [2, 3]
    assert list(EVE) == [4, 5]
    assert isinstance(ALICE, ModePartition)
