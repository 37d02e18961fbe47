"""Acceptance suite: one test per shipped guarantee, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines.
Budgeted runtimes are asserted with perf_counter around the relevant work.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from thermalqkd.cli import _bootstrap_seed, main
from thermalqkd.gaussian import symplectic_spectrum, von_neumann_entropy
from thermalqkd.infotheory import bootstrap_errors, exact_enumeration, \
    offset_correlation, shannon_summary
from thermalqkd.montecarlo import derive_bits, run_protocol
from thermalqkd.protocol import (
    ProtocolConfig,
    build_final_state,
    closed_form_state,
    global_entropy,
    protocol_mutual_informations,
)
from thermalqkd.uncertainty import NoiseModel, delta_ab, delta_be, mi_curves, \
    total_noise

SWEEP_SEED = 7       # fixed seed of the simulated-crossing run
ORACLE_SEED = 60     # fixed seed of the enumeration-comparison run
OFFSET_SEED = 23     # fixed seed of the offset-correlation run
SWEEP_GRID = (0.25, 0.5, 0.75, 1.0)
SWEEP_TRIALS = 10 ** 5


@contextmanager
def criterion(num, name):
    try:
        yield
    except Exception:
        print("ACCEPTANCE %d %s: FAIL" % (num, name))
        raise
    print("ACCEPTANCE %d %s: PASS" % (num, name))


def random_configs(count=20):
    rng = np.random.default_rng(2026)
    return [
        ProtocolConfig.from_power_transmittance(
            rng.uniform(0.0, 300.0), rng.uniform(0.0, 1.0)
        )
        for _ in range(count)
    ]


@pytest.fixture(scope="module")
def simulated_sweep():
    """Shannon summaries with bootstrap errors over the fixed tap grid."""
    t0 = time.perf_counter()
    point_seeds = np.random.SeedSequence(SWEEP_SEED).generate_state(
        len(SWEEP_GRID), np.uint64
    )
    rows = []
    for t2, pseed in zip(SWEEP_GRID, point_seeds):
        cfg = ProtocolConfig.from_power_transmittance(200.0, t2)
        ens = run_protocol(cfg, SWEEP_TRIALS, int(pseed))
        a = derive_bits(ens.alice.values).bits
        b = derive_bits(ens.bob.values).bits
        e = derive_bits(ens.eve.values).bits
        rows.append({
            "t2": t2,
            "summary": shannon_summary(a, b, e),
            "errors": bootstrap_errors(a, b, e, seed=_bootstrap_seed(int(pseed))),
        })
    return {"rows": rows, "elapsed": time.perf_counter() - t0}


def test_criterion_1_closed_form_match():
    with criterion(1, "closed-form covariance match"):
        t0 = time.perf_counter()
        for cfg in random_configs():
            circ = build_final_state(cfg).gamma.entries
            closed = closed_form_state(cfg).entries
            assert np.abs(circ - closed).max() <= 1e-9
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_entropy_conservation():
    with criterion(2, "global entropy conservation"):
        for cfg in random_configs():
            state = build_final_state(cfg).gamma
            lam = np.sort(np.asarray(list(symplectic_spectrum(state))))[::-1]
            want = np.array([cfg.variance, 1, 1, 1, 1, 1])
            np.testing.assert_allclose(lam, want, rtol=1e-9, atol=1e-9)
            s = von_neumann_entropy(state)
            assert abs(s - global_entropy(cfg)) <= 1e-9


def test_criterion_3_analytic_crossing():
    with criterion(3, "analytic key-rate crossing"):
        t0 = time.perf_counter()

        def k_dr(t2):
            return protocol_mutual_informations(
                ProtocolConfig.from_power_transmittance(200.0, t2)
            ).k_dr

        lo, hi = 0.3, 0.7
        assert k_dr(lo) < 0 < k_dr(hi)
        while hi - lo > 1e-3:
            mid = 0.5 * (lo + hi)
            if k_dr(mid) < 0:  # curve increases with the tap transmittance
                lo = mid
            else:
                hi = mid
        root = 0.5 * (lo + hi)
        assert abs(root - 0.5) <= 0.01

        for t2 in np.arange(1, 21) * 0.05:
            vn = protocol_mutual_informations(
                ProtocolConfig.from_power_transmittance(200.0, float(t2))
            )
            assert vn.k_rr > 0
        assert time.perf_counter() - t0 < 5.0


def test_criterion_4_simulated_crossing(simulated_sweep):
    with criterion(4, "simulated key-rate crossing"):
        rows = simulated_sweep["rows"]
        mid = next(r for r in rows if r["t2"] == 0.5)
        assert abs(mid["summary"].k_dr) <= 3 * mid["errors"]["k_dr"]
        for row in rows:
            assert row["summary"].k_rr >= 3 * row["errors"]["k_rr"]
        assert simulated_sweep["elapsed"] < 120.0


def test_criterion_5_magnitude_ordering(simulated_sweep):
    with criterion(5, "magnitude ordering"):
        for row in simulated_sweep["rows"]:
            vn = protocol_mutual_informations(
                ProtocolConfig.from_power_transmittance(200.0, row["t2"])
            )
            assert vn.i_ab > row["summary"].i_ab


def test_criterion_6_oracle_equivalence():
    with criterion(6, "enumeration oracle equivalence"):
        t0 = time.perf_counter()
        for t2 in (0.25, 0.5, 0.75):
            cfg = ProtocolConfig.from_power_transmittance(2.0, t2)
            ens = run_protocol(cfg, 10 ** 6, ORACLE_SEED)
            a = derive_bits(ens.alice.values).bits
            b = derive_bits(ens.bob.values).bits
            e = derive_bits(ens.eve.values).bits
            s = shannon_summary(a, b, e)
            errs = bootstrap_errors(a, b, e, seed=ORACLE_SEED + 1)
            exact = exact_enumeration(2.0, t2)
            for key in ("i_ab", "i_ae", "i_be"):
                diff = abs(getattr(s, key) - getattr(exact, key))
                assert diff <= 3 * errs[key], (t2, key)
        assert time.perf_counter() - t0 < 60.0


def test_criterion_7_offset_table():
    with criterion(7, "offset correlation table"):
        n = 10 ** 5
        ens = run_protocol(
            ProtocolConfig.from_power_transmittance(200.0, 0.5), n, OFFSET_SEED
        )
        table = offset_correlation(ens.alice.values, ens.bob.values, 10)
        r0 = float(table.r[table.offsets == 0][0])
        rest = np.abs(table.r[table.offsets != 0])
        assert r0 >= 10.0 * rest.max()
        assert (rest <= 3.0 / np.sqrt(n)).all()
        assert not table.degenerate.any()


def test_criterion_8_noise_identity_and_curves():
    with criterion(8, "noise identity and curve properties"):
        nm = NoiseModel()
        tau = mu = 1.0 / np.sqrt(2.0)
        for d in (delta_ab(nm, tau), delta_be(nm, tau, mu), delta_ab(nm, 1.0)):
            assert total_noise(nm, d).chi == d  # exact, not approximate
        curves = mi_curves(nm, np.linspace(1.0, 10.0, 19))
        assert curves["i_ab"][0] == 0.0
        assert curves["i_be"][0] == 0.0
        assert (np.diff(curves["i_ab"]) > 0).all()
        assert (np.diff(curves["i_be"]) > 0).all()
        assert (curves["i_ab"][1:] > curves["i_be"][1:]).all()


def test_criterion_9_byte_identical_reruns(tmp_path):
    with criterion(9, "byte-identical reruns"):
        argv = [
            "sweep-eve", "--mean-photon", "200",
            "--trials", str(SWEEP_TRIALS), "--seed", str(SWEEP_SEED),
            "--sweep", "0.25:1:4",
        ]
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        assert main(argv + ["--out", str(first)]) == 0
        assert main(argv + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
