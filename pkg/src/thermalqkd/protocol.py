"""Six-mode Gaussian model of the central-broadcast protocol.

A thermal beam is split 50:50 between Alice and Bob's channel; Eve taps
Bob's channel with a splitter of amplitude transmittance tau; each party
then splits their beam 50:50 onto a pair of detectors.  The final state
therefore has six modes, ordered (A1, A2, B1, B2, E1, E2).

Two independent routes to the final covariance matrix are provided: the
circuit route (build_final_state, applying the splitter symplectics one
by one) and the closed-form route (closed_form_submatrices, evaluating
the per-block expressions directly).  Their agreement is the module's
central cross-validation.
"""

from dataclasses import dataclass

import numpy as np

from . import gaussian
from .gaussian import (
    BeamSplitterSpec,
    CovarianceMatrix,
    ModePartition,
    bosonic_entropy,
    thermal_covariance,
)
from .infotheory import key_rate_bounds

ALICE = ModePartition((0, 1))
BOB = ModePartition((2, 3))
EVE = ModePartition((4, 5))


@dataclass(frozen=True)
class ProtocolConfig:
    """Source mean photon number and Eve's amplitude transmittance.

    Every splitter other than Eve's is fixed 50:50.  eve_tau = 1 means
    Eve takes nothing, eve_tau = 0 means Eve takes everything.
    """

    mean_photon: float
    eve_tau: float

    def __post_init__(self):
        if not (np.isfinite(self.mean_photon) and self.mean_photon >= 0):
            raise ValueError("mean photon number must be finite and nonnegative")
        if not 0.0 <= self.eve_tau <= 1.0:
            raise ValueError("eve_tau must lie in [0, 1]")

    @classmethod
    def from_power_transmittance(cls, mean_photon, eve_t2):
        """Build from the power transmittance eve_tau**2 of Eve's splitter."""
        if not 0.0 <= eve_t2 <= 1.0:
            raise ValueError("power transmittance must lie in [0, 1]")
        return cls(mean_photon=float(mean_photon), eve_tau=float(np.sqrt(eve_t2)))

    @property
    def eve_t2(self):
        return self.eve_tau ** 2

    @property
    def eve_mu(self):
        return float(np.sqrt(max(1.0 - self.eve_tau ** 2, 0.0)))

    @property
    def variance(self):
        """Quadrature variance V = 2*nbar + 1 of the source."""
        return 2.0 * self.mean_photon + 1.0


@dataclass(frozen=True, eq=False)
class ProtocolGaussianState:
    """Final six-mode state, modes ordered (A1, A2, B1, B2, E1, E2)."""

    gamma: CovarianceMatrix
    config: ProtocolConfig


def build_final_state(config):
    """Run the splitter circuit on thermal x vacuum^5.

    Mode 0 starts thermal; the source splitter acts on (0, 2), Eve's on
    (2, 4), then the measurement splitters on (0, 1), (2, 3), (4, 5).
    The signal mode is always the first (transmitted) argument, so the
    final ordering is (A1, A2, B1, B2, E1, E2) with no permutation.
    """
    half = BeamSplitterSpec.fifty_fifty()
    eve = BeamSplitterSpec(tau=config.eve_tau, mu=config.eve_mu)
    g = gaussian.append_vacuum(thermal_covariance(config.mean_photon), 5)
    g = gaussian.apply_beam_splitter(g, 0, 2, half)   # source split
    g = gaussian.apply_beam_splitter(g, 2, 4, eve)    # Eve taps Bob's channel
    g = gaussian.apply_beam_splitter(g, 0, 1, half)   # Alice's detector pair
    g = gaussian.apply_beam_splitter(g, 2, 3, half)   # Bob's detector pair
    g = gaussian.apply_beam_splitter(g, 4, 5, half)   # Eve's detector pair
    return ProtocolGaussianState(gamma=g, config=config)


def closed_form_submatrices(config):
    """The six 4x4 blocks of the final state, from the printed formulas.

    Returns a dict with keys A1A2, B1B2, E1E2, AB, AE, BE.  Each block is
    a 2x2 pattern over the party's two modes, tensored with the identity
    on (X, P).  This code path never touches the circuit machinery.
    """
    v = config.variance
    tau = config.eve_tau
    mu = config.eve_mu
    eye2 = np.eye(2)

    a_diag = (v + 3.0) / 4.0
    a_off = -(v - 1.0) / 4.0
    block_a = np.array([[a_diag, a_off], [a_off, a_diag]])

    b_diag = tau ** 2 * (v + 1.0) / 4.0 + (1.0 + mu ** 2) / 2.0
    b_off = -tau ** 2 * (v + 1.0) / 4.0 + (1.0 - mu ** 2) / 2.0
    block_b = np.array([[b_diag, b_off], [b_off, b_diag]])

    e_diag = mu ** 2 * (v + 1.0) / 4.0 + (1.0 + tau ** 2) / 2.0
    e_off = -mu ** 2 * (v + 1.0) / 4.0 + (1.0 - tau ** 2) / 2.0
    block_e = np.array([[e_diag, e_off], [e_off, e_diag]])

    c_ab = tau * (1.0 - v) / 4.0
    block_ab = np.array([[c_ab, -c_ab], [-c_ab, c_ab]])

    c_ae = mu * (1.0 - v) / 4.0
    block_ae = np.array([[-c_ae, c_ae], [c_ae, -c_ae]])

    c_be = tau * mu * (v - 1.0) / 4.0
    block_be = np.array([[-c_be, c_be], [c_be, -c_be]])

    return {
        "A1A2": np.kron(block_a, eye2),
        "B1B2": np.kron(block_b, eye2),
        "E1E2": np.kron(block_e, eye2),
        "AB": np.kron(block_ab, eye2),
        "AE": np.kron(block_ae, eye2),
        "BE": np.kron(block_be, eye2),
    }


def closed_form_state(config):
    """Assemble the full 12x12 matrix from closed_form_submatrices."""
    blk = closed_form_submatrices(config)
    g = np.zeros((12, 12))
    g[0:4, 0:4] = blk["A1A2"]
    g[4:8, 4:8] = blk["B1B2"]
    g[8:12, 8:12] = blk["E1E2"]
    g[0:4, 4:8] = blk["AB"]
    g[4:8, 0:4] = blk["AB"].T
    g[0:4, 8:12] = blk["AE"]
    g[8:12, 0:4] = blk["AE"].T
    g[4:8, 8:12] = blk["BE"]
    g[8:12, 4:8] = blk["BE"].T
    return CovarianceMatrix.from_array(g)


def global_entropy(config):
    """Entropy of the full six-mode state; equals G(nbar) by unitarity."""
    return float(bosonic_entropy(config.mean_photon))


def protocol_mutual_informations(config):
    """Von Neumann InfoSummary over the two-mode party partitions.

    Marginal entropies go in the H slots, I(A;B|E) is the quantum
    conditional mutual information S(AE) + S(BE) - S(E) - S(ABE), and the
    key rates reuse the reconciliation formulas with von Neumann MIs.
    """
    state = build_final_state(config)
    g = state.gamma

    def entropy_of(part):
        return gaussian.von_neumann_entropy(gaussian.reduce(g, part))

    s_a = entropy_of(ALICE)
    s_b = entropy_of(BOB)
    s_e = entropy_of(EVE)
    s_ab = entropy_of(ModePartition((0, 1, 2, 3)))
    s_ae = entropy_of(ModePartition((0, 1, 4, 5)))
    s_be = entropy_of(ModePartition((2, 3, 4, 5)))
    s_abe = gaussian.von_neumann_entropy(g)

    i_ab = max(s_a + s_b - s_ab, 0.0)
    i_ae = max(s_a + s_e - s_ae, 0.0)
    i_be = max(s_b + s_e - s_be, 0.0)
    cmi = max(s_ae + s_be - s_e - s_abe, 0.0)
    return key_rate_bounds(i_ab, i_ae, i_be, cmi,
                           h_a=s_a, h_b=s_b, h_e=s_e, flavor="von_neumann")
