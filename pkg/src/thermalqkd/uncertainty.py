"""Analytic von Neumann mutual information from measurement uncertainty.

Each party's measured X quadrature is modeled as

    X = c * x_in + sqrt(1 - c**2) * v + N

where x_in is the source quadrature, v is unit-variance vacuum noise
picked up between source and detector, N is detector noise, and the
coefficient c is n_A/2 for Alice, tau*n_B/2 for Bob and mu*n_E/2 for Eve
(detector efficiencies n, Eve's splitter amplitudes tau, mu).  From the
resulting estimate uncertainties Delta the mutual information follows as
I = (1/2) log2((V + chi) / (1 + chi)) with the added noise chi split
into a line term and a detection term.

The two Delta expressions are kept exactly as derived, including their
differing small terms (n_A/2 unsquared in delta_ab, (tau*n_B)**2/2 in
delta_be); see the README note on conventions.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseModel:
    """Detector efficiencies, detector noise second moments, channel T.

    The default is the simplified setting: unit efficiencies, unit
    detector noise second moments and unit channel transmittance, under
    which the added noise chi collapses to the estimate uncertainty
    Delta exactly.
    """

    n_a: float = 1.0
    n_b: float = 1.0
    n_e: float = 1.0
    n2_a: float = 1.0
    n2_b: float = 1.0
    n2_e: float = 1.0
    transmittance: float = 1.0

    def __post_init__(self):
        for eff in (self.n_a, self.n_b, self.n_e):
            if not 0.0 < eff <= 1.0:
                raise ValueError("detector efficiencies must lie in (0, 1]")
        for m2 in (self.n2_a, self.n2_b, self.n2_e):
            if m2 < 0:
                raise ValueError("noise second moments must be nonnegative")
        if not 0.0 < self.transmittance <= 1.0:
            raise ValueError("channel transmittance must lie in (0, 1]")


@dataclass(frozen=True)
class NoiseBreakdown:
    """chi = chi_line + chi_hom / T, kept with its two parts."""

    chi_line: float
    chi_hom: float
    chi: float


@dataclass(frozen=True)
class UncertaintyResult:
    """Uncertainties, noise decompositions and MIs at one variance point."""

    delta_ab: float
    delta_be: float
    noise_ab: NoiseBreakdown
    noise_be: NoiseBreakdown
    i_ab: float
    i_be: float


def party_coefficients(nm, tau, mu):
    """Signal coefficients (c_A, c_B, c_E) of the quadrature model."""
    return nm.n_a / 2.0, tau * nm.n_b / 2.0, mu * nm.n_e / 2.0


def measured_variance(coeff, variance_in, n2):
    """Variance of c*x_in + sqrt(1-c**2)*v + N with Var(v) = 1, Var(N) = n2."""
    if not 0.0 <= coeff <= 1.0:
        raise ValueError("signal coefficient must lie in [0, 1]")
    return coeff ** 2 * variance_in + (1.0 - coeff ** 2) + n2


def delta_ab(nm, tau):
    """Alice's uncertainty on Bob's quadrature measurements.

    (tau*n_B/n_A)**2 * (1 - n_A/2 + <N_A^2>) + 1 + <N_B^2>, where tau is
    the amplitude transmittance of Eve's splitter in Bob's channel.
    """
    if nm.n_a == 0:
        raise ValueError("Alice's detector efficiency cannot be zero")
    ratio = tau * nm.n_b / nm.n_a
    return ratio ** 2 * (1.0 - nm.n_a / 2.0 + nm.n2_a) + 1.0 + nm.n2_b


def delta_be(nm, tau, mu):
    """Eve's uncertainty on Bob's quadrature measurements.

    (mu*n_E/(tau*n_B))**2 * (1 - (tau*n_B)**2/2 + <N_B^2>) + 1 + <N_E^2>.
    Diverges as tau -> 0, when Bob no longer receives a reference.
    """
    if tau <= 0:
        raise ValueError("tau must be positive, Eve needs Bob's reference")
    ratio = mu * nm.n_e / (tau * nm.n_b)
    return ratio ** 2 * (1.0 - (tau * nm.n_b) ** 2 / 2.0 + nm.n2_b) + 1.0 + nm.n2_e


def gaussian_mi(variance, chi):
    """I = (1/2) log2((V + chi)/(1 + chi)) in bits; zero at V = 1."""
    if variance < 1.0:
        raise ValueError("quadrature variance cannot be below the vacuum's")
    if chi < 0:
        raise ValueError("added noise must be nonnegative")
    return 0.5 * float(np.log2((variance + chi) / (1.0 + chi)))


def total_noise(nm, delta):
    """Split the added noise into line and detection parts.

    chi_line = 1/T - 2 + delta and chi_hom = (1 + <N_B^2>)/n_B - 1 (the
    detection noise of Bob's homodyne, the reference measurement in both
    estimates), combined as chi = chi_line + chi_hom / T.  With T = 1,
    unit efficiency and <N^2> = 1 this reduces to chi = delta.
    """
    t = nm.transmittance
    chi_line = 1.0 / t - 2.0 + delta
    chi_hom = (1.0 + nm.n2_b) / nm.n_b - 1.0
    return NoiseBreakdown(chi_line=chi_line, chi_hom=chi_hom,
                          chi=chi_line + chi_hom / t)


def estimate(nm, tau, variance):
    """Full uncertainty-route result at one source variance.

    tau is the amplitude transmittance of Eve's splitter; mu follows
    from tau**2 + mu**2 = 1.
    """
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau must lie in (0, 1]")
    mu = float(np.sqrt(max(1.0 - tau ** 2, 0.0)))
    d_ab = delta_ab(nm, tau)
    d_be = delta_be(nm, tau, mu)
    noise_ab = total_noise(nm, d_ab)
    noise_be = total_noise(nm, d_be)
    return UncertaintyResult(
        delta_ab=d_ab,
        delta_be=d_be,
        noise_ab=noise_ab,
        noise_be=noise_be,
        i_ab=gaussian_mi(variance, noise_ab.chi),
        i_be=gaussian_mi(variance, noise_be.chi),
    )


def mi_curves(nm, variances, tau=None):
    """I(A;B) and I(B;E) against source variance, as three arrays.

    Returns a dict with keys "variance", "i_ab", "i_be".  tau defaults
    to 1/sqrt(2), the 50:50 interception case.
    """
    if tau is None:
        tau = 1.0 / np.sqrt(2.0)
    variances = np.asarray(variances, dtype=float)
    if variances.ndim != 1 or len(variances) == 0:
        raise ValueError("need a one-dimensional, nonempty variance grid")
    if np.any(variances < 1.0):
        raise ValueError("quadrature variances cannot be below the vacuum's")
    i_ab = np.empty(len(variances))
    i_be = np.empty(len(variances))
    for k, v in enumerate(variances):
        res = estimate(nm, tau, float(v))
        i_ab[k] = res.i_ab
        i_be[k] = res.i_be
    return {"variance": variances.copy(), "i_ab": i_ab, "i_be": i_be}
