"""Stochastic simulation of the protocol on Fock-state samples.

Each trial draws a photon number from the source's geometric law, splits
it binomially at the source splitter, at Eve's tap and at each party's
measurement splitter, and turns the two detector counts into a scalar
measurement value.  Median thresholding then yields bit strings.

Reproducibility: trials are processed in fixed-size blocks and every
block gets its own counter-based generator keyed by (seed, block index),
with a fixed draw order inside the block.  Output therefore depends only
on (config, trials, seed, measurement_model), no matter how blocks would
be scheduled across workers.
"""

from dataclasses import dataclass

import numpy as np

from .protocol import ProtocolConfig

BLOCK_TRIALS = 1 << 16
_TAIL_TOL = 1e-12

MEASUREMENT_MODELS = ("photon", "heterodyne")


def _readonly(arr):
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ThermalSourceSpec:
    """Geometric photon-number source with mean nbar.

    p_n = nbar**n / (nbar+1)**(n+1), mean nbar, variance nbar*(nbar+1).
    truncation is the largest Fock index kept when the law is tabulated
    (pmf tables, population medians); it must leave a tail probability
    below 1e-12.  Sampling itself is exact and does not truncate.
    """

    mean_photon: float
    truncation: int

    def __post_init__(self):
        if not (np.isfinite(self.mean_photon) and self.mean_photon >= 0):
            raise ValueError("mean photon number must be finite and nonnegative")
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")
        if self.tail_probability() > _TAIL_TOL:
            raise ValueError("truncation leaves a tail above %g" % _TAIL_TOL)

    @classmethod
    def from_mean(cls, mean_photon):
        """Pick the smallest truncation whose discarded tail is < 1e-12."""
        mean_photon = float(mean_photon)
        if mean_photon < 0:
            raise ValueError("mean photon number must be finite and nonnegative")
        ratio = mean_photon / (mean_photon + 1.0)
        trunc = 0
        while ratio ** (trunc + 1) > _TAIL_TOL:
            trunc += 1
        return cls(mean_photon=mean_photon, truncation=trunc)

    def tail_probability(self):
        ratio = self.mean_photon / (self.mean_photon + 1.0)
        return float(ratio ** (self.truncation + 1))

    def pmf(self):
        """Probabilities for n = 0 .. truncation."""
        n = np.arange(self.truncation + 1, dtype=float)
        if self.mean_photon == 0:
            p = np.zeros(self.truncation + 1)
            p[0] = 1.0
            return p
        return self.mean_photon ** n / (self.mean_photon + 1.0) ** (n + 1.0)

    def population_median(self):
        return int(np.argmax(np.cumsum(self.pmf()) >= 0.5))


def sample_thermal(src, rng, size=None):
    """Draw photon numbers from the source law (exact, untruncated)."""
    p = 1.0 / (src.mean_photon + 1.0)
    return rng.geometric(p, size=size) - 1


def split_fock(n_in, transmittance_power, rng):
    """Binomial beam-splitter split of a Fock count.

    Returns (transmitted, reflected) with transmitted distributed
    Binomial(n_in, transmittance_power) and the pair summing to n_in
    exactly.  Accepts arrays.
    """
    if not 0.0 <= transmittance_power <= 1.0:
        raise ValueError("transmittance power must lie in [0, 1]")
    n_in = np.asarray(n_in)
    if np.any(n_in < 0):
        raise ValueError("photon counts must be nonnegative")
    kept = rng.binomial(n_in, transmittance_power)
    return kept, n_in - kept


@dataclass(frozen=True, eq=False)
class PartyMeasurements:
    """Per-trial detector counts and the derived scalar value for one party."""

    detector_one: np.ndarray
    detector_two: np.ndarray
    values: np.ndarray

    @property
    def counts(self):
        """Total photons reaching the party per trial."""
        return self.detector_one + self.detector_two


@dataclass(frozen=True, eq=False)
class TrialEnsemble:
    """All measurement streams from one simulated run."""

    config: ProtocolConfig
    measurement: str
    seed: int
    source_counts: np.ndarray
    alice: PartyMeasurements
    bob: PartyMeasurements
    eve: PartyMeasurements

    @property
    def trials(self):
        return len(self.source_counts)


def _heterodyne_values(rng, n1, n2):
    # A detector seeing Fock state n reports |alpha|^2 drawn from a unit
    # scale Gamma with shape n+1 (the Husimi law of |n>), at a uniform
    # phase.  Detector one supplies x, detector two supplies p.
    e1 = rng.gamma(n1 + 1.0)
    e2 = rng.gamma(n2 + 1.0)
    ph1 = rng.uniform(0.0, 2.0 * np.pi, size=len(n1))
    ph2 = rng.uniform(0.0, 2.0 * np.pi, size=len(n2))
    x = np.sqrt(e1) * np.cos(ph1)
    p = np.sqrt(e2) * np.sin(ph2)
    return np.hypot(x, p)


def run_protocol(config, trials, seed, measurement_model="photon"):
    """Simulate the full protocol and return a TrialEnsemble.

    measurement_model "photon" reports each party's total photon count;
    "heterodyne" pushes the detector counts through the quadrature model
    and reports z = sqrt(x**2 + p**2).  The integer count streams are
    identical between the two models at equal seed, since the quadrature
    draws happen after all counts are fixed.
    """
    if not isinstance(config, ProtocolConfig):
        raise TypeError("config must be a ProtocolConfig")
    trials = int(trials)
    if trials < 1:
        raise ValueError("need at least one trial")
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    if measurement_model not in MEASUREMENT_MODELS:
        raise ValueError("unknown measurement model %r" % measurement_model)

    src = ThermalSourceSpec.from_mean(config.mean_photon)
    n_parties = 3
    source = np.empty(trials, dtype=np.int64)
    det1 = [np.empty(trials, dtype=np.int64) for _ in range(n_parties)]
    det2 = [np.empty(trials, dtype=np.int64) for _ in range(n_parties)]
    vals = [np.empty(trials, dtype=float) for _ in range(n_parties)]

    n_blocks = (trials + BLOCK_TRIALS - 1) // BLOCK_TRIALS
    for block in range(n_blocks):
        lo = block * BLOCK_TRIALS
        hi = min(lo + BLOCK_TRIALS, trials)
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence([seed, block]))
        )
        # fixed draw order: source, Alice split, Eve split, detector splits
        n = sample_thermal(src, rng, size=hi - lo)
        a_total, channel = split_fock(n, 0.5, rng)
        b_total, e_total = split_fock(channel, config.eve_t2, rng)
        totals = (a_total, b_total, e_total)
        firsts = [split_fock(t, 0.5, rng)[0] for t in totals]
        source[lo:hi] = n
        for i in range(n_parties):
            d1 = firsts[i]
            d2 = totals[i] - d1
            det1[i][lo:hi] = d1
            det2[i][lo:hi] = d2
            if measurement_model == "photon":
                vals[i][lo:hi] = totals[i]
        if measurement_model == "heterodyne":
            for i in range(n_parties):
                vals[i][lo:hi] = _heterodyne_values(rng, det1[i][lo:hi],
                                                    det2[i][lo:hi])

    parties = [
        PartyMeasurements(
            detector_one=_readonly(det1[i]),
            detector_two=_readonly(det2[i]),
            values=_readonly(vals[i]),
        )
        for i in range(n_parties)
    ]
    return TrialEnsemble(
        config=config,
        measurement=measurement_model,
        seed=seed,
        source_counts=_readonly(source),
        alice=parties[0],
        bob=parties[1],
        eve=parties[2],
    )


@dataclass(frozen=True, eq=False)
class BitString:
    """Median-thresholded bits plus the threshold that produced them."""

    bits: np.ndarray
    threshold: float

    def __len__(self):
        return len(self.bits)

    def ones_fraction(self):
        return float(self.bits.mean())


def derive_bits(values):
    """Threshold a value stream at its median.

    The threshold is the sample median (mean of the central pair for even
    lengths); a bit is 1 iff the value is strictly greater, so ties at
    the median all map to 0.
    """
    values = np.asarray(values)
    if len(values) == 0:
        raise ValueError("cannot take the median of an empty stream")
    threshold = float(np.median(values))
    bits = (values > threshold).astype(np.uint8)
    return BitString(bits=_readonly(bits), threshold=threshold)
