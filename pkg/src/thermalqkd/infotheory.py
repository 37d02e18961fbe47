"""Shannon information measures on bit strings, plus exact references.

Entropies are plug-in (maximum likelihood) estimates from empirical
frequencies, with no bias correction; for two binary strings of length N
the plug-in mutual information carries a positive bias of order
(|A||B| - 1) / (2 N ln 2), which the tests bound explicitly.

The module also hosts the exact small-scale enumeration of the protocol's
count distribution.  That enumeration is the reference the Monte Carlo
path is validated against, so it deliberately shares no sampling code
with the simulator.
"""

import math
from dataclasses import dataclass

import numpy as np

_CLAMP_TOL = 1e-12
_ENUMERATION_CAP = 200  # largest total photon number we will enumerate


@dataclass(frozen=True)
class InfoSummary:
    """Entropies, mutual informations and key-rate bounds for one setup.

    flavor is "shannon" for measured bit strings and "von_neumann" for
    quantities computed from the quantum state.  Fields are in bits.
    """

    flavor: str
    h_a: float
    h_b: float
    h_e: float
    i_ab: float
    i_ae: float
    i_be: float
    i_ab_given_e: float
    k_dr: float
    k_rr: float
    lower_bound: float
    upper_bound: float


@dataclass(frozen=True, eq=False)
class JointHistogram:
    """Joint outcome counts over one to three binary strings."""

    counts: np.ndarray
    n: int

    @classmethod
    def from_bits(cls, *strings):
        if not 1 <= len(strings) <= 3:
            raise ValueError("need one to three bit strings")
        arrs = [np.asarray(s) for s in strings]
        n = len(arrs[0])
        if n == 0:
            raise ValueError("bit strings must be nonempty")
        if any(len(a) != n for a in arrs):
            raise ValueError("bit strings must have equal length")
        for a in arrs:
            if not np.isin(a, (0, 1)).all():
                raise ValueError("bit strings may only contain 0 and 1")
        idx = np.zeros(n, dtype=np.int64)
        for a in arrs:
            idx = 2 * idx + a.astype(np.int64)
        k = len(arrs)
        counts = np.bincount(idx, minlength=2 ** k).reshape((2,) * k)
        counts = counts.copy()
        counts.setflags(write=False)
        return cls(counts=counts, n=n)

    def probabilities(self):
        return self.counts / self.n


def binary_entropy(p0):
    """Entropy in bits of a binary variable with P(0) = p0."""
    p0 = float(p0)
    if not 0.0 <= p0 <= 1.0:
        raise ValueError("probability must lie in [0, 1]")
    out = 0.0
    for p in (p0, 1.0 - p0):
        if p > 0.0:
            out -= p * math.log2(p)
    return out


def _entropy(probs):
    p = np.asarray(probs, dtype=float).ravel()
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum() + 0.0)  # +0.0 kills IEEE -0.0


def _clamped(x):
    return x if x > _CLAMP_TOL else max(x, 0.0)


def _measures_from_joint(p3):
    """(H_A, H_B, H_E, I_AB, I_AE, I_BE, I_AB|E) from a 2x2x2 distribution."""
    h_a = _entropy(p3.sum(axis=(1, 2)))
    h_b = _entropy(p3.sum(axis=(0, 2)))
    h_e = _entropy(p3.sum(axis=(0, 1)))
    h_ab = _entropy(p3.sum(axis=2))
    h_ae = _entropy(p3.sum(axis=1))
    h_be = _entropy(p3.sum(axis=0))
    h_abe = _entropy(p3)
    i_ab = _clamped(h_a + h_b - h_ab)
    i_ae = _clamped(h_a + h_e - h_ae)
    i_be = _clamped(h_b + h_e - h_be)
    cmi = _clamped(h_ae + h_be - h_e - h_abe)
    return h_a, h_b, h_e, i_ab, i_ae, i_be, cmi


def key_rate_bounds(i_ab, i_ae, i_be, i_ab_given_e,
                    h_a=float("nan"), h_b=float("nan"), h_e=float("nan"),
                    flavor="shannon"):
    """Assemble an InfoSummary from mutual informations.

    K_DR = I(A;B) - I(A;E) and K_RR = I(A;B) - I(B;E); the key rate is
    bracketed by max(K_DR, K_RR) from below and min(I(A;B), I(A;B|E))
    from above.
    """
    k_dr = i_ab - i_ae
    k_rr = i_ab - i_be
    return InfoSummary(
        flavor=flavor,
        h_a=h_a, h_b=h_b, h_e=h_e,
        i_ab=i_ab, i_ae=i_ae, i_be=i_be,
        i_ab_given_e=i_ab_given_e,
        k_dr=k_dr, k_rr=k_rr,
        lower_bound=max(k_dr, k_rr),
        upper_bound=min(i_ab, i_ab_given_e),
    )


def mutual_information_bits(a, b):
    """Plug-in I(A;B) in bits from two equal-length binary strings."""
    hist = JointHistogram.from_bits(a, b)
    p2 = hist.probabilities()
    h_a = _entropy(p2.sum(axis=1))
    h_b = _entropy(p2.sum(axis=0))
    return _clamped(h_a + h_b - _entropy(p2))


def conditional_mutual_information(a, b, e):
    """Plug-in I(A;B|E) = H(AE) + H(BE) - H(E) - H(ABE), in bits."""
    p3 = JointHistogram.from_bits(a, b, e).probabilities()
    h_ae = _entropy(p3.sum(axis=1))
    h_be = _entropy(p3.sum(axis=0))
    h_e = _entropy(p3.sum(axis=(0, 1)))
    h_abe = _entropy(p3)
    return _clamped(h_ae + h_be - h_e - h_abe)


def shannon_summary(a, b, e):
    """Full InfoSummary (shannon flavor) for three measured bit strings."""
    p3 = JointHistogram.from_bits(a, b, e).probabilities()
    h_a, h_b, h_e, i_ab, i_ae, i_be, cmi = _measures_from_joint(p3)
    return key_rate_bounds(i_ab, i_ae, i_be, cmi,
                           h_a=h_a, h_b=h_b, h_e=h_e, flavor="shannon")


def bootstrap_errors(a, b, e, n_resamples=100, seed=0):
    """One-standard-deviation errors for the MI and key-rate estimates.

    Nonparametric bootstrap: the 2x2x2 joint histogram is resampled
    multinomially (equivalent to resampling trials with replacement) and
    the plug-in statistics recomputed per resample.  Returns a dict with
    keys i_ab, i_ae, i_be, k_dr, k_rr.
    """
    hist = JointHistogram.from_bits(a, b, e)
    p = hist.probabilities().ravel()
    rng = np.random.default_rng(seed)
    stats = np.empty((n_resamples, 5))
    for r in range(n_resamples):
        res = rng.multinomial(hist.n, p).reshape(2, 2, 2) / hist.n
        _, _, _, i_ab, i_ae, i_be, _ = _measures_from_joint(res)
        stats[r] = (i_ab, i_ae, i_be, i_ab - i_ae, i_ab - i_be)
    sd = stats.std(axis=0, ddof=1)
    return {
        "i_ab": float(sd[0]),
        "i_ae": float(sd[1]),
        "i_be": float(sd[2]),
        "k_dr": float(sd[3]),
        "k_rr": float(sd[4]),
    }


@dataclass(frozen=True, eq=False)
class OffsetCorrelation:
    """Pearson r of two streams at integer offsets."""

    offsets: np.ndarray
    r: np.ndarray
    degenerate: np.ndarray  # True where a window had zero variance


def offset_correlation(a, b, max_offset):
    """Pearson correlation of a[i] against b[i+k] for |k| <= max_offset.

    Overhanging ends are truncated.  A window with zero variance in
    either stream gets r = 0 and its degenerate flag set.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) != len(b):
        raise ValueError("streams must have equal length")
    max_offset = int(max_offset)
    if max_offset < 0:
        raise ValueError("max_offset must be nonnegative")
    if len(a) <= max_offset:
        raise ValueError("streams shorter than the requested offset range")
    offsets = np.arange(-max_offset, max_offset + 1)
    rs = np.zeros(len(offsets))
    degen = np.zeros(len(offsets), dtype=bool)
    for j, k in enumerate(offsets):
        if k >= 0:
            x, y = a[: len(a) - k], b[k:]
        else:
            x, y = a[-k:], b[: len(b) + k]
        if x.std() == 0.0 or y.std() == 0.0:
            degen[j] = True
            continue
        xc = x - x.mean()
        yc = y - y.mean()
        rs[j] = float((xc * yc).sum() / np.sqrt((xc * xc).sum() * (yc * yc).sum()))
    for arr in (offsets, rs, degen):
        arr.setflags(write=False)
    return OffsetCorrelation(offsets=offsets, r=rs, degenerate=degen)


def population_count_correlation(nbar, eve_t2):
    """Closed-form Pearson r between Alice's and Bob's photon counts.

    Alice's count is a 50:50 binomial thinning of the source's geometric
    count, Bob's a further thinning by eve_t2, giving geometric marginals
    with means nbar/2 and eve_t2*nbar/2 and Cov = eve_t2 * nbar**2 / 4.
    Returns 0 when either marginal is degenerate.
    """
    nbar = float(nbar)
    eve_t2 = float(eve_t2)
    mean_a = nbar / 2.0
    mean_b = eve_t2 * nbar / 2.0
    var_a = mean_a * (mean_a + 1.0)
    var_b = mean_b * (mean_b + 1.0)
    if var_a == 0.0 or var_b == 0.0:
        return 0.0
    return float(eve_t2 * nbar ** 2 / 4.0 / np.sqrt(var_a * var_b))


def _geometric_pmf(nbar, top):
    n = np.arange(top + 1, dtype=float)
    if nbar == 0:
        p = np.zeros(top + 1)
        p[0] = 1.0
        return p
    return nbar ** n / (nbar + 1.0) ** (n + 1.0)


def _binomial_row(n, prob):
    k = np.arange(n + 1)
    comb = np.array([math.comb(n, int(i)) for i in k], dtype=float)
    return comb * prob ** k * (1.0 - prob) ** (n - k)


def population_median(pmf):
    """Smallest m with CDF(m) >= 1/2, for a pmf on 0..len-1."""
    c = np.cumsum(pmf)
    return int(np.argmax(c >= 0.5))


def exact_enumeration(nbar, eve_t2, truncation=None, tail_tol=1e-9):
    """Exact population InfoSummary for the protocol's median bits.

    Enumerates the joint distribution of (Alice, Bob, Eve) photon counts
    by summing the source's geometric law against the nested binomial
    splitters, thresholds each marginal at its population median with the
    same strict-greater convention the simulator uses, and returns the
    exact entropies and mutual informations.

    truncation bounds the total photon number; if omitted it is chosen
    so the discarded tail is below tail_tol.  A truncation whose tail
    exceeds tail_tol is refused, as is one beyond the enumeration cap.
    """
    nbar = float(nbar)
    eve_t2 = float(eve_t2)
    if nbar < 0:
        raise ValueError("mean photon number must be nonnegative")
    if not 0.0 <= eve_t2 <= 1.0:
        raise ValueError("power transmittance must lie in [0, 1]")

    ratio = nbar / (nbar + 1.0)
    if truncation is None:
        truncation = 0
        while ratio ** (truncation + 1) > tail_tol:
            truncation += 1
            if truncation > _ENUMERATION_CAP:
                raise ValueError(
                    "mean photon number too large to enumerate exactly"
                )
    truncation = int(truncation)
    if truncation > _ENUMERATION_CAP:
        raise ValueError("truncation beyond the enumeration cap")
    if ratio ** (truncation + 1) > tail_tol:
        raise ValueError(
            "truncation %d leaves a tail above %g" % (truncation, tail_tol)
        )

    top = truncation
    p_total = _geometric_pmf(nbar, top)
    joint = np.zeros((top + 1, top + 1, top + 1))  # (a, b, e)
    for n in range(top + 1):
        row_a = _binomial_row(n, 0.5)
        for a in range(n + 1):
            rem = n - a
            row_b = _binomial_row(rem, eve_t2)
            for b in range(rem + 1):
                joint[a, b, rem - b] += p_total[n] * row_a[a] * row_b[b]
    joint /= joint.sum()  # renormalize the discarded tail away

    med_a = population_median(joint.sum(axis=(1, 2)))
    med_b = population_median(joint.sum(axis=(0, 2)))
    med_e = population_median(joint.sum(axis=(0, 1)))
    counts = np.arange(top + 1)
    bit_a = (counts > med_a).astype(int)
    bit_b = (counts > med_b).astype(int)
    bit_e = (counts > med_e).astype(int)
    p3 = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                p3[i, j, k] = joint[np.ix_(bit_a == i, bit_b == j, bit_e == k)].sum()

    h_a, h_b, h_e, i_ab, i_ae, i_be, cmi = _measures_from_joint(p3)
    return key_rate_bounds(i_ab, i_ae, i_be, cmi,
                           h_a=h_a, h_b=h_b, h_e=h_e, flavor="shannon")
