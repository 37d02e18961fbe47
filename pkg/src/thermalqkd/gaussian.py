"""Covariance-matrix machinery for zero-mean Gaussian states.

Conventions used throughout:

* quadrature ordering (X1, P1, X2, P2, ..., XN, PN), so mode k owns
  rows/columns 2k and 2k+1,
* vacuum variance 1, a thermal mode with mean photon number nbar has
  quadrature variance V = 2*nbar + 1,
* all states are zero mean (thermal and vacuum inputs are zero mean and
  beam splitters preserve that), so no mean vector is stored.

Entropies are in bits.  The symplectic spectrum is computed with a general
dense eigensolver; the single-mode and two-mode determinant formulas are
provided as independent cross-checks only, since four-mode reductions are
needed for mutual informations.
"""

from dataclasses import dataclass

import numpy as np

# A state is accepted as physical when every symplectic eigenvalue is at
# least 1 - PHYSICALITY_TOL; eigenvalues within the tolerance of 1 are
# treated as exactly pure when summing entropies.
PHYSICALITY_TOL = 1e-9
_SYMMETRY_ATOL = 1e-8
_BS_NORM_TOL = 1e-12


class UnphysicalStateError(ValueError):
    """Raised when a covariance matrix violates the uncertainty bound."""


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def _symmetrized(mat):
    # (M + M.T)/2 is exactly symmetric entry by entry in IEEE arithmetic
    return (mat + mat.T) / 2.0


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """2N x 2N quadrature covariance matrix in (X1,P1,...,XN,PN) ordering."""

    entries: np.ndarray
    n_modes: int

    @classmethod
    def from_array(cls, arr):
        """Validate and wrap a raw matrix, symmetrizing exactly.

        Rejects non-square, odd-dimensioned, non-finite or visibly
        asymmetric input and non-positive diagonals.  Physicality (the
        symplectic uncertainty bound) is checked lazily, when entropies
        or spectra are requested.
        """
        mat = np.asarray(arr, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("covariance matrix must be square")
        if mat.shape[0] % 2 != 0 or mat.shape[0] == 0:
            raise ValueError("dimension must be 2*n_modes for n_modes >= 1")
        if not np.all(np.isfinite(mat)):
            raise ValueError("covariance matrix entries must be finite")
        scale = max(1.0, float(np.abs(mat).max()))
        if np.abs(mat - mat.T).max() > _SYMMETRY_ATOL * scale:
            raise ValueError("covariance matrix must be symmetric")
        mat = _symmetrized(mat)
        if np.any(np.diag(mat) <= 0):
            raise ValueError("diagonal variances must be strictly positive")
        return cls(entries=_frozen(mat), n_modes=mat.shape[0] // 2)


@dataclass(frozen=True, eq=False)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a state, sorted descending."""

    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class ModePartition:
    """Strictly increasing mode indices selecting a subsystem."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) == 0:
            raise ValueError("partition must select at least one mode")
        if any(i < 0 for i in idx):
            raise ValueError("mode indices must be nonnegative")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("mode indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Two-mode splitter with amplitude transmittance tau and reflectance mu.

    tau**2 + mu**2 must equal 1.  mu may be negative: the splitter
    (tau, -mu) is the inverse of (tau, mu), which the tests rely on.
    """

    tau: float
    mu: float

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")
        if not -1.0 <= self.mu <= 1.0:
            raise ValueError("mu must lie in [-1, 1]")
        if abs(self.tau ** 2 + self.mu ** 2 - 1.0) > _BS_NORM_TOL:
            raise ValueError("tau**2 + mu**2 must equal 1")

    @classmethod
    def fifty_fifty(cls):
        r = 1.0 / np.sqrt(2.0)
        return cls(tau=r, mu=r)

    @classmethod
    def from_power_transmittance(cls, t2):
        """Build from the power transmittance tau**2 in [0, 1]."""
        if not 0.0 <= t2 <= 1.0:
            raise ValueError("power transmittance must lie in [0, 1]")
        return cls(tau=float(np.sqrt(t2)), mu=float(np.sqrt(1.0 - t2)))

    def inverse(self):
        return BeamSplitterSpec(tau=self.tau, mu=-self.mu)


def thermal_covariance(nbar):
    """Single thermal mode, diag(V, V) with V = 2*nbar + 1."""
    if nbar < 0:
        raise ValueError("mean photon number must be nonnegative")
    v = 2.0 * float(nbar) + 1.0
    return CovarianceMatrix(entries=_frozen(np.diag([v, v])), n_modes=1)


def vacuum_covariance(n_modes=1):
    if n_modes < 1:
        raise ValueError("need at least one mode")
    return CovarianceMatrix(entries=_frozen(np.eye(2 * n_modes)), n_modes=n_modes)


def append_vacuum(gamma, k):
    """Extend a state with k vacuum modes, block diagonally."""
    if k < 1:
        raise ValueError("must append at least one vacuum mode")
    n = gamma.n_modes + int(k)
    out = np.eye(2 * n)
    out[: 2 * gamma.n_modes, : 2 * gamma.n_modes] = gamma.entries
    return CovarianceMatrix(entries=_frozen(out), n_modes=n)


def _embedded_splitter(n_modes, mode_a, mode_b, bs):
    s = np.eye(2 * n_modes)
    t, m = bs.tau, bs.mu
    for q in range(2):  # X then P rows of each mode
        a, b = 2 * mode_a + q, 2 * mode_b + q
        s[a, a] = t
        s[a, b] = m
        s[b, a] = -m
        s[b, b] = t
    return s


def apply_beam_splitter(gamma, mode_a, mode_b, bs):
    """Apply the splitter S on (mode_a, mode_b); returns S gamma S^T.

    The signal convention puts mode_a on the transmitted row: the new
    mode_a quadratures are tau*old_a + mu*old_b and the new mode_b
    quadratures are -mu*old_a + tau*old_b.
    """
    n = gamma.n_modes
    if not (0 <= mode_a < n and 0 <= mode_b < n):
        raise IndexError("mode index out of range")
    if mode_a == mode_b:
        raise IndexError("beam splitter needs two distinct modes")
    s = _embedded_splitter(n, mode_a, mode_b, bs)
    out = _symmetrized(s @ gamma.entries @ s.T)
    return CovarianceMatrix(entries=_frozen(out), n_modes=n)


def reduce(gamma, part):
    """Principal submatrix on the partition's modes (their X and P rows)."""
    if max(part.indices) >= gamma.n_modes:
        raise IndexError("partition selects a mode outside the state")
    rows = np.array([2 * i + q for i in part.indices for q in range(2)])
    sub = gamma.entries[np.ix_(rows, rows)]
    return CovarianceMatrix(entries=_frozen(sub), n_modes=len(part))


def _omega(n_modes):
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_modes), j)


def symplectic_spectrum(gamma):
    """Symplectic eigenvalues: moduli of the eigenvalues of Omega @ gamma.

    The eigenvalues of Omega @ gamma come in pairs +-i*lambda; the 2N
    moduli are sorted descending and adjacent pairs averaged, giving N
    values, descending.
    """
    g = gamma.entries
    if np.abs(g - g.T).max() > _SYMMETRY_ATOL * max(1.0, float(np.abs(g).max())):
        raise ValueError("covariance matrix must be symmetric")
    w = np.linalg.eigvals(_omega(gamma.n_modes) @ g)
    mods = np.sort(np.abs(w))[::-1]
    vals = 0.5 * (mods[0::2] + mods[1::2])
    return SymplecticSpectrum(values=_frozen(vals))


def single_mode_symplectic_value(gamma):
    """Closed form for one mode: lambda = sqrt(det gamma).  Cross-check only."""
    if gamma.n_modes != 1:
        raise ValueError("single-mode formula needs a one-mode state")
    return float(np.sqrt(np.linalg.det(gamma.entries)))

def two_mode_symplectic_values(gamma):
    """Closed form for two modes, from the block determinants.

    Uses Delta = det A + det B + 2 det C (the standard sign on the cross
    term; see the README note on conventions).  Cross-check only.
    """
    if gamma.n_modes != 2:
        raise ValueError("two-mode formula needs a two-mode state")
    g = gamma.entries
    det = np.linalg.det
    delta = det(g[0:2, 0:2]) + det(g[2:4, 2:4]) + 2.0 * det(g[0:2, 2:4])
    disc = max(delta ** 2 - 4.0 * det(g), 0.0)
    hi = np.sqrt((delta + np.sqrt(disc)) / 2.0)
    lo = np.sqrt(max((delta - np.sqrt(disc)) / 2.0, 0.0))
    return _frozen([hi, lo])


def bosonic_entropy(x):
    """G(x) = (x+1) log2(x+1) - x log2 x, with G(0) = 0.  Vectorized."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bosonic entropy needs nonnegative arguments")
    pos = x > 0
    out = np.zeros_like(x)
    xp = x[pos]
    out[pos] = (xp + 1.0) * np.log2(xp + 1.0) - xp * np.log2(xp)
    if out.ndim == 0:
        return float(out)
    return out


def von_neumann_entropy(gamma, tol=PHYSICALITY_TOL):
    """Entropy in bits, sum of G((lambda_i - 1)/2) over the spectrum.

    Eigenvalues below 1 - tol raise UnphysicalStateError; eigenvalues
    within tol of 1 contribute exactly 0 so that vacuum modes carrying
    eigensolver rounding noise do not pollute small entropies.
    """
    lam = symplectic_spectrum(gamma).values
    if np.any(lam < 1.0 - tol):
        raise UnphysicalStateError(
            "symplectic eigenvalue %.12g below 1" % float(lam.min())
        )
    x = (np.maximum(lam, 1.0) - 1.0) / 2.0
    contrib = np.where(np.abs(lam - 1.0) <= tol, 0.0, bosonic_entropy(x))
    return float(np.sum(contrib))


def mutual_information(gamma, part_a, part_b):
    """I(A;B) = S(A) + S(B) - S(AB) over disjoint mode partitions, in bits."""
    overlap = set(part_a.indices) & set(part_b.indices)
    if overlap:
        raise ValueError("partitions overlap on modes %s" % sorted(overlap))
    joint = ModePartition(tuple(sorted(part_a.indices + part_b.indices)))
    s_a = von_neumann_entropy(reduce(gamma, part_a))
    s_b = von_neumann_entropy(reduce(gamma, part_b))
    s_ab = von_neumann_entropy(reduce(gamma, joint))
    return max(s_a + s_b - s_ab, 0.0)
