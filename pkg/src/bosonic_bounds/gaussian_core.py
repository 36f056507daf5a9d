"""Exact small-matrix calculus for Gaussian states of bosonic modes.

Conventions
-----------
* Covariance matrices are scaled so that the vacuum covariance is the
  identity; a single-mode thermal state with mean photon number N has
  covariance (2N+1) I_2.
* Quadratures are block ordered, x = (q_1..q_m, p_1..p_m), with
  symplectic form Omega = [[0, I_m], [-I_m, 0]].  A permutation adapter to
  the interleaved ordering (q_1, p_1, q_2, p_2, ...) used by much CV
  software is provided by :func:`interleave_permutation`.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import sqrtm

from .errors import (
    DomainError,
    InvalidChannelError,
    InvalidStateError,
    SingularMatrixError,
)

LN2 = float(np.log(2.0))

# Tolerances (absolute unless noted)
COV_SYMMETRY_TOL = 1e-12      # required symmetry of covariance matrices
NU_FLOOR = 1e-9               # allowed dip of symplectic eigenvalues below 1
SYMPLECTIC_TOL = 1e-10        # |S Omega S^T - Omega| for symplectic matrices
PSD_FLOOR = 1e-8              # eigenvalue floor for the channel CPTP check
_G_SERIES_CUTOFF = 1e-8       # switch g(x) to its small-x series below this
_PURITY_DET_TOL = 1e-8        # det(V) - 1 below this counts as a pure state


def omega(m: int) -> np.ndarray:
    """Symplectic form for m modes in block ordering."""
    O = np.zeros((2 * m, 2 * m))
    O[:m, m:] = np.eye(m)
    O[m:, :m] = -np.eye(m)
    return O


def interleave_permutation(m: int) -> np.ndarray:
    """Permutation matrix P mapping block ordering to interleaved ordering.

    If x_block = (q_1..q_m, p_1..p_m) then P @ x_block =
    (q_1, p_1, ..., q_m, p_m).  Covariance matrices transform as
    V_inter = P V_block P^T, and likewise for the symplectic form.
    """
    P = np.zeros((2 * m, 2 * m))
    for j in range(m):
        P[2 * j, j] = 1.0
        P[2 * j + 1, m + j] = 1.0
    return P


# ---------------------------------------------------------------------------
# Entropy functions
# ---------------------------------------------------------------------------

def _g_nats(x):
    """(x+1) ln(x+1) - x ln x elementwise; second-order series below cutoff.

    Input must already be clamped to x >= 0.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    big = x >= _G_SERIES_CUTOFF
    xb = x[big]
    out[big] = (xb + 1.0) * np.log1p(xb) - xb * np.log(xb)
    small = (~big) & (x > 0.0)
    xs = x[small]
    out[small] = xs - xs * np.log(xs) + 0.5 * xs * xs
    return out


def g_entropy(x):
    """Entropy in bits of a thermal state with mean photon number x.

    g(x) = (x+1) log2(x+1) - x log2 x, with g(0) = 0 by continuity.
    Accepts scalars or arrays; values in [-1e-12, 0] are clamped to 0.

    Raises
    ------
    DomainError
        If any element is below -1e-12.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1e-12):
        raise DomainError(f"g_entropy requires x >= 0, got {x!r}")
    clamped = np.maximum(arr, 0.0)
    out = _g_nats(clamped) / LN2
    return float(out) if arr.ndim == 0 else out


def binary_entropy(x):
    """Binary entropy h2(x) in bits for probabilities x in [0, 1].

    Endpoint values return 0.  Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"binary_entropy requires x in [0, 1], got {x!r}")
    out = np.zeros_like(np.atleast_1d(arr))
    flat = np.atleast_1d(arr)
    inner = (flat > 0.0) & (flat < 1.0)
    xi = flat[inner]
    out[inner] = -(xi * np.log(xi) + (1.0 - xi) * np.log1p(-xi)) / LN2
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

def _as_readonly(a: np.ndarray) -> np.ndarray:
    b = np.array(a, dtype=float, copy=True)
    b.flags.writeable = False
    return b


@dataclass(frozen=True)
class GaussianState:
    """A Gaussian state of `modes` bosonic modes.

    Attributes
    ----------
    modes : int
        Number of modes m.
    mean : ndarray, shape (2m,)
        Mean vector in block quadrature ordering.
    cov : ndarray, shape (2m, 2m)
        Covariance matrix, vacuum = identity.
    """

    modes: int
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        if self.modes < 1:
            raise InvalidStateError("mode count must be a positive integer")
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        n = 2 * self.modes
        if mean.shape != (n,):
            raise InvalidStateError(f"mean must have shape ({n},), got {mean.shape}")
        if cov.shape != (n, n):
            raise InvalidStateError(f"cov must have shape ({n},{n}), got {cov.shape}")
        if not np.all(np.isfinite(cov)) or not np.all(np.isfinite(mean)):
            raise InvalidStateError("state data must be finite")
        if np.max(np.abs(cov - cov.T)) > COV_SYMMETRY_TOL:
            raise InvalidStateError("covariance matrix is not symmetric to 1e-12")
        cov = 0.5 * (cov + cov.T)
        nus = _symplectic_eigs(cov)
        # eigensolve roundoff grows with the covariance scale, so the 1e-9
        # floor is applied relative to the largest entry
        floor = 1.0 - NU_FLOOR * max(1.0, float(np.max(np.abs(cov))))
        if np.min(nus) < floor:
            raise InvalidStateError(
                f"uncertainty principle violated: min symplectic eigenvalue "
                f"{np.min(nus):.12g} < {floor:.12g}"
            )
        object.__setattr__(self, "mean", _as_readonly(mean))
        object.__setattr__(self, "cov", _as_readonly(cov))


@dataclass(frozen=True)
class SymplecticMatrix:
    """A real 2m x 2m matrix S with S Omega S^T = Omega."""

    m: int
    S: np.ndarray

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        n = 2 * self.m
        if S.shape != (n, n):
            raise DomainError(f"S must have shape ({n},{n}), got {S.shape}")
        O = omega(self.m)
        if np.max(np.abs(S @ O @ S.T - O)) > SYMPLECTIC_TOL:
            raise DomainError("matrix is not symplectic to 1e-10")
        object.__setattr__(self, "S", _as_readonly(S))


@dataclass(frozen=True)
class EntropySpectrum:
    """Sorted symplectic eigenvalues of a state, each >= 1 - 1e-9."""

    nus: tuple

    def __post_init__(self):
        nus = tuple(float(v) for v in self.nus)
        if any(v < 1.0 - NU_FLOOR for v in nus):
            raise InvalidStateError("symplectic eigenvalue below 1 - 1e-9")
        if list(nus) != sorted(nus):
            raise InvalidStateError("spectrum must be sorted ascending")
        object.__setattr__(self, "nus", nus)


# ---------------------------------------------------------------------------
# State constructors
# ---------------------------------------------------------------------------

def vacuum_state(modes: int = 1) -> GaussianState:
    """Vacuum of the given number of modes."""
    return GaussianState(modes, np.zeros(2 * modes), np.eye(2 * modes))


def thermal_state(nbar: float, modes: int = 1) -> GaussianState:
    """Product of `modes` thermal states, each with mean photon number nbar."""
    if nbar < 0:
        raise DomainError("thermal mean photon number must be >= 0")
    return GaussianState(modes, np.zeros(2 * modes), (2.0 * nbar + 1.0) * np.eye(2 * modes))


def tms_qblocks(n: float):
    """(q-block, p-block) of the two-mode squeezed vacuum with parameter n."""
    if n < 0:
        raise DomainError("TMS photon number must be >= 0")
    d = 2.0 * n + 1.0
    c = 2.0 * np.sqrt(n * (n + 1.0))
    q = np.array([[d, c], [c, d]])
    p = np.array([[d, -c], [-c, d]])
    return q, p


def tms_state(n: float) -> GaussianState:
    """Two-mode squeezed vacuum state with mean photon number n per arm.

    Purifies the single-mode thermal state theta(n); the reduced state of
    either mode is thermal with mean photon number n.
    """
    q, p = tms_qblocks(n)
    cov = np.zeros((4, 4))
    cov[:2, :2] = q
    cov[2:, 2:] = p
    return GaussianState(2, np.zeros(4), cov)


# ---------------------------------------------------------------------------
# Spectra and entropies
# ---------------------------------------------------------------------------

def _symplectic_eigs(cov: np.ndarray) -> np.ndarray:
    """Ascending symplectic eigenvalues of a single covariance matrix."""
    m = cov.shape[0] // 2
    try:
        ev = np.linalg.eigvals(1j * cov @ omega(m))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SingularMatrixError("symplectic eigensolve failed") from exc
    mods = np.sort(np.abs(ev))
    return mods[::2]


def _symplectic_eigs_stack(covs: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues for a stack of covariance matrices.

    covs has shape (..., 2m, 2m); returns shape (..., m), ascending.
    """
    m = covs.shape[-1] // 2
    ev = np.linalg.eigvals(1j * covs @ omega(m))
    mods = np.sort(np.abs(ev), axis=-1)
    return mods[..., ::2]


def symplectic_eigenvalues(state: GaussianState) -> EntropySpectrum:
    """Symplectic spectrum of a state, from diagonalizing i V Omega."""
    return EntropySpectrum(tuple(_symplectic_eigs(state.cov)))


def _entropy_from_cov(cov: np.ndarray) -> float:
    nus = _symplectic_eigs(cov)
    return float(np.sum(_g_nats(np.maximum((nus - 1.0) / 2.0, 0.0))) / LN2)


def gaussian_entropy(state: GaussianState) -> float:
    """Von Neumann entropy in bits: sum of g((nu_j - 1)/2)."""
    return _entropy_from_cov(state.cov)


def mean_photon_number(state: GaussianState) -> float:
    """Total mean photon number over all modes."""
    m = state.modes
    return float((np.trace(state.cov) - 2 * m) / 4.0 + 0.5 * np.dot(state.mean, state.mean))


def reduce_state(state: GaussianState, modes) -> GaussianState:
    """Marginal state on the given mode indices (order preserved)."""
    modes = tuple(modes)
    m = state.modes
    if any(k < 0 or k >= m for k in modes):
        raise DomainError(f"mode indices out of range for {m}-mode state")
    idx = list(modes) + [m + k for k in modes]
    return GaussianState(len(modes), state.mean[idx], state.cov[np.ix_(idx, idx)])


# ---------------------------------------------------------------------------
# Fidelity
# ---------------------------------------------------------------------------

def _is_pure_cov(cov: np.ndarray) -> bool:
    # prod(nu_j)^2 = det V, and nu_j >= 1, so purity <=> det V = 1
    return abs(np.linalg.det(cov) - 1.0) <= _PURITY_DET_TOL


def _mean_factor(V1, V2, mu1, mu2) -> float:
    d = mu2 - mu1
    if not np.any(d):
        return 1.0
    try:
        sol = np.linalg.solve(V1 + V2, d)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("V1 + V2 is singular") from exc
    return float(np.exp(-d @ sol))


def two_mode_fidelity(a: GaussianState, b: GaussianState) -> float:
    """Uhlmann fidelity F = ||sqrt(rho) sqrt(sigma)||_1^2 of two-mode states.

    Uses the exact Gaussian overlap when either state is pure (where the
    overlap equals the fidelity) and the two-mode determinant closed form
    otherwise.  Symmetric in its arguments; returns a value in [0, 1].

    Raises
    ------
    DomainError
        If either state does not have exactly two modes.
    SingularMatrixError
        If an intermediate determinant is non-finite.
    """
    if a.modes != 2 or b.modes != 2:
        raise DomainError("two_mode_fidelity requires two-mode states")
    V1, V2 = a.cov, b.cov
    mf = _mean_factor(V1, V2, a.mean, b.mean)
    if _is_pure_cov(V1) or _is_pure_cov(V2):
        det = np.linalg.det(V1 + V2)
        if not np.isfinite(det) or det <= 0:
            raise SingularMatrixError("non-finite determinant in fidelity")
        return min(1.0, 4.0 / np.sqrt(det) * mf)
    Om = omega(2)
    delta = np.linalg.det(V1 + V2) / 16.0
    gamma = np.real(np.linalg.det(Om @ V1 @ Om @ V2 - np.eye(4))) / 16.0
    lam = np.real(np.linalg.det(V1 + 1j * Om) * np.linalg.det(V2 + 1j * Om)) / 16.0
    if not (np.isfinite(delta) and np.isfinite(gamma) and np.isfinite(lam)):
        raise SingularMatrixError("non-finite determinant in fidelity")
    sg = np.sqrt(max(gamma, 0.0))
    sl = np.sqrt(max(lam, 0.0))
    denom = sg + sl - np.sqrt(max((sg + sl) ** 2 - delta, 0.0))
    if denom <= 0 or not np.isfinite(denom):
        raise SingularMatrixError("degenerate denominator in fidelity")
    return min(1.0, mf / denom)


def multimode_fidelity(a: GaussianState, b: GaussianState) -> float:
    """General-m Gaussian fidelity (squared convention); slower than the
    two-mode closed form but valid for any mode count."""
    if a.modes != b.modes:
        raise DomainError("states must have equal mode counts")
    m = a.modes
    V1, V2 = a.cov, b.cov
    mf = _mean_factor(V1, V2, a.mean, b.mean)
    if _is_pure_cov(V1) or _is_pure_cov(V2):
        return min(1.0, 2.0 ** m / np.sqrt(np.linalg.det(V1 + V2)) * mf)
    Om = omega(m)
    try:
        vsum_inv = np.linalg.inv(V1 + V2)
        vaux = Om.T @ vsum_inv @ (Om + V2 @ Om @ V1)
        inv = np.linalg.inv(vaux @ Om)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("singular matrix in fidelity") from exc
    root = sqrtm(np.eye(2 * m) + inv @ inv)
    ftot = np.linalg.det((root + np.eye(2 * m)) @ vaux)
    val = np.real(ftot / np.linalg.det((V1 + V2) / 2.0))
    if not np.isfinite(val) or val < 0:
        raise SingularMatrixError("non-finite determinant in fidelity")
    return min(1.0, float(np.sqrt(val)) * mf)


# ---------------------------------------------------------------------------
# Channel action and symplectic building blocks
# ---------------------------------------------------------------------------

def embed_matrix(M: np.ndarray, modes, total_modes: int) -> np.ndarray:
    """Embed a 2k x 2k block-ordered matrix acting on `modes` into the
    2m x 2m identity for m = total_modes."""
    modes = tuple(modes)
    k = len(modes)
    if M.shape != (2 * k, 2 * k):
        raise DomainError(f"matrix shape {M.shape} does not match {k} modes")
    full = np.eye(2 * total_modes)
    idx = [*modes, *(total_modes + j for j in modes)]
    for i, gi in enumerate(idx):
        full[gi, :] = 0.0
        for j, gj in enumerate(idx):
            full[gi, gj] = M[i, j]
    return full


def apply_gaussian_channel(X, Y, d, state: GaussianState, modes=None) -> GaussianState:
    """Apply a Gaussian channel (X, Y, d): mean -> X mean + d, V -> X V X^T + Y.

    Parameters
    ----------
    X : ndarray
        2l -> 2k quadrature matrix.  With `modes=None` it must map all
        state quadratures (l = state.modes); with a `modes` tuple it must be
        square on those k modes and acts as the identity elsewhere.
    Y : ndarray
        Additive noise matrix, 2k x 2k positive semidefinite.
    d : ndarray or None
        Displacement added to the mean (zeros if None).
    state : GaussianState
    modes : tuple of int, optional
        Subset of modes the channel acts on.

    Raises
    ------
    InvalidChannelError
        If Y + i(Omega - X Omega X^T) has an eigenvalue below -1e-8.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    m_out2, m_in2 = X.shape
    if m_out2 % 2 or m_in2 % 2:
        raise DomainError("X must have even dimensions")
    m_out, m_in = m_out2 // 2, m_in2 // 2
    if Y.shape != (m_out2, m_out2):
        raise DomainError("Y shape does not match X output dimension")
    cond = Y + 1j * omega(m_out) - 1j * X @ omega(m_in) @ X.T
    lo = float(np.min(np.linalg.eigvalsh(cond)))
    if lo < -PSD_FLOOR:
        raise InvalidChannelError(
            f"channel PSD condition fails: min eigenvalue {lo:.3e} < -{PSD_FLOOR:g}"
        )
    if d is None:
        d = np.zeros(m_out2)
    d = np.asarray(d, dtype=float)

    if modes is None:
        if m_in != state.modes:
            raise DomainError("X input dimension does not match the state")
        new_mean = X @ state.mean + d
        new_cov = X @ state.cov @ X.T + Y
        return GaussianState(m_out, new_mean, new_cov)

    modes = tuple(modes)
    if m_in != m_out or m_in != len(modes):
        raise DomainError("subset application requires square X on the given modes")
    total = state.modes
    Xf = embed_matrix(X, modes, total)
    Yf = np.zeros((2 * total, 2 * total))
    idx = [*modes, *(total + j for j in modes)]
    Yf[np.ix_(idx, idx)] = Y
    df = np.zeros(2 * total)
    df[idx] = d
    return GaussianState(total, Xf @ state.mean + df, Xf @ state.cov @ Xf.T + Yf)


def beamsplitter_symplectic(kind: str, transmissivity: float) -> SymplecticMatrix:
    """4x4 symplectic matrix of a two-mode beamsplitter.

    kind "B" uses the (+,-) sign convention
        b  =  sqrt(t) a - sqrt(1-t) e,
        e' =  sqrt(1-t) a + sqrt(t) e,
    while kind "Bprime" uses
        c2 =  sqrt(t) c1 + sqrt(1-t) d1,
        d2 = -sqrt(1-t) c1 + sqrt(t) d1.
    The phase difference between the two is essential for the degrading
    channel construction.
    """
    t = float(transmissivity)
    if not 0.0 <= t <= 1.0:
        raise DomainError("transmissivity must lie in [0, 1]")
    rt, rr = np.sqrt(t), np.sqrt(1.0 - t)
    if kind == "B":
        A = np.array([[rt, -rr], [rr, rt]])
    elif kind == "Bprime":
        A = np.array([[rt, rr], [-rr, rt]])
    else:
        raise DomainError(f"unknown beamsplitter kind {kind!r}")
    S = np.zeros((4, 4))
    S[:2, :2] = A
    S[2:, 2:] = A
    return SymplecticMatrix(2, S)


def two_mode_squeezer_symplectic(gain: float) -> SymplecticMatrix:
    """4x4 symplectic matrix of a two-mode squeezer with gain G >= 1.

    Implements b = sqrt(G) a + sqrt(G-1) e^dag on mode pairs: the q-block is
    [[sqrt(G), sqrt(G-1)], [sqrt(G-1), sqrt(G)]] and the p-block carries the
    opposite off-diagonal sign.
    """
    G = float(gain)
    if G < 1.0:
        raise DomainError("squeezer gain must be >= 1")
    s, r = np.sqrt(G), np.sqrt(G - 1.0)
    S = np.zeros((4, 4))
    S[:2, :2] = [[s, r], [r, s]]
    S[2:, 2:] = [[s, -r], [-r, s]]
    return SymplecticMatrix(2, S)
