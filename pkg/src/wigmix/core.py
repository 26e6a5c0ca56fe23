"""Gaussian-mixture state representation and phase-space primitives.

A state is represented by its Wigner function

    W(xi) = sum_m c_m G_{mu_m, Sigma_m}(xi),

where the weights ``c_m``, means ``mu_m`` and covariances ``Sigma_m`` may all
be complex.  Covariances are complex *symmetric* (not Hermitian) and must have
positive-definite real part so each term stays bounded.  For a physical state
the weights sum to one and the total Wigner function is real on real phase
space even though individual terms are not.

Covariance matrices are stored in a pool: many families of interest (grid and
cat states in particular) share a single covariance across all peaks, so each
peak stores an index into the pool rather than its own matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .conventions import DEFAULT_HBAR, mode_indices, validate_phase_point
from .errors import EmptyMixture, InvalidState, SingularCovariance

__all__ = [
    "GaussianPeak",
    "GaussianMixtureState",
    "eval_gaussian",
    "gaussian_overlap_integral",
    "wigner",
    "tensor",
    "partial_trace",
    "prune",
    "state_from_peaks",
    "shared_cov_state",
    "state_to_dict",
    "state_from_dict",
]

NORMALIZATION_TOL = 1e-10
REALITY_TOL = 1e-10

#: Relative magnitude below which a peak weight counts as dust.
DUST_TOL = 1e-12


class GaussianPeak(NamedTuple):
    """One term of the mixture: complex weight and mean plus a pool index."""

    weight: complex
    mean: np.ndarray
    cov_index: int


def _dedup_pool(covs: np.ndarray, cov_index: np.ndarray):
    """Collapse bitwise-identical covariance matrices into single pool entries."""
    seen: dict[bytes, int] = {}
    remap = np.empty(len(covs), dtype=np.intp)
    kept = []
    for i, cov in enumerate(covs):
        key = cov.tobytes()
        if key in seen:
            remap[i] = seen[key]
        else:
            seen[key] = len(kept)
            remap[i] = len(kept)
            kept.append(cov)
    return np.array(kept), remap[cov_index]


def _compact_pool(covs: np.ndarray, cov_index: np.ndarray):
    """Drop pool entries no peak references."""
    used = np.unique(cov_index)
    remap = np.full(len(covs), -1, dtype=np.intp)
    remap[used] = np.arange(len(used))
    return covs[used], remap[cov_index]


@dataclass(frozen=True)
class GaussianMixtureState:
    """Immutable N-mode state as a complex-weighted mixture of Gaussians.

    Attributes:
        num_modes: number of bosonic modes N
        weights: complex array of shape (M,), one weight per peak
        means: complex array of shape (M, 2N) in (q1, p1, ...) ordering
        covs: covariance pool, complex array of shape (K, 2N, 2N)
        cov_index: integer array of shape (M,) mapping peaks to pool entries
        hbar: value of hbar carried by all formulas (default 2)
        dropped_mass: total |weight| removed by pruning since construction
    """

    num_modes: int
    weights: np.ndarray
    means: np.ndarray
    covs: np.ndarray
    cov_index: np.ndarray
    hbar: float = DEFAULT_HBAR
    dropped_mass: float = 0.0

    def __post_init__(self):
        for arr in (self.weights, self.means, self.covs, self.cov_index):
            arr.flags.writeable = False

    @property
    def num_peaks(self) -> int:
        return len(self.weights)

    @property
    def peaks(self) -> list[GaussianPeak]:
        """Per-peak view; intended for inspection, not bulk numerics."""
        return [
            GaussianPeak(complex(w), mu, int(k))
            for w, mu, k in zip(self.weights, self.means, self.cov_index)
        ]

    def cov_of_peak(self, m: int) -> np.ndarray:
        return self.covs[self.cov_index[m]]

    def weight_sum(self) -> complex:
        return exact_weight_sum(self.weights)


def exact_weight_sum(weights: np.ndarray) -> complex:
    """Exactly-rounded weight total; robust for ill-conditioned weight vectors."""
    return complex(math.fsum(weights.real), math.fsum(weights.imag))


def state_from_peaks(
    weights,
    means,
    covs,
    cov_index=None,
    hbar: float = DEFAULT_HBAR,
    dropped_mass: float = 0.0,
) -> GaussianMixtureState:
    """Build a state from raw arrays, pooling duplicate covariances.

    ``covs`` may be per-peak (shape ``(M, 2N, 2N)``, with ``cov_index=None``) or
    an explicit pool accompanied by ``cov_index``.
    """
    weights = np.atleast_1d(np.asarray(weights, dtype=complex))
    means = np.atleast_2d(np.asarray(means, dtype=complex))
    covs = np.asarray(covs, dtype=complex)
    if covs.ndim == 2:
        covs = covs[None]
    if cov_index is None:
        if len(covs) == 1:
            cov_index = np.zeros(len(weights), dtype=np.intp)
        else:
            if len(covs) != len(weights):
                raise ValueError("per-peak covariances must match the number of peaks")
            cov_index = np.arange(len(weights), dtype=np.intp)
    else:
        cov_index = np.asarray(cov_index, dtype=np.intp)
    if means.shape[0] != weights.shape[0]:
        raise ValueError("means and weights disagree on the number of peaks")
    if means.shape[1] % 2 or means.shape[1] != covs.shape[1]:
        raise ValueError("mean/covariance dimensions are inconsistent")
    covs, cov_index = _dedup_pool(covs, cov_index)
    return GaussianMixtureState(
        num_modes=means.shape[1] // 2,
        weights=weights,
        means=means,
        covs=covs,
        cov_index=cov_index,
        hbar=hbar,
        dropped_mass=dropped_mass,
    )


def shared_cov_state(weights, means, cov, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Fast path for families whose peaks all share one covariance matrix."""
    weights = np.atleast_1d(np.asarray(weights, dtype=complex))
    return state_from_peaks(weights, means, np.asarray(cov, dtype=complex)[None],
                            cov_index=np.zeros(len(weights), dtype=np.intp), hbar=hbar)


# ---------------------------------------------------------------------------
# Gaussian evaluation
# ---------------------------------------------------------------------------


def ldl_pivots(cov: np.ndarray) -> np.ndarray:
    """Pivots of the unpivoted LDL^T factorization of a complex symmetric matrix.

    For Re(cov) positive-definite every leading Schur complement also has a
    positive-definite real part, so all pivots lie in the right half plane and
    the principal square root of each is branch-cut free.
    """
    a = np.array(cov, dtype=complex)
    n = a.shape[0]
    d = np.empty(n, dtype=complex)
    for i in range(n):
        d[i] = a[i, i]
        if not np.isfinite(d[i]) or abs(d[i]) < 1e-300:
            raise SingularCovariance("covariance matrix is singular to working precision")
        if i + 1 < n:
            col = a[i + 1 :, i] / d[i]
            a[i + 1 :, i + 1 :] -= np.outer(col, a[i + 1 :, i])
    return d


def sqrt_det_2pi_cov(cov: np.ndarray) -> complex:
    """Continuous branch of ``sqrt(det(2 pi cov))`` for complex symmetric ``cov``.

    The branch is the product of principal square roots of ``2 pi d_i`` over
    the LDL^T pivots; along any path of matrices with Re(cov) > 0 this is
    continuous with the real-matrix case.
    """
    return complex(np.prod(np.sqrt(2.0 * np.pi * ldl_pivots(cov))))


def _cov_inverse(cov: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.inv(cov)
    except np.linalg.LinAlgError as exc:
        raise SingularCovariance(str(exc)) from exc


def gaussian_batch(means: np.ndarray, cov: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Values ``G_{mu, cov}(xi)`` for peaks sharing one covariance.

    Args:
        means: complex array (M, d)
        cov: complex array (d, d)
        points: array (P, d), real or complex

    Returns:
        complex array (M, P)
    """
    inv = _cov_inverse(cov)
    norm = sqrt_det_2pi_cov(cov)
    means = np.atleast_2d(means)
    points = np.atleast_2d(points)
    out = np.empty((means.shape[0], points.shape[0]), dtype=complex)
    # chunk the peak axis so diff buffers stay modest
    chunk = max(1, int(4_000_000 // max(points.shape[0], 1)))
    for lo in range(0, means.shape[0], chunk):
        mu = means[lo : lo + chunk]
        diff = points[None, :, :] - mu[:, None, :]
        quad = np.einsum("mpi,ij,mpj->mp", diff, inv, diff, optimize=True)
        out[lo : lo + chunk] = np.exp(-0.5 * quad) / norm
    return out


def eval_gaussian(mean, cov, point) -> complex:
    """Normalized Gaussian ``exp(-(xi-mu)^T cov^-1 (xi-mu)/2) / sqrt(det(2 pi cov))``.

    ``mean`` and ``cov`` may be complex; ``point`` is a real phase-space point.

    Raises:
        SingularCovariance: if ``cov`` cannot be inverted.
    """
    mean = np.asarray(mean, dtype=complex).reshape(-1)
    cov = np.asarray(cov, dtype=complex)
    point = np.asarray(point, dtype=complex).reshape(-1)
    return complex(gaussian_batch(mean[None], cov, point[None])[0, 0])


def gaussian_overlap_integral(mean1, cov1, mean2, cov2) -> complex:
    """Integral of the product of two normalized Gaussians over phase space.

    Uses the identity  ``int G_{mu1,S1} G_{mu2,S2} = G_{mu1, S1+S2}(mu2)``,
    which extends to complex parameters by analytic continuation as long as
    ``Re(S1 + S2)`` is positive-definite.
    """
    cov1 = np.asarray(cov1, dtype=complex)
    cov2 = np.asarray(cov2, dtype=complex)
    return eval_gaussian(mean1, cov1 + cov2, mean2)


def wigner(state: GaussianMixtureState, point) -> complex:
    """Wigner function of ``state`` at a single phase-space point."""
    xi = validate_phase_point(point, state.num_modes)
    return complex(wigner_many(state, xi[None])[0])


def wigner_many(state: GaussianMixtureState, points: np.ndarray) -> np.ndarray:
    """Wigner function at a batch of points, shape ``(P, 2N)`` -> ``(P,)`` complex."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    total = np.zeros(points.shape[0], dtype=complex)
    for k in range(len(state.covs)):
        sel = state.cov_index == k
        if not np.any(sel):
            continue
        vals = gaussian_batch(state.means[sel], state.covs[k], points)
        total += state.weights[sel] @ vals
    return total


# ---------------------------------------------------------------------------
# mixture composition
# ---------------------------------------------------------------------------


def tensor(state_a: GaussianMixtureState, state_b: GaussianMixtureState) -> GaussianMixtureState:
    """Tensor product of two states; peak count is the product of peak counts."""
    if state_a.hbar != state_b.hbar:
        raise ValueError("cannot tensor states with different hbar")
    na, nb = state_a.num_peaks, state_b.num_peaks
    weights = (state_a.weights[:, None] * state_b.weights[None, :]).reshape(-1)
    means = np.hstack(
        [
            np.repeat(state_a.means, nb, axis=0),
            np.tile(state_b.means, (na, 1)),
        ]
    )
    ka, kb = len(state_a.covs), len(state_b.covs)
    da, db = 2 * state_a.num_modes, 2 * state_b.num_modes
    covs = np.zeros((ka * kb, da + db, da + db), dtype=complex)
    for i in range(ka):
        for j in range(kb):
            covs[i * kb + j, :da, :da] = state_a.covs[i]
            covs[i * kb + j, da:, da:] = state_b.covs[j]
    cov_index = (state_a.cov_index[:, None] * kb + state_b.cov_index[None, :]).reshape(-1)
    covs, cov_index = _dedup_pool(covs, cov_index)
    return GaussianMixtureState(
        num_modes=state_a.num_modes + state_b.num_modes,
        weights=weights,
        means=means,
        covs=covs,
        cov_index=cov_index,
        hbar=state_a.hbar,
        dropped_mass=state_a.dropped_mass + state_b.dropped_mass,
    )


def partial_trace(state: GaussianMixtureState, modes_to_keep: Sequence[int]) -> GaussianMixtureState:
    """Trace out all modes not listed in ``modes_to_keep`` (kept in ascending order)."""
    keep = sorted(set(int(m) for m in np.atleast_1d(modes_to_keep)))
    if not keep:
        raise ValueError("modes_to_keep must be nonempty")
    if keep[0] < 0 or keep[-1] >= state.num_modes:
        raise ValueError(f"mode index out of range for {state.num_modes}-mode state")
    idx = mode_indices(keep)
    means = state.means[:, idx]
    covs = state.covs[:, idx[:, None], idx[None, :]]
    covs, cov_index = _dedup_pool(covs, state.cov_index)
    # trace-preserving for physical inputs; renormalize to absorb numerical dust
    weights = state.weights / exact_weight_sum(state.weights)
    return GaussianMixtureState(
        num_modes=len(keep),
        weights=weights,
        means=means,
        covs=covs,
        cov_index=cov_index,
        hbar=state.hbar,
        dropped_mass=state.dropped_mass,
    )


def peak_log_sup_magnitudes(state: GaussianMixtureState) -> np.ndarray:
    """Log supremum of ``|c_m G_m(xi)|`` over real ``xi``, one value per peak.

    Peaks with imaginary mean components carry an exponential amplification
    ``exp(y^T (W_r + W_i W_r^-1 W_i) y / 2)`` with ``y = Im(mu)`` and
    ``W = Sigma^-1 = W_r + i W_i``; comparing raw ``|c_m|`` across such peaks
    misjudges their contribution to the Wigner function.  Returned in log
    space (``-inf`` for zero weights) since the amplification can overflow.
    """
    out = np.full(state.num_peaks, -np.inf)
    with np.errstate(divide="ignore"):
        logw = np.log(np.abs(state.weights))
    for k in range(len(state.covs)):
        sel = state.cov_index == k
        if not np.any(sel):
            continue
        w = _cov_inverse(state.covs[k])
        wr, wi = w.real, w.imag
        metric = wr + wi @ np.linalg.solve(wr, wi)
        y = state.means[sel].imag
        gain = 0.5 * np.einsum("mi,ij,mj->m", y, metric, y)
        out[sel] = logw[sel] + gain - np.log(abs(sqrt_det_2pi_cov(state.covs[k])))
    return out


def _prune_by_log_magnitude(state, logmags, tol, label):
    if tol == 0:
        keep = np.ones(len(logmags), dtype=bool)
    else:
        keep = logmags >= logmags.max() + np.log(tol)
    if not np.any(keep):
        raise EmptyMixture(f"{label} removed every peak")
    if np.all(keep):
        return state
    dropped = float(np.sum(np.abs(state.weights[~keep])))
    weights = state.weights[keep]
    weights = weights / exact_weight_sum(weights)
    covs, cov_index = _compact_pool(state.covs, state.cov_index[keep])
    return GaussianMixtureState(
        num_modes=state.num_modes,
        weights=weights,
        means=state.means[keep],
        covs=covs,
        cov_index=cov_index,
        hbar=state.hbar,
        dropped_mass=state.dropped_mass + dropped,
    )


def prune(state: GaussianMixtureState, weight_tol: float = DUST_TOL) -> GaussianMixtureState:
    """Drop peaks with ``|c_m| < weight_tol * max|c_m|`` and renormalize.

    The removed absolute mass is accumulated in ``dropped_mass``.

    Raises:
        EmptyMixture: if every peak falls below the threshold.
    """
    if weight_tol < 0:
        raise ValueError("weight_tol must be nonnegative")
    with np.errstate(divide="ignore"):
        logmags = np.log(np.abs(state.weights))
    return _prune_by_log_magnitude(state, logmags, weight_tol, "pruning")


def prune_dust(state: GaussianMixtureState, tol: float = DUST_TOL) -> GaussianMixtureState:
    """Like :func:`prune`, but ranks peaks by their sup contribution to W.

    This is the variant safe for mixtures with imaginary mean components,
    whose raw weights understate their contribution.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return _prune_by_log_magnitude(state, peak_log_sup_magnitudes(state), tol, "dust pruning")


# ---------------------------------------------------------------------------
# physicality diagnostics
# ---------------------------------------------------------------------------


def normalization_defect(state: GaussianMixtureState) -> float:
    """``|sum_m c_m - 1|``."""
    return float(abs(state.weight_sum() - 1.0))


def reality_defect(state: GaussianMixtureState, points: np.ndarray) -> float:
    """``max|Im W| / max|Re W|`` over the given sample points."""
    vals = wigner_many(state, points)
    ref = np.max(np.abs(vals.real))
    if ref == 0.0:
        return float(np.max(np.abs(vals.imag)))
    return float(np.max(np.abs(vals.imag)) / ref)


def min_real_cov_eigenvalue(state: GaussianMixtureState) -> float:
    """Smallest eigenvalue of Re(Sigma) over the covariance pool."""
    worst = np.inf
    for cov in state.covs:
        sym = (cov.real + cov.real.T) / 2.0
        worst = min(worst, float(np.linalg.eigvalsh(sym).min()))
    return worst


def default_sample_points(state: GaussianMixtureState, per_axis: int = 7) -> np.ndarray:
    """A small real grid covering the means, used for reality spot checks."""
    d = 2 * state.num_modes
    centers = state.means.real
    lo = centers.min(axis=0) - 3.0 * np.sqrt(state.hbar)
    hi = centers.max(axis=0) + 3.0 * np.sqrt(state.hbar)
    axes = [np.linspace(lo[i], hi[i], per_axis) for i in range(d)]
    if d > 2:
        # full grids blow up in dimension; use a deterministic scatter instead
        rng = np.random.default_rng(12345)
        return lo + (hi - lo) * rng.random((per_axis ** 2, d))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def assert_physical(
    state: GaussianMixtureState,
    norm_tol: float = NORMALIZATION_TOL,
    reality_tol: float = REALITY_TOL,
    points: np.ndarray | None = None,
):
    """Raise InvalidState if the stated necessary physicality conditions fail.

    Checks normalization, positive-definiteness of Re(Sigma), and reality of
    the Wigner function on a sample grid.  These conditions are necessary but
    not sufficient; no sufficiency check is attempted.
    """
    defect = normalization_defect(state)
    if defect > norm_tol:
        raise InvalidState(f"weights sum to 1 +/- {defect:.3e}, beyond {norm_tol:.1e}")
    if min_real_cov_eigenvalue(state) <= 0:
        raise InvalidState("Re(Sigma) is not positive-definite for some pooled covariance")
    pts = default_sample_points(state) if points is None else points
    rdef = reality_defect(state, pts)
    if rdef > reality_tol:
        raise InvalidState(f"Wigner reality defect {rdef:.3e} exceeds {reality_tol:.1e}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def state_to_dict(state: GaussianMixtureState) -> dict:
    """JSON-ready document with the interchange field names."""
    peaks = [
        {
            "re_w": float(w.real),
            "im_w": float(w.imag),
            "re_mu": [float(x) for x in mu.real],
            "im_mu": [float(x) for x in mu.imag],
            "cov_index": int(k),
        }
        for w, mu, k in zip(state.weights, state.means, state.cov_index)
    ]
    covs = [[cov.real.tolist(), cov.imag.tolist()] for cov in state.covs]
    return {
        "hbar": float(state.hbar),
        "num_modes": int(state.num_modes),
        "peaks": peaks,
        "covs": covs,
    }


def state_from_dict(doc: dict) -> GaussianMixtureState:
    """Inverse of :func:`state_to_dict`."""
    peaks = doc["peaks"]
    weights = np.array([p["re_w"] + 1j * p["im_w"] for p in peaks], dtype=complex)
    means = np.array(
        [np.asarray(p["re_mu"], float) + 1j * np.asarray(p["im_mu"], float) for p in peaks],
        dtype=complex,
    ).reshape(len(peaks), -1)
    cov_index = np.array([p["cov_index"] for p in peaks], dtype=np.intp)
    covs = np.array(
        [np.asarray(re, float) + 1j * np.asarray(im, float) for re, im in doc["covs"]],
        dtype=complex,
    )
    return GaussianMixtureState(
        num_modes=int(doc["num_modes"]),
        weights=weights,
        means=means,
        covs=covs,
        cov_index=cov_index,
        hbar=float(doc["hbar"]),
    )
