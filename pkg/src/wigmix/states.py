"""Constructors for states expressed as linear combinations of Gaussians.

Families covered: plain Gaussian states (vacuum, coherent, squeezed, thermal),
finite-energy grid states in a real-valued and a complex-valued
representation, two-lobe cat states (complex and real representations),
squeezed-comb states, Fock states built from heralded photon addition, and
generic superpositions of equally-squeezed displaced states.

All constructors return normalized :class:`~wigmix.core.GaussianMixtureState`
values and share one covariance matrix across peaks whenever the family allows
it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import binom

from .conventions import DEFAULT_HBAR
from .core import (
    DUST_TOL,
    GaussianMixtureState,
    exact_weight_sum,
    prune_dust,
    shared_cov_state,
    state_from_peaks,
)
from .errors import InvalidState, Unphysical, Unsupported

__all__ = [
    "GkpParams",
    "CatParams",
    "CombParams",
    "FockParams",
    "vacuum",
    "coherent",
    "squeezed",
    "thermal",
    "gkp",
    "gkp_magic",
    "gkp_ideal_lattice",
    "cat",
    "fock",
    "comb",
    "gaussian_superposition",
]

REAL = "real"
COMPLEX = "complex"


@dataclass(frozen=True)
class GkpParams:
    """Bloch angles, damping strength and lattice cutoff for a grid state.

    The logical state is ``cos(theta/2)|0> + exp(-i phi) sin(theta/2)|1>``.
    ``epsilon`` is the strength of the energy-damping operator exp(-eps*n);
    ``cutoff`` bounds the peak lattice indices before dust pruning.
    """

    theta: float
    phi: float
    epsilon: float
    cutoff: int = 12
    representation: str = REAL

    def __post_init__(self):
        if self.epsilon <= 0:
            raise Unphysical("finite-energy grid states require epsilon > 0")
        if self.cutoff < 1:
            raise ValueError("cutoff must be at least 1")
        if self.representation not in (REAL, COMPLEX):
            raise ValueError(f"unknown representation {self.representation!r}")


@dataclass(frozen=True)
class CatParams:
    """Amplitude and parity of a two-lobe cat state.

    ``precision`` is the positive parameter of the Gaussian-comb cosine
    expansion used by the real representation; the representation error
    scales like exp(-2 pi^2 precision).
    """

    alpha: complex
    parity: int = 0
    representation: str = COMPLEX
    precision: float = 6.0

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        if self.representation not in (REAL, COMPLEX):
            raise ValueError(f"unknown representation {self.representation!r}")
        if self.precision <= 0:
            raise ValueError("precision must be positive")


@dataclass(frozen=True)
class CombParams:
    """Squeezed-comb state: ``num_teeth`` teeth spaced by ``spacing`` (units
    of sqrt(hbar)), each squeezed by ``r``; ``logical`` selects the displaced
    code word."""

    num_teeth: int
    spacing: float
    r: float
    logical: int = 0
    representation: str = COMPLEX
    precision: float = 6.0

    def __post_init__(self):
        if self.num_teeth < 1:
            raise ValueError("num_teeth must be at least 1")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.logical not in (0, 1):
            raise ValueError("logical must be 0 or 1")
        if self.representation not in (REAL, COMPLEX):
            raise ValueError(f"unknown representation {self.representation!r}")


@dataclass(frozen=True)
class FockParams:
    """Photon number and construction squeezing for the Fock approximation.

    Physicality requires ``r < 1/sqrt(n)``; fidelity to the exact number state
    improves as ``r -> 0``.
    """

    n: int
    r: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("photon number must be nonnegative")


# ---------------------------------------------------------------------------
# Gaussian states
# ---------------------------------------------------------------------------


def vacuum(n_modes: int, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """N-mode vacuum: single peak, zero mean, covariance (hbar/2) I."""
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1")
    return shared_cov_state(
        [1.0], np.zeros((1, 2 * n_modes)), (hbar / 2.0) * np.eye(2 * n_modes), hbar=hbar
    )


def coherent(alpha: complex, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Coherent state: vacuum displaced to sqrt(2 hbar)(Re a, Im a)."""
    alpha = complex(alpha)
    mu = np.sqrt(2.0 * hbar) * np.array([[alpha.real, alpha.imag]])
    return shared_cov_state([1.0], mu, (hbar / 2.0) * np.eye(2), hbar=hbar)


def _rotation_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def squeezed(r: float, phi: float = 0.0, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Squeezed vacuum with covariance R(phi/2) diag(e^-2r, e^2r) R(phi/2)^T * hbar/2.

    ``phi = 0`` squeezes the position quadrature; ``phi = pi`` the momentum.
    """
    rot = _rotation_matrix(phi / 2.0)
    cov = (hbar / 2.0) * rot @ np.diag([np.exp(-2 * r), np.exp(2 * r)]) @ rot.T
    return shared_cov_state([1.0], np.zeros((1, 2)), cov, hbar=hbar)


def thermal(nbar: float, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Thermal state with mean photon number ``nbar``: covariance hbar(nbar+1/2) I."""
    if nbar < 0:
        raise ValueError("nbar must be nonnegative")
    return shared_cov_state(
        [1.0], np.zeros((1, 2)), hbar * (nbar + 0.5) * np.eye(2), hbar=hbar
    )


# ---------------------------------------------------------------------------
# grid (GKP) states
# ---------------------------------------------------------------------------


def _ideal_grid_coefficients(k: np.ndarray, ell: np.ndarray, theta: float, phi: float) -> np.ndarray:
    """Delta-lattice Wigner weights c_{k,l}(theta, phi) of an ideal grid qubit."""
    pref = 1.0 / (4.0 * np.sqrt(np.pi))
    c = np.zeros(np.broadcast(k, ell).shape)
    k4, l4 = np.mod(k, 4), np.mod(ell, 4)
    k2, l2 = np.mod(k, 2), np.mod(ell, 2)
    c = np.where((k2 == 0) & (l2 == 0), pref, c)
    c = np.where((k4 == 0) & (l2 == 1), pref * np.cos(theta), c)
    c = np.where((k4 == 2) & (l2 == 1), -pref * np.cos(theta), c)
    sincos = pref * np.sin(theta) * np.cos(phi)
    sinsin = pref * np.sin(theta) * np.sin(phi)
    c = np.where((k2 == 1) & (l4 == 0), sincos, c)
    c = np.where((k2 == 1) & (l4 == 2), -sincos, c)
    c = np.where(((k4 == 3) & (l4 == 3)) | ((k4 == 1) & (l4 == 1)), -sinsin, c)
    c = np.where(((k4 == 3) & (l4 == 1)) | ((k4 == 1) & (l4 == 3)), sinsin, c)
    return c


def gkp_ideal_lattice(
    theta: float,
    phi: float,
    cutoff: int,
    delta: float,
    hbar: float = DEFAULT_HBAR,
) -> GaussianMixtureState:
    """Truncated delta-comb lattice of an ideal grid state, regularized by ``delta``.

    Peaks sit at (k, l) * sqrt(pi hbar)/2 with isotropic covariance ``delta * I``
    standing in for the delta-function limit.  The output is *not* normalizable
    as a physical state; it exists to feed the energy-damping channel, which
    renormalizes.  Weights are the raw lattice coefficients.
    """
    idx = np.arange(-cutoff, cutoff + 1)
    kk, ll = np.meshgrid(idx, idx, indexing="ij")
    kk, ll = kk.reshape(-1), ll.reshape(-1)
    weights = _ideal_grid_coefficients(kk, ll, theta, phi)
    keep = weights != 0.0
    half = np.sqrt(np.pi * hbar) / 2.0
    means = np.stack([kk[keep] * half, ll[keep] * half], axis=1).astype(complex)
    return shared_cov_state(weights[keep], means, delta * np.eye(2), hbar=hbar)


def _gkp_real(params: GkpParams, hbar: float) -> GaussianMixtureState:
    eps = params.epsilon
    idx = np.arange(-params.cutoff, params.cutoff + 1)
    kk, ll = np.meshgrid(idx, idx, indexing="ij")
    kk, ll = kk.reshape(-1), ll.reshape(-1)
    half = np.sqrt(np.pi * hbar) / 2.0
    mu0 = np.stack([kk * half, ll * half], axis=1)

    damp = np.tanh(eps)
    weights = _ideal_grid_coefficients(kk, ll, params.theta, params.phi) * np.exp(
        -damp * np.sum(mu0**2, axis=1) / hbar
    )
    keep = weights != 0.0
    weights, mu0 = weights[keep], mu0[keep]

    boundary = (np.abs(kk[keep]) == params.cutoff) | (np.abs(ll[keep]) == params.cutoff)
    if np.max(np.abs(weights[boundary]), initial=0.0) > 1e-10 * np.max(np.abs(weights)):
        warnings.warn(
            "grid-state cutoff leaves non-negligible boundary weight; "
            "increase cutoff for full precision",
            stacklevel=3,
        )

    means = (2.0 * np.exp(-eps) / (1.0 + np.exp(-2.0 * eps))) * mu0
    cov = (hbar / 2.0) * damp * np.eye(2)
    state = shared_cov_state(weights / np.sum(weights), means.astype(complex), cov, hbar=hbar)
    return prune_dust(state, DUST_TOL)


def _gkp_complex_from_amplitudes(
    a0: complex, a1: complex, epsilon: float, cutoff: int, hbar: float
) -> GaussianMixtureState:
    eps = epsilon
    alpha = 1.0 / np.tanh(eps)
    amps = np.array([a0, a1], dtype=complex)

    idx = np.arange(-cutoff, cutoff + 1)
    # ket comb index t with qubit index l; bra comb index s with qubit index k
    ll, kqb, tt, ss = [a.reshape(-1) for a in np.meshgrid([0, 1], [0, 1], idx, idx, indexing="ij")]
    A = 2 * tt + ll
    B = 2 * ss + kqb
    u, v = A + B, A - B

    # exponent written in the cancellation-free form
    # -alpha*pi*(A^2+B^2)/2 + csch^2*pi*u^2/(4 alpha) = -(pi/4)(alpha v^2 + tanh(eps) u^2)
    expo = -(np.pi / 4.0) * (alpha * v.astype(float) ** 2 + np.tanh(eps) * u.astype(float) ** 2)
    weights = amps[ll] * np.conj(amps[kqb]) * np.exp(expo)

    mu_q = np.cosh(eps) ** -1 * np.sqrt(np.pi * hbar) * u / 2.0
    mu_p = -1j * np.sqrt(np.pi * hbar) * v / (2.0 * np.sinh(eps))
    means = np.stack([mu_q, mu_p], axis=1).astype(complex)

    cov = (hbar / 2.0) * np.diag([1.0 / alpha, alpha])
    total = np.sum(weights)
    if abs(total.imag) > 1e-12 * abs(total.real):
        raise InvalidState("grid-state weight sum came out complex; amplitudes invalid")
    state = shared_cov_state(weights / total.real, means, cov, hbar=hbar)
    return prune_dust(state, DUST_TOL)


def gkp(params: GkpParams, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Finite-energy grid-state qubit in the requested representation.

    The real representation places real-weighted isotropic peaks on the
    half-lattice with a Gaussian envelope; the complex representation carries
    the interference in imaginary momentum means instead.  Both describe the
    same state and agree on the Wigner function to lattice-truncation error.
    """
    if params.representation == REAL:
        return _gkp_real(params, hbar)
    a0 = np.cos(params.theta / 2.0)
    a1 = np.exp(-1j * params.phi) * np.sin(params.theta / 2.0)
    return _gkp_complex_from_amplitudes(a0, a1, params.epsilon, params.cutoff, hbar)


def gkp_magic(
    epsilon: float,
    cutoff: int = 12,
    representation: str = REAL,
    hbar: float = DEFAULT_HBAR,
) -> GaussianMixtureState:
    """Finite-energy magic state (|0> + e^{i pi/4} |1>)/sqrt(2) for T-gate teleportation.

    Bloch angles: theta = pi/2 and phi = -pi/4 in the e^{-i phi} convention.
    """
    return gkp(
        GkpParams(theta=np.pi / 2.0, phi=-np.pi / 4.0, epsilon=epsilon, cutoff=cutoff,
                  representation=representation),
        hbar=hbar,
    )


# ---------------------------------------------------------------------------
# cat states
# ---------------------------------------------------------------------------


def _cat_complex(alpha: complex, parity: int, hbar: float) -> GaussianMixtureState:
    norm = 2.0 * (1.0 + np.exp(-2.0 * abs(alpha) ** 2) * np.cos(np.pi * parity))
    if norm <= 1e-15:
        raise InvalidState("odd cat with alpha = 0 has no normalization")
    n = 1.0 / norm
    root = np.sqrt(2.0 * hbar)
    mu_plus = root * np.array([alpha.real, alpha.imag])
    mu_z = root * np.array([1j * alpha.imag, -1j * alpha.real])
    c_z = n * np.exp(-1j * np.pi * parity - 2.0 * abs(alpha) ** 2)
    weights = np.array([n, n, c_z, np.conj(c_z)])
    means = np.stack([mu_plus, -mu_plus, mu_z, np.conj(mu_z)]).astype(complex)
    return shared_cov_state(weights, means, (hbar / 2.0) * np.eye(2), hbar=hbar)


def _cat_real_positive_alpha(alpha: float, parity: int, D: float, hbar: float) -> GaussianMixtureState:
    """Real-valued cat representation for real alpha > 0.

    The interference term 2 cos(2 sqrt(2/hbar) alpha p + pi k) times the
    vacuum Gaussian is expanded with the Gaussian-comb identity for cosine and
    regrouped peak by peak; the expansion error is O(exp(-2 pi^2 D)).
    """
    norm = 2.0 * (1.0 + np.exp(-2.0 * alpha**2) * np.cos(np.pi * parity))
    n = 1.0 / norm
    v = hbar / 2.0
    sigma_alpha = np.pi**2 * hbar * D / (16.0 * alpha**2)
    kappa = np.pi * np.sqrt(hbar) / (2.0 * np.sqrt(2.0) * alpha)  # b_m = kappa * m

    m_max = int(np.ceil(np.sqrt(2.0 * (sigma_alpha + v) * np.log(1.0 / DUST_TOL)) / kappa)) + 1
    m = np.arange(-m_max, m_max + 1)
    b = kappa * m

    prefactor = (
        n
        * np.sqrt(np.pi * hbar)
        * np.exp(np.pi**2 * D / 4.0)
        / (4.0 * alpha * np.sqrt(sigma_alpha + v))
    )
    sign = (-1.0) ** (np.abs(m) + parity)
    fringe_w = prefactor * sign * np.exp(-(b**2) / (2.0 * (sigma_alpha + v)))
    fringe_mu = np.stack([np.zeros_like(b), b * v / (sigma_alpha + v)], axis=1)
    fringe_cov = np.diag([v, v * sigma_alpha / (sigma_alpha + v)])

    lobe_mu = np.sqrt(2.0 * hbar) * np.array([[alpha, 0.0], [-alpha, 0.0]])
    weights = np.concatenate([[n, n], fringe_w]).astype(complex)
    means = np.concatenate([lobe_mu, fringe_mu]).astype(complex)
    covs = np.stack([(hbar / 2.0) * np.eye(2), fringe_cov])
    cov_index = np.concatenate([[0, 0], np.ones(len(m), dtype=np.intp)])

    total = exact_weight_sum(weights).real
    state = state_from_peaks(weights / total, means, covs, cov_index=cov_index, hbar=hbar)
    return prune_dust(state, DUST_TOL)


def _rotate_single_mode(state: GaussianMixtureState, theta: float) -> GaussianMixtureState:
    rot = _rotation_matrix(theta)
    return state_from_peaks(
        state.weights,
        state.means @ rot.T,
        np.einsum("ij,kjl,ml->kim", rot, state.covs, rot),
        cov_index=state.cov_index,
        hbar=state.hbar,
    )


def cat(params: CatParams, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Two-lobe cat state ``(|a> + e^{i pi k}|-a>)`` normalized.

    The complex representation has exactly four peaks regardless of the
    amplitude.  The real representation is supported directly for real
    amplitudes; other phases are built at |alpha| and rotated.
    """
    alpha = complex(params.alpha)
    if params.representation == COMPLEX:
        return _cat_complex(alpha, params.parity, hbar)
    if abs(alpha) == 0.0:
        if params.parity == 1:
            raise InvalidState("odd cat with alpha = 0 has no normalization")
        return vacuum(1, hbar=hbar)
    built = _cat_real_positive_alpha(abs(alpha), params.parity, params.precision, hbar)
    angle = np.angle(alpha)
    if angle != 0.0:
        built = _rotate_single_mode(built, angle)
    return built


# ---------------------------------------------------------------------------
# Fock states
# ---------------------------------------------------------------------------


def fock(params: FockParams, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Gaussian-mixture approximation of the n-photon state via photon addition.

    n+1 zero-mean isotropic peaks with alternating-sign binomial weights;
    exact in the limit r -> 0.

    Raises:
        Unphysical: if ``r >= 1/sqrt(n)`` (or r <= 0 for n >= 1).
    """
    n, r = params.n, params.r
    if n == 0:
        return vacuum(1, hbar=hbar)
    if not 0.0 < r < 1.0 / np.sqrt(n):
        raise Unphysical(f"fock(n={n}) requires 0 < r < 1/sqrt(n) = {1/np.sqrt(n):.4f}")
    m = np.arange(n + 1)
    # the weight vector is severely ill-conditioned (normalization ~ n! r^2n),
    # so build it in extended precision and pin the exact double sum to 1
    x = np.longdouble(r) ** 2
    raw = (
        (-1.0) ** (n - m)
        * binom(n, m).astype(np.longdouble)
        * (1.0 - n * x)
        / (1.0 - (n - m) * x)
    )
    weights = np.array(raw / raw.sum(), dtype=float)
    weights[np.argmax(np.abs(weights))] -= math.fsum(weights) - 1.0
    variances = (hbar / 2.0) * (1.0 + (n - m) * r**2) / (1.0 - (n - m) * r**2)
    covs = variances[:, None, None] * np.eye(2)[None]
    return state_from_peaks(weights, np.zeros((n + 1, 2)), covs, hbar=hbar)


# ---------------------------------------------------------------------------
# squeezed-comb states
# ---------------------------------------------------------------------------


def _comb_teeth(params: CombParams, hbar: float) -> np.ndarray:
    n = np.arange(1, params.num_teeth + 1)
    d = params.spacing
    teeth = -(params.num_teeth + 1) * d / 2.0 + n * d
    if params.logical == 1:
        teeth = teeth + d / 2.0
    return teeth


def _comb_complex(params: CombParams, hbar: float) -> GaussianMixtureState:
    teeth = _comb_teeth(params, hbar)
    r = params.r
    qk, ql = np.meshgrid(teeth, teeth, indexing="ij")
    qk, ql = qk.reshape(-1), ql.reshape(-1)
    delta = qk - ql
    weights = np.exp(-np.exp(2 * r) * delta**2 / (4.0 * hbar))
    means = np.stack([(qk + ql) / 2.0, 0.5j * np.exp(2 * r) * delta], axis=1)
    cov = (hbar / 2.0) * np.diag([np.exp(-2 * r), np.exp(2 * r)])
    return shared_cov_state(weights / np.sum(weights), means, cov, hbar=hbar)


def _comb_real(params: CombParams, hbar: float) -> GaussianMixtureState:
    teeth = _comb_teeth(params, hbar)
    r, D = params.r, params.precision
    s_q = (hbar / 2.0) * np.exp(-2 * r)
    s_p = (hbar / 2.0) * np.exp(2 * r)
    norm = float(
        np.sum(np.exp(-np.exp(2 * r) * np.subtract.outer(teeth, teeth) ** 2 / (4.0 * hbar)))
    )
    c_d = np.exp(np.pi**2 * D / 4.0) / (2.0 * np.sqrt(np.pi * D))

    weights = [np.full(len(teeth), 1.0 / norm)]
    means = [np.stack([teeth, np.zeros_like(teeth)], axis=1)]
    covs = [np.diag([s_q, s_p])]
    cov_index = [np.zeros(len(teeth), dtype=np.intp)]

    n_teeth = len(teeth)
    for a in range(n_teeth):
        for b in range(a + 1, n_teeth):
            delta = teeth[a] - teeth[b]
            center = (teeth[a] + teeth[b]) / 2.0
            sigma_c2 = D * np.pi**2 * hbar**2 / (2.0 * delta**2)
            var_p = s_p * sigma_c2 / (s_p + sigma_c2)
            spacing = np.pi * hbar / abs(delta)
            j_max = int(
                np.ceil(np.sqrt(2.0 * (s_p + sigma_c2) * np.log(1.0 / DUST_TOL)) / spacing)
            ) + 1
            j = np.arange(-j_max, j_max + 1)
            pj = j * np.pi * hbar / delta
            w = (
                (2.0 / norm)
                * c_d
                * (-1.0) ** np.abs(j)
                * np.exp(-(pj**2) / (2.0 * (s_p + sigma_c2)))
                * np.sqrt(sigma_c2 / (s_p + sigma_c2))
            )
            weights.append(w)
            means.append(
                np.stack([np.full(len(j), center), pj * s_p / (s_p + sigma_c2)], axis=1)
            )
            covs.append(np.diag([s_q, var_p]))
            cov_index.append(np.full(len(j), len(covs) - 1, dtype=np.intp))

    weights = np.concatenate(weights)
    state = state_from_peaks(
        weights / exact_weight_sum(weights).real,
        np.concatenate(means).astype(complex),
        np.stack(covs),
        cov_index=np.concatenate(cov_index),
        hbar=hbar,
    )
    return prune_dust(state, DUST_TOL)


def comb(params: CombParams, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """Squeezed-comb state: a finite superposition of displaced squeezed teeth."""
    if params.representation == COMPLEX:
        return _comb_complex(params, hbar)
    return _comb_real(params, hbar)


# ---------------------------------------------------------------------------
# superpositions of displaced squeezed states
# ---------------------------------------------------------------------------


def gaussian_superposition(components, hbar: float = DEFAULT_HBAR) -> GaussianMixtureState:
    """State proportional to ``sum_n kappa_n D(gamma_n) S(zeta_n) |0>``.

    All ``zeta_n`` must be equal and real (the equal-squeezing dyad case);
    each pair of components contributes one Gaussian peak via the closed-form
    dyad Wigner function.

    Args:
        components: iterable of ``(kappa, gamma, zeta)`` triples

    Raises:
        Unsupported: for mixed or complex squeezing parameters.
    """
    comps = list(components)
    if not comps:
        raise ValueError("at least one component is required")
    zetas = np.array([complex(z) for _, _, z in comps])
    if np.max(np.abs(zetas.imag)) > 1e-12 or np.max(np.abs(zetas - zetas[0])) > 1e-12:
        raise Unsupported("only equal real squeezing parameters are supported")
    r = float(zetas[0].real)
    kappas = np.array([complex(k) for k, _, _ in comps])
    gammas = np.array([complex(g) for _, g, _ in comps])

    re_g, im_g = gammas.real, gammas.imag
    # dyad (m, n) = |gamma_m><gamma_n|
    rg, rd = np.meshgrid(re_g, re_g, indexing="ij")
    ig, id_ = np.meshgrid(im_g, im_g, indexing="ij")
    pref = np.exp(
        -0.5 * np.exp(-2 * r) * (ig - id_) ** 2
        - 0.5 * np.exp(2 * r) * (rg - rd) ** 2
        - 1j * id_ * rg
        + 1j * ig * rd
    )
    weights = (kappas[:, None] * np.conj(kappas)[None, :] * pref).reshape(-1)
    mu_q = rg + rd + 1j * np.exp(-2 * r) * (ig - id_)
    mu_p = ig + id_ + 1j * np.exp(2 * r) * (rd - rg)
    means = np.sqrt(hbar / 2.0) * np.stack([mu_q.reshape(-1), mu_p.reshape(-1)], axis=1)
    cov = (hbar / 2.0) * np.diag([np.exp(-2 * r), np.exp(2 * r)])

    total = np.sum(weights)
    if abs(total) < 1e-15:
        raise InvalidState("superposition has zero norm")
    return prune_dust(shared_cov_state(weights / total, means, cov, hbar=hbar), DUST_TOL)
