"""Phase-space conventions shared by every module.

Quadratures use the mode-wise ordering ``(q_1, p_1, q_2, p_2, ...)``.  All
symplectic matrices, covariance matrices and displacement vectors in this
package are stated in that ordering.  ``hbar`` is a state-level parameter
(default 2) and every formula carries it explicitly.
"""

from __future__ import annotations

import numpy as np

DEFAULT_HBAR = 2.0

#: Symplectic-form tolerance used by :func:`is_symplectic`.
SYMPLECTIC_TOL = 1e-10


def symplectic_form(num_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form ``Omega`` for ``num_modes`` modes.

    Each mode contributes a ``[[0, 1], [-1, 0]]`` block, so ``Omega @ Omega = -1``
    and ``Omega.T = -Omega``.
    """
    omega = np.zeros((2 * num_modes, 2 * num_modes))
    for m in range(num_modes):
        omega[2 * m, 2 * m + 1] = 1.0
        omega[2 * m + 1, 2 * m] = -1.0
    return omega


def is_symplectic(s: np.ndarray, tol: float = SYMPLECTIC_TOL) -> bool:
    """Whether ``s`` satisfies ``S Omega S^T = Omega`` within ``tol``."""
    n = s.shape[0] // 2
    omega = symplectic_form(n)
    return bool(np.max(np.abs(s @ omega @ s.T - omega)) <= tol)


def mode_indices(modes) -> np.ndarray:
    """Quadrature indices ``(2m, 2m+1)`` for each mode in ``modes``, in order."""
    modes = np.atleast_1d(np.asarray(modes, dtype=int))
    return np.stack([2 * modes, 2 * modes + 1], axis=1).reshape(-1)


def q_indices(num_modes: int) -> np.ndarray:
    """Indices of the position quadratures."""
    return np.arange(0, 2 * num_modes, 2)


def p_indices(num_modes: int) -> np.ndarray:
    """Indices of the momentum quadratures."""
    return np.arange(1, 2 * num_modes, 2)


def validate_phase_point(point, num_modes: int) -> np.ndarray:
    """Coerce ``point`` to a real phase-space vector of length ``2 * num_modes``."""
    xi = np.asarray(point, dtype=float).reshape(-1)
    if xi.size != 2 * num_modes:
        raise ValueError(
            f"phase point has {xi.size} components, expected {2 * num_modes}"
        )
    return xi


# ---------------------------------------------------------------------------
# squeezing <-> dB conversions
#
# A squeezed quadrature variance scales by exp(-2r), so the conventional
# decibel figure is dB = -10*log10(exp(-2r)).  For Fock-damped grid states the
# per-peak variance is (hbar/2)*tanh(eps), giving dB = -10*log10(tanh(eps));
# this reproduces the usual quoted pairs (eps=0.1 <-> ~10 dB, eps=0.01 <-> ~20
# dB) to within ~0.015 dB.  The residual is the pairs being rounded figures,
# not a different convention.
# ---------------------------------------------------------------------------


def r_from_db(db: float) -> float:
    """Squeezing parameter ``r`` for a quadrature noise reduction of ``db`` decibels."""
    return db * np.log(10.0) / 20.0


def db_from_r(r: float) -> float:
    """Decibel figure of a squeezing parameter ``r``."""
    return 20.0 * r / np.log(10.0)


def epsilon_from_db(db: float) -> float:
    """Fock-damping strength whose per-peak variance equals ``db`` of squeezing."""
    return float(np.arctanh(10.0 ** (-db / 10.0)))


def db_from_epsilon(epsilon: float) -> float:
    """Per-peak squeezing, in dB, of a Fock-damped grid state."""
    return float(-10.0 * np.log10(np.tanh(epsilon)))
