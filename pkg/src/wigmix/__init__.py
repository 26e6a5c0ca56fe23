"""wigmix: simulate CV states that are linear combinations of Gaussians in phase space."""

from .conventions import (
    DEFAULT_HBAR,
    db_from_epsilon,
    db_from_r,
    epsilon_from_db,
    r_from_db,
    symplectic_form,
)
from .core import (
    GaussianMixtureState,
    GaussianPeak,
    eval_gaussian,
    gaussian_overlap_integral,
    partial_trace,
    prune,
    shared_cov_state,
    state_from_dict,
    state_from_peaks,
    state_to_dict,
    tensor,
    wigner,
)

__version__ = "0.1.0"
