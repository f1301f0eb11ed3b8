"""Random generators for valid covariances, states and channels.

Used by the test and acceptance suites; the constructions mirror the
structure of the objects they sample:

* symplectic matrices as exp(Delta G) with symmetric G;
* covariances in Williamson form S^T diag(d_1, d_1, ..., d_s, d_s) S;
* channels with K = Q1 diag(sigma) Q2 rescaled to a target |det K| and
  mu = c I + (PSD noise), c just above the complete-positivity threshold.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .channels import GaussianChannel, validate_channel
from .states import GaussianState, validate_state
from .symplectic import SymplecticSpace


def random_symmetric(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    m = rng.standard_normal((n, n))
    return scale * 0.5 * (m + m.T)


def random_spd(rng: np.random.Generator, n: int, spectrum=(0.5, 2.0)) -> np.ndarray:
    """Symmetric positive definite matrix with eigenvalues drawn in ``spectrum``."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    lam = rng.uniform(spectrum[0], spectrum[1], size=n)
    return (q * lam) @ q.T


def random_symplectic(rng: np.random.Generator, space: SymplecticSpace, scale: float = 0.5) -> np.ndarray:
    """exp(Delta G) for symmetric G; satisfies S^T Delta S = Delta exactly in theory."""
    g = random_symmetric(rng, space.dim, scale=scale)
    return expm(space.delta @ g)


def random_covariance(
    rng: np.random.Generator,
    space: SymplecticSpace,
    d_range=(0.5, 5.0),
    scale: float = 0.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Valid covariance with known symplectic spectrum; returns (alpha, sorted d_j)."""
    ds = np.sort(rng.uniform(d_range[0], d_range[1], size=space.s))
    diag = np.repeat(ds, 2)
    s_mat = random_symplectic(rng, space, scale=scale)
    alpha = s_mat.T @ np.diag(diag) @ s_mat
    return 0.5 * (alpha + alpha.T), ds


def random_state(
    rng: np.random.Generator,
    space: SymplecticSpace,
    d_range=(0.5, 5.0),
    mean_scale: float = 1.0,
) -> GaussianState:
    alpha, _ = random_covariance(rng, space, d_range=d_range)
    mean = mean_scale * rng.standard_normal(space.dim)
    return validate_state(mean, alpha, space)


def random_invertible_k(
    rng: np.random.Generator,
    space: SymplecticSpace,
    abs_det: float,
    sigma_range=(0.9, 1.11),
    allow_reflection: bool = True,
) -> np.ndarray:
    """Well-conditioned K with |det K| = abs_det, random orientation."""
    n = space.dim
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
    sigma = rng.uniform(sigma_range[0], sigma_range[1], size=n)
    k = (q1 * sigma) @ q2
    det = np.linalg.det(k)
    k = k * (abs_det / abs(det)) ** (1.0 / n)
    if allow_reflection and rng.random() < 0.5:
        k = k @ np.diag([-1.0] + [1.0] * (n - 1))
    return k


def cp_threshold_mu(space: SymplecticSpace, K: np.ndarray) -> float:
    """Smallest c such that mu = c I satisfies complete positivity for this K."""
    d_form = space.delta - K.T @ space.delta @ K
    if np.allclose(d_form, 0.0):
        return 0.0
    return 0.5 * float(np.max(np.abs(np.linalg.eigvalsh(1j * d_form))))


def random_channel(
    rng: np.random.Generator,
    space: SymplecticSpace,
    abs_det: float | None = None,
    mu_slack: float = 0.1,
    noise_scale: float = 0.0,
    shift_scale: float = 0.0,
) -> GaussianChannel:
    """Valid channel with well-conditioned K and mu near the CP threshold.

    ``mu_slack`` scales c above the threshold; ``noise_scale`` adds a random
    PSD component to mu; ``shift_scale`` draws a nonzero displacement l.
    """
    if abs_det is None:
        abs_det = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
    k = random_invertible_k(rng, space, abs_det)
    c = cp_threshold_mu(space, k) * (1.0 + mu_slack * rng.random())
    mu = c * np.eye(space.dim)
    if noise_scale > 0.0:
        w = rng.standard_normal((space.dim, space.dim))
        mu = mu + noise_scale * (w @ w.T) / space.dim
    l = shift_scale * rng.standard_normal(space.dim)
    return validate_channel(k, l, 0.5 * (mu + mu.T), space)
