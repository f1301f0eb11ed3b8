"""Gaussian states, their characteristic functions and Schatten-power closed forms.

A Gaussian density operator is determined by its mean vector m and covariance
matrix alpha through Tr rho W(z) = exp(i m^T z - z^T alpha z / 2), with the
uncertainty constraint alpha + (i/2) Delta >= 0.  Powers of a Gaussian state
stay Gaussian up to normalization; the scalar spectral functions

    f_p(d) = (d + 1/2)^p - (d - 1/2)^p
    g_p(d) = [(d + 1/2)^p + (d - 1/2)^p] / (2 d [(d + 1/2)^p - (d - 1/2)^p])

turn the symplectic spectrum {d_j} of alpha into Tr rho^p = prod_j 1/f_p(d_j)
and into the covariance alpha g_p(abs(Delta^-1 alpha)) of the normalized
power state.  Gibbs states of quadratic Hamiltonians R eps R^T are Gaussian
with covariance (Delta/2) cot(beta eps Delta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DomainError,
    NotSymmetricError,
    SingularEpsilonError,
    UncertaintyViolatedError,
)
from .symplectic import (
    PSD_SLACK,
    TOL_SPEC,
    TOL_SYM,
    SymplecticSpace,
    apply_spectral_function,
    check_psd_hermitian,
    matrix_cot,
    symplectic_spectrum,
)


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance matrix of a Gaussian density operator.

    Construct through :func:`validate_state`, which enforces the uncertainty
    constraint; the fields themselves are not re-checked.
    """

    space: SymplecticSpace
    mean: np.ndarray
    cov: np.ndarray


@dataclass(frozen=True, eq=False)
class GibbsFamily:
    """Family of Gibbs states of the quadratic Hamiltonian R epsilon R^T.

    epsilon must be real symmetric positive definite; checked on construction.
    """

    space: SymplecticSpace
    epsilon: np.ndarray

    def __post_init__(self):
        eps = np.array(self.epsilon, dtype=float)
        if eps.shape != (self.space.dim, self.space.dim):
            raise DimensionMismatchError(
                f"epsilon shape {eps.shape} does not match 2s = {self.space.dim}"
            )
        if np.linalg.norm(eps - eps.T) > TOL_SYM * max(np.linalg.norm(eps), 1e-300):
            raise NotSymmetricError("epsilon must be symmetric")
        lam_min = float(np.linalg.eigvalsh(0.5 * (eps + eps.T)).min())
        if lam_min <= 0.0:
            raise SingularEpsilonError(f"epsilon must be positive definite, lambda_min={lam_min}")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class SpectralFunctions:
    """The scalar functions f_p and g_p at a fixed exponent p >= 1."""

    p: float

    def __post_init__(self):
        if not (self.p >= 1.0) or math.isinf(self.p):
            raise DomainError(f"exponent must satisfy 1 <= p < inf, got {self.p}")

    def f(self, d: float) -> float:
        return f_p(d, self.p)

    def g(self, d: float) -> float:
        return g_p(d, self.p)


def _checked_d(d: float) -> float:
    # absolute slack TOL_SPEC * max(1, d) mirrors the spectrum tolerance
    if d < 0.5 - TOL_SPEC * max(1.0, abs(d)):
        raise DomainError(f"symplectic eigenvalue must be >= 1/2, got {d}")
    return max(float(d), 0.5)


def _power_terms(d: float, p: float) -> tuple[float, float]:
    # (r^p, 1 - r^p) with r = (d - 1/2)/(d + 1/2), stable at both domain edges:
    # direct subtraction below r = 1/2, log1p/expm1 above (r -> 1 as d -> inf)
    num = d - 0.5
    if num <= 0.0:
        return 0.0, 1.0
    den = d + 0.5
    r = num / den
    if r < 0.5:
        rp = r**p
        return rp, 1.0 - rp
    log_rp = p * math.log1p(-1.0 / den)
    return math.exp(log_rp), -math.expm1(log_rp)


def _log_f_p(d: float, p: float) -> float:
    _, one_minus_rp = _power_terms(d, p)
    return p * math.log(d + 0.5) + math.log(one_minus_rp)


def f_p(d: float, p: float) -> float:
    """(d + 1/2)^p - (d - 1/2)^p, evaluated in cancellation-free form.

    Saturates to float inf when the true value exceeds double range.
    """
    if not (p >= 1.0) or math.isinf(p):
        raise DomainError(f"exponent must satisfy 1 <= p < inf, got {p}")
    d = _checked_d(d)
    _, one_minus_rp = _power_terms(d, p)
    try:
        return (d + 0.5) ** p * one_minus_rp
    except OverflowError:
        return math.inf


def g_p(d: float, p: float) -> float:
    """[(d+1/2)^p + (d-1/2)^p] / (2 d [(d+1/2)^p - (d-1/2)^p]).

    d * g_p(d) is the symplectic eigenvalue of the normalized p-th power of a
    single-mode thermal state with symplectic eigenvalue d; g_p(1/2) = 1 by
    continuity and g_p(d) -> 1/p as d -> infinity.
    """
    if not (p >= 1.0) or math.isinf(p):
        raise DomainError(f"exponent must satisfy 1 <= p < inf, got {p}")
    d = _checked_d(d)
    rp, one_minus_rp = _power_terms(d, p)
    return (1.0 + rp) / (2.0 * d * one_minus_rp)


def validate_state(mean, cov, space: SymplecticSpace) -> GaussianState:
    """Validate (mean, cov) against the uncertainty constraint and build the state.

    Checks alpha + (i/2) Delta >= 0 and, as a numerical self-check, the
    transposed branch alpha - (i/2) Delta >= 0; a violation reports its
    lambda_min on the exception.
    """
    mean = np.array(mean, dtype=float).reshape(-1)
    cov = np.array(cov, dtype=float)
    n = space.dim
    if mean.shape != (n,) or cov.shape != (n, n):
        raise DimensionMismatchError(
            f"expected mean ({n},) and cov ({n}, {n}), got {mean.shape} and {cov.shape}"
        )
    if np.linalg.norm(cov - cov.T) > TOL_SYM * max(np.linalg.norm(cov), 1e-300):
        raise NotSymmetricError("covariance matrix is not symmetric within tolerance")
    for sign in (+1.0, -1.0):
        h = cov + sign * 0.5j * space.delta
        ok, lam_min = check_psd_hermitian(h, tol=PSD_SLACK * np.linalg.norm(h))
        if not ok:
            raise UncertaintyViolatedError(
                f"uncertainty constraint violated: lambda_min = {lam_min:.6e}",
                lambda_min=lam_min,
            )
    return GaussianState(space=space, mean=mean, cov=cov)


def char_function(state: GaussianState, z) -> complex:
    """Quantum characteristic function exp(i m^T z - z^T alpha z / 2)."""
    z = np.asarray(z, dtype=float).reshape(-1)
    return complex(np.exp(1j * state.mean @ z - 0.5 * z @ state.cov @ z))


def _log_tr_rho_p(state: GaussianState, p: float) -> float:
    if not (p >= 1.0) or math.isinf(p):
        raise DomainError(f"exponent must satisfy 1 <= p < inf, got {p}")
    ds = symplectic_spectrum(state.cov, state.space)
    return -sum(_log_f_p(_checked_d(d), p) for d in ds)


def tr_rho_p(state: GaussianState, p: float) -> float:
    """Tr rho^p = prod_j 1/f_p(d_j) over the symplectic spectrum, independent of the mean."""
    return math.exp(_log_tr_rho_p(state, p))


def schatten_norm(state: GaussianState, p: float) -> float:
    """(Tr rho^p)^(1/p) for finite p; the largest eigenvalue prod_j (d_j + 1/2)^-1 at p = inf."""
    if math.isinf(p):
        ds = symplectic_spectrum(state.cov, state.space)
        return math.exp(-sum(math.log(d + 0.5) for d in ds))
    return math.exp(_log_tr_rho_p(state, p) / p)


def power_cov(state: GaussianState, p: float) -> np.ndarray:
    """Covariance alpha g_p(abs(Delta^-1 alpha)) of the normalized p-th power state."""
    a = state.space.delta_inv @ state.cov
    g_mat = apply_spectral_function(a, lambda lam: g_p(abs(lam), p))
    ag = state.cov @ g_mat
    return 0.5 * (ag + ag.T)


def power_char_function(state: GaussianState, p: float, z) -> complex:
    """Tr rho^p W(z): the closed-form characteristic function of the unnormalized power."""
    z = np.asarray(z, dtype=float).reshape(-1)
    cov_p = power_cov(state, p)
    return tr_rho_p(state, p) * complex(
        np.exp(1j * state.mean @ z - 0.5 * z @ cov_p @ z)
    )


def gibbs_state(family: GibbsFamily, beta: float) -> GaussianState:
    """Gibbs state at inverse temperature beta: mean 0, alpha = (Delta/2) cot(beta eps Delta)."""
    if beta <= 0.0:
        raise ValueError(f"inverse temperature must be positive, got {beta}")
    space = family.space
    cot = matrix_cot(beta * family.epsilon @ space.delta)
    alpha = 0.5 * space.delta @ cot
    alpha = 0.5 * (alpha + alpha.T)
    return validate_state(np.zeros(space.dim), alpha, space)


def gibbs_asymptotic(family: GibbsFamily, beta: float) -> np.ndarray:
    """High-temperature comparator (2 beta epsilon)^-1 for the Gibbs covariance."""
    if beta <= 0.0:
        raise ValueError(f"inverse temperature must be positive, got {beta}")
    try:
        inv = np.linalg.inv(2.0 * beta * family.epsilon)
    except np.linalg.LinAlgError as exc:
        raise SingularEpsilonError("epsilon is singular") from exc
    return 0.5 * (inv + inv.T)
