"""Single-mode truncated Fock-space oracle.

Brute-force counterpart of the closed forms: states, Weyl operators, Schatten
powers and the attenuator channel are realized as dense complex matrices on
the basis {|0>, ..., |n_max>}.  Every quantity computed here is independent
of the covariance-matrix machinery, so agreement between the two is a real
check, not a tautology.

Truncation error is controlled by a doubling protocol: recompute the final
scalar (or small array) at 2 * n_max and require agreement within ten times
the tail bound; see :func:`doubling_check`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import (
    DimensionMismatchError,
    NotDensityOperatorError,
    TailTooLargeError,
    TruncationInsufficientError,
)

TAIL_BOUND = 1e-12
HERM_TOL = 1e-12
EIG_CLAMP = 1e-15


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Dense complex matrix on the Fock basis {|0>, ..., |n_max>}."""

    n_max: int
    matrix: np.ndarray


def ladder_operators(n_max: int) -> tuple[TruncatedOperator, TruncatedOperator]:
    """Annihilation and creation matrices; a|n> = sqrt(n)|n-1>, truncated."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    a = np.diag(np.sqrt(np.arange(1.0, n_max + 1)), k=1).astype(complex)
    return (
        TruncatedOperator(n_max=n_max, matrix=a),
        TruncatedOperator(n_max=n_max, matrix=a.conj().T),
    )


def quadratures(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """q = (a + a^dag)/sqrt(2), p = i (a^dag - a)/sqrt(2); [q, p] = i below the cutoff."""
    a, a_dag = ladder_operators(n_max)
    q = (a.matrix + a_dag.matrix) / math.sqrt(2.0)
    p = 1j * (a_dag.matrix - a.matrix) / math.sqrt(2.0)
    return q, p


def weyl_operator(z, n_max: int) -> TruncatedOperator:
    """exp(i (x q + y p)) for z = (x, y); unitary up to truncation error.

    The matrix is exact only well below the cutoff; certify convergence of any
    derived scalar with :func:`doubling_check`.
    """
    x, y = np.asarray(z, dtype=float).reshape(2)
    q, p = quadratures(n_max)
    return TruncatedOperator(n_max=n_max, matrix=expm(1j * (x * q + y * p)))


def thermal_state_fock(N: float, n_max: int, tail_bound: float = TAIL_BOUND) -> TruncatedOperator:
    """Thermal state, diagonal p_n = N^n / (N+1)^(n+1); not renormalized.

    The neglected tail (N/(N+1))^(n_max+1) must stay below ``tail_bound``.
    """
    if N < 0.0:
        raise ValueError(f"mean photon number must be nonnegative, got {N}")
    tail = (N / (N + 1.0)) ** (n_max + 1) if N > 0.0 else 0.0
    if tail >= tail_bound:
        raise TailTooLargeError(
            f"truncation tail {tail:.3e} >= {tail_bound:.1e}; raise n_max above "
            f"{math.ceil(-math.log(tail_bound) / math.log1p(1.0 / N)) if N > 0 else n_max}"
        )
    ns = np.arange(n_max + 1)
    pn = np.exp(ns * math.log(N) - (ns + 1) * math.log(N + 1.0)) if N > 0.0 else np.eye(n_max + 1)[0]
    return TruncatedOperator(n_max=n_max, matrix=np.diag(pn.astype(complex)))


def default_n_max(N: float) -> int:
    """Cutoff heuristic: 80 covers N <= 1, 160 covers N <= 3 at the default tail bound."""
    return 80 if N <= 1.0 else 160


def assert_density_operator(rho: TruncatedOperator, tail_bound: float = TAIL_BOUND) -> None:
    """Hermitian within 1e-12, trace within the tail bound of 1, eigenvalues >= -1e-12."""
    m = rho.matrix
    if np.linalg.norm(m - m.conj().T) > HERM_TOL * max(np.linalg.norm(m), 1e-300):
        raise NotDensityOperatorError("matrix is not Hermitian within 1e-12")
    if abs(np.trace(m).real - 1.0) > tail_bound:
        raise NotDensityOperatorError(f"trace {np.trace(m).real!r} deviates from 1 beyond the tail bound")
    lam_min = float(np.linalg.eigvalsh(m).min())
    if lam_min < -HERM_TOL:
        raise NotDensityOperatorError(f"negative eigenvalue {lam_min:.3e}")


def tr_power_fock(rho: TruncatedOperator, p: float) -> float:
    """Tr rho^p by Hermitian diagonalization, tiny eigenvalues clamped to zero."""
    assert_density_operator(rho)
    lam = np.linalg.eigvalsh(rho.matrix)
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    return float(np.sum(lam**p))


def matrix_power_fock(rho: TruncatedOperator, p: float, normalize: bool = False) -> TruncatedOperator:
    """rho^p via Hermitian eigendecomposition; optionally normalized to unit trace."""
    assert_density_operator(rho)
    lam, u = np.linalg.eigh(rho.matrix)
    lam = np.where(lam < EIG_CLAMP, 0.0, lam)
    powered = (u * lam**p) @ u.conj().T
    if normalize:
        powered = powered / np.trace(powered).real
    return TruncatedOperator(n_max=rho.n_max, matrix=powered)


def char_function_fock(rho: TruncatedOperator, z, n_max: int) -> complex:
    """Tr(rho W(z)) on the truncated space."""
    if rho.n_max != n_max:
        raise DimensionMismatchError(f"rho lives at n_max={rho.n_max}, requested {n_max}")
    w = weyl_operator(z, n_max)
    return complex(np.trace(rho.matrix @ w.matrix))


def attenuator_kraus(tau: float, n_max: int) -> list[TruncatedOperator]:
    """Binomial Kraus family of the attenuation channel K = sqrt(tau) I.

    <n-j| A_j |n> = sqrt(C(n, j)) tau^((n-j)/2) (1-tau)^(j/2); identically zero
    operators (j >= 1 at tau = 1) are dropped.
    """
    if not (0.0 < tau <= 1.0):
        raise ValueError(f"transmissivity must be in (0, 1], got {tau}")
    dim = n_max + 1
    ops = []
    log_tau = math.log(tau)
    log_one_minus = math.log1p(-tau) if tau < 1.0 else -math.inf
    for j in range(dim):
        mat = np.zeros((dim, dim), dtype=complex)
        loss_term = j * log_one_minus if j > 0 else 0.0
        for n in range(j, dim):
            log_amp = 0.5 * (
                gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
                + (n - j) * log_tau + loss_term
            )
            mat[n - j, n] = math.exp(log_amp) if np.isfinite(log_amp) else 0.0
        if np.any(mat != 0.0):
            ops.append(TruncatedOperator(n_max=n_max, matrix=mat))
    return ops


def apply_kraus(kraus: list[TruncatedOperator], rho: TruncatedOperator) -> TruncatedOperator:
    """sum_j A_j rho A_j^dag."""
    if any(op.n_max != rho.n_max for op in kraus):
        raise DimensionMismatchError("Kraus operators and state have different cutoffs")
    out = np.zeros_like(rho.matrix)
    for op in kraus:
        out = out + op.matrix @ rho.matrix @ op.matrix.conj().T
    return TruncatedOperator(n_max=rho.n_max, matrix=out)


def covariance_from_fock(rho: TruncatedOperator) -> tuple[np.ndarray, np.ndarray]:
    """First and second moments: m_j = Tr rho R_j, alpha = Tr rho {R - m, R - m}/2.

    Subject to truncation error near the cutoff; certify with
    :func:`doubling_check` on a builder that regenerates rho at 2 n_max.
    """
    assert_density_operator(rho)
    q, p = quadratures(rho.n_max)
    mean = np.array([np.trace(rho.matrix @ q).real, np.trace(rho.matrix @ p).real])
    qc, pc = q - mean[0] * np.eye(rho.n_max + 1), p - mean[1] * np.eye(rho.n_max + 1)
    cov = np.empty((2, 2))
    for i, a in enumerate((qc, pc)):
        for k, b in enumerate((qc, pc)):
            cov[i, k] = 0.5 * np.trace(rho.matrix @ (a @ b + b @ a)).real
    return mean, cov


def doubling_check(
    build: Callable[[int], object],
    n_max: int,
    tail_bound: float = TAIL_BOUND,
):
    """Evaluate ``build`` at n_max and 2 n_max; demand agreement within 10x the tail bound.

    ``build`` must map a cutoff to a scalar or an ndarray (the final quantity of
    interest, not a raw truncated matrix).  Returns the 2 n_max value, raising
    TruncationInsufficientError with a suggested cutoff on disagreement.
    """
    coarse = np.asarray(build(n_max))
    fine = np.asarray(build(2 * n_max))
    diff = float(np.max(np.abs(coarse - fine)))
    if diff > 10.0 * tail_bound:
        raise TruncationInsufficientError(
            f"doubling n_max={n_max} moved the result by {diff:.3e} > "
            f"10 * {tail_bound:.1e}; retry with n_max >= {2 * n_max}",
            suggested_n_max=2 * n_max,
        )
    return fine if fine.ndim else fine.item()
