"""Symplectic-space conventions and eigendecomposition-based matrix kernels.

Conventions used throughout the package:

* mode ordering (q1, p1, q2, p2, ...), so the commutation form is the
  block-diagonal Delta = diag([[0, 1], [-1, 0]], ...) with Delta^2 = -I and
  det Delta = 1;
* [q, p] = i, vacuum covariance (1/2) I, symplectic eigenvalues d_j >= 1/2;
* matrix functions are evaluated through one complex eigendecomposition
  kernel with a conditioning cap and an explicit real-projection guard.

Matrix norms in tolerance checks are Frobenius norms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ImagResidualError,
    NonDiagonalizableError,
    NotHermitianError,
    NotSymmetricError,
    PairingFailureError,
    SpectralPoleError,
    SpectrumNotImaginaryError,
)

# Default tolerances; calibrated for double precision and 2s <= ~40.
TOL_SYM = 1e-10        # relative, symmetry checks
TOL_HERM = 1e-10       # relative, Hermiticity checks
TOL_SPEC = 1e-8        # relative, spectrum checks (imaginary pairing, d >= 1/2 slack)
TOL_IMAG = 1e-9        # relative, imaginary residual of real-projected matrix functions
TOL_RECONSTRUCT = 1e-7  # relative, eigendecomposition reconstruction residual
COND_CAP = 1e8         # eigenvector conditioning cap
PSD_SLACK = 1e-10      # relative PSD slack: lambda_min >= -PSD_SLACK * ||H||


@dataclass(frozen=True, eq=False)
class SymplecticSpace:
    """Mode count s and the 2s x 2s commutation form Delta."""

    s: int
    delta: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.s

    @property
    def delta_inv(self) -> np.ndarray:
        # Delta^2 = -I in this basis, so the inverse is -Delta.
        return -self.delta


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Right eigendecomposition A = V diag(eigenvalues) V^-1."""

    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray
    condition_estimate: float


def standard_form(s: int) -> SymplecticSpace:
    """Build the standard s-mode symplectic space, ordering (q1, p1, q2, p2, ...)."""
    if s < 1:
        raise ValueError(f"mode count must be a positive integer, got {s}")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    delta = np.kron(np.eye(s), block)
    return SymplecticSpace(s=int(s), delta=delta)


def spectral_decomposition(a: np.ndarray, cond_cap: float = COND_CAP) -> SpectralDecomposition:
    """Eigendecompose a real square matrix, rejecting ill-conditioned eigenbases.

    Raises NonDiagonalizableError when the eigenvector condition number
    exceeds ``cond_cap`` or the reconstruction residual is out of tolerance.
    """
    a = np.asarray(a, dtype=float)
    w, v = np.linalg.eig(a)
    cond = float(np.linalg.cond(v))
    if not np.isfinite(cond) or cond > cond_cap:
        raise NonDiagonalizableError(
            f"eigenvector condition estimate {cond:.3e} exceeds cap {cond_cap:.1e}"
        )
    recon = v @ np.diag(w) @ np.linalg.inv(v)
    scale = np.linalg.norm(a)
    resid = np.linalg.norm(recon - a)
    if resid > TOL_RECONSTRUCT * max(scale, 1e-300):
        raise NonDiagonalizableError(
            f"reconstruction residual {resid:.3e} exceeds {TOL_RECONSTRUCT:.1e} * ||A||"
        )
    return SpectralDecomposition(eigenvalues=w, right_eigenvectors=v, condition_estimate=cond)


def apply_spectral_function(
    a: np.ndarray,
    f: Callable[[complex], complex],
    cond_cap: float = COND_CAP,
    tol_imag: float = TOL_IMAG,
) -> np.ndarray:
    """Evaluate the matrix function f(A) = Re(V f(Lambda) V^-1) for real A.

    The scalar ``f`` is applied to each eigenvalue; a non-finite value raises
    SpectralPoleError.  The imaginary residual of V f(Lambda) V^-1 must stay
    below ``tol_imag`` relative to the result norm, else ImagResidualError.
    """
    dec = spectral_decomposition(a, cond_cap=cond_cap)
    fw = np.array([f(lam) for lam in dec.eigenvalues], dtype=complex)
    if not np.all(np.isfinite(fw)):
        raise SpectralPoleError("scalar function returned a non-finite value on the spectrum")
    v = dec.right_eigenvectors
    m = v @ np.diag(fw) @ np.linalg.inv(v)
    scale = np.linalg.norm(m)
    if np.linalg.norm(m.imag) > tol_imag * scale:
        raise ImagResidualError(
            f"imaginary residual {np.linalg.norm(m.imag):.3e} exceeds "
            f"{tol_imag:.1e} * ||result|| = {tol_imag * scale:.3e}"
        )
    return m.real


def _check_spectrum_imaginary(w: np.ndarray, tol: float = TOL_SPEC) -> None:
    bad = np.abs(w.real) > tol * np.abs(w)
    if np.any(bad):
        worst = w[bad][np.argmax(np.abs(w[bad].real))]
        raise SpectrumNotImaginaryError(
            f"eigenvalue {worst} has real part beyond {tol:.1e} * |lambda|"
        )


def matrix_abs(a: np.ndarray) -> np.ndarray:
    """abs(A) for a real matrix with purely imaginary spectrum +-i d_j.

    Intended for A = Delta^-1 alpha with symmetric alpha; the result has the
    moduli d_j as eigenvalues on the same eigenvectors.
    """
    dec = spectral_decomposition(np.asarray(a, dtype=float))
    _check_spectrum_imaginary(dec.eigenvalues)
    return apply_spectral_function(a, abs)


def symplectic_spectrum(alpha: np.ndarray, space: SymplecticSpace) -> np.ndarray:
    """Symplectic spectrum {d_j}: ascending moduli of the eigenvalues of Delta^-1 alpha.

    The 2s eigenvalues must occur in +-i d pairs; each modulus is returned once.
    """
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (space.dim, space.dim):
        raise ValueError(f"expected shape {(space.dim, space.dim)}, got {alpha.shape}")
    scale = np.linalg.norm(alpha)
    if np.linalg.norm(alpha - alpha.T) > TOL_SYM * max(scale, 1e-300):
        raise NotSymmetricError("covariance matrix is not symmetric within tolerance")
    w = np.linalg.eigvals(space.delta_inv @ alpha)
    _check_spectrum_imaginary(w)
    mods = np.sort(np.abs(w))
    pair_gap = np.abs(mods[1::2] - mods[0::2])
    if np.any(pair_gap > TOL_SPEC * np.maximum(mods[1::2], 1.0)):
        raise PairingFailureError(
            f"eigenvalue moduli do not pair within tolerance: gaps {pair_gap}"
        )
    return 0.5 * (mods[0::2] + mods[1::2])


def _cot(z: complex) -> complex:
    # cot has poles at real integer multiples of pi (z = 0 included); the
    # tolerance sits below 1/(2 * overflow cap) so sweeps hit the cap first
    nearest = np.pi * np.round(z.real / np.pi)
    if abs(z - nearest) < 1e-13:
        raise SpectralPoleError(f"cot evaluated within 1e-13 of a pole at {nearest}")
    return 1.0 / np.tan(z)


def matrix_cot(x: np.ndarray) -> np.ndarray:
    """cot(X) for a real matrix with purely imaginary spectrum.

    On the spectrum +-i t this is -+i coth(t); the result is real.  Used for
    X = beta epsilon Delta in Gibbs covariances.
    """
    dec = spectral_decomposition(np.asarray(x, dtype=float))
    _check_spectrum_imaginary(dec.eigenvalues)
    return apply_spectral_function(x, _cot)


def check_psd_hermitian(h: np.ndarray, tol: float) -> tuple[bool, float]:
    """Check lambda_min(H) >= -tol for complex Hermitian H; returns (ok, lambda_min)."""
    h = np.asarray(h, dtype=complex)
    scale = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > TOL_HERM * max(scale, 1e-300):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    lam_min = float(np.linalg.eigvalsh(0.5 * (h + h.conj().T)).min())
    return lam_min >= -tol, lam_min
