"""Dense complex Hermitian linear algebra.

Eigendecomposition, Moore-Penrose pseudoinverse, positive-semidefinite
square root and range projector for Hermitian matrices.  Numerical rank
decisions are always made relative to the largest eigenvalue through an
explicit ``rank_tol``; matrix comparisons are relative Frobenius.

The heavy lifting (eigenvalues, singular values) is delegated to LAPACK
through numpy; this module adds the Hermitian/PSD validation and the
rank-tolerance semantics the rest of the package relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

DEFAULT_RANK_TOL = 1e-10
DEFAULT_HERMITICITY_TOL = 1e-10


def as_matrix(m, *, square: bool = False) -> np.ndarray:
    """Coerce to a complex 2-D array and validate finiteness."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def fro_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value; 0 for an empty matrix."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def herm_part(m: np.ndarray) -> np.ndarray:
    return (m + dagger(m)) / 2


@dataclass(frozen=True)
class EigDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    matching orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eig(m, hermiticity_tol: float = DEFAULT_HERMITICITY_TOL) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when the Hermitian defect exceeds
    ``hermiticity_tol`` relative to the matrix scale, NoConvergence if
    the underlying iteration fails.
    """
    a = as_matrix(m, square=True)
    defect = fro_norm(a - dagger(a))
    if defect > hermiticity_tol * max(1.0, fro_norm(a)):
        raise NotHermitian(f"Hermitian defect {defect:.3e} exceeds tolerance")
    try:
        lam, vecs = np.linalg.eigh(herm_part(a))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise NoConvergence(str(exc)) from exc
    return EigDecomposition(np.asarray(lam, dtype=np.float64), vecs)


def _psd_eig(m, rank_tol: float, hermiticity_tol: float) -> EigDecomposition:
    # shared validation: Hermitian, then no eigenvalue below -rank_tol * lam_max
    dec = hermitian_eig(m, hermiticity_tol)
    lam = dec.eigenvalues
    lam_max = max(float(lam[-1]), 0.0) if lam.size else 0.0
    floor = rank_tol * lam_max + 1e-14 * max(1.0, float(np.abs(lam).max()) if lam.size else 0.0)
    if lam.size and float(lam[0]) < -floor:
        raise NotPSD(f"eigenvalue {lam[0]:.3e} below -{floor:.3e}")
    return dec


def pseudoinverse(m, rank_tol: float = DEFAULT_RANK_TOL,
                  hermiticity_tol: float = DEFAULT_HERMITICITY_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a Hermitian PSD matrix.

    Eigenvalues at or below ``rank_tol`` times the largest eigenvalue are
    treated as exact zeros.
    """
    dec = _psd_eig(m, rank_tol, hermiticity_tol)
    lam, v = dec.eigenvalues, dec.eigenvectors
    lam_max = max(float(lam[-1]), 0.0) if lam.size else 0.0
    keep = lam > rank_tol * lam_max
    inv = np.zeros_like(lam)
    inv[keep] = 1.0 / lam[keep]
    return (v * inv) @ dagger(v)


def psd_sqrt(m, rank_tol: float = DEFAULT_RANK_TOL,
             hermiticity_tol: float = DEFAULT_HERMITICITY_TOL) -> np.ndarray:
    """Hermitian PSD square root, clamping negligible negative eigenvalues to 0."""
    dec = _psd_eig(m, rank_tol, hermiticity_tol)
    lam, v = dec.eigenvalues, dec.eigenvectors
    root = np.sqrt(np.clip(lam, 0.0, None))
    return (v * root) @ dagger(v)


def range_projector(m, rank_tol: float = DEFAULT_RANK_TOL,
                    hermiticity_tol: float = DEFAULT_HERMITICITY_TOL) -> tuple[np.ndarray, int]:
    """Orthogonal projector onto the range of a Hermitian PSD matrix.

    Returns ``(projector, rank)`` where rank counts eigenvalues strictly
    above ``rank_tol`` times the largest one.
    """
    dec = _psd_eig(m, rank_tol, hermiticity_tol)
    lam, v = dec.eigenvalues, dec.eigenvectors
    lam_max = max(float(lam[-1]), 0.0) if lam.size else 0.0
    keep = lam > rank_tol * lam_max
    vr = v[:, keep]
    return vr @ dagger(vr), int(np.count_nonzero(keep))
