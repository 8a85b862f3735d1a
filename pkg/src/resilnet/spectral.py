"""Dense symmetric eigendecomposition and Laplacian/adjacency spectral measures."""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import NoConvergenceError, NotConnectedError, NotSymmetricError
from .graph import adjacency_matrix, laplacian_matrix
from .utils.validation import check_graph

__all__ = [
    "SpectralSummary",
    "symmetric_eigen",
    "sign_normalize",
    "laplacian_spectrum",
    "adjacency_spectrum",
    "algebraic_connectivity",
    "spectral_gap",
    "zero_multiplicity",
    "fiedler_vector",
    "spectral_summary",
]

_SIGN_EPS = 1e-12


def sign_normalize(V):
    """Flip columns of ``V`` so each column's first entry above 1e-12 in magnitude is positive."""
    V = np.array(V, dtype=float, copy=True)
    for k in range(V.shape[1]):
        col = V[:, k]
        nz = np.flatnonzero(np.abs(col) > _SIGN_EPS)
        if nz.size and col[nz[0]] < 0:
            V[:, k] = -col
    return V


def _jacobi_eigen(M, max_sweeps=100):
    """Cyclic Jacobi rotations; returns unsorted ``(eigenvalues, eigenvectors)``."""
    A = np.array(M, dtype=float, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    scale = max(1.0, np.abs(A).sum(axis=1).max()) if n else 1.0
    # off-diagonal mass below rounding level of the whole matrix counts as zero
    tol = max(n, 1) * np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol:
            return np.diag(A).copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-3 * tol / max(n, 1):
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    raise NoConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")


def symmetric_eigen(M, method="lapack"):
    """Eigen-decompose a real symmetric matrix.

    Parameters
    ----------
    M : (n, n) array_like
        Must be symmetric to within ``1e-12 * max(1, ||M||_inf)``.
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls ``numpy.linalg.eigh``; ``"jacobi"`` runs cyclic
        Jacobi rotations (slower, useful as an independent cross-check).

    Returns
    -------
    eigenvalues : (n,) ndarray, ascending
    eigenvectors : (n, n) ndarray, orthonormal columns, sign-normalised
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, np.abs(M).sum(axis=1).max()) if M.size else 1.0
    if M.size and np.abs(M - M.T).max() > 1e-12 * scale:
        raise NotSymmetricError("matrix is not symmetric")
    M = (M + M.T) / 2.0
    if method == "lapack":
        w, V = np.linalg.eigh(M)
    elif method == "jacobi":
        w, V = _jacobi_eigen(M)
        order = np.argsort(w, kind="stable")
        w, V = w[order], V[:, order]
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    return w, sign_normalize(V)


def laplacian_spectrum(g, weighted=False, method="lapack"):
    """Laplacian eigenvalues, ascending."""
    check_graph(g)
    return symmetric_eigen(laplacian_matrix(g, weighted), method)[0]


def adjacency_spectrum(g, weighted=False, method="lapack"):
    """Adjacency eigenvalues, descending."""
    check_graph(g)
    return symmetric_eigen(adjacency_matrix(g, weighted), method)[0][::-1]


def algebraic_connectivity(g, weighted=False):
    """Second-smallest Laplacian eigenvalue; zero (up to rounding) iff disconnected."""
    check_graph(g, min_nodes=2)
    return _clip_zero(laplacian_spectrum(g, weighted)[1], g.n_nodes)


def spectral_gap(g, kind="laplacian", weighted=False):
    """Difference between the two largest eigenvalues.

    ``kind="laplacian"`` gives ``lambda_n - lambda_{n-1}``;
    ``kind="adjacency"`` gives ``phi_1 - phi_2``.
    """
    check_graph(g, min_nodes=2)
    if kind == "laplacian":
        lam = laplacian_spectrum(g, weighted)
        return float(lam[-1] - lam[-2])
    if kind == "adjacency":
        phi = adjacency_spectrum(g, weighted)
        return float(phi[0] - phi[1])
    raise ValueError(f"kind must be 'laplacian' or 'adjacency', got {kind!r}")


def _default_zero_tol(n):
    return 1e-9 * max(n, 1)


def _clip_zero(value, n):
    # rounding noise around a true zero eigenvalue is reported as exactly 0
    return 0.0 if abs(value) < _default_zero_tol(n) else float(value)


def zero_multiplicity(g, tol=None, eigenvalues=None):
    """Number of Laplacian eigenvalues below ``tol`` (default ``1e-9 * n``)."""
    check_graph(g)
    lam = laplacian_spectrum(g) if eigenvalues is None else np.asarray(eigenvalues)
    tol = _default_zero_tol(g.n_nodes) if tol is None else tol
    return int((lam < tol).sum())


def fiedler_vector(g, weighted=False):
    """Unit eigenvector of the algebraic connectivity, sign-normalised."""
    check_graph(g, min_nodes=2)
    lam, V = symmetric_eigen(laplacian_matrix(g, weighted))
    if lam[1] < _default_zero_tol(g.n_nodes):
        raise NotConnectedError("Fiedler vector is undefined on a disconnected graph")
    return V[:, 1]


@dataclass(frozen=True)
class SpectralSummary:
    laplacian_eigenvalues: np.ndarray
    adjacency_eigenvalues: np.ndarray
    algebraic_connectivity: float
    spectral_gap: float
    spectral_gap_adjacency: float
    zero_multiplicity: int
    fiedler_vector: np.ndarray = None

    @property
    def spectral_radius(self):
        return float(self.adjacency_eigenvalues[0])

    @property
    def is_connected(self):
        return self.zero_multiplicity == 1


def spectral_summary(g, weighted=False, zero_tol=None):
    check_graph(g, min_nodes=2)
    lam, V = symmetric_eigen(laplacian_matrix(g, weighted))
    phi = symmetric_eigen(adjacency_matrix(g, weighted))[0][::-1]
    mult = zero_multiplicity(g, tol=zero_tol, eigenvalues=lam)
    return SpectralSummary(
        laplacian_eigenvalues=lam,
        adjacency_eigenvalues=phi,
        algebraic_connectivity=_clip_zero(lam[1], g.n_nodes),
        spectral_gap=float(lam[-1] - lam[-2]),
        spectral_gap_adjacency=float(phi[0] - phi[1]),
        zero_multiplicity=mult,
        fiedler_vector=V[:, 1] if mult == 1 else None,
    )
