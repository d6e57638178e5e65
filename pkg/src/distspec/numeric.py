"""Floating-point symmetric eigendecomposition by cyclic Jacobi rotations."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# eigenvalues this close to an excluded value are treated as equal to it
EXCLUSION_TOL = 1e-6


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


def scaled_tol(d: np.ndarray, base: float = 1e-8) -> float:
    """Verification tolerance ``base * n * max|D|``."""
    d = np.asarray(d)
    if d.size == 0:
        return base
    return base * d.shape[0] * max(float(np.max(np.abs(d))), 1.0)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(d, tol: float = 1e-13, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of symmetric ``d``.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||d||_F``.
    """
    a = np.array(d, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = max(float(np.linalg.norm(a)), 1.0)
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * scale):
        raise ValueError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    threshold = tol * scale
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = _off_norm(a)
        if off >= threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigen_decomposition(d, tol: float = 1e-13, max_sweeps: int = 100) -> list[EigenPair]:
    w, v = jacobi_eigh(d, tol=tol, max_sweeps=max_sweeps)
    return [EigenPair(float(w[i]), v[:, i].copy()) for i in range(len(w))]


def residual(d, lam: float, y) -> float:
    """``||D y - lam y||_inf``."""
    d = np.asarray(d, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        return 0.0
    return float(np.max(np.abs(d @ y - lam * y)))
