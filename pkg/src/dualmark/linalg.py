"""Dense matrix helpers and a one-sided Jacobi singular value decomposition.

Matrices are plain 2-D ``float64`` numpy arrays. The SVD is computed here
(Hestenes one-sided Jacobi) rather than delegated to LAPACK so that the
factor ordering and signs are fully determined by this module.
"""

from typing import NamedTuple

import numpy as np

TOL = 1e-12
MAX_SWEEPS = 60


class SvdFactors(NamedTuple):
    """Thin SVD ``a = u @ diag(s) @ v.T`` with ``s`` sorted non-increasing."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` as a finite, non-empty 2-D matrix and return it as float64."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"matrix has a zero dimension: {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    return m


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def add(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _check_same_shape(a, b)
    return a + b


def subtract(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _check_same_shape(a, b)
    return a - b


def scale(a, factor: float):
    return as_matrix(a) * float(factor)


def transpose(a):
    return as_matrix(a).T.copy()


def multiply(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def _round_robin(n):
    """Pairings for one cyclic sweep: ``n - 1`` rounds of disjoint column pairs.

    Every unordered pair appears exactly once per sweep. An odd ``n`` gets a
    dummy slot ``n`` whose pairs are dropped.
    """
    slots = list(range(n + (n % 2)))
    m = len(slots)
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for k in range(m // 2):
            i, j = slots[k], slots[m - 1 - k]
            if i < n and j < n:
                p.append(min(i, j))
                q.append(max(i, j))
        if p:
            rounds.append((np.array(p), np.array(q)))
        slots = [slots[0], slots[-1]] + slots[1:-1]
    return rounds


def _complete_basis(u, keep):
    """Replace columns of ``u`` not flagged in ``keep`` with an orthonormal completion."""
    m, r = u.shape
    basis = [u[:, j] for j in range(r) if keep[j]]
    out = u.copy()
    candidate = 0
    for j in range(r):
        if keep[j]:
            continue
        while True:
            e = np.zeros(m)
            e[candidate] = 1.0
            candidate += 1
            # two passes of Gram-Schmidt for numerical orthogonality
            for _ in range(2):
                for b in basis:
                    e -= (b @ e) * b
            norm = np.linalg.norm(e)
            if norm > 1e-8:
                e /= norm
                break
        basis.append(e)
        out[:, j] = e
    return out


def _jacobi_tall(a):
    """One-sided Jacobi on a matrix with ``rows >= cols``."""
    m, n = a.shape
    # work at unit scale so squared column norms neither underflow nor overflow
    peak = np.max(np.abs(a))
    g = a / peak if peak > 0 else a.copy()
    v = np.eye(n)
    scale_sq = max(np.sum(g * g), np.finfo(float).tiny)
    negligible = (np.finfo(float).eps ** 2) * scale_sq
    rounds = _round_robin(n)

    for _ in range(MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            gp, gq = g[:, p], g[:, q]
            alpha = np.sum(gp * gp, axis=0)
            beta = np.sum(gq * gq, axis=0)
            gamma = np.sum(gp * gq, axis=0)
            active = (np.abs(gamma) > TOL * np.sqrt(alpha * beta)) & (alpha > negligible) & (beta > negligible)
            if not np.any(active):
                continue
            rotated = True
            p, q = p[active], q[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            gp, gq = g[:, p], g[:, q]
            g[:, p] = c * gp - s * gq
            g[:, q] = s * gp + c * gq
            vp, vq = v[:, p], v[:, q]
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if not rotated:
            break
    else:
        raise RuntimeError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")

    sigma = np.sqrt(np.sum(g * g, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma, g, v = sigma[order], g[:, order], v[:, order]

    keep = sigma > n * np.finfo(float).eps * max(sigma[0], np.finfo(float).tiny)
    u = np.zeros_like(g)
    u[:, keep] = g[:, keep] / sigma[keep]
    if not np.all(keep):
        u = _complete_basis(u, keep)
    if peak > 0:
        sigma = sigma * peak
    return u, sigma, v


def svd(a) -> SvdFactors:
    """Thin singular value decomposition of ``a``.

    Returns ``SvdFactors(u, s, v)`` with ``u`` of shape (m, r), ``v`` of
    shape (n, r) and ``r = min(m, n)``. Singular values are sorted
    non-increasing (ties keep original column order) and each column of
    ``u`` is signed so that its largest-magnitude entry is non-negative.
    """
    a = as_matrix(a)
    if a.shape[0] >= a.shape[1]:
        u, s, v = _jacobi_tall(a)
    else:
        v, s, u = _jacobi_tall(a.T)

    idx = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[idx, np.arange(u.shape[1])] < 0, -1.0, 1.0)
    return SvdFactors(u * signs, s, v * signs)


def singular_values(a) -> np.ndarray:
    return svd(a).s


def reconstruct(f: SvdFactors) -> np.ndarray:
    """Rebuild ``u @ diag(s) @ v.T``."""
    u, s, v = (np.asarray(x, dtype=np.float64) for x in f)
    if u.ndim != 2 or v.ndim != 2 or s.ndim != 1:
        raise ValueError("factors must be (matrix, vector, matrix)")
    if u.shape[1] != s.size or v.shape[1] != s.size:
        raise ValueError(f"inconsistent factor shapes: u {u.shape}, s {s.shape}, v {v.shape}")
    return (u * s) @ v.T
