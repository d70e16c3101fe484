"""Dense real-matrix SVD via one-sided Jacobi rotations, with rank-k truncation.

All arithmetic is 64-bit. The Jacobi kernel is deterministic: a fixed
row-cyclic sweep order, no pivoting, no randomness, so repeated calls on the
same matrix return bit-identical factors.
"""

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

# Convergence: |a_p . a_q| <= JACOBI_TOL * ||a_p|| * ||a_q|| for every column
# pair, checked as a full rotation-free sweep.
JACOBI_TOL = 1e-12
MAX_SWEEPS = 30


class SvdConvergenceError(RuntimeError):
    """Jacobi sweeps hit the sweep limit before the columns decoupled."""

    def __init__(self, sweeps, residual):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(
            f"one-sided Jacobi did not converge in {sweeps} sweeps "
            f"(off-diagonal residual {residual:.3e})"
        )


def as_matrix(a):
    """Validate and return *a* as a 2-D float64 array with finite entries."""
    mat = np.asarray(a, dtype=np.float64)
    if mat.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={mat.ndim}")
    if mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be positive, got {mat.shape}")
    if not np.isfinite(mat).all():
        raise ValueError("matrix entries must be finite")
    return mat


@dataclass(frozen=True)
class SvdFactorization:
    """Thin SVD a = u @ diag(sigma) @ v.T with r = min(m, n) columns."""

    u: np.ndarray      # (m, r), orthonormal columns
    sigma: np.ndarray  # (r,), non-negative, non-increasing
    v: np.ndarray      # (n, r), orthonormal columns

    @property
    def rank(self):
        return self.sigma.shape[0]


@dataclass(frozen=True)
class TruncatedPlane:
    """First k singular triplets of one plane; the stored representation."""

    original_rows: int
    original_cols: int
    k: int
    u_k: np.ndarray      # (m, k)
    sigma_k: np.ndarray  # (k,)
    v_k: np.ndarray      # (n, k)


@njit(cache=True)
def _jacobi_kernel(a, v, tol, tiny, max_sweeps):
    """Orthogonalize the columns of *a* in place, accumulating rotations in *v*.

    Returns (sweeps_used, converged). Convergence means one full sweep
    changed nothing, i.e. every column pair already satisfied the relative
    tolerance. Columns whose norm falls to *tiny* (roundoff significance) are
    flushed to exact zero: their direction is noise, and without deflation
    the relative criterion is unattainable on rank-deficient input.
    """
    m, n = a.shape
    tiny_sq = tiny * tiny
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for i in range(m):
                    ap = a[i, p]
                    aq = a[i, q]
                    alpha += ap * ap
                    beta += aq * aq
                    gamma += ap * aq
                if alpha <= tiny_sq or beta <= tiny_sq:
                    for i in range(m):
                        if alpha <= tiny_sq and a[i, p] != 0.0:
                            a[i, p] = 0.0
                            rotated = True
                        if beta <= tiny_sq and a[i, q] != 0.0:
                            a[i, q] = 0.0
                            rotated = True
                    continue
                if abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                sign = 1.0 if zeta >= 0.0 else -1.0
                t = sign / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for i in range(m):
                    ap = a[i, p]
                    aq = a[i, q]
                    a[i, p] = c * ap - s * aq
                    a[i, q] = s * ap + c * aq
                for i in range(n):
                    vp = v[i, p]
                    vq = v[i, q]
                    v[i, p] = c * vp - s * vq
                    v[i, q] = s * vp + c * vq
        if not rotated:
            return sweep + 1, True
    return max_sweeps, False


def _offdiag_residual(work):
    """Largest |g_pq| / sqrt(g_pp * g_qq) over column pairs of *work*."""
    gram = work.T @ work
    d = np.diag(gram).copy()
    scale = np.sqrt(np.outer(d, d))
    off = np.abs(gram - np.diag(d))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(scale > 0.0, off / scale, np.where(off > 0.0, np.inf, 0.0))
    np.fill_diagonal(rel, 0.0)
    return float(rel.max())


def _complete_basis(u, missing):
    """Overwrite u[:, missing] with unit vectors orthogonal to every other
    column, derived deterministically from identity candidates.

    Missing columns are zeroed first so a single projection against the whole
    of u accounts for both the reliable columns and the slots already filled.
    """
    m = u.shape[0]
    u[:, missing] = 0.0
    slots = list(missing)
    for cand in range(m):
        if not slots:
            return
        w = -u @ u[cand, :]
        w[cand] += 1.0
        w -= u @ (u.T @ w)  # second pass for numerical orthogonality
        norm = float(np.sqrt(w @ w))
        if norm > 0.5:
            u[:, slots.pop(0)] = w / norm
    for j in slots:  # no candidate cleared 0.5: take the best one per slot
        best = None
        best_norm = -1.0
        for cand in range(m):
            w = -u @ u[cand, :]
            w[cand] += 1.0
            w -= u @ (u.T @ w)
            norm = float(np.sqrt(w @ w))
            if norm > best_norm:
                best_norm = norm
                best = w
        w = best / best_norm
        w -= u @ (u.T @ w)  # extra pass: the rescale above magnifies residue
        u[:, j] = w / float(np.sqrt(w @ w))


def _svd_tall(a):
    """One-sided Jacobi SVD of a tall-or-square matrix (m >= n)."""
    m, n = a.shape
    # Exact power-of-two pre-scaling keeps column norms near unity, well away
    # from underflow; the division and the final re-scale are both exact.
    amax = float(np.abs(a).max())
    scale = 2.0 ** round(math.log2(amax)) if amax > 0.0 else 1.0
    work = np.array(a / scale, dtype=np.float64, order="F")
    v = np.asfortranarray(np.eye(n))
    eps = np.finfo(np.float64).eps
    tiny = eps * max(m, n) * float(np.sqrt(np.sum(work * work)))
    sweeps, converged = _jacobi_kernel(work, v, JACOBI_TOL, tiny, MAX_SWEEPS)
    if not converged:
        raise SvdConvergenceError(sweeps, _offdiag_residual(work))

    norms = np.sqrt(np.einsum("ij,ij->j", work, work))
    order = np.argsort(-norms, kind="stable")  # stable: ties keep sweep order
    colnorm = norms[order]
    sigma = colnorm * scale
    u = np.ascontiguousarray(work[:, order])
    v = np.ascontiguousarray(v[:, order])

    # Columns at roundoff scale have no reliable direction: snap the singular
    # value to exactly zero and complete u to an orthonormal basis.
    cutoff = sigma[0] * max(m, n) * eps
    reliable = sigma > cutoff
    sigma[~reliable] = 0.0
    u[:, reliable] /= colnorm[reliable]
    missing = np.nonzero(~reliable)[0]
    if missing.size:
        _complete_basis(u, missing)
    return u, sigma, v


def svd(a):
    """Factor *a* as u @ diag(sigma) @ v.T with sigma sorted descending.

    Wide matrices are factored through their transpose so a single kernel
    handles both orientations. Each (u_i, v_i) pair is sign-normalized so the
    largest-magnitude entry of u_i is non-negative.
    """
    mat = as_matrix(a)
    m, n = mat.shape
    if m >= n:
        u, sigma, v = _svd_tall(mat)
    else:
        v, sigma, u = _svd_tall(mat.T)

    largest = np.abs(u).argmax(axis=0)  # first occurrence breaks ties
    flip = u[largest, np.arange(u.shape[1])] < 0.0
    u[:, flip] *= -1.0
    v[:, flip] *= -1.0
    return SvdFactorization(u=u, sigma=sigma, v=v)


def truncate(f, k):
    """Keep the first k singular triplets of *f*; no recomputation."""
    if not 1 <= k <= f.rank:
        raise ValueError(f"k must be in [1, {f.rank}], got {k}")
    return TruncatedPlane(
        original_rows=f.u.shape[0],
        original_cols=f.v.shape[0],
        k=int(k),
        u_k=f.u[:, :k].copy(),
        sigma_k=f.sigma[:k].copy(),
        v_k=f.v[:, :k].copy(),
    )


def reconstruct(p):
    """Rank-k reconstruction sum_i sigma_i * u_i * v_i.T of one plane.

    Entries may fall outside [0, 255]; clamping is the codec's job.
    """
    return (p.u_k * p.sigma_k) @ p.v_k.T


def frobenius_energy(a):
    """Sum of squared entries (pairwise summation keeps roundoff tiny)."""
    mat = as_matrix(a)
    return float(np.sum(mat * mat))
