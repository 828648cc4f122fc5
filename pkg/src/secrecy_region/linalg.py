"""Exact-size complex Hermitian linear algebra for small matrices (t >= 2).

Everything here operates on plain numpy arrays. Matrices are tiny (channel
dimension, typically 2..4), so the solvers favour simplicity and
determinism over asymptotic speed: Cholesky reduction of a definite pencil
to a standard Hermitian eigenproblem, solved in closed form for n = 2 and
by cyclic Jacobi rotations otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPositiveDefinite

#: off-diagonal Frobenius threshold (relative to ||A||_F) for Jacobi sweeps
JACOBI_TOL = 1e-13

#: absolute gap below which the top two eigenvalues count as degenerate
DEGENERACY_GAP = 1e-10


@dataclass(frozen=True)
class GenEigResult:
    """Largest generalized eigenpair of a Hermitian-definite pencil (A, B).

    eigenvalue   -- the maximum lambda with A e = lambda B e (real)
    eigenvector  -- unit-norm e, phase-fixed (see `phase_normalize`)
    residual     -- ||(A - lambda B) e||_2
    degenerate   -- True when the top two eigenvalues differ by < 1e-10
    """

    eigenvalue: float
    eigenvector: np.ndarray
    residual: float
    degenerate: bool


def as_complex_vector(entries) -> np.ndarray:
    """Validate and convert to a 1-D complex ndarray with finite entries."""
    v = np.asarray(entries, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError("vector entries must be finite")
    return v


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return (M + M^H)/2, forcing exact conjugate symmetry."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return 0.5 * (m + m.conj().T)


def identity_plus_rank_one(t: int, scale: float, v: np.ndarray) -> np.ndarray:
    """Build I + scale * v v^H, the Gram matrix every pencil here is made of."""
    v = as_complex_vector(v)
    if v.shape[0] != t:
        raise DimensionMismatch(f"vector length {v.shape[0]} != dimension {t}")
    return np.eye(t, dtype=complex) + scale * np.outer(v, v.conj())


def cholesky(m: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L L^H = M for Hermitian positive definite M.

    Raises NotPositiveDefinite on a non-positive pivot.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    low = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1):
            acc = a[i, j] - np.dot(low[i, :j], low[j, :j].conj())
            if i == j:
                pivot = acc.real
                if not (pivot > 0.0) or not math.isfinite(pivot):
                    raise NotPositiveDefinite(f"pivot {pivot} at index {i}")
                low[i, i] = math.sqrt(pivot)
            else:
                low[i, j] = acc / low[j, j]
    return low


def solve_lower(low: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve L X = B by forward substitution (B a vector or matrix)."""
    n = low.shape[0]
    rhs = np.asarray(b, dtype=complex)
    vec = rhs.ndim == 1
    x = rhs.reshape(n, -1).copy()
    for i in range(n):
        x[i, :] -= low[i, :i] @ x[:i, :]
        x[i, :] /= low[i, i]
    return x[:, 0] if vec else x


def solve_upper(up: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve U X = B by back substitution."""
    n = up.shape[0]
    rhs = np.asarray(b, dtype=complex)
    vec = rhs.ndim == 1
    x = rhs.reshape(n, -1).copy()
    for i in range(n - 1, -1, -1):
        x[i, :] -= up[i, i + 1:] @ x[i + 1:, :]
        x[i, :] /= up[i, i]
    return x[:, 0] if vec else x


def quadratic_form(v: np.ndarray, m: np.ndarray, w: np.ndarray) -> complex:
    """Return v^H M w.

    When v and w are the same vector and M is Hermitian the result is real
    up to rounding; the (tiny) imaginary part is clamped to exactly 0.
    """
    v = as_complex_vector(v)
    w = as_complex_vector(w)
    m = np.asarray(m, dtype=complex)
    if m.shape != (v.shape[0], w.shape[0]):
        raise DimensionMismatch(
            f"matrix shape {m.shape} incompatible with vectors "
            f"({v.shape[0]}, {w.shape[0]})"
        )
    out = complex(np.vdot(v, m @ w))
    if np.array_equal(v, w):
        out = complex(out.real, 0.0)
    return out


def eigh2(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns (eigenvalues descending, eigenvector columns). Uses the
    trace/determinant formula: eigenvalues mid +- r with
    r = sqrt(((a-d)/2)^2 + |b|^2).
    """
    a = float(m[0, 0].real)
    d = float(m[1, 1].real)
    b = complex(m[0, 1])
    mid = 0.5 * (a + d)
    z = 0.5 * (a - d)
    r = math.hypot(abs(b), z)
    vals = np.array([mid + r, mid - r])
    if r == 0.0 or abs(b) == 0.0:
        # already diagonal; order columns by descending diagonal
        if a >= d:
            vecs = np.eye(2, dtype=complex)
        else:
            vecs = np.array([[0, 1], [1, 0]], dtype=complex)
        return vals, vecs
    # eigenvector for mid + r: (A - (mid+r) I) x = 0 -> x = [b, (mid+r) - a]
    # choose the formula with the larger second component for stability
    if z <= 0:
        top = np.array([b, r - z], dtype=complex)
    else:
        top = np.array([r + z, b.conjugate()], dtype=complex)
    top /= np.linalg.norm(top)
    # the orthogonal complement in 2-D is unique up to phase
    bot = np.array([-top[1].conjugate(), top[0].conjugate()], dtype=complex)
    return vals, np.stack([top, bot], axis=1)


def jacobi_eigh(
    m: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Returns (eigenvalues descending, eigenvector columns). Convergence is
    declared when the off-diagonal Frobenius norm drops below
    tol * ||M||_F. The rotations run on plain Python scalars: for the
    tiny matrices this package deals with, that is much faster than
    numpy slicing.
    """
    hm = hermitize(m)
    n = hm.shape[0]
    a = [[complex(hm[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0.0 + 0j for j in range(n)] for i in range(n)]
    scale = float(np.linalg.norm(hm))
    if scale == 0.0:
        return np.zeros(n), np.eye(n, dtype=complex)
    threshold = tol * scale
    skip = threshold * 1e-3
    for _ in range(max_sweeps):
        off = math.sqrt(
            sum(abs(a[i][j]) ** 2 for i in range(n) for j in range(n) if i != j)
        )
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                app = a[p][p].real
                aqq = a[q][q].real
                u = apq / mag
                uc = u.conjugate()
                tau = (app - aqq) / (2.0 * mag)
                sign = 1.0 if tau >= 0 else -1.0
                t = -sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                su = s * u
                suc = s * uc
                # unitary R: R[p,p]=c, R[p,q]=s*u, R[q,p]=-s*conj(u), R[q,q]=c
                for k in range(n):  # A <- A R (columns p, q)
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = akp * c - akq * suc
                    a[k][q] = akp * su + akq * c
                for k in range(n):  # A <- R^H A (rows p, q)
                    apk = a[p][k]
                    aqk = a[q][k]
                    a[p][k] = apk * c - aqk * su
                    a[q][k] = apk * suc + aqk * c
                a[p][q] = 0.0 + 0j
                a[q][p] = 0.0 + 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)
                for k in range(n):  # V <- V R
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = vkp * c - vkq * suc
                    v[k][q] = vkp * su + vkq * c
    vals = np.array([a[i][i].real for i in range(n)])
    order = np.argsort(-vals, kind="stable")
    vecs = np.array(v, dtype=complex)
    return vals[order], vecs[:, order]


def hermitian_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All eigenpairs of a Hermitian matrix, eigenvalues descending.

    Dispatches to the closed form for n = 2 and cyclic Jacobi otherwise.
    """
    a = hermitize(m)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real]), np.ones((1, 1), dtype=complex)
    if n == 2:
        return eigh2(a)
    return jacobi_eigh(a)


def phase_normalize(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its first largest-magnitude entry is real >= 0.

    Deterministic: ties in magnitude resolve to the lowest index.
    """
    v = np.asarray(v, dtype=complex)
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    mag = abs(pivot)
    if mag == 0.0:
        return v.copy()
    out = v * (pivot.conjugate() / mag)
    out[idx] = mag  # exact, not merely up to rounding
    return out


def largest_gen_eig(a: np.ndarray, b: np.ndarray) -> GenEigResult:
    """Largest generalized eigenpair of the Hermitian-definite pencil (A, B).

    B must be Hermitian positive definite. The pencil is reduced through
    B = L L^H to the standard problem for L^-1 A L^-H, whose eigenvectors
    map back via x = L^-H y. The returned eigenvector has unit 2-norm and
    a deterministic phase.
    """
    a = hermitize(a)
    b = hermitize(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"pencil shapes differ: {a.shape} vs {b.shape}")
    low = cholesky(b)
    c = solve_lower(low, a)
    reduced = hermitize(solve_lower(low, c.conj().T).conj().T)
    vals, vecs = hermitian_eigh(reduced)
    lam = float(vals[0])
    degenerate = bool(len(vals) > 1 and (vals[0] - vals[1]) < DEGENERACY_GAP)
    x = solve_upper(low.conj().T, vecs[:, 0])
    x /= np.linalg.norm(x)
    x = phase_normalize(x)
    residual = float(np.linalg.norm(a @ x - lam * (b @ x)))
    return GenEigResult(lam, x, residual, degenerate)
