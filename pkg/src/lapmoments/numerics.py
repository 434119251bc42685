"""Small dense symmetric kernels: Jacobi eigenvalues, a pivoted LDL^T
semidefiniteness test, and exact integer matrix powers."""

from __future__ import annotations

import numpy as np

__all__ = [
    "ConvergenceError",
    "WIDE_INT_LIMIT",
    "check_wide",
    "as_symmetric",
    "sym_eigenvalues",
    "ldlt_psd",
    "int_matrix_powers",
    "int_power_trace",
    "int_power_traces",
]

# Integers are exact in Python; this is the policy limit for "wide" (128-bit) values.
WIDE_INT_LIMIT = 2**127


class ConvergenceError(RuntimeError):
    """An iterative routine did not converge within its iteration cap."""


def check_wide(value: int, what: str = "value") -> int:
    """Raise ``OverflowError`` when an integer leaves the signed 128-bit range."""
    if not -WIDE_INT_LIMIT <= value < WIDE_INT_LIMIT:
        raise OverflowError(f"{what} exceeds the 128-bit integer range")
    return value


def as_symmetric(a, rtol: float = 1e-12) -> np.ndarray:
    """Return ``a`` as a float symmetric matrix, symmetrised by averaging.

    Raises ``ValueError`` if the input is not square or is asymmetric beyond
    ``rtol`` relative to its largest entry.
    """
    s = np.array(a, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(s)))) if s.size else 1.0
    if s.size and np.max(np.abs(s - s.T)) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (s + s.T)


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> np.ndarray:
    n = a.shape[0]
    norm = np.linalg.norm(a)
    if n < 2 or norm == 0.0:
        return np.diag(a).copy()
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * norm:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def sym_eigenvalues(
    s, tol: float = 1e-14, backend: str = "jacobi", max_sweeps: int = 100
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix in ascending order.

    The default backend is a cyclic Jacobi iteration that stops once the
    off-diagonal Frobenius mass drops below ``tol`` times the matrix norm.
    ``backend="lapack"`` delegates to :func:`numpy.linalg.eigvalsh`.
    """
    a = as_symmetric(s)
    if a.shape[0] == 0:
        raise ValueError("matrix must have order at least 1")
    if backend == "lapack":
        return np.sort(np.linalg.eigvalsh(a))
    if backend != "jacobi":
        raise ValueError(f"unknown eigenvalue backend {backend!r}")
    return np.sort(_jacobi(a, tol, max_sweeps))


def ldlt_psd(s, eps: float = 1e-10) -> tuple[bool, list[float]]:
    """Test positive semidefiniteness by LDL^T with diagonal pivoting.

    At each step the largest remaining diagonal entry is eliminated. The
    matrix passes when every pivot is at least ``-eps * scale`` where
    ``scale = max(1, sum |s_ii|)``; once the remaining diagonal is within the
    threshold of zero the leftover block must itself be negligible. Returns
    the verdict and the pivots taken.
    """
    a = as_symmetric(s)
    n = a.shape[0]
    thr = eps * max(1.0, float(np.sum(np.abs(np.diag(a)))))
    pivots: list[float] = []
    for k in range(n):
        rest = a[k:, k:]
        j = k + int(np.argmax(np.diag(rest)))
        piv = a[j, j]
        if piv <= thr:
            # PSD with (near) zero diagonal forces a (near) zero block
            pivots.extend(float(x) for x in np.sort(np.diag(rest))[::-1])
            ok = piv >= -thr and float(np.max(np.abs(rest))) <= thr
            return ok, pivots
        if j != k:
            a[[k, j], :] = a[[j, k], :]
            a[:, [k, j]] = a[:, [j, k]]
        pivots.append(float(piv))
        col = a[k + 1 :, k].copy()
        a[k + 1 :, k + 1 :] -= np.outer(col, col) / piv
    return True, pivots


def _to_ints(m) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in np.asarray(m).tolist()]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("integer matrix must be square")
    return rows


def int_matrix_powers(m, kmax: int) -> list[np.ndarray]:
    """Exact powers ``M^1 .. M^kmax`` of a square integer matrix.

    Uses int64 arithmetic when an a-priori entry bound (``||M||_inf^k``)
    guarantees no wraparound, Python integers otherwise.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    rows = _to_ints(m)
    n = len(rows)
    row_norm = max((sum(abs(x) for x in r) for r in rows), default=0)
    if row_norm ** max(kmax, 1) < 2**62:
        base = np.array(rows, dtype=np.int64).reshape(n, n)
    else:
        base = np.empty((n, n), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                base[i, j] = x
    powers = [base]
    for _ in range(kmax - 1):
        nxt = powers[-1].dot(base)
        if nxt.dtype == object:
            for x in nxt.flat:
                check_wide(int(x), "matrix power entry")
        powers.append(nxt)
    return powers


def int_power_trace(m, k: int) -> int:
    """Exact ``trace(M^k)`` for an integer matrix, ``k >= 1``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return check_wide(int(sum(int(x) for x in np.diag(int_matrix_powers(m, k)[-1]))), "trace")


def int_power_traces(m, kmax: int) -> list[int]:
    """``[trace(M^1), ..., trace(M^kmax)]`` computed exactly."""
    return [
        check_wide(int(sum(int(x) for x in np.diag(p))), "trace") for p in int_matrix_powers(m, kmax)
    ]
