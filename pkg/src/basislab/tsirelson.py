"""Tsirelson-space norm on finitely supported vectors.

The norm is the least fixed point of

    ||x|| = max( ||x||_inf,  theta * sup { sum_j ||E_j x|| } )

where the sup runs over admissible interval families: finite intervals
E_1 < E_2 < ... < E_l of coordinate indices with l <= min(E_1) (indices are
1-based and absolute, so leading zeros matter while trailing zeros do not).
theta = 1/2 gives the classical space.

On finite support the fixed point is computed exactly in one bottom-up pass
over subintervals ordered by length: every admissible family that can beat
the sup-norm uses only strictly shorter subintervals, so no outer iteration
is needed.  ``fixed_point_iterates`` keeps the plain Jacobi iteration (all
values updated from the previous sweep) for cross-checking; it reaches the
same fixed point in at most N sweeps on support size N.

Two reductions keep the inner optimization polynomial, both valid because
the norm is 1-unconditional (hence monotone under enlarging an interval):

* arbitrary admissible families are dominated by families that tile a
  suffix [s, j] exactly (extend each block rightward to close the gaps);
* the per-start block-count cap is min(s, j - s + 1), and splitting a block
  never decreases the sum (triangle inequality), so "at most b blocks"
  dynamic programming suffices.
"""

from __future__ import annotations

import numpy as np


def norm_batch(X: np.ndarray, theta: float = 0.5) -> np.ndarray:
    """Tsirelson norms of the rows of X, computed in one batched DP."""
    A = np.abs(np.asarray(X, dtype=float))
    if A.ndim != 2:
        raise ValueError("norm_batch expects a 2-D array")
    nbatch, n = A.shape
    nonzero_cols = np.flatnonzero(A.any(axis=0))
    if nonzero_cols.size == 0:
        return np.zeros(nbatch)
    n = int(nonzero_cols[-1]) + 1  # trailing zeros are irrelevant
    A = A[:, :n]

    # t[:, i, j] = norm of the restriction to columns i..j (0-based).
    t = np.zeros((nbatch, n, n))
    for j in range(n):
        bcap = j // 2 + 1  # max block count any start s <= j can admit
        # g[:, pos, b] = best sum of t-values over tilings of [pos, j]
        # into at most b blocks.
        g = np.full((nbatch, j + 1, bcap + 1), -np.inf)
        tail_best = np.full(nbatch, -np.inf)
        m_run = A[:, j].copy()
        for i in range(j, -1, -1):
            if i < j:
                np.maximum(m_run, A[:, i], out=m_run)
                split = tail_best
                cap_i = min(i + 1, j - i + 1)  # 1-based start index is i+1
                if cap_i >= 2:
                    # family starting exactly at i needs >= 2 blocks to
                    # avoid referencing t[:, i, j] itself
                    cand = t[:, i, i:j] + g[:, i + 1 : j + 1, cap_i - 1]
                    split = np.maximum(split, cand.max(axis=1))
                tij = np.maximum(m_run, theta * split)
            else:
                tij = m_run.copy()
            t[:, i, j] = tij

            g[:, i, 1] = tij
            row_cap = min(bcap, j - i + 1)
            b = 1
            for b in range(2, row_cap + 1):
                cand = (t[:, i, i:j] + g[:, i + 1 : j + 1, b - 1]).max(axis=1)
                row = np.maximum(tij, cand)
                g[:, i, b] = row
                if np.array_equal(row, g[:, i, b - 1]):
                    break
            if b < bcap:
                g[:, i, b + 1 :] = g[:, i, b : b + 1]
            cap_s = min(i + 1, j - i + 1)
            np.maximum(tail_best, g[:, i, cap_s], out=tail_best)
    return t[:, 0, n - 1]


def norm(x, theta: float = 0.5) -> float:
    """Tsirelson norm of a single coefficient vector."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    return float(norm_batch(arr[None, :], theta)[0])


def _jacobi_pass(A: np.ndarray, theta: float, t_prev: np.ndarray) -> np.ndarray:
    """One sweep of the plain iteration: every t(i, j) recomputed from the
    previous sweep's values, admissible families included verbatim."""
    n = A.shape[0]
    t_next = np.zeros_like(t_prev)
    for j in range(n):
        bcap = j + 1
        # tilings of [pos, j] into at most b blocks, values from t_prev
        g = np.zeros((j + 1, bcap + 1))
        for pos in range(j, -1, -1):
            g[pos, 1] = t_prev[pos, j]
            for b in range(2, bcap + 1):
                best = g[pos, 1]
                for e in range(pos, j):
                    best = max(best, t_prev[pos, e] + g[e + 1, b - 1])
                g[pos, b] = best
        for i in range(j, -1, -1):
            m = A[i : j + 1].max()
            s_best = 0.0
            for s in range(i, j + 1):
                cap = min(s + 1, j - s + 1)
                s_best = max(s_best, g[s, cap])
            t_next[i, j] = max(m, theta * s_best)
    return t_next


def fixed_point_iterates(x, theta: float = 0.5) -> list[float]:
    """Values of the whole-vector norm after each Jacobi sweep, starting
    from the sup-norm and ending at the first repeated table."""
    A = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    nz = np.flatnonzero(A)
    if nz.size == 0:
        return [0.0]
    n = int(nz[-1]) + 1
    A = A[:n]
    t = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            t[i, j] = A[i : j + 1].max()
    values = [float(t[0, n - 1])]
    for _ in range(n + 1):
        t_next = _jacobi_pass(A, theta, t)
        values.append(float(t_next[0, n - 1]))
        if np.array_equal(t_next, t):
            break
        t = t_next
    return values
