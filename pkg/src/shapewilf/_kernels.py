"""Inner loops over 0-based integer arrays.

Every kernel is plain Python over numpy arrays.  When numba is importable and
``SHAPEWILF_NO_NUMBA`` is unset (or ``0``), they are compiled with ``njit``;
otherwise they run as written.  Both paths share this source, so they cannot
drift apart.

Array conventions: ``cols[r]`` is the 0-based column of the 1 in 0-based row
``r``; ``lam[r]`` is the length of row ``r``, so cell ``(r, c)`` lies in the
shape iff ``c < lam[r]``.
"""
import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

ENV_FLAG = "SHAPEWILF_NO_NUMBA"

_disabled = os.environ.get(ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    from numba import njit as _numba_njit

    USE_NUMBA = True
except ImportError:
    USE_NUMBA = False

if USE_NUMBA:

    def njit(f):
        return _numba_njit(cache=True)(f)

else:

    def njit(f):
        return f

    if not _disabled:
        logger.warning("numba not available, kernels run uninterpreted")

# pattern kinds for count_avoiders_kernel
KIND_PK = 0
KIND_QK = 1
KIND_NONE = 2


@njit
def col_height(lam, n, c):
    """Number of rows whose squares include column ``c`` (0-based)."""
    h = 0
    while h < n and lam[h] > c:
        h += 1
    return h


@njit
def qk_row_hit(cols, r, k):
    """True if the 1 in row ``r`` has at least k-1 ones strictly above-left."""
    c = cols[r]
    cnt = 0
    for q in range(r):
        if cols[q] < c:
            cnt += 1
    return cnt >= k - 1


@njit
def qk_lowest(cols, m, k):
    """Lowest row among the first ``m`` rows ending a Q_k occurrence, or -1."""
    for r in range(m - 1, -1, -1):
        if qk_row_hit(cols, r, k):
            return r
    return -1


@njit
def pk_exists(cols, lam, m, k):
    """Does the prefix of ``m`` rows contain an occurrence of P_k?

    For each candidate top 1 the tail with the smallest column is the most
    permissive one: its column is the tallest, so it admits the most rows.
    """
    n = lam.shape[0]
    for t in range(m):
        ct = cols[t]
        best = n
        for u in range(t + 1, m):
            cu = cols[u]
            if cu > ct and cu < best:
                best = cu
        if best == n:
            continue
        bound = col_height(lam, n, best)
        if bound > m:
            bound = m
        cnt = 0
        for q in range(t + 1, bound):
            if cols[q] < ct:
                cnt += 1
        if cnt >= k - 2:
            return True
    return False


@njit
def phi_rows(cols, k, out):
    """Rows of b_1..b_k for the phi selection; False when Q_k is absent."""
    n = cols.shape[0]
    b1 = qk_lowest(cols, n, k)
    if b1 < 0:
        return False
    out[0] = b1
    c1 = cols[b1]
    j = 1
    for q in range(b1 - 1, -1, -1):
        if j == k:
            break
        if cols[q] < c1:
            out[j] = q
            j += 1
    return True


@njit
def psi_rows(cols, lam, k, out):
    """Rows of b_1..b_k for the psi selection.

    Returns 1 on success, 0 when P_k is absent.  ``out`` is ordered b_1
    (lowest of the leftmost k-1), middles bottom to top, b_{k-1} (top), b_k
    (tail).
    """
    n = cols.shape[0]
    for b1 in range(n):
        c1 = cols[b1]
        for t in range(b1):
            ct = cols[t]
            if ct <= c1:
                continue
            cnt = 0
            for q in range(t + 1, b1):
                if cols[q] < ct:
                    cnt += 1
            if cnt < k - 3:
                continue
            tail = -1
            tail_col = n
            for u in range(t + 1, n):
                cu = cols[u]
                if cu > ct and cu < tail_col:
                    low = b1 if b1 > u else u
                    if low < col_height(lam, n, cu):
                        tail = u
                        tail_col = cu
            if tail < 0:
                continue
            out[0] = b1
            j = 0
            for q in range(t + 1, b1):
                if j == k - 3:
                    break
                if cols[q] < ct:
                    # highest first, stored bottom to top
                    out[k - 3 - j] = q
                    j += 1
            out[k - 2] = t
            out[k - 1] = tail
            return 1
    return 0


@njit
def count_avoiders_kernel(lam, k, kind):
    """Count transversals of ``lam`` avoiding P_k (kind 0) or Q_k (kind 1).

    Backtracking fills rows top to bottom in lexicographic order.  Every
    occurrence inside a filled prefix survives in all completions, so a
    prefix is abandoned as soon as its newest row completes an occurrence.
    ``kind == 2`` counts all transversals.
    """
    n = lam.shape[0]
    cols = np.zeros(n, np.int64)
    choice = np.full(n, -1, np.int64)
    used = np.zeros(n, np.bool_)
    count = 0
    r = 0
    while r >= 0:
        if choice[r] >= 0:
            used[choice[r]] = False
        c = choice[r] + 1
        while c < lam[r] and used[c]:
            c += 1
        if c >= lam[r]:
            choice[r] = -1
            r -= 1
            continue
        choice[r] = c
        used[c] = True
        cols[r] = c
        if kind == 0:
            if pk_exists(cols, lam, r + 1, k):
                continue
        elif kind == 1:
            if qk_row_hit(cols, r, k):
                continue
        if r == n - 1:
            count += 1
            continue
        r += 1
    return count


def as_lam(row_lengths):
    return np.asarray(row_lengths, dtype=np.int64)
