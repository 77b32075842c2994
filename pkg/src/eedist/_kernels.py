"""Compiled dynamic-programming kernels.

All kernels take int64 code arrays and keep two rolling rows, so memory is
linear in the shorter input.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def edit_distance_codes(s, t):
    m = s.shape[0]
    n = t.shape[0]
    if m < n:
        s, t = t, s
        m, n = n, m
    if n == 0:
        return m
    prev = np.empty(n + 1, dtype=np.int64)
    curr = np.empty(n + 1, dtype=np.int64)
    for j in range(n + 1):
        prev[j] = j
    for i in range(1, m + 1):
        curr[0] = i
        si = s[i - 1]
        for j in range(1, n + 1):
            best = prev[j - 1] + (0 if si == t[j - 1] else 1)
            ins = curr[j - 1] + 1
            if ins < best:
                best = ins
            dele = prev[j] + 1
            if dele < best:
                best = dele
            curr[j] = best
        prev, curr = curr, prev
    return prev[n]


@numba.njit(cache=True)
def lcss_codes(s, t):
    m = s.shape[0]
    n = t.shape[0]
    if m < n:
        s, t = t, s
        m, n = n, m
    if n == 0:
        return 0
    prev = np.zeros(n + 1, dtype=np.int64)
    curr = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, m + 1):
        si = s[i - 1]
        for j in range(1, n + 1):
            if si == t[j - 1]:
                curr[j] = prev[j - 1] + 1
            elif prev[j] >= curr[j - 1]:
                curr[j] = prev[j]
            else:
                curr[j] = curr[j - 1]
        prev, curr = curr, prev
    return prev[n]


@numba.njit(cache=True)
def common_count_codes(s, t):
    """Sum over symbols of min(count in s, count in t), by sorted merge."""
    a = np.sort(s)
    b = np.sort(t)
    i = 0
    j = 0
    common = 0
    while i < a.shape[0] and j < b.shape[0]:
        if a[i] == b[j]:
            common += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return common


@numba.njit(cache=True)
def histogram_divergence_codes(s, t):
    return s.shape[0] + t.shape[0] - 2 * common_count_codes(s, t)


@numba.njit(cache=True)
def pairwise_ed_hd(a, a_len, b, b_len, symmetric):
    """Edit-distance and histogram-divergence matrices between two packed sets.

    ``a`` and ``b`` are row-padded 2-d code arrays with true lengths in
    ``a_len`` / ``b_len``. With ``symmetric`` set, only the upper triangle is
    computed and mirrored.
    """
    na = a.shape[0]
    nb = b.shape[0]
    ed = np.zeros((na, nb), dtype=np.int64)
    hd = np.zeros((na, nb), dtype=np.int64)
    for i in range(na):
        s = a[i, : a_len[i]]
        start = i + 1 if symmetric else 0
        for j in range(start, nb):
            t = b[j, : b_len[j]]
            ed[i, j] = edit_distance_codes(s, t)
            hd[i, j] = histogram_divergence_codes(s, t)
            if symmetric:
                ed[j, i] = ed[i, j]
                hd[j, i] = hd[i, j]
    return ed, hd


@numba.njit(cache=True)
def pairwise_lcss(a, a_len, b, b_len, symmetric):
    na = a.shape[0]
    nb = b.shape[0]
    out = np.zeros((na, nb), dtype=np.int64)
    for i in range(na):
        s = a[i, : a_len[i]]
        start = i if symmetric else 0
        for j in range(start, nb):
            out[i, j] = lcss_codes(s, b[j, : b_len[j]])
            if symmetric:
                out[j, i] = out[i, j]
    return out
