# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; must match slimrect._kernels.pure result-for-result."""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def closure(int n, cnp.int32_t[:] order, cnp.int32_t[:] down_offsets,
             cnp.int32_t[:] down_flat):
    leq_arr = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] leq = leq_arr
    cdef int i, v, k, u, w
    for i in range(n):
        v = order[i]
        leq[v, v] = 1
        for k in range(down_offsets[v], down_offsets[v + 1]):
            u = down_flat[k]
            for w in range(n):
                leq[w, v] |= leq[w, u]
    return leq_arr


def _extremal(int n, cnp.uint8_t[:, :] below, cnp.int32_t[:] score):
    table_arr = np.full((n, n), -1, dtype=np.int32)
    cdef cnp.int32_t[:, :] table = table_arr
    cdef int x, y, z, best, best_score, ok
    bad = []
    for x in range(n):
        for y in range(n):
            best = -1
            best_score = -1
            for z in range(n):
                if below[z, x] and below[z, y] and score[z] > best_score:
                    best = z
                    best_score = score[z]
            if best < 0:
                bad.append((x, y))
                continue
            ok = 1
            for z in range(n):
                if below[z, x] and below[z, y] and not below[z, best]:
                    ok = 0
                    break
            if ok:
                table[x, y] = best
            else:
                bad.append((x, y))
    return table_arr, bad


def meet_join(int n, leq, heights):
    heights = np.ascontiguousarray(heights, dtype=np.int32)
    hmax = int(heights.max())
    leq_t = np.ascontiguousarray(leq.T)
    inv = (hmax - heights).astype(np.int32)
    meet, bad_m = _extremal(n, leq, heights)
    join, bad_j = _extremal(n, leq_t, inv)
    bad = sorted(
        [(x, y, "meet") for x, y in bad_m] + [(x, y, "join") for x, y in bad_j]
    )
    return meet, join, bad


def m3_list(int n, cnp.int32_t[:, :] meet, cnp.int32_t[:, :] join,
            incomp, int limit=0):
    cdef cnp.uint8_t[:, :] inc = np.ascontiguousarray(incomp, dtype=np.uint8)
    cdef int a, b, c
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            if not inc[a, b]:
                continue
            for c in range(b + 1, n):
                if not inc[a, c] or not inc[b, c]:
                    continue
                if (meet[a, b] == meet[a, c] == meet[b, c]
                        and join[a, b] == join[a, c] == join[b, c]):
                    out.append((a, b, c))
                    if limit and len(out) >= limit:
                        return out
    return out


def n5_list(int n, cnp.int32_t[:, :] meet, cnp.int32_t[:, :] join,
            leq, incomp, int limit=0):
    cdef cnp.uint8_t[:, :] lb = leq
    cdef cnp.uint8_t[:, :] inc = np.ascontiguousarray(incomp, dtype=np.uint8)
    cdef int x, z, y
    out = []
    for x in range(n):
        for z in range(n):
            if x == z or not lb[x, z]:
                continue
            for y in range(n):
                if not inc[x, y] or not inc[z, y]:
                    continue
                if meet[x, y] == meet[z, y] and join[x, y] == join[z, y]:
                    out.append((x, z, y))
                    if limit and len(out) >= limit:
                        return out
    return out


def semimodular_bad(int n, cnp.int32_t[:, :] meet, cnp.int32_t[:, :] join,
                    cnp.int32_t[:] heights, int limit=0):
    cdef int a, b
    out = []
    for a in range(n):
        for b in range(n):
            if heights[meet[a, b]] + 1 == heights[a]:
                if heights[join[a, b]] != heights[b] + 1:
                    out.append((a, b))
                    if limit and len(out) >= limit:
                        return out
    return out
