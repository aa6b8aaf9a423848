"""Reference kernels over numpy arrays.

These are the hot inner loops of validation and sublattice scanning: the
order-relation closure, meet/join tables, and the brute-force scans for
M3 / N5 sublattices and semimodularity violations.  A compiled twin lives
in ``_fast.pyx``; both implementations must return identical, sorted
results so they are interchangeable.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def closure(n, order, down_offsets, down_flat):
    """Reflexive-transitive closure of the cover relation.

    ``order`` lists element ids by ascending height, ``down_offsets`` /
    ``down_flat`` hold the lower covers in CSR form.  Returns an (n, n)
    uint8 matrix with leq[x, y] == 1 iff x <= y.
    """
    leq = np.zeros((n, n), dtype=np.uint8)
    for v in order:
        leq[v, v] = 1
        for k in range(down_offsets[v], down_offsets[v + 1]):
            u = down_flat[k]
            np.bitwise_or(leq[:, v], leq[:, u], out=leq[:, v])
    return leq


def _extremal_bound_table(n, below, score):
    """Table of unique best common bounds.

    ``below[z, y]`` says z is a candidate bound of y; the bound chosen per
    pair is the candidate maximizing ``score``, provided it dominates every
    other candidate.  Pairs without a dominating candidate are reported as
    bad and left at -1.
    """
    table = np.full((n, n), -1, dtype=np.int32)
    bad = []
    for x in range(n):
        cand = below[:, x][:, None] & below  # cand[z, y]: z bounds both x and y
        scores = np.where(cand, score[:, None], -1)
        best = scores.argmax(axis=0).astype(np.int32)
        ok = ~(cand & ~below[:, best]).any(axis=0) & cand.any(axis=0)
        table[x] = np.where(ok, best, np.int32(-1))
        for y in np.nonzero(~ok)[0]:
            bad.append((x, int(y)))
    return table, bad


def meet_join(n, leq, heights):
    """Meet and join tables; bad (x, y, which) triples where not unique."""
    lb = leq.astype(bool)
    hmax = int(heights.max())
    meet, bad_m = _extremal_bound_table(n, lb, heights)
    join, bad_j = _extremal_bound_table(n, lb.T.copy(), hmax - heights)
    bad = sorted(
        [(x, y, "meet") for x, y in bad_m] + [(x, y, "join") for x, y in bad_j]
    )
    return meet, join, bad


def m3_list(n, meet, join, incomp, limit=0):
    """All triples a < b < c of pairwise-incomparable elements whose three
    pairwise meets agree and three pairwise joins agree (an M3 sublattice)."""
    buckets = {}
    for a in range(n):
        row_m, row_j, row_i = meet[a], join[a], incomp[a]
        for b in range(a + 1, n):
            if row_i[b]:
                key = (int(row_m[b]), int(row_j[b]))
                buckets.setdefault(key, []).append((a, b))
    out = []
    for _, pairs in sorted(buckets.items()):
        adj = {}
        for a, b in pairs:
            adj[a] = adj.get(a, 0) | (1 << b)
            adj[b] = adj.get(b, 0) | (1 << a)
        for a, b in pairs:
            common = adj[a] & adj[b]
            while common:
                low = common & -common
                c = low.bit_length() - 1
                common ^= low
                if c > b:
                    out.append((a, b, c))
    out.sort()
    return out[:limit] if limit else out


def n5_list(n, meet, join, leq, incomp, limit=0):
    """All (x, z, y) with x < z and y incomparable to both such that
    x^y == z^y and xvy == zvy (an N5 sublattice {x^y, x, z, y, xvy})."""
    lt = leq.astype(bool) & ~np.eye(n, dtype=bool)
    out = []
    for x in range(n):
        for z in np.nonzero(lt[x])[0]:
            hit = (
                (meet[x] == meet[z])
                & (join[x] == join[z])
                & incomp[x]
                & incomp[z]
            )
            for y in np.nonzero(hit)[0]:
                out.append((x, int(z), int(y)))
    out.sort()
    return out[:limit] if limit else out


def semimodular_bad(n, meet, join, heights, limit=0):
    """Pairs (a, b) with meet(a,b) covered by a but join(a,b) not covering b.

    Assumes a graded lattice, where u is covered by v iff u < v and the
    heights differ by one.
    """
    hm = heights[meet]
    hj = heights[join]
    cond_a = (hm + 1) == heights[:, None]
    cond_b = hj == (heights[None, :] + 1)
    idx = np.argwhere(cond_a & ~cond_b)
    pairs = sorted((int(a), int(b)) for a, b in idx)
    return pairs[:limit] if limit else pairs
