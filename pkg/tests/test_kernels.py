"""The compiled kernels and the numpy reference must be interchangeable."""

from __future__ import annotations

import numpy as np
import pytest

from slimrect._kernels import pure

try:
    from slimrect._kernels import _fast
except ImportError:
    _fast = None

from slimrect.rect import grid
from slimrect.universe import enumerate_sr

from conftest import S7_COVERS, S7_LEVELS

needs_compiled = pytest.mark.skipif(_fast is None, reason="compiled kernels not built")

# graded, bounded, planar-enough structures; the last one is not a lattice
CASES = [
    (S7_LEVELS, S7_COVERS),
    ([[0], [1, 2], [3]], [(0, 1), (0, 2), (1, 3), (2, 3)]),
    ([[0], [1, 2, 3], [4]], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
    # upside-down S7: not semimodular
    (
        [[0], [1, 2, 3], [4, 5], [6]],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)],
    ),
    # graded poset without unique meets/joins
    (
        [[0], [1, 2], [3, 4], [5]],
        [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
    ),
]


def arrays_from_raw(levels, covers):
    n = sum(len(lv) for lv in levels)
    heights = np.zeros(n, dtype=np.int32)
    for h, lv in enumerate(levels):
        for x in lv:
            heights[x] = h
    down = [[] for _ in range(n)]
    for lo, hi in covers:
        down[hi].append(lo)
    order = np.fromiter((x for lv in levels for x in lv), dtype=np.int32, count=n)
    offsets = np.zeros(n + 1, dtype=np.int32)
    flat = []
    for x in range(n):
        offsets[x + 1] = offsets[x] + len(down[x])
        flat.extend(sorted(down[x]))
    return n, order, offsets, np.asarray(flat, dtype=np.int32), heights


def kernel_results(impl, levels, covers):
    n, order, offsets, flat, heights = arrays_from_raw(levels, covers)
    leq = impl.closure(n, order, offsets, flat)
    meet, join, bad = impl.meet_join(n, leq, heights)
    out = {"leq": leq, "meet": meet, "join": join, "bad": bad}
    if not bad:
        lb = leq.astype(bool)
        incomp = ~(lb | lb.T)
        out["m3"] = impl.m3_list(n, meet, join, incomp)
        out["n5"] = impl.n5_list(n, meet, join, leq, incomp)
        out["semi"] = impl.semimodular_bad(n, meet, join, heights)
        out["m3_lim"] = impl.m3_list(n, meet, join, incomp, limit=1)
        out["semi_lim"] = impl.semimodular_bad(n, meet, join, heights, limit=1)
    return out


@needs_compiled
@pytest.mark.parametrize("case", range(len(CASES)))
def test_backends_agree_on_cases(case):
    levels, covers = CASES[case]
    a = kernel_results(pure, levels, covers)
    b = kernel_results(_fast, levels, covers)
    assert a.keys() == b.keys()
    for key in a:
        if isinstance(a[key], np.ndarray):
            assert np.array_equal(a[key], b[key]), key
        else:
            assert a[key] == b[key], key


@needs_compiled
def test_backends_agree_on_universe():
    for L in enumerate_sr(2, 2, 2).lattices() + [grid(3, 4)]:
        levels = [list(lv) for lv in L.levels]
        covers = sorted(L.cover_pairs())
        a = kernel_results(pure, levels, covers)
        b = kernel_results(_fast, levels, covers)
        for key in a:
            if isinstance(a[key], np.ndarray):
                assert np.array_equal(a[key], b[key]), key
            else:
                assert a[key] == b[key], key
