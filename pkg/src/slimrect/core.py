"""Finite graded planar lattices with an explicit left-to-right embedding.

A lattice is stored as height levels (level index == height), each level an
ordered left-to-right tuple of element ids, plus cover lists kept consistent
with the level orders.  The embedding is data, not geometry: planarity means
no two cover edges cross when levels are drawn as horizontal rows in stored
order.  All values are immutable after validation and all operations here are
pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from slimrect import _kernels
from slimrect.errors import ComparablePairError, InvalidLatticeError

DEFECT_KINDS = ("not-a-lattice", "not-graded", "crossing-edges", "not-bounded")


@dataclass(frozen=True)
class LatticeDefect:
    """A violated structural invariant plus the elements exhibiting it."""

    kind: str
    witness: tuple
    detail: str = ""


@dataclass(frozen=True)
class M3Occurrence:
    o: int
    atoms: tuple
    i: int

    def elements(self):
        return (self.o,) + self.atoms + (self.i,)


@dataclass(frozen=True)
class N5Occurrence:
    """Pentagon {o, x, z, y, i} with x < z on one side, y on the other."""

    o: int
    x: int
    z: int
    y: int
    i: int

    def elements(self):
        return (self.o, self.x, self.z, self.y, self.i)


@dataclass(frozen=True)
class S7Occurrence:
    """An S7 sublattice with role labels.

    kind is "covering" (all nine edges are covers in the ambient lattice) or
    "peak" (only the three top edges a-t, m-t, b-t are required to be covers).
    """

    o: int
    xa: int
    yb: int
    a: int
    b: int
    m: int
    t: int
    kind: str

    def elements(self):
        return (self.o, self.xa, self.yb, self.a, self.b, self.m, self.t)

    def middle_edge(self):
        return (self.m, self.t)


class LeveledLattice:
    """Validated graded planar lattice; construct via :func:`validate`."""

    __slots__ = (
        "levels",
        "up",
        "down",
        "labels",
        "n",
        "_height",
        "_pos",
        "_leq",
        "_meet",
        "_join",
        "_incomp",
    )

    def __init__(self, levels, up, down, labels, height, pos, leq, meet, join):
        self.levels = levels
        self.up = up
        self.down = down
        self.labels = labels
        self.n = len(up)
        self._height = height
        self._pos = pos
        self._leq = leq
        self._meet = meet
        self._join = join
        self._incomp = None

    # -- basic accessors -------------------------------------------------

    def __len__(self):
        return self.n

    @property
    def bottom(self):
        return self.levels[0][0]

    @property
    def top(self):
        return self.levels[-1][0]

    def elements(self):
        return range(self.n)

    def height(self, x):
        return int(self._height[x])

    def pos(self, x):
        """Left-to-right index of x within its level."""
        return int(self._pos[x])

    def label(self, x):
        return self.labels[x] if self.labels is not None else f"n{x}"

    def by_label(self, name):
        if self.labels is None:
            raise KeyError(f"lattice has no labels (looked up {name!r})")
        return self.labels.index(name)

    def up_covers(self, x):
        return self.up[x]

    def down_covers(self, x):
        return self.down[x]

    def leq(self, x, y):
        return bool(self._leq[x, y])

    def lt(self, x, y):
        return x != y and bool(self._leq[x, y])

    def comparable(self, x, y):
        return bool(self._leq[x, y]) or bool(self._leq[y, x])

    def incomparable(self, x, y):
        return not self.comparable(x, y)

    def covers(self, x, y):
        """True iff y covers x (graded: leq plus height difference one)."""
        return bool(self._leq[x, y]) and self.height(y) == self.height(x) + 1

    def meet(self, x, y):
        return int(self._meet[x, y])

    def join(self, x, y):
        return int(self._join[x, y])

    def cover_pairs(self):
        for x in range(self.n):
            for y in self.up[x]:
                yield (x, y)

    def incomparability(self):
        """Boolean matrix of incomparable pairs (shared, do not mutate)."""
        if self._incomp is None:
            lb = self._leq.astype(bool)
            self._incomp = ~(lb | lb.T)
        return self._incomp

    def tables(self):
        """(leq, meet, join, heights) as numpy arrays; treat as read-only."""
        return self._leq, self._meet, self._join, self._height

    # -- derived values ---------------------------------------------------

    def mirror(self):
        """The left-right reflected embedding of the same lattice."""
        levels = tuple(tuple(reversed(level)) for level in self.levels)
        return validate(levels, list(self.cover_pairs()), self.labels)

    def __eq__(self, other):
        if not isinstance(other, LeveledLattice):
            return NotImplemented
        return (
            self.levels == other.levels
            and self.up == other.up
            and self.labels == other.labels
        )

    __hash__ = None

    def __repr__(self):
        sizes = ",".join(str(len(lv)) for lv in self.levels)
        return f"LeveledLattice(n={self.n}, levels=[{sizes}])"


# -- validation ----------------------------------------------------------


def _check_shape(levels, covers, labels):
    if not levels:
        raise ValueError("no levels")
    seen = set()
    for lv in levels:
        if not lv:
            raise ValueError("empty level")
        for x in lv:
            if not isinstance(x, int) or x < 0:
                raise ValueError(f"bad element id {x!r}")
            if x in seen:
                raise ValueError(f"duplicate element id {x}")
            seen.add(x)
    n = len(seen)
    if seen != set(range(n)):
        raise ValueError("element ids must be 0..N-1")
    edge_set = set()
    for lo, hi in covers:
        if lo not in seen or hi not in seen:
            raise ValueError(f"cover ({lo},{hi}) references unknown element")
        if lo == hi:
            raise ValueError(f"self-cover at {lo}")
        if (lo, hi) in edge_set:
            raise ValueError(f"duplicate cover ({lo},{hi})")
        edge_set.add((lo, hi))
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError("labels length mismatch")
        if len(set(labels)) != n:
            raise ValueError("labels must be unique")
    return n, edge_set, labels


def find_defects(levels, covers):
    """Every detected invariant violation, each with a concrete witness."""
    n, edge_set, _ = _check_shape(levels, covers, None)
    height = {}
    pos = {}
    for h, lv in enumerate(levels):
        for p, x in enumerate(lv):
            height[x] = h
            pos[x] = p

    defects = []
    if len(levels[0]) != 1:
        defects.append(
            LatticeDefect("not-bounded", tuple(levels[0]), "bottom level not a singleton")
        )
    if len(levels[-1]) != 1:
        defects.append(
            LatticeDefect("not-bounded", tuple(levels[-1]), "top level not a singleton")
        )

    up = {x: [] for x in range(n)}
    down = {x: [] for x in range(n)}
    for lo, hi in sorted(edge_set):
        if height[hi] != height[lo] + 1:
            defects.append(
                LatticeDefect("not-graded", (lo, hi), "cover must link adjacent levels")
            )
        else:
            up[lo].append(hi)
            down[hi].append(lo)
    top_h = len(levels) - 1
    for x in range(n):
        if height[x] < top_h and not up[x]:
            defects.append(
                LatticeDefect("not-graded", (x,), "non-top element without upper cover")
            )
        if height[x] > 0 and not down[x]:
            defects.append(
                LatticeDefect("not-graded", (x,), "non-bottom element without lower cover")
            )

    # grading or boundedness failures make the order itself unreliable;
    # crossing edges are an embedding defect only, so the lattice-law check
    # below still runs in their presence
    structural = bool(defects)

    # planarity: per level pair, upper endpoints must be non-decreasing as the
    # lower endpoint moves right (shared endpoints never cross)
    for h in range(len(levels) - 1):
        edges = sorted(
            (pos[u], pos[v], u, v)
            for u in levels[h]
            for v in up[u]
        )
        best = -1
        best_edge = None
        cur = -1
        group_max = -1
        group_edge = None
        for a, b, u, v in edges:
            if a != cur:
                if group_max > best:
                    best, best_edge = group_max, group_edge
                cur, group_max, group_edge = a, -1, None
            if b < best:
                defects.append(
                    LatticeDefect(
                        "crossing-edges",
                        (best_edge[0], best_edge[1], u, v),
                        "cover edges cross",
                    )
                )
            if b > group_max:
                group_max, group_edge = b, (u, v)

    if structural:
        return defects

    # grading is sane: check unique meets and joins
    harr = np.fromiter((height[x] for x in range(n)), dtype=np.int32, count=n)
    order = [x for lv in levels for x in lv]
    offsets = np.zeros(n + 1, dtype=np.int32)
    flat = []
    for x in range(n):
        down[x].sort(key=lambda y: pos[y])
        up[x].sort(key=lambda y: pos[y])
    for x in range(n):
        offsets[x + 1] = offsets[x] + len(down[x])
        flat.extend(down[x])
    leq = _kernels.closure(
        n,
        np.asarray(order, dtype=np.int32),
        offsets,
        np.asarray(flat, dtype=np.int32),
    )
    _, _, bad = _kernels.meet_join(n, leq, harr)
    seen_pairs = set()
    for x, y, which in bad:
        key = (min(x, y), max(x, y))
        if key not in seen_pairs:
            seen_pairs.add(key)
            defects.append(
                LatticeDefect("not-a-lattice", key, f"no unique {which}")
            )
    return defects


def validate(levels, covers, labels=None):
    """Build a LeveledLattice, raising InvalidLatticeError with all defects."""
    n, edge_set, labels = _check_shape(levels, covers, labels)
    defects = find_defects(levels, covers)
    if defects:
        raise InvalidLatticeError(defects)

    height = np.zeros(n, dtype=np.int32)
    pos = np.zeros(n, dtype=np.int32)
    for h, lv in enumerate(levels):
        for p, x in enumerate(lv):
            height[x] = h
            pos[x] = p
    up = [[] for _ in range(n)]
    down = [[] for _ in range(n)]
    for lo, hi in edge_set:
        up[lo].append(hi)
        down[hi].append(lo)
    for x in range(n):
        up[x].sort(key=lambda y: int(pos[y]))
        down[x].sort(key=lambda y: int(pos[y]))

    order = np.fromiter((x for lv in levels for x in lv), dtype=np.int32, count=n)
    offsets = np.zeros(n + 1, dtype=np.int32)
    flat = []
    for x in range(n):
        offsets[x + 1] = offsets[x] + len(down[x])
        flat.extend(down[x])
    leq = _kernels.closure(n, order, offsets, np.asarray(flat, dtype=np.int32))
    meet, join, bad = _kernels.meet_join(n, leq, height)
    assert not bad  # find_defects already passed

    return LeveledLattice(
        levels=tuple(tuple(lv) for lv in levels),
        up=tuple(tuple(u) for u in up),
        down=tuple(tuple(d) for d in down),
        labels=labels,
        height=height,
        pos=pos,
        leq=leq,
        meet=meet,
        join=join,
    )


# -- predicates ----------------------------------------------------------


def semimodularity_witness(L):
    """A pair (a, b) with a^b covered by a but a v b not covering b, or None."""
    leq, meet, join, heights = L.tables()
    bad = _kernels.semimodular_bad(L.n, meet, join, heights, limit=1)
    return bad[0] if bad else None


def is_semimodular(L):
    return semimodularity_witness(L) is None


def _m3_occurrences(L, limit=0):
    leq, meet, join, _ = L.tables()
    trips = _kernels.m3_list(L.n, meet, join, L.incomparability(), limit=limit)
    out = []
    for a, b, c in trips:
        out.append(M3Occurrence(o=L.meet(a, b), atoms=(a, b, c), i=L.join(a, b)))
    return out


def slimness_witness(L):
    """An M3 occurrence if one exists, else None."""
    occs = _m3_occurrences(L, limit=1)
    return occs[0] if occs else None


def is_slim(L):
    return slimness_witness(L) is None


def _n5_occurrences(L, limit=0):
    leq, meet, join, _ = L.tables()
    trips = _kernels.n5_list(L.n, meet, join, leq, L.incomparability(), limit=limit)
    return [
        N5Occurrence(o=L.meet(x, y), x=x, z=z, y=y, i=L.join(x, y))
        for x, z, y in trips
    ]


def distributivity_witness(L):
    """An M3 or N5 occurrence if one exists (Birkhoff criterion), else None."""
    m3 = _m3_occurrences(L, limit=1)
    if m3:
        return m3[0]
    n5 = _n5_occurrences(L, limit=1)
    return n5[0] if n5 else None


def is_distributive(L):
    return distributivity_witness(L) is None


def _restricted_tables(L, subset):
    """Meet/join/incomparability tables reindexed to a meet/join-closed subset."""
    idx = {x: k for k, x in enumerate(subset)}
    k = len(subset)
    sel = np.asarray(subset, dtype=np.intp)
    leq, meet, join, heights = L.tables()
    sub_leq = leq[np.ix_(sel, sel)]
    sub_meet = np.empty((k, k), dtype=np.int32)
    sub_join = np.empty((k, k), dtype=np.int32)
    for i, x in enumerate(subset):
        for j, y in enumerate(subset):
            sub_meet[i, j] = idx[int(meet[x, y])]
            sub_join[i, j] = idx[int(join[x, y])]
    lb = sub_leq.astype(bool)
    sub_incomp = ~(lb | lb.T)
    return k, sub_leq, sub_meet, sub_join, sub_incomp


def is_distributive_ideal(L, c):
    """Distributivity of the principal ideal of c, as a sublattice of L."""
    subset = [x for x in range(L.n) if L.leq(x, c)]
    k, sub_leq, sub_meet, sub_join, sub_incomp = _restricted_tables(L, subset)
    if _kernels.m3_list(k, sub_meet, sub_join, sub_incomp, limit=1):
        return False
    if _kernels.n5_list(k, sub_meet, sub_join, sub_leq, sub_incomp, limit=1):
        return False
    return True


def left_of(L, a, b):
    """True iff a is to the left of b.

    Defined for incomparable pairs only: at a's height, the element of a
    maximal chain through b must lie strictly right of a in the level order.
    By planarity the answer does not depend on the chain chosen; we walk the
    leftmost one.
    """
    if L.comparable(a, b):
        raise ComparablePairError(f"left_of undefined for comparable pair ({a},{b})")
    ha = L.height(a)
    c = b
    while L.height(c) > ha:
        c = L.down_covers(c)[0]
    while L.height(c) < ha:
        c = L.up_covers(c)[0]
    assert c != a
    return L.pos(a) < L.pos(c)


# -- sublattice search ---------------------------------------------------


def _s7_scan(L, covering):
    occs = []
    for t in range(L.n):
        dc = L.down_covers(t)
        if len(dc) < 3:
            continue
        for trip in combinations(dc, 3):
            for mid in (0, 1, 2):
                m = trip[mid]
                a, b = (trip[i] for i in range(3) if i != mid)
                xa = L.meet(m, a)
                yb = L.meet(m, b)
                o = L.meet(a, b)
                elems = (o, xa, yb, a, b, m, t)
                if len(set(elems)) != 7:
                    continue
                if L.meet(xa, yb) != o or L.join(xa, yb) != m:
                    continue
                if covering and not (
                    L.covers(o, xa)
                    and L.covers(o, yb)
                    and L.covers(xa, a)
                    and L.covers(xa, m)
                    and L.covers(yb, m)
                    and L.covers(yb, b)
                ):
                    continue
                occs.append(
                    S7Occurrence(
                        o=o, xa=xa, yb=yb, a=a, b=b, m=m, t=t,
                        kind="covering" if covering else "peak",
                    )
                )
    occs.sort(key=lambda s: (L.height(s.t), L.pos(s.t), L.pos(s.m), L.pos(s.a)))
    return occs


def find_sublattice(L, pattern):
    """All occurrences of a named sublattice pattern, role-labeled.

    Patterns: "M3", "N5", "S7_covering", "S7_peak".
    """
    if pattern == "M3":
        return _m3_occurrences(L)
    if pattern == "N5":
        return _n5_occurrences(L)
    if pattern == "S7_covering":
        return _s7_scan(L, covering=True)
    if pattern == "S7_peak":
        return _s7_scan(L, covering=False)
    raise ValueError(f"unknown pattern {pattern!r}")
