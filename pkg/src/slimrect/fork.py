"""Fork calculus: 4-cells, fork insertion and deletion, decomposition, rank.

Inserting a fork at a 4-cell C = {o, c, d, i} adds a middle element under i
plus two trajectories of edge-subdividing elements that staircase down to the
lower boundaries.  Deleting the fork of a covering S7 inverts this.  Every
slim rectangular lattice decomposes into a grid plus a replayable sequence of
fork insertions; the length of that sequence is its rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from slimrect.codes import canonical_code
from slimrect.core import (
    S7Occurrence,
    find_sublattice,
    is_semimodular,
    is_slim,
    is_distributive_ideal,
    validate,
)
from slimrect.errors import ForkError, ReplayError
from slimrect.rect import corners, grid, is_rectangular


@dataclass(frozen=True)
class Cell4:
    """A covering square {o, c, d, i} with empty interior; c left of d."""

    o: int
    c: int
    d: int
    i: int


@dataclass(frozen=True)
class ForkTrace:
    """The elements a fork insertion added: middle plus both trajectories."""

    m: int
    left: tuple
    right: tuple

    def new_elements(self):
        return (self.m,) + self.left + self.right


@dataclass(frozen=True)
class CellRef:
    """Stable 4-cell reference: o's height, o's index in its level, and the
    index of c among o's upper covers.  Survives replay because it never
    mentions element ids."""

    o_height: int
    o_index: int
    c_index: int


@dataclass(frozen=True)
class ForkScript:
    """Grid dimensions plus an ordered list of fork insertions."""

    grid: tuple
    steps: tuple


def cells4(L):
    """All 4-cells, in left-to-right, bottom-to-top order."""
    out = []
    for lv in L.levels:
        for o in lv:
            ups = L.up_covers(o)
            for j in range(len(ups) - 1):
                c, d = ups[j], ups[j + 1]
                i = L.join(c, d)
                if not (L.covers(c, i) and L.covers(d, i)):
                    continue
                dc = L.down_covers(i)
                kc = dc.index(c)
                if kc + 1 < len(dc) and dc[kc + 1] == d:
                    out.append(Cell4(o=o, c=c, d=d, i=i))
    return out


def cell_ref(L, cell):
    return CellRef(
        o_height=L.height(cell.o),
        o_index=L.pos(cell.o),
        c_index=L.up_covers(cell.o).index(cell.c),
    )


def resolve_cell(L, ref):
    """CellRef -> Cell4, raising ValueError when nothing matches."""
    if not 0 <= ref.o_height < len(L.levels):
        raise ValueError(f"no level {ref.o_height}")
    level = L.levels[ref.o_height]
    if not 0 <= ref.o_index < len(level):
        raise ValueError(f"no element at index {ref.o_index} of level {ref.o_height}")
    o = level[ref.o_index]
    ups = L.up_covers(o)
    if not 0 <= ref.c_index < len(ups) - 1:
        raise ValueError(f"element {L.label(o)} has no cover pair at index {ref.c_index}")
    cell = Cell4(o=o, c=ups[ref.c_index], d=ups[ref.c_index + 1], i=L.join(ups[ref.c_index], ups[ref.c_index + 1]))
    if cell not in cells4(L):
        raise ValueError(f"covering square at {ref} is not a 4-cell")
    return cell


def _left_staircase(L, o, c):
    """Edges subdivided by the left trajectory, from [o, c] to the boundary."""
    edges = [(o, c)]
    while True:
        u, v = edges[-1]
        dc = L.down_covers(v)
        k = dc.index(u)
        if k == 0:
            return edges
        ce = dc[k - 1]
        oe = L.meet(ce, u)
        ups = L.up_covers(oe)
        if ce not in ups or u not in ups or ups.index(u) != ups.index(ce) + 1:
            raise ForkError(
                f"face left of edge ({L.label(u)},{L.label(v)}) is not a 4-cell"
            )
        edges.append((oe, ce))


def _right_staircase(L, o, d):
    edges = [(o, d)]
    while True:
        u, v = edges[-1]
        dc = L.down_covers(v)
        k = dc.index(u)
        if k == len(dc) - 1:
            return edges
        de = dc[k + 1]
        oe = L.meet(u, de)
        ups = L.up_covers(oe)
        if de not in ups or u not in ups or ups.index(de) != ups.index(u) + 1:
            raise ForkError(
                f"face right of edge ({L.label(u)},{L.label(v)}) is not a 4-cell"
            )
        edges.append((oe, de))


def _fresh_label(base, taken):
    label = base
    while label in taken:
        label += "'"
    taken.add(label)
    return label


def _relevel(n, up, down):
    """Heights by longest path, then level orders propagated from the bottom.

    First-occurrence propagation reproduces the unique non-crossing order
    compatible with the given ordered cover lists.
    """
    height = [-1] * n
    indeg = [len(down[x]) for x in range(n)]
    queue = [x for x in range(n) if indeg[x] == 0]
    if len(queue) != 1:
        raise ForkError("surgery produced multiple minimal elements")
    height[queue[0]] = 0
    while queue:
        x = queue.pop()
        for y in up[x]:
            height[y] = max(height[y], height[x] + 1)
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if min(height) < 0:
        raise ForkError("surgery produced unreachable elements")

    levels = [[x for x in range(n) if height[x] == 0]]
    placed = 1
    while placed < n:
        cur = levels[-1]
        h = len(levels)
        nxt = []
        seen = set()
        for x in cur:
            for y in up[x]:
                if height[y] == h and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            raise ForkError("surgery produced a gap between levels")
        levels.append(nxt)
        placed += len(nxt)
    return levels


def _rebuild(up, down, labels):
    n = len(up)
    levels = _relevel(n, up, down)
    covers = [(x, y) for x in range(n) for y in up[x]]
    return validate(levels, covers, labels)


def insert_fork(L, cell):
    """Insert a fork at a 4-cell; returns the extension and its trace.

    The result is re-validated and checked slim and semimodular.
    """
    if cell not in cells4(L):
        raise ForkError(f"{cell} is not a 4-cell of the lattice")
    o, c, d, i = cell.o, cell.c, cell.d, cell.i
    left_edges = _left_staircase(L, o, c)
    right_edges = _right_staircase(L, o, d)
    n = L.n
    k, r = len(left_edges), len(right_edges)
    m_id = n
    x_ids = list(range(n + 1, n + 1 + k))
    y_ids = list(range(n + 1 + k, n + 1 + k + r))

    up = [list(t) for t in L.up] + [None] * (1 + k + r)
    down = [list(t) for t in L.down] + [None] * (1 + k + r)

    for j, (u, v) in enumerate(left_edges):
        x = x_ids[j]
        up[u][up[u].index(v)] = x
        down[v][down[v].index(u)] = x
        up[x] = [v, x_ids[j - 1] if j > 0 else m_id]
        down[x] = [x_ids[j + 1], u] if j + 1 < k else [u]
    for j, (u, v) in enumerate(right_edges):
        y = y_ids[j]
        up[u][up[u].index(v)] = y
        down[v][down[v].index(u)] = y
        up[y] = [y_ids[j - 1] if j > 0 else m_id, v]
        down[y] = [u, y_ids[j + 1]] if j + 1 < r else [u]
    up[m_id] = [i]
    down[m_id] = [x_ids[0], y_ids[0]]
    down[i].insert(down[i].index(c) + 1, m_id)

    labels = None
    if L.labels is not None:
        taken = set(L.labels)
        labels = list(L.labels) + [None] * (1 + k + r)
        labels[m_id] = _fresh_label(f"m{m_id}", taken)
        for j, x in enumerate(x_ids):
            labels[x] = _fresh_label(f"x{j + 1}.{x}", taken)
        for j, y in enumerate(y_ids):
            labels[y] = _fresh_label(f"y{j + 1}.{y}", taken)

    ext = _rebuild(up, down, labels)
    if not is_semimodular(ext) or not is_slim(ext):
        raise ForkError("fork insertion did not preserve slim semimodularity")
    return ext, ForkTrace(m=m_id, left=tuple(x_ids), right=tuple(y_ids))


def find_covering_s7(L, minimal_only=False):
    """Covering S7 occurrences; optionally only those with minimal top."""
    occs = find_sublattice(L, "S7_covering")
    if not minimal_only:
        return occs
    return [s for s in occs if not any(L.lt(s2.t, s.t) for s2 in occs)]


def occurrence_of_trace(L, cell, trace):
    """The covering S7 created by inserting a fork at cell (ids in the result)."""
    return S7Occurrence(
        o=cell.o,
        xa=trace.left[0],
        yb=trace.right[0],
        a=cell.c,
        b=cell.d,
        m=trace.m,
        t=cell.i,
        kind="covering",
    )


def _check_covering(L, s):
    elems = s.elements()
    if len(set(elems)) != 7:
        return False
    if L.meet(s.m, s.a) != s.xa or L.meet(s.m, s.b) != s.yb:
        return False
    if L.meet(s.a, s.b) != s.o or L.meet(s.xa, s.yb) != s.o:
        return False
    if L.join(s.xa, s.yb) != s.m:
        return False
    edges = [
        (s.o, s.xa),
        (s.o, s.yb),
        (s.xa, s.a),
        (s.xa, s.m),
        (s.yb, s.m),
        (s.yb, s.b),
        (s.a, s.t),
        (s.m, s.t),
        (s.b, s.t),
    ]
    return all(L.covers(u, v) for u, v in edges)


def delete_fork(L, s, require_minimal=True):
    """Delete the fork of a covering S7; returns (L_minus, cell).

    For a minimal occurrence this always succeeds (and the recovered cell is
    guaranteed replayable); pass require_minimal=False to delete a known fork
    whose top is not minimal, e.g. one just inserted.  In every case the
    result is checked by re-inserting the fork and comparing canonical codes.
    """
    if not _check_covering(L, s):
        raise ForkError("occurrence is not a covering S7 of the lattice")
    if require_minimal:
        others = find_covering_s7(L)
        if any(L.lt(s2.t, s.t) for s2 in others):
            raise ForkError(
                "occurrence is not minimal: a covering S7 with a smaller top exists"
            )
    if L.up_covers(s.m) != (s.t,) or L.down_covers(s.m) != (s.xa, s.yb):
        raise ForkError("middle element does not look like an inserted fork")

    def walk(start, step_index, side):
        trail = [start]
        while True:
            dc = L.down_covers(trail[-1])
            if len(dc) == 1:
                return trail
            if len(dc) != 2:
                raise ForkError(
                    f"{side} trajectory hit element {L.label(trail[-1])} with "
                    f"{len(dc)} lower covers"
                )
            trail.append(dc[step_index])

    xs = walk(s.xa, 0, "left")
    ys = walk(s.yb, -1, "right")
    removed = {s.m, *xs, *ys}
    if len(removed) != 1 + len(xs) + len(ys):
        raise ForkError("trajectories overlap; occurrence is not a deletable fork")
    for x in xs + ys:
        if len(L.up_covers(x)) != 2:
            raise ForkError(
                f"trajectory element {L.label(x)} must have exactly two upper covers"
            )

    up = [list(t) for t in L.up]
    down = [list(t) for t in L.down]
    for j, x in enumerate(xs):
        u = down[x][-1]
        v = up[x][0]
        up[u][up[u].index(x)] = v
        down[v][down[v].index(x)] = u
    for j, y in enumerate(ys):
        u = down[y][0]
        v = up[y][-1]
        up[u][up[u].index(y)] = v
        down[v][down[v].index(y)] = u
    down[s.t].remove(s.m)

    survivors = [x for x in range(L.n) if x not in removed]
    remap = {x: k for k, x in enumerate(survivors)}
    new_up = [[remap[y] for y in up[x]] for x in survivors]
    new_down = [[remap[y] for y in down[x]] for x in survivors]
    labels = None
    if L.labels is not None:
        labels = tuple(L.labels[x] for x in survivors)
    reduced = _rebuild(new_up, new_down, labels)

    cell = Cell4(o=remap[s.o], c=remap[s.a], d=remap[s.b], i=remap[s.t])
    if cell not in cells4(reduced):
        raise ForkError("recovered covering square is not a 4-cell after deletion")
    round_trip, _ = insert_fork(reduced, cell)
    if canonical_code(round_trip) != canonical_code(L):
        raise ForkError("deleting and re-inserting the fork changed the lattice")
    return reduced, cell


def _canonical_minimal(L, occs):
    minimal = [s for s in occs if not any(L.lt(s2.t, s.t) for s2 in occs)]
    return minimal[0]  # occs are sorted by (height, position) keys already


def canonical_minimal_s7(L):
    """The deterministic minimal covering S7 choice, or None on a grid."""
    occs = find_covering_s7(L)
    if not occs:
        return None
    return _canonical_minimal(L, occs)


def decompose(L):
    """Strip forks at canonical minimal covering S7s down to a grid.

    Returns the ForkScript whose replay rebuilds L (up to planar isomorphism).
    Each recorded step is checked for the distributive-ideal property at the
    cell's upper-left and upper-right elements.
    """
    if not is_sr_input(L):
        raise ForkError("decompose requires a slim rectangular lattice")
    current = L
    steps_rev = []
    while True:
        occs = find_covering_s7(current)
        if not occs:
            break
        s = _canonical_minimal(current, occs)
        current, cell = delete_fork(current, s)
        if not is_distributive_ideal(current, cell.c) or not is_distributive_ideal(
            current, cell.d
        ):
            raise ForkError(
                "minimal fork deletion left a non-distributive corner ideal"
            )
        steps_rev.append(cell_ref(current, cell))
    frame = corners(current)
    p, q = len(frame.lower_left), len(frame.lower_right)
    if canonical_code(current) != canonical_code(grid(p, q)):
        raise ForkError("fork-free residue is not a grid")
    return ForkScript(grid=(p, q), steps=tuple(reversed(steps_rev)))


def is_sr_input(L):
    return is_semimodular(L) and is_slim(L) and is_rectangular(L)


def rank(L):
    """Number of fork insertions needed to build L from a grid."""
    return len(decompose(L).steps)


def replay_steps(script):
    """Yield (lattice, cell, trace, extension) per step, starting from the grid.

    The starting grid itself is yielded as (grid, None, None, grid).
    """
    p, q = script.grid
    current = grid(p, q)
    yield current, None, None, current
    for j, ref in enumerate(script.steps):
        try:
            cell = resolve_cell(current, ref)
        except ValueError as e:
            raise ReplayError(j, str(e)) from e
        before = current
        current, trace = insert_fork(current, cell)
        if not is_rectangular(current):
            raise ForkError("fork insertion broke rectangularity during replay")
        yield before, cell, trace, current


def replay(script):
    """Rebuild the lattice a ForkScript describes."""
    current = None
    for _, _, _, current in replay_steps(script):
        pass
    return current
