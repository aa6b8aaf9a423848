"""Exact-rational diagrams of slim rectangular lattices.

The natural diagram places each element by meeting it with the two corners
and walking the resulting grid coordinates along two axes: 135 degrees (one
step per lower-left chain edge) and 45 degrees (one step per lower-right
chain edge).  Edge slopes are compared exactly: an edge is normal at 45 or
135 degrees, steep strictly in between.  All coordinates are Fractions; no
floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from slimrect.core import find_sublattice
from slimrect.errors import MalformedDiagramError
from slimrect.fork import _left_staircase, _right_staircase, replay_steps
from slimrect.rect import corners
from slimrect.report import VerificationReport


@dataclass(frozen=True)
class Diagram:
    """Plane embedding: one exact point per element, edges = cover pairs."""

    points: tuple
    edges: tuple
    names: tuple
    left_units: tuple = None
    right_units: tuple = None


@dataclass(frozen=True)
class EdgeClass:
    edge: tuple
    kind: str  # normal-left | normal-right | steep | other


def natural_coords(L):
    """Grid coordinates (u, v) per element: heights of the corner meets."""
    frame = corners(L)
    cl, cr = frame.left_corner, frame.right_corner
    return [(L.height(L.meet(x, cl)), L.height(L.meet(x, cr))) for x in L.elements()]


def _prepare_units(units, count, side):
    if units is None:
        units = [Fraction(1)] * count
    units = tuple(Fraction(u) for u in units)
    if len(units) != count:
        raise ValueError(f"{side} needs exactly {count} step lengths, got {len(units)}")
    if any(u <= 0 for u in units):
        raise ValueError(f"{side} step lengths must be positive")
    return units


def _diagram_from_grid_coords(L, coords, left_units, right_units):
    lp = [Fraction(0)]
    for u in left_units:
        lp.append(lp[-1] + u)
    rp = [Fraction(0)]
    for u in right_units:
        rp.append(rp[-1] + u)
    points = tuple((rp[v] - lp[u], lp[u] + rp[v]) for u, v in coords)
    return Diagram(
        points=points,
        edges=tuple(sorted(L.cover_pairs())),
        names=tuple(L.label(x) for x in L.elements()),
        left_units=left_units,
        right_units=right_units,
    )


def natural_diagram(L, left_units=None, right_units=None):
    """The natural diagram of a slim rectangular lattice."""
    frame = corners(L)
    left_units = _prepare_units(left_units, L.height(frame.left_corner), "left_units")
    right_units = _prepare_units(right_units, L.height(frame.right_corner), "right_units")
    return _diagram_from_grid_coords(L, natural_coords(L), left_units, right_units)


def mirror_natural_diagram(L, left_units=None, right_units=None):
    """The natural diagram built with the corners swapped."""
    frame = corners(L)
    left_units = _prepare_units(left_units, L.height(frame.right_corner), "left_units")
    right_units = _prepare_units(right_units, L.height(frame.left_corner), "right_units")
    cl, cr = frame.left_corner, frame.right_corner
    coords = [
        (L.height(L.meet(x, cr)), L.height(L.meet(x, cl))) for x in L.elements()
    ]
    return _diagram_from_grid_coords(L, coords, left_units, right_units)


def reflect(D):
    """Left-right reflection: negate every x coordinate."""
    return Diagram(
        points=tuple((-x, y) for x, y in D.points),
        edges=D.edges,
        names=D.names,
        left_units=D.right_units,
        right_units=D.left_units,
    )


def _edge_kind(p, q):
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dx == 0 and dy == 0:
        raise MalformedDiagramError("zero-length edge")
    adx = abs(dx)
    if abs(dy) == adx:
        return "normal-left" if dx < 0 else "normal-right"
    if dy > adx:
        return "steep"
    return "other"


def classify_edges(D):
    return [EdgeClass(edge=e, kind=_edge_kind(D.points[e[0]], D.points[e[1]])) for e in D.edges]


def edge_kinds(D):
    return {c.edge: c.kind for c in classify_edges(D)}


def check_c1(L, D):
    """Steepness rule: middle edges of peak S7s steep, every other edge normal."""
    report = VerificationReport("middle-edges-steep / rest-normal")
    middles = {s.middle_edge() for s in find_sublattice(L, "S7_peak")}
    for edge, kind in sorted(edge_kinds(D).items()):
        name = f"{D.names[edge[0]]}-{D.names[edge[1]]}"
        if edge in middles:
            report.record("middle edge steep", name, kind == "steep", f"drawn {kind}")
        else:
            report.record(
                "non-middle edge normal",
                name,
                kind in ("normal-left", "normal-right"),
                f"drawn {kind}",
            )
    return report


def _squared_length(p, q):
    return (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2


def check_c2(L, D):
    """All lower-boundary edges must have equal (squared) length."""
    report = VerificationReport("equal lower-boundary edge lengths")
    frame = corners(L)
    lengths = {}
    for chain in (frame.lower_left, frame.lower_right):
        for lo, hi in zip(chain, chain[1:]):
            lengths[(lo, hi)] = _squared_length(D.points[lo], D.points[hi])
    reference = next(iter(lengths.values()))
    for (lo, hi), sq in sorted(lengths.items()):
        report.record(
            "lower boundary edge length",
            f"{D.names[lo]}-{D.names[hi]}",
            sq == reference,
            f"squared length {sq} != {reference}",
        )
    return report


def coordinates_of(D):
    """Recover grid coordinates by projecting on the two normal axes.

    The 135-degree projection (y - x)/2 and the 45-degree projection
    (y + x)/2 are finite-valued; their sorted distinct values index the
    (u, v) coordinates.  Both projections must be non-decreasing along
    edges, which holds in any diagram whose edges are normal or steep.
    """
    lproj = [(y - x) / 2 for x, y in D.points]
    rproj = [(y + x) / 2 for x, y in D.points]
    for lo, hi in D.edges:
        if lproj[hi] < lproj[lo] or rproj[hi] < rproj[lo]:
            raise MalformedDiagramError(
                f"projection decreases along edge ({lo},{hi})"
            )
    lvals = {v: k for k, v in enumerate(sorted(set(lproj)))}
    rvals = {v: k for k, v in enumerate(sorted(set(rproj)))}
    return [(lvals[l], rvals[r]) for l, r in zip(lproj, rproj)]


def verify_meet_embedding(L):
    """The corner-meet map must be injective, bound-preserving, and turn
    meets into componentwise minima; checked exhaustively."""
    report = VerificationReport("corner-meet map is a meet-embedding")
    psi = natural_coords(L)
    report.record("injective", "all elements", len(set(psi)) == L.n)
    report.record("bottom at origin", L.label(L.bottom), psi[L.bottom] == (0, 0))
    frame = corners(L)
    report.record(
        "top at chain ends",
        L.label(L.top),
        psi[L.top] == (L.height(frame.left_corner), L.height(frame.right_corner)),
    )
    for x in L.elements():
        for y in L.elements():
            ux, vx = psi[x]
            uy, vy = psi[y]
            report.record(
                "meet goes to componentwise min",
                f"{L.label(x)},{L.label(y)}",
                psi[L.meet(x, y)] == (min(ux, uy), min(vx, vy)),
            )
    return report


def verify_c1_equals_natural(L, D):
    """The diagram's recovered coordinates must equal the corner-meet map,
    directly or mirrored."""
    report = VerificationReport("diagram coordinates equal corner-meet map")
    got = coordinates_of(D)
    psi = natural_coords(L)
    if got == psi:
        report.record("coordinates match", "direct", True)
        return report
    psi_mirror = [(v, u) for u, v in psi]
    if got == psi_mirror:
        report.record("coordinates match", "mirror", True)
        return report
    first_bad = next(
        x for x in L.elements() if got[x] != psi[x] and got[x] != psi_mirror[x]
    )
    report.record(
        "coordinates match",
        "direct-or-mirror",
        False,
        f"element {L.label(first_bad)}: got {got[first_bad]}, "
        f"expected {psi[first_bad]} or {psi_mirror[first_bad]}",
    )
    return report


def _affine_fit(ps1, ps2, reflected):
    """p2 == s*p1 + t (s > 0 rational, componentwise same s) for all points?"""
    if reflected:
        ps1 = [(-x, y) for x, y in ps1]
    ys1 = [p[1] for p in ps1]
    ys2 = [p[1] for p in ps2]
    span1 = max(ys1) - min(ys1)
    span2 = max(ys2) - min(ys2)
    if span1 == 0 or span2 == 0:
        return False
    s = Fraction(span2) / Fraction(span1)
    tx = ps2[0][0] - s * ps1[0][0]
    ty = ps2[0][1] - s * ps1[0][1]
    return all(
        p2 == (s * p1[0] + tx, s * p1[1] + ty) for p1, p2 in zip(ps1, ps2)
    )


def verify_c2_uniqueness(L, D1, D2):
    """Two diagrams of the same lattice must agree up to translation, scale
    and optional left-right reflection."""
    report = VerificationReport("diagram unique up to reflection")
    same_shape = len(D1.points) == len(D2.points) == L.n and D1.edges == D2.edges
    report.record("same element set", "guard", same_shape)
    if not same_shape:
        return report
    direct = _affine_fit(list(D1.points), list(D2.points), reflected=False)
    mirrored = _affine_fit(list(D1.points), list(D2.points), reflected=True)
    report.record(
        "agree up to scale/translation or reflection",
        "direct" if direct else "mirror",
        direct or mirrored,
    )
    return report


# -- step-by-step drawing of a fork script ---------------------------------


def _fork_drawing_step(points, cell, trace, left_edges, right_edges):
    """Place the fork elements inside an existing diagram.

    Work in the rotated projections p = (y-x)/2 and r = (y+x)/2: p is constant
    along 45-degree lines and grows along 135-degree ones, r the other way
    round.  Every subdivided left-trajectory edge occupies the same open
    p-band (p(o), p(c)) and every right one the same r-band (r(o), r(d)), so
    placing the middle element at the band center makes both trajectory lines
    normal, crosses every subdivided edge strictly inside, and leaves the
    middle edge steep.  Upper cell edges may be steep; only the two lower
    edges need to be normal.
    """
    po = points[cell.o]
    pc = points[cell.c]
    pd = points[cell.d]
    a_len = pc[1] - po[1]
    b_len = pd[1] - po[1]
    if pc != (po[0] - a_len, po[1] + a_len) or pd != (po[0] + b_len, po[1] + b_len):
        raise MalformedDiagramError("cell's lower edges are not normal")

    def plane(p, r):
        return (r - p, r + p)

    p_m = (po[1] - po[0]) / 2 + a_len / 2
    r_m = (po[1] + po[0]) / 2 + b_len / 2
    pm = plane(p_m, r_m)
    points[trace.m] = pm
    if _edge_kind(pm, points[cell.i]) != "steep":
        raise MalformedDiagramError("middle edge did not come out steep")

    for x_id, (u, v) in zip(trace.left, left_edges):
        r_u = (points[u][1] + points[u][0]) / 2
        pt = plane(p_m, r_u)
        if not (points[v][0] < pt[0] < points[u][0]) or not (
            points[u][1] < pt[1] < points[v][1]
        ):
            raise MalformedDiagramError("left trajectory leaves its edge")
        points[x_id] = pt
    for y_id, (u, v) in zip(trace.right, right_edges):
        p_u = (points[u][1] - points[u][0]) / 2
        pt = plane(p_u, r_m)
        if not (points[u][0] < pt[0] < points[v][0]) or not (
            points[u][1] < pt[1] < points[v][1]
        ):
            raise MalformedDiagramError("right trajectory leaves its edge")
        points[y_id] = pt


def replay_diagram(script, left_units=None, right_units=None):
    """Draw a fork script step by step from the grid diagram.

    Existing elements never move: each fork's elements are placed inside the
    current drawing with both trajectory lines normal and the middle edge
    steep.  Works along scripts whose steps satisfy the distributive-ideal
    condition (decomposition scripts always do).  Returns (lattice, diagram).
    """
    final = None
    points = None
    for before, cell, trace, after in replay_steps(script):
        if cell is None:
            start = natural_diagram(before, left_units, right_units)
            points = {x: start.points[x] for x in before.elements()}
        else:
            left_edges = _left_staircase(before, cell.o, cell.c)
            right_edges = _right_staircase(before, cell.o, cell.d)
            _fork_drawing_step(points, cell, trace, left_edges, right_edges)
        final = after

    frame = corners(final)
    lower_left = frame.lower_left
    lower_right = frame.lower_right
    lu = tuple(
        (points[hi][1] - points[lo][1] - points[hi][0] + points[lo][0]) / 2
        for lo, hi in zip(lower_left, lower_left[1:])
    )
    ru = tuple(
        (points[hi][1] - points[lo][1] + points[hi][0] - points[lo][0]) / 2
        for lo, hi in zip(lower_right, lower_right[1:])
    )
    diagram = Diagram(
        points=tuple(points[x] for x in final.elements()),
        edges=tuple(sorted(final.cover_pairs())),
        names=tuple(final.label(x) for x in final.elements()),
        left_units=lu,
        right_units=ru,
    )
    return final, diagram


# -- diagram validity -------------------------------------------------------


def _orientation(a, b, c):
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _segments_cross(p1, p2, q1, q2):
    if {p1, p2} & {q1, q2}:
        return False
    o1 = _orientation(p1, p2, q1)
    o2 = _orientation(p1, p2, q2)
    o3 = _orientation(q1, q2, p1)
    o4 = _orientation(q1, q2, p2)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == o2 == 0:  # collinear: overlapping interiors count

        def inside(a, b, c):
            return (
                min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])
                and c not in (a, b)
            )

        return any(inside(p1, p2, q) for q in (q1, q2)) or any(
            inside(q1, q2, p) for p in (p1, p2)
        )
    return False


def diagram_defects(L, D):
    """Why D fails to be a plane diagram of L (empty list when it is one).

    Checks distinct points, upward edges, the edge set matching the cover
    relation, no edge passing through a third element, and no two edges
    crossing; all in exact arithmetic.
    """
    problems = []
    if len(set(D.points)) != len(D.points):
        problems.append("coincident element points")
    if set(D.edges) != set(L.cover_pairs()):
        problems.append("edge set differs from the cover relation")
    for lo, hi in D.edges:
        if D.points[hi][1] <= D.points[lo][1]:
            problems.append(f"edge ({lo},{hi}) does not go upward")
    for lo, hi in D.edges:
        p, q = D.points[lo], D.points[hi]
        for x in range(len(D.points)):
            if x in (lo, hi):
                continue
            c = D.points[x]
            if (
                _orientation(p, q, c) == 0
                and min(p[0], q[0]) <= c[0] <= max(p[0], q[0])
                and min(p[1], q[1]) <= c[1] <= max(p[1], q[1])
            ):
                problems.append(f"edge ({lo},{hi}) passes through element {x}")
    for k, (a1, b1) in enumerate(D.edges):
        for a2, b2 in D.edges[k + 1:]:
            if _segments_cross(
                D.points[a1], D.points[b1], D.points[a2], D.points[b2]
            ):
                problems.append(f"edges ({a1},{b1}) and ({a2},{b2}) cross")
    return problems
