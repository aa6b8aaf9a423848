from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slimrect.diagram import (
    Diagram,
    check_c1,
    check_c2,
    classify_edges,
    coordinates_of,
    diagram_defects,
    edge_kinds,
    mirror_natural_diagram,
    natural_coords,
    natural_diagram,
    reflect,
    replay_diagram,
    verify_c1_equals_natural,
    verify_c2_uniqueness,
)
from slimrect.errors import MalformedDiagramError, NotRectangularError
from slimrect.fork import CellRef, ForkScript
from slimrect.rect import grid

import oracles
from conftest import A, B, M, O, T, X1, Y1

S7_SCRIPT = ForkScript(grid=(2, 2), steps=(CellRef(0, 0, 0),))
# second fork at the cell {x1, a, m, t} of S7
DOUBLE_SCRIPT = ForkScript(grid=(2, 2), steps=(CellRef(0, 0, 0), CellRef(1, 0, 0)))


def test_corner_meet_coordinates_of_s7(s7):
    assert natural_coords(s7) == [
        (0, 0),  # o
        (1, 0),  # x1
        (0, 1),  # y1
        (2, 0),  # a
        (1, 1),  # m
        (0, 2),  # b
        (2, 2),  # t
    ]


def test_corner_meet_coordinates_against_bound_scan_oracle(s7):
    from conftest import S7_COVERS

    mt = oracles.meet_table(7, S7_COVERS)
    for x in s7.elements():
        u, v = natural_coords(s7)[x]
        assert u == s7.height(mt[x, A])
        assert v == s7.height(mt[x, B])


def test_coordinates_preserve_bounds_and_meets(s7):
    for L in (s7, grid(2, 2), grid(3, 4)):
        psi = natural_coords(L)
        hmax = psi[L.top]
        assert psi[L.bottom] == (0, 0)
        assert all(0 <= u <= hmax[0] and 0 <= v <= hmax[1] for u, v in psi)
        assert len(set(psi)) == L.n  # injective
        for x in L.elements():
            for y in L.elements():
                mx = psi[L.meet(x, y)]
                assert mx == (min(psi[x][0], psi[y][0]), min(psi[x][1], psi[y][1]))


def test_grid_coordinates_are_product_coordinates():
    g = grid(3, 3)
    psi = natural_coords(g)
    for x in g.elements():
        i, j = map(int, g.label(x).split(","))
        assert psi[x] == (i, j)


def test_natural_diagram_points_of_s7(s7):
    d = natural_diagram(s7)
    assert d.points[O] == (0, 0)
    assert d.points[X1] == (-1, 1)
    assert d.points[Y1] == (1, 1)
    assert d.points[A] == (-2, 2)
    assert d.points[M] == (0, 2)
    assert d.points[B] == (2, 2)
    assert d.points[T] == (0, 4)


def test_natural_diagram_rejects_non_rectangular(chain3):
    with pytest.raises(NotRectangularError):
        natural_diagram(chain3)


def test_natural_diagram_of_non_slim_rectangular_collapses(m3):
    """M3 is rectangular but not slim: the corner-meet map stops being
    injective, and the drawn diagram degenerates."""
    d = natural_diagram(m3)
    assert diagram_defects(m3, d)  # coincident points


def test_natural_diagram_rejects_bad_units(s7):
    with pytest.raises(ValueError):
        natural_diagram(s7, left_units=[1, 0])
    with pytest.raises(ValueError):
        natural_diagram(s7, left_units=[1, 1, 1])


def test_s7_edge_classes(s7):
    kinds = edge_kinds(natural_diagram(s7))
    assert kinds[(M, T)] == "steep"
    normals = [k for e, k in kinds.items() if e != (M, T)]
    assert len(normals) == 8
    assert all(k in ("normal-left", "normal-right") for k in normals)
    assert kinds[(O, X1)] == "normal-left"
    assert kinds[(O, Y1)] == "normal-right"


def test_grid_diagram_all_normal():
    kinds = edge_kinds(natural_diagram(grid(3, 3)))
    assert set(kinds.values()) <= {"normal-left", "normal-right"}


def test_flat_edge_classifies_as_other():
    d = Diagram(
        points=((Fraction(0), Fraction(0)), (Fraction(3), Fraction(1))),
        edges=((0, 1),),
        names=("p", "q"),
    )
    assert classify_edges(d)[0].kind == "other"


def test_zero_length_edge_rejected():
    d = Diagram(
        points=((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))),
        edges=((0, 1),),
        names=("p", "q"),
    )
    with pytest.raises(MalformedDiagramError):
        classify_edges(d)


def test_check_c1_passes_on_natural_diagrams(s7):
    for L in (s7, grid(2, 2), grid(3, 3)):
        report = check_c1(L, natural_diagram(L))
        assert report.passed, report.render_text()


def test_check_c1_rejects_normal_middle_edge(s7):
    pts = list(natural_diagram(s7).points)
    pts[M] = (Fraction(-1), Fraction(3))  # m-t now 45 degrees
    bad = Diagram(points=tuple(pts), edges=natural_diagram(s7).edges, names=natural_diagram(s7).names)
    report = check_c1(s7, bad)
    assert not report.passed
    assert any("m-t" in f.subject for f in report.failures)


def test_steep_iff_peak_middle_in_natural_diagrams(s7):
    from slimrect.core import find_sublattice
    from slimrect.fork import replay

    for L in (s7, replay(DOUBLE_SCRIPT), grid(3, 4)):
        kinds = edge_kinds(natural_diagram(L))
        middles = {s.middle_edge() for s in find_sublattice(L, "S7_peak")}
        steep = {e for e, k in kinds.items() if k == "steep"}
        assert steep == middles


def test_check_c2_unit_diagram_passes(s7):
    for L in (s7, grid(3, 3)):
        assert check_c2(L, natural_diagram(L)).passed


def test_check_c2_uneven_units_fail(s7):
    d = natural_diagram(s7, left_units=[1, 2])
    assert not check_c2(s7, d).passed


def test_coordinates_of_inverts_natural(s7):
    for L in (s7, grid(3, 3)):
        assert coordinates_of(natural_diagram(L)) == natural_coords(L)


def test_coordinates_of_mirror_gives_swapped_map(s7):
    got = coordinates_of(mirror_natural_diagram(s7))
    assert got == [(v, u) for u, v in natural_coords(s7)]


def test_mirror_is_reflection(s7):
    for L in (s7, grid(2, 3)):
        d = natural_diagram(L)
        m = mirror_natural_diagram(L)
        assert m.points == reflect(d).points
        assert reflect(reflect(d)) == d


def test_c1_equals_natural_direct_and_mirror(s7):
    assert verify_c1_equals_natural(s7, natural_diagram(s7)).passed
    rep = verify_c1_equals_natural(s7, mirror_natural_diagram(s7))
    assert rep.passed


def test_replay_diagram_is_valid_and_natural(s7):
    for script in (S7_SCRIPT, DOUBLE_SCRIPT, ForkScript(grid=(3, 3), steps=())):
        L, d = replay_diagram(script)
        assert diagram_defects(L, d) == []
        assert check_c1(L, d).passed
        assert verify_c1_equals_natural(L, d).passed


def test_replay_diagram_of_s7_matches_fig_layout(s7):
    L, d = replay_diagram(S7_SCRIPT)
    assert coordinates_of(d) == natural_coords(L)
    kinds = edge_kinds(d)
    assert sum(1 for k in kinds.values() if k == "steep") == 1


def test_c2_uniqueness_same_and_mirror(s7):
    d1 = natural_diagram(s7)
    assert verify_c2_uniqueness(s7, d1, d1).passed
    assert verify_c2_uniqueness(s7, d1, mirror_natural_diagram(s7)).passed
    scaled = natural_diagram(s7, left_units=[2, 2], right_units=[2, 2])
    assert verify_c2_uniqueness(s7, d1, scaled).passed


def test_c2_uniqueness_guards_element_set(s7):
    assert not verify_c2_uniqueness(
        s7, natural_diagram(s7), natural_diagram(grid(3, 3))
    ).passed


def test_diagram_defects_detect_crossings(s7):
    d = natural_diagram(s7)
    pts = list(d.points)
    pts[A], pts[B] = pts[B], pts[A]  # swap the corners: edges must cross
    bad = Diagram(points=tuple(pts), edges=d.edges, names=d.names)
    problems = diagram_defects(s7, bad)
    assert any("cross" in p for p in problems)
    # cross-check one crossing with the independent segment oracle
    assert oracles.segments_properly_cross(pts[X1], pts[A], pts[Y1], pts[B])


units_strategy = st.lists(
    st.fractions(min_value=Fraction(1, 5), max_value=Fraction(5)),
    min_size=2,
    max_size=2,
)


@settings(max_examples=30, deadline=None)
@given(lu=units_strategy, ru=units_strategy)
def test_axis_rescaling_invariance(lu, ru):
    from slimrect.core import validate
    from conftest import S7_COVERS, S7_LABELS, S7_LEVELS

    s7 = validate(S7_LEVELS, S7_COVERS, S7_LABELS)
    d = natural_diagram(s7, left_units=lu, right_units=ru)
    assert coordinates_of(d) == natural_coords(s7)


@settings(max_examples=20, deadline=None)
@given(scale=st.fractions(min_value=Fraction(1, 7), max_value=Fraction(9)))
def test_edge_classes_scale_invariant(scale):
    from slimrect.core import validate
    from conftest import S7_COVERS, S7_LABELS, S7_LEVELS

    s7 = validate(S7_LEVELS, S7_COVERS, S7_LABELS)
    base = edge_kinds(natural_diagram(s7))
    scaled = edge_kinds(
        natural_diagram(s7, left_units=[scale] * 2, right_units=[scale] * 2)
    )
    assert base == scaled
