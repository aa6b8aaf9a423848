"""Slim planar semimodular lattices: construction, fork calculus,
exhaustive enumeration, structural verification, and exact diagrams."""

from slimrect.codes import canonical_code, diagram_code
from slimrect.core import (
    LatticeDefect,
    LeveledLattice,
    M3Occurrence,
    N5Occurrence,
    S7Occurrence,
    find_defects,
    find_sublattice,
    is_distributive,
    is_distributive_ideal,
    is_semimodular,
    is_slim,
    left_of,
    semimodularity_witness,
    slimness_witness,
    validate,
)
from slimrect.diagram import (
    Diagram,
    EdgeClass,
    check_c1,
    check_c2,
    classify_edges,
    coordinates_of,
    diagram_defects,
    mirror_natural_diagram,
    natural_coords,
    natural_diagram,
    reflect,
    replay_diagram,
    verify_c1_equals_natural,
    verify_c2_uniqueness,
    verify_meet_embedding,
)
from slimrect.fork import (
    Cell4,
    CellRef,
    ForkScript,
    ForkTrace,
    cells4,
    decompose,
    delete_fork,
    find_covering_s7,
    insert_fork,
    rank,
    replay,
    replay_steps,
    resolve_cell,
)
from slimrect.rect import (
    RectFrame,
    RectInterval,
    boundary_chains,
    corners,
    grid,
    interval_sublattice,
    is_rectangular,
    is_sr,
    rectangular_intervals,
    verify_corollaries,
    verify_main_theorem,
)
from slimrect.render import render
from slimrect.report import VerificationReport
from slimrect.serialize import (
    lattice_payload,
    load_lattice,
    load_script,
    load_universe,
    save_universe,
    script_payload,
)
from slimrect.universe import (
    Universe,
    branching_ranks,
    enumerate_sr,
    oracle_join_irreducibles_two_chains,
    verify_universe,
)

__version__ = "0.1.0"
