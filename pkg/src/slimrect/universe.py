"""Exhaustive desk-scale enumeration of slim rectangular lattices.

Breadth-first over grids, inserting a fork at every 4-cell and deduplicating
by canonical code, up to a rank bound.  The resulting universe backs the
whole verification suite: every structural theorem is checked on every
member.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations

from slimrect.codes import canonical_code, code_key
from slimrect.core import is_slim, slimness_witness
from slimrect.diagram import (
    check_c1,
    check_c2,
    natural_diagram,
    verify_meet_embedding,
)
from slimrect.errors import ResourceCapError
from slimrect.fork import (
    ForkScript,
    cell_ref,
    cells4,
    delete_fork,
    find_covering_s7,
    insert_fork,
    is_sr_input,
    occurrence_of_trace,
)
from slimrect.rect import grid, verify_corollaries, verify_main_theorem
from slimrect.report import VerificationReport

DEFAULT_ELEMENT_CAP = 60
DEFAULT_CODE_CAP = 100_000


def element_cap():
    return int(os.environ.get("SLIMRECT_MAX_ELEMENTS", DEFAULT_ELEMENT_CAP))


@dataclass(frozen=True)
class Member:
    lattice: object
    script: ForkScript
    rank: int


@dataclass
class Universe:
    max_p: int
    max_q: int
    max_rank: int
    members: dict  # canonical code -> Member

    def __len__(self):
        return len(self.members)

    def codes(self):
        return sorted(self.members)

    def lattices(self):
        return [self.members[c].lattice for c in self.codes()]


def enumerate_sr(max_p, max_q, max_rank, max_elements=None, max_codes=DEFAULT_CODE_CAP):
    """All slim rectangular lattices reachable from grids up to the bounds."""
    if max_p < 2 or max_q < 2:
        raise ValueError("grids need chains of at least 2 elements")
    cap = element_cap() if max_elements is None else max_elements
    members = {}

    def add(lattice, script, rank):
        code = canonical_code(lattice)
        if code in members:
            return
        if lattice.n > cap:
            raise ResourceCapError(
                f"lattice with {lattice.n} elements exceeds the cap of {cap} "
                "(raise SLIMRECT_MAX_ELEMENTS to override)"
            )
        if len(members) >= max_codes:
            raise ResourceCapError(f"universe exceeds {max_codes} codes")
        members[code] = Member(lattice=lattice, script=script, rank=rank)

    for p in range(2, max_p + 1):
        for q in range(2, max_q + 1):
            add(grid(p, q), ForkScript(grid=(p, q), steps=()), 0)

    for r in range(max_rank):
        frontier = sorted(c for c, m in members.items() if m.rank == r)
        for code in frontier:
            member = members[code]
            for cell in cells4(member.lattice):
                ext, _ = insert_fork(member.lattice, cell)
                script = ForkScript(
                    grid=member.script.grid,
                    steps=member.script.steps + (cell_ref(member.lattice, cell),),
                )
                add(ext, script, r + 1)
    return Universe(max_p=max_p, max_q=max_q, max_rank=max_rank, members=members)


def oracle_join_irreducibles_two_chains(L):
    """Independent slimness oracle: join-irreducibles form two chains,
    i.e. contain no 3-element antichain."""
    ji = [x for x in L.elements() if len(L.down_covers(x)) == 1]
    for trip in combinations(ji, 3):
        if all(L.incomparable(x, y) for x, y in combinations(trip, 2)):
            return False
    return True


def branching_ranks(L, memo=None):
    """Fork-count over ALL minimal-deletion orders; {r} iff rank is
    well defined."""
    if memo is None:
        memo = {}
    code = canonical_code(L)
    if code in memo:
        return memo[code]
    occs = find_covering_s7(L, minimal_only=True)
    if not occs:
        out = frozenset({0})
    else:
        acc = set()
        for s in occs:
            reduced, _ = delete_fork(L, s)
            acc.update(r + 1 for r in branching_ranks(reduced, memo))
        out = frozenset(acc)
    memo[code] = out
    return out


ALL_CHECKS = ("sr", "main", "corollaries", "diagrams", "rank", "roundtrip", "slim-oracle")


def verify_universe(universe, checks=ALL_CHECKS):
    """Run the verification battery on every member; failures are entries."""
    report = VerificationReport("universe verification")
    memo = {}
    for code in universe.codes():
        member = universe.members[code]
        L = member.lattice
        subject = f"member[{code_key(code)}] n={L.n} rank={member.rank}"
        if "sr" in checks:
            report.record("member is slim rectangular", subject, is_sr_input(L))
        if "main" in checks:
            sub = verify_main_theorem(L)
            report.checks += sub.checks
            report.failures.extend(sub.failures)
        if "corollaries" in checks:
            sub = verify_corollaries(L)
            report.checks += sub.checks
            report.failures.extend(sub.failures)
        if "diagrams" in checks:
            d = natural_diagram(L)
            for sub in (
                verify_meet_embedding(L),
                check_c1(L, d),
                check_c2(L, d),
            ):
                report.checks += sub.checks
                report.failures.extend(sub.failures)
        if "rank" in checks:
            ranks = branching_ranks(L, memo)
            report.record(
                "rank independent of deletion order",
                subject,
                ranks == frozenset({member.rank}),
                f"observed fork counts {sorted(ranks)}",
            )
        if "roundtrip" in checks:
            for cell in cells4(L):
                ext, trace = insert_fork(L, cell)
                occ = occurrence_of_trace(L, cell, trace)
                reduced, cell_back = delete_fork(ext, occ, require_minimal=False)
                report.record(
                    "insert/delete round trip",
                    f"{subject} at {cell_ref(L, cell)}",
                    canonical_code(reduced) == code and reduced == L,
                )
        if "slim-oracle" in checks:
            report.record(
                "slimness matches two-chain oracle",
                subject,
                is_slim(L) == oracle_join_irreducibles_two_chains(L),
            )
    return report


def negative_control_passes():
    """Glue an M3 under a chain: both slimness routes must reject it."""
    from slimrect.core import validate

    glued = validate(
        [[0], [1, 2, 3], [4], [5]],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5)],
    )
    witness = slimness_witness(glued)
    return (
        witness is not None
        and not oracle_join_irreducibles_two_chains(glued)
        and not is_slim(glued)
    )
