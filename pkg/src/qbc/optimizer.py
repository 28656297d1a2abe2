"""Choose the cheapest completion of a partial quantum table.

Every unspecified cell leaves the table free to map a state to several
destinations.  The admissible assignments form a digraph over the 2^t
states, and a valid completion is exactly a family of vertex-disjoint
cycles covering every vertex.  This module enumerates the candidate cycles
(each priced by its synthesized gate count), prunes with three reduction
rules, and finds a provably minimum-cost cover by depth-first search with
an incumbent bound; a Hamming-greedy fallback covers instances too large to
enumerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bitcore import BitPattern, matches
from .gates import DEFAULT_COST_MODEL, CostModel
from .perm import Cycle, Permutation, to_cycles
from .synth import cycle_elementary_cost, cycle_tgate_cost
from .tables import QuantumTable

DEFAULT_MAX_CYCLES = 100_000

OBJECTIVES = ("tgate", "elementary")


class InfeasibleError(Exception):
    """No disjoint-cycle cover exists for the instance."""


class CycleLimitExceeded(Exception):
    """Candidate enumeration hit its cap; callers should fall back to greedy."""


@dataclass(frozen=True)
class CompletionGraph:
    """Digraph of admissible state mappings: edge (i, j) iff row i may map to j."""

    width: int
    edges: tuple[tuple[int, ...], ...]

    def out_degree(self, vertex: int) -> int:
        return len(self.edges[vertex])

    def edge_count(self) -> int:
        return sum(len(dests) for dests in self.edges)


@dataclass(frozen=True)
class CandidateCycle:
    cycle: Cycle
    tgate_cost: int
    elementary_cost: int


def build_graph(qt: QuantumTable) -> CompletionGraph:
    """Edges per the wildcard-match predicate; a row with u specified cells
    contributes exactly 2^(t-u) out-edges, listed in ascending destination order."""
    edges = tuple(
        tuple(dest.value for dest in row.completions())
        for row in qt.phi
    )
    return CompletionGraph(qt.width, edges)


def enumerate_cycles(graph: CompletionGraph, *, max_cycles: int = DEFAULT_MAX_CYCLES,
                     max_depth: int | None = None,
                     cost_model: CostModel = DEFAULT_COST_MODEL) -> list[CandidateCycle]:
    """Every directed simple cycle of the graph, each exactly once.

    Pivots over edges in ascending (source, destination) order: all cycles
    through the pivot edge are closed off with simple paths that avoid
    already-deleted (smaller) edges, then the pivot is deleted.  Since any
    path step out of a vertex below the pivot source would use a deleted
    edge, the search only ever walks vertices above the pivot source, which
    is what makes each cycle show up exactly once (at its minimal edge).
    Raises CycleLimitExceeded when more than ``max_cycles`` cycles exist or
    a path would exceed ``max_depth`` vertices.
    """
    width = graph.width
    size = 1 << width
    if max_depth is None:
        max_depth = size
    found: list[tuple[int, ...]] = []

    def emit(encodings: tuple[int, ...]) -> None:
        if len(found) >= max_cycles:
            raise CycleLimitExceeded(f"more than {max_cycles} candidate cycles")
        found.append(encodings)

    for src in range(size):
        if src in graph.edges[src]:
            emit((src,))
        for dst in graph.edges[src]:
            if dst <= src:
                continue
            # Simple paths dst -> src through vertices above src.
            path = [dst]
            on_path = {dst}
            stack: list[tuple[int, int]] = [(dst, 0)]
            while stack:
                vertex, idx = stack[-1]
                neighbors = graph.edges[vertex]
                advanced = False
                while idx < len(neighbors):
                    nxt = neighbors[idx]
                    idx += 1
                    if nxt == src:
                        emit((src, *path))
                        continue
                    if nxt < src or nxt in on_path:
                        continue
                    if len(path) >= max_depth:
                        # Silently dropping long paths would make the
                        # enumeration incomplete, so signal instead.
                        raise CycleLimitExceeded(f"path depth limit {max_depth} exceeded")
                    stack[-1] = (vertex, idx)
                    stack.append((nxt, 0))
                    path.append(nxt)
                    on_path.add(nxt)
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    on_path.discard(path.pop())
    candidates = []
    for encodings in found:
        cycle = Cycle(width, tuple(BitPattern(width, v) for v in encodings))
        candidates.append(CandidateCycle(
            cycle, cycle_tgate_cost(cycle), cycle_elementary_cost(cycle, cost_model)))
    return candidates


class PartitionInstance:
    """A set-partitioning instance: cover all 2^t vertices with disjoint cycles.

    ``marks`` is the selection state per candidate: +1 included, -1 excluded,
    0 open.  The incidence structure is kept sparse: ``cycle_vertices[j]`` is
    the vertex set of candidate j and ``vertex_cycles[i]`` lists the
    candidates through vertex i.
    """

    def __init__(self, graph: CompletionGraph, candidates: list[CandidateCycle],
                 objective: str = "tgate"):
        if objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {objective!r}")
        self.graph = graph
        self.candidates = tuple(candidates)
        self.objective = objective
        self.marks = [0] * len(self.candidates)
        size = 1 << graph.width
        self.cycle_vertices: list[frozenset[int]] = []
        self.cycle_masks: list[int] = []
        self.vertex_cycles: list[list[int]] = [[] for _ in range(size)]
        for j, cand in enumerate(self.candidates):
            vertices = frozenset(e.value for e in cand.cycle.elements)
            self.cycle_vertices.append(vertices)
            mask = 0
            for v in vertices:
                mask |= 1 << v
                self.vertex_cycles[v].append(j)
            self.cycle_masks.append(mask)
        self.stats = {
            "candidates": len(self.candidates),
            "reductions_fired": 0,
            "nodes_expanded": 0,
        }

    def cost_of(self, j: int) -> int:
        cand = self.candidates[j]
        return cand.tgate_cost if self.objective == "tgate" else cand.elementary_cost

    def covers(self, vertex: int, j: int) -> bool:
        return vertex in self.cycle_vertices[j]


def reduce(inst: PartitionInstance) -> PartitionInstance:
    """Apply the three reduction rules until nothing fires.

    (i) a vertex with no remaining cover means no solution exists;
    (ii) a vertex covered by exactly one non-excluded cycle forces that
    cycle in; (iii) open cycles overlapping an included one are excluded.
    Vertices of included cycles count as satisfied.  Raises InfeasibleError
    when rule (i) fires; otherwise returns the instance, marks updated.
    """
    size = 1 << inst.graph.width
    fired = 1
    while fired:
        fired = 0
        satisfied: set[int] = set()
        for j, mark in enumerate(inst.marks):
            if mark == 1:
                satisfied |= inst.cycle_vertices[j]
        for j, mark in enumerate(inst.marks):
            if mark == 0 and inst.cycle_vertices[j] & satisfied:
                inst.marks[j] = -1
                fired += 1
        for vertex in range(size):
            if vertex in satisfied:
                continue
            open_cycles = [j for j in inst.vertex_cycles[vertex] if inst.marks[j] != -1]
            if not open_cycles:
                raise InfeasibleError(f"vertex {vertex} has no remaining cover")
            if len(open_cycles) == 1 and inst.marks[open_cycles[0]] == 0:
                inst.marks[open_cycles[0]] = 1
                fired += 1
        inst.stats["reductions_fired"] += fired
    return inst


def solve_exact(inst: PartitionInstance, *, use_reductions: bool = True) -> list[Cycle]:
    """Minimum-cost disjoint-cycle cover by depth-first branch and bound.

    Branches on the uncovered vertex with the fewest open covers (ties
    toward the lowest encoding), trying its candidate cycles in ascending
    (cost, elements) order; partial selections whose cost reaches the
    incumbent are pruned.  With reductions enabled, each inclusion
    propagates the reduction rules (with undo on backtrack).
    """
    size = 1 << inst.graph.width
    full = (1 << size) - 1
    ncand = len(inst.candidates)
    marks = inst.marks
    masks = inst.cycle_masks
    vertex_cycles = inst.vertex_cycles
    cycle_vertices = inst.cycle_vertices
    costs = [inst.cost_of(j) for j in range(ncand)]

    sort_key = [
        (costs[j], tuple(e.value for e in inst.candidates[j].cycle.elements))
        for j in range(ncand)
    ]
    ordered: list[list[int]] = [
        sorted(vertex_cycles[v], key=sort_key.__getitem__) for v in range(size)
    ]
    # Non-excluded cycles per vertex, maintained incrementally under exclusion.
    open_count = [0] * size
    for j in range(ncand):
        if marks[j] != -1:
            for v in cycle_vertices[j]:
                open_count[v] += 1

    trail: list[tuple[int, int]] = []

    def set_mark(j: int, value: int) -> None:
        trail.append((j, marks[j]))
        if value == -1 and marks[j] != -1:
            for v in cycle_vertices[j]:
                open_count[v] -= 1
        marks[j] = value

    def undo(upto: int) -> None:
        while len(trail) > upto:
            j, old = trail.pop()
            if marks[j] == -1 and old != -1:
                for v in cycle_vertices[j]:
                    open_count[v] += 1
            marks[j] = old

    def propagate(pending: list[int], covered: int, cost: int) -> tuple[int, int]:
        """Include the pending cycles plus everything the rules force; raises
        InfeasibleError on a wiped-out vertex or a forced overlap."""
        queue = list(pending)
        while queue:
            j = queue.pop()
            if marks[j] == 1:
                continue
            if marks[j] == -1 or masks[j] & covered:
                raise InfeasibleError("forced cycle conflicts with current selection")
            set_mark(j, 1)
            covered |= masks[j]
            cost += costs[j]
            inst.stats["reductions_fired"] += 1
            for v in cycle_vertices[j]:
                for k in vertex_cycles[v]:
                    if k != j and marks[k] == 0:
                        set_mark(k, -1)
                        inst.stats["reductions_fired"] += 1
                        for w in cycle_vertices[k]:
                            if covered >> w & 1:
                                continue
                            if open_count[w] == 0:
                                raise InfeasibleError(f"vertex {w} has no remaining cover")
                            if open_count[w] == 1:
                                queue.extend(
                                    c for c in vertex_cycles[w] if marks[c] != -1
                                )
        return covered, cost

    best_cost = [None]
    best_selection = [None]

    def search(covered: int, cost: int) -> None:
        inst.stats["nodes_expanded"] += 1
        if best_cost[0] is not None and cost >= best_cost[0]:
            return
        if covered == full:
            best_cost[0] = cost
            best_selection[0] = [j for j in range(ncand) if marks[j] == 1]
            return
        # Branch on the uncovered vertex with the fewest open covers (ties
        # toward the lowest encoding); candidate order below stays by cost.
        v = min(
            (u for u in range(size) if not covered >> u & 1),
            key=lambda u: (open_count[u], u),
        )
        entry = len(trail)
        for j in ordered[v]:
            if marks[j] != 0 or masks[j] & covered:
                continue
            before = len(trail)
            try:
                if use_reductions:
                    new_covered, new_cost = propagate([j], covered, cost)
                else:
                    set_mark(j, 1)
                    new_covered, new_cost = covered | masks[j], cost + costs[j]
                search(new_covered, new_cost)
            except InfeasibleError:
                pass
            undo(before)
            set_mark(j, -1)
        undo(entry)

    root = len(trail)
    covered = cost = 0
    for j in range(ncand):
        if marks[j] == 1:
            covered |= masks[j]
            cost += costs[j]
    try:
        if use_reductions:
            forced = []
            for v in range(size):
                if covered >> v & 1:
                    continue
                if open_count[v] == 0:
                    raise InfeasibleError(f"vertex {v} has no remaining cover")
                if open_count[v] == 1:
                    forced.extend(k for k in vertex_cycles[v] if marks[k] != -1)
            covered, cost = propagate(forced, covered, cost)
        search(covered, cost)
    finally:
        selection = (
            None if best_selection[0] is None
            else [inst.candidates[j].cycle for j in best_selection[0]]
        )
        undo(root)
    if selection is None:
        raise InfeasibleError("no disjoint-cycle cover exists")
    inst.stats["final_cost"] = best_cost[0]
    return sorted(selection, key=lambda c: c.elements[0].value)


def solve_greedy(qt: QuantumTable) -> list[Cycle]:
    """A feasible completion without enumeration: constrained rows first,
    then free rows, each taking the nearest unused compatible destination.

    Constrained rows have pairwise-disjoint destination sets by
    construction, so resolving them before the fully-open rows always
    succeeds; ties break toward the smallest encoding.
    """
    size = 1 << qt.width
    image: list[int | None] = [None] * size
    used = [False] * size

    def assign(row: int, dest: int) -> None:
        image[row] = dest
        used[dest] = True

    constrained = [i for i in range(size) if qt.phi[i].specified_count() > 0]
    free = [i for i in range(size) if qt.phi[i].specified_count() == 0]
    for row in constrained:
        source = qt.psi[row]
        best = None
        for dest in qt.phi[row].completions():
            if used[dest.value]:
                continue
            key = ((source.value ^ dest.value).bit_count(), dest.value)
            if best is None or key < best:
                best = key
        if best is None:
            raise InfeasibleError(f"constrained rows are not injective at row {row}")
        assign(row, best[1])
    for row in free:
        if not used[row]:
            assign(row, row)
            continue
        # Nearest unused destination: search Hamming rings of growing radius.
        found = None
        for radius in range(1, qt.width + 1):
            ring = [
                row ^ flips
                for flips in _masks_of_popcount(qt.width, radius)
                if not used[row ^ flips]
            ]
            if ring:
                found = min(ring)
                break
        assert found is not None, "free rows always have a leftover destination"
        assign(row, found)
    perm = Permutation(qt.width, tuple(image))
    return to_cycles(perm)


def _masks_of_popcount(width: int, k: int) -> list[int]:
    out = []
    for combo in combinations(range(width), k):
        mask = 0
        for pos in combo:
            mask |= 1 << pos
        out.append(mask)
    return out


def complete_table(qt: QuantumTable, selection: list[Cycle]) -> Permutation:
    """The permutation induced by a disjoint cycle cover of the table.

    Validates that the cover is disjoint, total, and compatible with every
    specified cell of the table's output side.
    """
    size = 1 << qt.width
    image: list[int | None] = [None] * size
    for cycle in selection:
        if cycle.width != qt.width:
            raise ValueError(f"cycle width {cycle.width} does not match table width {qt.width}")
        n = len(cycle.elements)
        for i, element in enumerate(cycle.elements):
            nxt = cycle.elements[(i + 1) % n]
            if image[element.value] is not None:
                raise ValueError(f"selection is not disjoint at state {element}")
            if not matches(qt.phi[element.value], nxt):
                raise ValueError(f"mapping {element} -> {nxt} contradicts the table")
            image[element.value] = nxt.value
    if any(dest is None for dest in image):
        missing = next(i for i, dest in enumerate(image) if dest is None)
        raise ValueError(f"selection does not cover state {missing}")
    return Permutation(qt.width, tuple(image))
