"""Maximum genus, upper embeddability and the ordering constructions built on them.

Every exhaustive scan is capped by a budget; BudgetExceeded means "not
decided", never "no".
"""
import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict

from cycletrace.config import DEFAULT_BUDGET
from cycletrace.errors import (
    BudgetExceeded,
    InternalVerificationFailure,
    NotIdentityOrdering,
    NotSimple,
)
from cycletrace.formats import load_fixture, load_trails, walk_to_darts
from cycletrace.graph import (
    Multigraph,
    SpanningTree,
    betti,
    connected_multigraphs,
    cotree_components,
    spanning_trees,
    subdivide_edge,
)
from cycletrace.perm import (
    EdgeOrdering,
    is_full_cyclic_ordering,
    permutation_of_ordering,
    product_of_edges,
    smooth_ordering,
)
from cycletrace.rotation import (
    Dart,
    DartTable,
    RotationSystem,
    count_faces,
    orbit_face_bijection,
    orderable,
    rotation_from_ordering,
)

logger = logging.getLogger(__name__)


class MaxGenusResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_max: int
    witness: RotationSystem
    face_count: int


class FcpConstruction(BaseModel):
    """Intermediate values of the subdivide, order, smooth pipeline."""

    model_config = ConfigDict(frozen=True)

    ordering: EdgeOrdering
    one_face: RotationSystem
    subdivided: Multigraph
    subdivided_ordering: EdgeOrdering
    orbit_counts: List[int]


class EdenReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    m_even: bool
    trail_map: Dict[str, Tuple[str, ...]]
    conditions: Dict[str, bool]
    euler_feasible: bool

    @property
    def holds(self) -> bool:
        return self.m_even and all(self.conditions.values())


class Eden12Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: Dict[str, bool]
    trail_edge_total: int
    vertices: int
    edges: int
    implied_genus: int
    identity_ordering_exists: bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class OrderabilitySurvey(BaseModel):
    graphs: int = 0
    one_face_systems: int = 0
    orderable: int = 0


def _check_budget(needed: int, budget: int, what: str) -> None:
    logger.debug("%s: %d candidates, budget %d", what, needed, budget)
    if needed > budget:
        logger.info("%s: %d candidates exceed budget %d", what, needed, budget)
        raise BudgetExceeded(needed, budget)


# -- maximum genus ----------------------------------------------------------

def _scan(task) -> Optional[Tuple[Tuple[int, int, int], List[int]]]:
    """Least (faces, pivot choice, inner index) over the given pivot choices."""
    choices, size, pivot, pivot_indices, lower = task
    best = None
    for p in pivot_indices:
        fixed = list(choices)
        fixed[pivot] = [choices[pivot][p]]
        for inner, combo in enumerate(itertools.product(*fixed)):
            succ = DartTable.succ_of(combo, size)
            faces = count_faces(succ) if size else 1
            key = (faces, p, inner)
            if best is None or key < best[0]:
                best = (key, succ)
            if faces == lower:
                return best
    return best


def max_genus_bruteforce(g: Multigraph, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> MaxGenusResult:
    """Scan every rotation system for the fewest faces.

    The witness is the first minimiser in enumeration order whatever ``jobs``
    is: work is split over the choices at the first vertex with more than one
    cyclic order and results are reduced by enumeration position.
    """
    beta = betti(g)
    table = DartTable(g)
    _check_budget(table.size, budget, "rotation systems")
    choices = table.all_choices()
    size = len(table.source)
    lower = 1 if beta % 2 == 0 else 2
    pivot = next((x for x, c in enumerate(choices) if len(c) > 1), 0)
    indices = list(range(len(choices[pivot])))
    jobs = min(jobs, len(indices))
    if jobs > 1:
        tasks = [(choices, size, pivot, indices[k::jobs], lower) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for r in pool.map(_scan, tasks) if r is not None]
        key, succ = min(results, key=lambda r: r[0])
    else:
        key, succ = _scan((choices, size, pivot, indices, lower))
    faces = key[0]
    return MaxGenusResult(
        gamma_max=(beta + 1 - faces) // 2,
        witness=table.rotation_of(succ),
        face_count=faces,
    )


def odd_components(g: Multigraph, t: SpanningTree) -> int:
    return sum(1 for c in cotree_components(g, t) if len(c) % 2)


def xuong_deficiency(g: Multigraph) -> int:
    """Fewest odd co-tree components over all spanning trees."""
    return min(odd_components(g, t) for t in spanning_trees(g))


def max_genus_xuong(g: Multigraph) -> int:
    return (betti(g) - xuong_deficiency(g)) // 2


def is_upper_embeddable(g: Multigraph) -> Tuple[bool, Optional[SpanningTree]]:
    """True with a witness tree when some co-tree has at most one odd component.

    For even Betti number that means every component is even.
    """
    for t in spanning_trees(g):
        if odd_components(g, t) <= 1:
            return True, t
    return False, None


def decide_fcp(g: Multigraph) -> Tuple[bool, str, Optional[SpanningTree]]:
    """``(answer, reason, witness)``; reason is ``odd_betti``,
    ``no_even_cotree_spanning_tree`` or ``even_cotree_spanning_tree``."""
    if betti(g) % 2:
        return False, "odd_betti", None
    found, tree = is_upper_embeddable(g)
    if not found:
        return False, "no_even_cotree_spanning_tree", None
    return True, "even_cotree_spanning_tree", tree


def has_fcp_ordering(g: Multigraph) -> bool:
    return decide_fcp(g)[0]


# -- full cyclic construction ------------------------------------------------

class _Subdivision(NamedTuple):
    midpoint: str
    first: str
    second: str


def _fresh(base: str, taken: Set[str]) -> str:
    """``base``, or ``base`` with the least numeric suffix not in ``taken``; the result is added to ``taken``."""
    label, k = base, 2
    while label in taken:
        label, k = f"{base}{k}", k + 1
    taken.add(label)
    return label


def _subdivision_labels(g: Multigraph) -> Dict[str, _Subdivision]:
    """Midpoint and half-edge labels for every edge, clear of every label in ``g``."""
    taken = set(g.vertices) | set(g.edges)
    return {
        e: _Subdivision(_fresh(f"{e}.m", taken), _fresh(f"{e}.1", taken), _fresh(f"{e}.2", taken))
        for e in g.edges
    }


def build_fcp_construction(
    g: Multigraph, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> Optional[FcpConstruction]:
    """Find a one-face rotation system, subdivide every edge, order the
    subdivision by concatenating the rotations at the branch vertices, then
    smooth the midpoints away one at a time."""
    if not has_fcp_ordering(g):
        return None
    if g.n == 1:
        empty = EdgeOrdering(sequence=())
        return FcpConstruction(
            ordering=empty,
            one_face=RotationSystem(rotations={g.vertices[0]: ()}),
            subdivided=g,
            subdivided_ordering=empty,
            orbit_counts=[],
        )

    best = max_genus_bruteforce(g, budget, jobs)
    if best.face_count != 1:
        raise InternalVerificationFailure(f"best rotation system has {best.face_count} faces")
    rho = best.witness

    labels = _subdivision_labels(g)
    h = g
    for e in g.edges:
        s = labels[e]
        h = subdivide_edge(h, e, s.midpoint, (s.first, s.second))
    lifted = {}
    for v in g.vertices:
        lifted[v] = tuple(
            labels[e].first if g.endpoints[e][0] == v else labels[e].second for e in rho.at(v)
        )
    for s in labels.values():
        lifted[s.midpoint] = (s.first, s.second)
    rho_h = RotationSystem(rotations=lifted)

    sequence: List[str] = []
    for v in h.vertices:
        if h.degree(v) >= 3:
            sequence.extend(rho_h.at(v))
    placed = set(sequence)
    sequence.extend(e for e in h.edges if e not in placed)
    omega_h = EdgeOrdering(sequence=tuple(sequence))
    if rotation_from_ordering(h, omega_h) != rho_h:
        raise InternalVerificationFailure("concatenated ordering does not induce the lifted rotation")
    if permutation_of_ordering(h, omega_h).orbit_count() != 1:
        raise InternalVerificationFailure("ordering of the subdivision is not full cyclic")
    logger.info("full cyclic ordering of the subdivision with %d edges", h.m)

    counts = []
    current, omega = h, omega_h
    for e in g.edges:
        w = labels[e].midpoint
        current, omega = smooth_ordering(current, omega, w, label=e)
        ell = permutation_of_ordering(current, omega).orbit_count()
        counts.append(ell)
        if ell != 1:
            raise InternalVerificationFailure(f"smoothing {w} left {ell} orbits")

    if not is_full_cyclic_ordering(g, omega):
        raise InternalVerificationFailure("final ordering is not full cyclic")
    return FcpConstruction(
        ordering=omega,
        one_face=rho,
        subdivided=h,
        subdivided_ordering=omega_h,
        orbit_counts=counts,
    )


def construct_fcp_ordering(g: Multigraph, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Optional[EdgeOrdering]:
    construction = build_fcp_construction(g, budget, jobs)
    return construction.ordering if construction else None


# -- exhaustive ordering oracles --------------------------------------------

def _first_ordering(g: Multigraph, budget: int, accept) -> Optional[EdgeOrdering]:
    _check_budget(math.factorial(g.m), budget, "orderings")
    for sequence in itertools.permutations(g.edges):
        if accept(product_of_edges(g, sequence)):
            return EdgeOrdering(sequence=sequence)
    return None


def exhaustive_fcp_ordering(g: Multigraph, budget: int = DEFAULT_BUDGET) -> Optional[EdgeOrdering]:
    """First full cyclic ordering in lexicographic order of edge positions."""
    return _first_ordering(g, budget, lambda pi: pi.is_full_cycle())


def exhaustive_identity_ordering(g: Multigraph, budget: int = DEFAULT_BUDGET) -> Optional[EdgeOrdering]:
    return _first_ordering(g, budget, lambda pi: pi.is_identity())


# -- identity orderings --------------------------------------------------------

def check_trail_map(g: Multigraph, trails: Dict[str, Optional[Sequence[Dart]]]) -> EdenReport:
    """Check a vertex → closed trail map against the closed-trail conditions.

    A ``None`` trail is one that could not be realised in ``g``.
    """
    closed = True
    for walk in trails.values():
        if not walk:
            closed = False
            continue
        steps = zip(walk, walk[1:] + walk[:1])
        joined = all(d.target == nxt.source for d, nxt in steps)
        edges = [d.edge for d in walk]
        valid = all(g.has_edge(d.edge) and set(g.endpoints[d.edge]) == {d.source, d.target} for d in walk)
        closed = closed and joined and valid and len(set(edges)) == len(edges)

    edge_sets = {v: frozenset(d.edge for d in walk or ()) for v, walk in trails.items()}
    memberships = Counter(e for edges in edge_sets.values() for e in edges)
    conditions = {
        "closed_trails": closed,
        "bijective": set(trails) == set(g.vertices) and len(set(edge_sets.values())) == len(edge_sets),
        "contains_vertex": all(walk and v in {d.source for d in walk} for v, walk in trails.items()),
        "total_2m": sum(len(walk or ()) for walk in trails.values()) == 2 * g.m,
        "each_edge_twice": all(memberships[e] == 2 for e in g.edges) and set(memberships) <= set(g.edges),
    }
    return EdenReport(
        m_even=g.m % 2 == 0,
        trail_map={v: tuple(d.edge for d in walk or ()) for v, walk in trails.items()},
        conditions={k: bool(ok) for k, ok in conditions.items()},
        euler_feasible=g.m >= 2 * g.n - 2,
    )


def check_eden_conditions(g: Multigraph, omega: EdgeOrdering) -> EdenReport:
    """Trails read off the faces of ρ_ω for an identity ordering ω of a simple graph."""
    g.require_connected()
    if not g.is_simple:
        raise NotSimple("closed-trail conditions are stated for simple graphs")
    if not permutation_of_ordering(g, omega).is_identity():
        raise NotIdentityOrdering("π_ω is not the identity")
    trails = {}
    for orbit, face in orbit_face_bijection(g, omega).items():
        (v,) = orbit
        if not face:
            trails[v] = ()
            continue
        first = omega.induced(g, v)[0]
        start = face.index(Dart(first, v, g.other_end(first, v)))
        trails[v] = face[start:] + face[:start]
    return check_trail_map(g, trails)


def identity_ordering_feasible(g: Multigraph) -> bool:
    """Necessary conditions: m even, and n faces must fit Euler's formula (m ≥ 2n − 2)."""
    g.require_connected()
    return g.m % 2 == 0 and g.m >= 2 * g.n - 2


def find_identity_ordering(g: Multigraph, budget: int = DEFAULT_BUDGET) -> Optional[EdgeOrdering]:
    """Search rotation systems with n faces for one some ordering induces."""
    if not identity_ordering_feasible(g):
        return None
    if not g.edges:
        return EdgeOrdering(sequence=())
    table = DartTable(g)
    _check_budget(table.size, budget, "rotation systems")
    for succ in table.sigmas():
        if count_faces(succ) != g.n:
            continue
        omega = orderable(g, table.rotation_of(succ))
        if omega is None:
            continue
        if not permutation_of_ordering(g, omega).is_identity():
            raise InternalVerificationFailure("ordering of an n-face rotation system is not the identity")
        return omega
    return None


def verify_eden12_fixture() -> Eden12Report:
    """Check the bundled twelve-vertex graph against its trail map and Euler's formula."""
    g = load_fixture("eden12")
    walks = load_trails("eden12_trails")
    trails = {}
    for v, walk in walks.items():
        darts = walk_to_darts(g, walk)
        trails[v] = darts if darts and walk[0] == walk[-1] else None
    report = check_trail_map(g, trails)
    feasible = identity_ordering_feasible(g)
    checks = dict(report.conditions)
    checks["m_even"] = report.m_even
    checks["euler_infeasible"] = not feasible
    return Eden12Report(
        checks=checks,
        trail_edge_total=sum(len(t) for t in report.trail_map.values()),
        vertices=g.n,
        edges=g.m,
        implied_genus=(2 - g.n + g.m - g.n) // 2,
        identity_ordering_exists=feasible,
    )


def survey_one_face_orderability(max_edges: int, budget: int = DEFAULT_BUDGET) -> OrderabilitySurvey:
    """How many one-face rotation systems some ordering induces directly."""
    survey = OrderabilitySurvey()
    for g in connected_multigraphs(max_edges):
        if betti(g) % 2 or not g.edges:
            continue
        table = DartTable(g)
        _check_budget(table.size, budget, "rotation systems")
        survey.graphs += 1
        for succ in table.sigmas():
            if count_faces(succ) != 1:
                continue
            survey.one_face_systems += 1
            if orderable(g, table.rotation_of(succ)) is not None:
                survey.orderable += 1
    return survey
