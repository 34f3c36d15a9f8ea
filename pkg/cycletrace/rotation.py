"""Darts, rotation systems and face tracing.

A dart ``(e, u, v)`` is edge ``e`` directed from ``u`` to ``v``. Given a
rotation system, ``sigma`` turns a dart about its source, ``alpha`` reverses
it and ``phi = sigma ∘ alpha`` walks along a face boundary.
"""
import itertools
import logging
import math
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, field_validator

from cycletrace.errors import (
    DartNotInGraph,
    InternalVerificationFailure,
    InvalidRotation,
    NegativeGenus,
    NonIntegerGenus,
)
from cycletrace.graph import Multigraph
from cycletrace.perm import EdgeOrdering, check_ordering, permutation_of_ordering

logger = logging.getLogger(__name__)


class Dart(NamedTuple):
    edge: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"({self.edge},{self.source},{self.target})"


def canonical_cut(cyclic: Sequence[str]) -> Tuple[str, ...]:
    """Rotate a cyclic sequence so its least label comes first."""
    cyclic = tuple(cyclic)
    if not cyclic:
        return cyclic
    i = cyclic.index(min(cyclic))
    return cyclic[i:] + cyclic[:i]


class RotationSystem(BaseModel):
    """Cyclic order of the incident edges at every vertex, stored at the canonical cut."""

    model_config = ConfigDict(frozen=True)

    rotations: Dict[str, Tuple[str, ...]]

    @field_validator("rotations")
    @classmethod
    def _canonical(cls, value: Dict[str, Tuple[str, ...]]) -> Dict[str, Tuple[str, ...]]:
        return {v: canonical_cut(seq) for v, seq in value.items()}

    def at(self, v: str) -> Tuple[str, ...]:
        return self.rotations[v]


class FaceTrace(BaseModel):
    model_config = ConfigDict(frozen=True)

    faces: List[Tuple[Dart, ...]]

    @property
    def count(self) -> int:
        return len(self.faces)

    def face_of(self, d: Dart) -> int:
        for k, face in enumerate(self.faces):
            if d in face:
                return k
        raise DartNotInGraph(f"dart {d} is on no face")

    def doubled_edges(self, k: int) -> Tuple[str, ...]:
        """Edges whose two darts both bound face ``k``; its walk crosses them twice."""
        edges = [d.edge for d in self.faces[k]]
        return tuple(dict.fromkeys(e for e in edges if edges.count(e) == 2))


def darts(g: Multigraph) -> Tuple[Dart, ...]:
    result = []
    for e in g.edges:
        u, v = g.endpoints[e]
        result.append(Dart(e, u, v))
        result.append(Dart(e, v, u))
    return tuple(sorted(result))


def alpha(d: Dart) -> Dart:
    return Dart(d.edge, d.target, d.source)


def _check_dart(g: Multigraph, d: Dart) -> None:
    if not g.has_edge(d.edge) or set(g.endpoints[d.edge]) != {d.source, d.target} or d.source == d.target:
        raise DartNotInGraph(f"dart {d} is not a dart of the graph")


def check_rotation(g: Multigraph, rho: RotationSystem) -> None:
    if set(rho.rotations) != set(g.vertices):
        raise InvalidRotation("rotation system must list every vertex exactly once")
    for v in g.vertices:
        if sorted(rho.rotations[v]) != sorted(g.incident(v)):
            raise InvalidRotation(f"rotation at {v!r} is not an order of its incident edges")


def sigma(g: Multigraph, rho: RotationSystem, d: Dart) -> Dart:
    """Next dart out of ``d.source`` in the cyclic order there."""
    _check_dart(g, d)
    cyclic = rho.at(d.source)
    following = cyclic[(cyclic.index(d.edge) + 1) % len(cyclic)]
    return Dart(following, d.source, g.other_end(following, d.source))


def phi(g: Multigraph, rho: RotationSystem, d: Dart) -> Dart:
    return sigma(g, rho, alpha(d))


def trace_faces(g: Multigraph, rho: RotationSystem) -> FaceTrace:
    """Orbits of φ on the darts; each orbit starts at its least dart."""
    check_rotation(g, rho)
    if not g.edges:
        return FaceTrace(faces=[()])
    traced = set()
    faces = []
    for start in darts(g):
        if start in traced:
            continue
        face = []
        d = start
        while d not in traced:
            traced.add(d)
            face.append(d)
            d = phi(g, rho, d)
        faces.append(tuple(face))
    return FaceTrace(faces=faces)


def face_count(g: Multigraph, rho: RotationSystem) -> int:
    check_rotation(g, rho)
    table = DartTable(g)
    return table.face_count(table.sigma_of(rho))


def genus_from_faces(g: Multigraph, faces: int) -> int:
    g.require_connected()
    twice = 2 - g.n + g.m - faces
    if twice % 2:
        raise NonIntegerGenus(f"V - E + F = {g.n - g.m + faces} is odd")
    if twice < 0:
        raise NegativeGenus(f"Euler formula gives genus {twice // 2}")
    return twice // 2


def genus_of(g: Multigraph, rho: RotationSystem) -> int:
    """(2 - V + E - F) / 2 for the embedding ``rho`` describes."""
    g.require_connected()
    return genus_from_faces(g, face_count(g, rho))


def rotation_from_ordering(g: Multigraph, omega: EdgeOrdering) -> RotationSystem:
    """ρ_ω: close each induced order ω_v into a cycle."""
    check_ordering(g, omega)
    return RotationSystem(rotations={v: omega.induced(g, v) for v in g.vertices})


def orbit_face_bijection(g: Multigraph, omega: EdgeOrdering) -> Dict[Tuple[str, ...], Tuple[Dart, ...]]:
    """Map each orbit of π_ω to the φ_ω-orbit of its first vertex's ω-least dart.

    Raises InternalVerificationFailure unless the map is well defined and
    bijective.
    """
    g.require_connected()
    pi = permutation_of_ordering(g, omega)
    rho = rotation_from_ordering(g, omega)
    trace = trace_faces(g, rho)
    if not g.edges:
        return {(g.vertices[0],): trace.faces[0]}

    def face_index(x: int) -> int:
        v = g.vertices[x]
        first = omega.induced(g, v)[0]
        return trace.face_of(Dart(first, v, g.other_end(first, v)))

    mapping: Dict[Tuple[str, ...], Tuple[Dart, ...]] = {}
    hit = set()
    for orbit in pi.cycles():
        targets = {face_index(x) for x in orbit}
        if len(targets) != 1:
            raise InternalVerificationFailure(f"orbit {orbit} meets faces {sorted(targets)}")
        (k,) = targets
        if k in hit:
            raise InternalVerificationFailure(f"face {k} is hit twice")
        hit.add(k)
        mapping[tuple(g.vertices[x] for x in orbit)] = trace.faces[k]
    if len(hit) != trace.count:
        raise InternalVerificationFailure(f"{trace.count - len(hit)} faces are not hit")
    return mapping


def orderable(g: Multigraph, rho: RotationSystem) -> Optional[EdgeOrdering]:
    """An ordering ω with ρ_ω = ρ, or None.

    Each vertex of degree ≥ 3 needs a cut point; the chains the cuts induce
    must have a common linear extension. Cut choices are searched depth first,
    abandoning a branch as soon as the chains close a cycle.
    """
    check_rotation(g, rho)
    constrained = [v for v in g.vertices if g.degree(v) >= 3]
    dag = nx.DiGraph()
    dag.add_nodes_from(g.edges)
    failed = set()

    def place(k: int) -> bool:
        if k == len(constrained):
            return True
        cyclic = rho.at(constrained[k])
        for cut in range(len(cyclic)):
            chain = cyclic[cut:] + cyclic[:cut]
            added = []
            consistent = True
            for a, b in zip(chain, chain[1:]):
                if dag.has_edge(a, b):
                    continue
                if nx.has_path(dag, b, a):
                    consistent = False
                    break
                dag.add_edge(a, b)
                added.append((a, b))
            if consistent:
                key = (k, frozenset(dag.edges()))
                if key not in failed:
                    if place(k + 1):
                        return True
                    failed.add(key)
            dag.remove_edges_from(added)
        return False

    if not place(0):
        return None
    omega = EdgeOrdering(sequence=tuple(nx.lexicographical_topological_sort(dag, key=g.edge_position)))
    if rotation_from_ordering(g, omega) != rho:
        raise InternalVerificationFailure("linear extension does not realise the rotation system")
    return omega


class DartTable:
    """Integer darts for fast scans: edge ``i`` gives dart ``2i`` (as listed) and ``2i + 1``.

    ``alpha`` is ``d ^ 1``; a rotation is a successor list ``succ`` over the
    out-darts of each vertex, and ``phi(d) = succ[d ^ 1]``.
    """

    def __init__(self, g: Multigraph):
        self.graph = g
        self.out: List[List[int]] = [[] for _ in g.vertices]
        self.source: List[int] = []
        for i, e in enumerate(g.edges):
            u, v = g.endpoints[e]
            self.source.extend((g.index(u), g.index(v)))
            self.out[g.index(u)].append(2 * i)
            self.out[g.index(v)].append(2 * i + 1)

    @property
    def size(self) -> int:
        """Number of rotation systems."""
        return math.prod(math.factorial(max(len(ds) - 1, 0)) for ds in self.out)

    def dart(self, d: int) -> Dart:
        g = self.graph
        e = g.edges[d // 2]
        u, v = g.endpoints[e]
        return Dart(e, u, v) if d % 2 == 0 else Dart(e, v, u)

    def out_dart(self, e: str, v: str) -> int:
        i = self.graph.edge_position(e)
        return 2 * i if self.graph.endpoints[e][0] == v else 2 * i + 1

    def sigma_of(self, rho: RotationSystem) -> List[int]:
        succ = [0] * len(self.source)
        for v in self.graph.vertices:
            cyclic = [self.out_dart(e, v) for e in rho.at(v)]
            for a, b in zip(cyclic, cyclic[1:] + cyclic[:1]):
                succ[a] = b
        return succ

    def vertex_choices(self, x: int) -> List[Tuple[int, ...]]:
        """Cyclic orders at vertex ``x``, first out-dart fixed."""
        ds = self.out[x]
        if len(ds) <= 2:
            return [tuple(ds)]
        return [(ds[0],) + rest for rest in itertools.permutations(ds[1:])]

    def all_choices(self) -> List[List[Tuple[int, ...]]]:
        return [self.vertex_choices(x) for x in range(len(self.out))]

    @staticmethod
    def succ_of(cyclics: Sequence[Tuple[int, ...]], size: int) -> List[int]:
        succ = [0] * size
        for cyclic in cyclics:
            for a, b in zip(cyclic, cyclic[1:] + cyclic[:1]):
                succ[a] = b
        return succ

    def sigmas(self) -> Iterator[List[int]]:
        size = len(self.source)
        for combo in itertools.product(*self.all_choices()):
            yield self.succ_of(combo, size)

    def face_count(self, succ: Sequence[int]) -> int:
        if not succ:
            return 1
        return count_faces(succ)

    def rotation_of(self, succ: Sequence[int]) -> RotationSystem:
        rotations = {}
        for x, v in enumerate(self.graph.vertices):
            cyclic = []
            if self.out[x]:
                d = self.out[x][0]
                while True:
                    cyclic.append(self.graph.edges[d // 2])
                    d = succ[d]
                    if d == self.out[x][0]:
                        break
            rotations[v] = tuple(cyclic)
        return RotationSystem(rotations=rotations)


def count_faces(succ: Sequence[int]) -> int:
    """Cycles of ``d ↦ succ[d ^ 1]``."""
    seen = [False] * len(succ)
    faces = 0
    for start in range(len(succ)):
        if seen[start]:
            continue
        faces += 1
        d = start
        while not seen[d]:
            seen[d] = True
            d = succ[d ^ 1]
    return faces
