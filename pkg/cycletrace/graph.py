"""Multigraph model: validation, subdivision, smoothing, spanning trees and co-tree components."""
import logging
from collections import Counter
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from cycletrace.errors import (
    DanglingEndpoint,
    DegreeNotTwo,
    Disconnected,
    DuplicateLabel,
    EmptyGraph,
    LoopEdge,
    NotASpanningTree,
    UnknownEdge,
    UnknownVertex,
    VertexLabelCollision,
    WouldCreateLoop,
)

logger = logging.getLogger(__name__)


class Multigraph(BaseModel):
    """Finite loopless multigraph with labelled vertices and edges.

    Vertex and edge order are part of the value: vertex positions give the
    indices permutations act on, edge positions give fixture order.
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]
    endpoints: Dict[str, Tuple[str, str]]

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _edge_index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _incident: Dict[str, Tuple[str, ...]] = PrivateAttr(default_factory=dict)
    _connected: bool = PrivateAttr(default=False)

    @model_validator(mode="after")
    def _check(self) -> "Multigraph":
        if not self.vertices:
            raise EmptyGraph("a graph needs at least one vertex")
        for label, count in Counter(self.vertices).items():
            if count > 1:
                raise DuplicateLabel(f"vertex {label!r} declared {count} times")
        for label, count in Counter(self.edges).items():
            if count > 1:
                raise DuplicateLabel(f"edge {label!r} declared {count} times")
        if set(self.endpoints) != set(self.edges):
            raise DuplicateLabel("endpoint map and edge list disagree")
        known = set(self.vertices)
        for e in self.edges:
            u, v = self.endpoints[e]
            if u == v:
                raise LoopEdge(f"edge {e!r} has both endpoints at {u!r}")
            for x in (u, v):
                if x not in known:
                    raise DanglingEndpoint(f"edge {e!r} ends at unknown vertex {x!r}")

        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        incident: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = self.endpoints[e]
            incident[u].append(e)
            incident[v].append(e)
        self._incident = {v: tuple(es) for v, es in incident.items()}
        self._connected = nx.is_connected(self.to_networkx())
        return self

    # -- queries ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_connected(self) -> bool:
        return self._connected

    @property
    def is_simple(self) -> bool:
        pairs = Counter(frozenset(self.endpoints[e]) for e in self.edges)
        return all(c == 1 for c in pairs.values())

    def index(self, v: str) -> int:
        """0-based position of vertex ``v``; permutation arithmetic runs on these."""
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"no vertex {v!r}") from None

    def edge_position(self, e: str) -> int:
        try:
            return self._edge_index[e]
        except KeyError:
            raise UnknownEdge(f"no edge {e!r}") from None

    def has_edge(self, e: str) -> bool:
        return e in self._edge_index

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def incident(self, v: str) -> Tuple[str, ...]:
        """Edges at ``v`` in edge order (I_v)."""
        if v not in self._incident:
            raise UnknownVertex(f"no vertex {v!r}")
        return self._incident[v]

    def degree(self, v: str) -> int:
        return len(self.incident(v))

    def other_end(self, e: str, v: str) -> str:
        u, w = self.endpoints[e]
        return w if u == v else u

    def require_connected(self) -> None:
        if not self._connected:
            raise Disconnected("operation needs a connected graph")

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(self.vertices)
        for e in self.edges:
            h.add_edge(*self.endpoints[e], key=e)
        return h


class SpanningTree(BaseModel):
    model_config = ConfigDict(frozen=True)

    host: Multigraph
    tree_edges: FrozenSet[str]

    def sorted_edges(self) -> Tuple[str, ...]:
        return tuple(e for e in self.host.edges if e in self.tree_edges)


class EdgeSubset(BaseModel):
    model_config = ConfigDict(frozen=True)

    edges: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


def validate(vertices: Iterable[str], edges: Iterable[Sequence[str]], strict: bool = True) -> Multigraph:
    """Build a checked graph from a raw description.

    ``edges`` holds ``(label, u, v)`` triples. Undeclared endpoints are added
    after the declared vertices in order of first appearance, unless ``strict``
    is set and at least one vertex was declared; then they raise
    DanglingEndpoint.
    """
    vertex_list = list(vertices)
    implied = not vertex_list or not strict
    seen = set(vertex_list)
    edge_labels: List[str] = []
    endpoints: Dict[str, Tuple[str, str]] = {}
    for label, u, v in edges:
        if label in endpoints:
            raise DuplicateLabel(f"edge {label!r} declared twice")
        edge_labels.append(label)
        endpoints[label] = (u, v)
        if u == v:
            raise LoopEdge(f"edge {label!r} has both endpoints at {u!r}")
        for x in (u, v):
            if x not in seen:
                if not implied:
                    raise DanglingEndpoint(f"edge {label!r} ends at undeclared vertex {x!r}")
                seen.add(x)
                vertex_list.append(x)
    return Multigraph(vertices=tuple(vertex_list), edges=tuple(edge_labels), endpoints=endpoints)


def betti(g: Multigraph) -> int:
    g.require_connected()
    return g.m - g.n + 1


def subdivide_edge(g: Multigraph, e: str, w: str, halves: Optional[Tuple[str, str]] = None) -> Multigraph:
    """Replace ``e = {u, v}`` by ``e.1 = {u, w}`` and ``e.2 = {v, w}``.

    ``halves`` overrides the two derived edge labels.
    """
    if not g.has_edge(e):
        raise UnknownEdge(f"no edge {e!r}")
    if g.has_vertex(w):
        raise VertexLabelCollision(f"vertex {w!r} already exists")
    u, v = g.endpoints[e]
    first, second = halves or (f"{e}.1", f"{e}.2")
    for label in (first, second):
        if label != e and g.has_edge(label):
            raise DuplicateLabel(f"edge {label!r} already exists")
    edges: List[str] = []
    endpoints = dict(g.endpoints)
    del endpoints[e]
    for x in g.edges:
        if x == e:
            edges.extend((first, second))
        else:
            edges.append(x)
    endpoints[first] = (u, w)
    endpoints[second] = (v, w)
    return Multigraph(vertices=g.vertices + (w,), edges=tuple(edges), endpoints=endpoints)


def smooth_vertex(g: Multigraph, w: str, label: Optional[str] = None) -> Multigraph:
    """Remove degree-2 vertex ``w`` and join its neighbours by one edge.

    The merged edge takes the place of the first incident edge and is named
    ``label`` (default ``<w>.s``).
    """
    if not g.has_vertex(w):
        raise UnknownVertex(f"no vertex {w!r}")
    incident = g.incident(w)
    if len(incident) != 2:
        raise DegreeNotTwo(f"vertex {w!r} has degree {len(incident)}")
    first, second = incident
    u, v = g.other_end(first, w), g.other_end(second, w)
    if u == v:
        raise WouldCreateLoop(f"both edges at {w!r} lead to {u!r}")
    merged = label or f"{w}.s"
    endpoints = {x: ends for x, ends in g.endpoints.items() if x not in incident}
    if merged in endpoints:
        raise DuplicateLabel(f"edge {merged!r} already exists")
    endpoints[merged] = (u, v)
    edges = tuple(merged if x == first else x for x in g.edges if x != second)
    vertices = tuple(x for x in g.vertices if x != w)
    return Multigraph(vertices=vertices, edges=edges, endpoints=endpoints)


def spanning_trees(g: Multigraph) -> Iterator[SpanningTree]:
    """Every spanning tree once, in lexicographic order of edge positions.

    Depth-first over edge positions; an edge closing a cycle is never taken
    and a branch stops once too few edges remain.
    """
    g.require_connected()
    need = g.n - 1
    ends = [(g.index(g.endpoints[e][0]), g.index(g.endpoints[e][1])) for e in g.edges]

    def extend(start: int, chosen: List[int], component: List[int]) -> Iterator[List[int]]:
        if len(chosen) == need:
            yield list(chosen)
            return
        for i in range(start, g.m - (need - len(chosen)) + 1):
            a, b = ends[i]
            ca, cb = component[a], component[b]
            if ca == cb:
                continue
            merged = [ca if c == cb else c for c in component]
            chosen.append(i)
            yield from extend(i + 1, chosen, merged)
            chosen.pop()

    for picked in extend(0, [], list(range(g.n))):
        yield SpanningTree(host=g, tree_edges=frozenset(g.edges[i] for i in picked))


def check_spanning_tree(g: Multigraph, t: SpanningTree) -> None:
    edges = t.tree_edges
    if not all(g.has_edge(e) for e in edges) or len(edges) != g.n - 1:
        raise NotASpanningTree("wrong edge set size or unknown edges")
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    for e in edges:
        h.add_edge(*g.endpoints[e], key=e)
    if not nx.is_tree(h):
        raise NotASpanningTree("edges do not form a spanning tree")


def cotree_components(g: Multigraph, t: SpanningTree) -> List[EdgeSubset]:
    """Connected components of ``G - T``, each as edges in edge order."""
    check_spanning_tree(g, t)
    rest = [e for e in g.edges if e not in t.tree_edges]
    h = nx.MultiGraph()
    for e in rest:
        h.add_edge(*g.endpoints[e], key=e)
    components = []
    for nodes in nx.connected_components(h):
        members = {key for _, _, key in h.subgraph(nodes).edges(keys=True)}
        components.append(EdgeSubset(edges=tuple(e for e in rest if e in members)))
    components.sort(key=lambda c: g.edge_position(c.edges[0]))
    return components


def _shape(h: nx.MultiGraph) -> Tuple:
    pairs = Counter(frozenset(p) for p in h.edges())
    return (
        h.number_of_nodes(),
        h.number_of_edges(),
        tuple(sorted(d for _, d in h.degree())),
        tuple(sorted(pairs.values())),
    )


def _as_multigraph(h: nx.MultiGraph) -> Multigraph:
    edges = sorted((min(u, v), max(u, v)) for u, v in h.edges())
    return validate(
        [str(v) for v in range(1, h.number_of_nodes() + 1)],
        [(f"e{i}", str(u), str(v)) for i, (u, v) in enumerate(edges, start=1)],
    )


def connected_multigraphs(max_edges: int) -> Iterator[Multigraph]:
    """Connected loopless multigraphs with at most ``max_edges`` edges, one per isomorphism class.

    Level m+1 comes from level m by adding a parallel/new edge between existing
    vertices or a pendant edge to a new vertex.
    """
    start = nx.MultiGraph()
    start.add_node(1)
    level = [start]
    yield _as_multigraph(start)
    for m in range(1, max_edges + 1):
        buckets: Dict[Tuple, List[nx.MultiGraph]] = {}
        found: List[nx.MultiGraph] = []
        for h in level:
            n = h.number_of_nodes()
            candidates = []
            for u in range(1, n + 1):
                for v in range(u + 1, n + 1):
                    c = h.copy()
                    c.add_edge(u, v)
                    candidates.append(c)
                c = h.copy()
                c.add_edge(u, n + 1)
                candidates.append(c)
            for c in candidates:
                bucket = buckets.setdefault(_shape(c), [])
                if any(nx.is_isomorphic(c, other) for other in bucket):
                    continue
                bucket.append(c)
                found.append(c)
        logger.debug("%d connected multigraphs with %d edges", len(found), m)
        for h in found:
            yield _as_multigraph(h)
        level = found
