"""Permutations of vertex indices and the edge-ordering product π_ω.

Composition is right-to-left: ``(p * q)(x) == p(q(x))``, so for an ordering
``(e_1, ..., e_m)`` the product ``τ_{e_m} ⋯ τ_{e_1}`` applies ``τ_{e_1}`` first.
"""
from collections import Counter
from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from cycletrace.errors import (
    EmptyOrdering,
    FixedPointPrecondition,
    InvalidOrdering,
    UnknownEdge,
)
from cycletrace.graph import Multigraph, smooth_vertex, subdivide_edge


class Permutation:
    """Bijection on ``0..n-1``; printed 1-based or through vertex labels."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self._images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = b, a
        return cls(images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __len__(self) -> int:
        return len(self._images)

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise ValueError("permutations act on different sets")
        return Permutation(self._images[x] for x in other._images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for x, y in enumerate(self._images):
            inv[y] = x
        return Permutation(inv)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """``by * self * by⁻¹``"""
        return by * self * by.inverse()

    def cycles(self) -> List[Tuple[int, ...]]:
        """Canonical cycle decomposition including fixed points.

        Cycles are sorted by their minimum and each starts at its minimum.
        """
        seen = [False] * len(self)
        result = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self._images[x]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def orbit_count(self) -> int:
        return len(self.cycles())

    def support(self) -> Tuple[int, ...]:
        return tuple(x for x, y in enumerate(self._images) if x != y)

    def sign(self) -> int:
        return -1 if (len(self) - self.orbit_count()) % 2 else 1

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self._images))

    def is_full_cycle(self) -> bool:
        return len(self) >= 1 and self.orbit_count() == 1

    def has_fixed_point(self) -> bool:
        return any(x == y for x, y in enumerate(self._images))

    def notation(self, labels: Optional[Sequence[str]] = None) -> str:
        """Cycle notation without 1-cycles, e.g. ``(1 3 2 5 4)``; identity is ``()``."""
        name = (lambda x: labels[x]) if labels is not None else (lambda x: str(x + 1))
        parts = ["(" + " ".join(name(x) for x in c) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "()"

    def __str__(self) -> str:
        return self.notation()

    def __repr__(self) -> str:
        return f"Permutation({self.notation()})"


class EdgeOrdering(BaseModel):
    """A linear order on the edges, as a sequence."""

    model_config = ConfigDict(frozen=True)

    sequence: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.sequence)

    def induced(self, g: Multigraph, v: str) -> Tuple[str, ...]:
        """ω_v: the order ω induces on the edges at ``v``."""
        at_v = set(g.incident(v))
        return tuple(e for e in self.sequence if e in at_v)

    def __str__(self) -> str:
        return ",".join(self.sequence)


def ordering(*edges: str) -> EdgeOrdering:
    return EdgeOrdering(sequence=tuple(edges))


def check_ordering(g: Multigraph, omega: EdgeOrdering) -> None:
    counts = Counter(omega.sequence)
    repeated = sorted(e for e, c in counts.items() if c > 1)
    if repeated:
        raise InvalidOrdering(f"edges listed more than once: {', '.join(repeated)}")
    unknown = [e for e in omega.sequence if not g.has_edge(e)]
    if unknown:
        raise InvalidOrdering(f"unknown edges: {', '.join(unknown)}")
    missing = [e for e in g.edges if e not in counts]
    if missing:
        raise InvalidOrdering(f"missing edges: {', '.join(missing)}")


def transposition_of_edge(g: Multigraph, e: str) -> Permutation:
    if not g.has_edge(e):
        raise UnknownEdge(f"no edge {e!r}")
    u, v = g.endpoints[e]
    return Permutation.transposition(g.n, g.index(u), g.index(v))


def product_of_edges(g: Multigraph, sequence: Sequence[str]) -> Permutation:
    # current[x] is where x has been moved so far; holder[y] is the x sitting at y
    current = list(range(g.n))
    holder = list(range(g.n))
    for e in sequence:
        u, v = g.endpoints[e]
        a, b = g.index(u), g.index(v)
        x, y = holder[a], holder[b]
        current[x], current[y] = b, a
        holder[a], holder[b] = y, x
    return Permutation(current)


def permutation_of_ordering(g: Multigraph, omega: EdgeOrdering) -> Permutation:
    """π_ω = τ_{e_m} ⋯ τ_{e_1}."""
    check_ordering(g, omega)
    return product_of_edges(g, omega.sequence)


def orbit_count(g: Multigraph, pi: Permutation) -> int:
    """ℓ: number of orbits of ⟨π⟩ on the vertices, fixed points included."""
    if len(pi) != g.n:
        raise ValueError(f"permutation on {len(pi)} points, graph has {g.n} vertices")
    return pi.orbit_count()


def is_full_cyclic_ordering(g: Multigraph, omega: EdgeOrdering) -> bool:
    return permutation_of_ordering(g, omega).is_full_cycle()


def is_identity_ordering(g: Multigraph, omega: EdgeOrdering) -> bool:
    return permutation_of_ordering(g, omega).is_identity()


def circular_shift(omega: EdgeOrdering) -> EdgeOrdering:
    """(e_1, ..., e_m) → (e_2, ..., e_m, e_1); π changes by conjugation with τ_{e_1}."""
    if not omega.sequence:
        raise EmptyOrdering("cannot shift an empty ordering")
    return EdgeOrdering(sequence=omega.sequence[1:] + omega.sequence[:1])


def rotate_to_front(omega: EdgeOrdering, e: str) -> EdgeOrdering:
    i = omega.sequence.index(e)
    return EdgeOrdering(sequence=omega.sequence[i:] + omega.sequence[:i])


def subdivide_ordering(
    g: Multigraph, omega: EdgeOrdering, e: str, w: str
) -> Tuple[Multigraph, EdgeOrdering]:
    """Subdivide ``e`` by ``w`` and order the result as (e.1, e.2, rest after shifting e first).

    ℓ is preserved.
    """
    if not g.has_edge(e):
        raise UnknownEdge(f"no edge {e!r}")
    check_ordering(g, omega)
    g2 = subdivide_edge(g, e, w)
    rest = rotate_to_front(omega, e).sequence[1:]
    return g2, EdgeOrdering(sequence=(f"{e}.1", f"{e}.2") + rest)


def smooth_ordering(
    g2: Multigraph, omega2: EdgeOrdering, w: str, label: Optional[str] = None
) -> Tuple[Multigraph, EdgeOrdering]:
    """Smooth ``w`` away; ω is ω′ shifted so the first edge at ``w`` leads, with the
    second edge at ``w`` dropped and the leader replaced by the merged edge.

    Refuses when π_{ω′} has a fixed point, the case where ℓ may change.
    """
    pi = permutation_of_ordering(g2, omega2)
    g = smooth_vertex(g2, w, label)
    if pi.has_fixed_point():
        fixed = [g2.vertices[x] for x in range(g2.n) if pi(x) == x]
        raise FixedPointPrecondition(f"π fixes {', '.join(fixed)}")
    at_w = set(g2.incident(w))
    lead = next(x for x in omega2.sequence if x in at_w)
    (trail,) = at_w - {lead}
    merged = next(x for x in g.edges if x not in g2.endpoints)
    shifted = rotate_to_front(omega2, lead).sequence
    sequence = (merged,) + tuple(x for x in shifted[1:] if x != trail)
    return g, EdgeOrdering(sequence=sequence)
