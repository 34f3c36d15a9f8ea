import random
from typing import List, Tuple

from hypothesis.strategies import composite, integers, lists, permutations, tuples

from cycletrace.graph import Multigraph, validate
from cycletrace.perm import EdgeOrdering


def _build(n: int, pairs: List[Tuple[int, int]]) -> Multigraph:
    return validate(
        [str(v) for v in range(1, n + 1)],
        [(f"e{k}", str(u), str(v)) for k, (u, v) in enumerate(pairs, start=1)],
    )


@composite
def trees(draw, max_vertices: int = 8) -> Multigraph:
    n = draw(integers(min_value=1, max_value=max_vertices))
    pairs = [(draw(integers(min_value=1, max_value=v - 1)), v) for v in range(2, n + 1)]
    return _build(n, pairs)


@composite
def multigraphs(draw, max_vertices: int = 6, max_edges: int = 8) -> Multigraph:
    """Connected loopless multigraphs: a random tree plus random extra edges."""
    n = draw(integers(min_value=1, max_value=min(max_vertices, max_edges + 1)))
    pairs = [(draw(integers(min_value=1, max_value=v - 1)), v) for v in range(2, n + 1)]
    if n >= 2:
        extra = draw(
            lists(
                tuples(integers(min_value=1, max_value=n), integers(min_value=1, max_value=n)).filter(
                    lambda p: p[0] != p[1]
                ),
                max_size=max_edges - (n - 1),
            )
        )
        pairs.extend(extra)
    return _build(n, pairs)


@composite
def graphs_with_orderings(draw, max_vertices: int = 6, max_edges: int = 8) -> Tuple[Multigraph, EdgeOrdering]:
    g = draw(multigraphs(max_vertices=max_vertices, max_edges=max_edges))
    sequence = draw(permutations(g.edges))
    return g, EdgeOrdering(sequence=tuple(sequence))


# Seeded generators for the counted suites.

def random_tree(rng: random.Random, n: int) -> Multigraph:
    return _build(n, [(rng.randint(1, v - 1), v) for v in range(2, n + 1)])


def random_multigraph(rng: random.Random, max_edges: int, min_vertices: int = 1) -> Multigraph:
    n = rng.randint(min_vertices, max_edges + 1)
    pairs = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    if n >= 2:
        for _ in range(rng.randint(0, max_edges - (n - 1))):
            u, v = rng.sample(range(1, n + 1), 2)
            pairs.append((u, v))
    return _build(n, pairs)


def random_ordering(rng: random.Random, g: Multigraph) -> EdgeOrdering:
    sequence = list(g.edges)
    rng.shuffle(sequence)
    return EdgeOrdering(sequence=tuple(sequence))
