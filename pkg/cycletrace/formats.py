"""Text formats for graphs, orderings and rotation systems, plus fixture loading.

Graph files hold ``vertex <label>`` and ``edge <label> <u> <v>`` lines, ordering
files a single ``order <e> <e> ...`` line and rotation files one
``rot <vertex>: <e> <e> ...`` line per vertex. ``#`` starts a comment.
"""
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import yaml

from cycletrace.errors import ParseError, UnknownVertex
from cycletrace.graph import Multigraph, validate
from cycletrace.perm import EdgeOrdering
from cycletrace.rotation import Dart, FaceTrace, RotationSystem

FIXTURE_DIR = Path(__file__).parent / "fixtures"
LABEL = re.compile(r"[A-Za-z0-9_.]+")


def _tokens(text: str) -> Iterator[Tuple[int, List[Tuple[int, str]]]]:
    """Yield ``(line_no, [(column, token), ...])`` for non-empty lines."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if tokens:
            yield line_no, tokens


def _label(token: Tuple[int, str], line_no: int, source: str) -> str:
    column, text = token
    if not LABEL.fullmatch(text):
        raise ParseError(f"bad label {text!r}", line_no, column, source)
    return text


def parse_graph(text: str, source: str = "<graph>") -> Multigraph:
    vertices: List[str] = []
    edges: List[Tuple[str, str, str]] = []
    last_line = 1
    for line_no, tokens in _tokens(text):
        last_line = line_no
        keyword = tokens[0][1]
        if keyword == "vertex":
            if len(tokens) != 2:
                column = tokens[2][0] if len(tokens) > 2 else tokens[0][0]
                raise ParseError("expected: vertex <label>", line_no, column, source)
            vertices.append(_label(tokens[1], line_no, source))
        elif keyword == "edge":
            if len(tokens) != 4:
                column = tokens[4][0] if len(tokens) > 4 else tokens[0][0]
                raise ParseError("expected: edge <label> <u> <v>", line_no, column, source)
            edges.append(tuple(_label(t, line_no, source) for t in tokens[1:]))
        else:
            raise ParseError(f"unknown directive {keyword!r}", line_no, tokens[0][0], source)
    if not vertices and not edges:
        raise ParseError("no vertices or edges", last_line, 1, source)
    return validate(vertices, edges, strict=False)


def emit_graph(g: Multigraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e} {g.endpoints[e][0]} {g.endpoints[e][1]}" for e in g.edges]
    return "\n".join(lines) + "\n"


def parse_ordering(text: str, source: str = "<ordering>") -> EdgeOrdering:
    lines = list(_tokens(text))
    if len(lines) != 1:
        line_no = lines[1][0] if len(lines) > 1 else 1
        raise ParseError("expected exactly one order line", line_no, 1, source)
    line_no, tokens = lines[0]
    if tokens[0][1] != "order":
        raise ParseError(f"unknown directive {tokens[0][1]!r}", line_no, tokens[0][0], source)
    return EdgeOrdering(sequence=tuple(_label(t, line_no, source) for t in tokens[1:]))


def emit_ordering(omega: EdgeOrdering) -> str:
    return " ".join(("order",) + omega.sequence) + "\n"


def parse_order_option(value: str) -> EdgeOrdering:
    """``--order`` value: a comma list, a space list or an ordering file path."""
    path = Path(value)
    if path.is_file():
        return parse_ordering(path.read_text(encoding="utf-8"), str(path))
    return parse_order_list(value, "--order")


def parse_order_list(value: str, source: str = "<ordering>") -> EdgeOrdering:
    """An ``order ...`` line or a bare comma/space separated edge list."""
    if value.lstrip().startswith("order "):
        return parse_ordering(value, source)
    parts = [p for p in re.split(r"[,\s]+", value.strip()) if p]
    for part in parts:
        if not LABEL.fullmatch(part):
            raise ParseError(f"bad label {part!r}", 1, value.find(part) + 1, source)
    return EdgeOrdering(sequence=tuple(parts))


def parse_rotation(text: str, source: str = "<rotation>") -> RotationSystem:
    rotations: Dict[str, Tuple[str, ...]] = {}
    for line_no, tokens in _tokens(text):
        if tokens[0][1] != "rot" or len(tokens) < 2 or not tokens[1][1].endswith(":"):
            raise ParseError("expected: rot <vertex>: <e> ...", line_no, tokens[0][0], source)
        column, head = tokens[1]
        vertex = _label((column, head[:-1]), line_no, source)
        if vertex in rotations:
            raise ParseError(f"vertex {vertex!r} listed twice", line_no, column, source)
        rotations[vertex] = tuple(_label(t, line_no, source) for t in tokens[2:])
    return RotationSystem(rotations=rotations)


def emit_rotation(g: Multigraph, rho: RotationSystem) -> str:
    lines = []
    for v in g.vertices:
        lines.append(" ".join([f"rot {v}:"] + list(rho.at(v))))
    return "\n".join(lines) + "\n"


def emit_faces(trace: FaceTrace) -> str:
    lines = []
    for k, face in enumerate(trace.faces, start=1):
        lines.append(" ".join([f"face {k}:"] + [str(d) for d in face]))
    return "\n".join(lines) + "\n"


def faces_to_dot(g: Multigraph, trace: FaceTrace) -> str:
    """A digraph with one arc per dart, labelled and grouped by face."""
    lines = ["digraph faces {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for k, face in enumerate(trace.faces, start=1):
        for d in face:
            lines.append(f'  "{d.source}" -> "{d.target}" [label="{d.edge}/f{k}", face={k}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def fixture_names() -> List[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.g"))


def load_fixture(name: str) -> Multigraph:
    if name not in fixture_names():
        raise FileNotFoundError(f"no fixture named {name!r}")
    path = FIXTURE_DIR / f"{name}.g"
    return parse_graph(path.read_text(encoding="utf-8"), f"@{name}")


def load_graph(source: str) -> Multigraph:
    """Load ``@name`` from the bundled fixtures, anything else as a file path."""
    if source.startswith("@"):
        return load_fixture(source[1:])
    path = Path(source)
    return parse_graph(path.read_text(encoding="utf-8"), str(path))


def load_trails(name: str = "eden12_trails") -> Dict[str, List[str]]:
    """Vertex → closed walk (as vertex labels) from a bundled YAML trail map."""
    with open(FIXTURE_DIR / f"{name}.yaml", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    return {str(v): [str(x) for x in walk] for v, walk in data["trails"].items()}


def walk_to_darts(g: Multigraph, walk: Sequence[str]) -> Optional[Tuple[Dart, ...]]:
    """Darts along a vertex walk in a simple graph; None if a step has no edge."""
    darts = []
    for u, v in zip(walk, walk[1:]):
        for x in (u, v):
            if not g.has_vertex(x):
                raise UnknownVertex(f"walk visits unknown vertex {x!r}")
        between = [e for e in g.incident(u) if g.other_end(e, u) == v]
        if not between:
            return None
        darts.append(Dart(between[0], u, v))
    return tuple(darts)
