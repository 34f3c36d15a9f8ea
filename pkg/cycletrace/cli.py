#!/usr/bin/env python3
"""
cli.py

Command-line front end for cycletrace. Reads a graph file (or a bundled
fixture as ``@name``), runs one command and prints the result either as a
table (``--format human``, the default) or as ``key<TAB>value`` records
(``--format machine``).

Usage:
    python -m cycletrace <command> [<graph>] [--order ORDER] [--rotation FILE]
        [--budget N] [--jobs N] [--format human|machine] [--emit-dot FILE] [-v]

Exit status:
    0  result computed (negative answers included)
    1  input or module error
    2  search budget exceeded
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Literal, NamedTuple, Optional

from pydantic import BaseModel, ValidationError

from cycletrace.config import Settings
from cycletrace.errors import CycleTraceError, MissingOption
from cycletrace.exec_env import ExecResult
from cycletrace.formats import (
    emit_faces,
    emit_ordering,
    emit_rotation,
    faces_to_dot,
    load_graph,
    parse_order_option,
    parse_rotation,
)
from cycletrace.graph import Multigraph, betti
from cycletrace.perm import EdgeOrdering, permutation_of_ordering
from cycletrace.rotation import (
    RotationSystem,
    genus_from_faces,
    rotation_from_ordering,
    trace_faces,
)
from cycletrace.search import (
    build_fcp_construction,
    check_eden_conditions,
    decide_fcp,
    find_identity_ordering,
    identity_ordering_feasible,
    is_upper_embeddable,
    max_genus_bruteforce,
    survey_one_face_orderability,
    verify_eden12_fixture,
    xuong_deficiency,
)

logger = logging.getLogger(__name__)

GRAPH_COMMANDS = [
    "betti",
    "perm",
    "faces",
    "genus",
    "rotation-of",
    "decide-fcp",
    "construct-fcp",
    "max-genus",
    "upper-embeddable",
    "eden-check",
    "find-identity",
]
COMMANDS = GRAPH_COMMANDS + ["verify-eden12", "survey"]


class Invocation(BaseModel):
    command: Literal[
        "betti", "perm", "faces", "genus", "rotation-of", "decide-fcp", "construct-fcp",
        "max-genus", "upper-embeddable", "eden-check", "find-identity", "verify-eden12", "survey",
    ]
    graph: Optional[str] = None
    order: Optional[str] = None
    rotation: Optional[str] = None
    format: Literal["human", "machine"] = "human"
    emit_dot: Optional[str] = None
    max_edges: int = 4


class Job(NamedTuple):
    command: str
    graph: Optional[Multigraph]
    order: Optional[EdgeOrdering]
    rotation: Optional[RotationSystem]
    settings: Settings
    emit_dot: Optional[str] = None
    max_edges: int = 4


def _spaced(items) -> str:
    return " ".join(items) or "none"


def _need_order(job: Job) -> EdgeOrdering:
    if job.order is None:
        raise MissingOption(f"{job.command} needs --order")
    return job.order


def _need_rotation(job: Job) -> RotationSystem:
    """``--rotation`` if given, else ρ_ω of ``--order``."""
    if job.rotation is not None:
        return job.rotation
    if job.order is not None:
        return rotation_from_ordering(job.graph, job.order)
    raise MissingOption(f"{job.command} needs --rotation or --order")


def _write_dot(job: Job, trace) -> None:
    if job.emit_dot:
        Path(job.emit_dot).write_text(faces_to_dot(job.graph, trace), encoding="utf-8")
        logger.info("wrote face digraph to %s", job.emit_dot)


def _add_rotation(result: ExecResult, g: Multigraph, rho: RotationSystem) -> None:
    for v in g.vertices:
        result.add(f"rot.{v}", _spaced(rho.at(v)), listed=False)
    result.add_block("Rotation system", emit_rotation(g, rho))


# -- commands -----------------------------------------------------------------

def cmd_betti(job: Job) -> ExecResult:
    g = job.graph
    result = ExecResult(job.command, f"Graph with {g.n} vertices and {g.m} edges.")
    return result.add("vertices", g.n).add("edges", g.m).add("betti", betti(g))


def cmd_perm(job: Job) -> ExecResult:
    g, omega = job.graph, _need_order(job)
    pi = permutation_of_ordering(g, omega)
    result = ExecResult(job.command, f"π for ordering {omega} is {pi.notation(g.vertices)}.")
    result.add("pi", pi.notation(g.vertices))
    result.add("orbits", pi.orbit_count())
    result.add("cycle_type", ",".join(str(k) for k in pi.cycle_type()))
    result.add("full_cyclic", pi.is_full_cycle())
    result.add("identity", pi.is_identity())
    return result


def cmd_faces(job: Job) -> ExecResult:
    g, rho = job.graph, _need_rotation(job)
    trace = trace_faces(g, rho)
    result = ExecResult(job.command, f"The rotation system has {trace.count} face(s).")
    result.add("faces", trace.count)
    for k, face in enumerate(trace.faces, start=1):
        result.add(f"face.{k}", " ".join(str(d) for d in face) or "none", listed=False)
    result.add_block("Faces", emit_faces(trace))
    _write_dot(job, trace)
    return result


def cmd_genus(job: Job) -> ExecResult:
    g, rho = job.graph, _need_rotation(job)
    trace = trace_faces(g, rho)
    genus = genus_from_faces(g, trace.count)
    result = ExecResult(job.command, f"The rotation system embeds the graph on a surface of genus {genus}.")
    result.add("faces", trace.count).add("genus", genus)
    _write_dot(job, trace)
    return result


def cmd_rotation_of(job: Job) -> ExecResult:
    g, omega = job.graph, _need_order(job)
    rho = rotation_from_ordering(g, omega)
    trace = trace_faces(g, rho)
    result = ExecResult(job.command, f"Rotation system induced by ordering {omega}.")
    result.add("faces", trace.count)
    _add_rotation(result, g, rho)
    _write_dot(job, trace)
    return result


def cmd_decide_fcp(job: Job) -> ExecResult:
    g = job.graph
    found, reason, tree = decide_fcp(g)
    verdict = "has" if found else "has no"
    result = ExecResult(job.command, f"The graph {verdict} a full cyclic ordering ({reason}).")
    result.add("fcp", found).add("reason", reason).add("betti", betti(g))
    if tree is not None:
        result.add("tree", _spaced(tree.sorted_edges()))
    return result


def cmd_construct_fcp(job: Job) -> ExecResult:
    g, settings = job.graph, job.settings
    construction = build_fcp_construction(g, settings.budget, settings.jobs)
    if construction is None:
        _, reason, _ = decide_fcp(g)
        result = ExecResult(job.command, f"No full cyclic ordering exists ({reason}).")
        return result.add("fcp", False).add("reason", reason)
    omega = construction.ordering
    pi = permutation_of_ordering(g, omega)
    result = ExecResult(job.command, f"Full cyclic ordering {omega} gives π = {pi.notation(g.vertices)}.")
    result.add("fcp", True)
    result.add("order", _spaced(omega.sequence))
    result.add("pi", pi.notation(g.vertices))
    result.add("subdivided_edges", construction.subdivided.m)
    result.add("orbit_counts", ",".join(str(k) for k in construction.orbit_counts) or "none")
    result.add_block("Ordering", emit_ordering(omega))
    return result


def cmd_max_genus(job: Job) -> ExecResult:
    g, settings = job.graph, job.settings
    best = max_genus_bruteforce(g, settings.budget, settings.jobs)
    result = ExecResult(job.command, f"Maximum genus {best.gamma_max}, reached with {best.face_count} face(s).")
    result.add("gamma_max", best.gamma_max).add("faces", best.face_count).add("betti", betti(g))
    _add_rotation(result, g, best.witness)
    _write_dot(job, trace_faces(g, best.witness))
    return result


def cmd_upper_embeddable(job: Job) -> ExecResult:
    g = job.graph
    found, tree = is_upper_embeddable(g)
    verdict = "is" if found else "is not"
    result = ExecResult(job.command, f"The graph {verdict} upper embeddable.")
    result.add("upper_embeddable", found)
    result.add("betti", betti(g))
    result.add("deficiency", xuong_deficiency(g))
    result.add("tree", _spaced(tree.sorted_edges()) if tree else None)
    return result


def cmd_eden_check(job: Job) -> ExecResult:
    g, omega = job.graph, _need_order(job)
    report = check_eden_conditions(g, omega)
    verdict = "hold" if report.holds else "fail"
    result = ExecResult(job.command, f"Closed-trail conditions {verdict} for ordering {omega}.")
    result.add("m_even", report.m_even)
    for name, ok in report.conditions.items():
        result.add(name, ok)
    result.add("euler_feasible", report.euler_feasible)
    result.add("holds", report.holds)
    lines = []
    for v, edges in report.trail_map.items():
        result.add(f"trail.{v}", _spaced(edges), listed=False)
        lines.append(f"g({v}) = {{{', '.join(edges)}}}")
    result.add_block("Trails", "\n".join(lines))
    return result


def cmd_find_identity(job: Job) -> ExecResult:
    g = job.graph
    omega = find_identity_ordering(g, job.settings.budget)
    verdict = f"Identity ordering {omega}." if omega is not None else "No identity ordering exists."
    result = ExecResult(job.command, verdict)
    result.add("feasible", identity_ordering_feasible(g))
    result.add("identity_ordering_exists", omega is not None)
    if omega is not None:
        result.add("order", _spaced(omega.sequence))
    return result


def cmd_verify_eden12(job: Job) -> ExecResult:
    report = verify_eden12_fixture()
    verdict = "pass" if report.passed else "fail"
    result = ExecResult(job.command, f"Twelve-vertex trail map checks {verdict}; implied genus {report.implied_genus}.")
    for name, ok in report.checks.items():
        result.add(name, ok)
    result.add("trail_edge_total", report.trail_edge_total)
    result.add("vertices", report.vertices)
    result.add("edges", report.edges)
    result.add("implied_genus", report.implied_genus)
    result.add("identity_ordering_exists", report.identity_ordering_exists)
    result.add("passed", report.passed)
    return result


def cmd_survey(job: Job) -> ExecResult:
    survey = survey_one_face_orderability(job.max_edges, job.settings.budget)
    result = ExecResult(
        job.command,
        f"{survey.orderable} of {survey.one_face_systems} one-face rotation systems are induced by an ordering.",
    )
    result.add("max_edges", job.max_edges)
    result.add("graphs", survey.graphs)
    result.add("one_face_systems", survey.one_face_systems)
    result.add("orderable", survey.orderable)
    return result


HANDLERS: Dict[str, Callable[[Job], ExecResult]] = {
    "betti": cmd_betti,
    "perm": cmd_perm,
    "faces": cmd_faces,
    "genus": cmd_genus,
    "rotation-of": cmd_rotation_of,
    "decide-fcp": cmd_decide_fcp,
    "construct-fcp": cmd_construct_fcp,
    "max-genus": cmd_max_genus,
    "upper-embeddable": cmd_upper_embeddable,
    "eden-check": cmd_eden_check,
    "find-identity": cmd_find_identity,
    "verify-eden12": cmd_verify_eden12,
    "survey": cmd_survey,
}


def execute(job: Job) -> ExecResult:
    if job.command in GRAPH_COMMANDS and job.graph is None:
        raise MissingOption(f"{job.command} needs a graph")
    logger.info("running %s", job.command)
    return HANDLERS[job.command](job)


def load_job(inv: Invocation, settings: Settings) -> Job:
    """Read the files an invocation names."""
    graph = load_graph(inv.graph) if inv.graph else None
    order = parse_order_option(inv.order) if inv.order else None
    rotation = None
    if inv.rotation:
        path = Path(inv.rotation)
        rotation = parse_rotation(path.read_text(encoding="utf-8"), str(path))
    return Job(inv.command, graph, order, rotation, settings, inv.emit_dot, inv.max_edges)


# -- argument handling --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "machine"], default="human", help="Output format")
    common.add_argument("--budget", type=int, help="Largest search space to scan (default $CYCLETRACE_BUDGET or 10^7)")
    common.add_argument("--jobs", type=int, help="Worker processes for the genus scan (default $CYCLETRACE_JOBS or 1)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for debug")

    parser = argparse.ArgumentParser(prog="cycletrace", description="Full cyclic and identity edge orderings of multigraphs")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in GRAPH_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("graph", help="Graph file, or @name for a bundled fixture")
        p.add_argument("--order", help="Edge ordering: comma list, space list or ordering file")
        p.add_argument("--rotation", help="Rotation system file")
        p.add_argument("--emit-dot", help="Write the faces as a Graphviz digraph to this file")
    sub.add_parser("verify-eden12", parents=[common])
    p = sub.add_parser("survey", parents=[common])
    p.add_argument("--max-edges", type=int, default=4, help="Largest edge count to enumerate (default 4)")
    p = sub.add_parser("serve", parents=[common])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        settings = Settings.from_env(budget=args.budget, jobs=args.jobs)
    except ValidationError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return 1

    if args.command == "serve":
        import uvicorn

        uvicorn.run("cycletrace.main:app", host=args.host, port=args.port)
        return 0

    try:
        inv = Invocation(
            command=args.command,
            graph=getattr(args, "graph", None),
            order=getattr(args, "order", None),
            rotation=getattr(args, "rotation", None),
            format=args.format,
            emit_dot=getattr(args, "emit_dot", None),
            max_edges=getattr(args, "max_edges", 4),
        )
        result = execute(load_job(inv, settings))
    except CycleTraceError as e:
        print(f"error: {e.name}: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    sys.stdout.write(result.render(inv.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
