import logging
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ValidationError

from cycletrace.cli import HANDLERS, Job, execute
from cycletrace.config import Settings
from cycletrace.errors import CycleTraceError
from cycletrace.exec_env import ExecEnv
from cycletrace.formats import (
    FIXTURE_DIR,
    fixture_names,
    load_fixture,
    parse_graph,
    parse_order_list,
    parse_rotation,
)

logger = logging.getLogger(__name__)

app = FastAPI(title="cycletrace")
exec_env = ExecEnv()
# Enable CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class CommandRequest(BaseModel):
    command: str
    graph: Optional[str] = None  # graph text, or @name for a fixture
    order: Optional[str] = None
    rotation: Optional[str] = None
    budget: Optional[int] = None
    max_edges: int = 4


def _error(status_code: int, error: str, message: str) -> HTTPException:
    return HTTPException(status_code=status_code, detail={"error": error, "message": message})


@app.get("/api/fixtures")
async def list_fixtures():
    return {"fixtures": fixture_names()}


@app.get("/api/fixtures/{name}")
async def get_fixture(name: str):
    if name not in fixture_names():
        raise _error(404, "FileNotFoundError", f"no fixture named {name!r}")
    return {"name": name, "text": (FIXTURE_DIR / f"{name}.g").read_text(encoding="utf-8")}


@app.post("/api/command")
def run_command(request: CommandRequest):
    """Run one command; the response carries the machine records and the human text."""
    if request.command not in HANDLERS:
        raise _error(400, "UnknownCommand", f"unknown command {request.command!r}")
    source = request.graph if request.graph and request.graph.startswith("@") else "<text>"
    logger.info("command %s on %s", request.command, source)
    try:
        settings = Settings.from_env(budget=request.budget)
        graph = None
        if request.graph:
            if request.graph.startswith("@"):
                graph = load_fixture(request.graph[1:])
            else:
                graph = parse_graph(request.graph, "<request>")
        order = parse_order_list(request.order, "order") if request.order else None
        rotation = parse_rotation(request.rotation, "rotation") if request.rotation else None
        job = Job(request.command, graph, order, rotation, settings, None, request.max_edges)
        result = execute(job)
    except CycleTraceError as e:
        logger.info("command %s failed: %s", request.command, e)
        raise _error(e.status_code, e.name, str(e))
    except ValidationError as e:
        raise _error(400, "ValidationError", str(e))
    except FileNotFoundError as e:
        raise _error(404, "FileNotFoundError", str(e))
    exec_env.add_result(result)
    return result.to_json()


@app.get("/api/last-result")
async def get_last_result():
    return {"text": exec_env.get_text(), "result": exec_env.get_json()}
