from typing import Dict, List, Optional, Set, Tuple

from tabulate import tabulate


def _value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


class ExecResult:
    """Output of one command: ordered ``key → value`` records plus text blocks.

    ``records`` is what machine mode prints, one ``key<TAB>value`` line each.
    ``blocks`` are extra text sections (rotation files, face lists) shown after
    the summary table in human mode; records they repeat are added with
    ``listed=False`` and stay out of the table.
    """

    def __init__(self, command: str, title: str):
        self.command = command
        self.title = title
        self.records: Dict[str, str] = {}
        self.blocks: List[Tuple[str, str]] = []
        self._unlisted: Set[str] = set()

    def add(self, key: str, value, listed: bool = True) -> "ExecResult":
        self.records[key] = _value(value)
        if not listed:
            self._unlisted.add(key)
        return self

    def add_block(self, heading: str, text: str) -> "ExecResult":
        self.blocks.append((heading, text.rstrip("\n")))
        return self

    def machine_text(self) -> str:
        return "".join(f"{k}\t{v}\n" for k, v in self.records.items())

    def human_text(self) -> str:
        rows = [(k, v) for k, v in self.records.items() if k not in self._unlisted]
        parts = [self.title, tabulate(rows, headers=["Key", "Value"], tablefmt="github", stralign="left")]
        for heading, text in self.blocks:
            parts.append(f"{heading}:\n{text}")
        return "\n\n".join(parts) + "\n"

    def render(self, fmt: str) -> str:
        return self.machine_text() if fmt == "machine" else self.human_text()

    def to_json(self) -> Dict:
        return {"command": self.command, "records": dict(self.records), "text": self.human_text()}


class ExecEnv:
    """Keeps the most recent result for the service's ``last-result`` endpoint."""

    def __init__(self):
        self._results: List[ExecResult] = []

    def add_result(self, result: ExecResult):
        self._results = [result]

    def last(self) -> Optional[ExecResult]:
        return self._results[0] if self._results else None

    def get_text(self) -> str:
        last = self.last()
        return last.human_text() if last else ""

    def get_json(self) -> Dict:
        last = self.last()
        return last.to_json() if last else {}
