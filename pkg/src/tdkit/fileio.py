"""Text formats: token-string files, graph files, schedules, and manifests.

String files: '#'-prefixed lines are comments; every other non-blank line is
one string of whitespace-separated token names.  The symbol table is built
in first-appearance order.

Graph files: first non-comment line "n m", then m lines "u v" with 0-based
vertex ids.

Schedule files: one contraction per line, "start half_len", applied in order
to the target string.
"""

from __future__ import annotations

import json
from pathlib import Path

from .ces import Graph
from .reductions import ReductionParams, TdReduction, ces_to_td
from .strings import ContractionStep, SymbolTable, TdkError, TokenString


class FileFormatError(TdkError):
    pass


class EmptyFileError(FileFormatError):
    pass


class BadHeaderError(FileFormatError):
    pass


def _content_lines(path: str | Path) -> list[str]:
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def parse_string_file(
    path: str | Path, table: SymbolTable | None = None
) -> tuple[list[TokenString], SymbolTable]:
    """All strings in the file; pass ``table`` to share symbols across files."""
    if table is None:
        table = SymbolTable()
    strings = [TokenString.from_text(table, line) for line in _content_lines(path)]
    if not strings:
        raise EmptyFileError(f"{path}: no strings found")
    return strings, table


def emit_string_file(path: str | Path, strings) -> None:
    Path(path).write_text("".join(s.text() + "\n" for s in strings))


def parse_graph_file(path: str | Path) -> Graph:
    lines = _content_lines(path)
    if not lines:
        raise BadHeaderError(f"{path}: empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise BadHeaderError(f"{path}: header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise BadHeaderError(f"{path}: header must be two integers, got {lines[0]!r}")
    if len(lines) - 1 != m:
        raise BadHeaderError(f"{path}: header promises {m} edges, file has {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise BadHeaderError(f"{path}: edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise BadHeaderError(f"{path}: edge line must be two integers, got {line!r}")
    return Graph(n, tuple(edges))


def emit_graph_file(path: str | Path, graph: Graph) -> None:
    out = [f"{graph.n} {graph.m}"]
    out.extend(f"{u} {v}" for u, v in graph.edges)
    Path(path).write_text("\n".join(out) + "\n")


def parse_schedule_file(path: str | Path) -> list[ContractionStep]:
    steps = []
    for line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise FileFormatError(f"{path}: schedule line must be 'start half_len', got {line!r}")
        try:
            steps.append(ContractionStep(int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FileFormatError(f"{path}: {exc}")
    return steps


def emit_schedule_file(path: str | Path, steps) -> None:
    Path(path).write_text("".join(f"{s.start} {s.half_len}\n" for s in steps))


MANIFEST_SCHEMA = "tdkit-manifest/1"


def write_manifest(path: str | Path, red: TdReduction, source_file: str, target_file: str) -> None:
    doc = {
        "schema": MANIFEST_SCHEMA,
        "graph": {"n": red.graph.n, "edges": [list(e) for e in red.graph.edges]},
        "c": red.c,
        "r": red.r,
        "params": {"d": red.params.d, "p": red.params.p},
        "budget": red.budget,
        "fidelity": red.fidelity,
        "sizes": {"source": len(red.source), "target": len(red.target)},
        "files": {"source": source_file, "target": target_file},
        "symbol_roles": red.symbol_roles,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_reduction_from_manifest(path: str | Path) -> TdReduction:
    """Rebuild the reduction a manifest describes (the build is deterministic)."""
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != MANIFEST_SCHEMA:
        raise FileFormatError(f"{path}: unknown manifest schema {doc.get('schema')!r}")
    graph = Graph(doc["graph"]["n"], tuple(tuple(e) for e in doc["graph"]["edges"]))
    params = ReductionParams(doc["params"]["d"], doc["params"]["p"])
    red = ces_to_td(graph, doc["c"], doc["r"], params, force=True)
    if red.budget != doc["budget"] or len(red.target) != doc["sizes"]["target"]:
        raise FileFormatError(f"{path}: manifest does not match the rebuilt instance")
    return red
