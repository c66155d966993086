#!/usr/bin/env python3
"""
Flat-file persistence: instances, assignments, dynamics traces, reports and
DOT export. Files are JSON documents tagged with a kind and FORMAT_VERSION;
traces are plain text, one jump per line.
"""
import dataclasses
import json
import logging
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import networkx as nx

import config
from errors import InvalidParameterError
from game import EMPTY, Assignment, Instance, Jump, ScoredJump, TypeProfile, validate_assignment
from graph import CUSTOM, FamilyTag, Graph, GraphFamily, from_edges
from oracle import ExperimentConfig

log = logging.getLogger(__name__)

PathLike = Union[str, Path]

# Node fill colors by type id (cycled); empty nodes are drawn white and dashed.
TYPE_COLORS = (
    "red", "royalblue", "forestgreen", "gold", "orchid", "darkorange",
    "turquoise", "sienna", "gray60", "pink",
)

_TRACE_LINE = re.compile(r"^\s*(\d+)\s+(\d+)\s*->\s*(\d+)(?:\s+(\d+)\s*->\s*(\d+))?\s*$")


# --------------------------------------------------------------------------- #
# Reading helpers
# --------------------------------------------------------------------------- #
def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidParameterError(
            f"Cannot read {path}: {e.strerror or e}\nFix: check the path and its permissions."
        ) from e


def _load_document(path: PathLike, kind: str) -> Dict[str, Any]:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidParameterError(
            f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(doc, dict):
        raise InvalidParameterError(f"{path}: expected a JSON object at top level")
    found = doc.get("kind")
    if found != kind:
        raise InvalidParameterError(f"{path}: field 'kind' is {found!r}, expected {kind!r}")
    version = doc.get("format_version")
    if version != config.FORMAT_VERSION:
        raise InvalidParameterError(
            f"{path}: field 'format_version' is {version!r}, this build reads "
            f"{config.FORMAT_VERSION}"
        )
    return doc


def _field(doc: Dict[str, Any], name: str, kind: type, where: str) -> Any:
    if name not in doc:
        raise InvalidParameterError(f"{where}: missing field '{name}'")
    value = doc[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InvalidParameterError(
            f"{where}: field '{name}' should be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def document_text(kind: str, body: Dict[str, Any]) -> str:
    doc = {"kind": kind, "format_version": config.FORMAT_VERSION, **body}
    return json.dumps(doc, indent=2) + "\n"


def _write_document(path: PathLike, kind: str, body: Dict[str, Any]) -> None:
    Path(path).write_text(document_text(kind, body), encoding="utf-8")
    log.debug("wrote %s to %s", kind, path)


# --------------------------------------------------------------------------- #
# Instances
# --------------------------------------------------------------------------- #
def graph_to_dict(graph: Graph) -> Dict[str, Any]:
    body: Dict[str, Any] = {
        "node_count": graph.node_count,
        "edges": [list(e) for e in graph.edges()],
        "family": {"tag": graph.family.tag.value, "parameters": list(graph.family.parameters)},
    }
    if graph.roles:
        body["roles"] = {name: list(nodes) for name, nodes in graph.roles}
    return body


def graph_from_dict(doc: Dict[str, Any], where: str = "graph") -> Graph:
    node_count = _field(doc, "node_count", int, where)
    edges = _field(doc, "edges", list, where)
    family = CUSTOM
    if "family" in doc:
        fam = _field(doc, "family", dict, where)
        try:
            family = GraphFamily(
                FamilyTag(fam.get("tag", "custom")),
                tuple(int(p) for p in fam.get("parameters", ())),
            )
        except (TypeError, ValueError) as e:
            raise InvalidParameterError(f"{where}: bad field 'family': {fam!r}") from e
    roles = doc.get("roles")
    if roles is not None and not isinstance(roles, dict):
        raise InvalidParameterError(f"{where}: field 'roles' should be an object")
    for i, edge in enumerate(edges):
        if not isinstance(edge, list) or len(edge) != 2:
            raise InvalidParameterError(f"{where}: edges[{i}] should be a pair, got {edge!r}")
    try:
        return from_edges(node_count, edges, family, roles)
    except InvalidParameterError as e:
        raise InvalidParameterError(f"{where}: {e}") from e


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    return {"graph": graph_to_dict(instance.graph), "profile": list(instance.profile.counts)}


def instance_from_dict(doc: Dict[str, Any], where: str = "instance") -> Instance:
    graph = graph_from_dict(_field(doc, "graph", dict, where), f"{where}: graph")
    counts = _field(doc, "profile", list, where)
    try:
        profile = TypeProfile(tuple(int(c) for c in counts))
        return Instance(graph, profile)
    except (TypeError, ValueError) as e:
        raise InvalidParameterError(f"{where}: field 'profile': {e}") from e


def save_instance(path: PathLike, instance: Instance) -> None:
    _write_document(path, "instance", instance_to_dict(instance))


def load_instance(path: PathLike) -> Instance:
    return instance_from_dict(_load_document(path, "instance"), str(path))


# --------------------------------------------------------------------------- #
# Assignments
# --------------------------------------------------------------------------- #
def save_assignment(path: PathLike, assignment: Assignment, extra: Optional[dict] = None) -> None:
    body: Dict[str, Any] = {"occupancy": assignment.tokens()}
    if extra:
        body.update(extra)
    _write_document(path, "assignment", body)


def load_assignment(path: PathLike, instance: Optional[Instance] = None) -> Assignment:
    """Read an occupancy list; validated against `instance` when one is given."""
    doc = _load_document(path, "assignment")
    tokens = _field(doc, "occupancy", list, str(path))
    try:
        assignment = Assignment.from_tokens(tokens)
        if instance is not None:
            validate_assignment(instance, assignment)
    except InvalidParameterError as e:
        raise InvalidParameterError(f"{path}: field 'occupancy': {e}") from e
    return assignment


# --------------------------------------------------------------------------- #
# Traces
# --------------------------------------------------------------------------- #
def format_trace(trace: Sequence[ScoredJump]) -> str:
    """One jump per line: `type from->to u_old->u_new`."""
    return "".join(f"{step}\n" for step in trace)


def save_trace(path: PathLike, trace: Sequence[ScoredJump]) -> None:
    Path(path).write_text(format_trace(trace), encoding="utf-8")


def parse_trace(text: str, where: str = "trace") -> List[Union[Jump, ScoredJump]]:
    """Utilities are optional; lines without them give plain jumps. '#' starts a comment."""
    steps: List[Union[Jump, ScoredJump]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _TRACE_LINE.match(line)
        if not match:
            raise InvalidParameterError(
                f"{where}: line {lineno}: expected 'type from->to [u_old->u_new]', got {raw!r}"
            )
        t, src, dst, old, new = match.groups()
        jump = Jump(int(src), int(dst), int(t))
        steps.append(jump if old is None else ScoredJump(jump, int(old), int(new)))
    return steps


def load_trace(path: PathLike) -> List[Union[Jump, ScoredJump]]:
    return parse_trace(_read_text(path), str(path))


# --------------------------------------------------------------------------- #
# Reports
# --------------------------------------------------------------------------- #
def to_plain(value: Any) -> Any:
    """Dataclasses, enums, fractions and assignments as JSON-ready values."""
    if isinstance(value, Assignment):
        return value.tokens()
    if isinstance(value, ScoredJump):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(to_plain(k)): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    return value


def save_report(path: PathLike, name: str, payload: Any) -> None:
    _write_document(path, "report", {"report": name, "data": to_plain(payload)})


def load_experiment_config(path: PathLike):
    """
    Experiment file: {"kind": "experiment", "format_version": 1,
    "configs": [{"num_nodes": 7, "k": 3, "empty_count": 1, "edge_prob": 0.5,
    "regular_degree": null}, ...], "seeds": [0, 1, ...]}.
    """
    doc = _load_document(path, "experiment")
    where = str(path)
    seeds = _field(doc, "seeds", list, where)
    if not seeds or not all(isinstance(s, int) and s >= 0 for s in seeds):
        raise InvalidParameterError(f"{where}: field 'seeds' should be non-negative integers")
    configs = []
    for i, raw in enumerate(_field(doc, "configs", list, where)):
        item = f"{where}: configs[{i}]"
        if not isinstance(raw, dict):
            raise InvalidParameterError(f"{item} should be an object")
        degree = raw.get("regular_degree")
        if degree is not None and not isinstance(degree, int):
            raise InvalidParameterError(f"{item}: field 'regular_degree' should be int or null")
        configs.append(
            ExperimentConfig(
                num_nodes=_field(raw, "num_nodes", int, item),
                k=_field(raw, "k", int, item),
                empty_count=_field(raw, "empty_count", int, item),
                edge_prob=float(raw.get("edge_prob", 0.5)),
                regular_degree=degree,
            )
        )
    return configs, seeds


# --------------------------------------------------------------------------- #
# DOT export
# --------------------------------------------------------------------------- #
def to_dot(
    instance_or_graph: Union[Instance, Graph], assignment: Optional[Assignment] = None
) -> str:
    """DOT text; nodes labelled by id, filled by type color, empties dashed."""
    graph = (
        instance_or_graph.graph if isinstance(instance_or_graph, Instance) else instance_or_graph
    )
    g = nx.Graph()
    for v in range(graph.node_count):
        attrs: Dict[str, str] = {"label": str(v)}
        if assignment is not None:
            t = assignment.occupancy[v]
            if t == EMPTY:
                attrs.update(style="dashed", label=f"{v}\\nE")
            else:
                attrs.update(
                    style="filled", fillcolor=TYPE_COLORS[t % len(TYPE_COLORS)], label=f"{v}\\n{t}"
                )
        g.add_node(v, **attrs)
    g.add_edges_from(graph.edges())
    return nx.nx_pydot.to_pydot(g).to_string()


def export_dot(
    path: PathLike,
    instance_or_graph: Union[Instance, Graph],
    assignment: Optional[Assignment] = None,
) -> None:
    Path(path).write_text(to_dot(instance_or_graph, assignment), encoding="utf-8")
