"""JSON system definitions.

A file holds the system kind, component caps, the probability table and
either explicit generators per level or a builder description::

    {"kind": "path", "n": 3, "levels": 2, "component_caps": [2, 2, 2],
     "probabilities": [[0.8, 0.75], [0.9, 0.8], [0.75, 0.7]],
     "builder": {"type": "series"}}

Builders: ``series``, ``parallel``, ``network`` (with a ``graph`` object
``{"vertices", "edges", "source", "terminal"}``) and ``kofn`` (with ``k``).
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from . import builders
from .errors import AlgrelError, SchemaError
from .probability import ProbabilityTable
from .system import CoherentSystem

_INT = {"type": "integer"}
_VECTOR = {"type": "array", "items": {"type": "integer", "minimum": 0}}

SYSTEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind", "n", "levels", "component_caps", "probabilities"],
    "properties": {
        "kind": {"enum": ["path", "cut"]},
        "n": {"type": "integer", "minimum": 1},
        "levels": {"type": "integer", "minimum": 1},
        "component_caps": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "probabilities": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "number", "minimum": 0, "maximum": 1},
            },
        },
        "generators": {
            "type": "object",
            "propertyNames": {"pattern": "^[1-9][0-9]*$"},
            "additionalProperties": {"type": "array", "items": _VECTOR},
        },
        "builder": {
            "type": "object",
            "required": ["type"],
            "properties": {
                "type": {"enum": ["series", "parallel", "network", "kofn"]},
                "k": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "graph": {
                    "type": "object",
                    "required": ["vertices", "edges", "source", "terminal"],
                    "properties": {
                        "vertices": {"type": "integer", "minimum": 2},
                        "edges": {
                            "type": "array",
                            "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
                        },
                        "source": _INT,
                        "terminal": _INT,
                    },
                },
            },
        },
    },
    "oneOf": [{"required": ["generators"]}, {"required": ["builder"]}],
}


def _where(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def validate(doc: dict) -> None:
    """Raise :class:`SchemaError` listing every problem found in ``doc``."""
    validator = jsonschema.Draft202012Validator(SYSTEM_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    problems = []
    for e in errors:
        if e.validator == "oneOf" and not e.absolute_path:
            problems.append("<root>: exactly one of 'generators' or 'builder' is required")
        else:
            problems.append(f"{_where(e.absolute_path)}: {e.message}")
    if problems:
        raise SchemaError("; ".join(problems))

    n, M, caps, rows = doc["n"], doc["levels"], doc["component_caps"], doc["probabilities"]
    if len(caps) != n:
        problems.append(f"component_caps: expected {n} entries, got {len(caps)}")
    if len(rows) != n:
        problems.append(f"probabilities: expected {n} rows, got {len(rows)}")
    for i, (row, c) in enumerate(zip(rows, caps)):
        if len(row) != c:
            problems.append(f"probabilities[{i}]: expected {c} entries (component cap), got {len(row)}")
        for j in range(1, len(row)):
            if row[j] > row[j - 1]:
                problems.append(f"probabilities[{i}][{j}]: row must be non-increasing ({row[j]} > {row[j - 1]})")
    if "generators" in doc:
        gens = doc["generators"]
        for key in gens:
            if not 1 <= int(key) <= M:
                problems.append(f"generators.{key}: level outside 1..{M}")
        for j in range(1, M + 1):
            if str(j) not in gens:
                problems.append(f"generators: level {j} is missing")
        for key, vecs in gens.items():
            for k, v in enumerate(vecs):
                if len(v) != n:
                    problems.append(f"generators.{key}[{k}]: expected {n} exponents, got {len(v)}")
                elif len(caps) == n and any(e > c for e, c in zip(v, caps)):
                    problems.append(f"generators.{key}[{k}]: exponents {v} exceed component caps {caps}")
    else:
        b = doc["builder"]
        t = b["type"]
        expected_kind = {"series": "path", "parallel": "cut", "network": "path", "kofn": "path"}[t]
        if doc["kind"] != expected_kind:
            problems.append(f"kind: builder '{t}' produces a {expected_kind} system")
        if t == "series" and M != min(caps, default=0):
            problems.append(f"levels: a series system has min(component_caps) = {min(caps, default=0)} levels")
        if t == "parallel" and M != max(caps, default=0):
            problems.append(f"levels: a parallel system has max(component_caps) = {max(caps, default=0)} levels")
        if t == "network":
            if "graph" not in b:
                problems.append("builder.graph: required for a network builder")
            else:
                g = b["graph"]
                if len(g["edges"]) != n:
                    problems.append(f"builder.graph.edges: expected {n} edges (one per component), got {len(g['edges'])}")
                if g["source"] == g["terminal"]:
                    problems.append("builder.graph: source and terminal must differ")
            if M != 1 or any(c != 1 for c in caps):
                problems.append("levels/component_caps: a network system is binary (levels 1, caps 1)")
        if t == "kofn":
            k = b.get("k")
            if k is None:
                problems.append("builder.k: required for a kofn builder")
            else:
                if len(k) != M:
                    problems.append(f"builder.k: expected {M} thresholds, got {len(k)}")
                for l, kl in enumerate(k):
                    if kl > n:
                        problems.append(f"builder.k[{l}]: {kl} exceeds n = {n}")
            if any(c != M for c in caps):
                problems.append(f"component_caps: a kofn system has every cap equal to levels = {M}")
    if problems:
        raise SchemaError("; ".join(problems))


def system_from_dict(doc: dict) -> CoherentSystem:
    validate(doc)
    table = ProbabilityTable(tuple(tuple(r) for r in doc["probabilities"]))
    caps = doc["component_caps"]
    n = doc["n"]
    try:
        if "generators" in doc:
            ideals = [doc["generators"][str(j)] for j in range(1, doc["levels"] + 1)]
            return CoherentSystem(doc["kind"], caps, ideals, table)
        b = doc["builder"]
        if b["type"] == "series":
            return builders.build_series(n, caps, table)
        if b["type"] == "parallel":
            return builders.build_parallel(n, caps, table)
        if b["type"] == "network":
            return builders.build_network(builders.Graph.from_dict(b["graph"]), table)
        return builders.build_kofn(builders.KofNSpec(n, tuple(b["k"])), table)
    except AlgrelError as exc:
        if isinstance(exc, SchemaError):
            raise
        # Precondition failures while building are reported as file errors;
        # resource guards propagate unchanged.
        if isinstance(exc, ValueError):
            raise SchemaError(str(exc)) from exc
        raise


def system_to_dict(sys: CoherentSystem) -> dict:
    """Explicit-generator form of ``sys``."""
    return {
        "kind": sys.kind,
        "n": sys.nvars,
        "levels": sys.levels,
        "component_caps": list(sys.caps),
        "probabilities": [list(r) for r in sys.table.rows],
        "generators": {str(j): [list(g) for g in I.gens] for j, I in enumerate(sys.level_ideals, start=1)},
    }


def load_system(path) -> CoherentSystem:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return system_from_dict(doc)


def dump_system(doc_or_sys, path) -> None:
    doc = system_to_dict(doc_or_sys) if isinstance(doc_or_sys, CoherentSystem) else doc_or_sys
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
