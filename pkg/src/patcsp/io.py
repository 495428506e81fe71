"""JSON files for patterns and instances, and DOT export of patterns.

Both formats carry ``"format": "pattern-csp/1"``.  Point and variable ids
are strings.

Pattern::

    {"format": "pattern-csp/1",
     "points": [{"id": "a", "var": "v"}, ...],
     "edges": [{"p": "a", "q": "c", "compat": true}, ...],
     "distinct_any": [[["a", "b"], ["g", "h"]], ...]}

or a library reference, ``{"format": "pattern-csp/1", "ref": "$T4"}``.

Instance::

    {"format": "pattern-csp/1",
     "domains": {"v": ["v1", "v2"], "w": ["w1"]},
     "relations": [{"scope": ["v", "w"], "allowed": [["v1", "w1"]]}]}

Scopes not listed are trivial.  ``"incompatible": [[p, q], ...]`` may be
given instead of (or as well as) ``relations``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .library import make_named
from .model import Instance, ModelError, Pattern, build_instance, pair, relations_of

FORMAT = "pattern-csp/1"


class FormatError(ModelError):
    pass


def _check_format(doc):
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise FormatError(f"unsupported format {fmt!r}; expected {FORMAT!r}")


def pattern_from_dict(doc) -> Pattern:
    if isinstance(doc, str) and doc.startswith("$"):
        return _ref(doc)
    _check_format(doc)
    if "ref" in doc:
        return _ref(doc["ref"])
    try:
        var_of = {}
        for pt in doc.get("points", []):
            pid, var = str(pt["id"]), str(pt["var"])
            if pid in var_of:
                raise FormatError(f"duplicate point id {pid!r}")
            var_of[pid] = var
        edges = {}
        for e in doc.get("edges", []):
            k = pair(str(e["p"]), str(e["q"]))
            if k in edges:
                raise FormatError(f"edge {e['p']}-{e['q']} listed twice")
            if not isinstance(e["compat"], bool):
                raise FormatError("edge field 'compat' must be true or false")
            edges[k] = e["compat"]
        disj = [[(str(a), str(b)) for a, b in d] for d in doc.get("distinct_any", [])]
        return Pattern(var_of, edges, disj, [str(v) for v in doc.get("variables", [])])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise FormatError(f"malformed pattern: {exc!r}") from exc


def _ref(name: str) -> Pattern:
    try:
        return make_named(name)
    except KeyError as exc:
        raise FormatError(str(exc)) from exc


def pattern_to_dict(pattern: Pattern) -> dict:
    edges = []
    for e, lab in sorted(pattern.edges.items(), key=lambda t: sorted(t[0])):
        p, q = sorted(e)
        edges.append({"p": p, "q": q, "compat": lab})
    doc = {"format": FORMAT,
           "points": [{"id": p, "var": pattern.var_of[p]} for p in pattern.points],
           "edges": edges}
    if pattern.distinct_any:
        doc["distinct_any"] = [[sorted(e) for e in d] for d in pattern.distinct_any]
    empty = [v for v in pattern.variables if not pattern.domain(v)]
    if empty:
        doc["variables"] = list(pattern.variables)
    return doc


def instance_from_dict(doc) -> Instance:
    _check_format(doc)
    try:
        domains = {str(v): [str(p) for p in pts] for v, pts in doc["domains"].items()}
        rels = [((str(r["scope"][0]), str(r["scope"][1])),
                 [(str(p), str(q)) for p, q in r["allowed"]])
                for r in doc.get("relations", [])]
        for r in doc.get("relations", []):
            if len(r["scope"]) != 2:
                raise FormatError("a scope must name two variables")
        inst = build_instance(domains, rels)
        extra = [tuple(map(str, e)) for e in doc.get("incompatible", [])]
        if extra:
            inst = Instance(inst.domains, list(inst.incompatible_pairs()) + extra)
        return inst
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise FormatError(f"malformed instance: {exc!r}") from exc


def instance_to_dict(instance: Instance, **extra) -> dict:
    doc = {"format": FORMAT}
    doc.update(extra)
    doc["domains"] = {v: list(instance.domains[v]) for v in instance.variables}
    doc["relations"] = [{"scope": list(scope), "allowed": [list(t) for t in allowed]}
                        for scope, allowed in relations_of(instance)]
    return doc


def _read(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_pattern(path) -> Pattern:
    return pattern_from_dict(_read(path))


def load_instance(path) -> Instance:
    return instance_from_dict(_read(path))


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def pattern_to_dot(pattern: Pattern, name: str = "P") -> str:
    """Graphviz text: one cluster per variable, solid compatibility edges,
    dashed incompatibility edges."""
    lines = [f'graph "{name}" {{', "  node [shape=circle];"]
    for i, v in enumerate(pattern.variables):
        lines.append(f'  subgraph "cluster_{i}" {{ label="{v}";')
        for p in pattern.domain(v):
            lines.append(f'    "{p}";')
        lines.append("  }")
    for e, lab in sorted(pattern.edges.items(), key=lambda t: sorted(t[0])):
        p, q = sorted(e)
        style = "solid" if lab else "dashed"
        lines.append(f'  "{p}" -- "{q}" [style={style}];')
    for k, d in enumerate(pattern.distinct_any):
        text = " or ".join(f"{a}!={b}" for a, b in (sorted(e) for e in d))
        lines.append(f'  // distinct {k}: {text}')
    lines.append("}")
    return "\n".join(lines) + "\n"
