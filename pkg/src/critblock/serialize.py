"""Text, JSON and DOT formats for weights, moment graphs and sections.

Weight literal: ``{finite:[0,1/2],level:crit,d:0}``.  Keys may be quoted
(so plain JSON is accepted too); ``level`` is ``crit`` or a rational.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from typing import Any

from .polyring import LinearForm, Poly, as_fraction, format_poly
from .rootdata import RootDatum, parse_root, parse_type, root_name
from .structalg import Edge, MomentGraph, Section
from .weights import AffineWeight, DeformationPoint

GRAPH_SCHEMA = "critblock.moment_graph/1"
SECTION_SCHEMA = "critblock.section/1"

_LITERAL = re.compile(
    r"""^\{\s*"?finite"?\s*:\s*\[(?P<finite>[^\]]*)\]\s*,
        \s*"?level"?\s*:\s*"?(?P<level>[^,"}]+)"?\s*
        (?:,\s*"?d"?\s*:\s*"?(?P<d>[^,"}]+)"?\s*)?\}$""",
    re.VERBOSE,
)


def _rat(text: str) -> Fraction:
    return as_fraction(text.strip().strip('"'))


def fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_weight(datum: RootDatum, text: str) -> AffineWeight:
    m = _LITERAL.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse weight literal {text!r}")
    parts = [p for p in m.group("finite").split(",") if p.strip()]
    finite = tuple(_rat(p) for p in parts)
    if len(finite) != datum.rank:
        raise ValueError(f"weight has {len(finite)} finite coordinates, {datum.name} needs {datum.rank}")
    level_text = m.group("level").strip()
    level = Fraction(-datum.dual_coxeter) if level_text == "crit" else _rat(level_text)
    d = _rat(m.group("d")) if m.group("d") is not None else Fraction(0)
    return AffineWeight(finite, level, d)


def format_weight(datum: RootDatum, w: AffineWeight) -> str:
    level = "crit" if w.is_critical(datum) else fmt_rat(w.level)
    return "{finite:[" + ",".join(fmt_rat(x) for x in w.finite) + f"],level:{level},d:{fmt_rat(w.dcoef)}" + "}"


def weight_to_json(datum: RootDatum, w: AffineWeight) -> dict:
    return {
        "finite": [fmt_rat(x) for x in w.finite],
        "level": "crit" if w.is_critical(datum) else fmt_rat(w.level),
        "d": fmt_rat(w.dcoef),
    }


def weight_from_json(datum: RootDatum, data: dict) -> AffineWeight:
    level = Fraction(-datum.dual_coxeter) if data["level"] == "crit" else as_fraction(data["level"])
    return AffineWeight(tuple(as_fraction(x) for x in data["finite"]), level, as_fraction(data["d"]))


def parse_point(datum: RootDatum, text: str) -> DeformationPoint:
    """``generic``, ``central`` or ``subgeneric:<root>``."""
    text = text.strip()
    if text == "generic":
        return DeformationPoint.generic()
    if text == "central":
        return DeformationPoint.central()
    if text.startswith("subgeneric:"):
        return DeformationPoint.subgeneric(datum, parse_root(datum, text.split(":", 1)[1]))
    raise ValueError(f"unknown deformation point {text!r}")


def format_point(datum: RootDatum, point: DeformationPoint) -> str:
    if point.kind == "subgeneric":
        return f"subgeneric:{root_name(datum, point.root)}"
    return point.kind


def form_to_json(form: LinearForm) -> list[str]:
    return [fmt_rat(c) for c in form.coeffs]


# moment graphs -----------------------------------------------------------

def graph_to_json(graph: MomentGraph) -> dict[str, Any]:
    d = graph.datum
    return {
        "schema": GRAPH_SCHEMA,
        "type": d.name,
        "point": format_point(d, graph.point),
        "vertices": [weight_to_json(d, w) for w in graph.vertices],
        "edges": [[e.lower, e.upper] for e in graph.edges],
        "labels": [form_to_json(e.label) for e in graph.edges],
        "roots": [list(e.root) for e in graph.edges],
    }


def graph_from_json(data: dict[str, Any]) -> MomentGraph:
    if data.get("schema") != GRAPH_SCHEMA:
        raise ValueError(f"expected schema {GRAPH_SCHEMA}, got {data.get('schema')!r}")
    d = parse_type(data["type"])
    vertices = tuple(weight_from_json(d, v) for v in data["vertices"])
    edges = tuple(
        Edge(lo, up, LinearForm(tuple(as_fraction(c) for c in label)), tuple(root))
        for (lo, up), label, root in zip(data["edges"], data["labels"], data["roots"])
    )
    return MomentGraph(d, vertices, edges, parse_point(d, data["point"]))


def graph_to_dot(graph: MomentGraph) -> str:
    d = graph.datum
    lines = ["graph moment {", f'  label="{d.name} {format_point(d, graph.point)}";']
    for i, w in enumerate(graph.vertices):
        lines.append(f'  n{i} [label="{format_weight(d, w)}"];')
    for e in graph.edges:
        lines.append(f'  n{e.lower} -- n{e.upper} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# sections ------------------------------------------------------------------

def section_to_json(section: Section, graph: MomentGraph, text: bool = False) -> dict[str, Any]:
    values = [format_poly(section[i]) if text else section[i].to_json() for i in range(len(graph.vertices))]
    return {"schema": SECTION_SCHEMA, "type": graph.datum.name, "values": values}


def section_from_json(data: dict[str, Any], nvars: int) -> Section:
    if data.get("schema") != SECTION_SCHEMA:
        raise ValueError(f"expected schema {SECTION_SCHEMA}, got {data.get('schema')!r}")
    return Section({i: Poly.from_json(nvars, v) for i, v in enumerate(data["values"])})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_schema(name: str) -> dict:
    """Shipped JSON schema, e.g. ``load_schema("moment_graph")``."""
    text = resources.files("critblock").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
