"""Command line: ``critblock {block,graph,center,verify,generators,mult,acceptance}``.

Exit codes: 0 ok, 1 verification failed, 2 bad job spec, 3 internal guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .mult import UndeterminedMultiplicity, multiplicity_table
from .polyring import format_poly
from .rootdata import InvalidCartanType, RootDatum, parse_type
from .serialize import (
    dumps,
    format_point,
    format_weight,
    graph_to_dot,
    graph_to_json,
    parse_point,
    parse_weight,
    section_from_json,
    section_to_json,
)
from .structalg import build_moment_graph, graded_ranks, is_section, subgeneric_generators
from .weights import AffineWeight, DeformationPoint, Window, block_window, classify_block

EXIT_OK, EXIT_FAIL, EXIT_BAD_SPEC, EXIT_GUARD = 0, 1, 2, 3

COMMANDS = ("block", "graph", "center", "verify", "generators", "mult", "acceptance")


class BadSpec(Exception):
    pass


class GuardError(Exception):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    root_type: str = "A1"
    weight: str = "{finite:[0],level:crit,d:0}"
    point: str = "central"
    radius: int = 1
    max_degree: int = 2
    fmt: str = "table"
    out: str | None = None
    section: str | None = None
    basis: bool = False
    workers: int = 1

    def to_argv(self) -> list[str]:
        argv = [
            self.command,
            "--type", self.root_type,
            "--weight", self.weight,
            "--point", self.point,
            "--radius", str(self.radius),
            "--max-degree", str(self.max_degree),
            "--format", self.fmt,
            "--workers", str(self.workers),
        ]
        if self.out is not None:
            argv += ["--out", self.out]
        if self.section is not None:
            argv += ["--section", self.section]
        if self.basis:
            argv.append("--basis")
        return argv

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "JobSpec":
        root_type = ns.type if ns.rank is None else f"{ns.type}{ns.rank}"
        return cls(
            command=ns.command,
            root_type=root_type,
            weight=ns.weight,
            point=ns.point,
            radius=ns.radius,
            max_degree=ns.max_degree,
            fmt=ns.format,
            out=ns.out,
            section=ns.section,
            basis=ns.basis,
            workers=ns.workers,
        )

    def resolve(self) -> tuple[RootDatum, AffineWeight, DeformationPoint]:
        try:
            datum = parse_type(self.root_type)
            lam = parse_weight(datum, self.weight)
            point = parse_point(datum, self.point)
        except (InvalidCartanType, ValueError) as exc:
            raise BadSpec(str(exc)) from exc
        if not lam.is_critical(datum):
            raise BadSpec("block computations need a weight at the critical level (use level:crit)")
        if self.radius < 0 or self.max_degree < 0:
            raise BadSpec("radius and max-degree must be nonnegative")
        return datum, lam, point

    def window(self) -> tuple[RootDatum, DeformationPoint, Window]:
        datum, lam, point = self.resolve()
        window = block_window(datum, lam, point, self.radius)
        if not window.weights:
            raise GuardError("empty window")
        return datum, point, window


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="critblock", description="Critical-level restricted blocks and their centers.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--type", default="A1", help="root type, e.g. A2 (or a family letter with --rank)")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--weight", default="{finite:[0],level:crit,d:0}", help="weight literal")
    p.add_argument("--point", default="central", help="generic | central | subgeneric:<root>")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--format", default="table", choices=("json", "dot", "csv", "table"))
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--section", default=None, help="section JSON file (verify)")
    p.add_argument("--basis", action="store_true", help="include basis sections (center)")
    p.add_argument("--workers", type=int, default=1, help="processes for per-degree solves")
    return p


# commands ------------------------------------------------------------------

def cmd_block(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    cls = classify_block(window)
    literals = [format_weight(datum, w) for w in window]
    if spec.fmt == "json":
        return dumps({
            "schema": "critblock.block/1",
            "type": datum.name,
            "point": format_point(datum, point),
            "radius": spec.radius,
            "classification": str(cls),
            "weights": literals,
        }), EXIT_OK
    if spec.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "weight"])
        w.writerows(enumerate(literals))
        return buf.getvalue(), EXIT_OK
    lines = [f"# {datum.name} {format_point(datum, point)} radius {spec.radius}: {len(literals)} weights, {cls}"]
    lines += [f"{i}\t{lit}" for i, lit in enumerate(literals)]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_graph(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    graph = build_moment_graph(datum, window, point)
    if spec.fmt == "json":
        return dumps(graph_to_json(graph)), EXIT_OK
    if spec.fmt == "dot":
        return graph_to_dot(graph), EXIT_OK
    lines = [f"# {len(graph.vertices)} vertices, {len(graph.edges)} edges"]
    for i, w in enumerate(graph.vertices):
        lines.append(f"v{i}\t{format_weight(datum, w)}")
    for k, e in enumerate(graph.edges):
        lines.append(f"e{k}\tv{e.lower} -- v{e.upper}\t{e.label}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_center(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    graph = build_moment_graph(datum, window, point)
    bases = graded_ranks(graph, spec.max_degree, workers=spec.workers)
    if spec.fmt == "json":
        out = {
            "schema": "critblock.center/1",
            "type": datum.name,
            "point": format_point(datum, point),
            "radius": spec.radius,
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "ranks": [{"degree": b.degree, "rank": b.rank} for b in bases],
        }
        if spec.basis:
            out["basis"] = [
                {
                    "degree": b.degree,
                    "sections": [[format_poly(s[i]) for i in range(len(graph.vertices))] for s in b.basis],
                }
                for b in bases
            ]
        return dumps(out), EXIT_OK
    if spec.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "rank"])
        w.writerows((b.degree, b.rank) for b in bases)
        return buf.getvalue(), EXIT_OK
    lines = [
        f"# {datum.name} {format_point(datum, point)} radius {spec.radius}: "
        f"{len(graph.vertices)} vertices, {len(graph.edges)} edges",
        "degree\trank",
    ]
    lines += [f"{b.degree}\t{b.rank}" for b in bases]
    if spec.basis:
        for b in bases:
            for k, s in enumerate(b.basis):
                vals = ", ".join(format_poly(s[i]) for i in range(len(graph.vertices)))
                lines.append(f"d{b.degree}.{k}\t({vals})")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    if spec.section is None:
        raise BadSpec("verify needs --section FILE")
    graph = build_moment_graph(datum, window, point)
    try:
        data = json.loads(Path(spec.section).read_text())
        section = section_from_json(data, datum.rank)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise BadSpec(f"cannot read section file: {exc}") from exc
    if len(section.values) != len(graph.vertices):
        raise BadSpec(f"section has {len(section.values)} values, graph has {len(graph.vertices)} vertices")
    check = is_section(graph, section)
    if check:
        return f"pass: all {len(graph.edges)} edge congruences hold\n", EXIT_OK
    e = graph.edges[check.edge]
    return (
        f"fail: edge {check.edge} (v{e.lower} -- v{e.upper}, label {e.label}) leaves residue {check.residue}\n",
        EXIT_FAIL,
    )


def cmd_generators(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    graph = build_moment_graph(datum, window, point)
    try:
        gens = subgeneric_generators(graph)
    except ValueError as exc:
        raise BadSpec(str(exc)) from exc
    return dumps([section_to_json(g, graph) for g in gens]), EXIT_OK


def cmd_mult(spec: JobSpec) -> tuple[str, int]:
    datum, point, window = spec.window()
    try:
        table = multiplicity_table(datum, window, point)
    except UndeterminedMultiplicity as exc:
        raise BadSpec(str(exc)) from exc
    rows = [
        {
            "mu": format_weight(datum, r.mu),
            "lambda": format_weight(datum, r.lam),
            "verma_flag": r.verma_flag,
            "simple": r.simple,
            "hom": r.hom,
        }
        for r in table.rows
    ]
    if spec.fmt == "json":
        return dumps({
            "schema": "critblock.mult_table/1",
            "type": datum.name,
            "point": format_point(datum, point),
            "block": table.block,
            "rows": rows,
        }), EXIT_OK
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["mu", "lambda", "verma_flag", "simple", "hom"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "hom": "" if r["hom"] is None else r["hom"]})
    return buf.getvalue(), EXIT_OK


def cmd_acceptance(spec: JobSpec) -> tuple[str, int]:
    from .acceptance import run_all

    results = run_all()
    text = "".join(r.line() + "\n" for r in results)
    return text, EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


HANDLERS = {
    "block": cmd_block,
    "graph": cmd_graph,
    "center": cmd_center,
    "verify": cmd_verify,
    "generators": cmd_generators,
    "mult": cmd_mult,
    "acceptance": cmd_acceptance,
}


def run(spec: JobSpec) -> tuple[str, int]:
    """Execute a job; returns (output text, exit code)."""
    try:
        return HANDLERS[spec.command](spec)
    except BadSpec as exc:
        return f"error: {exc}\n", EXIT_BAD_SPEC
    except GuardError as exc:
        return f"internal guard: {exc}\n", EXIT_GUARD


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    spec = JobSpec.from_namespace(ns)
    text, code = run(spec)
    stream = sys.stderr if code == EXIT_BAD_SPEC or code == EXIT_GUARD else sys.stdout
    if spec.out is not None and code in (EXIT_OK, EXIT_FAIL):
        Path(spec.out).write_text(text)
    else:
        stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
