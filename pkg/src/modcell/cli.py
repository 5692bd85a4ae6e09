"""Command-line front end.

Commands: enumerate, homology, verify-bijection, verify-zigzag, export.
Exit codes: 0 success / verification passed, 1 verification failed, 2 usage
error.  Output is deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import critical, fatgraph, homology, radial, sullivan
from .errors import GraphError, ModcellError, ParameterError, ValidationError

COMMANDS = ("enumerate", "homology", "verify-bijection", "verify-zigzag",
            "export")
MODELS = ("radial", "unilevel", "sd", "fatgraph")


@dataclass
class RunConfig:
    command: str
    model: str
    h: int
    n: int
    m: int
    genus: int
    out_format: str
    out_path: str | None
    workers: int


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="modcell",
        description="Enumerate and verify combinatorial cell models of "
                    "surface moduli and compute their integer homology.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--model", choices=MODELS, default="unilevel")
    p.add_argument("--g", type=int, default=None, help="genus")
    p.add_argument("--h", type=int, default=None,
                   help="half the slit count; alternative to --g")
    p.add_argument("--n", type=int, required=True, help="incoming circles")
    p.add_argument("--m", type=int, required=True, help="outgoing circles")
    p.add_argument("--format", dest="out_format",
                   choices=("json", "dot", "table"), default="json")
    p.add_argument("--out", dest="out_path", default=None)
    p.add_argument("--workers", type=int, default=1)
    return p


def parse_config(argv) -> RunConfig:
    args = _parser().parse_args(argv)
    if (args.g is None) == (args.h is None):
        raise ParameterError("give exactly one of --g and --h")
    if args.g is not None:
        genus = args.g
        if genus < 0:
            raise ParameterError("genus must be nonnegative")
        h = 2 * genus - 2 + args.n + args.m
        if h < 0:
            raise ParameterError(
                f"no cells: 2h = 2(2g - 2 + n + m) is negative for "
                f"g={genus} n={args.n} m={args.m}")
    else:
        h = args.h
        genus = radial.check_parameters(h, args.n, args.m)
    return RunConfig(args.command, args.model, h, args.n, args.m, genus,
                     args.out_format, args.out_path, max(1, args.workers))


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cells(cfg: RunConfig):
    if cfg.model == "unilevel":
        return radial.enumerate_types(cfg.h, cfg.n, cfg.m, radial.UNILEVEL)
    if cfg.model == "radial":
        return radial.enumerate_types(cfg.h, cfg.n, cfg.m, radial.NONDEGENERATE)
    if cfg.model == "sd":
        return sullivan.enumerate_diagrams(cfg.genus, cfg.n, cfg.m)
    return radial.enumerate_types(cfg.h, cfg.n, cfg.m, radial.NONDEGENERATE)


def cmd_enumerate(cfg: RunConfig) -> int:
    cells = _cells(cfg)
    if cfg.out_format == "table":
        if cfg.model == "sd":
            lines = [sullivan.text_form(d) for d in cells]
        else:
            lines = [radial.text_form(t) for t in cells]
    else:
        if cfg.model == "sd":
            lines = [json.dumps(sullivan.to_json_dict(d), sort_keys=True)
                     for d in cells]
        elif cfg.model == "fatgraph":
            lines = [json.dumps(
                fatgraph.to_json_dict(critical.critical_graph(t)),
                sort_keys=True) for t in cells]
        else:
            lines = [json.dumps(radial.to_json_dict(t), sort_keys=True)
                     for t in cells]
    _emit(cfg, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_homology(cfg: RunConfig) -> int:
    if cfg.model == "sd":
        complex_ = homology.sd_complex(cfg.genus, cfg.n, cfg.m)
    else:
        complex_ = homology.unilevel_complex(cfg.h, cfg.n, cfg.m)
    hom = homology.homology(complex_)
    if cfg.out_format == "table":
        _emit(cfg, homology.homology_table(hom) + "\n")
    else:
        payload = {
            "model": cfg.model,
            "g": cfg.genus, "n": cfg.n, "m": cfg.m,
            "cells": {str(k): len(v)
                      for k, v in sorted(complex_.cells_by_degree.items())},
            "homology": {str(k): {"betti": b, "torsion": list(tor)}
                         for k, (b, tor) in sorted(hom.items())},
            "euler": homology.euler_characteristic(complex_),
        }
        _emit(cfg, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def _fail(cfg: RunConfig, what: str, detail: dict) -> int:
    _emit(cfg, json.dumps({"result": "fail", "check": what,
                           "counterexample": detail}, sort_keys=True) + "\n")
    return 1


def cmd_verify_bijection(cfg: RunConfig) -> int:
    types = radial.enumerate_types(cfg.h, cfg.n, cfg.m, radial.UNILEVEL)
    diagrams = sullivan.enumerate_diagrams(cfg.genus, cfg.n, cfg.m)
    if len(types) != len(diagrams):
        return _fail(cfg, "cell-count",
                     {"unilevel": len(types), "sd": len(diagrams)})
    diagram_set = set(diagrams)
    for t in types:
        d = sullivan.f_map(t)
        if d not in diagram_set:
            return _fail(cfg, "image", {"type": radial.text_form(t)})
        if sullivan.g_map(d) != t:
            return _fail(cfg, "round-trip", {"type": radial.text_form(t)})
        qs = radial.radial_degrees(t)
        for i in range(1, t.n + 1):
            if qs[i - 1] == 0:
                continue
            for j in range(qs[i - 1] + 1):
                lhs = sullivan.canonical_diagram(sullivan.sd_face(d, i - 1, j))
                rhs = sullivan.f_map(radial.canonicalize(radial.face(t, i, j)))
                if lhs != rhs:
                    return _fail(cfg, "face-commutation",
                                 {"type": radial.text_form(t),
                                  "axis": i, "chamber": j})
    for d in diagrams:
        if sullivan.f_map(sullivan.g_map(d)) != d:
            return _fail(cfg, "inverse", {"diagram": sullivan.text_form(d)})
    _emit(cfg, json.dumps({"result": "pass",
                           "cells": len(types)}, sort_keys=True) + "\n")
    return 0


def cmd_verify_zigzag(cfg: RunConfig) -> int:
    types = radial.enumerate_types(cfg.h, cfg.n, cfg.m, radial.NONDEGENERATE)
    checked = 0
    for t in types:
        graph = critical.critical_graph(t)
        genus, b = fatgraph.surface_type(graph)
        if (genus, b) != (cfg.genus, cfg.n + cfg.m):
            return _fail(cfg, "surface-type",
                         {"type": radial.text_form(t),
                          "got": [genus, b]})
        deg = radial.multi_degree(t)
        for i in range(1, t.n + 2):
            q = deg.radial[i - 1] if i <= t.n else deg.annular
            if q == 0:
                continue
            for j in range(q + 1):
                tf = radial.face(t, i, j)
                if radial.is_degenerate(tf):
                    continue
                try:
                    if i <= t.n:
                        critical.radial_collapse_zigzag(t, tf)
                    else:
                        critical.annular_collapse(t, tf)
                except GraphError as exc:
                    return _fail(cfg, "collapse",
                                 {"type": radial.text_form(t), "axis": i,
                                  "chamber": j, "error": str(exc)})
                checked += 1
    _emit(cfg, json.dumps({"result": "pass", "types": len(types),
                           "collapses": checked}, sort_keys=True) + "\n")
    return 0


def cmd_export(cfg: RunConfig) -> int:
    cells = _cells(cfg)
    if cfg.model == "sd":
        graphs = [sullivan.induced_fat_graph(d) for d in cells]
    else:
        graphs = [critical.critical_graph(t) for t in cells]
    if cfg.out_format == "dot":
        chunks = [fatgraph.to_dot(g, f"cell{i}") for i, g in enumerate(graphs)]
        _emit(cfg, "\n".join(chunks))
    else:
        lines = [json.dumps(fatgraph.to_json_dict(g), sort_keys=True)
                 for g in graphs]
        _emit(cfg, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def run(cfg: RunConfig) -> int:
    if cfg.command == "enumerate":
        return cmd_enumerate(cfg)
    if cfg.command == "homology":
        return cmd_homology(cfg)
    if cfg.command == "verify-bijection":
        return cmd_verify_bijection(cfg)
    if cfg.command == "verify-zigzag":
        return cmd_verify_zigzag(cfg)
    if cfg.command == "export":
        return cmd_export(cfg)
    raise ParameterError(f"unknown command {cfg.command!r}")


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return run(cfg)
    except (ParameterError, ValidationError, ModcellError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
