"""Command-line front end."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import config
from .chains import witness_in
from .classify import Formation, classification_report
from .errors import GroupError, InvalidParameter
from .group import (GroupTable, cyclic, direct_product, export_cayley, from_permutation_generators,
                    named_group, parse_cayley, parse_generators)
from .lattice import all_subgroups, characteristic_subgroup, subgroup_generated, sylow
from .residuals import residual

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    order_cap: int = 300
    corpus_max_order: int = 100
    parallelism: int = 1
    report_path: Optional[str] = None
    format: str = "text"

    def __post_init__(self):
        if self.order_cap < 1 or self.corpus_max_order < 1 or self.parallelism < 1:
            raise InvalidParameter("caps and parallelism must be positive")
        if self.corpus_max_order > self.order_cap:
            raise InvalidParameter("corpus max order exceeds the order cap")
        if self.format not in ("text", "structured"):
            raise InvalidParameter(f"unknown format {self.format!r}")


# -- group expressions ------------------------------------------------------------------------


def parse_group(expr: str) -> GroupTable:
    """cyclic:m | elementary:p:t | symmetric:n | alternating:n | dihedral:2n | paper:<id>
    | product(e1,e2) | file:<path> | trivial"""
    expr = expr.strip()
    if expr.startswith("product(") and expr.endswith(")"):
        left, right = _split_args(expr[len("product("):-1])
        G = direct_product(parse_group(left), parse_group(right))
        if G.name is None:
            G.name = expr
        return G
    if expr == "trivial":
        return cyclic(1)
    kind, _, rest = expr.partition(":")
    if kind == "paper":
        from .corpus import paper_group
        return paper_group(rest)
    if kind == "file":
        return _load_file(rest)
    if not rest:
        raise InvalidParameter(f"cannot parse group expression {expr!r}")
    try:
        params = [int(x) for x in rest.split(":")]
    except ValueError:
        raise InvalidParameter(f"non-integer parameter in {expr!r}") from None
    return named_group(kind, *params)


def _split_args(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise InvalidParameter("product needs two arguments")


def _load_file(path: str) -> GroupTable:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InvalidParameter(f"cannot read {path}: {e}") from None
    first = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if first == "order":
        G = parse_cayley(text)
    elif first == "degree":
        degree, gens = parse_generators(text)
        G = from_permutation_generators(degree, gens)
    else:
        raise InvalidParameter(f"{path}: expected an 'order' or 'degree' header")
    G.name = G.name or Path(path).stem
    return G


def parse_subgroup(G: GroupTable, spec: str):
    """whole | trivial | sylow:p | gens:i,j,... | lattice:k | center | derived | fitting | frattini"""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind in ("center", "derived", "fitting", "frattini"):
        return characteristic_subgroup(G, kind)
    if kind == "whole":
        return subgroup_generated(G, range(G.order))
    if kind == "trivial":
        return subgroup_generated(G, [G.identity])
    try:
        if kind == "sylow":
            return sylow(G, int(rest))
        if kind == "gens":
            elems = [int(x) for x in rest.split(",") if x.strip()]
            if any(not 0 <= x < G.order for x in elems):
                raise InvalidParameter("element index out of range")
            return subgroup_generated(G, elems)
        if kind == "lattice":
            lat = all_subgroups(G)
            k = int(rest)
            if not 0 <= k < lat.size:
                raise InvalidParameter("lattice index out of range")
            return lat.subgroup(k)
    except ValueError:
        raise InvalidParameter(f"bad subgroup spec {spec!r}") from None
    raise InvalidParameter(f"unknown subgroup spec {spec!r}")


def _display(G: GroupTable, expr: str) -> str:
    return G.name or expr


# -- subcommands ---------------------------------------------------------------------------------


def cmd_analyze(args, cfg: RunConfig) -> tuple[int, str]:
    G = parse_group(args.group)
    rep = classification_report(G, _display(G, args.group))
    text = rep.render_record() if cfg.format == "structured" else rep.render_text()
    return EXIT_OK, text


def cmd_residual(args, cfg: RunConfig) -> tuple[int, str]:
    G = parse_group(args.group)
    F = Formation.parse(args.formation)
    r = residual(G, F)
    name = _display(G, args.group)
    fields = [("formation", F.value), ("order", r.residual.order),
              ("index", G.order // r.residual.order), ("trivial", r.residual.is_trivial),
              ("members", ",".join(map(str, r.residual.members))),
              ("witnesses", ",".join(str(w.order) for w in r.witness_normals))]
    return EXIT_OK, _render(name, fields, cfg)


def cmd_psn(args, cfg: RunConfig) -> tuple[int, str]:
    G = parse_group(args.group)
    H = parse_subgroup(G, args.subgroup)
    lat = all_subgroups(G)
    w = witness_in(lat, lat.find(H))
    name = _display(G, args.group)
    fields = [("subgroup_order", H.order), ("p_subnormal", w is not None)]
    if w is not None:
        fields += [("chain_length", w.length), ("chain", w.render())]
    return EXIT_OK, _render(name, fields, cfg)


def _render(name: str, fields, cfg: RunConfig) -> str:
    if cfg.format == "structured":
        return "".join(f"group={name} check={k} value={v}\n" for k, v in fields)
    width = max(len(k) for k, _ in fields)
    return f"group {name}\n" + "".join(f"{k.ljust(width)}  {v}\n" for k, v in fields)


def cmd_export(args, cfg: RunConfig) -> tuple[int, str]:
    G = parse_group(args.group)
    Path(args.cayley).write_text(export_cayley(G))
    return EXIT_OK, f"wrote {G.order}x{G.order} table to {args.cayley}\n"


# -- verification ----------------------------------------------------------------------------------


def _run_group_task(task):
    from .verify import run_group
    G, suites = task
    return run_group(G, suites)


def _fan_out(tasks, parallelism: int):
    if parallelism <= 1 or len(tasks) <= 1:
        return [_run_group_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=parallelism) as ex:
        return list(ex.map(_run_group_task, tasks, chunksize=1))


def _summarize(findings, cfg: RunConfig, header: list[str]) -> tuple[int, str]:
    total = sum(f.checked for f in findings)
    bad = [f for f in findings if f.violations]
    nviol = sum(len(f.violations) for f in bad)
    if cfg.format == "structured":
        lines = header[:]
        for f in findings:
            lines += f.lines()
        lines.append(f"summary checks={total} violations={nviol}")
        text = "\n".join(lines) + "\n"
    else:
        per_suite: dict[str, list[int]] = {}
        for f in findings:
            s = per_suite.setdefault(f.suite, [0, 0, 0])
            s[0] += 1
            s[1] += f.checked
            s[2] += len(f.violations)
        width = max((len(k) for k in per_suite), default=5)
        lines = header[:]
        lines += [f.notes[0] for f in findings if f.notes]
        lines += [f"{k.ljust(width)}  groups={v[0]} checks={v[1]} violations={v[2]}"
                  for k, v in per_suite.items()]
        lines.append(f"total checks={total} violations={nviol}")
        text = "\n".join(lines) + "\n"
    if bad:
        f = bad[0]
        sys.stderr.write(f"first counterexample: suite={f.suite} group={f.group} {f.violations[0]}\n")
        return EXIT_VIOLATION, text
    return EXIT_OK, text


def cmd_verify(args, cfg: RunConfig) -> tuple[int, str]:
    from .verify import LEMMA_SUITES, THEOREM_SUITES, verify_example
    if args.target == "examples":
        from .corpus import PaperGroupId
        findings = []
        for pid in PaperGroupId:
            findings += verify_example(pid)
        return _summarize(findings, cfg, [f"verify examples groups={len(PaperGroupId)}"])
    from .corpus import corpus_generate
    max_order = args.max_order or cfg.corpus_max_order
    if max_order > cfg.order_cap:
        raise InvalidParameter(f"--max-order {max_order} exceeds the order cap {cfg.order_cap}")
    if args.suites:
        suites = args.suites.split(",")
        unknown = [s for s in suites if s not in THEOREM_SUITES and s not in LEMMA_SUITES]
        if unknown:
            raise InvalidParameter(f"unknown suite(s): {', '.join(unknown)}")
    else:
        suites = list(THEOREM_SUITES) + list(LEMMA_SUITES)
    groups = corpus_generate(max_order)
    results = _fan_out([(G, suites) for G in groups], cfg.parallelism)
    findings = [f for r in results for f in r]
    header = [f"verify theorems max_order={max_order} groups={len(groups)} suites={','.join(suites)}"]
    return _summarize(findings, cfg, header)


# -- entry point -------------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fingroups", description="Finite group classification and residual checks.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--report", help="also write the report to this file")
    p.add_argument("--parallelism", type=int, default=None,
                   help="worker processes for verify (default: CPU count)")
    p.add_argument("--order-cap", type=int, default=None,
                   help="largest group order for lattice work (default from FINGROUPS_LATTICE_CAP or 300)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    a = sub.add_parser("analyze", help="classify a group")
    a.add_argument("group")
    a.set_defaults(fn=cmd_analyze)

    r = sub.add_parser("residual", help="formation residual of a group")
    r.add_argument("group")
    r.add_argument("--formation", required=True)
    r.set_defaults(fn=cmd_residual)

    s = sub.add_parser("psn", help="P-subnormality of a subgroup, with a chain witness")
    s.add_argument("group")
    s.add_argument("--subgroup", required=True)
    s.set_defaults(fn=cmd_psn)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("target", choices=("examples", "theorems"))
    v.add_argument("--max-order", type=int, default=None)
    v.add_argument("--suites", default=None, help="comma-separated suite names")
    v.set_defaults(fn=cmd_verify)

    e = sub.add_parser("export", help="write a group's Cayley table")
    e.add_argument("group")
    e.add_argument("--cayley", required=True)
    e.set_defaults(fn=cmd_export)
    return p


def run_command(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Parse and run; returns (exit status, report text).  Usage errors raise SystemExit(2)."""
    args = build_parser().parse_args(argv)
    cap = args.order_cap or config.lattice_cap()
    if args.order_cap:
        os.environ["FINGROUPS_LATTICE_CAP"] = str(args.order_cap)
    try:
        cfg = RunConfig(order_cap=cap,
                        corpus_max_order=min(100, cap),
                        parallelism=args.parallelism or os.cpu_count() or 1,
                        report_path=args.report, format=args.format)
        status, text = args.fn(args, cfg)
    except GroupError as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_USAGE if isinstance(e, InvalidParameter) else EXIT_VIOLATION, ""
    if cfg.report_path:
        Path(cfg.report_path).write_text(text)
    return status, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, text = run_command(argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
