"""Command-line front end: ``bei classify|dseq|reg|product|sweep``.

Exit codes: 0 success or match, 1 negative d-sequence verdict, 2 parse
error, 3 failed precondition, 4 inconclusive, 5 mismatch with a closed form.
"""

from __future__ import annotations

import argparse
import json
import logging
import multiprocessing
import os
import random
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .binomial_edge import (
    BudgetExceeded,
    EdgeBinomialSequence,
    binomial_edge_ideal,
    colon_identity_suite,
    decide_tree,
    exists_d_sequence_order,
    is_d_sequence,
)
from .graph import (
    Graph,
    GraphError,
    GraphParseError,
    NotATree,
    NotClassified,
    canonical_dseq_order,
    classify_tree,
    enumerate_trees,
    random_tree,
)
from .ideal import power
from .poly import Field
from .regularity import (
    HypothesesViolated,
    NoRuleApplies,
    Prediction,
    ProductSpec,
    RegularityReport,
    ResourceLimit,
    betti_table,
    predict,
    product_regularity_check,
    regularity,
)

log = logging.getLogger("bei")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INCONCLUSIVE = 4
EXIT_MISMATCH = 5


@dataclass(frozen=True)
class RunConfig:
    field: Field
    budget: int = 50_000
    imax: int | None = None
    jmax: int | None = None
    workers: int = 1
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.budget < 1 or self.workers < 1:
            raise ValueError("budget and workers must be positive")
        for cap in (self.imax, self.jmax):
            if cap is not None and cap < 0:
                raise ValueError("caps must be non-negative")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_graph(path: str) -> Graph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None
    try:
        return Graph.loads(text)
    except GraphError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def _parse_edges(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = chunk.split("-")
            out.append((int(a), int(b)))
        except ValueError:
            raise CliError(EXIT_PARSE, f"bad edge {chunk!r}; expected i-j") from None
    return out


def _parse_paths(text: str, m: int) -> ProductSpec:
    """'2@1,1' is a 2-edge path starting at vertex 1 of K_m plus a disjoint edge."""
    lengths, attach = [], []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            if "@" in chunk:
                a, b = chunk.split("@")
                lengths.append(int(a))
                attach.append(int(b))
            else:
                lengths.append(int(chunk))
                attach.append(None)
        except ValueError:
            raise CliError(EXIT_PARSE, f"bad path entry {chunk!r}; expected L or L@v") from None
    return ProductSpec(tuple(lengths), tuple(attach), m)


def _emit(cfg: RunConfig, data: dict, text: str | None = None) -> None:
    if cfg.fmt == "table" and text is not None:
        print(text)
    else:
        print(json.dumps(data))


def _power_formula(iv: int) -> str:
    c = iv - 1
    if c == 0:
        return "2s"
    return f"2s{'+' if c > 0 else '-'}{abs(c)}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args, cfg: RunConfig) -> int:
    g = _load_graph(args.graph)
    try:
        c = classify_tree(g)
    except NotATree as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    data = c.to_json()
    if c.has_dsequence:
        iv = c.internal_vertices
        data["reg_formula"] = f"reg S/J^s = {_power_formula(iv)}"
        data["predicted_reg"] = iv + 1
    lines = [f"variant: {c.variant}", f"degree sequence: {list(c.degree_sequence)}"]
    if c.variant in ("Tm", "Hm"):
        lines += [f"m: {c.m}", f"s: {list(c.s)}", f"i(G): {c.internal_vertices}"]
    if c.has_dsequence:
        lines.append(data["reg_formula"])
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_dseq(args, cfg: RunConfig) -> int:
    g = _load_graph(args.graph)
    if not g.edges:
        raise CliError(EXIT_PRECONDITION, "graph has no edges")
    if args.order == "canonical":
        try:
            c = classify_tree(g)
            order = canonical_dseq_order(c, g)
        except (NotATree, NotClassified) as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
        v = is_d_sequence(EdgeBinomialSequence.build(g, order, cfg.field))
    elif args.order == "explicit":
        if not args.edges:
            raise CliError(EXIT_PARSE, "--order explicit needs --edges")
        try:
            seq = EdgeBinomialSequence.build(g, _parse_edges(args.edges), cfg.field)
        except GraphError as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
        v = is_d_sequence(seq)
    else:
        try:
            v = exists_d_sequence_order(g, cfg.budget, cfg.field)
        except NotATree as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
        except BudgetExceeded as exc:
            _emit(cfg, exc.verdict.to_json(), "inconclusive: budget exhausted")
            return EXIT_INCONCLUSIVE
    text = "holds: " + ("yes " + str([list(e) for e in v.ordering]) if v.holds else "no")
    if v.violation is not None:
        text += f"\nfirst violation: i={v.violation.i}, j={v.violation.j}"
    _emit(cfg, v.to_json(), text)
    return EXIT_OK if v.holds else EXIT_NEGATIVE


def _regularity_of(I, cfg: RunConfig, prediction: Prediction | None):
    if cfg.imax is None and cfg.jmax is None:
        return regularity(I, prediction=prediction)
    table = betti_table(I, cfg.imax, cfg.jmax)
    return RegularityReport(table.reg, False, table, prediction, None)


def cmd_reg(args, cfg: RunConfig) -> int:
    g = _load_graph(args.graph)
    if not g.edges:
        raise CliError(EXIT_PRECONDITION, "graph has no edges")
    s = args.power
    if s < 1:
        raise CliError(EXIT_PRECONDITION, "--power must be >= 1")
    mode = args.mode or "check"
    pred = None
    if mode in ("predict", "check"):
        try:
            pred = predict(g, s)
        except NoRuleApplies as exc:
            _emit(cfg, {"error": "NoRuleApplies", "message": str(exc)}, f"NoRuleApplies: {exc}")
            return EXIT_PRECONDITION
    if mode == "predict":
        _emit(cfg, pred.to_json(), f"predicted reg S/J^{s} = {pred.value} ({pred.rule})")
        return EXIT_OK
    I = binomial_edge_ideal(g, cfg.field)
    if s > 1:
        I = power(I, s)
    try:
        rep = _regularity_of(I, cfg, pred)
    except ResourceLimit as exc:
        _emit(cfg, {"error": "ResourceLimit", "message": str(exc)}, f"ResourceLimit: {exc}")
        return EXIT_INCONCLUSIVE
    data = rep.to_json()
    text = rep.table.to_text() + f"\nreg = {rep.observed_reg} (certified: {rep.certified}, field {rep.table.field})"
    if pred is not None:
        verdict = {True: "match", False: "MISMATCH", None: "undecided"}[rep.matches]
        text += f"\npredicted = {pred.value} ({pred.rule}): {verdict}"
    _emit(cfg, data, text)
    if rep.matches is False:
        return EXIT_MISMATCH
    return EXIT_OK if rep.certified else EXIT_INCONCLUSIVE


def cmd_product(args, cfg: RunConfig) -> int:
    spec = _parse_paths(args.paths, args.m)
    try:
        rep = product_regularity_check(spec, cfg.field)
    except HypothesesViolated as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    except ResourceLimit as exc:
        raise CliError(EXIT_INCONCLUSIVE, str(exc)) from None
    text = rep.table.to_text() + f"\nreg = {rep.computed}, predicted 2+n = {rep.predicted}"
    _emit(cfg, rep.to_json(), text)
    if rep.computed > rep.predicted or (rep.certified and rep.computed != rep.predicted):
        return EXIT_MISMATCH
    return EXIT_OK if rep.certified else EXIT_INCONCLUSIVE


# -- sweeps -------------------------------------------------------------------


def _sweep_dseq(task) -> dict:
    g, cfg = task
    d = decide_tree(g, cfg.budget, cfg.field)
    rec = d.to_json()
    rec["status"] = "inconclusive" if d.error else ("mismatch" if d.mismatch else "ok")
    return rec


def _sweep_reg(task) -> dict:
    g, cfg = task
    c = classify_tree(g)
    rec = {"graph": g.to_json(), "variant": c.variant}
    try:
        rep = regularity(binomial_edge_ideal(g, cfg.field))
    except ResourceLimit as exc:
        rec.update(status="inconclusive", error=str(exc))
        return rec
    rec.update(reg=rep.observed_reg, certified=rep.certified, field=rep.table.field)
    if c.has_dsequence:
        expected = c.internal_vertices + 1
        rec["predicted"] = expected
        bad = rep.observed_reg > expected or (rep.certified and rep.observed_reg != expected)
        rec["status"] = "mismatch" if bad else "ok"
    else:
        rec["predicted"] = None
        rec["status"] = "ok"
    if rec["status"] == "ok" and not rep.certified:
        rec["status"] = "inconclusive"
    return rec


def _sweep_colon(task) -> dict:
    g, cfg = task
    failures = []
    for e in g.sorted_edges():
        rep = colon_identity_suite(g.remove_edge(e), e, cfg.field)
        if not rep.equal:
            failures.append(list(e))
    return {
        "graph": g.to_json(),
        "edges_checked": g.m,
        "failures": failures,
        "status": "mismatch" if failures else "ok",
    }


SWEEPS: dict[str, tuple[Callable, int]] = {"dseq": (_sweep_dseq, 7), "reg": (_sweep_reg, 6), "colon": (_sweep_colon, 8)}


def _sweep_trees(max_n: int, sample: int | None, seed: int) -> Iterator[Graph]:
    if sample:
        rng = random.Random(seed)
        for _ in range(sample):
            yield random_tree(max_n, rng)
        return
    for n in range(2, max_n + 1):
        yield from enumerate_trees(n)


def run_sweep(mode: str, max_n: int, cfg: RunConfig, sample: int | None = None) -> Iterator[dict]:
    fn, _ = SWEEPS[mode]
    tasks = [(g, cfg) for g in _sweep_trees(max_n, sample, cfg.seed)]
    if cfg.workers == 1:
        for t in tasks:
            yield fn(t)
        return
    with multiprocessing.Pool(cfg.workers) as pool:
        yield from pool.imap(fn, tasks)


def cmd_sweep(args, cfg: RunConfig) -> int:
    fn, limit = SWEEPS[args.mode]
    if args.max_n < 2 or (args.max_n > limit and not args.sample):
        raise CliError(EXIT_PRECONDITION, f"--max-n for mode {args.mode} must be in 2..{limit}")
    out = open(args.out, "w") if args.out else sys.stdout
    counts = {"ok": 0, "mismatch": 0, "inconclusive": 0}
    failures = []
    try:
        for rec in run_sweep(args.mode, args.max_n, cfg, args.sample):
            counts[rec["status"]] += 1
            if rec["status"] != "ok":
                failures.append(rec["graph"])
            out.write(json.dumps(rec) + "\n")
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    summary = {"summary": {"mode": args.mode, "max_n": args.max_n, "field": cfg.field.name, **counts}, "failures": failures}
    print(json.dumps(summary), file=sys.stderr)
    if counts["mismatch"]:
        return EXIT_MISMATCH
    if counts["inconclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _field_arg(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=Field.prime(), help="q or fp:<p> (default fp:32003)")
    common.add_argument("--budget", type=int, default=50_000, help="Groebner basis runs allowed for a search")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "table"), default="json", dest="fmt")
    common.add_argument("--imax", type=int, default=None, help="largest homological degree to compute")
    common.add_argument("--jmax", type=int, default=None, help="largest internal degree to compute")

    parser = argparse.ArgumentParser(prog="bei", description="Binomial edge ideals of trees: d-sequences and regularity.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a tree by its degree sequence")
    p.add_argument("graph", help="graph JSON file, or - for stdin")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dseq", parents=[common], help="test whether edge binomials form a d-sequence")
    p.add_argument("graph")
    p.add_argument("--order", choices=("canonical", "search", "explicit"), default="search")
    p.add_argument("--edges", help="explicit ordering, e.g. 1-2,2-3")
    p.set_defaults(func=cmd_dseq)

    p = sub.add_parser("reg", parents=[common], help="regularity of S/J_G^s")
    p.add_argument("graph")
    p.add_argument("--power", type=int, default=1)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--predict-only", dest="mode", action="store_const", const="predict")
    g.add_argument("--compute", dest="mode", action="store_const", const="compute")
    g.add_argument("--check", dest="mode", action="store_const", const="check")
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("product", parents=[common], help="regularity of J_H J_{K_m} for a path forest H")
    p.add_argument("--paths", required=True, help="comma list of L (disjoint path) or L@v (path starting at vertex v)")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("sweep", parents=[common], help="cross-validate over all small trees (JSONL)")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--mode", choices=tuple(SWEEPS), default="dseq")
    p.add_argument("--sample", type=int, default=None, help="random labeled trees on max-n vertices instead")
    p.add_argument("--out", default=None, help="JSONL output file (default stdout)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    level = os.environ.get("BEI_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        cfg = RunConfig(args.field, args.budget, args.imax, args.jmax, args.workers, args.fmt, args.seed)
    except ValueError as exc:
        print(f"bei: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, cfg)
    except CliError as exc:
        print(f"bei: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
