"""Command line: ``bvexplore run | report | plot``.

Every flag can also come from a JSON config file (``--config FILE``); keys
are the long flag names with or without dashes (``budget-evals`` or
``budget_evals``).  Flags given on the command line win.

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from . import metrics, plotting, runner
from .errors import BoundaryError, ConfigError
from .suts import get_sut, sut_names

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

log = logging.getLogger("bvexplore")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _int_list(text, n=None):
    try:
        values = [int(x) for x in str(text).replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise ConfigError(f"expected comma separated integers, got {text!r}") from None
    if n is not None and len(values) != n:
        raise ConfigError(f"expected {n} integers, got {text!r}")
    return tuple(values)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bvexplore", description="Boundary value exploration over integer-input functions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("run", help="run a search strategy and write run records")
    r.add_argument("--config")
    r.add_argument("--sut")
    r.add_argument("--strategy", choices=sorted(runner.DEFAULT_SPLITS))
    r.add_argument("--sampler", help="cts-bu (default) or uniform")
    r.add_argument("--selection", help="uniform, fitness or curiosity")
    b = r.add_mutually_exclusive_group()
    b.add_argument("--budget-seconds", type=float)
    b.add_argument("--budget-evals", type=int)
    r.add_argument("--split", help="sampler,explorer,tracer percentages, e.g. 10,80,10")
    r.add_argument("--seed", type=int)
    r.add_argument("--reps", type=int)
    r.add_argument("--distance", help="jaccard (default) or strlendist")
    r.add_argument("--label", help="strategy name used in reports")
    r.add_argument("--jobs", type=int, help="repetitions to run in parallel")
    r.add_argument("--out")

    rep = sub.add_parser("report", help="RPD/RAC tables from run records")
    rep.add_argument("--config")
    rep.add_argument("--records", nargs="+", help="record files or glob patterns (*.jsonl)")
    rep.add_argument("--import", dest="imports", nargs="+", metavar="[LABEL=]CSV",
                     help="external candidate sets")
    rep.add_argument("--sut", help="SUT of imported files (default: the records' SUT)")
    rep.add_argument("--reevaluate", action="store_true", default=None,
                     help="re-run imported inputs instead of trusting recorded outputs")
    rep.add_argument("--out")

    pl = sub.add_parser("plot", help="SVG scatter of candidates before/after tracing")
    pl.add_argument("--config")
    pl.add_argument("--records", nargs="+")
    pl.add_argument("--sut", help="only plot records of this SUT")
    pl.add_argument("--projection", help="two argument indices, e.g. 0,1")
    pl.add_argument("--margin", type=float)
    pl.add_argument("--xlim", help="lo,hi")
    pl.add_argument("--ylim", help="lo,hi")
    pl.add_argument("--out")
    return p


def load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    out = {k.replace("-", "_"): v for k, v in data.items()}
    if "import" in out:
        out["imports"] = out.pop("import")
    return out


def merged(args, defaults: dict) -> dict:
    """Command line over config file over ``defaults``."""
    config = load_config(args.config)
    known = set(vars(args)) - {"config", "command", "verbose"}
    unknown = set(config) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = dict(defaults)
    out.update({k: v for k, v in config.items() if v is not None})
    out.update({k: v for k, v in vars(args).items() if k in known and v is not None})
    return out


def strategy_config(opts: dict) -> runner.StrategyConfig:
    if opts.get("budget_seconds") is not None and opts.get("budget_evals") is not None:
        raise ConfigError("give only one of budget-seconds / budget-evals")
    if opts.get("budget_seconds") is not None:
        mode, amount = "seconds", opts["budget_seconds"]
    else:
        mode, amount = "evaluations", opts.get("budget_evals", 10_000)
    split = opts.get("split")
    if isinstance(split, str):
        split = _int_list(split, 3)
    if not opts.get("sut"):
        raise ConfigError("--sut is required")
    return runner.StrategyConfig(
        sut=opts["sut"], strategy=opts.get("strategy", "SET"),
        sampler=opts.get("sampler", "cts-bu"), selection=opts.get("selection", "uniform"),
        budget_mode=mode, budget=amount, split=split, seed=int(opts.get("seed", 0)),
        repetitions=int(opts.get("reps", 1)), distance=opts.get("distance", "jaccard"),
        label=opts.get("label"))


def cmd_run(opts: dict) -> int:
    config = strategy_config(opts)
    out = opts.get("out", "runs")
    records = runner.run(config, out, jobs=int(opts.get("jobs", 1)))
    for rec in records:
        note = f" ({'; '.join(rec.notes)})" if rec.notes else ""
        print(f"{runner.record_stem(rec)}: {len(rec.archive_rows)} cells, "
              f"{rec.evaluation_count} evaluations{note}")
    print(f"records written to {out}")
    return EXIT_OK


def _record_paths(opts) -> list:
    patterns = opts.get("records")
    if not patterns:
        raise ConfigError("--records is required")
    if isinstance(patterns, str):
        patterns = [patterns]
    paths = runner.expand_records(patterns)
    missing = [p for p in paths if not Path(p).is_file()]
    if missing:
        raise ConfigError(f"no record files match {', '.join(missing)}")
    return paths


def cmd_report(opts: dict) -> int:
    records = [runner.load_record(p) for p in _record_paths(opts)]
    imports = {}
    specs = opts.get("imports") or []
    if isinstance(specs, str):
        specs = [specs]
    if specs:
        sut = opts.get("sut")
        if not sut:
            suts = {r.sut for r in records}
            if len(suts) != 1:
                raise ConfigError("--sut is required when records cover several SUTs")
            sut = suts.pop()
        if sut not in sut_names():
            raise ConfigError(f"unknown SUT {sut!r}")
        spec = get_sut(sut)
        for item in specs:
            label, _, path = item.rpartition("=")
            label = label or Path(path).stem
            if not Path(path).is_file():
                raise ConfigError(f"import file {path} not found")
            imports[label] = (sut, metrics.import_external(path, spec, bool(opts.get("reevaluate"))))
    out = opts.get("out", "report")
    for rep in runner.build_report(records, imports):
        paths = runner.write_report(rep, out)
        print(rep.text_table())
        print("pairwise unique cells (row minus column):")
        for s, row, u in zip(rep.strategies, rep.matrix, rep.unique):
            print(f"  {s:<24} {row}  unique={u}")
        print("written: " + ", ".join(str(p) for p in paths))
    return EXIT_OK


def cmd_plot(opts: dict) -> int:
    records = [runner.load_record(p) for p in _record_paths(opts)]
    if opts.get("sut"):
        records = [r for r in records if r.sut == opts["sut"]]
        if not records:
            raise ConfigError(f"no records for SUT {opts['sut']}")
    projection = opts.get("projection")
    if isinstance(projection, str):
        projection = _int_list(projection, 2)
    limits = None
    if opts.get("xlim") or opts.get("ylim"):
        if not (opts.get("xlim") and opts.get("ylim")):
            raise ConfigError("give both --xlim and --ylim")
        limits = (_int_list(opts["xlim"], 2), _int_list(opts["ylim"], 2))
    margin = float(opts.get("margin", plotting.MARGIN))
    out = opts.get("out", "plots")
    for rec in records:
        written = plotting.plot_record(rec, out, tuple(projection) if projection else None, limits, margin)
        if len(written) == 1:
            print(f"{runner.record_stem(rec)}: no tracing in this record, 'after' plot omitted")
        for path in written:
            print(f"wrote {path}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "report": cmd_report, "plot": cmd_plot}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return EXIT_CONFIG
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        opts = merged(args, {})
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](opts)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BoundaryError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
