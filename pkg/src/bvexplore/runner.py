"""Strategy runs, run-record persistence and report tables.

A run is Sampler, then Explorer, then Tracer, each phase spending its
share of the total budget.  Every run writes two files: a JSON-lines
record (header, archive rows, trace populations) and a flat CSV of the
archive rows.
"""
from __future__ import annotations

import csv
import glob
import io
import json
import logging
import os
import random
import tempfile
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import metrics
from .archive import Archive, Phase, Selection
from .budget import Budget
from .derivative import BoundaryCandidate, OutputDistance, make_candidate
from .descriptors import CellCoord, cell_coord
from .errors import ConfigError, SchemaError
from .explorer import ExplorerConfig, run_explorer
from .sampler import SamplerKind, run_sampler
from .suts import ExecutionOutcome, get_sut, sut_names
from .tracer import TracerConfig, run_tracer

log = logging.getLogger(__name__)

DEFAULT_SPLITS = {
    "S": (100, 0, 0),
    "SE": (10, 90, 0),
    "ST": (90, 0, 10),
    "SET": (10, 80, 10),
}
BUDGET_MODES = ("evaluations", "seconds")


@dataclass
class StrategyConfig:
    sut: str
    strategy: str = "SET"
    sampler: str = SamplerKind.CTS_BITUNIFORM.value
    selection: str = Selection.UNIFORM.value
    budget_mode: str = "evaluations"
    budget: float = 10_000
    split: Optional[tuple] = None
    seed: int = 0
    repetitions: int = 1
    distance: str = OutputDistance.JACCARD_2GRAM.value
    label: Optional[str] = None

    def __post_init__(self):
        self.strategy = str(self.strategy).upper()
        if self.strategy not in DEFAULT_SPLITS:
            raise ConfigError(f"unknown strategy {self.strategy!r}; pick one of {sorted(DEFAULT_SPLITS)}")
        if self.sut not in sut_names():
            raise ConfigError(f"unknown SUT {self.sut!r}; known: {', '.join(sut_names())}")
        for enum_type, attr in ((SamplerKind, "sampler"), (Selection, "selection"),
                                (OutputDistance, "distance")):
            try:
                setattr(self, attr, enum_type(getattr(self, attr)).value)
            except ValueError:
                choices = [e.value for e in enum_type]
                raise ConfigError(f"{attr} must be one of {choices}") from None
        if self.budget_mode not in BUDGET_MODES:
            raise ConfigError(f"budget_mode must be one of {BUDGET_MODES}")
        if not self.budget or self.budget <= 0:
            raise ConfigError("budget must be positive")
        if self.budget_mode == "evaluations":
            if self.budget != int(self.budget):
                raise ConfigError("evaluation budget must be a whole number")
            self.budget = int(self.budget)
        if self.split is None:
            self.split = DEFAULT_SPLITS[self.strategy]
        self.split = tuple(int(x) for x in self.split)
        if len(self.split) != 3 or any(x < 0 for x in self.split) or sum(self.split) != 100:
            raise ConfigError(f"split {self.split} must be three non-negative percentages summing to 100")
        s, e, t = self.split
        if s == 0:
            raise ConfigError("the sampler phase needs a non-zero share")
        if (e > 0) != ("E" in self.strategy) or (t > 0) != ("T" in self.strategy):
            raise ConfigError(f"split {self.split} does not match strategy {self.strategy}")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be at least 1")

    @property
    def strategy_id(self) -> str:
        if self.label:
            return self.label
        name = self.strategy
        if self.sampler != SamplerKind.CTS_BITUNIFORM.value:
            name += "[" + self.sampler + "]"
        if "E" in self.strategy:
            name += "-" + self.selection
        return name

    @property
    def time_budget(self) -> str:
        return f"{self.budget}s" if self.budget_mode == "seconds" else f"{self.budget} evals"

    def phase_budgets(self) -> list:
        """Budget amounts for Sampler, Explorer, Tracer.

        Evaluation shares are floored to even numbers (one candidate costs
        two evaluations); the tracer takes whatever remains.
        """
        if self.budget_mode == "seconds":
            return [self.budget * p / 100 for p in self.split]
        s, e, t = self.split
        total = self.budget
        sb = total * s // 100
        eb = total * e // 100
        if t:
            sb -= sb % 2
            eb -= eb % 2
            return [sb, eb, total - sb - eb]
        if e:
            sb -= sb % 2
            return [sb, total - sb, 0]
        return [total, 0, 0]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["split"] = list(self.split)
        return d


@dataclass
class RunRecord:
    config: StrategyConfig
    run_index: int
    seed: int
    archive_rows: list
    trace_populations: list = field(default_factory=list)
    phase_evaluations: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def evaluation_count(self) -> int:
        return sum(self.phase_evaluations.values())

    @property
    def sut(self) -> str:
        return self.config.sut

    @property
    def strategy_id(self) -> str:
        return self.config.strategy_id


def phase_rng(run_seed: int, phase: Phase) -> random.Random:
    # string seeds are hashed with sha512, so this is stable across processes
    return random.Random(f"{run_seed}/{phase.value}")


# ---------------------------------------------------------------------------
# rows

def outcome_fields(o: ExecutionOutcome) -> tuple:
    """(output text, exception kind) as stored in records."""
    return o.render(), o.kind or ""


def outcome_from_fields(text: str, kind: str) -> ExecutionOutcome:
    if not kind:
        return ExecutionOutcome.ok(text)
    inner = text[len(kind) + 1:-1] if text.startswith(kind + "(") and text.endswith(")") else ""
    if len(inner) >= 2 and inner[0] == inner[-1] == '"':
        inner = inner[1:-1]
    return ExecutionOutcome.error(kind, inner)


def candidate_dict(c: BoundaryCandidate) -> dict:
    out_a, kind_a = outcome_fields(c.outcome_a)
    out_b, kind_b = outcome_fields(c.outcome_b)
    return {"a": list(c.a), "b": list(c.b), "output_a": out_a, "output_b": out_b,
            "exception_kind_a": kind_a, "exception_kind_b": kind_b, "pd": c.pd}


def candidate_from_dict(d: dict, distance=OutputDistance.JACCARD_2GRAM) -> BoundaryCandidate:
    oa = outcome_from_fields(d["output_a"], d["exception_kind_a"])
    ob = outcome_from_fields(d["output_b"], d["exception_kind_b"])
    return make_candidate(tuple(d["a"]), tuple(d["b"]), oa, ob, OutputDistance(distance))


def archive_rows(archive: Archive) -> list:
    rows = []
    for e in archive.snapshot():
        row = {"phase": e.phase.value, "cell": list(e.cell)}
        row.update(candidate_dict(e.candidate))
        row["curiosity"] = e.curiosity
        rows.append(row)
    return rows


def csv_header(arity: int) -> list:
    inputs = [f"a{k}" for k in range(arity)] + [f"b{k}" for k in range(arity)]
    return (["sut", "strategy", "run", "phase"] + list(CellCoord._fields) + inputs
            + ["output_a", "output_b", "exception_kind_a", "exception_kind_b", "pd", "curiosity"])


def csv_rows(record: RunRecord) -> list:
    out = []
    for r in record.archive_rows:
        out.append([record.sut, record.strategy_id, record.run_index, r["phase"], *r["cell"],
                    *r["a"], *r["b"], r["output_a"], r["output_b"],
                    r["exception_kind_a"], r["exception_kind_b"], repr(r["pd"]), r["curiosity"]])
    return out


# ---------------------------------------------------------------------------
# running

def run_once(config: StrategyConfig, run_index: int) -> RunRecord:
    """One repetition.  Phases run strictly in order S, E, T."""
    sut = get_sut(config.sut)
    seed = config.seed + run_index
    distance = OutputDistance(config.distance)
    sb, eb, tb = config.phase_budgets()
    mode = config.budget_mode
    archive = Archive(sut)
    record = RunRecord(config, run_index, seed, [])

    started = time.perf_counter()
    budget = Budget(**{mode: sb})
    run_sampler(archive, sut, SamplerKind(config.sampler), budget, phase_rng(seed, Phase.SAMPLER), distance)
    record.phase_evaluations["Sampler"] = budget.spent
    record.timing["Sampler"] = time.perf_counter() - started

    if eb:
        started = time.perf_counter()
        budget = Budget(**{mode: eb})
        if len(archive):
            run_explorer(archive, sut, ExplorerConfig(Selection(config.selection)), budget,
                         phase_rng(seed, Phase.EXPLORER), distance)
        else:
            _skip(record, "explorer skipped: sampler found no candidates")
        record.phase_evaluations["Explorer"] = budget.spent
        record.timing["Explorer"] = time.perf_counter() - started

    if tb:
        started = time.perf_counter()
        budget = Budget(**{mode: tb})
        if sut.arity < 2:
            _skip(record, f"tracer skipped: {sut.name} has arity 1")
        elif len(archive) < 2:
            _skip(record, "tracer skipped: fewer than two archive candidates")
        else:
            pops = run_tracer(archive, sut, TracerConfig(), budget, phase_rng(seed, Phase.TRACER), distance)
            for p in pops:
                record.trace_populations.append({
                    "seed": candidate_dict(p.seed),
                    "bounds": {"low": list(p.bounds.low), "high": list(p.bounds.high)},
                    "members": [candidate_dict(m) for m in p.members],
                    "evaluations": p.evaluations,
                })
        record.phase_evaluations["Tracer"] = budget.spent
        record.timing["Tracer"] = time.perf_counter() - started

    record.archive_rows = archive_rows(archive)
    return record


def _skip(record: RunRecord, note: str) -> None:
    warnings.warn(note, RuntimeWarning, stacklevel=3)
    record.notes.append(note)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def record_stem(record: RunRecord) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in record.strategy_id)
    return f"{record.sut}_{safe}_run{record.run_index:03d}"


def record_jsonl(record: RunRecord) -> str:
    header = {"type": "run", "config": record.config.to_dict(), "strategy_id": record.strategy_id,
              "run_index": record.run_index, "seed": record.seed,
              "evaluation_count": record.evaluation_count,
              "phase_evaluations": record.phase_evaluations, "notes": record.notes}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps({"type": "archive_row", **r}, sort_keys=True) for r in record.archive_rows]
    lines += [json.dumps({"type": "trace_population", **p}, sort_keys=True)
              for p in record.trace_populations]
    # wall-clock figures are kept on a line of their own so the rest is reproducible
    lines.append(json.dumps({"type": "timing", **record.timing}, sort_keys=True))
    return "\n".join(lines) + "\n"


def record_csv(record: RunRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(get_sut(record.sut).arity))
    w.writerows(csv_rows(record))
    return buf.getvalue()


def write_record(record: RunRecord, out_dir) -> tuple:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = record_stem(record)
    jpath, cpath = out_dir / f"{stem}.jsonl", out_dir / f"{stem}.csv"
    _atomic_write(jpath, record_jsonl(record))
    _atomic_write(cpath, record_csv(record))
    return jpath, cpath


def _run_and_write(config, i, out_dir):
    record = run_once(config, i)
    if out_dir is not None:
        write_record(record, out_dir)
    return record


def run(config: StrategyConfig, out_dir=None, jobs: int = 1) -> list:
    """All repetitions of ``config``; run ``i`` uses seed ``config.seed + i``."""
    indices = range(config.repetitions)
    if jobs > 1 and config.repetitions > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_and_write, config, i, out_dir) for i in indices]
            return [f.result() for f in futures]
    return [_run_and_write(config, i, out_dir) for i in indices]


# ---------------------------------------------------------------------------
# loading and auditing

def load_record(path) -> RunRecord:
    header, rows, pops, timing = None, [], [], {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}: bad JSON ({exc.msg})", line=lineno) from None
            kind = obj.pop("type", None)
            if kind == "run":
                header = obj
            elif kind == "archive_row":
                rows.append(obj)
            elif kind == "trace_population":
                pops.append(obj)
            elif kind == "timing":
                timing = obj
            else:
                raise SchemaError(f"{path}: unknown record type {kind!r}", line=lineno)
    if header is None:
        raise SchemaError(f"{path}: missing run header", line=1)
    cfg = dict(header["config"])
    cfg["split"] = tuple(cfg["split"])
    config = StrategyConfig(**cfg)
    return RunRecord(config, header["run_index"], header["seed"], rows, pops,
                     header.get("phase_evaluations", {}), timing, header.get("notes", []))


def audit_record(record: RunRecord) -> list:
    """Rows whose stored cell or pd differ from a recomputation."""
    sut = get_sut(record.sut)
    bad = []
    for k, r in enumerate(record.archive_rows):
        c = candidate_from_dict(r, record.config.distance)
        if c.pd != r["pd"] or list(cell_coord(c, sut)) != r["cell"]:
            bad.append(k)
    return bad


def expand_records(patterns) -> list:
    paths = []
    for pattern in patterns:
        hits = sorted(glob.glob(pattern))
        paths.extend(hits if hits else [pattern])
    return paths


# ---------------------------------------------------------------------------
# reporting

@dataclass
class SutReport:
    sut: str
    universe: metrics.CandidateUniverse
    summary: dict
    budgets: dict
    strategies: list
    matrix: list
    unique: list

    def summary_rows(self) -> list:
        rows = []
        for s in self.strategies:
            v = self.summary[s]
            rows.append([s, self.budgets.get(s, ""), v["rpd_mean"], v["rpd_std"], v["rac_mean"], v["rac_std"]])
        return rows

    def text_table(self) -> str:
        lines = [f"{self.sut}: {len(self.universe.feasible_cells)} feasible cells, "
                 f"threshold pd {self.universe.threshold_pd:.4g}",
                 f"{'strategy':<24} {'budget':>14} {'RPD':>17} {'RAC %':>17}"]
        for s, b, rm, rs, cm, cs in self.summary_rows():
            lines.append(f"{s:<24} {b:>14} {rm:>8.3f} ± {rs:<6.3f} {cm:>8.2f} ± {cs:<6.2f}")
        return "\n".join(lines)


def _scored(rows) -> list:
    return [metrics.Scored(tuple(r["cell"]), r["pd"]) for r in rows]


def build_report(records: list, imports: Optional[dict] = None) -> list:
    """One :class:`SutReport` per SUT.

    ``imports`` maps a strategy label to ``(sut_name, [BoundaryCandidate])``.
    """
    by_sut = {}
    budgets = {}
    for rec in records:
        runs = by_sut.setdefault(rec.sut, [])
        runs.append(metrics.RunSet(rec.strategy_id, rec.run_index,
                                   _scored(rec.archive_rows)))
        budgets.setdefault(rec.sut, {})[rec.strategy_id] = rec.config.time_budget
    for label, (sut_name, cands) in (imports or {}).items():
        sut = get_sut(sut_name)
        items = [metrics.Scored(tuple(cell_coord(c, sut)), c.pd) for c in cands if c.pd > 0]
        by_sut.setdefault(sut_name, []).append(metrics.RunSet(label, 0, items))
    reports = []
    for sut_name in sorted(by_sut):
        runs = by_sut[sut_name]
        universe = metrics.build_universe(runs)
        summary = metrics.strategy_summary(runs, universe)
        cell_sets = sorted(metrics.strategy_cell_sets(runs, universe), key=lambda s: s.strategy_id)
        matrix, unique = metrics.pairwise_unique(cell_sets)
        reports.append(SutReport(sut_name, universe, summary, budgets.get(sut_name, {}),
                                 [s.strategy_id for s in cell_sets], matrix, unique))
    return reports


def write_report(report: SutReport, out_dir) -> tuple:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["strategy", "time_budget", "rpd_mean", "rpd_std", "rac_mean", "rac_std"])
    w.writerows(report.summary_rows())
    summary_path = out_dir / f"summary_{report.sut}.csv"
    _atomic_write(summary_path, buf.getvalue())

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["strategy", *report.strategies, "unique"])
    for s, row, u in zip(report.strategies, report.matrix, report.unique):
        w.writerow([s, *row, u])
    pairwise_path = out_dir / f"pairwise_{report.sut}.csv"
    _atomic_write(pairwise_path, buf.getvalue())

    text_path = out_dir / f"summary_{report.sut}.txt"
    _atomic_write(text_path, report.text_table() + "\n")
    return summary_path, pairwise_path, text_path

