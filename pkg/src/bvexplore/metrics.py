"""Quality (relative PD) and diversity (relative coverage) of search results.

Both metrics are relative to a *universe* pooled from every run handed to
:func:`build_universe`: the best PD seen per cell, and the set of cells
holding at least one candidate above the boundariness threshold.
"""
from __future__ import annotations

import csv
import math
import re
import statistics
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .derivative import OutputDistance, evaluate_pair, make_candidate
from .errors import EmptyInput, EmptyUniverse, EvaluationMismatch, SchemaError, UnknownCell
from .suts import ExecutionOutcome, SutSpec

TOP_FRACTION = 0.01


class Scored(NamedTuple):
    cell: tuple
    pd: float


@dataclass
class RunSet:
    """Candidates produced by one run (or one imported file) of a strategy."""

    strategy: str
    run: int
    items: list


@dataclass
class CandidateUniverse:
    cell_best_pd: dict
    feasible_cells: set
    threshold_pd: float

    def passes(self, item) -> bool:
        return item.pd >= 1.0 or item.pd >= self.threshold_pd


@dataclass
class StrategyCellSet:
    strategy_id: str
    cells: set


def boundariness_filter(candidates) -> tuple:
    """Keep PD==1 candidates plus the top 1% (ceiling, ties included) of the rest.

    Returns ``(threshold_pd, kept)``; kept preserves input order.
    """
    candidates = list(candidates)
    if not candidates:
        raise EmptyInput("no candidates to filter")
    rest = sorted((c.pd for c in candidates if c.pd < 1.0), reverse=True)
    if not rest:
        return 1.0, candidates
    cutoff = rest[math.ceil(TOP_FRACTION * len(rest)) - 1]
    return cutoff, [c for c in candidates if c.pd >= 1.0 or c.pd >= cutoff]


def build_universe(runs) -> CandidateUniverse:
    items = [it for r in runs for it in r.items]
    if not items:
        raise EmptyInput("no candidates in any run")
    threshold, kept = boundariness_filter(items)
    best = {}
    for it in items:
        if it.pd > best.get(it.cell, 0.0):
            best[it.cell] = it.pd
    return CandidateUniverse(best, {it.cell for it in kept}, threshold)


def filtered(items, universe: CandidateUniverse) -> list:
    return [it for it in items if universe.passes(it)]


def rpd(item, universe: CandidateUniverse) -> float:
    try:
        best = universe.cell_best_pd[item.cell]
    except KeyError:
        raise UnknownCell(f"cell {tuple(item.cell)} not in universe") from None
    return item.pd / best


def rac(run_cells, universe: CandidateUniverse) -> float:
    if not universe.feasible_cells:
        raise EmptyUniverse("universe has no feasible cells")
    return 100.0 * len(set(run_cells) & universe.feasible_cells) / len(universe.feasible_cells)


def run_cells(items, universe: CandidateUniverse) -> set:
    return {it.cell for it in items if universe.passes(it)}


def run_rpd_summary(items, universe: CandidateUniverse) -> tuple:
    """Mean and population std of RPD over a run's filtered candidates."""
    values = [rpd(it, universe) for it in items]
    if not values:
        raise EmptyInput("run has no filtered candidates")
    return statistics.fmean(values), statistics.pstdev(values)


def _mean_std(values) -> tuple:
    return statistics.fmean(values), statistics.pstdev(values)


def strategy_summary(runs, universe: CandidateUniverse) -> dict:
    """Per strategy: mean/std across runs of per-run RPD and RAC.

    A run without filtered candidates scores RPD 0.
    """
    per = {}
    for r in runs:
        kept = filtered(r.items, universe)
        score = run_rpd_summary(kept, universe)[0] if kept else 0.0
        cover = rac(run_cells(r.items, universe), universe)
        per.setdefault(r.strategy, []).append((score, cover))
    out = {}
    for strategy, rows in per.items():
        rm, rs = _mean_std([x for x, _ in rows])
        cm, cs = _mean_std([y for _, y in rows])
        out[strategy] = {"runs": len(rows), "rpd_mean": rm, "rpd_std": rs,
                         "rac_mean": cm, "rac_std": cs}
    return out


def strategy_cell_sets(runs, universe: CandidateUniverse) -> list:
    cells = {}
    for r in runs:
        cells.setdefault(r.strategy, set()).update(run_cells(r.items, universe))
    return [StrategyCellSet(s, c) for s, c in cells.items()]


def pairwise_unique(cell_sets) -> tuple:
    """``M[r][c] = |cells_r - cells_c|`` and cells found by nobody else."""
    sets = [s.cells for s in cell_sets]
    matrix = [[0 if r == c else len(sets[r] - sets[c]) for c in range(len(sets))]
              for r in range(len(sets))]
    unique = []
    for r, mine in enumerate(sets):
        others = set().union(*(s for k, s in enumerate(sets) if k != r))
        unique.append(len(mine - others))
    return matrix, unique


# ---------------------------------------------------------------------------
# external candidate sets

IMPORT_COLUMNS = ("input_a", "input_b", "output_a", "output_b")
_INT = re.compile(r"-?\d+")
_EXCEPTION = re.compile(r"^([A-Za-z_]\w*(?:Error|Exception))(?:\((.*)\))?$", re.S)


def parse_outcome(text: str) -> ExecutionOutcome:
    """Recorded output text to an outcome; ``Kind("msg")`` marks an exception."""
    text = text.strip()
    m = _EXCEPTION.match(text)
    if not m:
        return ExecutionOutcome.ok(text)
    message = (m.group(2) or "").strip()
    if len(message) >= 2 and message[0] == message[-1] == '"':
        message = message[1:-1]
    return ExecutionOutcome.error(m.group(1), message)


def import_external(csv_path, sut: SutSpec, reevaluate: bool = False,
                    distance: OutputDistance = OutputDistance.JACCARD_2GRAM) -> list:
    """Load boundary candidates produced by another tool.

    Columns: ``input_a, input_b`` (argument lists such as ``"(-79, -9)"``)
    and ``output_a, output_b`` (value text, or ``Kind("message")``).
    """
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        missing = [c for c in IMPORT_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"missing columns {missing}", line=1)
        out = []
        for row in reader:
            line = reader.line_num
            try:
                a = tuple(int(x) for x in _INT.findall(row["input_a"] or ""))
                b = tuple(int(x) for x in _INT.findall(row["input_b"] or ""))
            except TypeError:
                raise SchemaError("short row", line=line) from None
            if len(a) != sut.arity or len(b) != sut.arity:
                raise SchemaError(f"{sut.name} takes {sut.arity} arguments", line=line)
            if a == b:
                raise SchemaError("identical inputs", line=line)
            oa, ob = parse_outcome(row["output_a"] or ""), parse_outcome(row["output_b"] or "")
            if reevaluate:
                c = evaluate_pair(sut, a, b, distance)
                for recorded, actual in ((oa, c.outcome_a), (ob, c.outcome_b)):
                    if not _same_output(recorded, actual):
                        warnings.warn(
                            f"line {line}: recorded {recorded.render()!r}, got {actual.render()!r}",
                            EvaluationMismatch, stacklevel=2)
            else:
                c = make_candidate(a, b, oa, ob, distance)
            out.append(c)
    return out


def _same_output(recorded: ExecutionOutcome, actual: ExecutionOutcome) -> bool:
    if recorded.is_exception or actual.is_exception:
        # messages are often abbreviated in exported data
        return recorded.kind == actual.kind
    return recorded.value == actual.value

