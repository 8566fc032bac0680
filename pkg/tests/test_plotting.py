import pytest

from bvexplore import runner
from bvexplore.errors import ArityUnsupported
from bvexplore.plotting import axis_limits, default_projection, endpoints, plot_record
from bvexplore.runner import StrategyConfig


def one_run(**kw):
    base = dict(sut="circle", strategy="SET", budget=4000, seed=2)
    base.update(kw)
    [rec] = runner.run(StrategyConfig(**base))
    return rec


def test_before_and_after(tmp_path):
    rec = one_run()
    before, after = plot_record(rec, tmp_path)
    assert before.name.endswith("_before.svg") and after.name.endswith("_after.svg")
    assert before.read_text().lstrip().startswith("<?xml")
    assert [m for p in rec.trace_populations for m in p["members"]]
    # every drawn marker is a <use> element
    assert after.read_text().count("<use") > before.read_text().count("<use")


def test_no_tracing_omits_after(tmp_path):
    rec = one_run(strategy="SE")
    written = plot_record(rec, tmp_path)
    assert len(written) == 1


def test_arity_one_rejected(tmp_path):
    rec = one_run(sut="bytecount", strategy="S")
    with pytest.raises(ArityUnsupported):
        plot_record(rec, tmp_path)


def test_date_projection_is_day_month():
    assert default_projection("date") == (0, 1)
    rows = [{"a": [31, 12, -100], "b": [32, 12, -99], "output_a": "-0100-12-31",
             "output_b": 'ArgumentError("x")', "exception_kind_a": "", "exception_kind_b": "ArgumentError"}]
    pts = endpoints(rows, default_projection("date"), False)
    assert pts == [(31, 12, "valid"), (32, 12, "ArgumentError")]


def test_axis_margin():
    assert axis_limits([0, 100]) == (-5.0, 105.0)
    assert axis_limits([0, 100], 0.1) == (-10.0, 110.0)
    lo, hi = axis_limits([7, 7])
    assert lo < 7 < hi


def test_plots_are_stable(tmp_path):
    rec = one_run()
    a = plot_record(rec, tmp_path / "a")
    b = plot_record(rec, tmp_path / "b")
    assert [p.read_bytes() for p in a] == [p.read_bytes() for p in b]
