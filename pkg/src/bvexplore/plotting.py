"""SVG scatter plots of boundary candidates in a 2-D slice of input space."""
from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import ArityUnsupported
from .suts import get_sut

MARGIN = 0.05
# date arguments are (day, month, year); the year is left out of the picture
DEFAULT_PROJECTIONS = {"date": (0, 1)}


def default_projection(sut_name: str) -> tuple:
    return DEFAULT_PROJECTIONS.get(sut_name, (0, 1))


def output_class(text: str, kind: str, categorical: bool) -> str:
    """Colour key of one endpoint: the exception kind, or the class label.

    Free-form outputs are not enumerable, so they collapse to ``valid``.
    """
    if kind:
        return kind
    return text if categorical else "valid"


def endpoints(rows, projection: tuple, categorical: bool) -> list:
    """``(x, y, class)`` for both points of each row."""
    i, j = projection
    pts = []
    for r in rows:
        for point, text, kind in ((r["a"], r["output_a"], r["exception_kind_a"]),
                                  (r["b"], r["output_b"], r["exception_kind_b"])):
            pts.append((point[i], point[j], output_class(text, kind, categorical)))
    return pts


def axis_limits(values, margin: float = MARGIN) -> tuple:
    lo, hi = min(values), max(values)
    pad = (hi - lo) * margin or max(1.0, abs(lo) * margin)
    return lo - pad, hi + pad


def scatter_svg(points, path, title: str, labels=("x", "y"), limits: Optional[tuple] = None,
                margin: float = MARGIN) -> Path:
    """Write an SVG scatter; colours follow the sorted class names."""
    classes = sorted({c for _, _, c in points})
    cmap = plt.get_cmap("tab10" if len(classes) <= 10 else "tab20")
    fig, ax = plt.subplots(figsize=(6, 5))
    for k, cls in enumerate(classes):
        xs = [float(x) for x, _, c in points if c == cls]
        ys = [float(y) for _, y, c in points if c == cls]
        ax.scatter(xs, ys, s=8, color=cmap(k % cmap.N), label=cls)
    if points:
        if limits is None:
            limits = (axis_limits([float(p[0]) for p in points], margin),
                      axis_limits([float(p[1]) for p in points], margin))
        ax.set_xlim(*limits[0])
        ax.set_ylim(*limits[1])
        ax.legend(fontsize="small", markerscale=2)
    ax.set_xlabel(labels[0])
    ax.set_ylabel(labels[1])
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # fixed metadata and id salt keep the file byte-stable between runs
    with matplotlib.rc_context({"svg.hashsalt": "bvexplore"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_record(record, out_dir, projection: Optional[tuple] = None,
                limits: Optional[tuple] = None, margin: float = MARGIN) -> list:
    """Before/after SVGs for one run record; "after" adds the trace populations.

    Returns the written paths.  Records without tracing yield only "before".
    """
    sut = get_sut(record.sut)
    if sut.arity < 2:
        raise ArityUnsupported(f"{sut.name} has arity {sut.arity}; plots need two arguments")
    projection = projection or default_projection(sut.name)
    if max(projection) >= sut.arity or min(projection) < 0:
        raise ArityUnsupported(f"projection {projection} out of range for arity {sut.arity}")
    cat = sut.categorical
    labels = tuple(f"arg {k}" for k in projection)
    before = endpoints(record.archive_rows, projection, cat)
    from .runner import record_stem  # local import: runner pulls in the whole search stack
    stem = record_stem(record)
    out_dir = Path(out_dir)
    written = [scatter_svg(before, out_dir / f"{stem}_before.svg", f"{stem}: archive",
                           labels, limits, margin)]
    members = [m for p in record.trace_populations for m in p["members"]]
    if members:
        after = before + endpoints(members, projection, cat)
        written.append(scatter_svg(after, out_dir / f"{stem}_after.svg",
                                   f"{stem}: archive + tracing", labels, limits, margin))
    return written
