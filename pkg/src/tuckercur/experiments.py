"""Test tensors and the four numerical experiments, emitted as CSV/SVG tables.

fig1
    Function tensors A and B, n = 7, d = 3..6, rank 1: HOID vs hybrid with
    fibers kept in the first mode.
fig2
    Tensor B, n = 30, d = 3 and 4, rank 2: hybrid keeping fibers in the first
    t modes, t = 0..d (t = 0 is T-HOSVD, t = d is HOID), plus a HOID row.
fig3
    Uniform random tensors, rank (k, ..., k) swept: HOID vs hybrid with
    fibers in the first mode.
fig4
    Uniform random square matrix, k = 1..20: truncated SVD, CX, column hybrid
    and CUR.
"""
import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from . import bounds, decomp
from .linalg import singular_values
from .rng import XorShift64Star
from .tensor_core import frobenius_norm

CSV_HEADER = ["experiment", "method", "d", "shape", "ranks", "fiber_modes", "seed",
              "rel_error", "bound_sq", "time_s"]
SCALES = ("desk", "full")


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    method: str
    d: int
    shape: tuple
    ranks: tuple
    fiber_modes: tuple  # 0-based
    seed: int | None
    rel_error: float
    bound_sq: float
    time_s: float | None = None

    @property
    def fiber_mode_count(self):
        return len(self.fiber_modes)


@dataclass
class ExperimentResult:
    experiment: str
    rows: list = field(default_factory=list)
    seed: int | None = None


def gen_tensor_A(d, n):
    """``A[i_1, ..., i_d] = 1 / (i_1 + ... + i_d)`` with 1-based indices."""
    idx = np.indices((n,) * d, dtype=np.float64) + 1.0
    return 1.0 / idx.sum(axis=0)


def gen_tensor_B(d, n):
    """``B[i_1, ..., i_d] = 1 / (1 i_1 + 2 i_2 + ... + d i_d)`` with 1-based indices."""
    idx = np.indices((n,) * d, dtype=np.float64) + 1.0
    weights = np.arange(1, d + 1, dtype=np.float64).reshape((d,) + (1,) * d)
    return 1.0 / (weights * idx).sum(axis=0)


def gen_random(shape, seed):
    """I.i.d. uniform [0, 1) entries from :class:`~tuckercur.rng.XorShift64Star`.

    The stream fills the tensor first-index-fastest, so a given
    ``(shape, seed)`` yields the same bytes everywhere.
    """
    shape = tuple(int(n) for n in shape)
    values = XorShift64Star(seed).uniform(int(np.prod(shape, dtype=np.int64)))
    return values.reshape(shape, order="F")


def _tensor_row(experiment, method, X, ranks, fiber_modes, seed=None):
    start = time.perf_counter()
    F = decomp.hybrid(X, ranks, fiber_modes)
    rep = decomp.error_report(X, F)
    elapsed = time.perf_counter() - start
    return ExperimentRow(experiment, method, X.ndim, X.shape, F.ranks, F.fiber_modes,
                         seed, rep.rel_error, rep.bound, elapsed)


def run_figure1():
    result = ExperimentResult("fig1")
    for name, gen in (("A", gen_tensor_A), ("B", gen_tensor_B)):
        for d in (3, 4, 5, 6):
            X = gen(d, 7)
            result.rows.append(_tensor_row(f"fig1-{name}", "hoid", X, 1, "all"))
            result.rows.append(_tensor_row(f"fig1-{name}", "hybrid", X, 1, (0,)))
    return result


def run_figure2(n=30):
    result = ExperimentResult("fig2")
    for d in (3, 4):
        X = gen_tensor_B(d, n)
        for t in range(d + 1):
            result.rows.append(_tensor_row("fig2-B", "hybrid", X, 2, tuple(range(t))))
        result.rows.append(_tensor_row("fig2-B", "hoid", X, 2, "all"))
    return result


def _check_scale(scale):
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}, got {scale!r}")


def run_figure3(seed=42, scale="desk"):
    _check_scale(scale)
    cases = {"desk": [((40,) * 3, range(1, 11)), ((5,) * 6, range(1, 6))],
             "full": [((100,) * 3, range(1, 11)), ((7,) * 6, range(1, 6))]}[scale]
    result = ExperimentResult("fig3", seed=seed)
    for shape, ks in cases:
        X = gen_random(shape, seed)
        for k in ks:
            result.rows.append(_tensor_row("fig3-random", "hoid", X, k, "all", seed))
            result.rows.append(_tensor_row("fig3-random", "hybrid", X, k, (0,), seed))
    return result


def _matrix_methods(A, k, sigma):
    """Methods of the matrix experiment with their squared-error bounds.

    ``sigma`` holds the singular values of ``A`` (already roundoff-thresholded),
    shared across ranks so the bounds cost no extra SVDs.
    """
    m, n = A.shape
    s_next = sigma[k] if k < sigma.size else 0.0
    floor_sq = float(np.sum(sigma[k:] ** 2))
    rows_term = bounds.p_factor(k, m) * (m - k) * s_next ** 2
    cols_term = bounds.p_factor(k, n) * (n - k) * s_next ** 2
    return [
        ("tsvd", (), lambda: decomp.matrix_tsvd(A, k), floor_sq),
        ("cx", (0,), lambda: decomp.matrix_cx(A, k), rows_term),
        ("hybrid", (0,), lambda: decomp.matrix_hybrid_cols(A, k)[3],
         rows_term + (n - k) * s_next ** 2),
        ("cur", (0, 1), lambda: decomp.matrix_cur(A, k), rows_term + cols_term),
    ]


def run_figure4(seed=42, scale="desk"):
    _check_scale(scale)
    size = {"desk": 400, "full": 2000}[scale]
    A = gen_random((size, size), seed)
    norm = frobenius_norm(A)
    sigma = singular_values(A)
    sigma = np.where(sigma <= max(A.shape) * np.finfo(np.float64).eps * sigma[0], 0.0, sigma)
    result = ExperimentResult("fig4", seed=seed)
    for k in range(1, 21):
        for method, modes, approx, bound in _matrix_methods(A, k, sigma):
            start = time.perf_counter()
            rel = frobenius_norm(A - approx()) / norm
            elapsed = time.perf_counter() - start
            result.rows.append(ExperimentRow("fig4-random", method, 2, A.shape, (k, k),
                                             modes, seed, rel, bound, elapsed))
    return result


def run_figure(which, seed=42, scale="desk"):
    if which == 1:
        return run_figure1()
    if which == 2:
        return run_figure2()
    if which == 3:
        return run_figure3(seed, scale)
    if which == 4:
        return run_figure4(seed, scale)
    raise ValueError(f"unknown figure {which!r}; expected 1..4")


def _join(values):
    return "x".join(str(v) for v in values)


def _fmt(x):
    return format(x, ".17g")


def to_csv(result, timings=False):
    """Render ``result`` as CSV text.

    Wall times are left blank unless ``timings`` is set, so that reruns with
    the same parameters are byte-identical.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in result.rows:
        w.writerow([r.experiment, r.method, r.d, _join(r.shape), _join(r.ranks),
                    "+".join(str(m + 1) for m in r.fiber_modes),
                    "" if r.seed is None else r.seed, _fmt(r.rel_error), _fmt(r.bound_sq),
                    _fmt(r.time_s) if timings and r.time_s is not None else ""])
    return buf.getvalue()


def from_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        rows.append(ExperimentRow(
            experiment=rec["experiment"], method=rec["method"], d=int(rec["d"]),
            shape=tuple(int(v) for v in rec["shape"].split("x")),
            ranks=tuple(int(v) for v in rec["ranks"].split("x")),
            fiber_modes=tuple(int(v) - 1 for v in rec["fiber_modes"].split("+") if v),
            seed=int(rec["seed"]) if rec["seed"] else None,
            rel_error=float(rec["rel_error"]), bound_sq=float(rec["bound_sq"]),
            time_s=float(rec["time_s"]) if rec["time_s"] else None))
    experiment = rows[0].experiment.split("-")[0] if rows else ""
    return ExperimentResult(experiment, rows, rows[0].seed if rows else None)


def _series(result):
    """Group rows into ``{panel: {label: [(x, rel_error), ...]}}`` for plotting."""
    panels = {}
    for r in result.rows:
        if result.experiment == "fig1":
            panel, label, x = r.experiment, r.method, r.d
        elif result.experiment == "fig2":
            panel, x = f"d={r.d}", r.fiber_mode_count
            label = r.method
        else:
            panel, label, x = f"d={r.d}", r.method, r.ranks[0]
        panels.setdefault(panel, {}).setdefault(label, []).append((x, r.rel_error))
    return panels


def write_svg(result, path):
    """Line chart of relative error per method, log-scale y, one panel per group."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    panels = _series(result)
    xlabel = {"fig1": "tensor order d", "fig2": "modes with preserved fibers t"}.get(
        result.experiment, "rank k")
    fig, axes = plt.subplots(1, len(panels), figsize=(5 * len(panels), 4), squeeze=False)
    for ax, (panel, series) in zip(axes[0], panels.items()):
        for label, pts in series.items():
            xs, ys = zip(*pts)
            ax.plot(xs, ys, marker="o", label=label)
        ax.set_yscale("log")
        ax.set_title(panel)
        ax.set_xlabel(xlabel)
        ax.set_ylabel("relative error")
        ax.legend()
    fig.tight_layout()
    plt.rcParams["svg.hashsalt"] = "tuckercur"
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
