"""Pipeline runs, parameter sweeps and their CSV artifacts."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .errors import IllConditioned, InsufficientSamples
from .knn_denoiser import KnnConfig, knn_denoise
from .lp_denoiser import LpConfig, denoise, practical_bandwidth
from .metrics import aligned_error, wrap_max, wrap_rmse
from .quasi_interpolant import build_qi
from .signal_model import NoiseModel, UniformGrid, frac, parse_function, sample_modulo
from .unwrap import unwrap

__all__ = [
    "ExperimentSpec",
    "PipelineError",
    "PipelineRun",
    "ROW_FIELDS",
    "noise_seed",
    "run_pipeline",
    "run_sweep",
    "summarize",
    "write_rows_csv",
    "write_summary_csv",
    "write_columns_csv",
    "read_csv_columns",
]

DENOISERS = ("lp", "knn")

ROW_FIELDS = ["denoiser", "n", "seed", "noise_seed", "wrap_rmse", "wrap_max", "aligned_rmse",
              "aligned_max", "shift_q", "bandwidth_or_k", "runtime_ms", "error"]
SUMMARY_STATS = ["wrap_rmse", "wrap_max", "aligned_rmse", "aligned_max"]


class PipelineError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it and ``__cause__`` holds the original error."""

    def __init__(self, stage, cause):
        self.stage = stage
        super().__init__(f"{stage} stage failed: {cause}")


@dataclass
class ExperimentSpec:
    """Declarative description of a sweep; JSON configs mirror these fields."""

    function_id: str = "paper_fn"
    sigma: float = 0.12
    n_list: list = field(default_factory=lambda: [150, 300, 600, 1200])
    seeds: list = field(default_factory=lambda: [0, 1, 2, 3, 4])
    denoisers: list = field(default_factory=lambda: ["lp", "knn"])
    lp: dict = field(default_factory=lambda: {"l": 2, "beta": 2.4, "bandwidth_const": 0.1,
                                              "kernel": "epanechnikov", "bandwidth": None})
    knn: dict = field(default_factory=lambda: {"k": None})
    qi_degree: int | None = None
    output_dir: str | None = None

    def __post_init__(self):
        self.n_list = [int(n) for n in self.n_list]
        self.seeds = [int(s) for s in self.seeds]
        self.denoisers = list(self.denoisers)
        self.lp = {"l": 2, "beta": 2.4, "bandwidth_const": 0.1, "kernel": "epanechnikov",
                   "bandwidth": None, **(self.lp or {})}
        self.knn = {"k": None, **(self.knn or {})}

    @property
    def order(self) -> int:
        return int(self.lp["l"])

    def validate(self):
        if not self.denoisers:
            raise ValueError("at least one denoiser is required")
        bad = set(self.denoisers) - set(DENOISERS)
        if bad:
            raise ValueError(f"unknown denoisers {sorted(bad)}; choose from {DENOISERS}")
        if not self.n_list:
            raise ValueError("n_list must be nonempty")
        if not self.seeds:
            raise ValueError("seeds must be nonempty")
        floor = 8 * (self.order + 1)
        small = [n for n in self.n_list if n < floor]
        if small:
            raise ValueError(f"every n must be >= 8(l+1) = {floor}; got {small}")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        parse_function(self.function_id)
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "ExperimentSpec":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return asdict(self)


def noise_seed(seed: int, n: int) -> int:
    """Independent 64-bit noise seed for one ``(seed, n)`` cell of a sweep.

    Denoisers sharing a cell see the same noise, so their rows are paired.
    """
    state = np.random.SeedSequence([int(seed), int(n)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


@dataclass
class PipelineRun:
    row: dict
    x: np.ndarray
    truth: np.ndarray
    samples: np.ndarray
    phases: np.ndarray
    unwrapped: np.ndarray
    recovered: object

    def plot_table(self):
        """Columns for a truth-vs-recovery plot; estimates are shifted by ``shift_q``."""
        q = self.row["shift_q"]
        return {
            "x": self.x,
            "truth": self.truth,
            "sample": self.samples,
            "phase": self.phases,
            "unwrapped_aligned": self.unwrapped + q,
            "recovered_aligned": np.asarray(self.recovered(self.x)) + q,
        }


def _denoise_stage(samples, denoiser, lp, knn):
    n = samples.grid.n
    if denoiser == "lp":
        b = lp.get("bandwidth") or practical_bandwidth(n, lp.get("beta", 2.4), lp.get("bandwidth_const", 0.1))
        cfg = LpConfig(int(lp.get("l", 2)), b, lp.get("kernel", "epanechnikov"),
                       lp.get("min_eig_threshold", 1e-8))
        return denoise(samples, cfg), b
    if denoiser == "knn":
        k = knn.get("k")
        cfg = KnnConfig(k=k, auto_rule=k is None)
        return knn_denoise(samples, cfg), cfg.resolve(n)
    raise ValueError(f"unknown denoiser {denoiser!r}")


def run_pipeline(function_id="paper_fn", sigma=0.12, n=600, seed=0, denoiser="lp",
                 lp=None, knn=None, qi_degree=None, derive_seed=True) -> PipelineRun:
    """Sample, denoise, unwrap and quasi-interpolate one noisy modulo signal.

    Wrap metrics compare denoised phases with ``f(x_i) mod 1``; aligned
    metrics compare the unwrapped samples with ``f(x_i)`` after the best
    integer shift.

    Raises
    ------
    PipelineError
        Wrapping ``IllConditioned`` or ``InsufficientSamples`` with the stage
        that failed.
    """
    lp = {"l": 2, **(lp or {})}
    knn = knn or {}
    f = parse_function(function_id)
    grid = UniformGrid(n)
    nseed = noise_seed(seed, n) if derive_seed else int(seed)
    start = time.perf_counter()
    samples = sample_modulo(f, grid, NoiseModel(sigma, nseed))
    try:
        denoised, param = _denoise_stage(samples, denoiser, lp, knn)
    except (IllConditioned, ValueError) as exc:
        raise PipelineError("denoise", exc) from exc
    unwrapped = unwrap(denoised.phases, grid)
    degree = int(lp["l"]) if qi_degree is None else int(qi_degree)
    try:
        recovered = build_qi(unwrapped, degree)
    except InsufficientSamples as exc:
        raise PipelineError("recover", exc) from exc
    runtime_ms = (time.perf_counter() - start) * 1e3

    truth = f(grid.points)
    rmse, amax, q = aligned_error(unwrapped.values, truth)
    row = {
        "denoiser": denoiser, "n": n, "seed": seed, "noise_seed": nseed,
        "wrap_rmse": wrap_rmse(denoised.phases, frac(truth)),
        "wrap_max": wrap_max(denoised.phases, frac(truth)),
        "aligned_rmse": rmse, "aligned_max": amax, "shift_q": q,
        "bandwidth_or_k": float(param), "runtime_ms": runtime_ms, "error": "",
    }
    return PipelineRun(row, grid.points, truth, samples.values, denoised.phases, unwrapped.values, recovered)


def _sweep_cell(args):
    spec, denoiser, n, seed = args
    try:
        return run_pipeline(spec.function_id, spec.sigma, n, seed, denoiser, spec.lp, spec.knn, spec.qi_degree).row
    except PipelineError as exc:
        nan = float("nan")
        return {"denoiser": denoiser, "n": n, "seed": seed, "noise_seed": noise_seed(seed, n),
                "wrap_rmse": nan, "wrap_max": nan, "aligned_rmse": nan, "aligned_max": nan,
                "shift_q": 0, "bandwidth_or_k": nan, "runtime_ms": nan, "error": f"{exc.stage}:{exc.__cause__}"}


def run_sweep(spec: ExperimentSpec, workers: int = 1) -> list[dict]:
    """All ``denoisers x n_list x seeds`` runs, sorted by (denoiser, n, seed).

    Failed cells are kept as rows with a nonempty ``error`` tag.
    """
    spec.validate()
    cells = [(spec, d, n, s) for d in spec.denoisers for n in spec.n_list for s in spec.seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    order = {d: i for i, d in enumerate(DENOISERS)}
    rows.sort(key=lambda r: (order[r["denoiser"]], r["n"], r["seed"]))
    return rows


def summarize(rows) -> list[dict]:
    """Mean and sample standard deviation per (denoiser, n) over successful rows.

    A single successful row reports a standard deviation of 0.
    """
    groups = {}
    for r in rows:
        groups.setdefault((r["denoiser"], r["n"]), []).append(r)
    out = []
    for (den, n), members in groups.items():
        ok = [r for r in members if not r["error"]]
        entry = {"denoiser": den, "n": n, "runs": len(members), "failed": len(members) - len(ok)}
        for key in SUMMARY_STATS:
            vals = np.array([r[key] for r in ok], dtype=float)
            entry[f"{key}_mean"] = float(vals.mean()) if vals.size else float("nan")
            entry[f"{key}_std"] = float(vals.std(ddof=1)) if vals.size > 1 else (0.0 if vals.size else float("nan"))
        out.append(entry)
    return out


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.10g}"
    if isinstance(v, np.floating):
        return _fmt(float(v))
    return str(v)


def _metadata_lines(meta):
    return [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]


def _write_table(path, header, rows, meta=None):
    buf = io.StringIO()
    for line in _metadata_lines(meta or {}):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r[h]) for h in header])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def _sweep_meta(spec):
    return {"generator": f"modrecover {__version__}", "rng": "numpy PCG64 via SeedSequence([seed, n])",
            "seeds": spec.seeds,
            "spec": {k: v for k, v in spec.to_dict().items() if k != "output_dir"}}


def write_rows_csv(path, rows, spec: ExperimentSpec | None = None, timing: bool = False) -> str:
    """Row table with a ``#`` metadata header; returns the CSV text.

    ``runtime_ms`` is left out unless ``timing`` is set, so identical specs
    give byte-identical files.
    """
    header = [h for h in ROW_FIELDS if timing or h != "runtime_ms"]
    return _write_table(path, header, rows, _sweep_meta(spec) if spec else None)


def write_summary_csv(path, summary, spec: ExperimentSpec | None = None) -> str:
    header = ["denoiser", "n", "runs", "failed"] + [f"{k}_{s}" for k in SUMMARY_STATS for s in ("mean", "std")]
    return _write_table(path, header, summary, _sweep_meta(spec) if spec else None)


def write_columns_csv(path, columns: dict, meta=None) -> str:
    names = list(columns)
    rows = [dict(zip(names, vals)) for vals in zip(*(np.asarray(columns[k]).tolist() for k in names))]
    return _write_table(path, names, rows, meta)


def read_csv_columns(path) -> dict:
    """Read a CSV written by this package (``#`` lines skipped) into float arrays."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    cols = {name: [] for name in reader.fieldnames or []}
    for rec in reader:
        for k, v in rec.items():
            cols[k].append(v)
    out = {}
    for k, v in cols.items():
        try:
            out[k] = np.array(v, dtype=float)
        except ValueError:
            out[k] = np.array(v)
    return out
