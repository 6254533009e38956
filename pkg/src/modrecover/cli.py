"""Command-line interface: ``modrecover <command> [options]``.

Commands
--------
generate   draw noisy modulo samples of a catalogue function
denoise    LP or kNN denoising of a samples CSV (column ``y``)
unwrap     sequential unwrapping of a phases CSV (column ``phase``)
recover    quasi-interpolate an unwrapped CSV (column ``unwrapped``)
pipeline   all stages plus error metrics for one run
sweep      denoisers x n x seeds table and its mean/std summary
bounds     theoretical constants, bandwidths and error bound
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .experiments import (ExperimentSpec, PipelineError, noise_seed, read_csv_columns, run_pipeline,
                          run_sweep, summarize, write_columns_csv, write_rows_csv, write_summary_csv)
from .knn_denoiser import KnnConfig, knn_denoise
from .lp_denoiser import LpConfig, denoise, practical_bandwidth
from .metrics import TheoryConstants, theoretical_bandwidth, theoretical_delta
from .quasi_interpolant import build_qi
from .signal_model import ModuloSamples, NoiseModel, UniformGrid, parse_function, sample_modulo
from .unwrap import check_unwrap_feasibility, unwrap


def _shared(multi=False):
    p = argparse.ArgumentParser(add_help=False)
    nargs = "+" if multi else None
    p.add_argument("--config", help="JSON file with ExperimentSpec fields; flags override it")
    p.add_argument("--fn", dest="function_id", help="function id, e.g. paper_fn, constant:0.25, poly:1,0,-2")
    p.add_argument("--sigma", type=float)
    p.add_argument("--n", type=int, nargs=nargs)
    p.add_argument("--seed", type=int, nargs=nargs)
    p.add_argument("--denoiser", choices=["lp", "knn"], nargs=nargs)
    p.add_argument("--l", type=int, help="local polynomial order")
    p.add_argument("--beta", type=float, help="smoothness index in the bandwidth rule")
    p.add_argument("--bandwidth-const", type=float, help="constant of the bandwidth rule (default 0.1)")
    p.add_argument("--bandwidth", type=float, help="explicit bandwidth, bypassing the rule")
    p.add_argument("--kernel", choices=["epanechnikov", "box", "triangular"])
    p.add_argument("--k", type=int, help="kNN neighbours")
    p.add_argument("--k-auto", action="store_true", help="kNN neighbours from the n^(2/3) rule")
    p.add_argument("--qi-degree", type=int)
    p.add_argument("--out", help="output file or directory")
    return p


def _spec_from_args(args) -> ExperimentSpec:
    spec = ExperimentSpec.from_json(args.config) if getattr(args, "config", None) else ExperimentSpec()
    if args.function_id is not None:
        spec.function_id = args.function_id
    if args.sigma is not None:
        spec.sigma = args.sigma
    if args.n is not None:
        spec.n_list = list(np.atleast_1d(args.n).tolist())
    if args.seed is not None:
        spec.seeds = list(np.atleast_1d(args.seed).tolist())
    if args.denoiser is not None:
        spec.denoisers = list(np.atleast_1d(args.denoiser).tolist())
    for flag, key in (("l", "l"), ("beta", "beta"), ("bandwidth_const", "bandwidth_const"),
                      ("bandwidth", "bandwidth"), ("kernel", "kernel")):
        val = getattr(args, flag)
        if val is not None:
            spec.lp[key] = val
    if args.k_auto:
        spec.knn["k"] = None
    elif args.k is not None:
        spec.knn["k"] = args.k
    if args.qi_degree is not None:
        spec.qi_degree = args.qi_degree
    if args.out is not None:
        spec.output_dir = args.out
    return spec


def _single(spec):
    return spec.n_list[0], spec.seeds[0], spec.denoisers[0]


def _emit(text, out):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args):
    spec = _spec_from_args(args)
    n, seed, _ = _single(spec)
    f = parse_function(spec.function_id)
    grid = UniformGrid(n)
    nseed = noise_seed(seed, n)
    samples = sample_modulo(f, grid, NoiseModel(spec.sigma, nseed))
    meta = {"generator": f"modrecover {__version__}", "function": spec.function_id,
            "sigma": spec.sigma, "seed": seed, "noise_seed": nseed}
    _emit(write_columns_csv(None, {"x": grid.points, "y": samples.values, "truth": f(grid.points)}, meta), args.out)


def cmd_denoise(args):
    spec = _spec_from_args(args)
    y = read_csv_columns(args.input)["y"]
    samples = ModuloSamples(UniformGrid(y.size), y)
    denoiser = spec.denoisers[0]
    if denoiser == "lp":
        lp = spec.lp
        b = lp.get("bandwidth") or practical_bandwidth(y.size, lp["beta"], lp["bandwidth_const"])
        result = denoise(samples, LpConfig(int(lp["l"]), b, lp["kernel"]))
        meta = {"denoiser": "lp", "bandwidth": b, "l": int(lp["l"]), "kernel": lp["kernel"]}
    else:
        k = spec.knn.get("k")
        cfg = KnnConfig(k=k, auto_rule=k is None)
        result = knn_denoise(samples, cfg)
        meta = {"denoiser": "knn", "k": cfg.resolve(y.size)}
    cols = {"x": samples.grid.points, "y": y, "raw_re": result.raw_estimates.real,
            "raw_im": result.raw_estimates.imag, "phase": result.phases}
    _emit(write_columns_csv(None, cols, meta), args.out)


def cmd_unwrap(args):
    g = read_csv_columns(args.input)["phase"]
    u = unwrap(g)
    _emit(write_columns_csv(None, {"x": u.grid.points, "phase": g, "unwrapped": u.values}), args.out)


def cmd_recover(args):
    spec = _spec_from_args(args)
    vals = read_csv_columns(args.input)["unwrapped"]
    degree = spec.order if spec.qi_degree is None else spec.qi_degree
    x, fx = build_qi(vals, degree).table(args.resolution)
    _emit(write_columns_csv(None, {"x": x, "f_hat": fx}, {"qi_degree": degree}), args.out)


def cmd_pipeline(args):
    spec = _spec_from_args(args)
    n, seed, denoiser = _single(spec)
    run = run_pipeline(spec.function_id, spec.sigma, n, seed, denoiser, spec.lp, spec.knn, spec.qi_degree)
    print(json.dumps({k: v for k, v in run.row.items()}, sort_keys=True))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_rows_csv(out / "result.csv", [run.row], spec, timing=True)
        write_columns_csv(out / "plot_data.csv", run.plot_table(), {"function": spec.function_id})
        x, fx = run.recovered.table(args.resolution)
        f = parse_function(spec.function_id)
        q = run.row["shift_q"]
        write_columns_csv(out / "recovered.csv",
                          {"x": x, "f_hat": fx, "f_hat_aligned": fx + q, "truth": f(x)},
                          {"shift_q": q})


def cmd_sweep(args):
    spec = _spec_from_args(args)
    rows = run_sweep(spec, workers=args.workers)
    summary = summarize(rows)
    if spec.output_dir:
        out = Path(spec.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_rows_csv(out / "results.csv", rows, spec, timing=args.timing)
        write_summary_csv(out / "summary.csv", summary, spec)
    else:
        sys.stdout.write(write_summary_csv(None, summary, spec))
    failed = sum(1 for r in rows if r["error"])
    if failed:
        print(f"{failed} of {len(rows)} runs failed", file=sys.stderr)


def cmd_bounds(args):
    if args.config:
        consts = TheoryConstants.from_json(args.config)
    else:
        consts = TheoryConstants()
    overrides = {k: getattr(args, k) for k in ("sigma", "c", "m_prime", "k_max", "lambda0", "l", "beta")
                 if getattr(args, k) is not None}
    consts = TheoryConstants(**{**consts.to_dict(), **overrides})
    n = args.n
    delta = theoretical_delta(consts, n)
    f = parse_function(args.function_id or "paper_fn")
    report = {
        "constants": consts.to_dict(),
        "n": n,
        "A_sigma": consts.a_sigma,
        "C_star": consts.c_star,
        "q1": consts.q1,
        "q2": consts.q2,
        "b_star": theoretical_bandwidth(consts, n),
        "b_practical": practical_bandwidth(n, consts.beta, args.bandwidth_const),
        "delta_n": delta,
        "wrap_bound": delta / 4,
        "unwrap_feasible": check_unwrap_feasibility(delta, f.smoothness, n),
    }
    print(json.dumps(report, indent=2, sort_keys=True))


def build_parser():
    parser = argparse.ArgumentParser(prog="modrecover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"modrecover {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    single = _shared()

    p = sub.add_parser("generate", parents=[single], help="draw noisy modulo samples")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("denoise", parents=[single], help="denoise a samples CSV")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("unwrap", help="unwrap a phases CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_unwrap)

    p = sub.add_parser("recover", parents=[single], help="quasi-interpolate unwrapped samples")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--resolution", type=int, default=1001)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("pipeline", parents=[single], help="run every stage once")
    p.add_argument("--resolution", type=int, default=1001)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("sweep", parents=[_shared(multi=True)], help="parameter sweep")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include runtime_ms (breaks byte-identical output)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="theoretical constants and bounds")
    p.add_argument("--config", help="JSON file with TheoryConstants fields")
    p.add_argument("--fn", dest="function_id")
    p.add_argument("--n", type=int, default=600)
    p.add_argument("--sigma", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--m-prime", type=float)
    p.add_argument("--k-max", type=float)
    p.add_argument("--lambda0", type=float)
    p.add_argument("--l", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--bandwidth-const", type=float, default=0.1)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
