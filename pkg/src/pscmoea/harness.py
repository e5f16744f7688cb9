"""Experiment harness: run matrices, persistence, aggregation, CLI.

Each (problem, variant, seed) cell gets its own directory with a CSV trace
(one row per evaluation), a deterministic JSON summary and a non-contract
meta file holding wall time.  Completed cells are skipped on rerun; per-cell
RNG streams derive from hashing the cell key so matrix shape never perturbs
results.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import metrics
from .optimizer import VARIANTS, OptimizerConfig, RunResult, run
from .problems import get_problem, load_reference_front, problem_names
from .subea import SubEAConfig

SCHEMA_VERSION = 1


@dataclass
class ExperimentConfig:
    problems: list[str]
    variants: list[str]
    seeds: list[int]
    budget: int = 500
    dim: int = 10
    out_dir: str = "runs"
    n_init: int | None = None
    subea_pop: int = 100
    subea_gen: int = 100
    workers: int = 1

    def __post_init__(self):
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")
        for v in self.variants:
            if v not in VARIANTS:
                raise ValueError(f"unknown variant {v!r}")
        for p in self.problems:
            get_problem(p, self.dim)  # resolvable check


def cell_rng_seed(problem: str, variant: str, seed: int) -> int:
    digest = hashlib.sha256(f"{problem}|{variant}|{seed}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


def cell_dir(out_dir: str | Path, problem: str, variant: str, seed: int) -> Path:
    return Path(out_dir) / f"{problem.lower()}__{variant}__s{seed}"


def _cell_complete(d: Path) -> bool:
    return (d / "trace.csv").exists() and (d / "summary.json").exists()


def _fmt(v: float) -> str:
    return repr(float(v))


def write_trace(path: Path, result: RunResult, dim: int, m: int, p: int):
    by_index = {it.eval_index: it for it in result.iterations}
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        header = (
            ["eval_index"]
            + [f"x{i}" for i in range(dim)]
            + [f"f{i}" for i in range(m)]
            + [f"g{i}" for i in range(p)]
            + ["cv", "feasible", "search_flag", "tau", "rv_index"]
        )
        wr.writerow(header)
        for sol in result.archive:
            it = by_index.get(sol.eval_index)
            row = (
                [str(sol.eval_index)]
                + [_fmt(v) for v in sol.x]
                + [_fmt(v) for v in sol.f]
                + [_fmt(v) for v in sol.g]
                + [_fmt(sol.cv), str(int(sol.feasible))]
            )
            if it is None:
                row += ["init", "", ""]
            else:
                row += [it.search_flag, "" if it.tau is None else _fmt(it.tau), str(it.rv_index)]
            wr.writerow(row)


def summarize(result: RunResult, problem_name: str) -> dict:
    feas = np.array([s.feasible for s in result.archive])
    ffe, st = metrics.ffe_st(feas, result.fe_max)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "problem": problem_name,
        "variant": result.variant,
        "n_init": result.n_init,
        "fe": len(result.archive),
        "fe_max": result.fe_max,
        "ffe": ffe,
        "st": bool(st),
        "igd": None,
        "igd_plus": None,
        "hv": None,
        "unconstrained_iterations": result.unconstrained_iterations(),
    }
    if st:
        front = load_reference_front(problem_name)
        ideal, nadir = front.ideal, front.nadir
        f_feas = np.array([s.f for s in result.archive if s.feasible])
        from .decomposition import nd_mask

        f_nd = f_feas[nd_mask(f_feas)]
        sol_n = metrics.normalize_objectives(f_nd, ideal, nadir)
        ref_n = metrics.normalize_objectives(front.points, ideal, nadir)
        summary["igd"] = metrics.igd(sol_n, ref_n)
        summary["igd_plus"] = metrics.igd_plus(sol_n, ref_n)
        summary["hv"] = metrics.hypervolume(sol_n)
    return summary


def run_cell(problem_name: str, variant: str, seed: int, cfg: ExperimentConfig) -> Path:
    """Execute one cell (or reuse it) and return its directory."""
    d = cell_dir(cfg.out_dir, problem_name, variant, seed)
    if _cell_complete(d):
        return d
    problem = get_problem(problem_name, cfg.dim)
    rng = np.random.default_rng(cell_rng_seed(problem.name, variant, seed))
    opt_cfg = OptimizerConfig(
        fe_max=cfg.budget,
        n_init=cfg.n_init,
        variant=variant,
        subea=SubEAConfig(n_pop=cfg.subea_pop, n_gen=cfg.subea_gen),
    )
    t0 = time.perf_counter()
    result = run(problem, opt_cfg, rng)
    wall = time.perf_counter() - t0

    d.mkdir(parents=True, exist_ok=True)
    tmp_trace = d / "trace.csv.tmp"
    write_trace(tmp_trace, result, problem.n, problem.m, problem.p)
    summary = summarize(result, problem.name)
    summary.update({"seed": seed, "dim": cfg.dim})
    tmp_summary = d / "summary.json.tmp"
    tmp_summary.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    (d / "meta.json").write_text(json.dumps({"wall_time_s": wall}) + "\n")
    os.replace(tmp_trace, d / "trace.csv")
    os.replace(tmp_summary, d / "summary.json")
    return d


def _run_cell_worker(args):
    problem, variant, seed, cfg_dict = args
    os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")
    os.environ.setdefault("OMP_NUM_THREADS", "1")
    cfg = ExperimentConfig(**cfg_dict)
    try:
        run_cell(problem, variant, seed, cfg)
        return (problem, variant, seed, None)
    except Exception as exc:  # single-cell failure: record, keep the matrix going
        return (problem, variant, seed, f"{type(exc).__name__}: {exc}")


def run_experiment(cfg: ExperimentConfig) -> list[tuple]:
    """Run every cell of the matrix; returns (problem, variant, seed, error) tuples."""
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory not writable: {out}")
    cells = [
        (p, v, s)
        for p in cfg.problems
        for v in cfg.variants
        for s in cfg.seeds
    ]
    pending = [c for c in cells if not _cell_complete(cell_dir(cfg.out_dir, *c))]
    results = [(p, v, s, None) for (p, v, s) in cells if (p, v, s) not in set(pending)]
    if not pending:
        return results
    if cfg.workers <= 1:
        for c in pending:
            results.append(_run_cell_worker((*c, asdict(cfg))))
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futs = {pool.submit(_run_cell_worker, (*c, asdict(cfg))): c for c in pending}
            for fut in as_completed(futs):
                results.append(fut.result())
    failures = [r for r in results if r[3]]
    for p, v, s, err in failures:
        print(f"cell failed: {p}/{v}/s{s}: {err}")
    return results


def _load_summaries(in_dir: str | Path) -> list[dict]:
    rows = []
    for f in sorted(Path(in_dir).glob("*/summary.json")):
        rows.append(json.loads(f.read_text()))
    if not rows:
        raise FileNotFoundError(f"no summaries under {in_dir}")
    return rows


def aggregate(in_dir: str | Path, baseline: str = "pscmoea", out_dir: str | Path | None = None) -> dict:
    """Comparison tables and performance-profile data from stored summaries."""
    rows = _load_summaries(in_dir)
    out_dir = Path(out_dir) if out_dir is not None else Path(in_dir)
    problems = sorted({r["problem"] for r in rows})
    variants = sorted({r["variant"] for r in rows})
    budgets = {r["fe_max"] for r in rows}
    if len(budgets) > 1:
        print(f"warning: mixed budgets {sorted(budgets)}; aggregating anyway")

    def series(problem, variant, key):
        vals = [
            (r[key] if r[key] is not None else np.nan)
            for r in rows
            if r["problem"] == problem and r["variant"] == variant
        ]
        return np.array(sorted(vals, key=lambda v: (np.isnan(v), v)), dtype=np.float64)

    table_rows = []
    mean_by_metric = {}
    for metric_key in ("igd", "igd_plus", "hv", "ffe"):
        means = np.full((len(problems), len(variants)), np.nan)
        for i, prob in enumerate(problems):
            mat = np.vstack([series(prob, v, metric_key) for v in variants])
            if metric_key in ("igd", "igd_plus", "hv"):
                try:
                    mat = metrics.penalize_infeasible_runs(mat, "hv" if metric_key == "hv" else "igd")
                except ValueError:
                    continue
            base_idx = variants.index(baseline) if baseline in variants else 0
            for j, v in enumerate(variants):
                vals = mat[j]
                outcome, p = ("tie", 1.0)
                if j != base_idx and vals.size >= 5 and mat[base_idx].size >= 5:
                    a, b = vals, mat[base_idx]
                    if metric_key == "hv":
                        a, b = -a, -b  # maximized metric: compare negated
                    outcome, p = metrics.wilcoxon_ranksum(a, b)
                table_rows.append(
                    {
                        "problem": prob,
                        "metric": metric_key,
                        "variant": v,
                        "mean": float(np.mean(vals)),
                        "std": float(np.std(vals)),
                        "runs": int(vals.size),
                        "vs_baseline": outcome if j != base_idx else "",
                        "p_value": p if j != base_idx else "",
                    }
                )
                means[i, j] = float(np.mean(vals))
        mean_by_metric[metric_key] = means

    tables_path = out_dir / "tables.csv"
    with open(tables_path, "w", newline="") as fh:
        wr = csv.DictWriter(fh, fieldnames=list(table_rows[0].keys()))
        wr.writeheader()
        wr.writerows(table_rows)

    profile_paths = {}
    for metric_key in ("igd", "ffe"):
        means = mean_by_metric[metric_key]
        ok = ~np.isnan(means).any(axis=1)
        if not ok.any():
            continue
        prof = metrics.performance_profile(means[ok])
        path = out_dir / f"profile_{metric_key}.csv"
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["algorithm", "lambda", "rho"])
            for j, v in enumerate(variants):
                lam, rho = prof.curve(j)
                for x, y in zip(lam, rho):
                    wr.writerow([v, _fmt(x), _fmt(y)])
        profile_paths[metric_key] = path

    return {"tables": tables_path, "profiles": profile_paths, "problems": problems, "variants": variants}


def _parse_seeds(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pscmoea", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("run", help="run a problems x variants x seeds matrix")
    rp.add_argument("--config", help="JSON config file; CLI flags override its keys")
    rp.add_argument("--problems", help="comma list, e.g. MW3,DASCMOP1")
    rp.add_argument("--variants", default=None, help="comma list from: " + ",".join(VARIANTS))
    rp.add_argument("--seeds", default=None, help="range 1..11 or comma list")
    rp.add_argument("--budget", type=int, default=None)
    rp.add_argument("--dim", type=int, default=None)
    rp.add_argument("--n-init", type=int, default=None)
    rp.add_argument("--subea-pop", type=int, default=None)
    rp.add_argument("--subea-gen", type=int, default=None)
    rp.add_argument("--out", default=None)

    agp = sub.add_parser("aggregate", help="build comparison tables and profile data")
    agp.add_argument("--in", dest="in_dir", required=True)
    agp.add_argument("--baseline", default="pscmoea")
    agp.add_argument("--out", default=None)

    sub.add_parser("list-problems", help="print the available problem names")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list-problems":
        for name in problem_names():
            print(name)
        return 0
    if args.command == "aggregate":
        res = aggregate(args.in_dir, baseline=args.baseline, out_dir=args.out)
        print(f"tables: {res['tables']}")
        for k, v in res["profiles"].items():
            print(f"profile[{k}]: {v}")
        return 0

    file_cfg = {}
    if args.config:
        file_cfg = json.loads(Path(args.config).read_text())
    merged = {
        "problems": args.problems.split(",") if args.problems else file_cfg.get("problems"),
        "variants": args.variants.split(",") if args.variants else file_cfg.get("variants", ["pscmoea"]),
        "seeds": _parse_seeds(args.seeds) if args.seeds else file_cfg.get("seeds", [1]),
        "budget": args.budget if args.budget is not None else file_cfg.get("budget", 500),
        "dim": args.dim if args.dim is not None else file_cfg.get("dim", 10),
        "n_init": args.n_init if args.n_init is not None else file_cfg.get("n_init"),
        "subea_pop": args.subea_pop if args.subea_pop is not None else file_cfg.get("subea_pop", 100),
        "subea_gen": args.subea_gen if args.subea_gen is not None else file_cfg.get("subea_gen", 100),
        "out_dir": args.out if args.out is not None else file_cfg.get("out_dir", "runs"),
        "workers": int(os.environ.get("PSCMOEA_WORKERS", file_cfg.get("workers", 1))),
    }
    if not merged["problems"]:
        raise SystemExit("no problems given (use --problems or a config file)")
    cfg = ExperimentConfig(**merged)
    results = run_experiment(cfg)
    failures = [r for r in results if r[3]]
    print(f"{len(results) - len(failures)}/{len(results)} cells complete")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
