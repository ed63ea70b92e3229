"""Command-line interface: compute, verify, scan, and bench workflows.

Exit codes are stable API: 0 pass, 1 invariant violation, 2 parse error,
3 validation error, 4 dimension mismatch, 5 unknown id.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import os
import sys

import click
import numpy as np

from . import bench as bench_mod
from . import bounds, measures, metrics, states
from .exceptions import (
    DimMismatch,
    DimTooSmall,
    NotHermitian,
    NotPSD,
    TraceNotOne,
    UnknownMeasure,
)

EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DIM = 4
EXIT_UNKNOWN_ID = 5


def _default_seed() -> int:
    return int(os.environ.get("FIDKIT_SEED", "0"))


def _load_validated(path: str) -> np.ndarray:
    try:
        m = states.load_state(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    try:
        return states.validate(m)
    except (NotHermitian, TraceNotOne, NotPSD) as exc:
        click.echo(f"error: {path} is not a valid state: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    except DimMismatch as exc:
        click.echo(f"error: {path}: {exc}", err=True)
        sys.exit(EXIT_DIM)


def _report_json(obj) -> str:
    def default(o):
        if dataclasses.is_dataclass(o):
            return dataclasses.asdict(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (np.floating, np.integer, np.bool_)):
            return o.item()
        raise TypeError(f"not serializable: {type(o)}")

    return json.dumps(obj, indent=2, default=default)


@click.group()
def main():
    """Fidelity and distance measures between quantum states."""


@main.command()
@click.argument("measure_or_metric")
@click.argument("state_a", type=click.Path(exists=True))
@click.argument("state_b", type=click.Path(exists=True))
@click.argument("state_c", type=click.Path(exists=True), required=False)
def compute(measure_or_metric, state_a, state_b, state_c):
    """Evaluate a measure or metric on two states; with a third state and
    a metric id, print the triangle-inequality triple (lhs, rhs, holds)."""
    mid = measure_or_metric
    rho = _load_validated(state_a)
    sigma = _load_validated(state_b)
    is_measure = mid in measures.MEASURE_IDS
    is_metric = mid in metrics.FUNCTIONAL_IDS
    if not (is_measure or is_metric):
        click.echo(
            f"error: unknown id {mid!r}; measures: {measures.MEASURE_IDS}, "
            f"metrics: {metrics.FUNCTIONAL_IDS}",
            err=True,
        )
        sys.exit(EXIT_UNKNOWN_ID)
    try:
        if state_c is not None:
            if not is_metric:
                click.echo("error: three states require a metric id", err=True)
                sys.exit(EXIT_UNKNOWN_ID)
            tau = _load_validated(state_c)
            lhs, rhs, holds = metrics.triangle_check(mid, rho, sigma, tau)
            click.echo(f"{lhs:.10f} {rhs:.10f} {'holds' if holds else 'violated'}")
        elif is_measure:
            click.echo(f"{measures.measure(mid, rho, sigma):.10f}")
        else:
            click.echo(f"{metrics.metric_value(mid, rho, sigma):.10f}")
    except (DimMismatch, DimTooSmall) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DIM)


VERIFY_SUITES = (
    "axioms",
    "concavity",
    "supermult",
    "metrics",
    "kernels",
    "bounds",
    "pinching",
    "monotonicity",
)


@main.command()
@click.argument("suite", type=click.Choice(VERIFY_SUITES))
@click.option("--d", "dim", default=3, show_default=True, help="State dimension.")
@click.option("--trials", default=1000, show_default=True)
@click.option("--seed", default=None, type=int, help="Defaults to FIDKIT_SEED or 0.")
def verify(suite, dim, trials, seed):
    """Run a property suite; exit 0 iff all its invariants hold.

    Conjecture-class findings are downgraded to warnings.
    """
    seed = _default_seed() if seed is None else seed
    ok = True
    warnings_out = []

    if suite == "axioms":
        reports = {
            mid: bounds.axiom_suite(mid, dim, trials, seed) for mid in ("F", "FN")
        }
        ok = all(r.passed for r in reports.values())
        payload = reports
    elif suite == "concavity":
        rep = bounds.concavity_suite(dim, trials, seed)
        ok = (
            rep.joint_violations == 0
            and rep.chord_violations == 0
            and rep.second_diff_violations == 0
            and rep.f_joint_violations == 0
        )
        payload = rep
    elif suite == "supermult":
        rep = bounds.supermult_suite(dim, dim, trials, seed)
        ok = rep.tensor_violations == 0 and rep.scalar_violations == 0
        payload = rep
    elif suite == "metrics":
        rep = metrics.metric_axiom_suite(dim, trials, seed)
        ok = rep.passed
        payload = rep
    elif suite == "kernels":
        rng = np.random.default_rng(seed)
        state_set = [states.random_mixed(dim, rng) for _ in range(8)]
        reports = {
            kid: metrics.schoenberg_kernel_test(kid, state_set, trials, seed)
            for kid in metrics.KERNEL_IDS
        }
        ok = all(r.passed for r in reports.values())
        payload = reports
    elif suite == "bounds":
        n_viol = 0
        n_conj = 0
        for i in range(trials):
            rng = states.trial_rng(seed, i)
            rep = bounds.bound_report(
                states.random_mixed(dim, rng), states.random_mixed(dim, rng), str(i)
            )
            n_viol += len(rep.violations)
            n_conj += len(rep.conjecture_violations)
        ok = n_viol == 0
        if n_conj:
            warnings_out.append(f"CONJECTURE-class findings: {n_conj}")
        payload = {"trials": trials, "violations": n_viol, "conjecture": n_conj}
    elif suite == "pinching":
        rep = bounds.pinching_search(dim, trials, seed)
        ok = rep.min_commuting_margin >= -1e-10
        if rep.violations:
            warnings_out.append(
                f"non-commuting pinching margin {rep.min_margin:.3e} "
                f"(CONJECTURE-class, {rep.violations} findings)"
            )
        payload = rep
    else:  # monotonicity
        demo = bounds.ozawa_monotonicity_demo()
        ok = (
            abs(demo["original"] - 0.5) < 1e-12
            and abs(demo["after_tracing_qubit1"] - 1.0) < 1e-12
            and abs(demo["after_tracing_qubit2"]) < 1e-12
        )
        payload = demo

    click.echo(_report_json(payload))
    for w in warnings_out:
        click.echo(f"warning: {w}", err=True)
    click.echo("PASS" if ok else "FAIL")
    sys.exit(0 if ok else EXIT_VIOLATION)


@main.command()
@click.option("--d", "dim", default=3, show_default=True)
@click.option("--pairs", default=10000, show_default=True)
@click.option("--seed", default=None, type=int)
@click.option(
    "--mode",
    default="mixed-mixed",
    type=click.Choice(bounds.SCAN_MODES),
    show_default=True,
)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--plot", "plot_path", default=None, type=click.Path(),
              help="Also render the scatter figure to this file.")
def scan(dim, pairs, seed, mode, out_path, plot_path):
    """Sample random pairs and stream (1 - FN, D, rank) records to CSV."""
    seed = _default_seed() if seed is None else seed
    summary, records = bounds.conjecture_scan(dim, pairs, seed, mode)
    try:
        with open(out_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(bounds.SCATTER_COLUMNS)
            for rec in records:
                writer.writerow(rec.row())
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    if plot_path:
        from . import plotting

        plotting.render_scan_figure(records, dim, plot_path)
    click.echo(_report_json(summary))
    if summary.conjecture_violations:
        click.echo(
            f"warning: {summary.conjecture_violations} conjectured-lower-bound "
            "violations (CONJECTURE-class)",
            err=True,
        )


@main.command()
@click.option("--measures", "measure_csv", default="F,FN,Q,D", show_default=True)
@click.option("--dims", "dims_csv", default="2,4,8,16,32,64,128,256", show_default=True)
@click.option("--pairs", default=100, show_default=True)
@click.option("--seed", default=None, type=int)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--fit-out", "fit_path", default=None, type=click.Path(),
              help="Scaling-fit JSON path (default: <out>.fit.json).")
@click.option("--plot", "plot_path", default=None, type=click.Path(),
              help="Also render the semilog timing figure to this file.")
def bench(measure_csv, dims_csv, pairs, seed, out_path, fit_path, plot_path):
    """Benchmark measures against dimension; write timing CSV and fit JSON."""
    seed = _default_seed() if seed is None else seed
    measure_ids = [m.strip() for m in measure_csv.split(",") if m.strip()]
    try:
        dims = [int(x) for x in dims_csv.split(",") if x.strip()]
    except ValueError as exc:
        click.echo(f"error: bad dimension list: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    try:
        records = bench_mod.run_bench(measure_ids, dims, pairs, seed)
    except UnknownMeasure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_UNKNOWN_ID)
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["measure", "d", "n_pairs", "mean_ns", "median_ns", "stddev_ns", "total_reps"]
        )
        for rec in records:
            writer.writerow(
                [
                    rec.measure_id,
                    rec.d,
                    rec.n_pairs,
                    rec.mean_ns,
                    rec.median_ns,
                    rec.stddev_ns,
                    rec.total_reps,
                ]
            )
    fits = []
    if len(dims) >= 4 and max(dims) >= 32:
        fits = bench_mod.fit_scaling(records)
        fit_path = fit_path or out_path + ".fit.json"
        with open(fit_path, "w") as fh:
            fh.write(
                _report_json(
                    [
                        {
                            "measure": f.measure_id,
                            "exponent": f.exponent,
                            "r_squared": f.r_squared,
                            "d_min": f.d_min,
                            "d_max": f.d_max,
                        }
                        for f in fits
                    ]
                )
            )
        click.echo(f"wrote {fit_path}")
    if plot_path:
        from . import plotting

        plotting.render_bench_figure(records, fits, plot_path)
    click.echo(f"wrote {out_path} ({len(records)} records)")


if __name__ == "__main__":
    main()
