"""Micro-benchmark harness: evaluation time of each measure vs dimension.

The same pre-generated state pairs are fed to every measure at a given
dimension, generation and validation sit outside the timed region, and
each (measure, dimension) point accumulates a minimum wall time so timer
granularity cannot dominate. The fitted log-log slope over the upper half
of the dimension range estimates the scaling exponent: the superfidelity
needs only inner products (quadratic in d), while the eigensolver-based
measures grow cubically.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import measures, states
from .exceptions import InsufficientData, UnknownMeasure

DEFAULT_DIMS = (2, 4, 8, 16, 32, 64, 128, 256)
DEFAULT_MIN_TIME_MS = 50.0
WARMUP_EVALS = 3


@dataclass
class BenchRecord:
    measure_id: str
    d: int
    n_pairs: int
    mean_ns: float
    median_ns: float
    stddev_ns: float
    total_reps: int


@dataclass
class ScalingFit:
    measure_id: str
    exponent: float
    r_squared: float
    d_min: int
    d_max: int


def _time_measure(fn, pairs, min_time_s: float) -> tuple[list[float], int]:
    """Per-evaluation times (ns) for one measure over fixed pairs,
    repeating the whole sweep until min_time_s of wall time accumulates."""
    for rho, sigma in pairs[:WARMUP_EVALS]:
        fn(rho, sigma)
    per_eval_ns = []
    total = 0.0
    reps = 0
    while total < min_time_s:
        for rho, sigma in pairs:
            t0 = time.perf_counter()
            fn(rho, sigma)
            dt = time.perf_counter() - t0
            per_eval_ns.append(dt * 1e9)
            total += dt
            reps += 1
            if total >= min_time_s and reps >= 1:
                break
    return per_eval_ns, reps


def run_bench(
    measure_ids,
    dims,
    n_pairs: int = 100,
    seed: int = 0,
    min_time_per_point_ms: float = DEFAULT_MIN_TIME_MS,
) -> list[BenchRecord]:
    """Benchmark each measure on each dimension.

    Pairs are identical across measures at a given d (fairness) and drawn
    deterministically from the seed. Timings are single-threaded.
    """
    for mid in measure_ids:
        if mid not in measures.MEASURE_IDS:
            raise UnknownMeasure(f"unknown measure {mid!r}")
    records = []
    min_time_s = min_time_per_point_ms / 1e3
    for d in dims:
        pairs = []
        for i in range(n_pairs):
            rng = states.trial_rng(seed, d * 1_000_000 + i)
            pairs.append((states.random_mixed(d, rng), states.random_mixed(d, rng)))
        for mid in measure_ids:
            fn = measures._DISPATCH[mid]
            samples, reps = _time_measure(fn, pairs, min_time_s)
            arr = np.asarray(samples)
            records.append(
                BenchRecord(
                    measure_id=mid,
                    d=d,
                    n_pairs=n_pairs,
                    mean_ns=float(arr.mean()),
                    median_ns=float(np.median(arr)),
                    stddev_ns=float(arr.std()),
                    total_reps=reps,
                )
            )
    return records


def fit_scaling(records) -> list[ScalingFit]:
    """Least-squares slope of log(median time) vs log(d), fitted over the
    upper half of each measure's dimension range (small-d points are
    dominated by call overhead, not the asymptotic kernel; the median is
    robust to scheduler and allocator outliers that skew the mean when few
    repetitions fit in the time budget)."""
    by_measure: dict[str, dict[int, float]] = {}
    for rec in records:
        by_measure.setdefault(rec.measure_id, {})[rec.d] = rec.median_ns
    fits = []
    for mid, points in by_measure.items():
        dims = sorted(points)
        if len(dims) < 4:
            raise InsufficientData(
                f"measure {mid}: need >= 4 dimensions, got {len(dims)}"
            )
        if dims[-1] < 32:
            raise InsufficientData(f"measure {mid}: largest dimension must be >= 32")
        # Upper half of the dimension range, widened to four points so the
        # fit never rests on fewer dimensions than the record invariant.
        upper = dims[len(dims) // 2 :]
        if len(upper) < 4:
            upper = dims[-4:]
        x = np.log([float(d) for d in upper])
        y = np.log([points[d] for d in upper])
        slope, intercept = np.polyfit(x, y, 1)
        resid = y - (slope * x + intercept)
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
        fits.append(
            ScalingFit(
                measure_id=mid,
                exponent=float(slope),
                r_squared=r2,
                d_min=upper[0],
                d_max=upper[-1],
            )
        )
    return fits
