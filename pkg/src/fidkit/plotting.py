"""Matplotlib renderers for scan and benchmark artifacts.

The CLI writes delimited data (CSV, JSON) as the primary output; these
helpers render the companion figures next to it: the trace-distance vs
1 - superfidelity scatter with its bound curves, and the semilog timing
plot of the measures versus dimension.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def render_scan_figure(records, d: int, out_path: str) -> None:
    """Scatter of D vs 1 - FN with the conjectured lower bound line and
    the rank-dependent upper-bound curves for r = 2, 4, ..., d."""
    x_mixed, y_mixed, x_pure, y_pure = [], [], [], []
    for rec in records:
        pure = rec.purity_rho > 1 - 1e-10 or rec.purity_sigma > 1 - 1e-10
        if pure:
            x_pure.append(rec.one_minus_fn)
            y_pure.append(rec.trace_distance)
        else:
            x_mixed.append(rec.one_minus_fn)
            y_mixed.append(rec.trace_distance)

    fig, ax = plt.subplots(figsize=(6, 5))
    if x_mixed:
        ax.plot(x_mixed, y_mixed, ".", ms=2, color="tab:blue", alpha=0.4,
                label="mixed pairs")
    if x_pure:
        ax.plot(x_pure, y_pure, ".", ms=2, color="tab:green", alpha=0.4,
                label="pairs with a pure state")
    t = np.linspace(0, 1, 400)
    ax.plot(t, 1 - t, "k-", lw=1, label="conjectured lower bound")
    for r in range(2, d + 1):
        curve = np.sqrt(r / 2.0) * np.sqrt(t)
        ax.plot(t, np.clip(curve, 0, 1), "--", color="tab:cyan", lw=1,
                label=f"upper bound, rank {r}" if r == 2 else None)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    ax.set_xlabel("1 - superfidelity")
    ax.set_ylabel("trace distance")
    ax.set_title(f"d = {d}")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def render_bench_figure(records, fits, out_path: str) -> None:
    """Semilog plot of mean evaluation time against dimension, one line
    per measure, annotated with the fitted scaling exponents."""
    by_measure: dict[str, list] = {}
    for rec in records:
        by_measure.setdefault(rec.measure_id, []).append(rec)
    exponents = {f.measure_id: f.exponent for f in fits or []}

    fig, ax = plt.subplots(figsize=(6, 5))
    markers = {"F": "o", "FN": "x", "Q": "+", "D": "s"}
    for mid, recs in sorted(by_measure.items()):
        recs = sorted(recs, key=lambda r: r.d)
        dims = [r.d for r in recs]
        times = [r.mean_ns / 1e9 for r in recs]
        label = mid
        if mid in exponents:
            label += f" (slope {exponents[mid]:.2f})"
        ax.semilogy(dims, times, marker=markers.get(mid, "d"), label=label)
    ax.set_xlabel("dimension")
    ax.set_ylabel("mean time per evaluation [s]")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
