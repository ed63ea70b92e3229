import numpy as np
import pytest

from fidkit import bench
from fidkit.exceptions import InsufficientData, UnknownMeasure


def synthetic_records(measure_id, dims, coeff, power):
    return [
        bench.BenchRecord(
            measure_id=measure_id,
            d=d,
            n_pairs=10,
            mean_ns=coeff * d**power,
            median_ns=coeff * d**power,
            stddev_ns=0.0,
            total_reps=10,
        )
        for d in dims
    ]


class TestRunBench:
    def test_structure(self):
        records = bench.run_bench(
            ["FN", "D"], [2, 3], n_pairs=3, seed=0, min_time_per_point_ms=1.0
        )
        assert len(records) == 4
        assert {r.measure_id for r in records} == {"FN", "D"}
        assert {r.d for r in records} == {2, 3}
        for r in records:
            assert r.mean_ns > 0
            assert r.median_ns > 0
            assert r.total_reps >= 1
            assert r.n_pairs == 3

    def test_unknown_measure(self):
        with pytest.raises(UnknownMeasure):
            bench.run_bench(["nope"], [2, 4, 8, 32], n_pairs=2)

    def test_min_time_accumulated(self):
        records = bench.run_bench(
            ["FN"], [2], n_pairs=2, seed=0, min_time_per_point_ms=5.0
        )
        rec = records[0]
        # Accumulated timed work must reach the 5 ms floor (ns units).
        assert rec.total_reps * rec.mean_ns >= 5.0e6 * 0.99


class TestFitScaling:
    def test_exact_cubic(self):
        dims = [8, 16, 32, 64, 128]
        fits = bench.fit_scaling(synthetic_records("F", dims, 3.0, 3))
        assert len(fits) == 1
        assert fits[0].exponent == pytest.approx(3.0, abs=1e-6)
        assert fits[0].r_squared == pytest.approx(1.0, abs=1e-9)

    def test_exact_quadratic(self):
        dims = [4, 8, 16, 32, 64, 128, 256]
        fits = bench.fit_scaling(synthetic_records("FN", dims, 0.5, 2))
        assert fits[0].exponent == pytest.approx(2.0, abs=1e-6)

    def test_uses_upper_dims(self):
        # Overhead-dominated small dims must not pollute the fit: constant
        # time below d = 32, cubic above.
        dims = [2, 4, 8, 16, 32, 64, 128, 256]
        records = []
        for d in dims:
            t = 1000.0 if d < 32 else 1000.0 * (d / 32) ** 3
            records.extend(synthetic_records("Q", [d], t, 0))
        fits = bench.fit_scaling(records)
        assert fits[0].d_min >= 32
        assert fits[0].exponent == pytest.approx(3.0, abs=1e-6)

    def test_five_dims_widens_to_four_points(self):
        dims = [16, 32, 64, 128, 256]
        fits = bench.fit_scaling(synthetic_records("D", dims, 1.0, 3))
        assert fits[0].d_min == 32
        assert fits[0].d_max == 256

    def test_too_few_dims(self):
        with pytest.raises(InsufficientData):
            bench.fit_scaling(synthetic_records("F", [8, 16, 32], 1.0, 3))

    def test_max_dim_too_small(self):
        with pytest.raises(InsufficientData):
            bench.fit_scaling(synthetic_records("F", [2, 4, 8, 16], 1.0, 3))

    def test_noisy_cubic_recovered(self):
        rng = np.random.default_rng(0)
        dims = [16, 32, 64, 128, 256]
        records = []
        for d in dims:
            t = 2.0 * d**3 * float(np.exp(rng.normal(0, 0.02)))
            records.extend(synthetic_records("F", [d], t, 0))
        fits = bench.fit_scaling(records)
        assert fits[0].exponent == pytest.approx(3.0, abs=0.1)
