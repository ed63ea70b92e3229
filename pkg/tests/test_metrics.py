import numpy as np
import pytest

from fidkit import measures, metrics, states
from fidkit.exceptions import TooFewStates


class TestFunctionals:
    def test_unknown_id(self):
        with pytest.raises(ValueError):
            metrics.metric_value("nope", np.eye(2) / 2, np.eye(2) / 2)

    @pytest.mark.parametrize("fid", metrics.FUNCTIONAL_IDS)
    def test_zero_on_diagonal(self, fid, rng):
        rho = states.random_mixed(3, rng)
        assert metrics.metric_value(fid, rho, rho) < 1e-5

    @pytest.mark.parametrize("fid", metrics.FUNCTIONAL_IDS)
    def test_symmetric(self, fid, rng):
        rho = states.random_mixed(3, rng)
        sigma = states.random_mixed(3, rng)
        assert metrics.metric_value(fid, rho, sigma) == pytest.approx(
            metrics.metric_value(fid, sigma, rho), abs=1e-10
        )

    def test_functional_forms(self, rng):
        rho = states.random_mixed(3, rng)
        sigma = states.random_mixed(3, rng)
        f = measures.fidelity_uj(rho, sigma)
        fn = measures.fidelity_n(rho, sigma)
        assert metrics.metric_value("A_F", rho, sigma) == pytest.approx(
            np.arccos(np.sqrt(f)), abs=1e-12
        )
        assert metrics.metric_value("B_FN", rho, sigma) == pytest.approx(
            np.sqrt(2 - 2 * np.sqrt(fn)), abs=1e-12
        )
        assert metrics.metric_value("C_F", rho, sigma) == pytest.approx(
            np.sqrt(1 - f), abs=1e-12
        )
        assert metrics.metric_value("modBures", rho, sigma) == pytest.approx(
            np.sqrt(2) * metrics.metric_value("C_FN", rho, sigma), abs=1e-12
        )

    def test_h_diagonal_oracle(self, rng):
        # On commuting states H is the classical Hellinger-style distance
        # sqrt(2 - 2 sum_i sqrt(p_i q_i)).
        p = rng.dirichlet(np.ones(4))
        q = rng.dirichlet(np.ones(4))
        expected = np.sqrt(2 - 2 * np.sum(np.sqrt(p * q)))
        assert metrics.metric_value("H", np.diag(p), np.diag(q)) == pytest.approx(
            expected, abs=1e-10
        )

    def test_root_overlap_identical(self, rng):
        rho = states.random_mixed(3, rng)
        # tr(sqrt(rho) sqrt(rho)) = tr(rho) = 1.
        assert metrics.root_overlap(rho, rho) == pytest.approx(1.0, abs=1e-10)


class TestTriangle:
    def test_counterexample_triple(self):
        rho, sigma, tau = states.triangle_violation_triple()
        lhs, rhs, holds = metrics.triangle_check("A_FN", rho, sigma, tau)
        assert lhs == pytest.approx(0.9553, abs=5e-5)
        assert rhs == pytest.approx(0.9241, abs=5e-5)
        assert not holds
        lhs, rhs, holds = metrics.triangle_check("B_FN", rho, sigma, tau)
        assert lhs == pytest.approx(0.9194, abs=5e-5)
        assert rhs == pytest.approx(0.9137, abs=5e-5)
        assert not holds
        lhs, rhs, holds = metrics.triangle_check("C_FN", rho, sigma, tau)
        assert lhs == pytest.approx(0.8165, abs=5e-5)
        assert rhs == pytest.approx(0.8828, abs=5e-5)
        assert holds

    @pytest.mark.parametrize("fid", metrics.TRIANGLE_SAFE_IDS)
    def test_safe_functionals_hold_on_samples(self, fid):
        for i in range(50):
            rng = states.trial_rng(7, i)
            rho = states.random_mixed(3, rng)
            sigma = states.random_mixed(3, rng)
            tau = states.random_mixed(3, rng)
            _, _, holds = metrics.triangle_check(fid, rho, sigma, tau)
            assert holds

    def test_safe_functionals_hold_on_counterexample_triple(self):
        rho, sigma, tau = states.triangle_violation_triple()
        for fid in metrics.TRIANGLE_SAFE_IDS:
            _, _, holds = metrics.triangle_check(fid, rho, sigma, tau)
            assert holds, fid


class TestMetricSuite:
    def test_small_run_passes(self):
        rep = metrics.metric_axiom_suite(3, 30, seed=1)
        assert rep.passed
        assert rep.counterexample_confirmed

    def test_qubit_run_passes(self):
        assert metrics.metric_axiom_suite(2, 30, seed=2).passed


class TestKernels:
    def test_matrix_symmetric_zero_diag(self, rng):
        state_set = [states.random_mixed(3, rng) for _ in range(5)]
        k = metrics.kernel_matrix("C2_FN", state_set)
        np.testing.assert_allclose(k, k.T, atol=0)
        np.testing.assert_allclose(np.diag(k), 0, atol=0)
        assert np.all(k >= 0)

    def test_entry_definitions(self, rng):
        rho = states.random_mixed(3, rng)
        sigma = states.random_mixed(3, rng)
        assert metrics._kernel_entry("C2_FN", rho, sigma) == pytest.approx(
            1 - measures.fidelity_n(rho, sigma), abs=1e-12
        )
        assert metrics._kernel_entry("B2_F", rho, sigma) == pytest.approx(
            2 - 2 * np.sqrt(measures.fidelity_uj(rho, sigma)), abs=1e-12
        )
        assert metrics._kernel_entry("modBures2", rho, sigma) == pytest.approx(
            2 * metrics._kernel_entry("C2_FN", rho, sigma), abs=1e-12
        )

    @pytest.mark.parametrize("kid", ["C2_FN", "C2_F", "H2", "modBures2"])
    def test_schoenberg_passes_mixed_set(self, kid, rng):
        state_set = [states.random_mixed(3, rng) for _ in range(6)] + [
            states.random_pure(3, rng) for _ in range(2)
        ]
        rep = metrics.schoenberg_kernel_test(kid, state_set, trials=2000, seed=3)
        assert rep.passed
        assert rep.max_quadratic_form <= metrics.KERNEL_FORM_TOL
        assert abs(np.sum(rep.worst_coeffs)) < 1e-9

    def test_bures_squared_is_not_negative_type(self):
        # The squared Bures distance 2 - 2 sqrt(F) is a metric squared but
        # not of negative type: random qubit sets robustly produce positive
        # zero-sum quadratic forms, so the Schoenberg certificate must
        # report failure rather than noise.
        rng = np.random.default_rng(np.random.SeedSequence([0, 2]))
        state_set = [states.random_mixed(2, rng) for _ in range(8)]
        rep = metrics.schoenberg_kernel_test("B2_F", state_set, trials=2000, seed=0)
        assert not rep.passed
        assert rep.max_quadratic_form > 1e-3

    def test_detects_positive_form(self, rng, monkeypatch):
        # The tester must be able to fail: flip the sign of one kernel so
        # its zero-sum forms turn positive.
        state_set = [states.random_mixed(3, rng) for _ in range(4)]
        original = metrics._kernel_entry
        monkeypatch.setattr(
            metrics,
            "_kernel_entry",
            lambda kid, a, b: -original(kid, a, b),
        )
        rep = metrics.schoenberg_kernel_test("C2_FN", state_set, trials=500, seed=4)
        assert not rep.passed

    def test_too_few_states(self, rng):
        with pytest.raises(TooFewStates):
            metrics.schoenberg_kernel_test("C2_FN", [states.random_mixed(2, rng)])

    def test_unknown_kernel(self, rng):
        with pytest.raises(ValueError):
            metrics.kernel_matrix("nope", [np.eye(2) / 2, np.eye(2) / 2])
