import numpy as np
import pytest
import scipy.linalg

from fidkit import linalg, measures, states
from fidkit.exceptions import DimMismatch, DimTooSmall, UnknownMeasure


class TestUhlmannJozsa:
    def test_identical(self, rng):
        rho = states.random_mixed(4, rng)
        assert measures.fidelity_uj(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_pure(self):
        assert measures.fidelity_uj(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == 0.0

    def test_pure_pure_oracle(self, rng):
        # F reduces to the squared overlap |<psi|phi>|^2 for pure states.
        # Rank-deficient arguments leave sqrt(machine-eps)-scale noise in
        # the eigenvalue route, hence the 1e-7 tolerance.
        for _ in range(20):
            psi = states.random_pure(4, rng)
            phi = states.random_pure(4, rng)
            overlap_sq = linalg.hs_inner_real(psi, phi)
            assert measures.fidelity_uj(psi, phi) == pytest.approx(
                overlap_sq, abs=1e-7
            )

    def test_commuting_oracle(self, rng):
        # Diagonal states: F = (sum_i sqrt(p_i q_i))^2, the classical
        # Bhattacharyya coefficient squared.
        p = rng.dirichlet(np.ones(5))
        q = rng.dirichlet(np.ones(5))
        expected = float(np.sum(np.sqrt(p * q)) ** 2)
        assert measures.fidelity_uj(np.diag(p), np.diag(q)) == pytest.approx(
            expected, abs=1e-12
        )

    def test_pure_mixed_schumacher(self, rng):
        rho = states.random_mixed(3, rng)
        psi = states.random_pure(3, rng)
        expected = linalg.hs_inner_real(psi, rho)
        assert measures.fidelity_uj(rho, psi) == pytest.approx(expected, abs=1e-7)

    def test_symmetry(self, rng):
        rho = states.random_mixed(5, rng)
        sigma = states.random_mixed(5, rng)
        assert measures.fidelity_uj(rho, sigma) == pytest.approx(
            measures.fidelity_uj(sigma, rho), abs=1e-10
        )

    def test_multiplicative_on_products(self, rng):
        r1, s1 = states.random_mixed(3, rng), states.random_mixed(3, rng)
        r2, s2 = states.random_mixed(2, rng), states.random_mixed(2, rng)
        prod = measures.fidelity_uj(np.kron(r1, r2), np.kron(s1, s2))
        assert prod == pytest.approx(
            measures.fidelity_uj(r1, s1) * measures.fidelity_uj(r2, s2), abs=1e-9
        )

    def test_scipy_sqrtm_oracle(self, rng):
        rho = states.random_mixed(4, rng)
        sigma = states.random_mixed(4, rng)
        sr = scipy.linalg.sqrtm(rho)
        inner = scipy.linalg.sqrtm(sr @ sigma @ sr)
        expected = float(np.trace(inner).real ** 2)
        assert measures.fidelity_uj(rho, sigma) == pytest.approx(expected, abs=1e-9)


class TestSuperfidelity:
    def test_direct_formula_oracle(self, rng):
        rho = states.random_mixed(6, rng)
        sigma = states.random_mixed(6, rng)
        expected = float(
            np.trace(rho @ sigma).real
            + np.sqrt(1 - np.trace(rho @ rho).real)
            * np.sqrt(1 - np.trace(sigma @ sigma).real)
        )
        assert measures.fidelity_n(rho, sigma) == pytest.approx(expected, abs=1e-12)

    def test_pure_pure_equals_f(self, rng):
        psi = states.random_pure(4, rng)
        phi = states.random_pure(4, rng)
        assert measures.fidelity_n(psi, phi) == pytest.approx(
            measures.fidelity_uj(psi, phi), abs=1e-7
        )

    def test_disjoint_maximally_mixed(self):
        rho, sigma = states.disjoint_maximally_mixed(4)
        assert measures.fidelity_n(rho, sigma) == pytest.approx(0.75, abs=1e-12)

    def test_upper_bounds_f(self, rng):
        for _ in range(50):
            d = int(rng.integers(2, 7))
            rho = states.random_mixed(d, rng)
            sigma = states.random_mixed(d, rng)
            assert measures.fidelity_uj(rho, sigma) <= measures.fidelity_n(
                rho, sigma
            ) + 1e-9

    def test_maximally_mixed_pair(self):
        assert measures.fidelity_n(np.eye(3) / 3, np.eye(3) / 3) == pytest.approx(
            1.0, abs=1e-14
        )


class TestQubitForms:
    def test_det_form_matches_fn(self, rng):
        for _ in range(100):
            rho = states.random_mixed(2, rng)
            sigma = states.random_mixed(2, rng)
            assert measures.fidelity_n_qubit_det(rho, sigma) == pytest.approx(
                measures.fidelity_n(rho, sigma), abs=1e-12
            )

    def test_f_equals_fn_for_qubits(self, rng):
        for _ in range(100):
            rho = states.random_mixed(2, rng)
            sigma = states.random_mixed(2, rng)
            assert abs(
                measures.fidelity_uj(rho, sigma) - measures.fidelity_n(rho, sigma)
            ) < 1e-10

    def test_det_form_rejects_non_qubit(self):
        with pytest.raises(DimMismatch):
            measures.fidelity_n_qubit_det(np.eye(3) / 3, np.eye(3) / 3)


class TestChenFidelity:
    def test_identity(self, rng):
        rho = states.random_mixed(3, rng)
        assert measures.fidelity_chen(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_affine_transform(self, rng):
        rho = states.random_mixed(4, rng)
        sigma = states.random_mixed(4, rng)
        r = 1.0 / 3.0
        fn = measures.fidelity_n(rho, sigma)
        assert measures.fidelity_chen(rho, sigma) == pytest.approx(
            (1 - r) / 2 + (1 + r) / 2 * fn, abs=1e-12
        )

    def test_qubit_reduces_to_fn(self, rng):
        rho = states.random_mixed(2, rng)
        sigma = states.random_mixed(2, rng)
        assert measures.fidelity_chen(rho, sigma) == pytest.approx(
            measures.fidelity_n(rho, sigma), abs=1e-12
        )

    def test_rejects_d1(self):
        with pytest.raises(DimTooSmall):
            measures.fidelity_chen(np.eye(1), np.eye(1))


class TestChernoff:
    def test_identical(self, rng):
        rho = states.random_mixed(3, rng)
        assert measures.chernoff_q(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_commuting_two_level(self):
        # diag(0.7, 0.3) vs diag(0.3, 0.7): symmetric in s, minimum at
        # s = 1/2 with value 2 sqrt(0.21).
        rho = np.diag([0.7, 0.3]).astype(complex)
        sigma = np.diag([0.3, 0.7]).astype(complex)
        assert measures.chernoff_q(rho, sigma) == pytest.approx(
            2 * np.sqrt(0.21), abs=1e-9
        )

    def test_pure_pure(self, rng):
        # On pure states the minimand is constant |<psi|phi>|^2 in the
        # interior of [0, 1].
        psi = states.random_pure(3, rng)
        phi = states.random_pure(3, rng)
        assert measures.chernoff_q(psi, phi) == pytest.approx(
            linalg.hs_inner_real(psi, phi), abs=1e-9
        )

    def test_orthogonal(self):
        assert measures.chernoff_q(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == 0.0

    def test_dense_grid_oracle(self, rng):
        # Independent oracle: brute-force the minimand on a dense s grid
        # using fractional matrix powers.
        for _ in range(5):
            rho = states.random_mixed(3, rng)
            sigma = states.random_mixed(3, rng)
            grid = np.linspace(0.0, 1.0, 2001)
            lam, v = np.linalg.eigh(rho)
            mu, w = np.linalg.eigh(sigma)
            ov = np.abs(v.conj().T @ w) ** 2
            vals = [
                float(np.power(lam, s) @ ov @ np.power(mu, 1 - s)) for s in grid
            ]
            assert measures.chernoff_q(rho, sigma) == pytest.approx(
                min(vals), abs=1e-6
            )

    def test_between_f_and_sqrt_f(self, rng):
        for _ in range(30):
            d = int(rng.integers(2, 6))
            rho = states.random_mixed(d, rng)
            sigma = states.random_mixed(d, rng)
            f = measures.fidelity_uj(rho, sigma)
            q = measures.chernoff_q(rho, sigma)
            assert f <= q + 1e-9
            assert q <= np.sqrt(f) + 1e-9


class TestTraceDistance:
    def test_identical(self, rng):
        rho = states.random_mixed(4, rng)
        assert measures.trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal(self):
        assert measures.trace_distance(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == 1.0

    def test_diagonal_oracle(self, rng):
        p = rng.dirichlet(np.ones(4))
        q = rng.dirichlet(np.ones(4))
        expected = 0.5 * float(np.sum(np.abs(p - q)))
        assert measures.trace_distance(np.diag(p), np.diag(q)) == pytest.approx(
            expected, abs=1e-12
        )

    def test_qubit_bloch_oracle(self, rng):
        # For qubits D equals the distance between the orthonormal-basis
        # coefficient vectors divided by sqrt(2).
        for _ in range(20):
            rho = states.random_mixed(2, rng)
            sigma = states.random_mixed(2, rng)
            r = states.to_bloch(rho).coeffs
            s = states.to_bloch(sigma).coeffs
            assert measures.trace_distance(rho, sigma) == pytest.approx(
                np.linalg.norm(r - s) / np.sqrt(2), abs=1e-10
            )

    def test_triangle(self, rng):
        for _ in range(30):
            a, b, c = (states.random_mixed(3, rng) for _ in range(3))
            assert measures.trace_distance(a, b) <= measures.trace_distance(
                a, c
            ) + measures.trace_distance(c, b) + 1e-10

    def test_unitary_invariance(self, rng):
        rho = states.random_mixed(4, rng)
        sigma = states.random_mixed(4, rng)
        u = states.random_unitary(4, rng)
        assert measures.trace_distance(
            u @ rho @ u.conj().T, u @ sigma @ u.conj().T
        ) == pytest.approx(measures.trace_distance(rho, sigma), abs=1e-10)


class TestDispatch:
    def test_ids_cover_dispatch(self):
        assert set(measures.MEASURE_IDS) == set(measures._DISPATCH)

    def test_measure_function(self, rng):
        rho = states.random_mixed(3, rng)
        sigma = states.random_mixed(3, rng)
        assert measures.measure("FN", rho, sigma) == measures.fidelity_n(rho, sigma)
        assert measures.measure("sqrtF", rho, sigma) == pytest.approx(
            np.sqrt(measures.fidelity_uj(rho, sigma)), abs=1e-12
        )

    def test_unknown_id(self):
        with pytest.raises(UnknownMeasure):
            measures.measure("nope", np.eye(2) / 2, np.eye(2) / 2)

    def test_clamp_warns_on_large_excursion(self):
        with pytest.warns(RuntimeWarning):
            assert measures._clamp01(1.0 + 1e-6, "test") == 1.0
        with pytest.warns(RuntimeWarning):
            assert measures._clamp01(-1e-6, "test") == 0.0

    def test_clamp_silent_within_tolerance(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert measures._clamp01(1.0 + 1e-12, "test") == 1.0

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            measures.fidelity_n(np.eye(2) / 2, np.eye(3) / 3)
