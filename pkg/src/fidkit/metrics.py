"""Metric functionals built from fidelity measures, and kernel tests.

Three functionals turn a fidelity m into a candidate distance:
A = arccos(sqrt(m)) (angle), B = sqrt(2 - 2 sqrt(m)) (Bures-style),
C = sqrt(1 - m) (sine-style). Applied to the Uhlmann-Jozsa fidelity all
three are metrics; applied to the superfidelity only C survives the
triangle inequality. Two further metrics are included: the root-overlap
distance H = sqrt(2 - 2 tr(sqrt(rho) sqrt(sigma))) and the modified Bures
distance sqrt(2) * C[FN].

The Schoenberg kernel test certifies the metric property the way the
triangle inequality cannot on samples alone: a symmetric nonnegative
kernel vanishing only on the diagonal is the square of a metric if all
its zero-sum quadratic forms are nonpositive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, measures
from .exceptions import TooFewStates

FUNCTIONAL_IDS = ("A_F", "B_F", "C_F", "A_FN", "B_FN", "C_FN", "H", "modBures")
KERNEL_IDS = ("C2_FN", "B2_F", "C2_F", "H2", "modBures2")

KERNEL_FORM_TOL = 1e-9


def _angle(m: float) -> float:
    return float(np.arccos(np.sqrt(min(max(m, 0.0), 1.0))))


def _bures(m: float) -> float:
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * np.sqrt(max(m, 0.0)))))


def _sine(m: float) -> float:
    return float(np.sqrt(max(0.0, 1.0 - m)))


def root_overlap(rho, sigma) -> float:
    """tr(sqrt(rho) sqrt(sigma)), the ingredient of the H metric."""
    return linalg.hs_inner_real(
        linalg.matrix_sqrt_psd(rho), linalg.matrix_sqrt_psd(sigma)
    )


def metric_value(functional_id: str, rho, sigma) -> float:
    """Evaluate one of the eight distance functionals on a pair of states."""
    if functional_id == "A_F":
        return _angle(measures.fidelity_uj(rho, sigma))
    if functional_id == "B_F":
        return _bures(measures.fidelity_uj(rho, sigma))
    if functional_id == "C_F":
        return _sine(measures.fidelity_uj(rho, sigma))
    if functional_id == "A_FN":
        return _angle(measures.fidelity_n(rho, sigma))
    if functional_id == "B_FN":
        return _bures(measures.fidelity_n(rho, sigma))
    if functional_id == "C_FN":
        return _sine(measures.fidelity_n(rho, sigma))
    if functional_id == "H":
        return float(np.sqrt(max(0.0, 2.0 - 2.0 * root_overlap(rho, sigma))))
    if functional_id == "modBures":
        return float(np.sqrt(2.0)) * _sine(measures.fidelity_n(rho, sigma))
    raise ValueError(f"unknown functional {functional_id!r}; expected {FUNCTIONAL_IDS}")


def triangle_check(functional_id: str, rho, sigma, tau, slack: float = 1e-9):
    """Triangle inequality d(rho,sigma) <= d(rho,tau) + d(tau,sigma).

    Returns (lhs, rhs, holds) with holds true iff lhs <= rhs + slack.
    """
    lhs = metric_value(functional_id, rho, sigma)
    rhs = metric_value(functional_id, rho, tau) + metric_value(functional_id, tau, sigma)
    return lhs, rhs, lhs <= rhs + slack


# Functionals expected to satisfy the triangle inequality everywhere; the
# remaining two (A_FN, B_FN) are violated by the fixed qutrit triple.
TRIANGLE_SAFE_IDS = ("A_F", "B_F", "C_F", "C_FN", "H", "modBures")


@dataclass
class MetricSuiteReport:
    d: int
    n_trials: int
    seed: int
    nonneg_violations: int
    identity_violations: int
    symmetry_violations: int
    triangle_violations: dict
    counterexample_confirmed: bool

    @property
    def passed(self) -> bool:
        return (
            self.nonneg_violations == 0
            and self.identity_violations == 0
            and self.symmetry_violations == 0
            and all(v == 0 for v in self.triangle_violations.values())
            and self.counterexample_confirmed
        )


def metric_axiom_suite(d: int, n_trials: int, seed: int = 0) -> MetricSuiteReport:
    """Sampled metric-axiom checks for all eight functionals.

    Non-negativity, vanishing on the diagonal, and symmetry are sampled
    for every functional; the triangle inequality is sampled only for the
    functionals that are actual metrics. The known qutrit counterexample
    is replayed to confirm that the angle and Bures-style functionals of
    the superfidelity do violate the triangle inequality.
    """
    from . import states

    nonneg = ident = sym = 0
    tri = {fid: 0 for fid in TRIANGLE_SAFE_IDS}
    for i in range(n_trials):
        rng = states.trial_rng(seed, i)
        rho = states.random_mixed(d, rng)
        sigma = states.random_mixed(d, rng)
        tau = states.random_mixed(d, rng)
        for fid in FUNCTIONAL_IDS:
            v = metric_value(fid, rho, sigma)
            if v < 0:
                nonneg += 1
            # The functionals amplify a 1 - eps fidelity error to sqrt(eps),
            # so the diagonal check tolerance is the square root of the
            # measure tolerance.
            if metric_value(fid, rho, rho) > 1e-5:
                ident += 1
            if abs(v - metric_value(fid, sigma, rho)) > 1e-9:
                sym += 1
        for fid in TRIANGLE_SAFE_IDS:
            _, _, holds = triangle_check(fid, rho, sigma, tau)
            if not holds:
                tri[fid] += 1

    rho3, sigma3, tau3 = states.triangle_violation_triple()
    confirmed = True
    for fid in ("A_FN", "B_FN"):
        _, _, holds = triangle_check(fid, rho3, sigma3, tau3)
        if holds:
            confirmed = False
    _, _, holds = triangle_check("C_FN", rho3, sigma3, tau3)
    if not holds:
        confirmed = False

    return MetricSuiteReport(
        d=d,
        n_trials=n_trials,
        seed=seed,
        nonneg_violations=nonneg,
        identity_violations=ident,
        symmetry_violations=sym,
        triangle_violations=tri,
        counterexample_confirmed=confirmed,
    )


def _kernel_entry(kernel_id: str, rho, sigma) -> float:
    if kernel_id == "C2_FN":
        return 1.0 - measures.fidelity_n(rho, sigma)
    if kernel_id == "B2_F":
        return 2.0 - 2.0 * float(np.sqrt(measures.fidelity_uj(rho, sigma)))
    if kernel_id == "C2_F":
        return 1.0 - measures.fidelity_uj(rho, sigma)
    if kernel_id == "H2":
        return 2.0 - 2.0 * root_overlap(rho, sigma)
    if kernel_id == "modBures2":
        return 2.0 * (1.0 - measures.fidelity_n(rho, sigma))
    raise ValueError(f"unknown kernel {kernel_id!r}; expected {KERNEL_IDS}")


def kernel_matrix(kernel_id: str, states) -> np.ndarray:
    """Symmetric kernel matrix K[i, j] over a list of states."""
    n = len(states)
    k = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            k[i, j] = k[j, i] = _kernel_entry(kernel_id, states[i], states[j])
    return k


@dataclass
class KernelTestReport:
    kernel_id: str
    n: int
    trials: int
    max_quadratic_form: float
    passed: bool
    worst_coeffs: np.ndarray
    seed: int


def schoenberg_kernel_test(
    kernel_id: str, states, trials: int = 10_000, seed: int = 0
) -> KernelTestReport:
    """Stress the zero-sum quadratic-form condition of Schoenberg's theorem.

    Draws ``trials`` random real coefficient vectors, projects each to
    sum(c) = 0 and unit norm, and records the maximum of c^T K c. On top
    of the random draws, the exact maximizer over the zero-sum sphere (the
    top eigenvector of the projected kernel) is evaluated directly, so a
    positive direction cannot hide between samples.
    """
    n = len(states)
    if n < 2:
        raise TooFewStates(f"need at least 2 states, got {n}")
    k = kernel_matrix(kernel_id, states)
    rng = np.random.default_rng(seed)

    c = rng.standard_normal((trials, n))
    c -= c.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(c, axis=1)
    c = c[norms > 0] / norms[norms > 0, None]
    forms = np.einsum("ti,ij,tj->t", c, k, c)
    worst_idx = int(np.argmax(forms))
    worst_val = float(forms[worst_idx])
    worst_c = c[worst_idx]

    # Exact maximum of the form on {sum c = 0, |c| = 1}: top eigenpair of
    # the kernel compressed to the zero-sum subspace.
    proj = np.eye(n) - np.full((n, n), 1.0 / n)
    vals, vecs = np.linalg.eigh(proj @ k @ proj)
    # Walk down from the top eigenvector, skipping the all-ones null
    # direction (it centers to numerical dust, not a usable direction).
    for col in range(n - 1, -1, -1):
        top = vecs[:, col] - vecs[:, col].mean()
        nrm = np.linalg.norm(top)
        if nrm > 1e-8:
            top /= nrm
            val = float(top @ k @ top)
            if val > worst_val:
                worst_val, worst_c = val, top
            break

    return KernelTestReport(
        kernel_id=kernel_id,
        n=n,
        trials=trials,
        max_quadratic_form=worst_val,
        passed=worst_val <= KERNEL_FORM_TOL,
        worst_coeffs=worst_c,
        seed=seed,
    )
