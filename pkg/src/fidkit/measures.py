"""Scalar similarity and distance measures between density matrices.

Five measures over a pair of states:

* ``F``  -- Uhlmann-Jozsa fidelity, [tr sqrt(sqrt(rho) sigma sqrt(rho))]^2
* ``FN`` -- superfidelity, tr(rho sigma) + sqrt(1-tr rho^2) sqrt(1-tr sigma^2)
* ``FC`` -- Chen et al. fidelity, an affine transform of FN with r = 1/(d-1)
* ``Q``  -- nonlogarithmic quantum Chernoff quantity, min_s tr(rho^s sigma^(1-s))
* ``D``  -- trace distance, half the trace norm of rho - sigma

All outputs are clamped to [0, 1]; a pre-clamp excursion beyond
CLAMP_WARN_TOL emits a warning since downstream metric functionals take
square roots of 1 - value.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.optimize import minimize_scalar

from . import linalg
from .exceptions import DimMismatch, DimTooSmall, UnknownMeasure

CLAMP_WARN_TOL = 1e-8
# Tolerance in s for the Chernoff minimization.
Q_TOL = 1e-10

MEASURE_IDS = ("F", "sqrtF", "FN", "FC", "Q", "D")


def _check_pair(rho, sigma):
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"shapes {rho.shape} and {sigma.shape} differ")
    return rho, sigma


def _clamp01(value: float, name: str) -> float:
    if value < -CLAMP_WARN_TOL or value > 1.0 + CLAMP_WARN_TOL:
        warnings.warn(
            f"{name} excursion outside [0,1] before clamping: {value!r}",
            RuntimeWarning,
            stacklevel=3,
        )
    return min(max(value, 0.0), 1.0)


def fidelity_uj(rho, sigma) -> float:
    """Uhlmann-Jozsa fidelity.

    Computed as (sum_i sqrt(lambda_i))^2 for the eigenvalues of
    hermitize(sqrt(rho) sigma sqrt(rho)), clamped at zero; the hermitize
    step strips the rounding residue of the triple product.
    """
    rho, sigma = _check_pair(rho, sigma)
    sqrt_rho = linalg.matrix_sqrt_psd(rho)
    inner = linalg.hermitize(sqrt_rho @ sigma @ sqrt_rho)
    vals = linalg.eigvalsh(inner)
    total = np.sum(np.sqrt(np.clip(vals, 0.0, None)))
    return _clamp01(float(total * total), "F")


def fidelity_n(rho, sigma) -> float:
    """Superfidelity: Hilbert-Schmidt inner product plus the geometric mean
    of the two linear entropies. Needs only three inner products, no
    diagonalization."""
    rho, sigma = _check_pair(rho, sigma)
    overlap = linalg.hs_inner_real(rho, sigma)
    le_rho = max(0.0, 1.0 - linalg.hs_inner_real(rho, rho))
    le_sigma = max(0.0, 1.0 - linalg.hs_inner_real(sigma, sigma))
    return _clamp01(overlap + np.sqrt(le_rho) * np.sqrt(le_sigma), "FN")


def fidelity_n_qubit_det(rho, sigma) -> float:
    """Qubit determinant form of the superfidelity:
    tr(rho sigma) + 2 sqrt(det rho) sqrt(det sigma).

    Retained purely as a cross-check oracle for d = 2, where it coincides
    with both FN and the Uhlmann-Jozsa fidelity.
    """
    rho, sigma = _check_pair(rho, sigma)
    if rho.shape[0] != 2:
        raise DimMismatch(f"qubit form needs d = 2, got d = {rho.shape[0]}")
    overlap = linalg.hs_inner_real(rho, sigma)
    det_r = max(0.0, float(np.linalg.det(rho).real))
    det_s = max(0.0, float(np.linalg.det(sigma).real))
    return _clamp01(overlap + 2.0 * np.sqrt(det_r) * np.sqrt(det_s), "FN(det)")


def fidelity_chen(rho, sigma) -> float:
    """Chen et al. fidelity: (1-r)/2 + (1+r)/2 * FN with r = 1/(d-1)."""
    rho, sigma = _check_pair(rho, sigma)
    d = rho.shape[0]
    if d < 2:
        raise DimTooSmall(f"needs d >= 2, got d = {d}")
    r = 1.0 / (d - 1)
    return _clamp01((1 - r) / 2 + (1 + r) / 2 * fidelity_n(rho, sigma), "FC")


def _chernoff_minimand(rho, sigma, rank_tol: float | None = None):
    """Precompute the eigenbasis form of s -> tr(rho^s sigma^(1-s)).

    With eigensystems (lam, v) and (mu, w), the trace equals
    sum_ij lam_i^s mu_j^(1-s) |<v_i|w_j>|^2. Eigenvalues below the rank
    tolerance are clamped to 0 and 0^0 evaluates to 1 at the endpoints
    (continuity-from-the-interior convention).
    """
    lam, v = linalg.eigh(rho)
    mu, w = linalg.eigh(sigma)
    if rank_tol is None:
        cut_l = linalg.RANK_TOL_REL * max(lam[-1], 0.0)
        cut_m = linalg.RANK_TOL_REL * max(mu[-1], 0.0)
    else:
        cut_l = cut_m = rank_tol
    lam = np.where(lam > cut_l, lam, 0.0)
    mu = np.where(mu > cut_m, mu, 0.0)
    overlap = np.abs(v.conj().T @ w) ** 2

    def minimand(s: float) -> float:
        return float(np.power(lam, s) @ overlap @ np.power(mu, 1.0 - s))

    return minimand


def chernoff_q(rho, sigma) -> float:
    """Nonlogarithmic quantum Chernoff quantity.

    The minimand is convex in s, so the bounded Brent minimizer on [0, 1]
    finds the global minimum; the endpoints are compared explicitly since
    the bracket never evaluates them exactly.
    """
    rho, sigma = _check_pair(rho, sigma)
    minimand = _chernoff_minimand(rho, sigma)
    res = minimize_scalar(
        minimand, bounds=(0.0, 1.0), method="bounded", options={"xatol": Q_TOL}
    )
    best = min(res.fun, minimand(0.0), minimand(0.5), minimand(1.0))
    return _clamp01(best, "Q")


def trace_distance(rho, sigma) -> float:
    """Trace distance: half the sum of |eigenvalues| of rho - sigma."""
    rho, sigma = _check_pair(rho, sigma)
    return _clamp01(0.5 * linalg.trace_norm(linalg.hermitize(rho - sigma)), "D")


_DISPATCH = {
    "F": fidelity_uj,
    "sqrtF": lambda r, s: float(np.sqrt(fidelity_uj(r, s))),
    "FN": fidelity_n,
    "FC": fidelity_chen,
    "Q": chernoff_q,
    "D": trace_distance,
}


def measure(measure_id: str, rho, sigma) -> float:
    """Evaluate a measure by id; raises UnknownMeasure for bad ids."""
    try:
        fn = _DISPATCH[measure_id]
    except KeyError:
        raise UnknownMeasure(
            f"unknown measure {measure_id!r}; expected one of {MEASURE_IDS}"
        ) from None
    return fn(rho, sigma)
