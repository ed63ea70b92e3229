"""Density matrix construction, validation, and random generation.

States are plain complex numpy arrays; :func:`validate` is the single gate
that certifies the density-matrix invariants (Hermitian, unit trace, PSD
within tolerance). All stochastic constructors take an explicit seed or
Generator, so runs are bit-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .exceptions import (
    AllZeroSpectrum,
    DimMismatch,
    NotHermitian,
    NotPSD,
    TraceNotOne,
)

TRACE_TOL = 1e-10


def _rng(seed) -> np.random.Generator:
    """Accept a seed or an existing Generator (PCG64 by default)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Deterministic per-trial generator derived from (master seed, index).

    Results of a scan are then identical regardless of execution order or
    parallelism degree.
    """
    return np.random.default_rng(np.random.SeedSequence([master_seed, trial]))


def validate(m) -> np.ndarray:
    """Check the density-matrix invariants and return the matrix.

    Raises NotHermitian, TraceNotOne, or NotPSD naming the first violated
    invariant together with the offending magnitude.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    herm_dev = float(np.max(np.abs(m - m.conj().T)))
    if herm_dev > linalg.TOL_HERM:
        raise NotHermitian(f"max |m - m†| entry is {herm_dev:.3e}")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr:.12g}, deviation {abs(tr - 1.0):.3e}")
    lam_min = float(np.linalg.eigvalsh(linalg.hermitize(m))[0])
    if lam_min < -linalg.TOL_PSD:
        raise NotPSD(f"smallest eigenvalue is {lam_min:.3e}")
    return m


def purity(rho) -> float:
    """tr(rho^2)."""
    return linalg.hs_inner_real(rho, rho)


def random_mixed(d: int, seed) -> np.ndarray:
    """Random full-rank density matrix from the Ginibre ensemble.

    rho = G G† / tr(G G†) with i.i.d. standard complex Gaussian entries;
    this is the Hilbert-Schmidt-measure ensemble and is unitarily
    invariant.
    """
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_pure(d: int, seed) -> np.ndarray:
    """Random rank-1 projector |psi><psi| from a Gaussian state vector."""
    rng = _rng(seed)
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed unitary: QR of a Ginibre matrix with the phases of
    the R diagonal fixed."""
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def ozawa_pair() -> tuple[np.ndarray, np.ndarray]:
    """The two 4x4 two-qubit states of Ozawa's monotonicity counterexample:
    half the projectors onto the first and last two basis vectors."""
    rho = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
    sigma = np.diag([0.0, 0.0, 0.5, 0.5]).astype(complex)
    return rho, sigma


def triangle_violation_triple() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The qutrit triple (maximally mixed, a pure state, a fixed mixed
    state) on which the arccos- and Bures-style functionals of the
    superfidelity violate the triangle inequality."""
    rho = np.eye(3, dtype=complex) / 3
    sigma = np.diag([1.0, 0.0, 0.0]).astype(complex)
    tau = np.array(
        [
            [0.90, 0.04, 0.03],
            [0.04, 0.05, 0.02],
            [0.03, 0.02, 0.05],
        ],
        dtype=complex,
    )
    return rho, sigma, tau


def disjoint_maximally_mixed(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Maximally mixed states on disjoint d-dimensional subspaces of a
    2d-dimensional space. Their superfidelity is 1 - 1/d, approaching one
    for large d even though the states are perfectly distinguishable."""
    rho = np.zeros((2 * d, 2 * d), dtype=complex)
    sigma = np.zeros((2 * d, 2 * d), dtype=complex)
    rho[np.arange(d), np.arange(d)] = 1.0 / d
    sigma[np.arange(d, 2 * d), np.arange(d, 2 * d)] = 1.0 / d
    return rho, sigma


@dataclass(frozen=True)
class SaturatingPairSpec:
    """Recipe for an isospectral pair saturating the rank-dependent
    trace-distance upper bound.

    pattern is a length-d sequence over {1, 2} choosing lambda1 or lambda2
    for each diagonal slot; permutation is an index permutation of range(d).
    """

    d: int
    lambda1: float
    lambda2: float
    pattern: tuple[int, ...]
    permutation: tuple[int, ...]
    unitary_seed: int | None = None

    def __post_init__(self):
        if len(self.pattern) != self.d:
            raise DimMismatch(f"pattern length {len(self.pattern)} != d = {self.d}")
        if sorted(self.permutation) != list(range(self.d)):
            raise ValueError("permutation must be a bijection on range(d)")
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ValueError("lambda1, lambda2 must be nonnegative")


def saturating_pair(spec: SaturatingPairSpec) -> tuple[np.ndarray, np.ndarray]:
    """Build (U diag[L] U†, U diag[P(L)] U†) / tr(diag[L]).

    The two outputs are isospectral, so their linear entropies coincide and
    the trace distance meets sqrt(r/2) * sqrt(1 - superfidelity) exactly,
    with r the (always even) rank of the difference.
    """
    lam = {1: spec.lambda1, 2: spec.lambda2}
    diag = np.array([lam[p] for p in spec.pattern], dtype=float)
    total = diag.sum()
    if total == 0.0:
        raise AllZeroSpectrum("lambda1 = lambda2 = 0")
    permuted = diag[list(spec.permutation)]
    if spec.unitary_seed is None:
        u = np.eye(spec.d, dtype=complex)
    else:
        u = random_unitary(spec.d, spec.unitary_seed)
    rho = (u * (diag / total)) @ u.conj().T
    sigma = (u * (permuted / total)) @ u.conj().T
    return rho, sigma


# ---------------------------------------------------------------------------
# Bloch expansion over an orthonormal Hermitian basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlochExpansion:
    """Real expansion coefficients of a state over an orthonormal
    Hermitian basis (tr(v_i v_j) = delta_ij)."""

    coeffs: np.ndarray
    basis_id: str = "gellmann"
    dim: int = field(default=0)


_BASIS_CACHE: dict[int, np.ndarray] = {}


def gellmann_basis(d: int) -> np.ndarray:
    """Orthonormal Hermitian basis of d x d matrices: normalized identity
    I/sqrt(d) followed by the generalized Gell-Mann matrices scaled to
    tr(v_i v_j) = delta_ij. Shape (d*d, d, d)."""
    if d in _BASIS_CACHE:
        return _BASIS_CACHE[d]
    mats = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
            mats.append(sym)
            asym = np.zeros((d, d), dtype=complex)
            asym[j, k] = -1j / np.sqrt(2)
            asym[k, j] = 1j / np.sqrt(2)
            mats.append(asym)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        diag /= np.sqrt(l * (l + 1))
        mats.append(np.diag(diag).astype(complex))
    basis = np.stack(mats)
    _BASIS_CACHE[d] = basis
    return basis


def to_bloch(rho) -> BlochExpansion:
    """Expand a state over the Gell-Mann basis; coeffs[k] = tr(v_k rho)."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    basis = gellmann_basis(d)
    coeffs = np.real(np.einsum("kij,ji->k", basis, rho))
    return BlochExpansion(coeffs=coeffs, basis_id="gellmann", dim=d)


def from_bloch(b: BlochExpansion) -> np.ndarray:
    """Inverse of :func:`to_bloch`."""
    if b.basis_id != "gellmann":
        raise ValueError(f"unknown basis_id {b.basis_id!r}")
    basis = gellmann_basis(b.dim)
    if len(b.coeffs) != b.dim * b.dim:
        raise DimMismatch(f"expected {b.dim * b.dim} coefficients, got {len(b.coeffs)}")
    return np.einsum("k,kij->ij", np.asarray(b.coeffs, dtype=float), basis)


# ---------------------------------------------------------------------------
# JSON matrix format (shared with the CLI)
# ---------------------------------------------------------------------------

def matrix_to_json(m) -> dict:
    """Serialize a matrix as {"dim": n, "re": [[...]], "im": [[...]]}."""
    m = np.asarray(m, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the JSON matrix format; raises ValueError on malformed input."""
    try:
        d = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (d, d) or im.shape != (d, d):
        raise ValueError(
            f"entry arrays must be {d}x{d}, got re {re.shape}, im {im.shape}"
        )
    return re + 1j * im


def save_state(path, m) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(m), fh, indent=1)
        fh.write("\n")


def load_state(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
