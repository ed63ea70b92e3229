"""Trace-distance bounds, conjecture scans, and property suites.

The superfidelity FN bounds the trace distance D from both sides:

* upper: D <= sqrt(r/2) * sqrt(1 - FN) with r = rank(rho - sigma), tight
  on isospectral permutation pairs;
* lower (proved): D >= 1 - sqrt(FN);
* lower (conjectured): D >= 1 - FN; violations of this one are reported
  as CONJECTURE-class findings, never as errors.

Alongside the classic Fuchs-van de Graaf chain 1 - sqrt(F) <= D <=
sqrt(1 - F) and the strengthened 1 - F <= D for qubit or pure pairs.

The suites at the bottom (concavity, supermultiplicativity, pinching,
Jozsa axioms) are sampled numerical checks of the analytic properties;
each derives its per-trial generator from (master seed, trial index), so
results do not depend on execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg, measures, states
from .exceptions import DimMismatch

SLACK = 1e-9

CONJECTURE_BOUND_IDS = ("lower_FN_conj",)


@dataclass
class BoundReport:
    """Every bound relation evaluated on one pair of states."""

    pair_id: str
    d: int
    D: float
    FN: float
    F: float
    rank_diff: int
    upper_FN: float
    upper_F: float
    lower_F: float
    lower_FN_conj: float
    lower_FN_weak: float
    lower_F_strong: float | None
    violations: list[str] = field(default_factory=list)
    conjecture_violations: list[str] = field(default_factory=list)


def bound_report(rho, sigma, pair_id: str = "", slack: float = SLACK) -> BoundReport:
    """Evaluate the full bound chain on a pair of states.

    The strengthened lower bound 1 - F <= D is only checked when d = 2 or
    either state is pure (the regimes where it is a theorem).
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise DimMismatch(f"shapes {rho.shape} and {sigma.shape} differ")
    d = rho.shape[0]

    dist = measures.trace_distance(rho, sigma)
    fn = measures.fidelity_n(rho, sigma)
    f = measures.fidelity_uj(rho, sigma)
    r = linalg.rank_of(linalg.hermitize(rho - sigma))

    upper_fn = float(np.sqrt(r / 2.0) * np.sqrt(max(0.0, 1.0 - fn)))
    upper_f = float(np.sqrt(max(0.0, 1.0 - f)))
    lower_f = 1.0 - float(np.sqrt(f))
    lower_fn_conj = 1.0 - fn
    lower_fn_weak = 1.0 - float(np.sqrt(fn))

    pure_or_qubit = d == 2 or states.purity(rho) > 1.0 - 1e-10 or states.purity(
        sigma
    ) > 1.0 - 1e-10
    lower_f_strong = (1.0 - f) if pure_or_qubit else None

    violations = []
    conj = []
    if dist > upper_fn + slack:
        violations.append("upper_FN")
    if dist > upper_f + slack:
        violations.append("upper_F")
    if dist < lower_f - slack:
        violations.append("lower_F")
    if dist < lower_fn_weak - slack:
        violations.append("lower_FN_weak")
    if lower_f_strong is not None and dist < lower_f_strong - slack:
        violations.append("lower_F_strong")
    if dist < lower_fn_conj - slack:
        conj.append("lower_FN_conj")

    return BoundReport(
        pair_id=pair_id,
        d=d,
        D=dist,
        FN=fn,
        F=f,
        rank_diff=r,
        upper_FN=upper_fn,
        upper_F=upper_f,
        lower_F=lower_f,
        lower_FN_conj=lower_fn_conj,
        lower_FN_weak=lower_fn_weak,
        lower_F_strong=lower_f_strong,
        violations=violations,
        conjecture_violations=conj,
    )


# ---------------------------------------------------------------------------
# Scatter scan for the D vs 1 - FN attainable region
# ---------------------------------------------------------------------------

SCAN_MODES = ("mixed-mixed", "pure-mixed", "pure-pure")

SCATTER_COLUMNS = (
    "pair_id",
    "d",
    "one_minus_fn",
    "trace_distance",
    "rank_diff",
    "purity_rho",
    "purity_sigma",
    "mode",
)


@dataclass
class ScatterRecord:
    pair_id: str
    d: int
    one_minus_fn: float
    trace_distance: float
    rank_diff: int
    purity_rho: float
    purity_sigma: float
    mode: str

    def row(self) -> tuple:
        return (
            self.pair_id,
            self.d,
            self.one_minus_fn,
            self.trace_distance,
            self.rank_diff,
            self.purity_rho,
            self.purity_sigma,
            self.mode,
        )


@dataclass
class ScanSummary:
    d: int
    n_pairs: int
    mode: str
    seed: int
    conjecture_violations: int
    absolute_bound_violations: int
    worst_conjecture_margin: float
    max_absolute_bound_ratio: float


def _scan_pair(d: int, mode: str, rng) -> tuple[np.ndarray, np.ndarray]:
    if mode == "mixed-mixed":
        return states.random_mixed(d, rng), states.random_mixed(d, rng)
    if mode == "pure-mixed":
        return states.random_pure(d, rng), states.random_mixed(d, rng)
    if mode == "pure-pure":
        return states.random_pure(d, rng), states.random_pure(d, rng)
    raise ValueError(f"unknown mode {mode!r}; expected one of {SCAN_MODES}")


def conjecture_scan(
    d: int,
    n_pairs: int,
    seed: int = 0,
    mode: str = "mixed-mixed",
    extra_pairs=(),
) -> tuple[ScanSummary, list[ScatterRecord]]:
    """Sample random pairs, record (1 - FN, D, rank) samples, and count
    violations of the conjectured lower bound D >= 1 - FN and of the
    absolute upper bound sqrt(d/2) sqrt(1 - FN).

    ``extra_pairs`` lets a caller append explicit state pairs (e.g. the
    saturating construction) to the scan.
    """
    records = []
    n_conj = 0
    n_abs = 0
    worst_margin = np.inf
    max_ratio = 0.0

    def handle(rho, sigma, pair_id):
        nonlocal n_conj, n_abs, worst_margin, max_ratio
        fn = measures.fidelity_n(rho, sigma)
        dist = measures.trace_distance(rho, sigma)
        r = linalg.rank_of(linalg.hermitize(rho - sigma))
        records.append(
            ScatterRecord(
                pair_id=pair_id,
                d=d,
                one_minus_fn=1.0 - fn,
                trace_distance=dist,
                rank_diff=r,
                purity_rho=states.purity(rho),
                purity_sigma=states.purity(sigma),
                mode=mode,
            )
        )
        margin = dist - (1.0 - fn)
        worst_margin = min(worst_margin, margin)
        if margin < -SLACK:
            n_conj += 1
        absolute = np.sqrt(d / 2.0) * np.sqrt(max(0.0, 1.0 - fn))
        if absolute > 0:
            max_ratio = max(max_ratio, dist / absolute)
        if dist > absolute + SLACK:
            n_abs += 1

    for i in range(n_pairs):
        rng = states.trial_rng(seed, i)
        rho, sigma = _scan_pair(d, mode, rng)
        handle(rho, sigma, f"{mode}-{i}")
    for j, (rho, sigma) in enumerate(extra_pairs):
        handle(rho, sigma, f"extra-{j}")

    summary = ScanSummary(
        d=d,
        n_pairs=n_pairs + len(extra_pairs),
        mode=mode,
        seed=seed,
        conjecture_violations=n_conj,
        absolute_bound_violations=n_abs,
        worst_conjecture_margin=float(worst_margin),
        max_absolute_bound_ratio=float(max_ratio),
    )
    return summary, records


# ---------------------------------------------------------------------------
# Pinching search
# ---------------------------------------------------------------------------

@dataclass
class PinchingReport:
    d: int
    n_trials: int
    seed: int
    min_margin: float
    min_commuting_margin: float
    violations: int


def _random_composition(d: int, rng) -> list[int]:
    """Random composition of d: random block sizes of a complete projector
    partition."""
    k = int(rng.integers(1, d + 1))
    if k == 1:
        return [d]
    cuts = np.sort(rng.choice(np.arange(1, d), size=k - 1, replace=False))
    edges = np.concatenate(([0], cuts, [d]))
    return list(np.diff(edges))


def _block_mask(d: int, blocks: list[int]) -> np.ndarray:
    mask = np.zeros((d, d), dtype=bool)
    start = 0
    for b in blocks:
        mask[start : start + b, start : start + b] = True
        start += b
    return mask


def _fn_raw(a: np.ndarray, b: np.ndarray) -> float:
    """Superfidelity without the [0,1] clamp, for margin arithmetic."""
    overlap = float(np.sum(a.conj() * b).real)
    pa = float(np.sum(a.conj() * a).real)
    pb = float(np.sum(b.conj() * b).real)
    return overlap + np.sqrt(max(0.0, 1 - pa)) * np.sqrt(max(0.0, 1 - pb))


def pinching_search(d: int, n_trials: int, seed: int = 0) -> PinchingReport:
    """Search for a violation of FN(pinched pair) >= FN(pair).

    Each trial draws a random state pair and a complete orthogonal
    projector set (Haar unitary blocks with a random rank composition) and
    evaluates the margin FN(after) - FN(before). The commuting special
    case is run alongside each trial with the projectors taken from the
    eigenbasis of rho, where the inequality is a theorem.
    """
    min_margin = np.inf
    min_commuting = np.inf
    violations = 0
    for i in range(n_trials):
        rng = states.trial_rng(seed, i)
        rho = states.random_mixed(d, rng)
        sigma = states.random_mixed(d, rng)
        blocks = _random_composition(d, rng)
        mask = _block_mask(d, blocks)
        fn_before = _fn_raw(rho, sigma)

        # Pinching in the Haar basis; FN is unitarily invariant, so work in
        # the rotated frame where the projectors are block diagonal.
        u = states.random_unitary(d, rng)
        a = u.conj().T @ rho @ u
        b = u.conj().T @ sigma @ u
        margin = _fn_raw(np.where(mask, a, 0), np.where(mask, b, 0)) - fn_before
        min_margin = min(min_margin, margin)
        if margin < -SLACK:
            violations += 1

        # Commuting case: projectors built from the eigenbasis of rho.
        _, v = linalg.eigh(rho)
        a = v.conj().T @ rho @ v
        b = v.conj().T @ sigma @ v
        cmargin = _fn_raw(np.where(mask, a, 0), np.where(mask, b, 0)) - fn_before
        min_commuting = min(min_commuting, cmargin)
    return PinchingReport(
        d=d,
        n_trials=n_trials,
        seed=seed,
        min_margin=float(min_margin),
        min_commuting_margin=float(min_commuting),
        violations=violations,
    )


# ---------------------------------------------------------------------------
# Concavity suite
# ---------------------------------------------------------------------------

SECOND_DIFF_STEP = 1e-4
SECOND_DIFF_TOL = 1e-4


@dataclass
class ConcavitySuiteReport:
    d: int
    n_trials: int
    seed: int
    joint_violations: int
    chord_violations: int
    second_diff_violations: int
    f_joint_violations: int  # Uhlmann-Jozsa joint concavity, d = 2 only
    worst_joint_margin: float
    worst_chord_margin: float
    max_second_diff: float


def _fn_coeff(r: np.ndarray, s: np.ndarray) -> float:
    """Superfidelity on Bloch coefficient vectors:
    r.s + sqrt(1 - |r|^2) sqrt(1 - |s|^2)."""
    return float(
        r @ s
        + np.sqrt(max(0.0, 1 - r @ r)) * np.sqrt(max(0.0, 1 - s @ s))
    )


def concavity_suite(d: int, n_trials: int, seed: int = 0) -> ConcavitySuiteReport:
    """Sampled checks of joint concavity of the superfidelity.

    Per trial: (i) the joint-concavity inequality at a random mixing
    weight; (ii) the equivalent chord inequality for the one-parameter
    restriction along the segment between the two argument pairs; (iii) a
    central second difference of that restriction at a random interior
    point. When d = 2, joint concavity of the Uhlmann-Jozsa fidelity
    itself is checked as well (it equals the superfidelity there).
    """
    joint_viol = chord_viol = sd_viol = f_viol = 0
    worst_joint = np.inf
    worst_chord = np.inf
    max_sd = -np.inf
    h = SECOND_DIFF_STEP
    for i in range(n_trials):
        rng = states.trial_rng(seed, i)
        rho1 = states.random_mixed(d, rng)
        rho2 = states.random_mixed(d, rng)
        sig1 = states.random_mixed(d, rng)
        sig2 = states.random_mixed(d, rng)
        p1 = float(rng.uniform())
        p2 = 1.0 - p1

        mixed = _fn_raw(p1 * rho1 + p2 * rho2, p1 * sig1 + p2 * sig2)
        margin = mixed - (p1 * _fn_raw(rho1, sig1) + p2 * _fn_raw(rho2, sig2))
        worst_joint = min(worst_joint, margin)
        if margin < -SLACK:
            joint_viol += 1

        # Chord form along x -> (r + x u, s + x v) on Bloch coefficients.
        r = states.to_bloch(rho1).coeffs
        u = states.to_bloch(rho2).coeffs - r
        s = states.to_bloch(sig1).coeffs
        v = states.to_bloch(sig2).coeffs - s

        def curve(x: float) -> float:
            return _fn_coeff(r + x * u, s + x * v)

        x = p2
        cmargin = curve(x) - ((1 - x) * curve(0.0) + x * curve(1.0))
        worst_chord = min(worst_chord, cmargin)
        if cmargin < -SLACK:
            chord_viol += 1

        xi = float(rng.uniform(h, 1.0 - h))
        sd = (curve(xi + h) - 2 * curve(xi) + curve(xi - h)) / (h * h)
        max_sd = max(max_sd, sd)
        if sd > SECOND_DIFF_TOL:
            sd_viol += 1

        if d == 2:
            fmixed = measures.fidelity_uj(p1 * rho1 + p2 * rho2, p1 * sig1 + p2 * sig2)
            fmargin = fmixed - (
                p1 * measures.fidelity_uj(rho1, sig1)
                + p2 * measures.fidelity_uj(rho2, sig2)
            )
            if fmargin < -SLACK:
                f_viol += 1
    return ConcavitySuiteReport(
        d=d,
        n_trials=n_trials,
        seed=seed,
        joint_violations=joint_viol,
        chord_violations=chord_viol,
        second_diff_violations=sd_viol,
        f_joint_violations=f_viol,
        worst_joint_margin=float(worst_joint),
        worst_chord_margin=float(worst_chord),
        max_second_diff=float(max_sd),
    )


# ---------------------------------------------------------------------------
# Supermultiplicativity suite
# ---------------------------------------------------------------------------

SUPERMULT_SLACK = 1e-10


@dataclass
class SupermultSuiteReport:
    d1: int
    d2: int
    n_trials: int
    n_scalar: int
    seed: int
    tensor_violations: int
    scalar_violations: int
    worst_tensor_margin: float
    worst_scalar_margin: float


def scalar_supermult_margin(a, b, c, d) -> np.ndarray:
    """Margin of the scalar inequality underlying supermultiplicativity:

    sqrt((1-ab)(1-cd)) - sqrt((1-a)(1-b)(1-c)(1-d))
                       - sqrt(ac(1-b)(1-d)) - sqrt(bd(1-a)(1-c))

    which reduces to a sum of AM-GM inequalities and is >= 0 on [0,1]^4.
    """
    a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
    return (
        np.sqrt((1 - a * b) * (1 - c * d))
        - np.sqrt((1 - a) * (1 - b) * (1 - c) * (1 - d))
        - np.sqrt(a * c * (1 - b) * (1 - d))
        - np.sqrt(b * d * (1 - a) * (1 - c))
    )


def supermult_suite(
    d1: int, d2: int, n_trials: int, seed: int = 0, n_scalar: int = 100_000
) -> SupermultSuiteReport:
    """Check FN(rho1 x rho2, sigma1 x sigma2) >= FN(rho1,sigma1) FN(rho2,sigma2)
    on random tuples, plus the underlying scalar inequality on random
    purity quadruples including the boundary values 0 and 1."""
    tensor_viol = 0
    worst_tensor = np.inf
    for i in range(n_trials):
        rng = states.trial_rng(seed, i)
        rho1 = states.random_mixed(d1, rng)
        sig1 = states.random_mixed(d1, rng)
        rho2 = states.random_mixed(d2, rng)
        sig2 = states.random_mixed(d2, rng)
        margin = _fn_raw(np.kron(rho1, rho2), np.kron(sig1, sig2)) - _fn_raw(
            rho1, sig1
        ) * _fn_raw(rho2, sig2)
        worst_tensor = min(worst_tensor, margin)
        if margin < -SUPERMULT_SLACK:
            tensor_viol += 1

    rng = np.random.default_rng(np.random.SeedSequence([seed, n_trials]))
    quad = rng.uniform(size=(n_scalar, 4))
    # Force a slice of exact boundary values into the sample.
    n_edge = min(n_scalar // 10, 1000)
    edge = rng.integers(0, 2, size=(n_edge, 4)).astype(float)
    quad[:n_edge] = np.where(rng.uniform(size=(n_edge, 4)) < 0.5, edge, quad[:n_edge])
    margins = scalar_supermult_margin(quad[:, 0], quad[:, 1], quad[:, 2], quad[:, 3])
    scalar_viol = int(np.count_nonzero(margins < -SUPERMULT_SLACK))

    return SupermultSuiteReport(
        d1=d1,
        d2=d2,
        n_trials=n_trials,
        n_scalar=n_scalar,
        seed=seed,
        tensor_violations=tensor_viol,
        scalar_violations=scalar_viol,
        worst_tensor_margin=float(worst_tensor),
        worst_scalar_margin=float(np.min(margins)),
    )


# ---------------------------------------------------------------------------
# Jozsa axiom suite and the Ozawa monotonicity demonstration
# ---------------------------------------------------------------------------

@dataclass
class AxiomSuiteReport:
    measure_id: str
    d: int
    n_trials: int
    seed: int
    range_violations: int
    distinct_pair_failures: int
    symmetry_violations: int
    unitary_violations: int
    schumacher_violations: int
    qubit_equality_violations: int  # |F - FN| check, d = 2 only

    @property
    def passed(self) -> bool:
        return not any(
            (
                self.range_violations,
                self.distinct_pair_failures,
                self.symmetry_violations,
                self.unitary_violations,
                self.schumacher_violations,
                self.qubit_equality_violations,
            )
        )


def axiom_suite(
    measure_id: str, d: int, n_trials: int, seed: int = 0
) -> AxiomSuiteReport:
    """Sampled Jozsa-axiom checks for a fidelity measure.

    Axiom 1: values in [0,1], equal to 1 at (rho, rho) within 1e-10 and
    below 1 - 1e-8 on distinct sampled pairs. Axiom 2: symmetry within
    1e-9. Axiom 3: unitary invariance within 1e-9. Axiom 4: Schumacher
    reduction <psi|rho|psi> within 1e-7 when one argument is pure (the
    eigenvalue route to F turns machine-eps noise on a rank-deficient
    argument into sqrt(eps)-scale error, so 1e-7 is the attainable
    tolerance there).
    """
    range_viol = distinct_fail = sym_viol = uni_viol = schum_viol = eq_viol = 0
    for i in range(n_trials):
        rng = states.trial_rng(seed, i)
        rho = states.random_mixed(d, rng)
        sigma = states.random_mixed(d, rng)
        val = measures.measure(measure_id, rho, sigma)
        if not (0.0 <= val <= 1.0):
            range_viol += 1
        if abs(measures.measure(measure_id, rho, rho) - 1.0) > 1e-10:
            range_viol += 1
        if val >= 1.0 - 1e-8:
            distinct_fail += 1
        if abs(val - measures.measure(measure_id, sigma, rho)) > 1e-9:
            sym_viol += 1
        u = states.random_unitary(d, rng)
        rotated = measures.measure(
            measure_id, u @ rho @ u.conj().T, u @ sigma @ u.conj().T
        )
        if abs(rotated - val) > 1e-9:
            uni_viol += 1
        psi = states.random_pure(d, rng)
        schum = float(np.sum(psi.conj() * rho).real)  # <psi|rho|psi>
        if abs(measures.measure(measure_id, rho, psi) - schum) > 1e-7:
            schum_viol += 1
        if d == 2 and abs(
            measures.fidelity_uj(rho, sigma) - measures.fidelity_n(rho, sigma)
        ) > 1e-10:
            eq_viol += 1
    return AxiomSuiteReport(
        measure_id=measure_id,
        d=d,
        n_trials=n_trials,
        seed=seed,
        range_violations=range_viol,
        distinct_pair_failures=distinct_fail,
        symmetry_violations=sym_viol,
        unitary_violations=uni_viol,
        schumacher_violations=schum_viol,
        qubit_equality_violations=eq_viol,
    )


def ozawa_monotonicity_demo() -> dict:
    """Evaluate the superfidelity on the Ozawa pair and its two partial
    traces. Discarding the first qubit raises FN to 1, discarding the
    second drops it to 0, so FN is monotone in neither direction."""
    rho, sigma = states.ozawa_pair()
    original = measures.fidelity_n(rho, sigma)
    tr1 = measures.fidelity_n(
        linalg.partial_trace(rho, (2, 2), 0), linalg.partial_trace(sigma, (2, 2), 0)
    )
    tr2 = measures.fidelity_n(
        linalg.partial_trace(rho, (2, 2), 1), linalg.partial_trace(sigma, (2, 2), 1)
    )
    return {
        "original": float(original),
        "after_tracing_qubit1": float(tr1),
        "after_tracing_qubit2": float(tr2),
        "monotone": bool(min(tr1, tr2) >= original),
    }
