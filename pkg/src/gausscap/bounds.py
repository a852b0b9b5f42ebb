"""Capacity bounds for phase-insensitive bosonic Gaussian channels.

Every closed-form bound is exposed as a scalar function, the per-channel
report builders collect them with applicability flags, and a numerical
coherent-information estimator on thermal probes provides an independent
check of the degradable-extension formulas. All values are in bits; raw
bound values may be negative, the clamped value max(raw, 0) is what bounds
the capacity.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    GaussianChannel,
    ParamDomainError,
    PhaseInsensitiveParams,
    apply,
    extended_attenuator_pair,
    tensor_with_identity,
)
from .symplectic import (
    GaussianState,
    bosonic_entropy,
    direct_sum,
    thermal_cov,
    thermal_state,
    two_mode_squeezed_cov,
)

__all__ = [
    "OracleDivergedError",
    "InfeasibleDecompositionError",
    "BoundEntry",
    "BoundReport",
    "CoherentInfoEstimate",
    "DecompositionWitness",
    "DecompositionBound",
    "EntangledFlagResult",
    "additive_lower",
    "additive_naj",
    "additive_plob",
    "additive_flagged_extension",
    "amplifier_lower",
    "amplifier_plob",
    "amplifier_naj",
    "amplifier_flagged_extension",
    "beta_tilde",
    "attenuator_lower",
    "attenuator_plob",
    "attenuator_rosati",
    "attenuator_extension",
    "bounds_additive",
    "bounds_amplifier",
    "bounds_attenuator",
    "bounds_report",
    "coherent_info_thermal",
    "combined_decomposition_bound",
    "entangled_flag_coherent_info",
    "entangled_flag_attenuator_bound",
    "golden_section_minimize",
]

LN2 = math.log(2.0)

ORACLE_DEFAULT_M = 1e6
ORACLE_DIVERGENCE_GAP = 1e-2
ORACLE_DIVERGENCE_M = 1e5


class OracleDivergedError(RuntimeError):
    """Coherent-information estimate failed to converge in the probe energy."""


class InfeasibleDecompositionError(RuntimeError):
    """No completely positive two-stage decomposition found on the grid."""


# ---------------------------------------------------------------------------
# Closed forms: additive Gaussian noise (inverse temperature beta)
# ---------------------------------------------------------------------------


def additive_lower(beta: float) -> float:
    """Raw one-shot coherent information on an infinite-temperature input."""
    _check_beta(beta)
    return math.log2(beta) - 1.0 / LN2


def additive_naj(beta: float) -> float:
    """Raw data-processing bound log2(beta - 1); -inf where it clamps to 0."""
    _check_beta(beta)
    return math.log2(beta - 1.0) if beta > 1.0 else float("-inf")


def additive_plob(beta: float) -> float:
    """Two-way assisted capacity bound for additive Gaussian noise."""
    _check_beta(beta)
    return math.log2(beta) - 1.0 / LN2 + 1.0 / (beta * LN2)


def additive_flagged_extension(beta: float) -> float:
    """Capacity of the degradable flagged extension of additive noise."""
    _check_beta(beta)
    return (
        math.log2(beta)
        - 1.0 / LN2
        + 2.0 * bosonic_entropy(math.sqrt(1.0 + 1.0 / beta**2))
    )


def _check_beta(beta: float):
    if beta <= 0:
        raise ParamDomainError(f"need beta > 0, got {beta}")


# ---------------------------------------------------------------------------
# Closed forms: thermal amplifier (gain g, environment photon number N)
# ---------------------------------------------------------------------------


def amplifier_lower(g: float, N: float) -> float:
    """Raw one-shot coherent information on an infinite-temperature input."""
    _check_amp(g, N)
    return math.log2(g / (g - 1.0)) - bosonic_entropy(2.0 * N + 1.0)


def amplifier_plob(g: float, N: float) -> float:
    """Two-way assisted capacity bound for the thermal amplifier."""
    _check_amp(g, N)
    return (N + 1.0) * math.log2(g) - math.log2(g - 1.0) - bosonic_entropy(2.0 * N + 1.0)


def beta_tilde(g: float, N: float) -> float:
    """Inverse temperature of the additive factor in amplifier = additive o
    quantum-limited amplifier; defined for g > 1 and N > 0."""
    _check_amp(g, N)
    if N == 0:
        raise ParamDomainError("additive-factor route needs N > 0")
    return 1.0 / ((g - 1.0) * N)


def amplifier_naj(g: float, N: float) -> float:
    """Raw data-processing bound through the additive factor."""
    return additive_naj(beta_tilde(g, N))


def amplifier_flagged_extension(g: float, N: float) -> float:
    """Flagged-extension bound applied to the additive factor."""
    return additive_flagged_extension(beta_tilde(g, N))


def _check_amp(g: float, N: float):
    if g <= 1.0 or N < 0:
        raise ParamDomainError(f"need g > 1 and N >= 0, got {g}, {N}")


# ---------------------------------------------------------------------------
# Closed forms: thermal attenuator (transmissivity eta, photon number N)
# ---------------------------------------------------------------------------


def attenuator_lower(eta: float, N: float) -> float:
    """Raw one-shot coherent information on an infinite-temperature input."""
    _check_att(eta, N)
    return math.log2(eta / (1.0 - eta)) - bosonic_entropy(2.0 * N + 1.0)


def attenuator_plob(eta: float, N: float) -> float:
    """Two-way assisted capacity bound for the thermal attenuator."""
    _check_att(eta, N)
    return (
        -math.log2(1.0 - eta)
        - N * math.log2(eta)
        - bosonic_entropy(2.0 * N + 1.0)
    )


def attenuator_rosati(eta: float, N: float) -> float | None:
    """Weak-degradability bound via a zero-temperature attenuator of
    transmissivity eta - N(1-eta); None where that transmissivity is not
    positive."""
    _check_att(eta, N)
    t = eta - N * (1.0 - eta)
    if t <= 0.0:
        return None
    return math.log2(t / ((N + 1.0) * (1.0 - eta)))


def attenuator_extension(eta: float, N: float) -> float:
    """Capacity of the degradable two-mode extension of the attenuator.

    Valid as a capacity (and hence as a bound on the attenuator) for
    eta > 1/2, where the extension is degradable; the formula itself is
    defined on all of (0, 1).
    """
    _check_att(eta, N)
    return (
        math.log2(eta / (1.0 - eta))
        + bosonic_entropy((1.0 - eta) * (2.0 * N + 1.0) + eta)
        - bosonic_entropy(eta * (2.0 * N + 1.0) + 1.0 - eta)
    )


def _check_att(eta: float, N: float):
    if not 0.0 < eta < 1.0 or N < 0:
        raise ParamDomainError(f"need 0 < eta < 1 and N >= 0, got {eta}, {N}")


# ---------------------------------------------------------------------------
# Bound reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    """One named bound value: raw (possibly negative), applicability, note."""

    raw: float
    applicable: bool = True
    note: str = ""

    @property
    def clamped(self) -> float:
        return max(self.raw, 0.0)


@dataclass(frozen=True)
class BoundReport:
    """Named collection of bound values for one channel.

    Entries are keyed by bound name ("lower", "naj", "plob", "rosati",
    "extension", "combined"); "combined" is the minimum over the applicable
    upper bounds, clamped at zero.
    """

    family: str
    params: dict
    entries: dict

    def __getitem__(self, name: str) -> BoundEntry:
        return self.entries[name]

    @property
    def combined(self) -> float:
        return self.entries["combined"].clamped

    def upper_entries(self) -> dict:
        return {
            k: v
            for k, v in self.entries.items()
            if k not in ("lower", "combined")
        }

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "entries": {
                name: {
                    "raw": entry.raw,
                    "clamped": entry.clamped,
                    "applicable": entry.applicable,
                    "note": entry.note,
                }
                for name, entry in self.entries.items()
            },
        }


def _finish_report(family: str, params: dict, entries: dict) -> BoundReport:
    uppers = [
        e.clamped
        for name, e in entries.items()
        if name != "lower" and e.applicable and not math.isnan(e.raw)
    ]
    entries["combined"] = BoundEntry(
        min(uppers), True, "minimum over the applicable upper bounds"
    )
    return BoundReport(family, params, entries)


def bounds_additive(beta: float) -> BoundReport:
    """All bounds for additive Gaussian noise with inverse temperature beta."""
    _check_beta(beta)
    entries = {
        "lower": BoundEntry(
            additive_lower(beta),
            True,
            "one-shot coherent information, infinite-temperature input",
        ),
        "naj": BoundEntry(
            additive_naj(beta), True, "data processing, additive-noise route"
        ),
        "plob": BoundEntry(
            additive_plob(beta), True, "two-way assisted capacity bound"
        ),
        "extension": BoundEntry(
            additive_flagged_extension(beta),
            True,
            "degradable flagged-extension capacity",
        ),
    }
    return _finish_report("additive", {"beta": beta}, entries)


def bounds_amplifier(g: float, N: float) -> BoundReport:
    """All bounds for the thermal amplifier with gain g and photon number N.

    For N = 0 the additive-factor route degenerates; those entries are marked
    inapplicable and the two-way bound already matches the lower bound.
    """
    _check_amp(g, N)
    entries = {
        "lower": BoundEntry(
            amplifier_lower(g, N),
            True,
            "one-shot coherent information, infinite-temperature input",
        ),
        "plob": BoundEntry(
            amplifier_plob(g, N), True, "two-way assisted capacity bound"
        ),
    }
    if N > 0:
        bt = beta_tilde(g, N)
        entries["naj"] = BoundEntry(
            amplifier_naj(g, N),
            True,
            f"data processing through the additive factor (beta={bt:.6g})",
        )
        entries["extension"] = BoundEntry(
            amplifier_flagged_extension(g, N),
            True,
            f"flagged-extension bound on the additive factor (beta={bt:.6g})",
        )
    else:
        entries["naj"] = BoundEntry(
            float("nan"), False, "additive-factor route undefined at N = 0"
        )
        entries["extension"] = BoundEntry(
            float("nan"), False, "additive-factor route undefined at N = 0"
        )
    return _finish_report("amplifier", {"g": g, "N": N}, entries)


def bounds_attenuator(eta: float, N: float) -> BoundReport:
    """All bounds for the thermal attenuator with transmissivity eta and
    photon number N."""
    _check_att(eta, N)
    rosati = attenuator_rosati(eta, N)
    entries = {
        "lower": BoundEntry(
            attenuator_lower(eta, N),
            True,
            "one-shot coherent information, infinite-temperature input",
        ),
        "plob": BoundEntry(
            attenuator_plob(eta, N), True, "two-way assisted capacity bound"
        ),
        "rosati": BoundEntry(
            float("nan") if rosati is None else rosati,
            rosati is not None,
            "weak-degradability data processing to a pure-loss channel",
        ),
        "extension": BoundEntry(
            attenuator_extension(eta, N),
            eta > 0.5,
            "degradable two-mode extension capacity (valid for eta > 1/2)",
        ),
    }
    return _finish_report("attenuator", {"eta": eta, "N": N}, entries)


def bounds_report(family: str, **params) -> BoundReport:
    """Dispatch to the per-family report builder by family name."""
    if family == "additive":
        return bounds_additive(params["beta"])
    if family == "amplifier":
        return bounds_amplifier(params["g"], params["N"])
    if family == "attenuator":
        return bounds_attenuator(params["eta"], params["N"])
    raise ParamDomainError(f"unknown channel family {family!r}")


# ---------------------------------------------------------------------------
# Numerical coherent-information oracle on thermal probes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoherentInfoEstimate:
    """Coherent-information estimate at finite probe energy.

    convergence_gap is |value(M) - value(M/10)|; it is always reported so the
    caller can judge how far from the infinite-energy limit the value sits.
    """

    value: float
    m_used: float
    convergence_gap: float


def coherent_info_thermal(
    channel: GaussianChannel,
    M: float = ORACLE_DEFAULT_M,
    complement: GaussianChannel | None = None,
) -> CoherentInfoEstimate:
    """Coherent information of a single-mode-input channel on a thermal probe.

    With `complement` given, evaluates S(channel output) minus S(complement
    output) on the thermal state with photon number M. Without it, purifies
    the probe with a two-mode squeezed state and uses S(channel output) minus
    S(joint output of channel tensor identity), which equals the entropy of
    the environment by purity.

    Raises:
        OracleDivergedError: if the convergence gap exceeds 1e-2 at M >= 1e5,
            the signature of a mis-specified channel pair.
    """
    if channel.n_in != 1:
        raise ParamDomainError("thermal-probe estimator needs a one-mode input")
    if M < 1.0:
        raise ParamDomainError(f"need probe photon number M >= 1, got {M}")
    if complement is not None and complement.n_in != 1:
        raise ParamDomainError("complement channel must take one mode")

    def one(m: float) -> float:
        direct = apply(channel, thermal_state(m))
        if complement is not None:
            other = apply(complement, thermal_state(m))
            return direct.entropy() - other.entropy()
        joint = tensor_with_identity(channel, 1, side="right")
        probe = GaussianState(
            np.zeros(4), two_mode_squeezed_cov(m)
        )
        return direct.entropy() - apply(joint, probe).entropy()

    value = one(M)
    gap = abs(value - one(M / 10.0))
    if M >= ORACLE_DIVERGENCE_M and gap > ORACLE_DIVERGENCE_GAP:
        raise OracleDivergedError(
            f"convergence gap {gap:.3e} at M={M:g}; channel pair is suspect"
        )
    return CoherentInfoEstimate(value, M, gap)


# ---------------------------------------------------------------------------
# Combined bound over two-stage data-processing decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionWitness:
    """Which decomposition achieved the combined bound."""

    kind: str  # "direct", "amplifier_first" or "amplifier_last"
    allocation: str = ""  # "min_noise_first" / "min_noise_last" for two-stage
    stage1: PhaseInsensitiveParams | None = None
    stage2: PhaseInsensitiveParams | None = None

    def describe(self) -> str:
        if self.kind == "direct":
            return "direct bounds on the target channel"
        return (
            f"{self.kind}, {self.allocation}: "
            f"stage1 (tau={self.stage1.tau:.6g}, y={self.stage1.y:.6g}) then "
            f"stage2 (tau={self.stage2.tau:.6g}, y={self.stage2.y:.6g})"
        )


@dataclass(frozen=True)
class DecompositionBound:
    value: float
    witness: DecompositionWitness


def _min_upper_params(p: PhaseInsensitiveParams) -> float:
    """Best (smallest) clamped upper bound on a phase-insensitive channel.

    Uses the same entries and applicability rules as the report builders,
    without building the reports (this sits in the decomposition scan's
    inner loop).
    """
    tau, y = p.tau, p.y
    if abs(tau - 1.0) <= 1e-12:
        if y <= 1e-12:
            return float("inf")  # identity stage carries no bound
        beta = 2.0 / y
        return min(
            max(0.0, additive_naj(beta)),
            max(0.0, additive_plob(beta)),
            max(0.0, additive_flagged_extension(beta)),
        )
    if tau < 1.0:
        N = max(0.0, (y / (1.0 - tau) - 1.0) / 2.0)
        vals = [max(0.0, attenuator_plob(tau, N))]
        rosati = attenuator_rosati(tau, N)
        if rosati is not None:
            vals.append(max(0.0, rosati))
        if tau > 0.5:
            vals.append(max(0.0, attenuator_extension(tau, N)))
        return min(vals)
    N = max(0.0, (y / (tau - 1.0) - 1.0) / 2.0)
    vals = [max(0.0, amplifier_plob(tau, N))]
    if N > 0:
        vals.append(max(0.0, amplifier_naj(tau, N)))
        vals.append(max(0.0, amplifier_flagged_extension(tau, N)))
    return min(vals)


def _stage_pair(target, gain, kind, allocation):
    """Stage parameters for one decomposition candidate, or None if the
    noise split is not completely positive."""
    if kind == "amplifier_first":
        tau1, tau2 = gain, target.tau / gain
    else:
        tau1, tau2 = target.tau / gain, gain
    if allocation == "min_noise_first":
        y1 = abs(1.0 - tau1)
        y2 = target.y - tau2 * y1
        if y2 < abs(1.0 - tau2) - 1e-12:
            return None
        y2 = max(y2, abs(1.0 - tau2))
    else:
        y2 = abs(1.0 - tau2)
        y1 = (target.y - y2) / tau2
        if y1 < abs(1.0 - tau1) - 1e-12:
            return None
        y1 = max(y1, abs(1.0 - tau1))
    return (
        PhaseInsensitiveParams(tau1, y1),
        PhaseInsensitiveParams(tau2, y2),
    )


def golden_section_minimize(f, a: float, b: float, tol: float = 1e-6, max_iter: int = 200):
    """Deterministic golden-section minimum of f on [a, b]; returns (x, f(x))."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    x = x1 if f1 <= f2 else x2
    return x, min(f1, f2)


def combined_decomposition_bound(
    target: PhaseInsensitiveParams,
    grid: int = 200,
    gain_max: float = 50.0,
) -> DecompositionBound:
    """Best upper bound over two-stage attenuator/amplifier decompositions.

    Every candidate writes the target as amplifier-then-attenuator or
    attenuator-then-amplifier at the (tau, y) level, parametrized by the
    amplifier gain; the added noise is allocated by putting the minimum
    CP-allowed noise on one stage and the remainder on the other, both ways.
    Each feasible candidate bounds the target by the smaller of the two
    stages' best direct upper bounds; the direct bounds on the target itself
    enter as the trivial decomposition, so the result never exceeds them.
    """
    if grid < 2:
        raise ParamDomainError(f"need at least 2 grid points, got {grid}")
    best = DecompositionBound(_min_upper_params(target), DecompositionWitness("direct"))
    if not math.isfinite(best.value):
        raise InfeasibleDecompositionError(
            "target admits no finite direct bound; is it the identity?"
        )

    gain_lo = max(1.0, target.tau) * (1.0 + 1e-4)
    gain_hi = max(1.0, target.tau) * gain_max
    gains = np.geomspace(gain_lo, gain_hi, grid)

    for kind in ("amplifier_first", "amplifier_last"):
        for allocation in ("min_noise_first", "min_noise_last"):

            def value_at(gain: float) -> float:
                stages = _stage_pair(target, gain, kind, allocation)
                if stages is None:
                    return float("inf")
                return min(_min_upper_params(stages[0]), _min_upper_params(stages[1]))

            values = [value_at(g) for g in gains]
            i = int(np.argmin(values))
            if not math.isfinite(values[i]):
                continue
            lo = gains[max(i - 1, 0)]
            hi = gains[min(i + 1, grid - 1)]
            g_best, v_best = golden_section_minimize(
                lambda lg: value_at(math.exp(lg)), math.log(lo), math.log(hi)
            )
            g_best = math.exp(g_best)
            if min(v_best, values[i]) < best.value:
                gain = g_best if v_best <= values[i] else gains[i]
                stages = _stage_pair(target, gain, kind, allocation)
                best = DecompositionBound(
                    min(v_best, values[i]),
                    DecompositionWitness(kind, allocation, stages[0], stages[1]),
                )
    return best


# ---------------------------------------------------------------------------
# Entangled-flag variant of the extended attenuator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntangledFlagResult:
    value: float
    best_tau: float
    m_used: float


def entangled_flag_coherent_info(
    eta: float, N: float, tau: float, M: float = ORACLE_DEFAULT_M
) -> float:
    """Coherent information of the attenuator extension whose flag ancilla
    comes from a two-mode squeezed state of occupancy tau, on a thermal
    probe of energy M.

    The second half of the flag pair never meets the environment, so the
    complement is the exchanged-transmissivity extension fed the probe and a
    thermal flag of the same occupancy. tau = 0 is the vacuum-flag case.
    """
    if not 0.5 < eta < 1.0 or N < 0 or tau < 0:
        raise ParamDomainError(
            f"need 1/2 < eta < 1, N >= 0 and tau >= 0, got {eta}, {N}, {tau}"
        )
    forward = tensor_with_identity(extended_attenuator_pair(eta, N), 1, side="right")
    backward = extended_attenuator_pair(1.0 - eta, N)
    direct_in = GaussianState(
        np.zeros(6), direct_sum(thermal_cov(M), two_mode_squeezed_cov(tau))
    )
    comp_in = GaussianState(np.zeros(4), direct_sum(thermal_cov(M), thermal_cov(tau)))
    return apply(forward, direct_in).entropy() - apply(backward, comp_in).entropy()


def entangled_flag_attenuator_bound(
    eta: float,
    N: float,
    tau_max: float = 5.0,
    M: float = ORACLE_DEFAULT_M,
    tol: float = 1e-4,
) -> EntangledFlagResult:
    """Extension bound minimized over the entangled-flag occupancy.

    Minimizes entangled_flag_coherent_info over tau in [0, tau_max] by
    golden section; tau = 0 recovers the vacuum-flag extension, so the
    result never exceeds that bound.
    """
    if not 0.5 < eta < 1.0 or N < 0:
        raise ParamDomainError(f"need 1/2 < eta < 1 and N >= 0, got {eta}, {N}")

    def value_at(tau: float) -> float:
        return entangled_flag_coherent_info(eta, N, tau, M)

    tau_best, v_best = golden_section_minimize(value_at, 0.0, tau_max, tol=tol)
    v_zero = value_at(0.0)
    if v_zero <= v_best:
        tau_best, v_best = 0.0, v_zero
    return EntangledFlagResult(v_best, tau_best, M)
