"""Scenario configuration, validation and end-to-end runs.

A :class:`ScenarioConfig` bundles everything one measurement needs: the
overlap scenario, the pulses, the medium relaxation time, the analysis
time, the Stokes component, the reduced-frequency grid, and optionally a
beam splitter, an optimization frequency Omega0 and a normalization
override.  :func:`validate` checks the semantic contracts and either
raises a :class:`~kerrstokes.errors.ConfigValidationError` carrying all
problems at once or returns the config (emitting structured warnings for
non-fatal findings).  :func:`run` produces average Stokes parameters, the
fluctuation spectrum on the grid and, when Omega0 is given, the phase
optimum; the spectrum is then evaluated at the optimal phase offset.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigValidationError, ValidationIssue
from .kernel import RelaxationKernel
from .optimize import (
    PhaseOptimum,
    offset_bs_input_phase,
    offset_bs_probe_phase,
    offset_partner_phase,
    optimal_phase_bs_s01,
    optimal_phase_bs_s2,
    optimal_phase_coh_sq,
    optimal_phase_two_sq,
    optimal_phase_xpm,
    scan_phase,
)
from .pulse import GAMMA_WEAK_LIMIT, PulseSpec
from .spectra import (
    CorrelationKernel,
    SpectrumSeries,
    StokesIndex,
    kernel_bs_s01,
    kernel_bs_s2,
    kernel_coh_sq,
    kernel_two_sq,
    kernel_xpm,
    spectrum,
)
from .stokes import (
    BS_UNITARITY_TOL,
    StokesSummary,
    averages_bs,
    averages_coh_sq,
    averages_two_sq,
    averages_xpm,
)

__all__ = [
    "ScenarioKind",
    "BeamSplitter",
    "OmegaGrid",
    "ScenarioConfig",
    "ScenarioResult",
    "ValidationWarning",
    "collect_issues",
    "validate",
    "run",
]

HALF_PI = 0.5 * math.pi
BALANCE_TOL = 1e-9


class ValidationWarning(UserWarning):
    """Non-fatal scenario-level finding raised by :func:`validate`."""


class ScenarioKind(enum.Enum):
    COH_SQ = "coh_sq"        # coherent pulse overlapped with a Kerr-squeezed one
    TWO_SQ = "two_sq"        # two independently Kerr-squeezed pulses
    XPM = "xpm"              # co-propagating pulses with mutual cross-Kerr coupling
    BS_INTERF = "bs_interf"  # beam-splitter mixing plus a coherent probe


_PULSE_COUNT = {
    ScenarioKind.COH_SQ: 2,
    ScenarioKind.TWO_SQ: 2,
    ScenarioKind.XPM: 2,
    ScenarioKind.BS_INTERF: 3,
}


@dataclass(frozen=True)
class BeamSplitter:
    """Intensity reflectance / transmittance pair.

    Each coefficient must lie in [0, 1]; the lossless condition r + t = 1
    is a cross-field constraint checked by :func:`validate` and by the
    operations that consume the splitter, so that an inconsistent pair can
    still be constructed and reported.
    """

    r: float
    t: float

    def __post_init__(self):
        for name in ("r", "t"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class OmegaGrid:
    """Uniform grid of reduced frequencies Omega = omega tau_r."""

    start: float = 0.0
    stop: float = 5.0
    count: int = 512

    def __post_init__(self):
        for name in ("start", "stop"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if self.start < 0.0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.stop <= self.start:
            raise ValueError(f"stop must exceed start, got [{self.start}, {self.stop}]")
        if not isinstance(self.count, int) or self.count < 2:
            raise ValueError(f"count must be an integer >= 2, got {self.count!r}")

    def to_array(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ScenarioConfig:
    kind: ScenarioKind
    pulses: tuple[PulseSpec, ...]
    medium: RelaxationKernel
    analysis_time: float = 0.0
    stokes_index: StokesIndex = StokesIndex.S2
    omega_grid: OmegaGrid = OmegaGrid()
    beamsplitter: BeamSplitter | None = None
    omega0: float | None = None
    normalization: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, ScenarioKind):
            raise ValueError(f"kind must be a ScenarioKind, got {self.kind!r}")
        object.__setattr__(self, "pulses", tuple(self.pulses))
        for i, pulse in enumerate(self.pulses):
            if not isinstance(pulse, PulseSpec):
                raise ValueError(f"pulses[{i}] must be a PulseSpec, got {pulse!r}")
        if not isinstance(self.medium, RelaxationKernel):
            raise ValueError(f"medium must be a RelaxationKernel, got {self.medium!r}")
        if not (isinstance(self.analysis_time, (int, float)) and math.isfinite(self.analysis_time)):
            raise ValueError(f"analysis_time must be finite, got {self.analysis_time!r}")
        if not isinstance(self.stokes_index, StokesIndex):
            raise ValueError(f"stokes_index must be a StokesIndex, got {self.stokes_index!r}")
        if not isinstance(self.omega_grid, OmegaGrid):
            raise ValueError(f"omega_grid must be an OmegaGrid, got {self.omega_grid!r}")
        if self.beamsplitter is not None and not isinstance(self.beamsplitter, BeamSplitter):
            raise ValueError(f"beamsplitter must be a BeamSplitter, got {self.beamsplitter!r}")
        for name in ("omega0", "normalization"):
            value = getattr(self, name)
            if value is not None and not (
                isinstance(value, (int, float)) and math.isfinite(value)
            ):
                raise ValueError(f"{name} must be a finite number or None, got {value!r}")


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    summary: StokesSummary
    spectrum: SpectrumSeries
    optimum: PhaseOptimum | None


def _default_reference(config: ScenarioConfig) -> float:
    """Shot-noise reference intensity used for S* when no override is given."""
    t = config.analysis_time
    if config.kind is ScenarioKind.BS_INTERF:
        if config.stokes_index in (StokesIndex.S0, StokesIndex.S1):
            return config.pulses[0].mean_photons(t) + config.pulses[1].mean_photons(t)
        return config.pulses[2].mean_photons(t)
    return config.pulses[0].mean_photons(t)


def collect_issues(
    config: ScenarioConfig,
) -> tuple[list[ValidationIssue], list[ValidationIssue]]:
    """Return (errors, warnings) for a scenario config.

    Field paths follow the config-file layout: pulse1..pulse3, beamsplitter,
    scenario.omega0 and so on.
    """
    errors: list[ValidationIssue] = []
    warns: list[ValidationIssue] = []
    kind = config.kind
    t = config.analysis_time

    expected = _PULSE_COUNT[kind]
    if len(config.pulses) != expected:
        errors.append(
            ValidationIssue(
                "pulses",
                f"{kind.value} needs exactly {expected} pulses, got {len(config.pulses)}",
            )
        )
        return errors, warns  # counts are wrong; later checks would index garbage

    if kind is ScenarioKind.BS_INTERF:
        if config.beamsplitter is None:
            errors.append(ValidationIssue("beamsplitter", "bs_interf needs a beam splitter"))
        else:
            total = config.beamsplitter.r + config.beamsplitter.t
            if abs(total - 1.0) > BS_UNITARITY_TOL:
                errors.append(
                    ValidationIssue(
                        "beamsplitter",
                        f"r + t must equal 1 within {BS_UNITARITY_TOL:g}, got {total!r}",
                    )
                )
        if config.pulses[2].gamma != 0.0:
            errors.append(
                ValidationIssue(
                    "pulse3.gamma",
                    f"probe pulse must be coherent (gamma == 0), got {config.pulses[2].gamma}",
                )
            )
    elif config.beamsplitter is not None:
        errors.append(
            ValidationIssue("beamsplitter", f"{kind.value} does not use a beam splitter")
        )

    if kind is ScenarioKind.COH_SQ and config.pulses[0].gamma != 0.0:
        errors.append(
            ValidationIssue(
                "pulse1.gamma",
                f"pulse 1 must be coherent (gamma == 0), got {config.pulses[0].gamma}",
            )
        )

    for i, pulse in enumerate(config.pulses, start=1):
        if kind is not ScenarioKind.XPM and pulse.gamma_x != 0.0:
            errors.append(
                ValidationIssue(
                    f"pulse{i}.gamma_x",
                    f"cross coupling only participates in the xpm scenario, got {pulse.gamma_x}",
                )
            )
        for name in ("gamma", "gamma_x"):
            value = getattr(pulse, name)
            if value > GAMMA_WEAK_LIMIT:
                warns.append(
                    ValidationIssue(
                        f"pulse{i}.{name}",
                        f"{value:g} exceeds the weak-coupling regime ({name} <= "
                        f"{GAMMA_WEAK_LIMIT}); results are perturbative",
                    )
                )

    if kind is ScenarioKind.XPM and all(p.gamma_x == 0.0 for p in config.pulses):
        warns.append(
            ValidationIssue(
                "scenario.kind",
                "xpm with gamma_x = 0 on both pulses degenerates to two_sq",
            )
        )

    if config.omega0 is not None and config.omega0 < 0.0:
        errors.append(
            ValidationIssue("scenario.omega0", f"must be >= 0, got {config.omega0}")
        )
    if config.normalization is not None and config.normalization <= 0.0:
        errors.append(
            ValidationIssue("scenario.normalization", f"must be > 0, got {config.normalization}")
        )
    elif config.normalization is None and _default_reference(config) <= 0.0:
        errors.append(
            ValidationIssue(
                "scenario.normalization",
                "default reference intensity vanishes at the analysis time; "
                "set an explicit normalization",
            )
        )

    if config.omega0 is not None and config.omega0 >= 0.0:
        _optimization_issues(config, t, errors, warns)
    return errors, warns


def _optimization_issues(config, t, errors, warns):
    """Contract checks that only matter once an optimization is requested."""
    kind = config.kind
    index = config.stokes_index
    if kind is not ScenarioKind.BS_INTERF:
        if index in (StokesIndex.S0, StokesIndex.S1):
            warns.append(
                ValidationIssue(
                    "scenario.stokes_index",
                    f"{index.value} is conserved in {kind.value}; the spectrum is flat "
                    "and the phase optimum is degenerate",
                )
            )
        return
    p1, p2 = config.pulses[0], config.pulses[1]
    if index in (StokesIndex.S0, StokesIndex.S1):
        imbalance = p1.mean_photons(t) * p2.spm_phase(t) - p2.mean_photons(t) * p1.spm_phase(t)
        if abs(imbalance) > BALANCE_TOL:
            errors.append(
                ValidationIssue(
                    "pulses",
                    "S0/S1 optimization needs the balance nbar1 phi2 == nbar2 phi1 "
                    f"within {BALANCE_TOL:g} (equal Kerr couplings); got imbalance "
                    f"{imbalance:g}",
                )
            )
        return
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    if abs(phi1 - phi2) > BALANCE_TOL:
        errors.append(
            ValidationIssue(
                "pulses",
                "S2/S3 optimization needs equal SPM phases (phi1 == phi2 within "
                f"{BALANCE_TOL:g}); got {phi1:g} and {phi2:g}",
            )
        )
    lock = p1.phi_lin - p2.phi_lin
    if abs(lock - HALF_PI) > BALANCE_TOL:
        errors.append(
            ValidationIssue(
                "pulses",
                "S2/S3 optimization needs quadrature-locked inputs "
                f"(phi_lin1 - phi_lin2 == pi/2 within {BALANCE_TOL:g}); got {lock:g}",
            )
        )


def validate(config: ScenarioConfig) -> ScenarioConfig:
    """Raise ConfigValidationError on any fatal issue; warn on the rest."""
    errors, warns = collect_issues(config)
    if errors:
        raise ConfigValidationError(errors)
    for issue in warns:
        warnings.warn(f"{issue.field}: {issue.message}", ValidationWarning, stacklevel=2)
    return config


def _build_kernel(config: ScenarioConfig, pulses, t: float) -> CorrelationKernel:
    index = config.stokes_index
    if config.kind is ScenarioKind.COH_SQ:
        return kernel_coh_sq(pulses[0], pulses[1], t, index)
    if config.kind is ScenarioKind.TWO_SQ:
        return kernel_two_sq(pulses[0], pulses[1], t, index)
    if config.kind is ScenarioKind.XPM:
        return kernel_xpm(pulses[0], pulses[1], t, index)
    if index in (StokesIndex.S0, StokesIndex.S1):
        return kernel_bs_s01(pulses[0], pulses[1], config.beamsplitter, t, index)
    return kernel_bs_s2(pulses[0], pulses[1], pulses[2], config.beamsplitter, t, index)


def _averages(config: ScenarioConfig, pulses, t: float) -> StokesSummary:
    if config.kind is ScenarioKind.COH_SQ:
        return averages_coh_sq(pulses[0], pulses[1], t)
    if config.kind is ScenarioKind.TWO_SQ:
        return averages_two_sq(pulses[0], pulses[1], t)
    if config.kind is ScenarioKind.XPM:
        return averages_xpm(pulses[0], pulses[1], t)
    return averages_bs(pulses[0], pulses[1], pulses[2], config.beamsplitter, t)


def _apply_offset(config: ScenarioConfig, pulses, delta_phi: float):
    if config.kind is not ScenarioKind.BS_INTERF:
        return (pulses[0], offset_partner_phase(pulses[0], pulses[1], delta_phi))
    if config.stokes_index in (StokesIndex.S0, StokesIndex.S1):
        return (offset_bs_input_phase(pulses[0], pulses[1], delta_phi), pulses[1], pulses[2])
    return (pulses[0], pulses[1], offset_bs_probe_phase(pulses[1], pulses[2], delta_phi))


def _shift_optimum(opt: PhaseOptimum, shift: float) -> PhaseOptimum:
    """Translate an optimum along the phase axis (S2 <-> S3 duality).

    Advancing every interference angle by pi/2 turns the S2 kernel family
    into the S3 one, so the S3 optimum is the S2 optimum with the offset
    shifted; the minimum values coincide.
    """
    moved = opt.delta_phi_opt + shift if math.isfinite(opt.delta_phi_opt) else opt.delta_phi_opt
    return replace(
        opt,
        delta_phi_opt=moved,
        delta_phi_numeric=(opt.delta_phi_numeric + shift) % (2.0 * math.pi),
    )


def _degenerate_optimum(builder, omega0: float) -> PhaseOptimum:
    delta_phi_num, s_num = scan_phase(builder, omega0)
    return PhaseOptimum(
        math.nan, omega0, 1.0, s_num, abs(s_num - 1.0), delta_phi_num, ("degenerate",)
    )


def _optimum(config: ScenarioConfig, t: float) -> PhaseOptimum:
    omega0 = config.omega0
    index = config.stokes_index
    p = config.pulses
    if config.kind is not ScenarioKind.BS_INTERF:
        if index in (StokesIndex.S0, StokesIndex.S1):
            def builder(delta_phi):
                return _build_kernel(config, _apply_offset(config, p, delta_phi), t)

            return _degenerate_optimum(builder, omega0)
        picker = {
            ScenarioKind.COH_SQ: optimal_phase_coh_sq,
            ScenarioKind.TWO_SQ: optimal_phase_two_sq,
            ScenarioKind.XPM: optimal_phase_xpm,
        }[config.kind]
        base = picker(p[0], p[1], t, omega0)
        if index is StokesIndex.S3:
            base = _shift_optimum(base, HALF_PI)
        return base
    if index in (StokesIndex.S0, StokesIndex.S1):
        return optimal_phase_bs_s01(p[0], p[1], config.beamsplitter, t, omega0, which=index)
    base = optimal_phase_bs_s2(p[0], p[1], p[2], config.beamsplitter, t, omega0)
    if index is StokesIndex.S3:
        base = _shift_optimum(base, -HALF_PI)
    return base


def run(config: ScenarioConfig) -> ScenarioResult:
    """Validate, optionally phase-optimize, and evaluate one scenario.

    When ``omega0`` is set, the returned spectrum and Stokes averages are
    evaluated at the optimal phase offset (the closed-form one when finite
    and feasible, otherwise the scanned one); without it the configured
    linear phases are used as given.  Runs are deterministic: identical
    configs produce bit-identical results.
    """
    validate(config)
    t = config.analysis_time
    pulses = config.pulses
    optimum = None
    if config.omega0 is not None:
        optimum = _optimum(config, t)
        chosen = (
            optimum.delta_phi_opt
            if math.isfinite(optimum.delta_phi_opt)
            else optimum.delta_phi_numeric
        )
        pulses = _apply_offset(config, pulses, chosen)
    kern = _build_kernel(config, pulses, t)
    reference = (
        config.normalization if config.normalization is not None else _default_reference(config)
    )
    series = spectrum(kern, config.omega_grid.to_array(), reference)
    summary = _averages(config, pulses, t)
    return ScenarioResult(config, summary, series, optimum)
