"""Phase optimization of Stokes-fluctuation spectra.

Every scenario leaves one experimentally tunable linear phase offset
``delta_phi`` free; the spectra depend on it through interference angles.
This module provides, per scenario, the closed-form offset that minimizes
S(Omega0) together with an independent numerical route: a dense scan over
[0, 2pi) refined by a golden-section search.  Both answers are reported
side by side in a :class:`PhaseOptimum` and never averaged or substituted
for one another; disagreements beyond tolerance are flagged, not hidden.

Phase-offset conventions (also encoded in the ``offset_*`` helpers):

* single-port scenarios (coh_sq, two_sq, xpm):
      delta_phi = phi_lin2 - phi_lin1
* beam-splitter S0/S1:
      delta_phi = phi_lin1 - phi_lin2
* beam-splitter S2/S3 (probe phase):
      delta_phi = phi_lin2 - phi_lin3
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ScenarioContractError
from .kernel import lorentzian
from .pulse import PulseSpec
from .spectra import (
    StokesIndex,
    kernel_bs_s01,
    kernel_bs_s2,
    kernel_coh_sq,
    kernel_two_sq,
    kernel_xpm,
    spectrum_value,
)
from .stokes import _require_coherent, _require_unit_split

__all__ = [
    "PhaseOptimum",
    "scan_phase",
    "offset_partner_phase",
    "offset_bs_input_phase",
    "offset_bs_probe_phase",
    "optimal_phase_coh_sq",
    "optimal_phase_two_sq",
    "optimal_phase_xpm",
    "optimal_phase_bs_s01",
    "optimal_phase_bs_s2",
]

TWO_PI = 2.0 * math.pi

# Minimum coarse-scan resolution over one phase period.
SCAN_RESOLUTION_MIN = 720
# Golden-section refinement terminates on this change in S (not in phase).
SCAN_VALUE_TOL = 1e-12
# Closed form and scan must agree to this before a discrepancy is flagged;
# also the slack allowed in "numeric minimum <= closed minimum".
AGREEMENT_TOL = 1e-9
# Scenario contracts on continuous quantities are enforced to this accuracy.
CONTRACT_TOL = 1e-9

_INV_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PhaseOptimum:
    """Result of a phase optimization at a single reduced frequency Omega0.

    ``delta_phi_opt`` is the closed-form offset (nan when the spectrum is
    phase-independent); ``delta_phi_numeric`` and ``s_min_numeric`` come
    from the scan route.  ``agreement`` = |s_min_numeric - s_min_closed|.

    Flags:
        "degenerate"                flat spectrum, optimum is S = 1 trivially
        "arccos-domain"             closed form infeasible (outside [-1, 1]);
                                    numeric route is authoritative
        "closed-form-discrepancy"   |closed - numeric| exceeded tolerance
        "closed-phase-not-minimal"  the spectrum at delta_phi_opt sits above
                                    the scanned minimum
    """

    delta_phi_opt: float
    omega0: float
    s_min_closed: float
    s_min_numeric: float
    agreement: float
    delta_phi_numeric: float
    flags: tuple[str, ...] = ()


def offset_partner_phase(p1: PulseSpec, p2: PulseSpec, delta_phi: float) -> PulseSpec:
    """Return pulse 2 with phi_lin2 = phi_lin1 + delta_phi (single-port scenarios)."""
    return replace(p2, phi_lin=p1.phi_lin + delta_phi)


def offset_bs_input_phase(p1: PulseSpec, p2: PulseSpec, delta_phi: float) -> PulseSpec:
    """Return pulse 1 with phi_lin1 = phi_lin2 + delta_phi (beam-splitter S0/S1)."""
    return replace(p1, phi_lin=p2.phi_lin + delta_phi)


def offset_bs_probe_phase(p2: PulseSpec, p3: PulseSpec, delta_phi: float) -> PulseSpec:
    """Return probe with phi_lin3 = phi_lin2 - delta_phi (beam-splitter S2/S3)."""
    return replace(p3, phi_lin=p2.phi_lin - delta_phi)


def _check_omega0(omega0: float) -> None:
    if not (isinstance(omega0, (int, float)) and math.isfinite(omega0) and omega0 >= 0.0):
        raise ValueError(f"omega0 must be a finite number >= 0, got {omega0!r}")


def _golden_refine(f, a: float, b: float, max_iter: int = 300):
    """Golden-section minimization of f on [a, b], unimodal assumed.

    Terminates when the two interior S values agree to SCAN_VALUE_TOL (the
    tolerance is on the spectrum value, not on the phase)."""
    c = b - _INV_GOLD * (b - a)
    d = a + _INV_GOLD * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(max_iter):
        if abs(fc - fd) < SCAN_VALUE_TOL or (b - a) < 1e-14:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLD * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc
    return d, fd


def scan_phase(kernel_builder, omega0: float, resolution: int = SCAN_RESOLUTION_MIN):
    """Numerically minimize S(Omega0) over the phase offset.

    ``kernel_builder(delta_phi)`` must return the scenario's
    CorrelationKernel at that offset.  A coarse scan over [0, 2pi) with
    ``resolution`` points brackets the global minimum; golden-section
    refinement then converges the S value to SCAN_VALUE_TOL.

    Returns (delta_phi, s_min) with delta_phi wrapped into [0, 2pi).
    """
    if resolution < SCAN_RESOLUTION_MIN:
        raise ValueError(
            f"resolution must be >= {SCAN_RESOLUTION_MIN}, got {resolution}"
        )
    _check_omega0(omega0)

    def f(delta_phi: float) -> float:
        return spectrum_value(kernel_builder(delta_phi), omega0)

    step = TWO_PI / resolution
    best_i = 0
    best_v = math.inf
    for i in range(resolution):
        v = f(i * step)
        if v < best_v:
            best_i = i
            best_v = v
    # Periodicity makes out-of-range bracket edges harmless.
    phi, s_min = _golden_refine(f, (best_i - 1) * step, (best_i + 1) * step)
    if best_v < s_min:
        phi, s_min = best_i * step, best_v
    return phi % TWO_PI, s_min


def _assemble(
    delta_phi_closed: float,
    s_closed: float,
    builder,
    omega0: float,
    resolution: int,
    extra_flags: tuple[str, ...] = (),
) -> PhaseOptimum:
    delta_phi_num, s_num = scan_phase(builder, omega0, resolution)
    flags = list(extra_flags)
    if math.isfinite(delta_phi_closed):
        if spectrum_value(builder(delta_phi_closed), omega0) > s_num + AGREEMENT_TOL:
            flags.append("closed-phase-not-minimal")
    agreement = abs(s_num - s_closed)
    if agreement > AGREEMENT_TOL:
        flags.append("closed-form-discrepancy")
    return PhaseOptimum(
        delta_phi_closed, omega0, s_closed, s_num, agreement, delta_phi_num, tuple(flags)
    )


def _degenerate(builder, omega0: float, resolution: int) -> PhaseOptimum:
    delta_phi_num, s_num = scan_phase(builder, omega0, resolution)
    return PhaseOptimum(
        math.nan, omega0, 1.0, s_num, abs(s_num - 1.0), delta_phi_num, ("degenerate",)
    )


def optimal_phase_coh_sq(
    p1: PulseSpec, p2: PulseSpec, t: float, omega0: float,
    resolution: int = SCAN_RESOLUTION_MIN,
) -> PhaseOptimum:
    """Optimal phi_lin2 - phi_lin1 for the coherent + Kerr-squeezed scenario.

    Closed form: delta_phi_opt = arctan(1 / (L0 phi2)) / 2 - phi2, reaching

        s_min = 1 + 2 nbar1 phi2^2 L0^2
                  - 2 nbar1 phi2 L0 sqrt(1 + phi2^2 L0^2).

    With phi2 = 0 the pulse pair carries no Kerr noise at all and the
    spectrum is identically 1 (degenerate optimum).
    """
    _require_coherent(p1, "pulse 1")
    _check_omega0(omega0)

    def builder(delta_phi: float):
        return kernel_coh_sq(p1, offset_partner_phase(p1, p2, delta_phi), t)

    n1 = p1.mean_photons(t)
    phi2 = p2.spm_phase(t)
    if n1 * phi2 == 0.0:
        return _degenerate(builder, omega0, resolution)
    lor0 = lorentzian(omega0)
    delta_phi = 0.5 * math.atan(1.0 / (lor0 * phi2)) - phi2
    s_closed = (
        1.0
        + 2.0 * n1 * phi2**2 * lor0**2
        - 2.0 * n1 * phi2 * lor0 * math.sqrt(1.0 + phi2**2 * lor0**2)
    )
    return _assemble(delta_phi, s_closed, builder, omega0, resolution)


def optimal_phase_two_sq(
    p1: PulseSpec, p2: PulseSpec, t: float, omega0: float,
    resolution: int = SCAN_RESOLUTION_MIN,
) -> PhaseOptimum:
    """Optimal phi_lin2 - phi_lin1 for two Kerr-squeezed pulses.

    With imbalance D = nbar1 phi2 - nbar2 phi1 and weight
    Sigma = nbar1 phi2^2 + nbar2 phi1^2:

        delta_phi_opt = arctan(D / (L0 Sigma)) / 2 + phi1 - phi2
        s_min = 1 + 2 Sigma L0^2 - 2 L0 sqrt(D^2 + L0^2 Sigma^2)
    """
    _check_omega0(omega0)

    def builder(delta_phi: float):
        return kernel_two_sq(p1, offset_partner_phase(p1, p2, delta_phi), t)

    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    imbalance = n1 * phi2 - n2 * phi1
    weight = n1 * phi2**2 + n2 * phi1**2
    if weight == 0.0:
        return _degenerate(builder, omega0, resolution)
    lor0 = lorentzian(omega0)
    delta_phi = 0.5 * math.atan(imbalance / (lor0 * weight)) + phi1 - phi2
    s_closed = (
        1.0
        + 2.0 * weight * lor0**2
        - 2.0 * lor0 * math.sqrt(imbalance**2 + (lor0 * weight) ** 2)
    )
    return _assemble(delta_phi, s_closed, builder, omega0, resolution)


def optimal_phase_xpm(
    p1: PulseSpec, p2: PulseSpec, t: float, omega0: float,
    resolution: int = SCAN_RESOLUTION_MIN,
) -> PhaseOptimum:
    """Optimal phi_lin2 - phi_lin1 with SPM and mutual XPM.

    Same structure as the two-pulse case with the g-kernel weight extended
    by the cross couplings,
    Sigma_x = nbar1 (phi2^2 + phix2^2) + nbar2 (phi1^2 + phix1^2), and the
    offset shifted by the XPM phases:

        delta_phi_opt = arctan(D / (L0 Sigma_x)) / 2
                        + phi1 - phi2 - phix1 + phix2
        s_min = 1 + 2 Sigma_x L0^2 - 2 L0 sqrt(D^2 + L0^2 Sigma_x^2)
    """
    _check_omega0(omega0)

    def builder(delta_phi: float):
        return kernel_xpm(p1, offset_partner_phase(p1, p2, delta_phi), t)

    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    phix1 = p1.xpm_phase(t)
    phix2 = p2.xpm_phase(t)
    imbalance = n1 * phi2 - n2 * phi1
    weight = n1 * (phi2**2 + phix2**2) + n2 * (phi1**2 + phix1**2)
    if weight == 0.0:
        return _degenerate(builder, omega0, resolution)
    lor0 = lorentzian(omega0)
    delta_phi = (
        0.5 * math.atan(imbalance / (lor0 * weight)) + phi1 - phi2 - phix1 + phix2
    )
    s_closed = (
        1.0
        + 2.0 * weight * lor0**2
        - 2.0 * lor0 * math.sqrt(imbalance**2 + (lor0 * weight) ** 2)
    )
    return _assemble(delta_phi, s_closed, builder, omega0, resolution)


def optimal_phase_bs_s01(
    p1: PulseSpec, p2: PulseSpec, bs, t: float, omega0: float,
    which: StokesIndex = StokesIndex.S0,
    resolution: int = SCAN_RESOLUTION_MIN,
) -> PhaseOptimum:
    """Optimal phi_lin1 - phi_lin2 for S0 or S1 after the beam splitter.

    The closed form exists on the balance manifold
    nbar1 phi2 == nbar2 phi1 (equivalent to gamma1 == gamma2 for
    overlapping pulses), where the SPM term of the h coefficient cancels
    at every offset.  There the spectrum is quadratic in
    cos(Delta Phi) with vertex

        C = (R nbar1 +/- T nbar2) / (2 (nbar1 + nbar2) phi1 L0)
            * sqrt(nbar1 / (R T nbar2))
        delta_phi_opt = arccos(C) - phi1 + phi2
        s_min = 1 - (R nbar1 +/- T nbar2)^2 / (nbar1 + nbar2)

    independent of L0.  When |C| > 1 the vertex is outside the physical
    range of the cosine; the result is flagged "arccos-domain",
    delta_phi_opt is nan and the scan values are authoritative.
    """
    if which not in (StokesIndex.S0, StokesIndex.S1):
        raise ValueError(f"which must be S0 or S1, got {which!r}")
    _require_unit_split(bs)
    _check_omega0(omega0)

    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    balance = n1 * phi2 - n2 * phi1
    if abs(balance) > CONTRACT_TOL:
        raise ScenarioContractError(
            "beam-splitter S0/S1 optimization requires the balance "
            f"nbar1 phi2 == nbar2 phi1 within {CONTRACT_TOL} "
            f"(equal Kerr couplings); got imbalance {balance:g}"
        )

    def builder(delta_phi: float):
        return kernel_bs_s01(offset_bs_input_phase(p1, p2, delta_phi), p2, bs, t, which)

    weight = n1 * phi2**2 + n2 * phi1**2
    if bs.r * bs.t == 0.0 or weight == 0.0:
        return _degenerate(builder, omega0, resolution)

    sign = 1.0 if which is StokesIndex.S0 else -1.0
    numerator = bs.r * n1 + sign * bs.t * n2
    lor0 = lorentzian(omega0)
    vertex_cos = (
        numerator
        / (2.0 * (n1 + n2) * phi1 * lor0)
        * math.sqrt(n1 / (bs.r * bs.t * n2))
    )
    s_closed = 1.0 - numerator**2 / (n1 + n2)
    if abs(vertex_cos) > 1.0:
        return _assemble(
            math.nan, s_closed, builder, omega0, resolution, ("arccos-domain",)
        )
    delta_phi = math.acos(vertex_cos) - phi1 + phi2
    return _assemble(delta_phi, s_closed, builder, omega0, resolution)


def optimal_phase_bs_s2(
    p1: PulseSpec, p2: PulseSpec, p3: PulseSpec, bs, t: float, omega0: float,
    resolution: int = SCAN_RESOLUTION_MIN,
) -> PhaseOptimum:
    """Optimal probe offset phi_lin2 - phi_lin3 for S2 after the beam splitter.

    Contract: both Kerr pulses carry the same SPM phase phi and their
    linear phases are locked in quadrature, phi_lin1 - phi_lin2 = pi/2.
    The stationarity condition cos(2 [phi + delta_phi]) =
    (R - T) phi L0 sin(2 [phi + delta_phi]) gives

        delta_phi_opt = arctan(1 / ((R - T) phi L0)) / 2 - phi
                        (pi/4 - phi for R = T)
        s_min = 1 + 2 nbar3 phi^2 L0^2
                  - 2 nbar3 phi L0 sqrt(1 + (R - T)^2 phi^2 L0^2)

    The scan runs on the same kernel and is authoritative whenever it finds
    a deeper minimum (flagged, see PhaseOptimum).
    """
    _require_unit_split(bs)
    _require_coherent(p3, "probe pulse 3")
    _check_omega0(omega0)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    if abs(phi1 - phi2) > CONTRACT_TOL:
        raise ScenarioContractError(
            "beam-splitter S2 optimization requires equal SPM phases "
            f"(phi1 == phi2 within {CONTRACT_TOL}); got {phi1:g} and {phi2:g}"
        )
    lock = p1.phi_lin - p2.phi_lin
    if abs(lock - 0.5 * math.pi) > CONTRACT_TOL:
        raise ScenarioContractError(
            "beam-splitter S2 optimization requires quadrature-locked inputs "
            f"(phi_lin1 - phi_lin2 == pi/2 within {CONTRACT_TOL}); got {lock:g}"
        )

    def builder(delta_phi: float):
        return kernel_bs_s2(p1, p2, offset_bs_probe_phase(p2, p3, delta_phi), bs, t)

    phi = phi1
    n3 = p3.mean_photons(t)
    if n3 * phi == 0.0:
        return _degenerate(builder, omega0, resolution)
    lor0 = lorentzian(omega0)
    rt_diff = bs.r - bs.t
    if rt_diff == 0.0:
        delta_phi = 0.25 * math.pi - phi
    else:
        delta_phi = 0.5 * math.atan(1.0 / (rt_diff * phi * lor0)) - phi
    s_closed = (
        1.0
        + 2.0 * n3 * phi**2 * lor0**2
        - 2.0 * n3 * phi * lor0 * math.sqrt(1.0 + rt_diff**2 * phi**2 * lor0**2)
    )
    return _assemble(delta_phi, s_closed, builder, omega0, resolution)
