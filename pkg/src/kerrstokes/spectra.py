"""Stokes-fluctuation correlation kernels and their spectra.

For every scenario and Stokes component the normally ordered two-time
correlation of the Stokes operator at pulse-local times (t, t + tau) reduces
to the universal form

    R(tau) = delta(tau) + a_h * h(tau) + b_g * g(tau),

with h and g the medium kernels from :mod:`kerrstokes.kernel` and scenario
coefficients (a_h, b_g) collected in a :class:`CorrelationKernel`.  The
stationary-in-tau spectrum then follows in closed form,

    S(Omega) = 1 + 2 L(Omega) a_h + 4 L(Omega)^2 b_g,

where Omega = omega * tau_r and L is the Lorentzian line shape.  Values of
S below 1 signal squeezing of the corresponding Stokes component.  The
normalized version S* = (S - 1) / reference_intensity rescales the
squeezing/excess relative to a chosen shot-noise intensity.

Builders are provided for the four overlap scenarios.  The S3 kernels
follow from the S2 ones by advancing every interference angle by pi/2,
which swaps the roles of the cos/sin quadratures; S0 and S1 are conserved
in the single-port scenarios, giving the flat kernel a_h = b_g = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ScenarioContractError
from .kernel import lorentzian
from .pulse import PulseSpec
from .stokes import _require_coherent, _require_unit_split

__all__ = [
    "StokesIndex",
    "CorrelationKernel",
    "SpectrumSeries",
    "kernel_coh_sq",
    "kernel_two_sq",
    "kernel_xpm",
    "kernel_bs_s01",
    "kernel_bs_s2",
    "spectrum",
    "spectrum_value",
]

HALF_PI = 0.5 * math.pi


class StokesIndex(enum.Enum):
    S0 = "S0"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"


@dataclass(frozen=True)
class CorrelationKernel:
    """Coefficients of R(tau) = delta(tau) + a_h h(tau) + b_g g(tau)."""

    a_h: float
    b_g: float
    t: float
    stokes_index: StokesIndex

    def __post_init__(self):
        for name in ("a_h", "b_g", "t"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if not isinstance(self.stokes_index, StokesIndex):
            raise ValueError(f"stokes_index must be a StokesIndex, got {self.stokes_index!r}")


def _flat(t: float, index: StokesIndex) -> CorrelationKernel:
    return CorrelationKernel(0.0, 0.0, t, index)


def kernel_coh_sq(
    p1: PulseSpec, p2: PulseSpec, t: float, index: StokesIndex = StokesIndex.S2
) -> CorrelationKernel:
    """Coherent pulse 1 + Kerr pulse 2.

    With theta = phi_lin1 - Phi2(t) the S2 coefficients are
    a_h = nbar1 phi2 sin(2 theta), b_g = nbar1 phi2^2 sin(theta)^2.
    S0 and S1 are photon-number observables, conserved here, so their
    kernel is flat.
    """
    _require_coherent(p1, "pulse 1")
    if index in (StokesIndex.S0, StokesIndex.S1):
        return _flat(t, index)
    theta = p1.phi_lin - p2.total_phase(t)
    if index is StokesIndex.S3:
        theta = theta + HALF_PI
    n1 = p1.mean_photons(t)
    phi2 = p2.spm_phase(t)
    a_h = n1 * phi2 * math.sin(2.0 * theta)
    b_g = n1 * phi2**2 * math.sin(theta) ** 2
    return CorrelationKernel(a_h, b_g, t, index)


def kernel_two_sq(
    p1: PulseSpec, p2: PulseSpec, t: float, index: StokesIndex = StokesIndex.S2
) -> CorrelationKernel:
    """Two independently Kerr-propagated pulses.

    With theta = Phi1(t) - Phi2(t):
    a_h = (nbar1 phi2 - nbar2 phi1) sin(2 theta),
    b_g = (nbar1 phi2^2 + nbar2 phi1^2) sin(theta)^2.
    """
    if index in (StokesIndex.S0, StokesIndex.S1):
        return _flat(t, index)
    theta = p1.total_phase(t) - p2.total_phase(t)
    if index is StokesIndex.S3:
        theta = theta + HALF_PI
    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    sin_sq = math.sin(theta) ** 2
    a_h = (n1 * phi2 - n2 * phi1) * math.sin(2.0 * theta)
    b_g = (n1 * phi2**2 + n2 * phi1**2) * sin_sq
    return CorrelationKernel(a_h, b_g, t, index)


def kernel_xpm(
    p1: PulseSpec, p2: PulseSpec, t: float, index: StokesIndex = StokesIndex.S2
) -> CorrelationKernel:
    """Co-propagating pulses with SPM and mutual XPM.

    The interference angle uses the XPM-shifted total phases,
    theta = Phix1(t) - Phix2(t); the h coefficient keeps the plain SPM
    imbalance while the g coefficient picks up the cross couplings:
    a_h = (nbar1 phi2 - nbar2 phi1) sin(2 theta),
    b_g = (nbar1 [phi2^2 + phix2^2] + nbar2 [phi1^2 + phix1^2]) sin(theta)^2.
    """
    if index in (StokesIndex.S0, StokesIndex.S1):
        return _flat(t, index)
    theta = p1.total_phase(t, include_xpm=True) - p2.total_phase(t, include_xpm=True)
    if index is StokesIndex.S3:
        theta = theta + HALF_PI
    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    phix1 = p1.xpm_phase(t)
    phix2 = p2.xpm_phase(t)
    sin_sq = math.sin(theta) ** 2
    a_h = (n1 * phi2 - n2 * phi1) * math.sin(2.0 * theta)
    b_g = (n1 * (phi2**2 + phix2**2) + n2 * (phi1**2 + phix1**2)) * sin_sq
    return CorrelationKernel(a_h, b_g, t, index)


def kernel_bs_s01(
    p1: PulseSpec, p2: PulseSpec, bs, t: float, which: StokesIndex = StokesIndex.S0
) -> CorrelationKernel:
    """S0 / S1 fluctuations of the beam-splitter scenario.

    Only the two Kerr pulses mixed on the splitter contribute; the probe on
    the other polarization cancels out of the photon-number observables.
    ``which`` selects the relative sign of the transmitted-pulse term:
    + for S0, - for S1.  With dphi = Phi1(t) - Phi2(t):

    a_h = -( 2 sqrt(R T nbar1 nbar2) [R phi1 +/- T phi2] cos(dphi)
             + R T [nbar1 phi2 - nbar2 phi1] sin(2 dphi) )
    b_g = R T [nbar1 phi2^2 + nbar2 phi1^2] cos(dphi)^2
    """
    if which not in (StokesIndex.S0, StokesIndex.S1):
        raise ValueError(f"which must be S0 or S1, got {which!r}")
    _require_unit_split(bs)
    sign = 1.0 if which is StokesIndex.S0 else -1.0
    ref = bs.r
    trans = bs.t
    dphi = p1.total_phase(t) - p2.total_phase(t)
    n1 = p1.mean_photons(t)
    n2 = p2.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    beat = (
        2.0
        * math.sqrt(ref * trans)
        * math.sqrt(n1 * n2)
        * (ref * phi1 + sign * trans * phi2)
        * math.cos(dphi)
    )
    spm = ref * trans * (n1 * phi2 - n2 * phi1) * math.sin(2.0 * dphi)
    a_h = -(beat + spm)
    b_g = ref * trans * (n1 * phi2**2 + n2 * phi1**2) * math.cos(dphi) ** 2
    return CorrelationKernel(a_h, b_g, t, which)


def kernel_bs_s2(
    p1: PulseSpec,
    p2: PulseSpec,
    p3: PulseSpec,
    bs,
    t: float,
    index: StokesIndex = StokesIndex.S2,
) -> CorrelationKernel:
    """S2 / S3 fluctuations of the beam-splitter scenario.

    The coherent probe (pulse 3) beats against the monitored output port.
    With psi_j = Phi_j(t) - phi_lin3:

    a_h = nbar3 ( R phi1 sin(2 psi1) - T phi2 sin(2 psi2) )
    b_g = nbar3 ( R phi1^2 cos(psi1)^2 + T phi2^2 sin(psi2)^2 )
    """
    if index not in (StokesIndex.S2, StokesIndex.S3):
        raise ValueError(f"index must be S2 or S3, got {index!r}")
    _require_unit_split(bs)
    _require_coherent(p3, "probe pulse 3")
    psi1 = p1.total_phase(t) - p3.phi_lin
    psi2 = p2.total_phase(t) - p3.phi_lin
    if index is StokesIndex.S3:
        psi1 = psi1 + HALF_PI
        psi2 = psi2 + HALF_PI
    ref = bs.r
    trans = bs.t
    n3 = p3.mean_photons(t)
    phi1 = p1.spm_phase(t)
    phi2 = p2.spm_phase(t)
    a_h = n3 * (ref * phi1 * math.sin(2.0 * psi1) - trans * phi2 * math.sin(2.0 * psi2))
    b_g = n3 * (
        ref * phi1**2 * math.cos(psi1) ** 2 + trans * phi2**2 * math.sin(psi2) ** 2
    )
    return CorrelationKernel(a_h, b_g, t, index)


def spectrum_value(kern: CorrelationKernel, omega) -> float:
    """S(Omega) = 1 + 2 L a_h + 4 L^2 b_g at a single reduced frequency."""
    lor = lorentzian(omega)
    return 1.0 + 2.0 * lor * kern.a_h + 4.0 * lor * lor * kern.b_g


@dataclass(frozen=True)
class SpectrumSeries:
    """Spectrum sampled on an ascending grid of reduced frequencies.

    ``values`` holds S(Omega); ``normalized`` holds
    S*(Omega) = (S - 1) / reference_intensity.
    """

    omega: np.ndarray
    values: np.ndarray
    normalized: np.ndarray
    reference_intensity: float


def spectrum(
    kern: CorrelationKernel, omega_grid, reference_intensity: float = 1.0
) -> SpectrumSeries:
    """Evaluate S and S* on an ascending grid of reduced frequencies >= 0."""
    grid = np.asarray(omega_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("omega_grid must be a non-empty 1-d array")
    if not np.all(np.isfinite(grid)):
        raise ValueError("omega_grid must be finite")
    if grid[0] < 0.0:
        raise ValueError(f"omega_grid must be non-negative, starts at {grid[0]}")
    if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
        raise ValueError("omega_grid must be strictly ascending")
    if not (
        isinstance(reference_intensity, (int, float))
        and math.isfinite(reference_intensity)
        and reference_intensity > 0.0
    ):
        raise ValueError(
            f"reference_intensity must be a positive finite number, got {reference_intensity!r}"
        )
    lor = lorentzian(grid)
    values = 1.0 + 2.0 * lor * kern.a_h + 4.0 * lor * lor * kern.b_g
    normalized = (values - 1.0) / reference_intensity
    return SpectrumSeries(grid, values, normalized, float(reference_intensity))
