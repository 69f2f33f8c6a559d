"""Pulse parameterization: envelopes, photon numbers, Kerr phases and damping.

A pulse is described by its peak photon number ``n0``, a normalized envelope
r(t) with r(0) = 1, an effective self-phase-modulation coupling ``gamma``
(Kerr coefficient integrated over the propagation length, per photon), an
optional cross-phase-modulation coupling ``gamma_x`` picked up from a
co-propagating partner pulse, and a linear phase ``phi_lin``.

Derived time-local quantities used throughout the package:

    nbar(t)  = n0 r(t)^2                 mean photon number
    phi(t)   = 2 gamma  nbar(t)          SPM-induced nonlinear phase
    mu(t)    = gamma^2  nbar(t) / 2      SPM coherence damping exponent
    phix(t)  = 2 gamma_x nbar(t)         XPM-induced nonlinear phase
    mux(t)   = gamma_x^2 nbar(t) / 2     XPM coherence damping exponent

``total_phase`` composes the accumulated optical phase: phi + phi_lin for
self-action alone, or phi - phix + phi_lin when the cross-Kerr shift of the
partner pulse is included.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ApproximationWarning

__all__ = ["EnvelopeShape", "Envelope", "PulseSpec", "GAMMA_WEAK_LIMIT"]

# Beyond this per-photon coupling the weak-nonlinearity expansion that
# underlies the closed-form spectra starts to lose accuracy.
GAMMA_WEAK_LIMIT = 0.1


class EnvelopeShape(enum.Enum):
    CONSTANT = "constant"
    GAUSSIAN = "gaussian"
    SECH = "sech"


@dataclass(frozen=True)
class Envelope:
    """Normalized amplitude envelope r(t) with r(0) = 1.

    ``tau_p`` is the duration parameter; it is required (and positive) for
    the gaussian and sech shapes and ignored for the constant one.
    """

    shape: EnvelopeShape = EnvelopeShape.CONSTANT
    tau_p: float | None = None

    def __post_init__(self):
        if not isinstance(self.shape, EnvelopeShape):
            raise ValueError(f"shape must be an EnvelopeShape, got {self.shape!r}")
        if self.shape is not EnvelopeShape.CONSTANT:
            if self.tau_p is None or not math.isfinite(self.tau_p) or self.tau_p <= 0.0:
                raise ValueError(
                    f"{self.shape.value} envelope needs tau_p > 0, got {self.tau_p!r}"
                )

    def amplitude(self, t):
        """Envelope value r(t); accepts scalars or arrays."""
        if self.shape is EnvelopeShape.CONSTANT:
            return t * 0.0 + 1.0
        if self.shape is EnvelopeShape.GAUSSIAN:
            return np.exp(-(t * t) / (2.0 * self.tau_p * self.tau_p))
        return 1.0 / np.cosh(t / self.tau_p)


@dataclass(frozen=True)
class PulseSpec:
    """One pulse entering a Kerr medium.

    Parameters
    ----------
    n0 : peak mean photon number, >= 0.
    envelope : normalized amplitude envelope.
    gamma : per-photon SPM coupling, >= 0.  A value of 0 marks a coherent
        (linearly propagating) pulse.
    gamma_x : per-photon XPM coupling from a partner pulse, >= 0.  Only
        meaningful in the cross-Kerr scenario.
    phi_lin : linear (Kerr-independent) phase in radians.
    """

    n0: float
    envelope: Envelope = Envelope()
    gamma: float = 0.0
    gamma_x: float = 0.0
    phi_lin: float = 0.0

    def __post_init__(self):
        for name in ("n0", "gamma", "gamma_x", "phi_lin"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if self.n0 < 0.0:
            raise ValueError(f"n0 must be >= 0, got {self.n0}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.gamma_x < 0.0:
            raise ValueError(f"gamma_x must be >= 0, got {self.gamma_x}")
        if not isinstance(self.envelope, Envelope):
            raise ValueError(f"envelope must be an Envelope, got {self.envelope!r}")
        for name in ("gamma", "gamma_x"):
            value = getattr(self, name)
            if value > GAMMA_WEAK_LIMIT:
                warnings.warn(
                    f"{name} = {value:g} exceeds the weak-coupling regime "
                    f"({name} <= {GAMMA_WEAK_LIMIT}); closed-form results are "
                    "perturbative and lose accuracy here",
                    ApproximationWarning,
                    stacklevel=2,
                )

    def mean_photons(self, t):
        """nbar(t) = n0 r(t)^2."""
        amp = self.envelope.amplitude(t)
        return self.n0 * amp * amp

    def spm_phase(self, t):
        """Self-induced nonlinear phase phi(t) = 2 gamma nbar(t)."""
        return 2.0 * self.gamma * self.mean_photons(t)

    def spm_damping(self, t):
        """SPM coherence damping exponent mu(t) = gamma^2 nbar(t) / 2."""
        return self.gamma * self.gamma * self.mean_photons(t) / 2.0

    def xpm_phase(self, t):
        """Cross-induced nonlinear phase phix(t) = 2 gamma_x nbar(t)."""
        return 2.0 * self.gamma_x * self.mean_photons(t)

    def xpm_damping(self, t):
        """XPM coherence damping exponent mux(t) = gamma_x^2 nbar(t) / 2."""
        return self.gamma_x * self.gamma_x * self.mean_photons(t) / 2.0

    def total_phase(self, t, include_xpm: bool = False):
        """Accumulated optical phase at time t.

        With ``include_xpm`` the cross-Kerr contribution enters with the
        opposite sign to the self-action term, reflecting the relative sign
        of the two couplings in the interaction picture used here.
        """
        if include_xpm:
            return (self.spm_phase(t) - self.xpm_phase(t)) + self.phi_lin
        return self.spm_phase(t) + self.phi_lin
