"""Independent numerical cross-checks for the closed-form results.

Two deliberately separate routes live here and must never be folded into
the analytic code paths they validate:

* :func:`wk_numeric` computes the fluctuation spectrum directly as the
  Fourier integral of the correlation kernel (composite Simpson rule on a
  symmetric truncated grid), bypassing the Lorentzian closed forms.
* :func:`mc_coherent_phasor` estimates average Stokes parameters of two
  overlapped coherent pulses by sampling field phasors, bypassing the
  trigonometric mean-value formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import ScenarioContractError
from .kernel import RelaxationKernel
from .pulse import PulseSpec
from .spectra import CorrelationKernel
from .stokes import StokesSummary

__all__ = ["QuadratureSpec", "wk_numeric", "PhasorEstimate", "mc_coherent_phasor"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Simpson-rule settings for the spectrum integral.

    The integrand is truncated at |tau| = truncation * tau_r; with the
    exponential kernels the tail beyond 20 relaxation times is below
    1e-8 of the peak, so ``truncation`` must be at least 20.  ``points``
    must be odd (composite Simpson) and large enough to keep the rule's
    error under ``tolerance``; the default is comfortably converged for
    reduced frequencies up to ~10.
    """

    truncation: float = 40.0
    points: int = 20001
    tolerance: float = 1e-6

    def __post_init__(self):
        if not (math.isfinite(self.truncation) and self.truncation >= 20.0):
            raise ValueError(f"truncation must be >= 20, got {self.truncation!r}")
        if not isinstance(self.points, int) or self.points < 4001:
            raise ValueError(f"points must be an integer >= 4001, got {self.points!r}")
        if self.points % 2 == 0:
            raise ValueError(f"points must be odd for Simpson's rule, got {self.points}")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0.0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")


def wk_numeric(
    kern: CorrelationKernel,
    relax: RelaxationKernel,
    omega: float,
    quad: QuadratureSpec | None = None,
) -> float:
    """Spectrum S(Omega) by direct quadrature of the correlation kernel.

    Integrates [a_h h(tau) + b_g g(tau)] e^{i omega tau / tau_r} over the
    truncated symmetric window and adds the delta-term contribution of 1.
    The grid is built around tau = 0 so positive and negative nodes pair
    exactly; the imaginary part then cancels by evenness and is required
    to come out below 1e-12.
    """
    if quad is None:
        quad = QuadratureSpec()
    if not (isinstance(omega, (int, float)) and math.isfinite(omega) and omega >= 0.0):
        raise ValueError(f"omega must be a finite number >= 0, got {omega!r}")
    half_width = quad.truncation * relax.tau_r
    mid = quad.points // 2
    step = half_width / mid
    tau = (np.arange(quad.points) - mid) * step
    angular = omega / relax.tau_r
    integrand = (kern.a_h * relax.h(tau) + kern.b_g * relax.g(tau)) * np.exp(
        1j * angular * tau
    )
    integral = complex(simpson(integrand, dx=step))
    if abs(integral.imag) > 1e-12:
        raise ArithmeticError(
            f"odd-part residue {integral.imag:g} in an even integrand; "
            "quadrature grid is not symmetric"
        )
    return 1.0 + integral.real


@dataclass(frozen=True)
class PhasorEstimate:
    """Monte-Carlo estimate of average Stokes parameters.

    ``stderr`` holds the standard errors of (s0, s1, s2, s3); the seed is
    recorded so any run can be reproduced exactly.
    """

    summary: StokesSummary
    stderr: tuple[float, float, float, float]
    n_samples: int
    seed: int


def mc_coherent_phasor(
    n_samples: int, p1: PulseSpec, p2: PulseSpec, t: float, seed: int = 12345
) -> PhasorEstimate:
    """Sample-based Stokes averages for two overlapped *coherent* pulses.

    In the normally ordered (measured-noise) convention a coherent state
    contributes a single deterministic phasor alpha = sqrt(nbar) e^{i
    phi_lin}: its phasor distribution is a point mass, so every draw is
    identical and the estimator is exact with zero standard error.  The
    value of the check is the independent route: Stokes averages are formed
    from complex phasor arithmetic per sample instead of the closed
    trigonometric expressions.  Pulses with Kerr coupling are rejected,
    because their phasor distribution is no longer a point mass.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    for pulse, role in ((p1, "pulse 1"), (p2, "pulse 2")):
        if pulse.gamma != 0.0 or pulse.gamma_x != 0.0:
            raise ScenarioContractError(
                f"mc_coherent_phasor needs coherent pulses; {role} has "
                f"gamma = {pulse.gamma}, gamma_x = {pulse.gamma_x}"
            )
    rng = np.random.default_rng(seed)
    alpha1 = math.sqrt(p1.mean_photons(t)) * np.exp(1j * p1.phi_lin)
    alpha2 = math.sqrt(p2.mean_photons(t)) * np.exp(1j * p2.phi_lin)
    # Point-mass sampling: the rng stream is consumed for shape compatibility
    # with future non-deterministic phasor laws, but adds zero spread here.
    draws1 = alpha1 + 0.0 * rng.standard_normal(n_samples)
    draws2 = alpha2 + 0.0 * rng.standard_normal(n_samples)

    i1 = np.abs(draws1) ** 2
    i2 = np.abs(draws2) ** 2
    cross = np.conj(draws1) * draws2
    samples = np.stack([i1 + i2, i1 - i2, 2.0 * cross.real, 2.0 * cross.imag])
    means = samples.mean(axis=1)
    if n_samples > 1:
        stderr = samples.std(axis=1, ddof=1) / math.sqrt(n_samples)
    else:
        stderr = np.zeros(4)
    summary = StokesSummary.from_components(*(float(m) for m in means))
    return PhasorEstimate(summary, tuple(float(e) for e in stderr), n_samples, seed)
