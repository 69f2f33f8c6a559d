"""Self-verification suite: every closed form against an independent route.

The checks below re-derive the package's analytic results numerically --
Fourier pairs by Simpson quadrature, phase optima by dense scans, Stokes
averages by phasor sampling -- and compare within fixed tolerances.  They
are deliberately redundant with the unit-test suite so that an installed
package can audit itself from the command line (``kerrstokes verify``).

``run_checks`` accepts a fault-injection hook used as a negative control:
``tau_r_mismatch`` scales the reduced frequency handed to the quadrature
route, emulating a mis-calibrated relaxation time between the two routes.
Any value other than 1.0 must make the Fourier-pair checks fail.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from .kernel import RelaxationKernel, fourier_g_closed, fourier_h_closed, lorentzian
from .optimize import (
    AGREEMENT_TOL,
    optimal_phase_bs_s01,
    optimal_phase_bs_s2,
    optimal_phase_coh_sq,
    optimal_phase_two_sq,
    optimal_phase_xpm,
    scan_phase,
)
from .oracle import QuadratureSpec, mc_coherent_phasor, wk_numeric
from .pulse import Envelope, EnvelopeShape, PulseSpec
from .scenario import BeamSplitter, OmegaGrid, ScenarioConfig, ScenarioKind, run
from .spectra import (
    CorrelationKernel,
    StokesIndex,
    kernel_bs_s01,
    kernel_coh_sq,
    kernel_two_sq,
    kernel_xpm,
    spectrum,
    spectrum_value,
)
from .stokes import averages_bs, averages_coh_sq, averages_two_sq

__all__ = ["CheckResult", "VerifyReport", "run_checks"]

SEED = 20240817
FOURIER_TOL = 1e-6
EXACT_TOL = 1e-12
REDUCTION_TOL = 1e-15
SWEEP_DRAWS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    tolerance: float | None
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    checks: tuple[CheckResult, ...]
    optimizer_flags: tuple[str, ...]
    elapsed_seconds: float


class _Collector:
    def __init__(self):
        self.checks: list[CheckResult] = []
        self.flags: set[str] = set()

    def add(self, name: str, passed: bool, tolerance: float | None, detail: str):
        self.checks.append(CheckResult(name, bool(passed), tolerance, detail))


def _check_fourier_pairs(col: _Collector, tau_r_mismatch: float):
    omegas = np.linspace(0.0, 5.0, 21)
    for tau_r in (0.5, 1.0, 2.0):
        relax = RelaxationKernel(tau_r)
        for label, coeffs, closed in (
            ("h", (1.0, 0.0), fourier_h_closed),
            ("g", (0.0, 1.0), fourier_g_closed),
        ):
            kern = CorrelationKernel(coeffs[0], coeffs[1], 0.0, StokesIndex.S2)
            worst = 0.0
            for omega in omegas:
                numeric = wk_numeric(kern, relax, float(omega) * tau_r_mismatch)
                worst = max(worst, abs(numeric - (1.0 + closed(float(omega)))))
            col.add(
                f"fourier-pair-{label}-tau{tau_r:g}",
                worst < FOURIER_TOL,
                FOURIER_TOL,
                f"max |quadrature - closed| = {worst:.3e} over 21 frequencies in [0, 5]",
            )


def _check_quadrature_basics(col: _Collector):
    relax = RelaxationKernel(1.0)
    cases = (
        ("quadrature-pure-h-dc", CorrelationKernel(1.0, 0.0, 0.0, StokesIndex.S2), 0.0, 3.0),
        ("quadrature-pure-g-unit", CorrelationKernel(0.0, 1.0, 0.0, StokesIndex.S2), 1.0, 2.0),
        ("quadrature-flat-kernel", CorrelationKernel(0.0, 0.0, 0.0, StokesIndex.S2), 2.5, 1.0),
    )
    for name, kern, omega, expected in cases:
        value = wk_numeric(kern, relax, omega)
        col.add(
            name,
            abs(value - expected) < 1e-9,
            1e-9,
            f"S({omega:g}) = {value!r}, expected {expected:g}",
        )

    kern = CorrelationKernel(0.7, 1.3, 0.0, StokesIndex.S2)
    base = wk_numeric(kern, relax, 2.0)
    fine = wk_numeric(kern, relax, 2.0, QuadratureSpec(points=40001))
    drift = abs(fine - base)
    col.add(
        "quadrature-convergence",
        drift < QuadratureSpec().tolerance / 10.0,
        QuadratureSpec().tolerance / 10.0,
        f"doubling the Simpson grid moves S by {drift:.3e}",
    )


def _check_wk_random(col: _Collector, rng):
    worst = 0.0
    for _ in range(SWEEP_DRAWS):
        kern = CorrelationKernel(
            float(rng.uniform(-3.0, 3.0)), float(rng.uniform(0.0, 3.0)), 0.0, StokesIndex.S2
        )
        relax = RelaxationKernel(float(rng.uniform(0.5, 2.0)))
        omega = float(rng.uniform(0.0, 5.0))
        worst = max(worst, abs(wk_numeric(kern, relax, omega) - spectrum_value(kern, omega)))
    col.add(
        "wk-vs-closed-random",
        worst < FOURIER_TOL,
        FOURIER_TOL,
        f"max |quadrature - Lorentzian closed form| = {worst:.3e} over {SWEEP_DRAWS} kernels",
    )


def _check_mc_phasor(col: _Collector):
    worst = 0.0
    stderr_worst = 0.0
    for n1, n2, phase in ((1.0, 1.0, 0.0), (4.0, 1.0, math.pi), (2.5, 0.7, 1.1), (1.0, 3.0, -2.2)):
        p1 = PulseSpec(n0=n1)
        p2 = PulseSpec(n0=n2, phi_lin=phase)
        est = mc_coherent_phasor(100_000, p1, p2, 0.0, seed=SEED)
        ref = averages_coh_sq(p1, p2, 0.0)
        worst = max(
            worst,
            abs(est.summary.s0 - ref.s0),
            abs(est.summary.s1 - ref.s1),
            abs(est.summary.s2 - ref.s2),
            abs(est.summary.s3 - ref.s3),
        )
        stderr_worst = max(stderr_worst, max(est.stderr))
    col.add(
        "mc-phasor-matches-averages",
        worst < EXACT_TOL and stderr_worst < EXACT_TOL,
        EXACT_TOL,
        f"max |sampled - closed| = {worst:.3e}, max stderr = {stderr_worst:.3e}",
    )


def _random_envelope(rng) -> Envelope:
    shape = (EnvelopeShape.CONSTANT, EnvelopeShape.GAUSSIAN, EnvelopeShape.SECH)[
        int(rng.integers(0, 3))
    ]
    if shape is EnvelopeShape.CONSTANT:
        return Envelope()
    return Envelope(shape, float(rng.uniform(0.5, 2.0)))


def _judge_sweep(col, name, optima, rejected=0, forbid_flags=True):
    """Assert scan <= closed + tol everywhere and exact agreement when unflagged.

    The closed forms checked through this helper are exact on their domains,
    so by default any optimizer flag is itself a failure."""
    bound_ok = all(o.s_min_numeric <= o.s_min_closed + AGREEMENT_TOL for o in optima)
    clean = [o for o in optima if not o.flags]
    agree_ok = all(o.agreement <= AGREEMENT_TOL for o in clean)
    for o in optima:
        col.flags.update(o.flags)
    flagged = len(optima) - len(clean)
    flags_ok = flagged == 0 or not forbid_flags
    detail = (
        f"{len(optima)} draws, {flagged} flagged"
        + (f", {rejected} infeasible draws redrawn" if rejected else "")
        + f"; numeric <= closed bound {'held' if bound_ok else 'VIOLATED'}"
    )
    col.add(name, bound_ok and agree_ok and flags_ok, AGREEMENT_TOL, detail)


def _check_optimum_coh_sq(col: _Collector, rng):
    optima = []
    for _ in range(SWEEP_DRAWS):
        t = float(rng.uniform(-0.5, 0.5))
        p1 = PulseSpec(
            n0=float(rng.uniform(0.2, 5.0)),
            envelope=_random_envelope(rng),
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        p2 = PulseSpec(
            n0=float(rng.uniform(10.0, 200.0)),
            envelope=_random_envelope(rng),
            gamma=float(rng.uniform(0.001, 0.01)),
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        optima.append(optimal_phase_coh_sq(p1, p2, t, float(rng.uniform(0.0, 3.0))))
    _judge_sweep(col, "optimum-coh-sq-closed-vs-scan", optima)


def _check_optimum_two_sq(col: _Collector, rng):
    optima = []
    for _ in range(SWEEP_DRAWS):
        t = float(rng.uniform(-0.5, 0.5))
        pulses = [
            PulseSpec(
                n0=float(rng.uniform(10.0, 300.0)),
                envelope=_random_envelope(rng),
                gamma=float(rng.uniform(0.001, 0.01)),
                phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
            )
            for _ in range(2)
        ]
        optima.append(optimal_phase_two_sq(pulses[0], pulses[1], t, float(rng.uniform(0.0, 3.0))))
    _judge_sweep(col, "optimum-two-sq-closed-vs-scan", optima)


def _check_optimum_xpm(col: _Collector, rng):
    optima = []
    for _ in range(SWEEP_DRAWS):
        t = float(rng.uniform(-0.5, 0.5))
        pulses = [
            PulseSpec(
                n0=float(rng.uniform(10.0, 300.0)),
                envelope=_random_envelope(rng),
                gamma=float(rng.uniform(0.001, 0.01)),
                gamma_x=float(rng.uniform(0.0005, 0.005)),
                phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
            )
            for _ in range(2)
        ]
        optima.append(optimal_phase_xpm(pulses[0], pulses[1], t, float(rng.uniform(0.0, 3.0))))
    _judge_sweep(col, "optimum-xpm-closed-vs-scan", optima)


def _draw_bs_s01(rng, which):
    """Draw a feasible beam-splitter S0/S1 parameter set (arccos inside [-1, 1])."""
    rejected = 0
    while True:
        ref = float(rng.uniform(0.25, 0.75))
        bs = BeamSplitter(ref, 1.0 - ref)
        n1 = float(rng.uniform(50.0, 200.0))
        n2 = n1 * float(rng.uniform(0.5, 2.0))
        phi1 = float(rng.uniform(1.0, 3.0))
        gamma = phi1 / (2.0 * n1)
        omega0 = float(rng.uniform(0.0, 1.0))
        sign = 1.0 if which is StokesIndex.S0 else -1.0
        numerator = bs.r * n1 + sign * bs.t * n2
        vertex = (
            numerator
            / (2.0 * (n1 + n2) * phi1 * lorentzian(omega0))
            * math.sqrt(n1 / (bs.r * bs.t * n2))
        )
        if abs(vertex) <= 0.999:
            p1 = PulseSpec(n0=n1, gamma=gamma, phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)))
            p2 = PulseSpec(n0=n2, gamma=gamma, phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)))
            return p1, p2, bs, omega0, rejected
        rejected += 1
        if rejected > 2000:
            raise RuntimeError("could not draw a feasible beam-splitter parameter set")


def _check_optimum_bs_s01(col: _Collector, rng, which):
    optima = []
    rejected = 0
    for _ in range(SWEEP_DRAWS):
        p1, p2, bs, omega0, rej = _draw_bs_s01(rng, which)
        rejected += rej
        optima.append(optimal_phase_bs_s01(p1, p2, bs, 0.0, omega0, which=which))
    _judge_sweep(col, f"optimum-bs-{which.value.lower()}-closed-vs-scan", optima, rejected)


def _check_optimum_bs_s2(col: _Collector, rng):
    bound_ok = True
    worst = -math.inf
    for _ in range(SWEEP_DRAWS):
        ref = float(rng.uniform(0.25, 0.75))
        bs = BeamSplitter(ref, 1.0 - ref)
        n1 = float(rng.uniform(50.0, 200.0))
        n2 = float(rng.uniform(50.0, 200.0))
        n3 = float(rng.uniform(50.0, 200.0))
        phi = float(rng.uniform(0.3, 2.5))
        base = float(rng.uniform(0.0, 2.0 * math.pi))
        p1 = PulseSpec(n0=n1, gamma=phi / (2.0 * n1), phi_lin=base + 0.5 * math.pi)
        p2 = PulseSpec(n0=n2, gamma=phi / (2.0 * n2), phi_lin=base)
        p3 = PulseSpec(n0=n3, phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)))
        opt = optimal_phase_bs_s2(p1, p2, p3, bs, 0.0, float(rng.uniform(0.0, 1.5)))
        col.flags.update(opt.flags)
        gap = opt.s_min_numeric - opt.s_min_closed
        worst = max(worst, gap)
        if gap > AGREEMENT_TOL:
            bound_ok = False
    col.add(
        "optimum-bs-s2-scan-bound",
        bound_ok,
        AGREEMENT_TOL,
        f"scan never above closed form: worst (numeric - closed) = {worst:.3e}; "
        "the scan route is authoritative when flags are raised",
    )


def _check_known_minima(col: _Collector):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        p1 = PulseSpec(n0=1.0)
        p2 = PulseSpec(n0=1.0, gamma=0.5)  # phi2 = 1 at the pulse peak
        opt0 = optimal_phase_coh_sq(p1, p2, 0.0, 0.0)
        opt1 = optimal_phase_coh_sq(p1, p2, 0.0, 1.0)
    target0 = 3.0 - 2.0 * math.sqrt(2.0)
    target1 = 1.5 - math.sqrt(1.25)
    ok = (
        abs(opt0.s_min_closed - target0) < EXACT_TOL
        and abs(opt0.s_min_numeric - target0) < AGREEMENT_TOL
        and abs(opt1.s_min_closed - target1) < EXACT_TOL
        and abs(opt1.s_min_numeric - target1) < AGREEMENT_TOL
        and abs(opt0.delta_phi_opt - (math.pi / 8.0 - 1.0)) < EXACT_TOL
    )
    col.add(
        "known-minimum-coh-sq",
        ok,
        EXACT_TOL,
        f"S_min(0) = {opt0.s_min_closed!r} vs 3 - 2 sqrt(2); "
        f"S_min(1) = {opt1.s_min_closed!r} vs 1.5 - sqrt(1.25)",
    )

    bs = BeamSplitter(0.5, 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pa = PulseSpec(n0=1.0, gamma=0.45)
        pb = PulseSpec(n0=1.0, gamma=0.45)
        opt_s0 = optimal_phase_bs_s01(pa, pb, bs, 0.0, 0.0, which=StokesIndex.S0)
        opt_s1 = optimal_phase_bs_s01(pa, pb, bs, 0.0, 0.0, which=StokesIndex.S1)
    ok = (
        abs(opt_s0.s_min_closed - 0.5) < EXACT_TOL
        and abs(opt_s0.s_min_numeric - 0.5) < AGREEMENT_TOL
        and opt_s1.s_min_closed == 1.0
        and abs(opt_s1.s_min_numeric - 1.0) < AGREEMENT_TOL
    )
    col.add(
        "known-minimum-bs-balanced",
        ok,
        EXACT_TOL,
        f"S0 minimum {opt_s0.s_min_closed!r} vs 1 - nbar/2; S1 minimum {opt_s1.s_min_closed!r} vs 1",
    )


def _check_reductions(col: _Collector, rng):
    worst_x = 0.0
    worst_c = 0.0
    for _ in range(10):
        t = float(rng.uniform(-0.5, 0.5))
        n1 = float(rng.uniform(10.0, 200.0))
        n2 = float(rng.uniform(10.0, 200.0))
        g1 = float(rng.uniform(0.001, 0.01))
        g2 = float(rng.uniform(0.001, 0.01))
        l1 = float(rng.uniform(0.0, 2.0 * math.pi))
        l2 = float(rng.uniform(0.0, 2.0 * math.pi))
        env = _random_envelope(rng)
        p1 = PulseSpec(n0=n1, envelope=env, gamma=g1, phi_lin=l1)
        p2 = PulseSpec(n0=n2, envelope=env, gamma=g2, phi_lin=l2)
        for index in (StokesIndex.S2, StokesIndex.S3):
            kx = kernel_xpm(p1, p2, t, index)
            k2 = kernel_two_sq(p1, p2, t, index)
            worst_x = max(worst_x, abs(kx.a_h - k2.a_h), abs(kx.b_g - k2.b_g))
            p1c = PulseSpec(n0=n1, envelope=env, gamma=0.0, phi_lin=l1)
            k2c = kernel_two_sq(p1c, p2, t, index)
            kc = kernel_coh_sq(p1c, p2, t, index)
            worst_c = max(worst_c, abs(k2c.a_h - kc.a_h), abs(k2c.b_g - kc.b_g))
    col.add(
        "reduction-xpm-to-two-sq",
        worst_x <= REDUCTION_TOL,
        REDUCTION_TOL,
        f"gamma_x = 0 collapses the xpm kernel onto two_sq within {worst_x:.3e}",
    )
    col.add(
        "reduction-two-sq-to-coh-sq",
        worst_c <= REDUCTION_TOL,
        REDUCTION_TOL,
        f"gamma1 = 0 collapses the two_sq kernel onto coh_sq within {worst_c:.3e}",
    )


def _check_duality(col: _Collector, rng):
    worst = 0.0
    for _ in range(10):
        t = float(rng.uniform(-0.5, 0.5))
        p1 = PulseSpec(
            n0=float(rng.uniform(10.0, 200.0)),
            gamma=float(rng.uniform(0.0, 0.01)),
            gamma_x=float(rng.uniform(0.0, 0.005)),
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        p2 = PulseSpec(
            n0=float(rng.uniform(10.0, 200.0)),
            gamma=float(rng.uniform(0.001, 0.01)),
            gamma_x=float(rng.uniform(0.0, 0.005)),
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        # Advancing pulse 2's linear phase by -pi/2 advances the interference
        # angle by +pi/2, which is exactly the S2 -> S3 kernel map.
        p2_shift = PulseSpec(
            n0=p2.n0, gamma=p2.gamma, gamma_x=p2.gamma_x, phi_lin=p2.phi_lin - 0.5 * math.pi
        )
        for build in (kernel_two_sq, kernel_xpm):
            k3 = build(p1, p2, t, StokesIndex.S3)
            k2s = build(p1, p2_shift, t, StokesIndex.S2)
            worst = max(worst, abs(k3.a_h - k2s.a_h), abs(k3.b_g - k2s.b_g))
    col.add(
        "duality-s2-s3-kernels",
        worst < EXACT_TOL,
        EXACT_TOL,
        f"S3 kernel equals the S2 kernel at a pi/2-shifted phase within {worst:.3e}",
    )

    worst = 0.0
    for phase in np.linspace(0.0, 2.0 * math.pi, 17):
        p1 = PulseSpec(n0=2.0)
        p2 = PulseSpec(n0=3.0, gamma=0.01, phi_lin=float(phase))
        p2s = PulseSpec(n0=3.0, gamma=0.01, phi_lin=float(phase) - 0.5 * math.pi)
        a = averages_coh_sq(p1, p2, 0.0)
        b = averages_coh_sq(p1, p2s, 0.0)
        worst = max(worst, abs(a.s3 - b.s2))
    col.add(
        "duality-s2-s3-averages",
        worst < EXACT_TOL,
        EXACT_TOL,
        f"<S3>(phase) tracks <S2>(phase - pi/2) within {worst:.3e}",
    )


def _check_probe_independence(col: _Collector):
    p1 = PulseSpec(n0=80.0, gamma=0.005, phi_lin=0.3)
    p2 = PulseSpec(n0=120.0, gamma=0.004, phi_lin=2.1)
    bs = BeamSplitter(0.4, 0.6)
    probes = (
        PulseSpec(n0=0.0),
        PulseSpec(n0=55.0, phi_lin=1.0),
        PulseSpec(n0=1e4, phi_lin=5.5),
    )
    identical = True
    for which in (StokesIndex.S0, StokesIndex.S1):
        kernels = [kernel_bs_s01(p1, p2, bs, 0.0, which) for _ in probes]
        base = kernels[0]
        identical &= all(k.a_h == base.a_h and k.b_g == base.b_g for k in kernels)
        # The full scenario path must show the same independence.
        series = []
        for p3 in probes:
            config = ScenarioConfig(
                kind=ScenarioKind.BS_INTERF,
                pulses=(p1, p2, p3),
                medium=RelaxationKernel(1.0),
                stokes_index=which,
                omega_grid=OmegaGrid(0.0, 5.0, 64),
                beamsplitter=bs,
            )
            series.append(run(config).spectrum.values)
        identical &= all(np.array_equal(series[0], s) for s in series[1:])
    col.add(
        "bs-s01-probe-independence",
        identical,
        None,
        "S0/S1 kernels and spectra are bit-identical under probe changes",
    )


def _check_coherent_baseline(col: _Collector):
    ok = True
    worst_mc = 0.0
    grid = OmegaGrid(0.0, 5.0, 64)
    medium = RelaxationKernel(1.0)
    p = lambda n0, phase=0.0: PulseSpec(n0=n0, phi_lin=phase)
    configs = [
        ScenarioConfig(ScenarioKind.COH_SQ, (p(1.0), p(2.0, 0.7)), medium, omega_grid=grid),
        ScenarioConfig(ScenarioKind.TWO_SQ, (p(2.0), p(3.0, 1.2)), medium, omega_grid=grid),
        ScenarioConfig(ScenarioKind.XPM, (p(2.0), p(3.0, 0.4)), medium, omega_grid=grid),
        ScenarioConfig(
            ScenarioKind.BS_INTERF,
            (p(2.0), p(3.0, 0.9), p(1.0, 0.2)),
            medium,
            omega_grid=grid,
            beamsplitter=BeamSplitter(0.3, 0.7),
        ),
    ]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for config in configs:
            for index in StokesIndex:
                result = run(
                    ScenarioConfig(
                        config.kind,
                        config.pulses,
                        config.medium,
                        stokes_index=index,
                        omega_grid=grid,
                        beamsplitter=config.beamsplitter,
                    )
                )
                ok &= bool(np.all(result.spectrum.values == 1.0))
                ok &= bool(np.all(result.spectrum.normalized == 0.0))
            if config.kind is ScenarioKind.COH_SQ:
                est = mc_coherent_phasor(10_000, config.pulses[0], config.pulses[1], 0.0, seed=SEED)
                ref = run(config).summary
                worst_mc = max(
                    worst_mc,
                    abs(est.summary.s0 - ref.s0),
                    abs(est.summary.s1 - ref.s1),
                    abs(est.summary.s2 - ref.s2),
                    abs(est.summary.s3 - ref.s3),
                )
    col.add(
        "coherent-baseline",
        ok and worst_mc < EXACT_TOL,
        EXACT_TOL,
        "all-coherent scenarios give S identically 1, S* identically 0; "
        f"sampled averages agree within {worst_mc:.3e}",
    )


def _check_bs_port_conservation(col: _Collector):
    # The monitored-port intensity (s0 + s1) / 2 must be r nbar1 + t nbar2
    # plus an interference term that is odd in the relative phase and bounded
    # by 2 sqrt(r t nbar1 nbar2); opposite phases then average back to the
    # phase-free split and the two output ports together conserve photons.
    worst_cancel = 0.0
    worst_amp = -math.inf
    bs = BeamSplitter(0.35, 0.65)
    n1, n2 = 2.0, 3.0
    baseline = bs.r * n1 + bs.t * n2
    bound = 2.0 * math.sqrt(bs.r * bs.t * n1 * n2)
    p2 = PulseSpec(n0=n2)
    p3 = PulseSpec(n0=1.5, phi_lin=0.8)
    for phase in np.linspace(0.0, 2.0 * math.pi, 13):
        pos = averages_bs(PulseSpec(n0=n1, phi_lin=float(phase)), p2, p3, bs, 0.0)
        neg = averages_bs(PulseSpec(n0=n1, phi_lin=-float(phase)), p2, p3, bs, 0.0)
        port_pos = 0.5 * (pos.s0 + pos.s1)
        port_neg = 0.5 * (neg.s0 + neg.s1)
        worst_cancel = max(worst_cancel, abs(0.5 * (port_pos + port_neg) - baseline))
        worst_amp = max(worst_amp, abs(port_pos - baseline))
    ok = worst_cancel < EXACT_TOL and worst_amp <= bound + EXACT_TOL
    col.add(
        "bs-port-conservation",
        ok,
        EXACT_TOL,
        f"opposite-phase ports average to r nbar1 + t nbar2 within {worst_cancel:.3e}; "
        f"interference amplitude {worst_amp:.6f} <= {bound:.6f}",
    )


def _check_dop_bounded(col: _Collector, rng):
    worst = 0.0
    for _ in range(50):
        p1 = PulseSpec(
            n0=float(rng.uniform(0.0, 50.0)),
            gamma=0.0,
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        p2 = PulseSpec(
            n0=float(rng.uniform(0.1, 50.0)),
            gamma=float(rng.uniform(0.0, 0.01)),
            phi_lin=float(rng.uniform(0.0, 2.0 * math.pi)),
        )
        summary = averages_coh_sq(p1, p2, 0.0)
        summary2 = averages_two_sq(p1, p2, 0.0)
        for s in (summary, summary2):
            if s.s0 > 0.0:
                worst = max(worst, s.degree_of_polarization)
    col.add(
        "dop-bounded",
        worst <= 1.0 + EXACT_TOL,
        EXACT_TOL,
        f"largest degree of polarization seen: {worst:.12f} (Kerr damping only shrinks it)",
    )


def _check_vector_scalar_consistency(col: _Collector):
    kern = CorrelationKernel(-0.37, 0.81, 0.0, StokesIndex.S2)
    grid = np.linspace(0.0, 5.0, 257)
    series = spectrum(kern, grid, reference_intensity=2.0)
    scalars = np.array([spectrum_value(kern, float(om)) for om in grid])
    identical = np.array_equal(series.values, scalars)
    col.add(
        "spectrum-grid-vs-scalar",
        identical,
        None,
        "vectorized spectrum equals the scalar evaluation bit-for-bit",
    )


def _check_api_guards(col: _Collector):
    ok = True
    try:
        scan_phase(lambda d: CorrelationKernel(0.0, 0.0, 0.0, StokesIndex.S2), 0.0, resolution=100)
        ok = False
    except ValueError:
        pass
    try:
        QuadratureSpec(points=4002)
        ok = False
    except ValueError:
        pass
    try:
        QuadratureSpec(truncation=5.0)
        ok = False
    except ValueError:
        pass
    col.add(
        "api-guards",
        ok,
        None,
        "coarse scan resolutions and inadequate quadrature settings are rejected",
    )


def run_checks(tau_r_mismatch: float = 1.0) -> VerifyReport:
    """Run the full self-check suite; see module docstring for the fault hook."""
    start = time.perf_counter()
    col = _Collector()
    rng = np.random.default_rng(SEED)
    _check_fourier_pairs(col, tau_r_mismatch)
    _check_quadrature_basics(col)
    _check_wk_random(col, rng)
    _check_mc_phasor(col)
    _check_optimum_coh_sq(col, rng)
    _check_optimum_two_sq(col, rng)
    _check_optimum_xpm(col, rng)
    _check_optimum_bs_s01(col, rng, StokesIndex.S0)
    _check_optimum_bs_s01(col, rng, StokesIndex.S1)
    _check_optimum_bs_s2(col, rng)
    _check_known_minima(col)
    _check_reductions(col, rng)
    _check_duality(col, rng)
    _check_probe_independence(col)
    _check_coherent_baseline(col)
    _check_bs_port_conservation(col)
    _check_dop_bounded(col, rng)
    _check_vector_scalar_consistency(col)
    _check_api_guards(col)
    elapsed = time.perf_counter() - start
    return VerifyReport(
        passed=all(c.passed for c in col.checks),
        checks=tuple(col.checks),
        optimizer_flags=tuple(sorted(col.flags)),
        elapsed_seconds=elapsed,
    )
