"""Joint cavity-coupler Hamiltonian parameters and pumped interaction rates.

Two far-detuned cavities hybridize weakly with the coupler mode; in the
dispersive regime their dressed frequencies, inherited Kerr interactions and
the pump-activated beamsplitter rate all follow from the coupler spectrum,
the linear couplings g_a, g_b and the mode detunings.  Frequencies are
non-angular (GHz for modes, MHz for couplings) at every interface.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import CouplerSpectrum
from .errors import (AmplitudeAboveCritical, DispersiveViolation,
                     ResonantDenominator)
from .fitting import FitResult, fit_least_squares

HBAR_SI = 1.054571817e-34  # J*s

DISPERSIVE_GUARD = 0.2
DEFAULT_DENOMINATOR_GUARD_GHZ = 1e-3  # 1 MHz


@dataclass(frozen=True)
class LinearCoupling:
    """Bare cavity frequencies (GHz) and cavity-coupler couplings (MHz)."""

    g_a: float
    g_b: float
    omega_a_bare: float
    omega_b_bare: float

    def check_dispersive(self, omega_c):
        """Raise DispersiveViolation unless |g/(Omega - omega_c)| < 0.2 for both modes."""
        for g_mhz, omega in ((self.g_a, self.omega_a_bare), (self.g_b, self.omega_b_bare)):
            ratio = abs(g_mhz * 1e-3 / (omega - omega_c))
            if ratio >= DISPERSIVE_GUARD:
                raise DispersiveViolation(
                    f"|g/Delta| = {ratio:.3f} >= {DISPERSIVE_GUARD} at omega_c={omega_c} GHz"
                )


@dataclass(frozen=True)
class PumpConfig:
    """Drive on the coupler: dimensionless displacement xi and detuning.

    xi is complex; its phase theta sets the beamsplitter phase.  delta_mhz is
    the pump detuning from the dressed difference frequency.  Pump-induced
    Stark shifts are not predicted here; they enter as a calibrated offset
    within delta_mhz.
    """

    xi: complex
    omega_p: float = 0.0
    delta_mhz: float = 0.0

    @property
    def amplitude(self):
        return abs(self.xi)

    @property
    def theta(self):
        return float(np.angle(self.xi))


@dataclass(frozen=True)
class SystemModel:
    """Dressed two-cavity + two-ancilla model with decoherence constants.

    Frequencies in GHz, dispersive shifts and anharmonicities in MHz, Kerr
    and cross-Kerr rates in kHz, coherence times in microseconds.  The "b"
    ancilla is the cSWAP control.
    """

    omega_a: float
    omega_b: float
    chi_a_mhz: float
    chi_b_mhz: float
    k_a_khz: float
    k_b_khz: float
    chi_ab_khz: float
    chi_ac_khz: float = 0.0
    chi_bc_khz: float = 0.0
    chi_prime_bc_khz: float = 0.0
    alpha_qt_a_mhz: float = -180.0
    alpha_qt_b_mhz: float = -180.0
    t1_cav_a: float = math.inf
    tphi_cav_a: float = math.inf
    t1_cav_b: float = math.inf
    tphi_cav_b: float = math.inf
    t1_anc_a: float = math.inf
    tphi_anc_a: float = math.inf
    t1_anc_b: float = math.inf
    tphi_anc_b: float = math.inf

    def __post_init__(self):
        for name in ("t1_cav_a", "tphi_cav_a", "t1_cav_b", "tphi_cav_b",
                     "t1_anc_a", "tphi_anc_a", "t1_anc_b", "tphi_anc_b"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def dressed_frequencies(lc, omega_c):
    """Dressed cavity frequencies (GHz) to second order in g/Delta."""
    lc.check_dispersive(omega_c)
    omega_a = lc.omega_a_bare - (lc.g_a * 1e-3) ** 2 / (omega_c - lc.omega_a_bare)
    omega_b = lc.omega_b_bare - (lc.g_b * 1e-3) ** 2 / (omega_c - lc.omega_b_bare)
    return float(omega_a), float(omega_b)


def fit_linear_coupling(data, initial):
    """Fit (g, Omega_bare) per cavity to (omega_c, omega_dressed) samples.

    ``data`` holds (omega_c_ghz, omega_dressed_ghz) pairs for one cavity;
    ``initial`` supplies the starting guess via (g_mhz, omega_bare_ghz).
    Returns a FitResult with params (g_mhz, omega_bare_ghz).
    """
    data = np.asarray(data, dtype=float)
    if data.shape[0] < 3:
        raise ValueError("need at least 3 samples")
    omega_c, omega_d = data[:, 0], data[:, 1]

    def resid(p):
        g_mhz, omega_bare = p
        return omega_bare - (g_mhz * 1e-3) ** 2 / (omega_c - omega_bare) - omega_d

    return fit_least_squares(resid, list(initial), names=("g_mhz", "omega_bare_ghz"))


def _harmonic_combination(omega_a, omega_b, omega_c, guard_ghz):
    denominators = (omega_a - omega_b - omega_c,
                    -omega_a + omega_b - omega_c,
                    omega_a + omega_b - omega_c,
                    -omega_a - omega_b - omega_c)
    for d in denominators:
        if abs(d) < guard_ghz:
            raise ResonantDenominator(f"three-mode denominator {d*1e3:.3f} MHz below guard")
    return 1.0 / sum(1.0 / d for d in denominators)


def hybridization_ratios(spec, lc):
    """(g_a/Delta_a, g_b/Delta_b) with the dressed detunings, dimensionless."""
    omega_a, omega_b = dressed_frequencies(lc, spec.omega_c)
    ra = (lc.g_a * 1e-3) / (omega_a - spec.omega_c)
    rb = (lc.g_b * 1e-3) / (omega_b - spec.omega_c)
    return ra, rb


def predict_cross_kerr(spec, lc, *, guard_ghz=DEFAULT_DENOMINATOR_GUARD_GHZ):
    """Cavity-cavity cross-Kerr chi_ab in kHz.

    First order in g4 plus second order in g3 with the four-term harmonic
    combination of the mode frequencies; fourth order in the hybridization.
    """
    omega_a, omega_b = dressed_frequencies(lc, spec.omega_c)
    ra, rb = hybridization_ratios(spec, lc)
    omega_t = _harmonic_combination(omega_a, omega_b, spec.omega_c, guard_ghz)
    chi_ghz = (24.0 * spec.g4 + 36.0 * spec.g3 ** 2 / omega_t) * ra ** 2 * rb ** 2
    return float(chi_ghz * 1e6)


def predict_self_kerr(spec, lc, chi_at_mhz, alpha_at_mhz, *, mode="a",
                      guard_ghz=DEFAULT_DENOMINATOR_GUARD_GHZ):
    """Cavity self-Kerr K in kHz: coupler contribution plus chi^2/(4 alpha).

    The coupler term resonates when omega_c = 2*omega_cavity; a guard raises
    ResonantDenominator there.
    """
    omega_a, omega_b = dressed_frequencies(lc, spec.omega_c)
    omega = omega_a if mode == "a" else omega_b
    ra, rb = hybridization_ratios(spec, lc)
    r = ra if mode == "a" else rb
    if abs(2.0 * omega - spec.omega_c) < guard_ghz:
        raise ResonantDenominator("omega_c = 2*omega resonance in the self-Kerr")
    coupler_ghz = (12.0 * spec.g4
                   - 18.0 * spec.g3 ** 2 * (2.0 * spec.omega_c / (4.0 * omega ** 2 - spec.omega_c ** 2)
                                            + 4.0 / spec.omega_c)) * r ** 4
    transmon_khz = 0.0
    if alpha_at_mhz != 0.0:
        transmon_khz = (chi_at_mhz ** 2 / (4.0 * alpha_at_mhz)) * 1e3
    return float(coupler_ghz * 1e6 + transmon_khz)


def critical_amplitude(spec):
    """Pump amplitude at which the drive reaches the adjacent potential well.

    The loaded potential is 6*pi-periodic with extrema 3*pi apart; with the
    peak drive excursion 2*phi_zpf*|xi| this gives |xi_crit| = 3*pi/(2*phi_zpf).
    """
    return float(3.0 * np.pi / (2.0 * spec.phi_zpf))


def beamsplitter_rate(spec, lc, pump, max_order=17):
    """Pumped beamsplitter rate g_bs in MHz (complex; arg = -arg(xi)).

    Resonant odd-order contributions within the rotating-wave approximation:

        g_bs = (g_a/D_a)(g_b/D_b) xi* sum_m (2m+1)!/(m!(m-1)!) g_{2m+1} |xi|^(2m-2),

    truncated at order min(max_order, 17).  The lowest-order term reduces to
    6 (g_a/D_a)(g_b/D_b) xi g_3.  Raises AmplitudeAboveCritical at |xi| >=
    xi_crit; the sharp experimental turn-around beyond the perturbative
    regime is non-RWA physics and is not modeled.
    """
    xi = complex(pump.xi)
    if abs(xi) >= critical_amplitude(spec):
        raise AmplitudeAboveCritical(f"|xi|={abs(xi):.2f} >= xi_crit={critical_amplitude(spec):.2f}")
    ra, rb = hybridization_ratios(spec, lc)
    top = min(max_order, 17)
    series = 0.0
    for n in range(3, top + 1, 2):
        if n not in spec.g_odd:
            break
        m = (n - 1) // 2
        weight = math.factorial(2 * m + 1) / (math.factorial(m) * math.factorial(m - 1))
        series += weight * spec.g_odd[n] * abs(xi) ** (2 * m - 2)
    g_bs_ghz = ra * rb * np.conj(xi) * series
    return complex(g_bs_ghz * 1e3)


def inherited_decoherence(lc, spec, gamma_c, gamma_c_phi, noise_model="pink"):
    """Decay/dephasing rates (1/us) each cavity inherits from the coupler.

    kappa = (g/Delta)^2 gamma_c for decay always; dephasing scales as
    (g/Delta)^4 for white coupler frequency noise and (g/Delta)^2 for pink.
    Returns {"a": (kappa, kappa_phi), "b": (kappa, kappa_phi)}.
    """
    if noise_model not in ("white", "pink"):
        raise ValueError("noise_model must be 'white' or 'pink'")
    ra, rb = hybridization_ratios(spec, lc)
    out = {}
    for label, r in (("a", ra), ("b", rb)):
        kappa = r ** 2 * gamma_c
        exponent = 4 if noise_model == "white" else 2
        kappa_phi = abs(r) ** exponent * gamma_c_phi
        out[label] = (float(kappa), float(kappa_phi))
    return out


def xi_from_network(z11, z21, rs, power_w, omega_p_ghz, omega_c_ghz,
                    ls_h, phi_zpf_flux_wb):
    """Pump amplitude |xi| delivered through the embedding network.

    |xi| = |Z21/(Z11+Rs)| sqrt(P*Rs) Phi_zpf / (hbar w_p L_s (w_p - w_c)),
    with angular frequencies; inputs are non-angular GHz, SI otherwise.
    """
    for name, val in (("rs", rs), ("power_w", power_w), ("ls_h", ls_h),
                      ("phi_zpf_flux_wb", phi_zpf_flux_wb)):
        if not np.isfinite(val) or val < 0:
            raise ValueError(f"{name} must be finite and non-negative")
    w_p = 2.0 * np.pi * omega_p_ghz * 1e9
    w_c = 2.0 * np.pi * omega_c_ghz * 1e9
    transfer = abs(z21 / (z11 + rs))
    return float(transfer * np.sqrt(power_w * rs) * phi_zpf_flux_wb
                 / (HBAR_SI * w_p * ls_h * abs(w_p - w_c)))


def beamsplitter_time_us(g_bs_mhz):
    """50:50 beamsplitter time t_bs = pi/(4 g_bs) in us, g_bs in MHz."""
    g_ang = 2.0 * np.pi * abs(g_bs_mhz)
    return float(np.pi / (4.0 * g_ang))


def composite_decoherence_time(tau_us, tau_phi_us):
    """tau_bs from 1/tau_bs = 1/tau + 1/(2 tau_phi)."""
    return 1.0 / (1.0 / tau_us + 0.5 / tau_phi_us)


@dataclass(frozen=True)
class BeamsplitterFigures:
    """Figure-of-merit bundle for one operating point."""

    g_bs_mhz: float
    chi_ab_khz: float
    tau_us: float
    tau_phi_us: float
    on_off_ratio: float = field(init=False)
    t_bs_us: float = field(init=False)
    tau_bs_us: float = field(init=False)
    bs_per_coherence: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "on_off_ratio",
                           abs(self.g_bs_mhz) * 1e3 / abs(self.chi_ab_khz)
                           if self.chi_ab_khz else math.inf)
        object.__setattr__(self, "t_bs_us", beamsplitter_time_us(self.g_bs_mhz))
        tau_bs = composite_decoherence_time(self.tau_us, self.tau_phi_us)
        object.__setattr__(self, "tau_bs_us", tau_bs)
        object.__setattr__(self, "bs_per_coherence", tau_bs / self.t_bs_us)
