"""Flux-tunable SNAIL coupler: potential expansion and quantized spectrum.

The coupler is an asymmetric Josephson loop (one small junction of energy
beta*E_J shunted by M large junctions of energy E_J each) biased by an
external flux, in series with a linear stray/lead inductance E_L and shunted
by a capacitance E_C.  Everything here works with energies expressed as
frequencies, E/h in GHz, and returns non-angular GHz quantities.

The dimensionless single-loop potential is

    u(phi) = U_s / E_J = -beta*cos(phi - phi_e) - M*cos(phi/M),

with phi_e = 2*pi * (flux in units of the flux quantum).  For beta < 1/M the
potential has a single minimum per period; its position phi_m and the Taylor
coefficients c_n of u about it are computed analytically.  The series lead
inductance renormalizes c_n -> ctilde_n; the closed forms are known through
fifth order and higher orders are produced by eliminating the internal node
order-by-order in a power series (see taylor_coefficients).
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import MultiStableRegime, NonConvergence, UnstablePotential
from .fitting import FitResult, fit_least_squares

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SnailCircuit:
    """Electromagnetic parameters of the coupler.

    ej, el, ec are E_J/h, E_L/h, E_C/h in GHz.  beta is the small-to-large
    junction energy ratio, m_junctions the number of large junctions M,
    n_snails the number of loops arrayed in series, and phi_e the external
    flux in units of the flux quantum (the phase drop is 2*pi*phi_e).
    """

    ej: float
    el: float
    ec: float
    beta: float
    m_junctions: int = 3
    n_snails: int = 1
    phi_e: float = 0.0

    def __post_init__(self):
        if self.ej <= 0 or self.el <= 0 or self.ec <= 0:
            raise ValueError("ej, el and ec must all be positive")
        if not (0 < self.beta < 1.0 / self.m_junctions):
            if self.beta <= 0:
                raise ValueError("beta must be positive")
            raise MultiStableRegime(
                f"beta={self.beta} >= 1/M={1.0 / self.m_junctions}: multi-welled potential"
            )
        if self.m_junctions < 1 or self.n_snails < 1:
            raise ValueError("m_junctions and n_snails must be positive integers")

    def at_flux(self, phi_e):
        return replace(self, phi_e=float(phi_e))

    @property
    def phase_e(self):
        """External phase 2*pi*Phi_e/Phi_0 in radians."""
        return TWO_PI * self.phi_e


@dataclass(frozen=True)
class PotentialExpansion:
    """Taylor data of the loaded potential about its minimum.

    ``c`` and ``c_tilde`` are indexed by derivative order: c[n] is the n-th
    coefficient, entries below n=2 are zero.  ``p`` is the inductive
    participation of the junctions, p = E_L / (E_L + c2*E_J); p -> 1 as the
    lead inductance vanishes (E_L -> infinity).
    """

    phi_m: float
    c: np.ndarray
    c_tilde: np.ndarray
    p: float

    @property
    def nmax(self):
        return len(self.c) - 1


@dataclass(frozen=True)
class CouplerSpectrum:
    """Quantized coupler parameters at one flux point (non-angular GHz)."""

    omega_c: float
    phi_zpf: float
    g_odd: dict
    g4: float
    alpha_c: float
    phi_e: float = 0.0

    @property
    def g3(self):
        return self.g_odd[3]

    @property
    def g5(self):
        return self.g_odd.get(5, 0.0)


def potential(circuit, phi):
    """Dimensionless loop potential u = U_s/E_J at junction phase phi."""
    phi = np.asarray(phi, dtype=float)
    m = circuit.m_junctions
    return -circuit.beta * np.cos(phi - circuit.phase_e) - m * np.cos(phi / m)


def potential_derivative(circuit, phi, order=1):
    """Exact n-th derivative of u with respect to phi.

    Uses d^n/dphi^n cos(x) = cos(x + n*pi/2); valid for any order >= 1.
    """
    phi = np.asarray(phi, dtype=float)
    m = circuit.m_junctions
    shift = order * np.pi / 2.0
    return (-circuit.beta * np.cos(phi - circuit.phase_e + shift)
            - m ** (1 - order) * np.cos(phi / m + shift))


def solve_potential_minimum(circuit, guess=None, tol=1e-13, max_iter=60):
    """Locate the potential minimum phi_m, tracked from ``guess``.

    Newton iteration on du/dphi seeded from ``guess`` (or the symmetric-point
    minimum at 0), falling back to a scan-and-bisect over one 2*pi*M period
    when Newton strays or stalls.  Raises MultiStableRegime for beta >= 1/M
    and NonConvergence if neither stage reaches |du/dphi| < 1e-12.
    """
    if circuit.beta >= 1.0 / circuit.m_junctions:
        raise MultiStableRegime("beta >= 1/M")
    x = 0.0 if guess is None else float(guess)
    period = TWO_PI * circuit.m_junctions

    for _ in range(max_iter):
        f = potential_derivative(circuit, x, 1)
        fp = potential_derivative(circuit, x, 2)
        if fp <= 0:
            break
        step = f / fp
        x -= step
        if abs(step) < tol and abs(potential_derivative(circuit, x, 1)) < 1e-12:
            return x

    # Fallback: dense scan for the global minimum near the seed, then bisect.
    center = 0.0 if guess is None else float(guess)
    grid = np.linspace(center - period / 2, center + period / 2, 4001)
    values = potential(circuit, grid)
    k = int(np.argmin(values))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    flo = potential_derivative(circuit, lo, 1)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = potential_derivative(circuit, mid, 1)
        if abs(fmid) < 1e-13 or (hi - lo) < 1e-15:
            break
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    if abs(potential_derivative(circuit, x, 1)) > 1e-12:
        raise NonConvergence("minimum search exceeded iteration budget")
    return x


def _poly_mul(a, b, nmax):
    """Product of coefficient arrays truncated at power nmax."""
    out = np.convolve(a, b)[: nmax + 1]
    if len(out) < nmax + 1:
        out = np.pad(out, (0, nmax + 1 - len(out)))
    return out


def _poly_pow(a, k, nmax):
    out = np.zeros(nmax + 1)
    out[0] = 1.0
    for _ in range(k):
        out = _poly_mul(out, a, nmax)
    return out


def _renormalize_series(c, lam, nmax):
    """Renormalized coefficients of the inductively loaded potential.

    The junction (Taylor coefficients ``c``) sits in series with a linear
    inductor of dimensionless energy lam = E_L/E_J.  At fixed total phase Phi
    the internal junction phase x minimizes

        u(x; Phi) = sum_n c_n x^n / n!  +  lam (Phi - x)^2 / 2.

    Solving the stationarity condition as a power series x(Phi) and
    recomposing gives the loaded potential's Taylor coefficients.  Validated
    against the closed forms for n <= 5.
    """
    c = np.asarray(c, dtype=float)
    c2 = c[2]
    denom = lam + c2
    # x(Phi) as a coefficient array in Phi; leading order x = p*Phi.
    x = np.zeros(nmax + 1)
    x[1] = lam / denom
    for _ in range(nmax + 1):
        # x <- (lam*Phi - sum_{n>=3} c_n x^(n-1)/(n-1)!) / (lam + c2)
        acc = np.zeros(nmax + 1)
        acc[1] = lam
        for n in range(3, nmax + 1):
            if c[n] == 0.0:
                continue
            acc -= c[n] / _factorial(n - 1) * _poly_pow(x, n - 1, nmax)
        x = acc / denom

    u = np.zeros(nmax + 1)
    for n in range(2, nmax + 1):
        if c[n] != 0.0:
            u += c[n] / _factorial(n) * _poly_pow(x, n, nmax)
    phi_minus_x = -x.copy()
    phi_minus_x[1] += 1.0
    u += 0.5 * lam * _poly_mul(phi_minus_x, phi_minus_x, nmax)

    c_tilde = np.array([u[n] * _factorial(n) for n in range(nmax + 1)])
    c_tilde[:2] = 0.0
    return c_tilde


def _factorial(n):
    return float(math.factorial(n))


def closed_form_c_tilde(c, p):
    """Closed-form ctilde_2..ctilde_5 used to validate the series route.

    The quintic term carries c3^3 (odd under flux reversal, like c5 itself);
    derivable by carrying the node elimination to fourth order in the phase.
    """
    c2, c3, c4, c5 = c[2], c[3], c[4], c[5]
    q = 1.0 - p
    return {
        2: p * c2,
        3: p ** 3 * c3,
        4: p ** 4 * (c4 - 3.0 * c3 ** 2 / c2 * q),
        5: p ** 5 * (c5 - 10.0 * c4 * c3 / c2 * q + 15.0 * c3 ** 3 / c2 ** 2 * q ** 2),
    }


def taylor_coefficients(circuit, phi_m, nmax=17):
    """Bare and renormalized Taylor coefficients of the potential at phi_m.

    Bare c_n come from exact analytic differentiation of the loop potential.
    For an array of N loops in series the expansion about the total phase
    rescales c_n -> c_n N^(1-n) with the junction energy scale N*E_J, leaving
    c2*E_J and hence the inductance unchanged.
    """
    if nmax < 4:
        raise ValueError("nmax must be at least 4")
    n_arr = circuit.n_snails
    c = np.zeros(nmax + 1)
    for n in range(2, nmax + 1):
        c[n] = potential_derivative(circuit, phi_m, n) * n_arr ** (1 - n)
    if c[2] <= 0:
        raise UnstablePotential("second derivative at phi_m is not positive")
    ej_eff = circuit.ej * n_arr
    lam = circuit.el / ej_eff
    p = lam / (lam + c[2])
    c_tilde = _renormalize_series(c, lam, nmax)
    return PotentialExpansion(phi_m=float(phi_m), c=c, c_tilde=c_tilde, p=float(p))


def quantize(circuit, expansion, max_order=17):
    """Second-quantized coupler parameters from the loaded expansion.

    omega_c = sqrt(8 ctilde_2 E_C E_J), phi_zpf = (2 E_C / (ctilde_2 E_J))^(1/4),
    g_n = E_J phi_zpf^n ctilde_n / n!, and the anharmonicity from second-order
    perturbation theory in g3, alpha_c = 12*(g4 - 5 g3^2 / omega_c).
    """
    ct = expansion.c_tilde
    if ct[2] <= 0:
        raise UnstablePotential("ctilde_2 <= 0: no stable quantized mode")
    ej_eff = circuit.ej * circuit.n_snails
    omega_c = float(np.sqrt(8.0 * ct[2] * circuit.ec * ej_eff))
    phi_zpf = float((2.0 * circuit.ec / (ct[2] * ej_eff)) ** 0.25)
    top = min(max_order, expansion.nmax)
    g = {n: ej_eff * phi_zpf ** n * ct[n] / _factorial(n) for n in range(3, top + 1)}
    g_odd = {n: g[n] for n in range(3, top + 1, 2)}
    g4 = g.get(4, 0.0)
    alpha_c = 12.0 * (g4 - 5.0 * g[3] ** 2 / omega_c)
    return CouplerSpectrum(omega_c=omega_c, phi_zpf=phi_zpf, g_odd=g_odd,
                           g4=float(g4), alpha_c=float(alpha_c), phi_e=circuit.phi_e)


def spectrum_at_flux(circuit, phi_e, *, nmax=17, max_order=17, guess=None):
    """Convenience: minimum + expansion + quantization at one flux point."""
    circ = circuit.at_flux(phi_e)
    phi_m = solve_potential_minimum(circ, guess=guess)
    expansion = taylor_coefficients(circ, phi_m, nmax=nmax)
    return quantize(circ, expansion, max_order=max_order), phi_m


def sweep_spectrum(circuit, phi_values, *, nmax=17, max_order=17):
    """Coupler spectra over a flux sweep with the minimum tracked continuously."""
    spectra = []
    guess = None
    for phi_e in phi_values:
        spec, guess = spectrum_at_flux(circuit, phi_e, nmax=nmax,
                                       max_order=max_order, guess=guess)
        spectra.append(spec)
    return spectra


def oscillator_hamiltonian(spectrum, dim=40):
    """Dense truncated Hamiltonian omega_c n + g3 (c+c')^3 + g4 (c+c')^4 in GHz."""
    n = np.arange(dim)
    a = np.diag(np.sqrt(n[1:]), 1)
    x = a + a.T
    x3 = x @ x @ x
    h = np.diag(spectrum.omega_c * n) + spectrum.g3 * x3 + spectrum.g4 * (x3 @ x)
    return h


def anharmonicity_exact(spectrum, dim=40):
    """Anharmonicity E_ef - E_ge from exact diagonalization of the truncated mode."""
    evals = np.linalg.eigvalsh(oscillator_hamiltonian(spectrum, dim))
    return float(evals[2] - 2.0 * evals[1] + evals[0])


def _model_omega_c(params, phi_values, m_junctions, n_snails):
    ej, el, ec, beta = params
    try:
        circ = SnailCircuit(ej=ej, el=el, ec=ec, beta=beta,
                            m_junctions=m_junctions, n_snails=n_snails)
    except (ValueError, MultiStableRegime):
        return np.full(len(phi_values), 1e6)
    out = np.empty(len(phi_values))
    guess = None
    for i, phi_e in enumerate(phi_values):
        c = circ.at_flux(phi_e)
        try:
            phi_m = solve_potential_minimum(c, guess=guess)
        except NonConvergence:
            return np.full(len(phi_values), 1e6)
        guess = phi_m
        exp = taylor_coefficients(c, phi_m, nmax=5)
        out[i] = np.sqrt(8.0 * exp.c_tilde[2] * ec * ej * n_snails)
    return out


@dataclass(frozen=True)
class CircuitFit:
    circuit: SnailCircuit
    sigmas: dict
    fit: FitResult = field(repr=False, default=None)


def fit_circuit(data, initial):
    """Fit (E_J, E_L, E_C, beta) to coupler frequency-vs-flux samples.

    ``data`` is a sequence of (phi_e, omega_c_ghz) pairs; at least four
    samples at distinct fluxes are required.  Returns the fitted circuit with
    covariance-derived one-sigma uncertainties.  The room-temperature
    resistance constraint sometimes used to pin E_J is not applied; the fit
    is unconstrained.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] < 4:
        raise ValueError("need at least 4 (phi_e, omega_c) samples")
    if len(np.unique(data[:, 0])) < 4:
        raise ValueError("samples must span at least 4 distinct fluxes")
    phi_values, omega_data = data[:, 0], data[:, 1]

    def resid(p):
        return _model_omega_c(p, phi_values, initial.m_junctions, initial.n_snails) - omega_data

    x0 = [initial.ej, initial.el, initial.ec, initial.beta]
    upper = [np.inf, np.inf, np.inf, 1.0 / initial.m_junctions - 1e-9]
    result = fit_least_squares(resid, x0, names=("ej", "el", "ec", "beta"),
                               bounds=([1e-6, 1e-6, 1e-9, 1e-6], upper))
    ej, el, ec, beta = result.params
    fitted = SnailCircuit(ej=ej, el=el, ec=ec, beta=beta,
                          m_junctions=initial.m_junctions,
                          n_snails=initial.n_snails, phi_e=initial.phi_e)
    sigmas = dict(zip(("ej", "el", "ec", "beta"), result.sigmas))
    return CircuitFit(circuit=fitted, sigmas=sigmas, fit=result)
