"""Rotating-frame Hamiltonian assembly and time evolution.

Hamiltonians are assembled from non-angular coefficients (MHz, kHz) and
returned in angular rad/us for evolution over times in us.  The Lindblad
solver integrates the vectorized density matrix with an adaptive embedded
Runge-Kutta pair (scipy RK45).  Internally it works in the interaction
picture of the diagonal Hamiltonian part: diagonal phases and all diagonal
dissipator contributions are folded into one precomputed elementwise array,
and the few off-diagonal operators are re-phased per evaluation.  This keeps
the step size set by g_bs and the decay rates instead of by chi*n, which is
what makes dims (15, 15, 2) runs cheap.  Runge-Kutta steps preserve the
trace (a linear invariant) to roundoff by construction.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.integrate import solve_ivp

from .errors import DimensionMismatch, StepSizeUnderflow
from .hilbert import HilbertSpec, QuantumState, annihilation, embed, identity, number
from .units import TWO_PI

KHZ = 1e-3  # kHz in MHz


@dataclass(frozen=True)
class HamiltonianTerms:
    """Coefficients of the rotating-frame Hamiltonian, non-angular units.

    chi_a/chi_b are dispersive shifts of each cavity conditioned on the
    (control) ancilla excited state; delta_a is the beamsplitter detuning
    term Delta a'a and delta_b an optional frame detuning on b'b; Kerr and
    cross-Kerr terms in kHz; g_bs/theta the beamsplitter amplitude and pump
    phase; rabi an optional resonant ancilla drive.
    """

    chi_a_mhz: float = 0.0
    chi_b_mhz: float = 0.0
    delta_a_mhz: float = 0.0
    delta_b_mhz: float = 0.0
    kerr_a_khz: float = 0.0
    kerr_b_khz: float = 0.0
    chi_ab_khz: float = 0.0
    chi_prime_bc_khz: float = 0.0
    g_bs_mhz: float = 0.0
    theta: float = 0.0
    rabi_mhz: float = 0.0

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class CollapseSet:
    """Decay (1/T1) and pure-dephasing (1/Tphi) rates per mode, in 1/us."""

    decay_a: float = 0.0
    dephase_a: float = 0.0
    decay_b: float = 0.0
    dephase_b: float = 0.0
    decay_ancilla: float = 0.0
    dephase_ancilla: float = 0.0

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @classmethod
    def from_model(cls, model, *, ancilla="b"):
        """Rates from a SystemModel; the ancilla defaults to the cSWAP control."""
        t1q = model.t1_anc_b if ancilla == "b" else model.t1_anc_a
        tphiq = model.tphi_anc_b if ancilla == "b" else model.tphi_anc_a
        return cls(decay_a=1.0 / model.t1_cav_a, dephase_a=1.0 / model.tphi_cav_a,
                   decay_b=1.0 / model.t1_cav_b, dephase_b=1.0 / model.tphi_cav_b,
                   decay_ancilla=1.0 / t1q, dephase_ancilla=1.0 / tphiq)

    def any_active(self):
        return any(getattr(self, f) > 0 for f in self.__dataclass_fields__)


def _cavity_ops(spec):
    if len(spec.dims) != 3:
        raise DimensionMismatch("expected a (cavity, cavity, ancilla) space")
    da, db, dq = spec.dims
    a = embed(annihilation(da), 0, spec)
    b = embed(annihilation(db), 1, spec)
    pe = embed(np.diag([0.0, 1.0]).astype(complex), 2, spec) if dq == 2 else \
        embed(np.diag([0.0] + [1.0] * (dq - 1)).astype(complex), 2, spec)
    return a, b, pe


def build_hamiltonian(terms, spec):
    """Dense Hamiltonian in rad/us; Hermitian by construction."""
    a, b, pe = _cavity_ops(spec)
    na, nb = a.conj().T @ a, b.conj().T @ b
    h = np.zeros((spec.total_dim, spec.total_dim), dtype=complex)
    if terms.chi_a_mhz:
        h += terms.chi_a_mhz * na @ pe
    if terms.chi_b_mhz:
        h += terms.chi_b_mhz * nb @ pe
    if terms.delta_a_mhz:
        h += terms.delta_a_mhz * na
    if terms.delta_b_mhz:
        h += terms.delta_b_mhz * nb
    if terms.kerr_a_khz:
        h += 0.5 * terms.kerr_a_khz * KHZ * na @ (na - np.eye(spec.total_dim))
    if terms.kerr_b_khz:
        h += 0.5 * terms.kerr_b_khz * KHZ * nb @ (nb - np.eye(spec.total_dim))
    if terms.chi_ab_khz:
        h += terms.chi_ab_khz * KHZ * na @ nb
    if terms.chi_prime_bc_khz:
        h += terms.chi_prime_bc_khz * KHZ * nb @ (nb - np.eye(spec.total_dim)) @ pe
    if terms.g_bs_mhz:
        bs = terms.g_bs_mhz * np.exp(1j * terms.theta) * (a.conj().T @ b)
        h += bs + bs.conj().T
    if terms.rabi_mhz:
        sx = np.zeros((spec.dims[2], spec.dims[2]), dtype=complex)
        sx[0, 1] = sx[1, 0] = 1.0
        h += 0.5 * terms.rabi_mhz * embed(sx, 2, spec)
    return TWO_PI * h


def beamsplitter_generator(spec, theta=0.0):
    """The Hermitian exchange generator e^{i theta} a'b + h.c. (unit rate, rad/us per MHz)."""
    a, b, _ = _cavity_ops(spec)
    bs = np.exp(1j * theta) * (a.conj().T @ b)
    return TWO_PI * (bs + bs.conj().T)


def collapse_operators(collapse, spec):
    """List of (sqrt-rate-scaled operator, is_diagonal) Lindblad jump operators."""
    a, b, _ = _cavity_ops(spec)
    na, nb = a.conj().T @ a, b.conj().T @ b
    dq = spec.dims[2]
    sm = np.zeros((dq, dq), dtype=complex)
    sm[0, 1] = 1.0
    sminus = embed(sm, 2, spec)
    pe_local = np.zeros((dq, dq), dtype=complex)
    pe_local[1:, 1:] = np.eye(dq - 1)
    pe = embed(pe_local, 2, spec)

    ops = []
    if collapse.decay_a:
        ops.append((np.sqrt(collapse.decay_a) * a, False))
    if collapse.decay_b:
        ops.append((np.sqrt(collapse.decay_b) * b, False))
    if collapse.decay_ancilla:
        ops.append((np.sqrt(collapse.decay_ancilla) * sminus, False))
    if collapse.dephase_a:
        ops.append((np.sqrt(2.0 * collapse.dephase_a) * na, True))
    if collapse.dephase_b:
        ops.append((np.sqrt(2.0 * collapse.dephase_b) * nb, True))
    if collapse.dephase_ancilla:
        ops.append((np.sqrt(2.0 * collapse.dephase_ancilla) * pe, True))
    return ops


class LindbladWorkspace:
    """Precomputed interaction-picture right-hand side for one Hamiltonian.

    ``pulses`` is a list of (H_matrix rad/us, envelope(t)->float) pairs added
    on top of the static Hamiltonian.
    """

    def __init__(self, h_static, collapse, spec, pulses=()):
        n = spec.total_dim
        if h_static.shape != (n, n):
            raise DimensionMismatch("Hamiltonian does not match the space")
        self.n = n
        d = np.real(np.diag(h_static)).copy()
        self.d = d
        # The diagonal Hamiltonian evolves only through the interaction-
        # picture phases (applied in dress()); w carries every diagonal
        # dissipator contribution.
        w = np.zeros((n, n), dtype=complex)
        self._decay_ops = []
        for op, is_diag in collapse_operators(collapse, spec) if collapse else ():
            if is_diag:
                ell = np.real(np.diag(op))
                w = w - 0.5 * np.subtract.outer(ell, ell) ** 2
            else:
                ldl = np.real(np.diag(op.conj().T @ op))
                w = w - 0.5 * np.add.outer(ldl, ldl)
                self._decay_ops.append(self._phased_sparse(op, d))
        self.w = w
        h_od = h_static - np.diag(np.diag(h_static))
        self._h_terms = []
        if np.any(np.abs(h_od) > 1e-15):
            self._h_terms.append(self._phased_sparse(h_od, d) + (None,))
        for h_pulse, env in pulses:
            h_p = np.asarray(h_pulse, dtype=complex)
            diag_part = np.real(np.diag(h_p))
            if np.any(np.abs(diag_part) > 1e-15):
                # pulse diagonals stay Schroedinger-picture: handled as H terms
                raise ValueError("pulse Hamiltonians must be purely off-diagonal")
            self._h_terms.append(self._phased_sparse(h_p, d) + (env,))

    @staticmethod
    def _phased_sparse(op, d):
        m = sp.csr_matrix(op)
        m.eliminate_zeros()
        m.sort_indices()
        rows, cols = m.nonzero()
        rates = d[rows] - d[cols]
        return m, np.asarray(rates, dtype=float)

    def _at_time(self, m, rates, t):
        mt = m.copy()
        np.multiply(m.data, np.exp(1j * rates * t), out=mt.data)
        return mt

    def rhs(self, t, rho_flat):
        rho = rho_flat.reshape(self.n, self.n)
        out = np.multiply(self.w, rho)
        # rho stays Hermitian through RK stages (linear combinations of
        # Hermitian matrices), so -i[H, rho] = -i(H rho - (H rho)^dagger)
        # and (L rho)^dagger = rho L^dagger.
        for m, rates, env in self._h_terms:
            scale = 1.0 if env is None else env(t)
            if scale == 0.0:
                continue
            ht = self._at_time(m, rates, t)
            hr = ht @ rho
            hr -= hr.conj().T
            hr *= -1j * scale
            out += hr
        for m, rates in self._decay_ops:
            lt = self._at_time(m, rates, t)
            lr = lt @ rho
            out += lt @ lr.conj().T
        return out.ravel()

    def dress(self, rho, t):
        """Back to the Schroedinger picture at time t."""
        phase = np.exp(-1j * np.subtract.outer(self.d, self.d) * t)
        return rho * phase


def evolve_lindblad(state, h, collapse, t_us, dt_control=None, *,
                    pulses=(), atol=1e-9, rtol=1e-7, method="DOP853"):
    """Evolve a density matrix under the master equation for t_us.

    Adaptive embedded Runge-Kutta pair (8th-order DOP853 by default) with
    absolute local error tolerance atol per step; pass dt_control for the
    fixed-step classic RK4 fallback used in reproducibility runs.  Raises
    StepSizeUnderflow if the adaptive integrator collapses its step.
    """
    if t_us < 0:
        raise ValueError("t_us must be >= 0")
    if t_us == 0:
        return state
    ws = LindbladWorkspace(h, collapse, state.spec, pulses=pulses)
    y0 = state.rho.astype(complex).ravel()
    if dt_control:
        rho_t = _rk4_fixed(ws, y0, t_us, dt_control).reshape(ws.n, ws.n)
    else:
        sol = solve_ivp(ws.rhs, (0.0, t_us), y0, method=method,
                        atol=atol, rtol=rtol, dense_output=False)
        if not sol.success:
            raise StepSizeUnderflow(f"integrator failed: {sol.message}")
        rho_t = sol.y[:, -1].reshape(ws.n, ws.n)
    rho_t = ws.dress(rho_t, t_us)
    rho_t = 0.5 * (rho_t + rho_t.conj().T)
    return QuantumState(rho=rho_t, spec=state.spec, _skip_validation=True)


def _rk4_fixed(ws, y0, t_us, dt):
    n_steps = max(1, int(np.ceil(t_us / dt)))
    h_step = t_us / n_steps
    y = y0
    t = 0.0
    for _ in range(n_steps):
        k1 = ws.rhs(t, y)
        k2 = ws.rhs(t + h_step / 2, y + h_step / 2 * k1)
        k3 = ws.rhs(t + h_step / 2, y + h_step / 2 * k2)
        k4 = ws.rhs(t + h_step, y + h_step * k3)
        y = y + h_step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h_step
    return y


def propagator(h, t_us):
    """Dense unitary exp(-i H t) via eigendecomposition of the Hermitian H."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * evals * t_us)) @ evecs.conj().T


def evolve_unitary(state, h, t_us):
    """Closed-system evolution; preserves purity exactly by construction."""
    if t_us < 0:
        raise ValueError("t_us must be >= 0")
    u = propagator(h, t_us)
    if isinstance(state, QuantumState):
        return QuantumState(rho=u @ state.rho @ u.conj().T, spec=state.spec,
                            _skip_validation=True)
    return u @ state


def su2_solution(g_bs_mhz, theta, delta_mhz):
    """Detuned-exchange closed form: rate Omega, contrast, rotation axis.

    Omega = sqrt(g^2 + Delta^2/4) (same non-angular units as the inputs),
    contrast C = g^2/Omega^2, and the unit rotation axis
    (g cos(theta), g sin(theta), Delta/2)/Omega of the Heisenberg doublet.
    """
    g = float(g_bs_mhz)
    delta = float(delta_mhz)
    omega = np.sqrt(g ** 2 + 0.25 * delta ** 2)
    if omega == 0:
        return 0.0, 1.0, np.array([0.0, 0.0, 1.0])
    contrast = g ** 2 / omega ** 2
    axis = np.array([g * np.cos(theta), g * np.sin(theta), 0.5 * delta]) / omega
    return float(omega), float(contrast), axis


def heisenberg_propagator(g_bs_mhz, theta, delta_mhz, t_us, *, delta_on="a"):
    """2x2 propagator of the mode doublet (a, b) under the detuned exchange.

    With the detuning on a'a the generator is [[Delta, g e^{i theta}],
    [g e^{-i theta}, 0]] (angular); the doublet evolves as exp(-i M t).
    """
    g = TWO_PI * g_bs_mhz
    delta = TWO_PI * delta_mhz
    if delta_on == "a":
        m = np.array([[delta, g * np.exp(1j * theta)],
                      [g * np.exp(-1j * theta), 0.0]], dtype=complex)
    else:
        m = np.array([[0.0, g * np.exp(1j * theta)],
                      [g * np.exp(-1j * theta), delta]], dtype=complex)
    evals, evecs = np.linalg.eigh(m)
    return (evecs * np.exp(-1j * evals * t_us)) @ evecs.conj().T


def decay_envelope_model(t_us, g_bs_mhz, theta, tau_us, tau_phi_us):
    """Population-exchange envelopes for the driven single-photon manifold.

    P_{01/10}(t) = 1/2 e^{-t/tau} (1 +/- e^{-t/tau_phi} cos(2 g_bs t + theta)).
    """
    t = np.asarray(t_us, dtype=float)
    osc = np.exp(-t / tau_phi_us) * np.cos(2.0 * TWO_PI * g_bs_mhz * t + theta)
    base = 0.5 * np.exp(-t / tau_us)
    return base * (1.0 + osc), base * (1.0 - osc)
