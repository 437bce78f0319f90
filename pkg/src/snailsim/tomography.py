"""Wigner sampling and Pauli tomography in the coherent-state qubit basis.

A logical qubit lives in span{|alpha>, |-alpha>} of each cavity.  Displaced
parity measurements at four points per mode (+alpha, -alpha, 0 and the small
imaginary displacement i*pi/(8 alpha)) combine linearly into the Pauli
expectations; the Y point carries an intrinsic scale e^{-pi^2/(32 alpha^2)}
(~0.857 at alpha = sqrt(2)) because the coherent-basis Y operator cannot be
expressed exactly by one Wigner point.  Two-mode Paulis use the 16 pairwise
displacement combinations of the same points.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import TruncationError
from .hilbert import QuantumState, coherent_state, displacement, embed, parity

_IMAG_TOL = 1e-9


def _displaced_parity_op(beta, dim):
    d = displacement(beta, dim)
    return d @ parity(dim) @ d.conj().T


def wigner(state, mode, beta):
    """Local displaced-parity value <D(beta) P D(beta)^dag> for one mode."""
    sites = _cavity_sites(state)
    site = sites[mode] if isinstance(mode, int) and mode < len(sites) else state.spec.site(mode)
    reduced = state.ptrace([site]) if len(state.spec.dims) > 1 else state
    op = _displaced_parity_op(beta, reduced.spec.dims[0])
    val = reduced.expectation(op)
    if abs(val.imag) > _IMAG_TOL:
        raise ValueError(f"Wigner value has imaginary part {val.imag:.2e}")
    return float(val.real)


def joint_wigner(state, beta_a, beta_b):
    """Joint displaced parity <D_A D_B P_A P_B D_A^dag D_B^dag>."""
    sa, sb = _cavity_sites(state)
    reduced = state if len(state.spec.dims) == 2 else state.ptrace([sa, sb])
    da, db = reduced.spec.dims
    op = np.kron(_displaced_parity_op(beta_a, da), _displaced_parity_op(beta_b, db))
    val = reduced.expectation(op)
    if abs(val.imag) > _IMAG_TOL:
        raise ValueError(f"joint Wigner value has imaginary part {val.imag:.2e}")
    return float(val.real)


def _cavity_sites(state):
    labels = state.spec.labels
    if "a" in labels and "b" in labels:
        return labels.index("a"), labels.index("b")
    return 0, min(1, len(state.spec.dims) - 1)


@dataclass(frozen=True)
class PauliDisplacementSet:
    """Displacements and combination coefficients for one mode's Paulis.

    beta_points maps a point key to the displacement; combos maps each Pauli
    label to {point key: coefficient}.  y_scale is the intrinsic Y readout
    scale e^{-pi^2/(32 alpha^2)}.
    """

    alpha: float
    beta_points: dict = field(default=None)
    combos: dict = field(default=None)
    y_scale: float = field(default=None)

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta_points is None:
            beta4 = 1j * math.pi / (8.0 * self.alpha)
            object.__setattr__(self, "beta_points", {
                "plus": complex(self.alpha),
                "minus": complex(-self.alpha),
                "origin": 0j,
                "y": beta4,
            })
        if self.combos is None:
            object.__setattr__(self, "combos", {
                "I": {"plus": 1.0, "minus": 1.0},
                "Z": {"plus": 1.0, "minus": -1.0},
                "X": {"origin": 1.0},
                "Y": {"y": 1.0},
            })
        if self.y_scale is None:
            object.__setattr__(self, "y_scale",
                               math.exp(-math.pi ** 2 / (32.0 * self.alpha ** 2)))

    @property
    def max_displacement(self):
        return max(abs(b) for b in self.beta_points.values())


PAULI_LABELS = ("I", "X", "Y", "Z")


@dataclass
class PauliTable:
    """4x4 two-qubit Pauli expectations, I/X/Y/Z ordering; YY stored raw."""

    values: np.ndarray
    y_scale: float

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (4, 4):
            raise ValueError("expected a 4x4 table")

    def get(self, pauli_a, pauli_b, *, rescale_yy=False):
        i, j = PAULI_LABELS.index(pauli_a), PAULI_LABELS.index(pauli_b)
        val = self.values[i, j]
        if rescale_yy:
            val /= self.y_scale ** (int(pauli_a == "Y") + int(pauli_b == "Y"))
        return float(val)

    def scaled(self, factor):
        return PauliTable(values=self.values * factor, y_scale=self.y_scale)

    def as_dict(self, *, rescale_yy=False):
        return {
            f"{pa}{pb}": self.get(pa, pb, rescale_yy=rescale_yy)
            for pa in PAULI_LABELS for pb in PAULI_LABELS
        }


def _check_displacement_range(state, sites, pds):
    """The displaced basis states must still fit the truncation."""
    worst = pds.alpha + pds.max_displacement
    for site in sites:
        dim = state.spec.dims[site]
        try:
            coherent_state(worst, dim, tail_tol=1e-6)
        except TruncationError as exc:
            raise TruncationError(
                f"displacement set exceeds validated range of dim {dim}: {exc}") from exc


def pauli_expectations(state, pds):
    """All 16 two-qubit Pauli expectations from 16 joint Wigner points.

    The YY entry is raw (carries y_scale^2); use PauliTable.get(...,
    rescale_yy=True) for the rescaled value.
    """
    sa, sb = _cavity_sites(state)
    reduced = state if len(state.spec.dims) == 2 else state.ptrace([sa, sb])
    _check_displacement_range(reduced, (0, 1), pds)
    da, db = reduced.spec.dims

    ops_a = {k: _displaced_parity_op(b, da) for k, b in pds.beta_points.items()}
    ops_b = {k: _displaced_parity_op(b, db) for k, b in pds.beta_points.items()}
    w = {}
    for ka, oa in ops_a.items():
        for kb, ob in ops_b.items():
            val = reduced.expectation(np.kron(oa, ob))
            if abs(val.imag) > _IMAG_TOL:
                raise ValueError("joint Wigner point came out complex")
            w[(ka, kb)] = val.real

    values = np.zeros((4, 4))
    for i, pa in enumerate(PAULI_LABELS):
        for j, pb in enumerate(PAULI_LABELS):
            total = 0.0
            for ka, ca in pds.combos[pa].items():
                for kb, cb in pds.combos[pb].items():
                    total += ca * cb * w[(ka, kb)]
            values[i, j] = total
    return PauliTable(values=values, y_scale=pds.y_scale)


def single_mode_pauli(state, mode, pds):
    """Single-mode Pauli expectations {I, X, Y, Z} (Y raw) from 4 Wigner points."""
    out = {}
    for label in PAULI_LABELS:
        total = 0.0
        for key, coef in pds.combos[label].items():
            total += coef * wigner(state, mode, pds.beta_points[key])
        out[label] = total
    return out


def bell_fidelity(table, *, rescale_yy=True):
    """F = (1/4)(<II> + <XX> + <YY> - <ZZ>).

    With rescale_yy the YY entry is divided by y_scale^2 so an ideal Bell
    state scores 1; without it the combination mirrors the error-budget
    table, whose YY column keeps the intrinsic readout scale.
    """
    return 0.25 * (table.get("I", "I")
                   + table.get("X", "X")
                   + table.get("Y", "Y", rescale_yy=rescale_yy)
                   - table.get("Z", "Z"))


def coherent_qubit_states(alpha, dim):
    """Logical basis and cardinal states of the coherent-state qubit."""
    plus = coherent_state(alpha, dim)
    minus = coherent_state(-alpha, dim)

    def normalized(v):
        return v / np.linalg.norm(v)

    return {
        "0": plus,
        "1": minus,
        "+X": normalized(plus + minus),
        "-X": normalized(plus - minus),
        "+Y": normalized(plus + 1j * minus),
        "-Y": normalized(plus - 1j * minus),
    }


def bell_state(alpha, dim, sign=+1):
    """Two-mode |alpha,-alpha> + sign |-alpha,alpha>, normalized."""
    plus = coherent_state(alpha, dim)
    minus = coherent_state(-alpha, dim)
    psi = np.kron(plus, minus) + sign * np.kron(minus, plus)
    return psi / np.linalg.norm(psi)
