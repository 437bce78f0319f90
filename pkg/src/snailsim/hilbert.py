"""Truncated Fock-space linear algebra for the two-cavity + ancilla system.

Dense matrices throughout: total dimension stays at or below ~512 for every
run in this package, where dense beats any sparse bookkeeping for clarity.
Default spaces: (15, 15, 2) for coherent-state protocols at alpha = sqrt(2),
(3, 3, 2) for single-photon beamsplitter sweeps.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import DimensionMismatch, TruncationError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
EIGENVALUE_TOL = 1e-8


@dataclass(frozen=True)
class HilbertSpec:
    """Ordered subsystem dimensions with labels."""

    dims: tuple
    labels: tuple = ()

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise ValueError("every subsystem dimension must be >= 2")
        object.__setattr__(self, "dims", dims)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"mode{i}" for i in range(len(dims))))
        elif len(self.labels) != len(dims):
            raise DimensionMismatch("labels and dims length differ")

    @property
    def total_dim(self):
        return int(np.prod(self.dims))

    def site(self, label):
        return self.labels.index(label)


def default_spec(cavity_dim=15, ancilla_dim=2):
    return HilbertSpec(dims=(cavity_dim, cavity_dim, ancilla_dim),
                       labels=("a", "b", "ancilla"))


def annihilation(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def number(dim):
    return np.diag(np.arange(dim)).astype(complex)


def identity(dim):
    return np.eye(dim, dtype=complex)


def parity(dim):
    """Photon-number parity, diagonal (-1)^n."""
    return np.diag((-1.0) ** np.arange(dim)).astype(complex)


def embed(op, site, spec):
    """Kron the single-site operator into the full space at position ``site``."""
    if op.shape != (spec.dims[site], spec.dims[site]):
        raise DimensionMismatch(f"operator shape {op.shape} vs dim {spec.dims[site]}")
    out = np.array([[1.0 + 0j]])
    for i, d in enumerate(spec.dims):
        out = np.kron(out, op if i == site else np.eye(d))
    return out


def fock_state(n, dim):
    if n >= dim:
        raise TruncationError(f"Fock level {n} outside dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def coherent_state(alpha, dim, tail_tol=1e-8):
    """Normalized truncated coherent state; guards the truncation tail.

    Raises TruncationError when the discarded Poisson weight above the
    truncation exceeds tail_tol.
    """
    alpha = complex(alpha)
    n = np.arange(dim)
    log_terms = n * np.log(abs(alpha) + 1e-300) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    amps = np.exp(log_terms - 0.5 * abs(alpha) ** 2) * np.exp(1j * np.angle(alpha) * n)
    captured = float(np.sum(np.abs(amps) ** 2))
    if 1.0 - captured > tail_tol:
        raise TruncationError(
            f"coherent tail {1.0 - captured:.2e} above {tail_tol:.0e} for alpha={alpha}, dim={dim}"
        )
    return amps / np.sqrt(captured)


def displacement(beta, dim):
    """Displacement unitary exp(beta a' - beta* a) on the truncated space.

    Pade scaling-and-squaring matrix exponential; unitary on the bulk, with
    the top two truncation levels outside the guarantee.
    """
    a = annihilation(dim)
    return expm(beta * a.conj().T - np.conj(beta) * a)


def tensor_state(*vectors):
    out = np.array([1.0 + 0j])
    for v in vectors:
        out = np.kron(out, v)
    return out


@dataclass
class QuantumState:
    """Density matrix on a tensor-product Fock space."""

    rho: np.ndarray
    spec: HilbertSpec
    _skip_validation: bool = field(default=False, repr=False)

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.shape != (self.spec.total_dim, self.spec.total_dim):
            raise DimensionMismatch(
                f"rho shape {self.rho.shape} vs total dim {self.spec.total_dim}")
        if not self._skip_validation:
            self.validate()

    @classmethod
    def from_vector(cls, psi, spec):
        psi = np.asarray(psi, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValueError("zero state vector")
        psi = psi / norm
        return cls(rho=np.outer(psi, psi.conj()), spec=spec)

    def validate(self, herm_tol=HERMITICITY_TOL, trace_tol=TRACE_TOL,
                 eig_tol=EIGENVALUE_TOL):
        if np.max(np.abs(self.rho - self.rho.conj().T)) > herm_tol:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(self.rho).real
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"trace {tr} deviates from 1 beyond tolerance")
        evals = np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))
        if evals.min() < -eig_tol:
            raise ValueError(f"negative eigenvalue {evals.min():.2e}")
        return self

    @property
    def trace(self):
        return float(np.trace(self.rho).real)

    @property
    def purity(self):
        return float(np.trace(self.rho @ self.rho).real)

    def expectation(self, op):
        return complex(np.trace(op @ self.rho))

    def ptrace(self, keep):
        """Partial trace keeping the listed site indices (order preserved)."""
        keep = tuple(keep)
        dims = self.spec.dims
        n = len(dims)
        tensor = self.rho.reshape(dims + dims)
        traced = tensor
        removed = 0
        for site in range(n):
            if site in keep:
                continue
            ax = site - removed
            ncur = traced.ndim // 2
            traced = np.trace(traced, axis1=ax, axis2=ax + ncur)
            removed += 1
        kept_dims = tuple(dims[s] for s in sorted(keep))
        d = int(np.prod(kept_dims))
        rho = traced.reshape(d, d)
        new_spec = HilbertSpec(dims=kept_dims,
                               labels=tuple(self.spec.labels[s] for s in sorted(keep)))
        return QuantumState(rho=rho, spec=new_spec, _skip_validation=True)

    def to_json_dict(self):
        """Binary-free JSON form: real/imag parts as nested lists."""
        return {
            "dims": list(self.spec.dims),
            "labels": list(self.spec.labels),
            "rho_real": self.rho.real.tolist(),
            "rho_imag": self.rho.imag.tolist(),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, payload):
        spec = HilbertSpec(dims=tuple(payload["dims"]), labels=tuple(payload["labels"]))
        rho = np.asarray(payload["rho_real"]) + 1j * np.asarray(payload["rho_imag"])
        return cls(rho=rho, spec=spec, _skip_validation=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))
