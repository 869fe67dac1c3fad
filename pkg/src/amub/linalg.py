"""Dense complex vector / basis kernel.

A basis is stored as a ``d x d`` complex matrix whose *columns* are the
basis vectors, so the full overlap table of two bases is one matrix
product ``|B1^H B2|``.  All arrays handed out are read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CVector:
    """Unit vector in C^d."""

    amplitudes: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-D sequence")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > self.tol:
            raise ValueError(f"vector is not normalised (norm {norm:.12g})")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def canonical(cls, d: int, i: int) -> "CVector":
        e = np.zeros(d, dtype=complex)
        e[i] = 1.0
        return cls(e)

    @classmethod
    def normalized(cls, amps) -> "CVector":
        amps = np.asarray(amps, dtype=complex)
        return cls(amps / np.linalg.norm(amps))


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal basis; ``matrix[:, i]`` is the i-th vector.

    Construction does not enforce orthonormality (files read from disk may
    be corrupt); use :func:`validate_basis_set` or :meth:`residual`.
    """

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"basis matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def vectors(self) -> list[CVector]:
        return [CVector(self.matrix[:, i], tol=np.inf) for i in range(self.dim)]

    @classmethod
    def from_vectors(cls, vectors: Sequence, label: str = "") -> "Basis":
        cols = [v.amplitudes if isinstance(v, CVector) else np.asarray(v) for v in vectors]
        return cls(np.column_stack(cols), label)

    @classmethod
    def canonical(cls, d: int, label: str = "canonical") -> "Basis":
        return cls(np.eye(d), label)

    def residual(self) -> float:
        """max |G - I| over the Gram matrix of the vectors."""
        g = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(g - np.eye(self.dim))))


@dataclass(frozen=True, eq=False)
class BasisSet:
    dim: int
    bases: tuple[Basis, ...]
    provenance: str = ""

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise ValueError("a basis set needs at least one basis")
        for b in bases:
            if b.dim != self.dim:
                raise ValueError(f"basis {b.label!r} has dim {b.dim}, expected {self.dim}")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def of(cls, bases: Sequence[Basis], provenance: str = "") -> "BasisSet":
        bases = tuple(bases)
        return cls(bases[0].dim if bases else 0, bases, provenance)

    def __len__(self) -> int:
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    def __getitem__(self, i) -> Basis:
        return self.bases[i]

    def pairs(self):
        """Index pairs (l, m) with l < m."""
        r = len(self.bases)
        return [(l, m) for l in range(r) for m in range(l + 1, r)]

    def all_vectors(self) -> np.ndarray:
        """d x (r d) matrix of every vector in the set."""
        return np.hstack([b.matrix for b in self.bases])


def _amps(v) -> np.ndarray:
    return v.amplitudes if isinstance(v, CVector) else np.asarray(v, dtype=complex)


def _mat(b) -> np.ndarray:
    return b.matrix if isinstance(b, Basis) else np.asarray(b, dtype=complex)


def inner_product(u, v) -> complex:
    """<u|v>, conjugate-linear in ``u``."""
    a, b = _amps(u), _amps(v)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return complex(np.vdot(a, b))


def overlap_table(b1, b2) -> np.ndarray:
    """Entry (i, j) is |<psi_i^{b1}|psi_j^{b2}>|."""
    m1, m2 = _mat(b1), _mat(b2)
    if m1.shape != m2.shape:
        raise ValueError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    return np.abs(m1.conj().T @ m2)


@dataclass
class ValidationReport:
    ok: bool
    tol: float
    max_residual: float
    residuals: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "residuals": self.residuals,
            "failures": self.failures,
        }


def validate_basis_set(S: BasisSet, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Orthonormality residuals per basis; never raises."""
    rows = []
    failures = []
    worst = 0.0
    for idx, b in enumerate(S.bases):
        g = b.matrix.conj().T @ b.matrix
        norm_res = float(np.max(np.abs(np.real(np.diag(g)) - 1.0)))
        off = g - np.diag(np.diag(g))
        orth_res = float(np.max(np.abs(off))) if b.dim > 1 else 0.0
        res = max(norm_res, orth_res)
        worst = max(worst, res)
        rows.append({"basis": idx, "label": b.label, "norm": norm_res, "orthogonality": orth_res})
        if res > tol:
            failures.append(
                f"basis {idx} ({b.label}): norm residual {norm_res:.3g}, "
                f"orthogonality residual {orth_res:.3g} > tol {tol:g}"
            )
    return ValidationReport(ok=not failures, tol=tol, max_residual=worst, residuals=rows, failures=failures)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with phase fix)."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_basis(d: int, rng: np.random.Generator, label: str = "random") -> Basis:
    return Basis(random_unitary(d, rng), label)


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Pure state from normalised complex Gaussian amplitudes."""
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)
