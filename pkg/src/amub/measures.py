"""Closeness-to-MUB measures for basis pairs and basis sets.

Every pair measure is a function of the overlap table |<psi_i^l|psi_j^m>|
alone; set measures aggregate over unordered pairs l < m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .constructors import DELTA_TOL, Classification, classify_set, cluster_values
from .linalg import Basis, BasisSet, CVector, overlap_table

DEFAULT_TS = (0.5, 1.0, 2.0, 3.0)
FRAME_TS = (1, 2, 3)
ZERO_TOL = 1e-9


def _require_pairs(S: BasisSet) -> None:
    if len(S) < 2:
        raise ValueError("set measure needs at least two bases")


# -- pair measures --------------------------------------------------------


def power_sum_pair(B1, B2, exponent: float) -> float:
    """Omega_t = sum_ij |<psi_i|phi_j>|^(2t)."""
    if exponent <= 0:
        raise ValueError("exponent must be positive")
    ov = overlap_table(B1, B2)
    return float(np.sum(ov ** (2 * exponent)))


def tau_pair(B1, B2) -> float:
    ov = overlap_table(B1, B2)
    return float(np.max(np.abs(1 / np.sqrt(ov.shape[0]) - ov)))


def sigma_pair(B1, B2) -> float:
    ov = overlap_table(B1, B2)
    d = ov.shape[0]
    return float(np.sqrt(np.sum((1 / np.sqrt(d) - ov) ** 2)) / d)


def gamma_squared_pair(B1, B2) -> float:
    ov = overlap_table(B1, B2)
    d = ov.shape[0]
    return float(np.sum((ov**2 - 1 / d) ** 2))


def bengtsson_pair(B1, B2) -> float:
    """D^2_{l,m} = 1 - gamma^2 / (d - 1); 1 for MUB pairs, 0 for equal bases."""
    d = overlap_table(B1, B2).shape[0]
    if d < 2:
        raise ValueError("Bengtsson distance needs d >= 2")
    return 1.0 - gamma_squared_pair(B1, B2) / (d - 1)


def traceless_dot(u, v) -> float:
    """m_u . m_v = (1/2) Tr[(P_u - I/d)(P_v - I/d)] = (|<u|v>|^2 - 1/d) / 2."""
    a = u.amplitudes if isinstance(u, CVector) else np.asarray(u, dtype=complex)
    b = v.amplitudes if isinstance(v, CVector) else np.asarray(v, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return 0.5 * (abs(np.vdot(a, b)) ** 2 - 1 / a.size)


def traceless_operators(B) -> np.ndarray:
    """Stack of m_i = |psi_i><psi_i| - I/d, shape (d, d, d)."""
    M = B.matrix if isinstance(B, Basis) else np.asarray(B, dtype=complex)
    d = M.shape[0]
    P = np.einsum("ai,bi->iab", M, M.conj())
    return P - np.eye(d)[None] / d


def traceless_gram(B1, B2) -> np.ndarray:
    """(1/2) Tr(m_i m_j) evaluated from explicit operators."""
    A, C = traceless_operators(B1), traceless_operators(B2)
    return 0.5 * np.real(np.einsum("iab,jba->ij", A, C))


def gamma_squared_geometric(B1, B2) -> float:
    """4 sum_ij (m_i . m_j)^2 from explicit traceless operators."""
    return float(4 * np.sum(traceless_gram(B1, B2) ** 2))


# -- set measures ---------------------------------------------------------


def _pair_values(S: BasisSet, fn) -> list[float]:
    _require_pairs(S)
    return [fn(S[l], S[m]) for l, m in S.pairs()]


def set_t_coherence(S: BasisSet, t: float) -> float:
    return float(np.mean(_pair_values(S, lambda a, b: power_sum_pair(a, b, t))))


def tau_set(S: BasisSet) -> float:
    return max(_pair_values(S, tau_pair))


def sigma_set(S: BasisSet) -> float:
    return max(_pair_values(S, sigma_pair))


def asd_set(S: BasisSet) -> float:
    """Average square distance over unordered pairs, 2/(r(r-1)) sum_{l<m} D^2."""
    return float(np.mean(_pair_values(S, bengtsson_pair)))


def asd_set_all_pairs(S: BasisSet) -> float:
    """(1/r^2) sum over all ordered (l, m) including l = m, where D^2 = 0."""
    r = len(S)
    return asd_set(S) * (r - 1) / r


def dmax_set(S: BasisSet) -> float:
    return max(_pair_values(S, bengtsson_pair))


def delta_spectrum(S: BasisSet, tol: float = DELTA_TOL) -> tuple[float, ...]:
    _require_pairs(S)
    vals = np.concatenate([overlap_table(S[l], S[m]).ravel() for l, m in S.pairs()])
    return cluster_values(vals, tol)


def sparsity(S: BasisSet, zero_tol: float = ZERO_TOL) -> float:
    """Fraction of zero amplitudes, averaged over the bases."""
    return float(np.mean([np.mean(np.abs(b.matrix) <= zero_tol) for b in S.bases]))


def sym_dim(d: int, t: int) -> int:
    """Dimension of the symmetric subspace Sym_t(C^d)."""
    return comb(d + t - 1, t)


def _as_columns(vectors) -> np.ndarray:
    if isinstance(vectors, BasisSet):
        return vectors.all_vectors()
    if isinstance(vectors, Basis):
        return vectors.matrix
    if isinstance(vectors, np.ndarray):
        return vectors
    vs = list(vectors)
    if not vs:
        raise ValueError("frame potential of an empty vector list")
    return np.column_stack([v.amplitudes if isinstance(v, CVector) else np.asarray(v) for v in vs])


def frame_potential(vectors, t: int) -> float:
    """Phi_t = (1/N^2) sum_{j,k} |<psi_j|psi_k>|^(2t) over all ordered pairs."""
    V = _as_columns(vectors)
    if V.shape[1] == 0:
        raise ValueError("frame potential of an empty vector list")
    G = np.abs(V.conj().T @ V)
    return float(np.sum(G ** (2 * t)) / V.shape[1] ** 2)


def design_defect(vectors, t: int) -> float:
    """Phi_t - 1/dim Sym_t; >= 0, and 0 exactly for projective t-designs."""
    V = _as_columns(vectors)
    return frame_potential(V, t) - 1.0 / sym_dim(V.shape[0], t)


def log_volume_ratio_approx(S: BasisSet) -> float:
    """sum over l < m and all i, j of log(1 - (|<psi_i^l|psi_j^m>|^2 - 1/d)^2)."""
    _require_pairs(S)
    d = S.dim
    total = 0.0
    for l, m in S.pairs():
        ov = overlap_table(S[l], S[m])
        total += float(np.sum(np.log1p(-((ov**2 - 1 / d) ** 2))))
    return total


def tomography_gram(S: BasisSet) -> np.ndarray:
    """Gram matrix of the normalised traceless projectors sqrt(d/(d-1)) (P - I/d).

    The last projector of each basis is dropped (the d of them sum to 0),
    leaving r blocks of size d-1 in basis order.
    """
    d = S.dim
    if d < 2:
        raise ValueError("needs d >= 2")
    V = np.hstack([b.matrix[:, : d - 1] for b in S.bases])
    ov2 = np.abs(V.conj().T @ V) ** 2
    return (d / (d - 1)) * (ov2 - 1 / d)


def gram_log_volume(S: BasisSet) -> float:
    """(1/2) log det of :func:`tomography_gram`; -inf when degenerate."""
    G = tomography_gram(S)
    if G.shape[0] > S.dim**2 - 1:
        return float("-inf")
    sign, logdet = np.linalg.slogdet(G)
    if sign <= 0 or not np.isfinite(logdet):
        return float("-inf")
    # numerically singular: smallest eigenvalue at round-off level
    if np.min(np.linalg.eigvalsh(G)) <= 1e-12 * G.shape[0]:
        return float("-inf")
    return 0.5 * float(logdet)


# -- reports --------------------------------------------------------------


@dataclass
class PairMeasures:
    l: int
    m: int
    omega_t: dict[float, float]
    tau: float
    sigma: float
    d_squared: float
    gamma_squared: float
    delta_pair: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "omega_t": {str(t): v for t, v in self.omega_t.items()},
            "tau": self.tau,
            "sigma": self.sigma,
            "d_squared": self.d_squared,
            "gamma_squared": self.gamma_squared,
            "delta_pair": list(self.delta_pair),
        }


@dataclass
class MeasureReport:
    d: int
    r: int
    provenance: str
    pairs: list[PairMeasures] = field(default_factory=list)
    omega_t: dict[float, float] | None = None
    tau: float | None = None
    sigma: float | None = None
    asd: float | None = None
    asd_all_pairs: float | None = None
    dmax: float | None = None
    delta: tuple[float, ...] | None = None
    sparsity: float = 0.0
    frame_potential: dict[int, float] = field(default_factory=dict)
    design_defect: dict[int, float] = field(default_factory=dict)
    log_volume_approx: float | None = None
    gram_log_volume: float | None = None
    classification: Classification | None = None

    def to_dict(self) -> dict:
        def num(x):
            if x is None:
                return None
            if isinstance(x, float) and not np.isfinite(x):
                return str(x)
            return x

        return {
            "d": self.d,
            "r": self.r,
            "provenance": self.provenance,
            "set": {
                "omega_t": None if self.omega_t is None else {str(t): v for t, v in self.omega_t.items()},
                "tau": self.tau,
                "sigma": self.sigma,
                "asd": self.asd,
                "asd_all_pairs": self.asd_all_pairs,
                "dmax": self.dmax,
                "delta": None if self.delta is None else list(self.delta),
                "sparsity": self.sparsity,
                "frame_potential": {str(t): v for t, v in self.frame_potential.items()},
                "design_defect": {str(t): v for t, v in self.design_defect.items()},
                "log_volume_approx": num(self.log_volume_approx),
                "gram_log_volume": num(self.gram_log_volume),
                "classification": None if self.classification is None else self.classification.to_dict(),
            },
            "pairs": [p.to_dict() for p in self.pairs],
        }


def measure_report(
    S: BasisSet,
    ts=DEFAULT_TS,
    frame_ts=FRAME_TS,
    tol: float = DELTA_TOL,
) -> MeasureReport:
    """All measures of a basis set; pair-dependent entries stay None when r = 1."""
    d = S.dim
    rep = MeasureReport(d=d, r=len(S), provenance=S.provenance)
    rep.sparsity = sparsity(S)
    for t in frame_ts:
        rep.frame_potential[t] = frame_potential(S, t)
        rep.design_defect[t] = design_defect(S, t)
    if len(S) < 2:
        return rep

    sq = np.sqrt(d)
    for l, m in S.pairs():
        ov = overlap_table(S[l], S[m])
        ov2 = ov**2
        gamma2 = float(np.sum((ov2 - 1 / d) ** 2))
        rep.pairs.append(
            PairMeasures(
                l=l,
                m=m,
                omega_t={t: float(np.sum(ov ** (2 * t))) for t in ts},
                tau=float(np.max(np.abs(1 / sq - ov))),
                sigma=float(np.sqrt(np.sum((1 / sq - ov) ** 2)) / d),
                d_squared=1.0 - gamma2 / (d - 1) if d > 1 else float("nan"),
                gamma_squared=gamma2,
                delta_pair=cluster_values(ov, tol),
            )
        )
    rep.omega_t = {t: float(np.mean([p.omega_t[t] for p in rep.pairs])) for t in ts}
    rep.tau = max(p.tau for p in rep.pairs)
    rep.sigma = max(p.sigma for p in rep.pairs)
    rep.asd = float(np.mean([p.d_squared for p in rep.pairs]))
    rep.asd_all_pairs = rep.asd * (rep.r - 1) / rep.r
    rep.dmax = max(p.d_squared for p in rep.pairs)
    rep.delta = delta_spectrum(S, tol)
    rep.log_volume_approx = log_volume_ratio_approx(S)
    rep.gram_log_volume = gram_log_volume(S)
    rep.classification = classify_set(S, tol)
    return rep
