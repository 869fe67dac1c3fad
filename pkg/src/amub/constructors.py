"""Basis-set constructions: prime MUBs, weak MUBs and design-based AMUBs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .algebra import FlatMatrix, flat_matrix_for, is_prime
from .designs import ResolvableDesign, intersection_profile
from .linalg import Basis, BasisSet, overlap_table

DELTA_TOL = 1e-7


@dataclass(frozen=True)
class ConstructionResult:
    basis_set: BasisSet
    predicted_beta: float
    predicted_delta: frozenset[float] | None  # None when the flat matrix makes it unpredictable
    is_real: bool
    mu: int
    block_size: int
    flat_source: str


@dataclass(frozen=True)
class Classification:
    label: str  # "MUB" | "APMUB" | "beta-AMUB"
    delta: tuple[float, ...]
    beta: float
    beta_min: float
    d: int
    r: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "delta": list(self.delta),
            "beta": self.beta,
            "beta_min": self.beta_min,
            "d": self.d,
            "r": self.r,
        }


def prime_mubs(p: int) -> BasisSet:
    """The p+1 MUBs of C^p: computational basis plus v_{k,m}(x) = w^(k x^2 + m x)/sqrt(p)."""
    if not is_prime(p):
        raise ValueError(f"prime_mubs needs a prime dimension, got {p}")
    if p == 2:
        s = 1 / np.sqrt(2)
        bases = [
            Basis(np.eye(2), "Z"),
            Basis(s * np.array([[1, 1], [1, -1]]), "X"),
            Basis(s * np.array([[1, 1], [1j, -1j]]), "Y"),
        ]
        return BasisSet.of(bases, "mub-prime(2)")
    x = np.arange(p)
    bases = [Basis(np.eye(p), "computational")]
    for k in range(p):
        expo = (k * x[:, None] ** 2 + x[:, None] * x[None, :]) % p
        bases.append(Basis(np.exp(2j * np.pi * expo / p) / np.sqrt(p), f"quadratic(k={k})"))
    return BasisSet.of(bases, f"mub-prime({p})")


def weak_mubs(p: int, q: int) -> BasisSet:
    """All tensor products M_i (x) N_j of the complete MUB sets in C^p and C^q."""
    if p == q:
        raise ValueError("weak MUBs need two distinct primes")
    if not (is_prime(p) and is_prime(q)):
        raise ValueError(f"weak MUBs need primes, got p={p}, q={q}")
    M, N = prime_mubs(p), prime_mubs(q)
    bases = [
        Basis(np.kron(a.matrix, b.matrix), f"M{i}xN{j}")
        for (i, a), (j, b) in product(enumerate(M.bases), enumerate(N.bases))
    ]
    return BasisSet.of(bases, f"weak(p={p},q={q})")


def weak_pair_type(l: int, m: int, p: int, q: int) -> int:
    """Category of the pair (l, m) in weak_mubs(p, q) ordering.

    1: same factor from C^p (overlaps 0 or 1/sqrt(q)); 2: same factor from
    C^q (0 or 1/sqrt(p)); 3: both factors differ (unbiased).
    """
    i, j = divmod(l, q + 1)
    i2, j2 = divmod(m, q + 1)
    if i == i2:
        return 1
    if j == j2:
        return 2
    return 3


def weak_pair_census(S: BasisSet, p: int, q: int, tol: float = DELTA_TOL) -> dict[int, int]:
    """Count basis pairs by the overlap category they actually exhibit.

    Category 0 collects pairs that fit none of the three patterns.
    """
    targets = {
        1: (1 / np.sqrt(q), q * q * p),
        2: (1 / np.sqrt(p), p * p * q),
        3: (1 / np.sqrt(p * q), (p * q) ** 2),
    }
    counts = {0: 0, 1: 0, 2: 0, 3: 0}
    for l, m in S.pairs():
        ov = overlap_table(S[l], S[m]).ravel()
        cat = 0
        for c, (val, n_nonzero) in targets.items():
            hit = np.abs(ov - val) <= tol
            zero = ov <= tol
            if np.all(hit | zero) and hit.sum() == n_nonzero:
                cat = c
                break
        counts[cat] += 1
    return counts


def _block_order(cls) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(b)) for b in cls)


def _predicted_delta(hist: dict[int, int], k: int, flat: FlatMatrix) -> frozenset[float] | None:
    vals = set()
    for m, count in hist.items():
        if not count:
            continue
        if m == 0:
            vals.add(0.0)
        elif m == 1:
            vals.add(1.0 / k)
        elif flat.is_real:
            vals.update(abs(m - 2 * j) / k for j in range(m + 1))
        else:
            return None
    return frozenset(vals)


def rbd_to_bases(
    D: ResolvableDesign,
    prefer_real: bool = True,
    strict: bool = False,
    flat: FlatMatrix | None = None,
) -> ConstructionResult:
    """One orthonormal basis per parallel class of a constant-block-size RBD.

    Each block of size k carries the k columns of one flat matrix of order
    k: column c of the flat matrix, with row a placed on the a-th smallest
    point of the block, is one basis vector.  Blocks are taken in ascending
    order and every block reuses the same flat matrix.  ``flat`` overrides
    the automatic choice (for example a Paley matrix of order q+1).
    """
    sizes = D.block_sizes()
    if len(sizes) != 1:
        raise ValueError(f"rbd_to_bases needs constant block size, got sizes {sorted(sizes)}")
    (k,) = sizes
    if flat is None:
        flat = flat_matrix_for(k, prefer_real=prefer_real, strict=strict)
    elif flat.order != k:
        raise ValueError(f"flat matrix has order {flat.order}, blocks have size {k}")
    H = flat.entries
    bases = []
    for ci, cls in enumerate(D.classes):
        mat = np.zeros((D.d, D.d), dtype=complex)
        col = 0
        for blk in _block_order(cls):
            idx = np.array(blk)
            mat[idx, col : col + k] = H
            col += k
        bases.append(Basis(mat, f"class{ci}"))
    prof = intersection_profile(D)
    s = D.d / k
    provenance = f"{D.provenance}|flat={flat.source}|assign=ascending-blocks,ascending-points"
    return ConstructionResult(
        basis_set=BasisSet.of(bases, provenance),
        predicted_beta=float(prof.mu * np.sqrt(s / k)),
        predicted_delta=_predicted_delta(prof.histogram, k, flat),
        is_real=flat.is_real,
        mu=prof.mu,
        block_size=k,
        flat_source=flat.source,
    )


def cluster_values(values: np.ndarray, tol: float = DELTA_TOL) -> tuple[float, ...]:
    """Distinct values after merging runs whose consecutive gaps are <= tol.

    Each cluster is represented by its mean; a cluster touching 0 is reported as 0.
    """
    v = np.sort(np.asarray(values, dtype=float).ravel())
    if v.size == 0:
        return ()
    breaks = np.flatnonzero(np.diff(v) > tol) + 1
    reps = []
    for chunk in np.split(v, breaks):
        reps.append(0.0 if chunk[0] <= tol else float(chunk.mean()))
    return tuple(reps)


def cross_overlaps(S: BasisSet) -> np.ndarray:
    if len(S) < 2:
        raise ValueError("need at least two bases")
    return np.concatenate([overlap_table(S[l], S[m]).ravel() for l, m in S.pairs()])


def classify_set(S: BasisSet, tol: float = DELTA_TOL) -> Classification:
    if len(S) < 2:
        raise ValueError("classification needs r >= 2 bases")
    d = S.dim
    delta = cluster_values(cross_overlaps(S), tol)
    sq = np.sqrt(d)
    beta = sq * max(delta)
    beta_min = 0.0 if delta[0] == 0.0 else sq * min(delta)
    if len(delta) == 1 and abs(delta[0] - 1 / sq) <= tol:
        label = "MUB"
    elif len(delta) == 2 and delta[0] == 0.0 and beta < 2:
        label = "APMUB"
    else:
        label = "beta-AMUB"
    return Classification(label, delta, float(beta), float(beta_min), d, len(S))
