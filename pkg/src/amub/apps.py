"""QKD figures of merit and entropic uncertainty for basis sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Basis, BasisSet, CVector, overlap_table

CHUNK = 8192


@dataclass(frozen=True)
class QkdOutcome:
    raw_rate: float
    sift_error: float
    trials: int = 0
    std_error: float = 0.0
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "raw_rate": self.raw_rate,
            "sift_error": self.sift_error,
            "trials": self.trials,
            "std_error": self.std_error,
            "seed": self.seed,
        }


def _check_dk(d: int, k: int) -> None:
    if d < 2 or int(d) != d:
        raise ValueError(f"dimension must be an integer >= 2, got {d}")
    if k < 1 or int(k) != k:
        raise ValueError(f"number of bases must be an integer >= 1, got {k}")


def raw_key_rate(d: int, k: int) -> float:
    """Bits per transmitted system: log2(d) / k."""
    _check_dk(d, k)
    return float(np.log2(d) / k)


def mub_sift_error(d: int, k: int) -> float:
    """Intercept-resend sifted error for k MUBs: (k-1)/k * (1 - 1/d)."""
    _check_dk(d, k)
    return (k - 1) / k * (1 - 1 / d)


def _transition_tables(S: BasisSet) -> np.ndarray:
    """P[a, e, i, j] = |<phi_j^e|psi_i^a>|^2."""
    r = len(S)
    P = np.empty((r, r, S.dim, S.dim))
    for a in range(r):
        for e in range(r):
            P[a, e] = overlap_table(S[a], S[e]) ** 2
    return P


def exhaustive_sift_error(S: BasisSet) -> float:
    """Exact expectation of the sifted error over the protocol distribution.

    Alice's basis, Alice's vector and Eve's basis are uniform; given Eve in
    basis e != a the error is 1 - sum_j p_j^2.
    """
    r, d = len(S), S.dim
    if r < 2:
        raise ValueError("intercept-resend needs at least two bases")
    P = _transition_tables(S)
    err = 1.0 - np.sum(P**2, axis=3)  # [a, e, i]
    for a in range(r):
        err[a, a] = 0.0
    return float(err.sum() / (r * r * d))


def _sample_rows(probs: np.ndarray, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probs, axis=1)
    cdf[:, -1] = np.inf
    return np.argmax(cdf > u[:, None], axis=1)


def _simulate_chunk(P: np.ndarray, n: int, rng: np.random.Generator) -> int:
    r, d = P.shape[0], P.shape[2]
    a = rng.integers(r, size=n)
    i = rng.integers(d, size=n)
    e = rng.integers(r, size=n)
    u_eve, u_bob = rng.random(n), rng.random(n)
    # Eve's outcome j ~ |<phi_j^e|psi_i^a>|^2
    j = _sample_rows(P[a, e, i, :], u_eve)
    # Bob measures |phi_j^e> in Alice's basis
    bob = _sample_rows(P[a, e, :, j], u_bob)
    wrong = (bob != i) & (e != a)
    return int(wrong.sum())


def intercept_resend_sift_error(S: BasisSet, trials: int, seed: int = 0) -> QkdOutcome:
    """Monte Carlo estimate of the sifted error under intercept-resend.

    Each block of CHUNK trials draws from its own generator seeded by
    (seed, block index), so the estimate does not depend on evaluation order.
    """
    r = len(S)
    if r < 2:
        raise ValueError("intercept-resend needs at least two bases")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    P = _transition_tables(S)
    errors = 0
    for block, start in enumerate(range(0, trials, CHUNK)):
        n = min(CHUNK, trials - start)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
        errors += _simulate_chunk(P, n, rng)
    p = errors / trials
    return QkdOutcome(
        raw_rate=raw_key_rate(S.dim, r),
        sift_error=p,
        trials=trials,
        std_error=float(np.sqrt(p * (1 - p) / trials)),
        seed=seed,
    )


def maassen_uffink_bound(B1, B2) -> float:
    """-log2 of the largest overlap; lower bound on (H1 + H2)/2 in bits."""
    return float(-np.log2(np.max(overlap_table(B1, B2))))


def outcome_entropy(state, B) -> float:
    """Shannon entropy (bits) of the outcome distribution of ``state`` measured in ``B``."""
    psi = state.amplitudes if isinstance(state, CVector) else np.asarray(state, dtype=complex)
    M = B.matrix if isinstance(B, Basis) else np.asarray(B, dtype=complex)
    if psi.shape[0] != M.shape[0]:
        raise ValueError(f"dimension mismatch: {psi.shape[0]} vs {M.shape[0]}")
    p = np.abs(M.conj().T @ psi) ** 2
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))
