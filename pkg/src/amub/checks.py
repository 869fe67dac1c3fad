"""Invariant suites run against a basis set (the ``verify`` command)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constructors import DELTA_TOL, classify_set
from .linalg import BasisSet, overlap_table, validate_basis_set

DELTAS = (0.5, 1.0, 2.0)


@dataclass
class CheckResult:
    name: str
    ok: bool = True
    worst_margin: float = np.inf
    failures: list[str] = field(default_factory=list)

    def record(self, margin: float, tol: float, where: str) -> None:
        """margin >= -tol counts as satisfied."""
        self.worst_margin = min(self.worst_margin, float(margin))
        if margin < -tol:
            self.ok = False
            self.failures.append(f"{where}: violated by {-margin:.3e}")

    def to_dict(self) -> dict:
        wm = self.worst_margin
        return {
            "name": self.name,
            "ok": self.ok,
            "worst_margin": wm if np.isfinite(wm) else None,
            "failures": self.failures,
        }


@dataclass
class VerifyReport:
    d: int
    r: int
    label: str | None
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "label": self.label,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }


def _orthonormality(S: BasisSet, tol: float) -> CheckResult:
    rep = validate_basis_set(S, tol)
    return CheckResult("orthonormality", rep.ok, -rep.max_residual, list(rep.failures))


def verify_basis_set(S: BasisSet, tol: float = 1e-9, delta_tol: float = DELTA_TOL) -> VerifyReport:
    """Run every applicable suite; violations carry pair indices and margins."""
    checks = [_orthonormality(S, tol)]
    d, r = S.dim, len(S)
    if r < 2 or not checks[0].ok:
        return VerifyReport(d, r, None, checks)

    sq = np.sqrt(d)
    stoch = CheckResult("doubly-stochastic squared overlaps")
    thm = CheckResult("power-sum bounds")
    st = CheckResult("sigma <= tau")
    sandwich = CheckResult("D^2 sandwich")
    sig_cap = CheckResult("sigma^2 <= (2/d)(1-1/d)")
    tables = {}
    for l, m in S.pairs():
        ov = overlap_table(S[l], S[m])
        tables[l, m] = ov
        p2 = ov**2
        where = f"pair ({l},{m})"
        dev = max(np.max(np.abs(p2.sum(0) - 1)), np.max(np.abs(p2.sum(1) - 1)))
        stoch.record(-dev, tol, where)
        for dl in DELTAS:
            up = np.sum(ov ** (2 + dl))
            lo = np.sum(ov ** (2 - dl))
            thm.record(up - d ** (1 - dl / 2), tol, f"{where} sum x^(2+{dl}) below {d ** (1 - dl / 2):.6g}")
            thm.record(d - up, tol, f"{where} sum x^(2+{dl}) above {d}")
            thm.record(lo - d, tol, f"{where} sum x^(2-{dl}) below {d}")
            thm.record(d ** (1 + dl / 2) - lo, tol, f"{where} sum x^(2-{dl}) above {d ** (1 + dl / 2):.6g}")
        tau = np.max(np.abs(1 / sq - ov))
        sigma = np.sqrt(np.sum((1 / sq - ov) ** 2)) / d
        st.record(tau - sigma, tol, where)
        d2 = 1 - np.sum((p2 - 1 / d) ** 2) / (d - 1)
        sandwich.record(d2 - (1 - (d + sq) ** 2 / (d - 1) * sigma**2), tol, f"{where} lower")
        sandwich.record(1 - d / (d - 1) * sigma**2 - d2, tol, f"{where} upper")
        sig_cap.record(2 / d * (1 - 1 / d) - sigma**2, tol, where)
    checks += [stoch, thm, st, sandwich, sig_cap]

    cls = classify_set(S, delta_tol)
    asd = float(np.mean([1 - np.sum((t**2 - 1 / d) ** 2) / (d - 1) for t in tables.values()]))
    amub = CheckResult("ASD >= 1 - (beta^4-1)/(d-1)")
    amub.record(asd - (1 - (cls.beta**4 - 1) / (d - 1)), tol, f"ASD {asd:.12g}, beta {cls.beta:.12g}")
    amub.record(1 - asd, tol, "ASD above 1")
    checks.append(amub)

    if cls.label == "MUB":
        mub = CheckResult("MUB values")
        for (l, m), ov in tables.items():
            mub.record(-np.max(np.abs(ov - 1 / sq)), tol, f"pair ({l},{m})")
        checks.append(mub)
    elif cls.label == "APMUB":
        checks.append(_apmub_closed_forms(tables, d, cls.beta, tol))
    return VerifyReport(d, r, cls.label, checks)


def _apmub_closed_forms(tables: dict, d: int, beta: float, tol: float) -> CheckResult:
    c = CheckResult("APMUB closed forms")
    sq = np.sqrt(d)
    sigma2 = 2 / d * (1 - 1 / beta)
    d2 = 1 - (beta**2 - 1) / (d - 1)
    for (l, m), ov in tables.items():
        where = f"pair ({l},{m})"
        c.record(-abs(np.max(np.abs(1 / sq - ov)) - 1 / sq), tol, f"{where} tau")
        c.record(-abs(np.sum((1 / sq - ov) ** 2) / d**2 - sigma2), tol, f"{where} sigma^2")
        c.record(-abs(1 - np.sum((ov**2 - 1 / d) ** 2) / (d - 1) - d2), tol, f"{where} D^2")
        frac = np.count_nonzero(ov > DELTA_TOL) / d**2
        c.record(-abs(frac - 1 / beta**2), tol, f"{where} nonzero fraction")
    return c
