"""Command-line entry point: construct, measure, verify, qkd.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Output files default to ``$AMUB_OUTPUT_DIR`` (or the working directory).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .algebra import FlatMatrixUnavailable, UnsupportedOrder, paley_hadamard
from .apps import QkdOutcome, intercept_resend_sift_error, mub_sift_error, raw_key_rate
from .checks import verify_basis_set
from .constructors import DELTA_TOL, ConstructionResult, classify_set, prime_mubs, rbd_to_bases, weak_mubs
from .designs import kirkman_kts15, q2_minus_1_design, resolvable_transversal_design
from .io import InputError, basis_set_to_dict, load_basis_set, load_design, report_csv, write_json
from .linalg import BasisSet
from .measures import measure_report, sparsity

OUTPUT_ENV = "AMUB_OUTPUT_DIR"
KINDS = ("mub-prime", "weak", "rtd", "q2m1", "kts15", "from-design-file")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    kind: str | None = None
    p: int | None = None
    q: int | None = None
    k: int | None = None
    s: int | None = None
    flat: str = "real"  # real (fallback to Fourier) | strict-real | complex
    design_file: str | None = None
    input: str | None = None
    output: str | None = None
    bases: int | None = None
    tol: float = 1e-9
    delta_tol: float = DELTA_TOL
    trials: int | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


class UsageError(Exception):
    pass


def _header(cfg: RunConfig) -> dict:
    # the output location is left out so reruns into different files match byte for byte
    run = cfg.to_dict()
    run.pop("output")
    return {"version": __version__, "run": run}


def _output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV, "."))


def _default_name(cfg: RunConfig) -> str:
    params = {
        "mub-prime": f"p{cfg.p}",
        "weak": f"p{cfg.p}-q{cfg.q}",
        "rtd": f"k{cfg.k}-s{cfg.s}",
        "q2m1": f"q{cfg.q}",
        "kts15": "",
        "from-design-file": Path(cfg.design_file or "design").stem,
    }[cfg.kind]
    return "-".join(x for x in (cfg.kind, params) if x) + ".json"


def _need(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError(f"--kind {cfg.kind} requires {', '.join(missing)}")


def build(cfg: RunConfig) -> tuple[BasisSet, ConstructionResult | None]:
    """Basis set described by a construct config (no I/O besides design files)."""
    prefer_real = cfg.flat != "complex"
    strict = cfg.flat == "strict-real"
    kind = cfg.kind
    try:
        if kind == "mub-prime":
            _need(cfg, "p")
            return prime_mubs(cfg.p), None
        if kind == "weak":
            _need(cfg, "p", "q")
            return weak_mubs(cfg.p, cfg.q), None
        if kind == "rtd":
            _need(cfg, "k", "s")
            design = resolvable_transversal_design(cfg.k, cfg.s)
            flat = None
        elif kind == "q2m1":
            _need(cfg, "q")
            design = q2_minus_1_design(cfg.q)
            flat = paley_hadamard(cfg.q) if prefer_real and cfg.q % 4 == 3 else None
        elif kind == "kts15":
            design = kirkman_kts15()
            flat = None
        elif kind == "from-design-file":
            _need(cfg, "design_file")
            design = load_design(cfg.design_file)
            flat = None
        else:
            raise UsageError(f"unknown kind {kind!r}; choose one of {', '.join(KINDS)}")
        res = rbd_to_bases(design, prefer_real=prefer_real, strict=strict, flat=flat)
        return res.basis_set, res
    except FlatMatrixUnavailable as exc:
        raise UsageError(f"{exc}; drop --strict-real or pass --complex") from exc
    except (UnsupportedOrder, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise UsageError(str(exc)) from exc


def cmd_construct(cfg: RunConfig) -> int:
    S, res = build(cfg)
    out = Path(cfg.output) if cfg.output else _output_dir() / _default_name(cfg)
    doc = basis_set_to_dict(S) | _header(cfg)
    summary = {"d": S.dim, "r": len(S), "sparsity": sparsity(S)}
    if len(S) >= 2:
        summary["classification"] = classify_set(S, cfg.delta_tol).to_dict()
    if res is not None:
        summary["predicted_beta"] = res.predicted_beta
        summary["predicted_delta"] = None if res.predicted_delta is None else sorted(res.predicted_delta)
        summary["flat"] = res.flat_source
        summary["mu"] = res.mu
    doc["summary"] = summary
    write_json(out, doc)
    cls = summary.get("classification")
    print(f"wrote {out}: d={S.dim}, {len(S)} bases")
    if res is not None:
        print(f"predicted beta={res.predicted_beta:.6g}, Delta={summary['predicted_delta']}, flat={res.flat_source}")
    print(f"sparsity={summary['sparsity']:.6g}")
    if cls:
        delta = ", ".join(f"{x:.6g}" for x in cls["delta"])
        print(f"label={cls['label']}, beta={cls['beta']:.6g}, Delta={{{delta}}}")
    return EXIT_OK


def cmd_measure(cfg: RunConfig) -> int:
    S = load_basis_set(cfg.input)
    rep = measure_report(S, tol=cfg.delta_tol)
    base = Path(cfg.output) if cfg.output else _output_dir() / (Path(cfg.input).stem + "-measures")
    json_path = base.with_suffix(".json")
    csv_path = base.with_suffix(".csv")
    write_json(json_path, rep.to_dict() | _header(cfg))
    csv_path.write_text(report_csv(rep))
    print(f"wrote {json_path} and {csv_path}")
    if rep.r >= 2:
        print(
            f"ASD={rep.asd:.12g} tau={rep.tau:.6g} sigma={rep.sigma:.6g} "
            f"Omega_2={rep.omega_t[2.0]:.12g} label={rep.classification.label}"
        )
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    S = load_basis_set(cfg.input)
    rep = verify_basis_set(S, tol=cfg.tol, delta_tol=cfg.delta_tol)
    if cfg.output:
        write_json(cfg.output, rep.to_dict() | _header(cfg))
    for c in rep.checks:
        print(f"{'PASS' if c.ok else 'FAIL'} {c.name}")
        for f in c.failures[:20]:
            print(f"    {f}")
        if len(c.failures) > 20:
            print(f"    ... {len(c.failures) - 20} more")
    print("verification", "passed" if rep.ok else "FAILED")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_qkd(cfg: RunConfig) -> int:
    S = load_basis_set(cfg.input)
    if cfg.bases is not None:
        if not 1 <= cfg.bases <= len(S):
            raise UsageError(f"--bases must be in 1..{len(S)}")
        S = BasisSet.of(S.bases[: cfg.bases], S.provenance)
    if len(S) < 2:
        raise UsageError("qkd needs at least two bases")
    if cfg.trials is None or cfg.trials < 1:
        raise UsageError("--trials must be >= 1")
    mc: QkdOutcome = intercept_resend_sift_error(S, cfg.trials, cfg.seed)
    doc = mc.to_dict() | _header(cfg)
    doc["closed_form"] = {
        "raw_rate": raw_key_rate(S.dim, len(S)),
        "mub_sift_error": mub_sift_error(S.dim, len(S)),
    }
    out = Path(cfg.output) if cfg.output else _output_dir() / (Path(cfg.input).stem + f"-qkd-seed{cfg.seed}.json")
    write_json(out, doc)
    print(f"wrote {out}")
    print(
        f"raw_rate={mc.raw_rate:.6g} sift_error={mc.sift_error:.6g} +- {mc.std_error:.2g} "
        f"(MUB closed form {doc['closed_form']['mub_sift_error']:.6g})"
    )
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="amub", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"amub {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a basis set and write it as JSON")
    c.add_argument("--kind", required=True, choices=KINDS)
    for name in ("p", "q", "k", "s"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--design-file", dest="design_file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--real", dest="flat", action="store_const", const="real", help="real Hadamard where one exists (default)")
    g.add_argument("--strict-real", dest="flat", action="store_const", const="strict-real", help="fail if no real Hadamard exists")
    g.add_argument("--complex", dest="flat", action="store_const", const="complex", help="use Fourier matrices")
    c.set_defaults(flat="real")

    for name, hlp in (("measure", "measure report (JSON + CSV)"), ("verify", "run invariant suites"), ("qkd", "intercept-resend simulation")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("input", help="basis-set JSON")
        if name == "qkd":
            p.add_argument("--trials", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--bases", type=int, help="use only the first N bases")

    for p in sub.choices.values():
        p.add_argument("-o", "--output", help="output path (measure: path stem)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--delta-tol", dest="delta_tol", type=float, default=DELTA_TOL)
    return ap


COMMANDS = {"construct": cmd_construct, "measure": cmd_measure, "verify": cmd_verify, "qkd": cmd_qkd}


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
