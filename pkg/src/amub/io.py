"""JSON/CSV serialization for basis sets, designs, reports and QKD runs.

Complex amplitudes are stored as ``[re, im]`` pairs.  Output is
deterministic: keys are sorted and floats go through ``repr``, so equal
inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .designs import ResolvableDesign
from .linalg import Basis, BasisSet
from .measures import MeasureReport


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: Path | str, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj))
    return path


def read_json(path: Path | str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def basis_set_to_dict(S: BasisSet) -> dict:
    bases = []
    for b in S.bases:
        cols = b.matrix.T  # one row per basis vector
        bases.append(
            {
                "label": b.label,
                "vectors": [[[float(z.real), float(z.imag)] for z in v] for v in cols],
            }
        )
    return {"d": S.dim, "provenance": S.provenance, "bases": bases}


def basis_set_from_dict(data: dict) -> BasisSet:
    try:
        d = int(data["d"])
        bases = []
        for idx, entry in enumerate(data["bases"]):
            arr = np.asarray(entry["vectors"], dtype=float)
            if arr.shape != (d, d, 2):
                raise InputError(f"basis {idx}: expected shape ({d}, {d}, 2), got {arr.shape}")
            mat = (arr[..., 0] + 1j * arr[..., 1]).T
            bases.append(Basis(mat, entry.get("label", f"basis{idx}")))
        return BasisSet(d, tuple(bases), data.get("provenance", ""))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed basis-set JSON: {exc}") from exc


def load_basis_set(path: Path | str) -> BasisSet:
    return basis_set_from_dict(read_json(path))


def load_design(path: Path | str) -> ResolvableDesign:
    data = read_json(path)
    try:
        return ResolvableDesign.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed design JSON: {exc}") from exc


PAIR_COLUMNS = ("l", "m", "omega_2", "tau", "sigma", "d2", "gamma2")


def report_csv(rep: MeasureReport) -> str:
    """One row per basis pair plus a summary row (l = m = "set")."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PAIR_COLUMNS)
    for p in rep.pairs:
        w.writerow([p.l, p.m, repr(p.omega_t.get(2.0, float("nan"))), repr(p.tau), repr(p.sigma), repr(p.d_squared), repr(p.gamma_squared)])
    if rep.pairs:
        omega2 = rep.omega_t.get(2.0, float("nan"))
        gamma2 = float(np.mean([p.gamma_squared for p in rep.pairs]))
        w.writerow(["set", "set", repr(omega2), repr(rep.tau), repr(rep.sigma), repr(rep.asd), repr(gamma2)])
    return buf.getvalue()
