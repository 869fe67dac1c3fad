"""Print a table of closeness measures for the built-in constructions."""

import argparse

from amub.algebra import paley_hadamard
from amub.constructors import prime_mubs, rbd_to_bases, weak_mubs
from amub.designs import kirkman_kts15, q2_minus_1_design, resolvable_transversal_design
from amub.measures import measure_report


def constructions():
    yield "mub(7)", prime_mubs(7)
    yield "mub(11)", prime_mubs(11)
    yield "weak(2,3)", weak_mubs(2, 3)
    yield "weak(3,5)", weak_mubs(3, 5)
    for k, s in [(3, 4), (4, 5), (5, 7), (7, 8)]:
        yield f"rtd({k},{s})", rbd_to_bases(resolvable_transversal_design(k, s)).basis_set
    yield "kts15", rbd_to_bases(kirkman_kts15()).basis_set
    for q in (7, 11):
        yield f"q2m1({q})", rbd_to_bases(q2_minus_1_design(q), flat=paley_hadamard(q)).basis_set


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--csv", action="store_true", help="comma-separated output")
    args = ap.parse_args()
    cols = ["name", "d", "r", "label", "beta", "ASD", "tau", "sigma", "Omega_2", "eps", "defect_2"]
    sep = "," if args.csv else "  "
    print(sep.join(f"{c:>10}" if not args.csv else c for c in cols))
    for name, S in constructions():
        rep = measure_report(S, frame_ts=(2,))
        row = [
            name,
            rep.d,
            rep.r,
            rep.classification.label,
            f"{rep.classification.beta:.4f}",
            f"{rep.asd:.6f}",
            f"{rep.tau:.4f}",
            f"{rep.sigma:.5f}",
            f"{rep.omega_t[2.0]:.4f}",
            f"{rep.sparsity:.3f}",
            f"{rep.design_defect[2]:.2e}",
        ]
        print(sep.join(f"{str(x):>10}" if not args.csv else str(x) for x in row))


if __name__ == "__main__":
    main()
