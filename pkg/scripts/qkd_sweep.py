"""Intercept-resend sifted error: closed form, exhaustive oracle and Monte Carlo."""

import argparse
from dataclasses import dataclass

from amub.apps import exhaustive_sift_error, intercept_resend_sift_error, mub_sift_error
from amub.constructors import prime_mubs, rbd_to_bases, weak_mubs
from amub.designs import kirkman_kts15, resolvable_transversal_design
from amub.linalg import BasisSet


@dataclass
class SweepConfig:
    trials: int = 100_000
    seed: int = 0


def sets():
    for p in (2, 3, 5, 7):
        S = prime_mubs(p)
        for k in range(2, p + 2):
            yield f"mub({p})[:{k}]", BasisSet.of(S.bases[:k])
    yield "weak(2,3)", weak_mubs(2, 3)
    yield "rtd(3,4)", rbd_to_bases(resolvable_transversal_design(3, 4)).basis_set
    yield "kts15", rbd_to_bases(kirkman_kts15()).basis_set


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(f"{'set':>14} {'d':>3} {'k':>3} {'MUB form':>9} {'oracle':>9} {'MC':>9} {'+-':>8}")
    for name, S in sets():
        mc = intercept_resend_sift_error(S, cfg.trials, cfg.seed)
        print(
            f"{name:>14} {S.dim:>3} {len(S):>3} {mub_sift_error(S.dim, len(S)):9.5f} "
            f"{exhaustive_sift_error(S):9.5f} {mc.sift_error:9.5f} {mc.std_error:8.5f}"
        )


if __name__ == "__main__":
    main()
