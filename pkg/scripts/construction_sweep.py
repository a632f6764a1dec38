"""Construct rules over a (p, m) grid and print attained R against the theorem bound.

    python3 scripts/construction_sweep.py --s 8 --weights 3 --alpha 2
"""

import argparse

from polylat.bounds import suggest_ws, theorem_bound
from polylat.cbc import cbc_reduced_fast, cbc_reduced_naive
from polylat.fieldpoly import Modulus
from polylat.weights import WeightSystem


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, default=8)
    ap.add_argument("--weights", type=float, default=3.0, help="gamma_j = j^-k")
    ap.add_argument("--alpha", type=float, default=None, help="reduce with w_j = floor((k - alpha) log_p j)")
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-m", type=int, default=8)
    args = ap.parse_args()

    print(f"{'p':>2} {'m':>2} {'modulus':>12} {'R^s':>12} {'bound':>12} {'ratio':>8}  vector")
    for p in args.primes:
        for m in range(1, args.max_m + 1):
            if p**m > 2**14:
                break
            gammas = tuple(j**-args.weights for j in range(1, args.s + 1))
            ws = suggest_ws(args.weights, args.alpha, p, args.s) if args.alpha else [0] * args.s
            weights = WeightSystem(gammas, tuple(ws), m)
            for modulus, case in ((Modulus.monomial(p, m), "xm"), (Modulus.irreducible(p, m), "irreducible")):
                build = cbc_reduced_fast if modulus.is_monomial else cbc_reduced_naive
                gvec, trace = build(p, m, modulus, weights, args.s)
                r, b = trace.r_values[-1], theorem_bound(weights, p, m, args.s, case)
                vec = ", ".join(str(g) for g in gvec.reduced)
                print(f"{p:>2} {m:>2} {case:>12} {r:12.6g} {b:12.6g} {r / b:8.3g}  ({vec})")


if __name__ == "__main__":
    main()
