"""Wall time and psi-application counts of the constructions against the operation count formula.

    python3 scripts/timing.py -p 2 --m-range 6 14 -s 10
"""

import argparse
import time

from polylat.bounds import suggest_ws
from polylat.cbc import cbc_reduced_fast, cbc_reduced_naive, operation_count
from polylat.fieldpoly import Modulus
from polylat.weights import WeightSystem


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("--m-range", type=int, nargs=2, default=[6, 14])
    ap.add_argument("-s", type=int, default=10)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--naive-max-n", type=int, default=2**11)
    args = ap.parse_args()

    gammas = tuple(j**-3.0 for j in range(1, args.s + 1))
    ws = tuple(suggest_ws(3.0, args.alpha, args.p, args.s))
    print(f"{'m':>3} {'N':>7} {'naive s':>9} {'direct s':>9} {'struct s':>9} {'count':>10} {'direct/c':>9} {'struct/c':>9}")
    for m in range(args.m_range[0], args.m_range[1] + 1):
        N = args.p**m
        mod = Modulus.monomial(args.p, m)
        weights = WeightSystem(gammas, ws, m)
        naive = float("nan")
        if N <= args.naive_max_n:
            t = time.perf_counter()
            cbc_reduced_naive(args.p, m, mod, weights, args.s)
            naive = time.perf_counter() - t
        row = []
        for omega in ("direct", "structured"):
            t = time.perf_counter()
            _, trace = cbc_reduced_fast(args.p, m, mod, weights, args.s, omega=omega)
            row.append((time.perf_counter() - t, trace.total_psi_applications))
        count = operation_count(args.p, m, weights, args.s)
        print(f"{m:>3} {N:>7} {naive:9.3f} {row[0][0]:9.3f} {row[1][0]:9.3f} {count:>10} "
              f"{row[0][1] / count:9.2f} {row[1][1] / count:9.2f}")


if __name__ == "__main__":
    main()
