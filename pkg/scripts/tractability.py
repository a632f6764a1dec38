"""Partial sums of sum_j gamma_j p^{w_j} and the bound product at fixed m as s grows.

    python3 scripts/tractability.py --k 3 --alpha 2 -p 2 -m 10
"""

import argparse
import math

from polylat.bounds import product_term, suggest_ws, tractability_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=float, default=3.0)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("-m", type=int, default=10)
    ap.add_argument("--horizon", type=int, default=10**5)
    args = ap.parse_args()

    ws = suggest_ws(args.k, args.alpha, args.p, args.horizon)
    gammas = [j**-args.k for j in range(1, args.horizon + 1)]
    rep = tractability_check(lambda j: gammas[j - 1], lambda j: ws[j - 1], args.p, args.horizon)
    print(f"gamma_j = j^-{args.k:g}, w_j = floor(({args.k:g} - {args.alpha:g}) log_{args.p} j)")
    print(f"{'S':>8} {'partial sum':>14} {'product (m=%d)' % args.m:>16}")
    for S, val in rep.checkpoints:
        print(f"{S:>8} {val:14.10f} {product_term(gammas[:S], ws[:S], args.p, args.m):16.8f}")
    print(f"majorant zeta(2) = {math.pi**2 / 6:.10f}")
    print(f"verdict: {rep.verdict} (decade ratio {rep.decade_ratio:.3g}; {rep.note})")


if __name__ == "__main__":
    main()
