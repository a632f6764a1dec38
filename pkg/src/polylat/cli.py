"""Command line front end.

    polylat construct -p 2 -m 2 -s 2 --modulus xm --weights list:1,1 --reduction none --algo naive -o v.json
    polylat points v.json --format fraction
    polylat bound v.json            (or: polylat bound -p 2 -m 10 -s 5 --weights poly:3 ...)
    polylat discrepancy v.json
    polylat verify v.json
    polylat suggest-w -k 3 --alpha 2 -p 2 --count 8

Exit codes: 0 ok, 1 usage or malformed input, 2 infeasible parameters or
capacity guard, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds, discrepancy, quality
from .cbc import cbc_reduced_fast, cbc_reduced_naive
from .errors import CapacityError, ParameterError, UndefinedInputError, UnsupportedCaseError
from .fieldpoly import Modulus, ModulusKind, Poly, is_prime
from .pointset import format_points, generate_point_set
from .weights import GeneratingVector, WeightSystem

FORMAT_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3
R_RTOL = 1e-9


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return f"{x:.12g}"


# ---------------------------------------------------------------------------
# vector files


@dataclass
class VectorFile:
    p: int
    m: int
    s: int
    modulus_kind: str
    modulus_coeffs: list
    gammas: list
    ws: list
    generators: list  # [(reduced_coeffs, shifted_coeffs), ...]
    r_values: list
    bound: dict
    algorithm: str
    version: int = FORMAT_VERSION
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "version": self.version,
            "p": self.p,
            "m": self.m,
            "s": self.s,
            "modulus": {"kind": self.modulus_kind, "coeffs": list(self.modulus_coeffs)},
            "weights": {"gammas": list(self.gammas), "ws": list(self.ws)},
            "generators": [{"reduced_coeffs": list(r), "shifted_coeffs": list(sh)} for r, sh in self.generators],
            "r_values": list(self.r_values),
            "bound": dict(self.bound),
            "algorithm": self.algorithm,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data):
        try:
            if data["version"] != FORMAT_VERSION:
                raise UsageError(f"unsupported file version {data['version']}")
            gens = [(list(g["reduced_coeffs"]), list(g["shifted_coeffs"])) for g in data["generators"]]
            out = cls(
                p=int(data["p"]), m=int(data["m"]), s=int(data["s"]),
                modulus_kind=str(data["modulus"]["kind"]),
                modulus_coeffs=[int(c) for c in data["modulus"]["coeffs"]],
                gammas=[float(g) for g in data["weights"]["gammas"]],
                ws=[int(w) for w in data["weights"]["ws"]],
                generators=gens,
                r_values=[float(r) for r in data["r_values"]],
                bound=dict(data["bound"]),
                algorithm=str(data["algorithm"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed vector file: {exc!r}") from exc
        if len(out.generators) != out.s or len(out.r_values) != out.s:
            raise UsageError("malformed vector file: generator/r_value count differs from s")
        return out

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed vector file: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("malformed vector file: top level must be an object")
        return cls.from_dict(data)

    @classmethod
    def from_construction(cls, gvec: GeneratingVector, trace, algorithm: str):
        case = "xm" if gvec.modulus.is_monomial else "irreducible"
        report = bounds.discrepancy_bound(gvec.p, gvec.m, gvec.s, gvec.weights, case)
        return cls(
            p=gvec.p, m=gvec.m, s=gvec.s,
            modulus_kind=gvec.modulus.kind.value,
            modulus_coeffs=list(gvec.modulus.f.coeffs),
            gammas=list(gvec.gammas), ws=list(gvec.ws),
            generators=[(list(g.coeffs), list(u.coeffs)) for g, u in zip(gvec.reduced, gvec.shifted)],
            r_values=[float(r) for r in trace.r_values],
            bound=report.as_dict(),
            algorithm=algorithm,
        )

    def generating_vector(self) -> GeneratingVector:
        """Rebuild and validate the generating vector; raises ParameterError on inconsistencies."""
        if not is_prime(self.p):
            raise ParameterError(f"p={self.p} is not prime")
        modulus = Modulus(Poly(self.p, tuple(self.modulus_coeffs)), ModulusKind(self.modulus_kind))
        if modulus.m != self.m:
            raise ParameterError("modulus degree differs from m")
        weights = WeightSystem(tuple(self.gammas), tuple(self.ws), self.m)
        gvec = GeneratingVector(modulus, weights, tuple(Poly(self.p, tuple(r)) for r, _ in self.generators))
        for j, (u, (_, sh)) in enumerate(zip(gvec.shifted, self.generators)):
            if u != Poly(self.p, tuple(sh)):
                raise ParameterError(f"shifted component {j + 1} is not x^w_j g_j")
        return gvec


def read_vector_file(path) -> VectorFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return VectorFile.loads(text)


# ---------------------------------------------------------------------------
# weight and reduction rules


def parse_weights(spec: str, s: int):
    """poly:k -> j^{-k}; geo:q -> q^j; list:a,b,... -> explicit (must cover s)."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "poly":
            k = float(arg)
            return [j**-k for j in range(1, s + 1)], ("poly", k)
        if kind == "geo":
            q = float(arg)
            return [q**j for j in range(1, s + 1)], ("geo", q)
        if kind == "list":
            vals = [float(x) for x in arg.split(",") if x.strip()]
            if len(vals) < s:
                raise UsageError(f"weight list has {len(vals)} entries, need {s}")
            return vals[:s], ("list", None)
    except ValueError as exc:
        raise UsageError(f"bad weight rule {spec!r}") from exc
    raise UsageError(f"unknown weight rule {spec!r}")


def parse_reduction(spec: str, s: int, p: int, weight_rule):
    kind, _, arg = spec.partition(":")
    try:
        if kind == "none":
            return [0] * s
        if kind == "auto":
            if weight_rule[0] != "poly":
                raise UsageError("--reduction auto:<alpha> requires --weights poly:<k>")
            return bounds.suggest_ws(weight_rule[1], float(arg), p, s)
        if kind == "list":
            vals = [int(x) for x in arg.split(",") if x.strip()]
            if len(vals) < s:
                raise UsageError(f"reduction list has {len(vals)} entries, need {s}")
            return vals[:s]
    except ValueError as exc:
        raise UsageError(f"bad reduction rule {spec!r}") from exc
    raise UsageError(f"unknown reduction rule {spec!r}")


def _setup_from_args(args):
    if not is_prime(args.p):
        raise ParameterError(f"p={args.p} is not prime")
    if args.m < 1 or args.s < 1:
        raise ParameterError("m and s must be >= 1")
    gammas, rule = parse_weights(args.weights, args.s)
    ws = parse_reduction(args.reduction, args.s, args.p, rule)
    weights = WeightSystem(tuple(gammas), tuple(ws), args.m)
    if args.modulus == "xm":
        modulus = Modulus.monomial(args.p, args.m)
    else:
        modulus = Modulus.irreducible(args.p, args.m)
    return modulus, weights


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args):
    modulus, weights = _setup_from_args(args)
    algo = args.algo
    if algo == "fast" and not modulus.is_monomial:
        print("warning: fast construction needs f = x^m; falling back to naive", file=sys.stderr)
        algo = "naive"
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if algo == "fast":
            gvec, trace = cbc_reduced_fast(args.p, args.m, modulus, weights, args.s, omega=args.omega)
        else:
            gvec, trace = cbc_reduced_naive(args.p, args.m, modulus, weights, args.s)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    elapsed = time.perf_counter() - start
    vf = VectorFile.from_construction(gvec, trace, algo)
    out = Path(args.output)
    out.write_text(vf.dumps())
    meta = {"elapsed_seconds": elapsed, "psi_applications": trace.psi_applications,
            "candidate_evals": trace.candidate_evals, "omega": trace.omega}
    Path(str(out) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {out} (s={gvec.s}, R={fmt(trace.r_values[-1])}, bound={fmt(vf.bound['total'])})")
    return EXIT_OK


def cmd_points(args):
    vf = read_vector_file(args.file)
    ps = generate_point_set(vf.generating_vector())
    sys.stdout.write(format_points(ps, args.format))
    return EXIT_OK


def cmd_bound(args):
    if args.file:
        vf = read_vector_file(args.file)
        gvec = vf.generating_vector()
        p, m, s, weights = gvec.p, gvec.m, gvec.s, gvec.weights
        case = "xm" if gvec.modulus.is_monomial else "irreducible"
    else:
        if args.p is None or args.m is None or args.s is None:
            raise UsageError("bound needs a vector file or -p, -m and -s")
        modulus, weights = _setup_from_args(args)
        p, m, s = args.p, args.m, args.s
        case = "xm" if modulus.is_monomial else "irreducible"
    report = bounds.discrepancy_bound(p, m, s, weights, case)
    _, upper = bounds.joe_sum(weights.gammas[:s], p**m)
    print(f"case {case}")
    print(f"joe_term {fmt(report.joe_term)}")
    print(f"joe_upper {fmt(upper)}")
    print(f"product_term {fmt(report.product_term)}")
    print(f"total {fmt(report.total)}")
    for d in range(1, s + 1):
        print(f"theorem_bound d={d} {fmt(bounds.theorem_bound(weights, p, m, d, case))}")
    if report.flags:
        print("flags " + ",".join(report.flags))
    return EXIT_OK


def cmd_discrepancy(args):
    vf = read_vector_file(args.file)
    gvec = vf.generating_vector()
    ps = generate_point_set(gvec)
    if ps.N > args.max_disc_n:
        raise CapacityError(f"N={ps.N} exceeds --max-disc-n {args.max_disc_n}")
    res = discrepancy.weighted_star_discrepancy_exact(ps, gvec.gammas, max_work=args.max_disc_work)
    print(f"weighted_star_discrepancy {fmt(res.value)}")
    print("witness " + " ".join(str(t) for t in res.witness_box) + (" (limit from above)" if res.witness_limit else ""))
    for u, val in res.projections.items():
        print(f"projection {','.join(map(str, u))} {fmt(val)}")
    return EXIT_OK


def verify_vector(vf: VectorFile, max_dual_enum: int, max_char_table: int, max_disc_n: int, max_disc_work: int):
    """Recompute everything checkable about a vector file; returns the report dict."""
    checks, failures, skipped = [], [], []

    def record(name, ok, detail):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})
        if not ok:
            failures.append({"check": name, "detail": detail})

    try:
        gvec = vf.generating_vector()
    except ParameterError as exc:
        record("membership", False, str(exc))
        return {"status": "fail", "checks": checks, "failures": failures, "skipped": skipped}
    record("membership", True, "generators lie in their reduced search sets")
    p, m, s = gvec.p, gvec.m, gvec.s
    case = "xm" if gvec.modulus.is_monomial else "irreducible"

    for d in range(1, s + 1):
        forms = {}
        if gvec.modulus.is_monomial:
            forms["walsh"] = quality.R_walsh(gvec, d)
        forms["character_psi"] = quality.R_character(gvec, d, inner="psi")
        if p ** (2 * m) <= max_char_table:
            forms["character"] = quality.R_character(gvec, d, max_table=max_char_table)
        elif d == 1:
            skipped.append({"check": "R_character", "reason": "capacity"})
        if p ** (m * d) <= max_dual_enum:
            forms["direct"] = quality.R_direct(gvec, d, max_terms=max_dual_enum)
        elif "direct_capacity" not in {x["check"] for x in skipped}:
            skipped.append({"check": "direct_capacity", "reason": f"capacity: R_direct skipped from d={d}"})
        stored = vf.r_values[d - 1]
        for name, val in forms.items():
            ok = abs(val - stored) <= R_RTOL * max(1.0, abs(stored))
            record(f"R[{d}] {name}", ok, f"recomputed {fmt(val)} vs stored {fmt(stored)}")
        bound = bounds.theorem_bound(gvec.weights, p, m, d, case)
        record(f"theorem_bound[{d}]", stored <= bound * (1 + 1e-12), f"{fmt(stored)} <= {fmt(bound)}")

    report = bounds.discrepancy_bound(p, m, s, gvec.weights, case)
    stored_total = float(vf.bound.get("total", float("nan")))
    record("bound_report", abs(stored_total - report.total) <= 1e-12 * max(1.0, report.total),
           f"stored {fmt(stored_total)} vs recomputed {fmt(report.total)}")
    N = p**m
    if N > max_disc_n or s * N**s > max_disc_work:
        skipped.append({"check": "discrepancy", "reason": "capacity"})
    else:
        ps = generate_point_set(gvec)
        disc = discrepancy.weighted_star_discrepancy_exact(ps, gvec.gammas, max_work=max_disc_work)
        record("discrepancy_chain", disc.value <= report.total, f"exact {fmt(disc.value)} <= bound {fmt(report.total)}")
    return {"status": "fail" if failures else "pass", "checks": checks, "failures": failures, "skipped": skipped}


def cmd_verify(args):
    vf = read_vector_file(args.file)
    result = verify_vector(vf, args.max_dual_enum, args.max_char_table, args.max_disc_n, args.max_disc_work)
    for item in result["skipped"]:
        if item["reason"].startswith("capacity"):
            print(f"notice: {item['check']} skipped ({item['reason']})", file=sys.stderr)
    print(json.dumps(result, indent=2))
    return EXIT_OK if result["status"] == "pass" else EXIT_VERIFY


def cmd_suggest_w(args):
    ws = bounds.suggest_ws(args.k, args.alpha, args.p, args.count)
    print(" ".join(map(str, ws)))
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_setup_flags(sp, required=True):
    sp.add_argument("-p", type=int, required=required)
    sp.add_argument("-m", type=int, required=required)
    sp.add_argument("-s", type=int, required=required)
    sp.add_argument("--modulus", choices=["xm", "irr"], default="xm")
    sp.add_argument("--weights", default="poly:2", help="poly:<k> | geo:<q> | list:<csv>")
    sp.add_argument("--reduction", default="none", help="none | auto:<alpha> | list:<csv>")


def _add_guard_flags(sp):
    sp.add_argument("--max-dual-enum", type=int, default=quality.DEFAULT_MAX_DUAL_TERMS)
    sp.add_argument("--max-char-table", type=int, default=quality.DEFAULT_MAX_CHAR_TABLE)
    sp.add_argument("--max-disc-n", type=int, default=64)
    sp.add_argument("--max-disc-work", type=int, default=discrepancy.DEFAULT_MAX_WORK)


def build_parser():
    parser = _Parser(prog="polylat", description="Reduced CBC construction of polynomial lattice rules.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("construct", help="construct a generating vector")
    _add_setup_flags(sp)
    sp.add_argument("--algo", choices=["naive", "fast"], default="fast")
    sp.add_argument("--omega", choices=["direct", "structured"], default="direct")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("points", help="print the point set of a vector file")
    sp.add_argument("file")
    sp.add_argument("--format", choices=["fraction", "decimal"], default="fraction")
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("bound", help="discrepancy and R bounds")
    sp.add_argument("file", nargs="?")
    _add_setup_flags(sp, required=False)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("discrepancy", help="exact weighted star discrepancy of a vector file")
    sp.add_argument("file")
    _add_guard_flags(sp)
    sp.set_defaults(func=cmd_discrepancy)

    sp = sub.add_parser("verify", help="recheck a vector file")
    sp.add_argument("file")
    _add_guard_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("suggest-w", help="reduction indices for weights j^{-k}")
    sp.add_argument("-k", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.set_defaults(func=cmd_suggest_w)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, UndefinedInputError, CapacityError, UnsupportedCaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
