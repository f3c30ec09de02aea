"""Command-line entry point; every subcommand prints JSON on stdout."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import fock, partitions, quantum, ring, vertex

USAGE_ERROR = 2


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------

def parse_chi(text: str, n: int) -> tuple:
    """'+,-' or '1,-1' -> (1, -1)."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise UsageError(f"bad sign {tok!r} in --chi")
    if len(out) != n + 1:
        raise UsageError(f"--chi needs {n + 1} signs")
    return tuple(out)


def parse_divisor_label(text: str, n: int) -> tuple:
    try:
        kind, idx = fock.parse_divisor(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not 0 <= idx <= n:
        raise UsageError(f"divisor index {idx} out of range for n={n}")
    return kind, idx


def parse_state(text: str, n: int, m: int) -> fock.FockVector:
    """Vector labels for three-point.

    ``fund``                the fundamental class (1^m)[1]
    ``fp:2,2``              fixed point of a multi-regular colored partition
    ``nak:2,1:1,pt``        Nakajima vector mu[gamma], classes 1, pt, E<i>, omega<i>
    """
    text = text.strip()
    if text == "fund":
        return fock.fundamental_class(n, m)
    kind, _, rest = text.partition(":")
    if kind == "fp":
        lam = partitions.parse_partition(rest)
        if lam not in fock.level_basis(n, m):
            raise UsageError(f"{rest!r} is not a level-{m} state for n={n}")
        return fock.fixed_point_vector(lam, n)
    if kind == "nak":
        mu_text, _, cls_text = rest.partition(":")
        mu = partitions.parse_partition(mu_text)
        names = [c.strip() for c in cls_text.split(",")] if cls_text else []
        if len(names) != len(mu):
            raise UsageError("one class per part of mu")
        classes = []
        for name in names:
            if name in ("1", "pt"):
                classes.append((name, None))
            elif name.startswith("omega"):
                classes.append(("omega", int(name[5:])))
            elif name.startswith("E"):
                classes.append(("E", int(name[1:])))
            else:
                raise UsageError(f"unknown class {name!r}")
        return fock.nakajima_basis_vector(mu, classes, n)
    raise UsageError(f"cannot parse state label {text!r}")


def thread_budget(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("ORBIVERTEX_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# -- subcommands --------------------------------------------------------------

def cmd_vertex(args):
    n, order = args.n, args.order
    threads = thread_budget(args)
    if args.mode == "closed":
        return {"n": n, "order": order, "mode": "closed",
                "series": vertex.z_closed(n, order).to_json()}, 0
    chi = parse_chi(args.chi, n) if args.chi else vertex.calibrated_chi(n)
    enum = vertex.z_enumerated(n, order, chi, threads=threads)
    if args.mode == "enumerate":
        return {"n": n, "order": order, "mode": "enumerate", "chi": list(chi),
                "series": enum.to_json()}, 0
    result = vertex.compare(enum, vertex.z_closed(n, order))
    flags = [{"exps": list(e), "equal": ok} for e, ok in
             sorted(result["flags"].items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))]
    first = result["first_mismatch"]
    report = {"n": n, "order": order, "mode": "compare", "chi": list(chi),
              "calibrated_chi": list(vertex.calibrated_chi(n)),
              "match": result["equal"], "first_mismatch": list(first) if first else None,
              "flags": flags}
    return report, 0 if result["equal"] else 1


def cmd_quotient(args):
    try:
        lam = partitions.parse_partition(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    colored = partitions.ColoredPartition(lam, args.n + 1)
    core, quot = partitions.quotient_core(colored)
    return {"partition": list(lam), "modulus": args.n + 1, "core": list(core),
            "quotient": [list(q) for q in quot], "multi_regular": colored.is_multi_regular(),
            "color_counts": list(colored.color_counts())}, 0


def cmd_qh(args):
    divisor = parse_divisor_label(args.divisor, args.n)
    qm = quantum.full_divisor_matrix(divisor, args.chamber, args.n, args.m)
    return qm.to_json(args.n), 0


def cmd_three_point(args):
    n, m = args.n, args.m
    a = parse_state(args.a, n, m)
    b = parse_state(args.b, n, m)
    for label, vec in (("A", a), ("B", b)):
        if not vec.is_zero() and vec.level() != m:
            raise UsageError(f"{label} is not at level {m}")
    divisor = "1" if args.divisor == "1" else parse_divisor_label(args.divisor, n)
    series = quantum.three_point(a, b, divisor, n, m, args.order)
    rows = []
    for exps, coeff in series.sorted_items():
        entry = {"exps": list(exps), "effective": quantum.effective_membership(exps, quantum.ORBIFOLD)}
        if any(exps):
            entry["hbar_linear"] = (coeff / quantum.H).canonical()
        else:
            entry["classical"] = coeff.canonical()
        rows.append(entry)
    return {"n": n, "m": m, "order": args.order, "divisor": args.divisor,
            "series": series.to_json(), "terms": rows}, 0


def cmd_degree0(args):
    series = vertex.degree0_relative(args.n, args.k, args.order)
    return {"n": args.n, "k": args.k, "order": args.order, "series": series.to_json()}, 0


# -- check suites ---------------------------------------------------------

def _run(name, fn):
    start = time.perf_counter()
    try:
        ok, payload = fn()
    except Exception as exc:  # report, do not crash the suite
        ok, payload = False, f"{type(exc).__name__}: {exc}"
    return {"name": name, "pass": bool(ok), "seconds": round(time.perf_counter() - start, 3),
            "counterexample": None if ok else payload}


def suite_ring(args):
    s1, s2 = ring.RFunc.var("s1"), ring.RFunc.var("s2")

    def factor_identity():
        lhs = (s1 * s1 - s2 * s2) / (s1 - s2)
        return ring.rf_eq(lhs, s1 + s2), str(lhs)

    def macmahon_counts():
        m = ring.macmahon_factor((0,), False, 5, 1)
        got = [m.coeff((k,)).const_value() for k in range(6)]
        return got == [1, 1, 3, 6, 13, 24], got

    def exp_log():
        q0 = ring.Series(2, 4, {(0, 0): ring.RFunc.one(), (1, 0): ring.RFunc.one(),
                                (1, 1): ring.RFunc.const_of(5)})
        back = ring.series_exp(ring.series_log(q0))
        return back.equals(q0), str(back)

    def cyclotomic():
        value = ring.CycRat.rational(2, 2) - ring.CycRat.zeta(2, 1) - ring.CycRat.zeta(2, -1)
        return value == 4, repr(value)

    return [("rf_eq factorization", factor_identity), ("MacMahon counts", macmahon_counts),
            ("exp/log roundtrip", exp_log), ("cyclotomic rational", cyclotomic)]


def suite_partitions(args):
    size = 8

    def roundtrip():
        for n in range(4):
            for total in range(size // (n + 1) + 1):
                for t in partitions.partition_tuples(total, n + 1):
                    lam = partitions.from_quotient(t)
                    core, quot = partitions.quotient_core(lam)
                    if core or tuple(quot) != tuple(t):
                        return False, {"n": n, "tuple": [list(x) for x in t]}
        return True, None

    def regular_iff_core():
        for n in range(4):
            for lam in partitions.enum_partitions(size):
                colored = partitions.ColoredPartition(lam, n + 1)
                core, _ = partitions.quotient_core(colored)
                if colored.is_multi_regular() != (not core):
                    return False, {"n": n, "partition": list(lam)}
        return True, None

    def maya():
        for lam in partitions.enum_partitions(size):
            if partitions.MayaDiagram.from_partition(lam).to_partition() != lam:
                return False, list(lam)
        return True, None

    def plane_counts():
        want = [1, 1, 3, 6, 13, 24, 48]
        got = [0] * len(want)
        for pp in partitions.enum_plane_partitions(len(want) - 1):
            got[pp.size] += 1
        return got == want, got

    return [("quotient roundtrip", roundtrip), ("multi-regular iff empty core", regular_iff_core),
            ("Maya roundtrip", maya), ("plane partition counts", plane_counts)]


def suite_vertex(args):
    n, order = args.n, args.order

    def main_identity():
        enum = vertex.z_enumerated(n, order, threads=thread_budget(args))
        result = vertex.compare(enum, vertex.z_closed(n, order))
        return result["equal"], result["first_mismatch"]

    def descendant():
        return not vertex.descendant_check(n, order).c, None

    def exponent_identity():
        s1, s2, s3 = (ring.RFunc.var(x) for x in ("s1", "s2", "s3"))
        rhs = -(s1 + s2) * (s1 + s3) * (s2 + s3) / (s1 * s2 * s3)
        return ring.rf_eq(vertex.punctual_exponent(0), rhs), None

    return [("enumeration equals closed form", main_identity), ("descendant routes agree", descendant),
            ("n=0 exponent identity", exponent_identity)]


def suite_fock(args):
    n, m = args.n, min(args.m, 2)

    def heisenberg():
        symbols = [("1", None), ("pt", None)] + [("E", i) for i in range(1, n + 1)]
        basis = fock.level_basis(n, m)
        for (sa, ia) in symbols:
            for (sb, ib) in symbols:
                for k in (1, 2):
                    want = fock.class_pairing(n, (sa, ia), (sb, ib)) * (-k)
                    for lam in basis:
                        v = fock.FockVector.basis(n, lam)
                        x, y = fock.NakajimaLabel(k, sa, ia), fock.NakajimaLabel(-k, sb, ib)
                        got = (fock.nakajima_apply(x, fock.nakajima_apply(y, v))
                               - fock.nakajima_apply(y, fock.nakajima_apply(x, v)))
                        if not got.equals(v.scale(want)):
                            return False, {"k": k, "classes": [sa, ia, sb, ib], "state": list(lam)}
        return True, None

    def fundamental_pairing():
        for level in range(1, m + 1):
            pt = fock.nakajima_basis_vector((1,) * level, [("pt", None)] * level, n)
            got = fock.poincare_pairing(pt, fock.fundamental_class(n, level))
            want = ring.RFunc.const_of(Fraction(1, _factorial(level)))
            if not ring.rf_eq(got, want):
                return False, {"m": level, "got": got.canonical()}
        return True, None

    return [("Heisenberg relations", heisenberg), ("fundamental pairing 1/m!", fundamental_pairing)]


def suite_quantum(args):
    n, m = args.n, min(args.m, 2)
    divisors = [("D", i) for i in range(n + 1)]

    def annihilation():
        for ch in quantum.CHAMBERS:
            for d in divisors:
                if not quantum.annihilates_fundamental(d, ch, n, m):
                    return False, {"chamber": ch, "divisor": d}
        return True, None

    def adjoint():
        for d in divisors:
            full = quantum.full_divisor_matrix(d, quantum.ORBIFOLD, n, m)
            if not (quantum.self_adjoint(full.classical, n, m) and quantum.self_adjoint(full.quantum, n, m)):
                return False, {"divisor": d}
        return True, None

    def commuting():
        mats = {d: quantum.full_divisor_matrix(d, quantum.ORBIFOLD, n, m) for d in divisors}
        for x in divisors:
            for y in divisors:
                a, b = mats[x], mats[y]
                order1 = quantum.commutator(a.classical, b.quantum) + quantum.commutator(a.quantum, b.classical)
                if not (quantum.commutator(a.classical, b.classical).is_zero() and order1.is_zero()):
                    return False, {"pair": [x, y]}
        return True, None

    def q_free():
        for d in divisors:
            if not quantum.is_q_free(quantum.chamber_compare(d, n, m), n):
                return False, {"divisor": d}
        return True, None

    return [("fundamental class annihilated", annihilation), ("self-adjoint", adjoint),
            ("commutativity through first order", commuting), ("chamber difference q-free", q_free)]


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


SUITES = {"ring": suite_ring, "partitions": suite_partitions, "vertex": suite_vertex,
          "fock": suite_fock, "quantum": suite_quantum}


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = {}
    all_ok = True
    for name in names:
        results = [_run(label, fn) for label, fn in SUITES[name](args)]
        report[name] = results
        all_ok = all_ok and all(r["pass"] for r in results)
    return {"suite": args.suite, "pass": all_ok, "results": report}, 0 if all_ok else 1


# -- driver --------------------------------------------------------------

def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbivertex", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_nonneg, default=0, help="orbifold order minus one")
    common.add_argument("--threads", type=int, default=None, help="worker count (else ORBIVERTEX_THREADS, else CPU count)")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--output", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vertex", parents=[common])
    p.add_argument("--order", type=_nonneg, default=4, help="maximum number of boxes")
    p.add_argument("--mode", choices=("enumerate", "closed", "compare"), default="compare")
    p.add_argument("--chi", help="sign character, e.g. +,- ")
    p.set_defaults(func=cmd_vertex)

    p = sub.add_parser("quotient", parents=[common])
    p.add_argument("partition", nargs="?", default="", help="comma-separated parts, e.g. 3,2,1")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("qh", parents=[common])
    p.add_argument("--m", type=_nonneg, default=1, help="Fock level")
    p.add_argument("--divisor", default="D0", help="D0..Dn or V0..Vn")
    p.add_argument("--chamber", choices=quantum.CHAMBERS, default=quantum.ORBIFOLD)
    p.set_defaults(func=cmd_qh)

    p = sub.add_parser("three-point", parents=[common])
    p.add_argument("--m", type=_nonneg, default=1, help="Fock level")
    p.add_argument("--order", type=_nonneg, default=3, help="total q-degree kept")
    p.add_argument("--divisor", default="D0", help='divisor label or "1"')
    p.add_argument("--a", default="fund", help="fund, fp:<partition> or nak:<mu>:<classes>")
    p.add_argument("--b", default="fund", help="same forms as --a")
    p.set_defaults(func=cmd_three_point)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("--suite", choices=("ring", "partitions", "vertex", "fock", "quantum", "all"), default="all")
    p.add_argument("--order", type=_nonneg, default=4, help="series order for the vertex suite")
    p.add_argument("--m", type=_nonneg, default=1, help="top Fock level for the quantum suite")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("degree0", parents=[common])
    p.add_argument("--k", type=int, default=3, help="number of relative insertions")
    p.add_argument("--order", type=_nonneg, default=4, help="total q-degree kept")
    p.set_defaults(func=cmd_degree0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except UsageError as exc:
        print(f"orbivertex: {exc}", file=sys.stderr)
        return USAGE_ERROR
    text = json.dumps(payload, indent=2 if args.pretty else None, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
