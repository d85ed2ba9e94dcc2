"""Command-line front end.

Exit codes: 0 pass, 2 usage error, 3 disagreement between independent routes
(a counterexample), 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any

from . import spectral, verify
from .complex import build, dump_faces, reduced_euler_characteristic
from .fields import FieldError, is_prime, make_field
from .homology import betti, torsion
from .uncertainty import BudgetExceeded, uncertainty_direct, uncertainty_via_homology

log = logging.getLogger("sumcomplex")

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_BUDGET = 0, 2, 3, 4

STRETCH_INSTANCE = {"p": 83, "k": 3, "A": [0, 1, 19], "base": "1.17"}


class UsageError(ValueError):
    pass


def parse_int_list(text: str) -> list[int]:
    """``5,7,11`` or ``11..31`` (primes only in a range)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(n for n in range(int(lo), int(hi) + 1) if is_prime(n))
        elif part:
            out.append(int(part))
    return out


def _one(values: list[int] | None, name: str) -> int:
    if not values or len(values) != 1:
        raise UsageError(f"{name} needs exactly one value")
    return values[0]


# -- output -------------------------------------------------------------------


def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if abs(x) < 2**53 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def emit(report: dict | list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    rows = report if isinstance(report, list) else [report]
    if fmt == "json":
        out.write(json.dumps(_jsonable(report), sort_keys=True) + "\n")
    elif fmt == "csv":
        flat = [{k: json.dumps(_jsonable(v), sort_keys=True) if isinstance(v, (dict, list)) else v
                 for k, v in r.items()} for r in rows]
        keys = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        out.write(buf.getvalue())
    else:
        for r in rows:
            out.write("  ".join(f"{k}={_jsonable(v)}" for k, v in sorted(r.items())) + "\n")


# -- commands -----------------------------------------------------------------


def _instance(args) -> tuple[int, int, list[int]]:
    p = _one(args.p, "-p")
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    k = _one(args.k, "-k")
    if not 1 < k < p:
        raise UsageError(f"need 1 < k < p (k={k}, p={p})")
    if not args.A:
        raise UsageError("-A is required")
    return p, k, args.A


def cmd_betti(args) -> tuple[dict, int]:
    p, k, A = _instance(args)
    char = 0 if args.char is None else args.char
    F = make_field(char, p)
    X = build(p, k, A)
    if args.dump_faces:
        with open(args.dump_faces, "w") as fh:
            dump_faces(X, fh)
    H = betti(X, F)
    if char == p:
        formula = {"top": spectral.dim_h_char_p(p, k, A), "lower": spectral.dim_h_lower_char_p(p, k, A),
                   "route": "closed-form"}
        agree = H.reduced_betti[k - 1] == formula["top"] and H.reduced_betti[k - 2] == formula["lower"]
    else:
        formula = {"top": spectral.dim_h_semisimple(p, k, A, F, jobs=args.jobs), "route": "rank-sum"}
        agree = H.reduced_betti[k - 1] == formula["top"]
    chi = reduced_euler_characteristic(X)
    agree = agree and H.euler_characteristic() == chi
    report = {
        "command": "betti", "p": p, "k": k, "A": list(X.A), "field": repr(F), "f_vector": list(X.f_vector),
        "reduced_betti": H.reduced_betti, "euler_characteristic": chi, "formula": formula, "agreement": agree,
    }
    return report, EXIT_OK if agree else EXIT_DISAGREE


def cmd_torsion(args) -> tuple[dict, int]:
    p, k, A = _instance(args)
    X = build(p, k, A)
    if args.dump_faces:
        with open(args.dump_faces, "w") as fh:
            dump_faces(X, fh)
    T = torsion(X)
    order = T.torsion_order
    logt = math.log(order) / X.N if order > 1 else 0.0
    report = {
        "command": "torsion", "p": p, "k": k, "A": list(X.A), "N": X.N,
        "divisors": [str(d) for d in T.torsion_divisors], "torsion_order": str(order),
        "log_torsion_per_face": round(logt, 6), "betti_Q": T.reduced_betti,
    }
    return report, EXIT_OK


def cmd_uncertainty(args) -> tuple[dict, int]:
    p = _one(args.p, "-p")
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    if not args.A:
        raise UsageError("-A is required")
    char = 0 if args.char is None else args.char
    F = make_field(char, p)
    A = sorted({a % p for a in args.A})
    direct = uncertainty_direct(A, p, F, budget=args.budget)
    via = uncertainty_via_homology(A, p, F)
    report = {
        "command": "uncertainty", "p": p, "A": A, "field": repr(F), "direct": direct, "homology": via,
        "lower_bound_p_over_m": f"{p}/{len(A)}", "agreement": direct == via,
    }
    return report, EXIT_OK if direct == via else EXIT_DISAGREE


def _suite_kwargs(name: str, args) -> dict:
    kw: dict[str, Any] = {}
    if args.p and name in {"theorem1", "theorem2", "chebotarev", "tao", "group-algebra", "uncertainty-homology",
                           "charp-uncertainty", "frenkel", "vandermonde"}:
        kw["ps"] = tuple(args.p)
        if name == "vandermonde":
            kw["schur_ps"] = tuple(args.p)
    if args.k and name in {"theorem1", "theorem2", "chebotarev", "group-algebra", "vandermonde"}:
        kw["ks"] = tuple(args.k)
        if name == "vandermonde":
            kw["schur_ks"] = tuple(args.k)
    if args.jobs > 1 and name in {"theorem1", "theorem2", "tao"}:
        kw["jobs"] = args.jobs
    if name in {"theorem1", "theorem2", "chebotarev", "tao", "group-algebra", "uncertainty-homology",
                "charp-uncertainty", "vandermonde"}:
        kw["deadline"] = args.deadline
    return kw


def cmd_verify(args) -> tuple[list[dict], int]:
    names = list(verify.SUITES) if args.suite in (None, "all") else args.suite.split(",")
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {sorted(verify.SUITES)}")
    reports, code = [], EXIT_OK
    for name in names:
        res = verify.SUITES[name](**_suite_kwargs(name, args))
        row = res.as_dict()
        if res.failures:
            row["counterexample"] = res.failures[0]
            code = EXIT_DISAGREE
        reports.append(row)
        if code:
            break
    return reports, code


def _scan_keys(path: Path) -> dict[str, dict]:
    done = {}
    if path.exists():
        for line in path.read_text().splitlines():
            if line.strip():
                row = json.loads(line)
                done[row["key"]] = row
    return done


def _scan_one(inst):
    return verify.scan_instance(*inst)


def cmd_scan(args) -> tuple[list[dict], int]:
    if args.stretch:
        instances = [(STRETCH_INSTANCE["p"], STRETCH_INSTANCE["k"], tuple(STRETCH_INSTANCE["A"]))]
    else:
        if not args.p:
            raise UsageError("scan needs -p (e.g. 11..31)")
        k = _one(args.k, "-k") if args.k else 3
        family = [t.strip() for t in args.family.split(",")]
        if family.count("a") != 1:
            raise UsageError("--family must contain the symbol 'a' exactly once, e.g. 0,1,a")
        fixed = [int(t) for t in family if t != "a"]
        instances = []
        for p in args.p:
            if not is_prime(p) or not 1 < k < p:
                raise UsageError(f"bad scan parameters p={p}, k={k}")
            used = {x % p for x in fixed}
            for a in range(p):
                if a not in used:
                    instances.append((p, k, tuple(sorted(used | {a}))))
    logpath = Path(args.log) if args.log else None
    done = _scan_keys(logpath) if logpath else {}
    keyed = [(f"{p}:{k}:{','.join(map(str, A))}", (p, k, A)) for p, k, A in instances]
    todo = [(key, inst) for key, inst in keyed if key not in done]
    fresh: dict[str, dict] = {}
    # chunks keep the time budget responsive and the log incremental
    step = max(1, args.jobs)
    for i in range(0, len(todo), step):
        args.deadline.check()
        chunk = todo[i:i + step]
        for (key, _), row in zip(chunk, verify._pmap(_scan_one, [inst for _, inst in chunk], args.jobs)):
            row["key"] = key
            if args.stretch:
                row["exceeds_stretch_bound"] = row["log_torsion_per_face"] > math.log(float(STRETCH_INSTANCE["base"]))
            fresh[key] = row
            if logpath:
                with logpath.open("a") as fh:
                    fh.write(json.dumps(_jsonable(row), sort_keys=True) + "\n")
    rows = [done.get(key) or fresh[key] for key, _ in keyed]
    # highlight the largest torsion per p
    best: dict[int, int] = {}
    for i, r in enumerate(rows):
        if r["p"] not in best or int(r["torsion_order"]) > int(rows[best[r["p"]]]["torsion_order"]):
            best[r["p"]] = i
    for i, r in enumerate(rows):
        r["is_max"] = best[r["p"]] == i
    code = EXIT_OK if all(r["consistent"] for r in rows) else EXIT_DISAGREE
    return rows, code


COMMANDS = {"betti": cmd_betti, "torsion": cmd_torsion, "uncertainty": cmd_uncertainty,
            "verify": cmd_verify, "scan": cmd_scan}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=parse_int_list, help="prime(s): 7 or 5,7,11 or 11..31")
    common.add_argument("-k", type=parse_int_list, help="dimension parameter(s)")
    common.add_argument("-A", type=parse_int_list, help="residues, comma separated")
    common.add_argument("--char", type=int, help="field characteristic (0 = cyclotomic rationals)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--budget", type=int, default=10**6, help="max candidates for exhaustive searches")
    common.add_argument("--dump-faces", metavar="PATH")
    common.add_argument("--suite", help="verify suite name(s), comma separated, or 'all'")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sumcomplex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("betti", parents=[common], help="reduced Betti numbers and formula check")
    sub.add_parser("torsion", parents=[common], help="integral torsion via Smith normal form")
    sub.add_parser("uncertainty", parents=[common], help="uncertainty number by two routes")
    sub.add_parser("verify", parents=[common], help="run cross-check suites")
    scan = sub.add_parser("scan", parents=[common], help="torsion scan over a family of A")
    scan.add_argument("--family", default="0,1,a", help="A pattern with one free symbol 'a'")
    scan.add_argument("--log", metavar="PATH", help="append-only JSON-lines log; completed keys are skipped")
    scan.add_argument("--stretch", action="store_true",
                      help="run the p=83, A={0,1,19} instance instead (hours-scale on slow machines)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    args.deadline = verify.Deadline(args.budget_seconds)
    try:
        report, code = COMMANDS[args.command](args)
    except (UsageError, FieldError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        emit({"command": args.command, "status": "budget-exceeded", "detail": str(exc)}, args.format)
        return EXIT_BUDGET
    except verify.Counterexample as exc:
        emit({"command": args.command, "status": "counterexample", "suite": exc.suite, "instance": exc.instance},
             args.format)
        return EXIT_DISAGREE
    emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
