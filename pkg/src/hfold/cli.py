"""Command-line interface.

Examples:
  hfold analyze --set 0,2,3 --t 2
  hfold verify --set 0,3,4 --t 2 --optimality
  hfold frobenius --a 2 --b 3 --t 2
  hfold sweep --family-n 3:5 --t 1:2
  hfold oracle-check --budget k=2,ak=5,h=4,t=2

Exit codes: 0 success, 1 verified failure, 2 invalid input, 3 budget exceeded.
All reported values are in normalized coordinates unless ``--raw`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from datetime import datetime, timezone
from functools import reduce
from math import gcd
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .core import AffineMap, GeneratorSet, cell_budget_override, normalize, thresholds
from .errors import BudgetError, FewerThanTwoDistinct, HFoldError, InputError, NotCoprime
from .frobenius import CoprimePair, count_solutions, t_frobenius, t_frobenius_formula
from .oracle import OracleBudget, brute_force_counts, brute_force_membership
from .repcount import membership_set
from .structure import (
    Decomposition,
    OptimalityReport,
    VerificationReport,
    decompose,
    default_horizon,
    stability,
    verify_optimality,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = ["set", "t", "h_paper", "h_nathanson", "h_wcc", "h_empirical", "c", "d", "C", "D", "status"]


class UsageError(InputError):
    pass


def parse_set(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"sets are comma-separated integers, got {text!r}") from None
    if len(set(values)) < 2:
        raise FewerThanTwoDistinct(f"set {text!r} has fewer than two distinct integers")
    return values


def parse_range(text: str) -> list[int]:
    """``"3"`` or an inclusive ``"lo:hi"``."""
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"expected N or LO:HI, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def parse_budget(text: str) -> dict[str, int]:
    keys = {"k": "k", "ak": "ak", "a_k": "ak", "h": "h", "t": "t"}
    budget = {"k": 3, "ak": 7, "h": 5, "t": 3}
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = item.replace("<=", "=").partition("=")
        name = name.strip()
        if not sep or name not in keys:
            raise UsageError(f"malformed budget item {item!r}; use k=,ak=,h=,t=")
        try:
            budget[keys[name]] = int(value)
        except ValueError:
            raise UsageError(f"malformed budget value in {item!r}") from None
    if budget["k"] < 1 or budget["ak"] < 1 or budget["h"] < 0 or budget["t"] < 1:
        raise UsageError(f"budget out of range: {budget}")
    return budget


def _join(values: Sequence[int]) -> str:
    return ";".join(map(str, values))


def _affine_json(amap: AffineMap) -> dict[str, int]:
    return {"scale": amap.scale, "offset_per_summand": amap.offset_per_summand}


def _thresholds_json(th) -> dict[str, Any]:
    return {
        "t": th.t,
        "h_paper": th.h_paper,
        "h_nathanson": th.h_nathanson,
        "h_wcc": th.h_wcc,
        "c_prime": th.c_prime,
        "h_empirical": th.h_empirical,
    }


def _decomposition_json(dec: Optional[Decomposition], anchor: Optional[int] = None) -> Optional[dict]:
    if dec is None:
        return None
    out = {"c": dec.c, "d": dec.d, "C": list(dec.C), "D": list(dec.D), "M": dec.M}
    if anchor is not None:
        out["anchor"] = anchor
    return out


def _verification_json(rep: VerificationReport) -> dict[str, Any]:
    out = {
        "range": list(rep.checked_range),
        "status": rep.status,
        "first_failure": rep.first_failure,
        "anchor_interval_ok": rep.anchor_interval_ok,
        "cprime_member_ok": rep.cprime_member_ok,
    }
    if not rep.passed:
        out["diff"] = {"missing": list(rep.missing), "extra": list(rep.extra)}
        out["notes"] = list(rep.notes)
    return out


def _optimality_json(opt: OptimalityReport) -> dict[str, Any]:
    return {
        "n": opt.n,
        "h_paper": opt.h_paper,
        "expected_h_paper": opt.expected_h,
        "c": opt.c,
        "expected_c": opt.expected_c,
        "certificate": {
            "h": opt.below_h,
            "max_member": opt.below_max,
            "bound": opt.below_bound,
            "structure_holds": opt.below_reconstructs,
        },
        "checks": opt.checks,
        "status": "pass" if opt.passed else "fail",
    }


def _raw_json(amap: AffineMap, h: int, members: list[int], dec: Optional[Decomposition]) -> dict[str, Any]:
    out: dict[str, Any] = {"h": h, "members": [amap.apply(n, h) for n in members]}
    if dec is not None and dec.has_interval(dec.M):
        out["interval"] = [amap.apply(dec.c, h), amap.apply(dec.M - dec.d, h)]
    return out


def _meta(args: argparse.Namespace) -> dict[str, Any]:
    meta = {"tool": "hfold", "version": __version__, "command": args.command}
    if getattr(args, "timestamp", False):
        meta["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return meta


def _text_lines(obj: Any, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for key, value in obj.items():
            name = f"{prefix}.{key}" if prefix else key
            if isinstance(value, dict):
                lines.extend(_text_lines(value, name))
            else:
                lines.append(f"{name}: {_text_value(value)}")
        return lines
    return [f"{prefix}: {_text_value(obj)}"]


def _text_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ", ".join(map(str, value)) + "]"
    return str(value)


def emit(payload: Any, args: argparse.Namespace) -> None:
    fmt = args.format
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "text":
        text = "\n".join(_text_lines(payload)) + "\n"
    else:
        raise UsageError(f"format {fmt!r} not supported by {args.command}")
    _write(text, args)


def _write(text: str, args: argparse.Namespace) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _base_payload(args, raw: list[int], A: GeneratorSet, amap: AffineMap) -> dict[str, Any]:
    return {
        "input": {"set": raw, "t": args.t},
        "normalized": list(A.elements),
        "affine_map": _affine_json(amap),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    raw = parse_set(args.set)
    A, amap = normalize(raw)
    th = thresholds(A, args.t)
    h = th.h_paper if args.h is None else args.h
    if h < 0:
        raise UsageError(f"h must be nonnegative, got {h}")
    S = membership_set(A, h, args.t)
    anchor = th.c_prime - 1 if th.c_prime - 1 in S else None
    dec = decompose(S, anchor) if len(S) else None

    payload = _base_payload(args, raw, A, amap)
    payload["input"]["h"] = h
    payload["thresholds"] = _thresholds_json(th)
    payload["membership"] = {"h": h, "t": args.t, "M": S.max_value, "members": S.to_list()}
    payload["decomposition"] = _decomposition_json(dec, anchor)
    payload["verification"] = None
    if args.raw:
        payload["raw"] = _raw_json(amap, h, S.to_list(), dec)
    if not args.no_meta:
        payload["meta"] = _meta(args)
    emit(payload, args)
    return EXIT_OK


def _optimality_n(A: GeneratorSet) -> int:
    a = A.elements
    if len(a) != 3 or a[2] != a[1] + 1:
        raise UsageError(f"--optimality needs a set of the form {{0,n,n+1}}, got {A}")
    return a[1]


def cmd_verify(args: argparse.Namespace) -> int:
    raw = parse_set(args.set)
    A, amap = normalize(raw)
    n = _optimality_n(A) if args.optimality else None
    horizon = args.horizon if args.horizon is not None else default_horizon(A)
    rep, h_emp = stability(A, args.t, horizon)
    th = rep.thresholds.with_empirical(h_emp) if h_emp is not None else rep.thresholds

    payload = _base_payload(args, raw, A, amap)
    payload["input"]["horizon"] = horizon
    payload["thresholds"] = _thresholds_json(th)
    payload["decomposition"] = _decomposition_json(rep.stable)
    payload["verification"] = _verification_json(rep)
    ok = rep.passed
    if n is not None:
        opt = verify_optimality(n, args.t, horizon)
        payload["optimality"] = _optimality_json(opt)
        ok = ok and opt.passed
    if args.raw and rep.stable is not None:
        h = rep.checked_range[0]
        payload["raw"] = _raw_json(amap, h, rep.stable.members(), rep.stable)
    if not args.no_meta:
        payload["meta"] = _meta(args)
    emit(payload, args)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_frobenius(args: argparse.Namespace) -> int:
    if gcd(args.a, args.b) != 1:
        raise NotCoprime(f"gcd({args.a}, {args.b}) != 1")
    pair = CoprimePair.of(args.a, args.b)
    searched = t_frobenius(pair, args.t)
    formula = t_frobenius_formula(pair, args.t)
    payload: dict[str, Any] = {
        "input": {"a": args.a, "b": args.b, "t": args.t},
        "pair": [pair.a1, pair.a2],
        "searched": searched,
        "formula": formula,
        "agree": searched == formula,
        "count_at": {str(searched): count_solutions(pair, searched),
                     str(searched + 1): count_solutions(pair, searched + 1)},
    }
    if not args.no_meta:
        payload["meta"] = _meta(args)
    emit(payload, args)
    return EXIT_OK if searched == formula else EXIT_FAIL


def _family(args: argparse.Namespace) -> list[GeneratorSet]:
    raws: list[list[int]] = [parse_set(s) for s in args.set or []]
    if args.family_n:
        raws += [[0, n, n + 1] for n in parse_range(args.family_n)]
    if args.family_file:
        try:
            lines = Path(args.family_file).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read family file: {exc}") from None
        raws += [parse_set(line) for line in lines if line.strip() and not line.startswith("#")]
    if not raws:
        raise UsageError("sweep needs at least one set (--set, --family-n or --family-file)")
    return sorted({normalize(r)[0] for r in raws}, key=lambda A: A.elements)


def _sweep_row(A: GeneratorSet, t: int, horizon: Optional[int]) -> dict[str, Any]:
    row: dict[str, Any] = {"set": ",".join(map(str, A.elements)), "t": t}
    try:
        th = thresholds(A, t)
        rep, h_emp = stability(A, t, horizon)
    except HFoldError as exc:
        row.update({col: None for col in CSV_COLUMNS[2:-1]})
        row["status"] = f"error: {type(exc).__name__}"
        return row
    dec = rep.stable
    row.update({
        "h_paper": th.h_paper,
        "h_nathanson": th.h_nathanson,
        "h_wcc": th.h_wcc,
        "h_empirical": h_emp,
        "c": dec.c if dec else None,
        "d": dec.d if dec else None,
        "C": list(dec.C) if dec else None,
        "D": list(dec.D) if dec else None,
        "status": rep.status,
    })
    return row


def cmd_sweep(args: argparse.Namespace) -> int:
    family = _family(args)
    ts = parse_range(args.t)
    rows = [_sweep_row(A, t, args.horizon) for A in family for t in ts]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(row[col]) for col in CSV_COLUMNS])
        _write(buf.getvalue(), args)
    elif args.format == "json":
        payload: dict[str, Any] = {"rows": rows}
        if not args.no_meta:
            payload["meta"] = _meta(args)
        _write(json.dumps(payload, indent=2) + "\n", args)
    else:
        lines = [" ".join(f"{col}={_csv_cell(row[col]) or '-'}" for col in CSV_COLUMNS) for row in rows]
        _write("\n".join(lines) + "\n", args)
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        return _join(value)
    return str(value)


def canonical_sets(max_k: int, max_ak: int):
    """Every canonical generator set with ``k <= max_k`` and ``a_k <= max_ak``."""
    for k in range(1, max_k + 1):
        for rest in itertools.combinations(range(1, max_ak + 1), k):
            if reduce(gcd, rest) == 1:
                yield GeneratorSet((0,) + rest)


def cmd_oracle_check(args: argparse.Namespace) -> int:
    from .repcount import iter_membership_sets

    budget = parse_budget(args.budget)
    oracle_budget = OracleBudget()
    checked_instances = 0
    for A in canonical_sets(budget["k"], budget["ak"]):
        tallies = {h: brute_force_counts(A, h, oracle_budget) for h in range(budget["h"] + 1)}
        for t in range(1, budget["t"] + 1):
            for h, S in enumerate(iter_membership_sets(A, budget["h"], t)):
                expected = brute_force_membership(A, h, t, counts=tallies[h])
                checked_instances += 1
                if S != expected:
                    sys.stdout.write(
                        f"disagreement: A={A} h={h} t={t}\n"
                        f"  repcount: {S.to_list()}\n  oracle:   {expected.to_list()}\n"
                    )
                    return EXIT_FAIL
    sys.stdout.write(f"oracle-check: {checked_instances} instances agree (budget {budget})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfold", description="h-fold sumsets with multiplicity")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json", fmts=("json", "text")):
        p.add_argument("--format", choices=fmts, default=fmt_default)
        p.add_argument("--output", "-o", help="write the report here instead of stdout")
        p.add_argument("--no-meta", action="store_true", help="omit the metadata block")
        p.add_argument("--timestamp", action="store_true", help="add a generation time to the metadata")
        p.add_argument("--cell-budget", type=int, help="largest h*a_k per table (default 2^24)")

    p = sub.add_parser("analyze", help="thresholds, membership set and decomposition at one h")
    p.add_argument("--set", required=True, help="comma-separated integers")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--h", type=int, help="default: the stabilization threshold")
    p.add_argument("--raw", action="store_true", help="also emit values in input coordinates")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check the stable decomposition over a window of h")
    p.add_argument("--set", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--horizon", type=int, help="default: 2*a_k + 2")
    p.add_argument("--optimality", action="store_true", help="also check sharpness for {0,n,n+1}")
    p.add_argument("--raw", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("frobenius", help="t-Frobenius number of a coprime pair")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("sweep", help="threshold survey over a family of sets")
    p.add_argument("--set", action="append", help="repeatable")
    p.add_argument("--family-n", help="the family {0,n,n+1} for n in LO:HI")
    p.add_argument("--family-file", help="one comma-separated set per line")
    p.add_argument("--t", default="1", help="N or LO:HI")
    p.add_argument("--horizon", type=int)
    common(p, "csv", ("csv", "json", "text"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-check", help="compare the DP engine with brute force")
    p.add_argument("--budget", default="", help="e.g. k=3,ak=7,h=5,t=3")
    p.add_argument("--cell-budget", type=int)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cell_budget is not None:
            with cell_budget_override(args.cell_budget):
                return args.func(args)
        return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HFoldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
