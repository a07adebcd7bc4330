"""Command-line surface: expansion, search, verification, bound reports.

Exit codes: 0 success, 1 verification or check failure, 2 usage or
domain error, 3 node/scan budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds
from . import registry as registry_mod
from . import search as search_mod
from .expansion import expand
from .registry import Registry, RegistryError
from .search import Coloring

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# decimal rendering cutoff for symbolic powers: 2^{9} prints as 512,
# 2^{16} and beyond stay symbolic
_DECIMAL_EXP_LIMIT = 10


# ---------------------------------------------------------------------------
# witness file format: header line "r k N", then one line of colors
# (digit string for r <= 10, comma-separated integers above)
# ---------------------------------------------------------------------------


def format_witness(r: int, k: int, coloring: Coloring) -> str:
    header = f"{r} {k} {coloring.n_points}"
    if r <= 10:
        body = "".join(str(c) for c in coloring.assignment)
    else:
        body = ",".join(str(c) for c in coloring.assignment)
    return f"{header}\n{body}\n"


def parse_witness(text: str) -> tuple[int, int, Coloring]:
    lines = text.splitlines()
    if len(lines) < 2:
        raise ValueError("witness file needs a header line and a colors line")
    parts = lines[0].split()
    if len(parts) != 3:
        raise ValueError(f"witness header must be 'r k N', got {lines[0]!r}")
    try:
        r, k, n = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"witness header must be three integers, got {lines[0]!r}") from None
    if r < 2 or k < 1 or n < 0:
        raise ValueError(f"witness header out of domain: r={r} k={k} N={n}")
    raw = lines[1].strip()
    if r <= 10:
        if raw and not raw.isdigit():
            raise ValueError("witness colors must be a digit string for r <= 10")
        colors = tuple(int(ch) for ch in raw)
    else:
        colors = tuple(int(p) for p in raw.split(",")) if raw else ()
    if len(colors) != n:
        raise ValueError(f"witness has {len(colors)} colors but header says N={n}")
    return r, k, Coloring(r, colors)


# ---------------------------------------------------------------------------
# rendering helpers
# ---------------------------------------------------------------------------


def _render_power(pb: bounds.PowerBound) -> str:
    if pb.exp <= _DECIMAL_EXP_LIMIT:
        return str(pb.value())
    return str(pb)


def _render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _verdict(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def _load_registry(args) -> Registry:
    if args.registry is not None:
        return Registry.load(args.registry)
    return Registry.load(registry_mod.default_registry_path())


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_expand(args) -> int:
    e = expand(args.value, args.base)
    n = e.exponent
    msb = e.digits_most_significant_first()
    pub = next(
        (row for row in bounds.PUBLISHED_ROWS if row.w == args.value and row.r == args.base),
        None,
    )
    flags = []
    if pub is not None and pub.n != n:
        flags.append(f"published-n={pub.n}")
        _warn(
            f"published table lists n={pub.n} for W({pub.r},{pub.k})={pub.w}; "
            f"the base-{args.base} expansion gives n={n}"
        )
    if args.format == "json":
        payload = {
            "value": args.value,
            "base": args.base,
            "digits_msb_first": list(msb),
            "exponent": n,
            "bracket": [f"{args.base}^{n}", args.value, f"{args.base}^{n + 1}"],
            "flags": flags,
        }
        print(json.dumps(payload))
        return EXIT_OK
    print(f"N = {args.value}, base r = {args.base}")
    print("digits (most significant first): " + " ".join(str(d) for d in msb))
    print(f"exponent n = {n}")
    print(f"bracket: {args.base}^{n} <= {args.value} < {args.base}^{n + 1}")
    return EXIT_OK


def _cmd_search(args) -> int:
    outcome = search_mod.compute_w(
        args.r, args.k, budget=args.budget, workers=args.workers, max_n=args.max_n
    )
    if args.format == "json":
        payload = {
            "r": outcome.r,
            "k": outcome.k,
            "w": outcome.w_value,
            "nodes_explored": outcome.nodes_explored,
            "budget_exhausted": outcome.budget_exhausted,
            "elapsed_s": outcome.elapsed,
            "witness": None,
        }
        if outcome.witness is not None:
            payload["witness"] = format_witness(outcome.r, outcome.k, outcome.witness)
        print(json.dumps(payload))
    else:
        if outcome.w_value is not None:
            print(f"W({outcome.r},{outcome.k}) = {outcome.w_value}")
            print(f"nodes_explored = {outcome.nodes_explored}")
            if outcome.witness is not None:
                print("witness (r k N / colors):")
                print(format_witness(outcome.r, outcome.k, outcome.witness), end="")
            print(f"elapsed_s = {outcome.elapsed:.3f}")
        elif args.max_n is not None and outcome.nodes_explored < args.budget:
            print(f"no refutation found for N <= {args.max_n}; W({args.r},{args.k}) > {args.max_n}")
            print(f"nodes_explored = {outcome.nodes_explored}")
            print(f"elapsed_s = {outcome.elapsed:.3f}")
        else:
            print(f"budget exhausted after {outcome.nodes_explored} nodes; W({args.r},{args.k}) not determined")
            print(f"elapsed_s = {outcome.elapsed:.3f}")
    if outcome.w_value is None:
        return EXIT_BUDGET
    if args.witness_out and outcome.witness is not None:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(format_witness(outcome.r, outcome.k, outcome.witness))
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.witness_file, encoding="utf-8") as fh:
        text = fh.read()
    r, k, coloring = parse_witness(text)
    bad = search_mod.has_mono_ap(coloring, k)
    if args.format == "json":
        print(json.dumps({"r": r, "k": k, "n": coloring.n_points, "valid": not bad}))
    elif bad:
        print(f"INVALID: coloring of [1,{coloring.n_points}] contains a monochromatic {k}-term progression")
    else:
        print(f"witness OK: {r}-coloring of [1,{coloring.n_points}] has no monochromatic {k}-term progression")
    return EXIT_CHECK_FAILED if bad else EXIT_OK


def _report_row(rec) -> dict:
    rep = bounds.bound_report(rec)
    pub = bounds.PUBLISHED_BY_RK.get((rec.r, rec.k))
    flags: list[str] = []
    published_a = None
    if rep.published_n is not None:
        flags.append(f"published-n={rep.published_n}")
    if pub is not None and pub.w == rec.w and abs(pub.a - rep.a) > bounds.PUBLISHED_A_TOL:
        published_a = pub.a
        flags.append(f"published-a={pub.a}")
    if rep.published_n is not None and pub is not None:
        flags.append(f"published-r^(n+1)={pub.r_pow_n1}")
    thm41 = bounds.thm41_check(rec.w, rec.k) if rec.r == 2 else None
    return {
        "r": rep.r,
        "k": rep.k,
        "n": rep.n,
        "published_n": rep.published_n,
        "log_r": rep.log_r,
        "log_k": rep.log_k,
        "a": rep.a,
        "published_a": published_a,
        "w": rep.w,
        "r_pow_n1": str(bounds.PowerBound(rep.r, rep.n + 1)),
        "r_pow_k2": str(bounds.PowerBound(rep.r, rep.k * rep.k)),
        "thm21_ok": rep.thm21_ok,
        "thm22_ok": rep.thm22_condition_ok,
        "cond1_ok": rep.cond1_ok,
        "cond2_ok": rep.cond2_ok,
        "trichotomy_ok": rep.trichotomy_ok,
        "corollary_premise_ok": rep.corollary_premise_ok,
        "corollary_conclusion_ok": rep.corollary_conclusion_ok,
        "thm24_ok": rep.k_gt_sqrt_ok,
        "thm41_ok": thm41,
        "flags": flags,
        "notes": list(rep.discrepancy_notes),
    }


def _cmd_table1(args) -> int:
    reg = _load_registry(args)
    rows = [_report_row(rec) for rec in reg]
    for row in rows:
        for note in row["notes"]:
            _warn(f"row (r={row['r']}, k={row['k']}): {note}")
    if args.format == "json":
        print(json.dumps({"rows": rows}))
        return EXIT_OK
    headers = [
        "r", "k", "n", "log r", "log k", "a(r,k)", "W(r,k)",
        "r^{n+1}", "r^{k^2}",
        "thm21", "thm22", "cond1", "cond2", "trich", "cor21", "thm24", "thm41",
        "flags",
    ]
    cells = []
    for row in rows:
        cor_ok = (not row["corollary_premise_ok"]) or row["corollary_conclusion_ok"]
        cells.append([
            str(row["r"]),
            str(row["k"]),
            str(row["n"]),
            f"{row['log_r']:.4f}",
            f"{row['log_k']:.4f}",
            f"{row['a']:.4f}",
            str(row["w"]),
            row["r_pow_n1"],
            row["r_pow_k2"],
            _verdict(row["thm21_ok"]),
            _verdict(row["thm22_ok"]),
            _verdict(row["cond1_ok"]),
            _verdict(row["cond2_ok"]),
            _verdict(row["trichotomy_ok"]),
            _verdict(cor_ok),
            _verdict(row["thm24_ok"]),
            "-" if row["thm41_ok"] is None else _verdict(row["thm41_ok"]),
            ";".join(row["flags"]) if row["flags"] else "-",
        ])
    sys.stdout.write(_render_table(headers, cells))
    return EXIT_OK


def _cmd_check(args) -> int:
    reg = _load_registry(args)
    rows = [_report_row(rec) for rec in reg]
    failures = 0
    lines = []
    for row in rows:
        verdicts = {
            "thm21": row["thm21_ok"],
            "thm22": row["thm22_ok"],
            "cond1": row["cond1_ok"],
            "cond2": row["cond2_ok"],
            "trichotomy": row["trichotomy_ok"],
            "corollary": (not row["corollary_premise_ok"]) or row["corollary_conclusion_ok"],
            "thm24": row["thm24_ok"],
        }
        if row["thm41_ok"] is not None:
            verdicts["thm41"] = row["thm41_ok"]
        if row["r"] == 2 and 1 <= row["k"] <= 64:
            verdicts["gowers"] = bounds.gowers_dominates(row["k"])
        bad = [name for name, ok in verdicts.items() if not ok]
        failures += len(bad)
        status = "ok" if not bad else "FAIL(" + ",".join(bad) + ")"
        lines.append(
            f"(r={row['r']}, k={row['k']}, W={row['w']}): n={row['n']} a={row['a']:.4f} {status}"
        )
    surrogate_ok = bounds.thm24_surrogate(list(reg))
    prime_lines = []
    for p in (2, 3, 5):
        if reg.lookup(2, p + 1) is None:
            continue
        rep = bounds.prime_case(p, reg)
        ok = rep.premise_ok and rep.interval_ok
        failures += 0 if ok else 1
        prime_lines.append(
            f"prime case p={p}: {rep.lower} < {rep.w} < {_render_power(rep.upper)} {_verdict(ok)}"
        )
    if not surrogate_ok:
        failures += 1
    if args.format == "json":
        print(json.dumps({
            "rows": rows,
            "thm24_surrogate_ok": surrogate_ok,
            "failures": failures,
        }))
        return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED
    for line in lines:
        print(line)
    print(f"thm24 surrogate over all records: {_verdict(surrogate_ok)}")
    for line in prime_lines:
        print(line)
    if failures == 0:
        print(f"all checks passed ({len(rows)} records)")
        return EXIT_OK
    print(f"{failures} check(s) FAILED")
    return EXIT_CHECK_FAILED


def _cmd_prime_case(args) -> int:
    reg = _load_registry(args)
    rep = bounds.prime_case(args.p, reg)
    upper = _render_power(rep.upper)
    if args.format == "json":
        print(json.dumps({
            "p": rep.p,
            "k": rep.k,
            "lower": rep.lower,
            "upper": str(rep.upper),
            "w": rep.w,
            "premise_ok": rep.premise_ok,
            "interval_ok": rep.interval_ok,
        }))
    else:
        print(f"p = {rep.p} (prime), k = p + 1 = {rep.k}")
        print(f"W(2,{rep.k}) = {rep.w}")
        print(f"interval: {rep.lower} < {rep.w} < {upper} {_verdict(rep.interval_ok)}")
        print(f"premise (p+1)^2 > n+1: {_verdict(rep.premise_ok)}")
    return EXIT_OK if (rep.premise_ok and rep.interval_ok) else EXIT_CHECK_FAILED


def _cmd_registry_list(args) -> int:
    reg = _load_registry(args)
    if args.format == "json":
        print(json.dumps([
            {"r": rec.r, "k": rec.k, "w": rec.w, "source": rec.source, "note": rec.note}
            for rec in reg
        ]))
    else:
        sys.stdout.write(reg.to_csv())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", metavar="PATH", default=None,
                        help="registry CSV (default: $VDW_REGISTRY or the bundled table)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="vdw",
        description="Exact van der Waerden number laboratory: search, expansion, bound checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common],
                       help="base-r expansion of N with its exponent bracket")
    p.add_argument("value", type=int, metavar="N")
    p.add_argument("base", type=int, metavar="R")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("search", parents=[common],
                       help="compute W(r,k) by exhaustive DFS with a witness")
    p.add_argument("r", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--max-n", type=int, default=None,
                   help="stop scanning above this N and exit 3")
    p.add_argument("--budget", type=int, default=search_mod.DEFAULT_BUDGET,
                   help="node budget (default 10^9)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="worker processes; 1 forces sequential (same result either way)")
    p.add_argument("--witness-out", metavar="PATH", default=None,
                   help="also write the witness file here")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", parents=[common],
                       help="re-check a witness file with the naive scanner")
    p.add_argument("witness_file", metavar="FILE")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table1", parents=[common],
                       help="render the known-values report table")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("check", parents=[common],
                       help="run every bound check against the registry")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("prime-case", parents=[common],
                       help="Berlekamp interval p*2^p < W(2,p+1) < 2^((p+1)^2)")
    p.add_argument("p", type=int)
    p.set_defaults(func=_cmd_prime_case)

    p = sub.add_parser("registry", parents=[common], help="registry utilities")
    regsub = p.add_subparsers(dest="registry_command", required=True)
    pl = regsub.add_parser("list", parents=[common], help="print all records")
    pl.set_defaults(func=_cmd_registry_list)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RegistryError, ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
