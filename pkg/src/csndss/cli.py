"""Command-line front end: capacity queries, tradeoff sweeps, oracle
verification, code simulation, and configuration enumeration.

Exit codes: 0 success/agreement, 1 invalid parameters or usage, 2 oracle
disagreement (a bug), 3 infeasibility.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations

from . import iacodes
from .flowgraph import BudgetExceededError, brute_force_capacity, build_ifg, max_flow
from .mincut import count_orders, enumerate_distributions
from .optimal import capacity
from .params import (
    InvalidParamsError,
    RepairParams,
    SystemParams,
    parse_rational,
    read_config,
    validate,
)
from .tradeoff import InfeasibleError, tradeoff_curve

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DISAGREE = 2
EXIT_INFEASIBLE = 3

#: Paper-style preset configurations.  Sweeps step by 1/4 symbol so the
#: minimum-storage points (beta_C = 2 resp. 1) land exactly on the grid.
PRESETS = {
    "fig5": {
        "n": "12", "k": "8", "L": "3", "R": "4", "S": "0",
        "dC": "8", "M": "32", "ratio": "2",
        "sweep": [Fraction(t, 4) for t in range(3, 27)],
    },
    "fig6": {
        "n": "6", "k": "4", "L": "2", "R": "3", "S": "0",
        "dC": "3", "M": "8", "ratio": "2",
        "sweep": [Fraction(t, 4) for t in range(2, 26)],
    },
}

PARAM_KEYS = ("n", "k", "L", "R", "S", "dI", "dC", "alpha", "betaI", "betaC", "betaS", "M", "ratio")


def rational_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def rational_csv(x: Fraction) -> str:
    """Decimal text when the expansion terminates, else "p/q"."""
    den = x.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    if x.denominator == 1:
        return str(x.numerator)
    value = x
    digits = 0
    while value.denominator != 1:
        value *= 10
        digits += 1
    text = str(value.numerator).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}" if digits else text


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), help="paper configuration to start from")
    p.add_argument("--config", help="key=value file supplying parameters")
    for key in ("--n", "--k", "--L", "--R", "--S", "--dI", "--dC"):
        p.add_argument(key, type=int)
    for key in ("--alpha", "--betaI", "--betaC", "--betaS", "--M", "--ratio"):
        p.add_argument(key, type=str)


def _gather(args: argparse.Namespace) -> dict:
    """Merge preset < config file < explicit flags."""
    merged: dict = {}
    if args.preset:
        merged.update(PRESETS[args.preset])
    if args.config:
        merged.update(read_config(args.config))
    for key in PARAM_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


class UsageError(ValueError):
    pass


def _require(merged: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in merged]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + k for k in missing)}")


def _system(merged: dict) -> SystemParams:
    _require(merged, "n", "k", "L", "R", "S")
    return SystemParams(
        n=int(merged["n"]), k=int(merged["k"]), L=int(merged["L"]),
        R=int(merged["R"]), S=int(merged["S"]),
    )


def _repair(merged: dict, sys_p: SystemParams, need_alpha: bool = True) -> RepairParams:
    _require(merged, "dC")
    if need_alpha:
        _require(merged, "alpha")
    d_I = int(merged.get("dI", sys_p.R - 1))
    beta_C = parse_rational(merged.get("betaC", 0))
    if "betaI" in merged:
        beta_I = parse_rational(merged["betaI"])
    elif "ratio" in merged:
        beta_I = parse_rational(merged["ratio"]) * beta_C
    else:
        raise UsageError("missing parameters: --betaI (or --ratio with --betaC)")
    return RepairParams(
        alpha=parse_rational(merged.get("alpha", 0)),
        d_I=d_I,
        beta_I=beta_I,
        d_C=int(merged["dC"]),
        beta_C=beta_C,
        beta_S=parse_rational(merged.get("betaS", 0)),
    )


def _check_valid(sys_p: SystemParams, rep: RepairParams) -> None:
    report = validate(sys_p, rep)
    if not report.ok:
        raise InvalidParamsError(report)


def cmd_capacity(args: argparse.Namespace) -> int:
    merged = _gather(args)
    sys_p = _system(merged)
    rep = _repair(merged, sys_p)
    _check_valid(sys_p, rep)
    result = capacity(sys_p, rep)
    if result.caveat:
        print(f"note: {result.caveat}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps(result.to_json_dict()))
    else:
        print(result.capacity)
    return EXIT_OK


def cmd_tradeoff(args: argparse.Namespace) -> int:
    merged = _gather(args)
    sys_p = _system(merged)
    _require(merged, "dC", "M", "ratio")
    if args.sweep:
        sweep = [parse_rational(v) for v in args.sweep.split(",")]
    elif isinstance(merged.get("sweep"), list):
        sweep = merged["sweep"]
    else:
        raise UsageError("missing parameters: --sweep (or --preset)")
    probe = RepairParams(
        alpha=0, d_I=int(merged.get("dI", sys_p.R - 1)),
        beta_I=parse_rational(merged["ratio"]), d_C=int(merged["dC"]),
        beta_C=1, beta_S=parse_rational(merged.get("betaS", 0)),
    )
    _check_valid(sys_p, probe)
    points = tradeoff_curve(
        sys_p,
        parse_rational(merged["ratio"]),
        int(merged["dC"]),
        parse_rational(merged["M"]),
        sweep,
        beta_S=parse_rational(merged.get("betaS", 0)),
    )

    lines: list[str]
    if args.format == "json":
        lines = [json.dumps([
            {
                "beta_C": rational_json(p.beta_C),
                "beta_I": rational_json(p.beta_I),
                "alpha": rational_json(p.alpha) if p.feasible else None,
                "gamma": rational_json(p.gamma),
                "capacity": rational_json(p.capacity) if p.feasible else None,
            }
            for p in points
        ])]
    elif args.format == "csv":
        lines = ["beta_C,alpha,capacity"]
        for p in points:
            if p.feasible:
                lines.append(f"{rational_csv(p.beta_C)},{rational_csv(p.alpha)},{rational_csv(p.capacity)}")
            else:
                lines.append(f"{rational_csv(p.beta_C)},infeasible,")
    else:
        lines = [f"{'beta_C':>10} {'alpha':>10} {'capacity':>10}"]
        for p in points:
            if p.feasible:
                lines.append(f"{str(p.beta_C):>10} {str(p.alpha):>10} {str(p.capacity):>10}")
            else:
                lines.append(f"{str(p.beta_C):>10} {'infeasible':>10} {'':>10}")
    text = "\n".join(lines)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)

    if args.plot:
        from .plotting import save_tradeoff_figure

        label = f"d_C = {merged['dC']}"
        save_tradeoff_figure({label: points}, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)

    if not any(p.feasible for p in points):
        print("error: no feasible point in the sweep", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    merged = _gather(args)
    sys_p = _system(merged)
    rep = _repair(merged, sys_p)
    _check_valid(sys_p, rep)
    closed = capacity(sys_p, rep)
    flow = max_flow(build_ifg(sys_p, rep, closed.s, closed.pi))
    brute = brute_force_capacity(sys_p, rep, max_cases=args.budget)
    values = {
        "closed-form": closed.capacity,
        "max-flow": flow,
        "brute-force": brute.capacity,
    }
    if args.format == "json":
        print(json.dumps({
            "agree": len(set(values.values())) == 1,
            "closed_form": closed.to_json_dict(),
            "max_flow": rational_json(flow),
            "brute_force": brute.to_json_dict(),
        }))
    if len(set(values.values())) == 1:
        if args.format != "json":
            print(f"AGREE: closed-form = max-flow = brute-force = {closed.capacity}")
        return EXIT_OK
    if args.format != "json":
        detail = ", ".join(f"{name} = {value}" for name, value in values.items())
        print(f"DISAGREE: {detail}")
        print(f"closed-form witness: s = {closed.s}, pi = {closed.pi}", file=sys.stderr)
        print(f"brute-force witness: s = {brute.s}, pi = {brute.pi}", file=sys.stderr)
        if brute.capacity < closed.capacity and closed.caveat:
            print(f"note: {closed.caveat}", file=sys.stderr)
        elif brute.capacity < closed.capacity:
            print(
                "note: the part-cut value is an upper bound on the graph min-cut; "
                "at extreme beta combinations a shared initial helper can be cheaper "
                "to cut than its outgoing edges (see README, known limitations)",
                file=sys.stderr,
            )
    return EXIT_DISAGREE


def cmd_enumerate(args: argparse.Namespace) -> int:
    merged = _gather(args)
    sys_p = _system(merged)
    s0_values = [args.s0] if args.s0 is not None else list(range(sys_p.S + 1))
    rows = []
    for s0 in s0_values:
        if not 0 <= sys_p.k - s0 <= sys_p.L * sys_p.R:
            continue
        for s in enumerate_distributions(sys_p, s0):
            rows.append({"s": list(s), "orders": count_orders(s)})
    if args.format == "json":
        print(json.dumps(rows))
    else:
        for row in rows:
            print(f"s = {tuple(row['s'])}  orders = {row['orders']}")
        print(f"total: {len(rows)} distributions, {sum(r['orders'] for r in rows)} orders")
    return EXIT_OK


def cmd_simulate_repair(args: argparse.Namespace) -> int:
    field = iacodes.get_field(args.field)
    code = iacodes.make_code(args.seed, field_order=args.field)
    failures = range(1, 7) if args.failed == "all" else [int(args.failed)]
    plans = {f: iacodes.plan_repair(f, code) for f in failures}
    rng = random.Random(args.seed)
    report = []
    for failed in failures:
        ok = True
        symbols = None
        for _ in range(args.trials):
            file = iacodes.random_file(rng, field)
            contents = iacodes.encode(file, code)
            for subset in combinations(range(1, 7), 4):
                if iacodes.reconstruct({i: contents[i] for i in subset}, code) != file:
                    ok = False
            alive = {i: c for i, c in contents.items() if i != failed}
            result = iacodes.repair(failed, plans[failed], alive, code)
            symbols = len(result.transcript)
            if result.content != contents[failed]:
                ok = False
        report.append({
            "failed": failed,
            "ok": ok,
            "symbols_transferred": symbols,
            "plan": plans[failed].to_json_dict(),
            "transcript": [
                {"source": t.source, "label": t.label, "value": t.value}
                for t in result.transcript
            ],
        })
    if args.format == "json":
        print(json.dumps({"code": code.to_json_dict(), "trials": args.trials, "repairs": report}))
    else:
        print(f"code seed {args.seed} over GF({args.field}); {args.trials} trial(s) per failure")
        for entry in report:
            verdict = "OK" if entry["ok"] else "MISMATCH"
            print(
                f"node {entry['failed']}: repair {verdict}, "
                f"{entry['symbols_transferred']} symbols transferred"
            )
    if all(entry["ok"] for entry in report):
        return EXIT_OK
    return EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csndss",
        description="Capacity and storage/repair tradeoffs of clustered storage systems with separate nodes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="closed-form system capacity")
    _add_param_flags(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("tradeoff", help="minimum storage across a beta_C sweep")
    _add_param_flags(p)
    p.add_argument("--sweep", help="comma-separated beta_C values")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out", help="write the table to this file instead of stdout")
    p.add_argument("--plot", help="also render the curve to this image file")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("verify", help="closed form vs max-flow vs brute force")
    _add_param_flags(p)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="selected distributions and order counts")
    _add_param_flags(p)
    p.add_argument("--s0", type=int, help="restrict to one separate-node count")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate-repair", help="MDS code round-trip with aligned repair")
    p.add_argument("--seed", type=int, default=iacodes.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--failed", default="all", help='node index 1..6 or "all"')
    p.add_argument("--field", type=int, choices=[16, 256], default=256)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_simulate_repair)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParamsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except iacodes.NoAlignmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
