"""Command-line interface: sequence tables, accuracy tables, verification
reports, the brute-force oracle, demo runs, and the advisor service."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import accuracy, oracle, runtime, sequences
from .exactnum import Q, as_exact, format_exact
from .policies import Basic, policy_from_json
from .reporting import Report


def _parse_policy(args) -> object:
    if args.policy:
        text = args.policy.strip()
        if not text.startswith("{"):
            text = json.dumps({"type": text, **({"i": args.i} if args.i else {})})
        data = json.loads(text)
        if args.i and "i" not in data:
            data["i"] = args.i
        if args.steps and data.get("type") in ("fibonacci", "odd_block_g") and "horizon" not in data:
            data["horizon"] = args.steps
        return policy_from_json(data)
    if args.alpha1 is not None:
        if not args.i:
            raise SystemExit("--alpha1 requires --i")
        return Basic(args.i, as_exact(args.alpha1))
    raise SystemExit("provide --policy (JSON or name) or --i with --alpha1")


def _emit(args, payload: dict | Report) -> None:
    if isinstance(payload, Report):
        print(payload.to_tsv() if args.format == "tsv" else payload.to_json())
        return
    if args.format == "tsv" and "rows" in payload:
        rows = payload["rows"]
        if rows:
            header = list(rows[0].keys())
            print("\t".join(header))
            for row in rows:
                print("\t".join(str(row[k]) for k in header))
        return
    print(json.dumps(payload, indent=2))


def cmd_sequences(args) -> int:
    fn = {"f": sequences.f_seq, "g": sequences.g_seq, "e": sequences.e_seq}[args.kind]
    table = fn(args.i, args.n)
    if args.format == "tsv":
        print(table.to_tsv())
    else:
        print(json.dumps(table.to_dict(), indent=2))
    return 0


def cmd_accuracy(args) -> int:
    policy = _parse_policy(args)
    steps = args.steps or 8
    ga = accuracy.general_accuracy(policy, max(steps, 4))
    weight_products = dict(ga.products)
    rows = []
    for n in range(1, steps + 1):
        d = accuracy.step_accuracy(policy, n)
        rows.append(
            {
                "n": n,
                "delta_exact": format_exact(d),
                "delta_float": float(d),
                "weighted": float(weight_products[n]) if n in weight_products else None,
            }
        )
    payload = {
        "policy": args.policy or "basic",
        "rows": rows,
        "general_accuracy": {
            "sup": format_exact(ga.sup_value),
            "sup_float": float(ga.sup_value),
            "attained_at": ga.attained_at,
            "converged": ga.converged,
            "limit": format_exact(ga.limit),
            "limit_float": float(ga.limit),
            "weights": ga.weights,
        },
    }
    _emit(args, payload)
    return 0


def cmd_verify(args) -> int:
    i_values = range(args.i_min, args.i_max + 1)
    report = Report(f"verification ({args.what})")
    if args.what in ("identities", "all"):
        ids = sequences.check_all_identities([i for i in i_values if i >= 1], args.n_max)
        report = report.merged(ids)
    if args.what in ("ratios", "all"):
        for i in i_values:
            if i >= 2:
                report = report.merged(sequences.check_monotone_ratios(i, min(args.n_max, 12)))
    if args.what in ("inequalities", "all"):
        report = report.merged(accuracy.verify_inequalities([i for i in i_values if i >= 2]))
    if args.what in ("bracket", "all"):
        for i in i_values:
            if i >= 2:
                report = report.merged(accuracy.limit_bracket_report(i, min(args.n_max, 12)))
    report.title = f"verification ({args.what}, i in [{args.i_min},{args.i_max}])"
    _emit(args, report)
    print(report.summary(), file=sys.stderr)
    return 0 if report.ok else 1


def cmd_oracle(args) -> int:
    policy = _parse_policy(args)
    if not args.steps:
        raise SystemExit("--steps is required for the oracle")
    worst, branches = oracle.worst_branches(policy, args.steps)
    payload = {
        "policy": args.policy,
        "steps": args.steps,
        "worst_case_accuracy": {"exact": format_exact(worst), "float": float(worst)},
        "worst_branches": [list(b.choices) for b in branches],
    }
    if args.witness:
        w = oracle.witness_function(policy, args.steps, branches[0])
        payload["witness"] = json.loads(w.to_json())
    _emit(args, payload)
    return 0


def cmd_run(args) -> int:
    policy = _parse_policy(args)
    lo, hi = (float(x) for x in args.interval.split(","))
    peak = args.peak if args.peak is not None else (lo + hi) / 2

    def objective(x: float) -> float:
        return -abs(x - peak)

    result = runtime.run_search(
        objective,
        policy,
        steps=args.steps,
        tolerance=args.tolerance,
        interval=(Q(lo).limit_denominator(10**9), Q(hi).limit_denominator(10**9)),
    )
    payload = {
        "estimate": None if result.estimate is None else float(result.estimate),
        "bound": {"exact": format_exact(result.bound), "float": float(result.bound)},
        "interval": [float(result.state.a), float(result.state.b)],
        "steps_done": result.state.steps_done,
        "tests": len(result.history),
        "history": [{"x": float(p), "value": v} for p, v in result.history],
    }
    _emit(args, payload)
    return 0


def cmd_advise_serve(args) -> int:
    import uvicorn

    from .advisor import create_app

    app = create_app(args.log_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="search", description="Unimodal block-search toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--policy", help="policy JSON or bare type name")
        p.add_argument("--i", type=int, help="block order")
        p.add_argument("--steps", type=int)
        p.add_argument("--alpha1", help="exact first-gap parameter for a basic policy")
        p.add_argument("--format", choices=("json", "tsv"), default="json")

    p = sub.add_parser("sequences", help="emit a sequence table")
    p.add_argument("--kind", choices=("f", "g", "e"), required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.set_defaults(func=cmd_sequences)

    p = sub.add_parser("accuracy", help="step and general accuracy of a policy")
    add_common(p)
    p.set_defaults(func=cmd_accuracy)

    p = sub.add_parser("verify", help="run the exact verification suites")
    p.add_argument(
        "--what",
        choices=("identities", "ratios", "inequalities", "bracket", "all"),
        default="all",
    )
    p.add_argument("--i-min", type=int, default=2)
    p.add_argument("--i-max", type=int, default=10)
    p.add_argument("--n-max", type=int, default=25)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force worst-case accuracy")
    add_common(p)
    p.add_argument("--witness", action="store_true", help="emit a worst-branch witness")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("run", help="run a policy against a synthetic peaked objective")
    add_common(p)
    p.add_argument("--peak", type=float, help="peak location of the tent objective")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--interval", default="0,1")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("advise-serve", help="serve the advisor HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-dir", default="sessions")
    p.set_defaults(func=cmd_advise_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
