"""Command-line front end: ``sympcond {order,conductor,verify,corpus,bound}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .conductor import OpenSubgroup, compute_conductor, conductor_bound
from .errors import BudgetExceeded, SympCondError
from .subgroup import DEFAULT_BUDGET
from .sympgroup import gsp_order_n, sp_order_n
from .verify import (
    FAIL,
    LIFTING_CONFIGS,
    BUDGET,
    CorpusParams,
    SUITES,
    VerificationReport,
    corpus_to_json,
    generate_corpus,
    run_suite,
    verify_commutator_center_simplicity,
    verify_index_bound,
    verify_lifting,
    verify_normal_classification,
    verify_normal_core,
    verify_order_formula,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class CliConfig:
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    format: str = "text"
    out: Optional[str] = None

    @classmethod
    def resolve(cls, args: argparse.Namespace, env=os.environ) -> "CliConfig":
        """Flags win over SYMPCOND_* environment variables, which win over defaults."""

        def pick(flag, var, default):
            if flag is not None:
                return flag
            if var in env:
                try:
                    return int(env[var])
                except ValueError:
                    raise InputError(f"{var} must be an integer") from None
            return default

        budget = pick(getattr(args, "budget", None), "SYMPCOND_BUDGET", DEFAULT_BUDGET)
        if budget < 1:
            raise InputError("budget must be at least 1")
        seed = pick(getattr(args, "seed", None), "SYMPCOND_SEED", 0)
        return cls(budget, seed, getattr(args, "format", None) or "text", getattr(args, "out", None))


def _prime_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(cfg: CliConfig, text: str, payload) -> None:
    body = json.dumps(payload, indent=2, sort_keys=True) if cfg.format == "json" else text
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)


# -------------------- commands --------------------


def cmd_order(args, cfg: CliConfig) -> int:
    if args.g < 1 or args.n < 2:
        raise InputError("need g >= 1 and n >= 2")
    sp, gsp = sp_order_n(args.g, args.n), gsp_order_n(args.g, args.n)
    text = f"g={args.g} n={args.n}\nSp  {sp}\nGSp {gsp}"
    _emit(cfg, text, {"g": args.g, "n": args.n, "sp": sp, "gsp": gsp})
    return EXIT_OK


def _conductor_text(rep) -> str:
    lines = [
        f"conductor    {rep.conductor}",
        f"level        {rep.level}",
        f"adelic index {rep.adelic_index}",
        "exponents    " + (", ".join(f"{p}^{e}" for p, e in sorted(rep.exponents.items())) or "-"),
        "",
        f"{'m':>6} {'kernel':>7} {'splits':>7} {'stable':>7}",
    ]
    for t in rep.trace:
        lines.append(f"{t.m:>6} {str(t.kernel_contained):>7} {str(t.splits):>7} {str(t.stable):>7}")
    return "\n".join(lines)


def cmd_conductor(args, cfg: CliConfig) -> int:
    try:
        with open(args.spec_file) as fh:
            data = json.load(fh)
        G = OpenSubgroup.from_json(data, budget=cfg.budget)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read subgroup spec: {exc}") from None
    rep = compute_conductor(G)
    _emit(cfg, _conductor_text(rep), rep.to_dict())
    return EXIT_OK


def _selected_reports(args, cfg: CliConfig) -> list[VerificationReport]:
    suite, g, ell = args.suite, args.g, args.ell
    if g is None and ell is None:
        kw = {}
        if args.samples is not None:
            kw["samples"] = args.samples
        if args.size is not None:
            kw["size"] = args.size
        return run_suite(suite, seed=cfg.seed, budget=cfg.budget, **kw)
    if g is None or ell is None:
        raise InputError("--g and --ell must be given together")
    b, s = cfg.budget, cfg.seed
    if suite == "orders":
        return [verify_order_formula(g, ell)]
    if suite == "normal":
        return [verify_normal_classification(g, ell, b)]
    if suite == "commutator":
        return [verify_commutator_center_simplicity(g, ell, b)]
    if suite == "index-bound":
        return [verify_index_bound(g, ell, args.samples or 1000, s, b)]
    if suite == "normal-core":
        return [verify_normal_core(g, ell, args.samples or 200, s, b)]
    if suite == "lifting":
        if args.from_level is None:
            matches = [m for (gg, ll, m) in LIFTING_CONFIGS if (gg, ll) == (g, ell)]
            if not matches:
                raise InputError("--from-level is required for this (g, ell)")
            args.from_level = matches[0]
        return [verify_lifting(g, ell, args.from_level, args.samples or 100, s, budget=b)]
    raise InputError(f"suite {suite!r} does not take --g/--ell")


def cmd_verify(args, cfg: CliConfig) -> int:
    reports = _selected_reports(args, cfg)
    lines = []
    for r in reports:
        lines.append(r.summary())
        for w in r.witnesses:
            lines.append(f"    witness: {json.dumps(w)}")
        if r.check_name == "normal_classification":
            lines.append(f"    normal subgroup orders: {r.details.get('normal_orders')}")
            for f in r.details.get("findings", []):
                lines.append(f"    finding: normal subgroup of order {f['order']} outside the dichotomy")
    results = {r.result for r in reports}
    verdict = "pass" if results <= {"pass"} else ("budget-exceeded" if BUDGET in results and FAIL not in results else "fail")
    lines.append(f"overall: {verdict}")
    _emit(cfg, "\n".join(lines), {"result": verdict, "reports": [r.to_dict() for r in reports]})
    if FAIL in results:
        return EXIT_FAIL
    return EXIT_BUDGET if BUDGET in results else EXIT_OK


def cmd_corpus(args, cfg: CliConfig) -> int:
    params = CorpusParams(seed=cfg.seed, g=args.g, size=args.size)
    if args.levels:
        params.levels = tuple(args.levels)
    corpus = generate_corpus(params, budget=cfg.budget)
    text = corpus_to_json(params, corpus)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_bound(args, cfg: CliConfig) -> int:
    if args.g < 1:
        raise InputError("g must be positive")
    b, bound = conductor_bound(args.g, args.index, args.ramified, args.bad)
    _emit(cfg, f"B {b}\nbound {bound}", {"g": args.g, "index": args.index, "B": b, "bound": bound})
    return EXIT_OK


# -------------------- parser --------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="element-count cap for closures")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this path")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sympcond", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", parents=[common], help="orders of Sp_2g and GSp_2g over Z/n")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("conductor", parents=[common], help="conductor of an open subgroup given as JSON")
    p.add_argument("spec_file")
    p.set_defaults(func=cmd_conductor)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--g", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--from-level", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--size", type=int, help="corpus size for conductor-suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="generate a seeded corpus of open subgroups")
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--levels", type=_prime_list)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("bound", parents=[common], help="conductor bound 2*B*index")
    p.add_argument("g", type=int)
    p.add_argument("index", type=int)
    p.add_argument("--ramified", type=_prime_list, default=[])
    p.add_argument("--bad", type=_prime_list, default=[])
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = CliConfig.resolve(args)
        return args.func(args, cfg)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, SympCondError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
