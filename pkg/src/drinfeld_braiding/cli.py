"""Command-line driver: ``drinfeld-braiding run|verify|braid|dump``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import INSTANCES, get_algebra
from .braiding import BraidWord, braid_act
from .drinfeld import hprime_samples
from .rmatrix import build_R
from .suites import ALIASES, SUITES, RunConfig, run_suites
from .tensorcalc import SlotCoalgebra
from .textio import SampleFileError, load_samples

ORDER_ENV = "DRINFELD_BRAIDING_ORDER"


def _default_order() -> int:
    value = os.environ.get(ORDER_ENV)
    if value is None:
        return 5
    try:
        return int(value)
    except ValueError:
        raise SystemExit(f"{ORDER_ENV} must be an integer, got {value!r}")


def _suite_name(text: str) -> str:
    if text not in SUITES and text not in ALIASES:
        raise argparse.ArgumentTypeError(
            f"unknown suite {text!r} (choose from {', '.join(SUITES + tuple(ALIASES))})"
        )
    return text


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", "-N", type=int, default=None, help="truncation order N (default 5 or $%s)" % ORDER_ENV)
    p.add_argument("--instance", choices=INSTANCES, default="uhsl2")


def _suite_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", help="sample file in the canonical element format")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--max-rank", type=int, default=3, help="subsets Σ range over {1..max-rank}")
    p.add_argument("--max-n", type=int, default=6, help="largest n for the E' enumeration")
    p.add_argument("--max-t", type=int, default=12, help="largest t for the binomial sums")
    p.add_argument("--max-s", type=int, default=8)
    p.add_argument("--include-timing", action="store_true", help="add wall-clock seconds to the JSON")
    p.add_argument("--verbose", "-v", action="store_true", help="list passing checks too")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drinfeld-braiding", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run several suites")
    _common(run)
    run.add_argument("--suite", action="append", type=_suite_name, help="repeatable; default: all")
    _suite_options(run)

    verify = sub.add_parser("verify", help="run one suite (or alias)")
    verify.add_argument("suite", type=_suite_name)
    _common(verify)
    _suite_options(verify)

    braid = sub.add_parser("braid", help="apply a braid word to an element of H^{⊗n}")
    _common(braid)
    braid.add_argument("--word", required=True, help='comma-separated signed generators, e.g. "1,2,-1"')
    braid.add_argument("--input", required=True, help="sample file; the first element is used")
    braid.add_argument("--pretty", action="store_true")

    dump = sub.add_parser("dump", help="print R, R⁻¹ or δ_n of a sample")
    _common(dump)
    dump.add_argument("what", choices=("R", "Rinv", "delta"))
    dump.add_argument("--n", type=int, default=2, help="n for δ_n")
    dump.add_argument("--element", default="hE", help="sample label for δ_n")
    dump.add_argument("--samples", help="sample file to look the label up in")
    dump.add_argument("--canonical", action="store_true", help="one term per line")
    return parser


def _config(args) -> RunConfig:
    suites = [args.suite] if args.command == "verify" else (args.suite or ["all"])
    return RunConfig(
        order=args.order,
        instance=args.instance,
        suites=tuple(suites),
        sample_file=args.samples,
        max_rank=args.max_rank,
        max_n=args.max_n,
        max_t=args.max_t,
        max_s=args.max_s,
        include_timing=args.include_timing,
    )


def _run(args) -> int:
    try:
        config = _config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run_suites(config)
    except SampleFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = json.dumps(result.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.json == "-":
        sys.stdout.write(payload)
    else:
        print(result.render_text(args.verbose))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload)
    return 0 if result.overall else 1


def dump_element(what: str, instance: str, order: int, n: int = 2, element: str = "hE", samples: str | None = None):
    alg = get_algebra(instance, order)
    if what == "R":
        return build_R(instance, order).value
    if what == "Rinv":
        return build_R(instance, order).inverse
    if what == "delta":
        pool = load_samples(samples, alg).entries if samples else hprime_samples(alg)
        for label, x in pool:
            if label == element:
                return SlotCoalgebra(alg, x.rank).delta_n(x, n)
        raise KeyError(f"no sample named {element!r}")
    raise ValueError(f"unknown dump target {what!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.order is None:
        args.order = _default_order()
    if args.command in ("run", "verify"):
        return _run(args)
    if args.order < 2:
        print("error: order must be at least 2", file=sys.stderr)
        return 2
    try:
        if args.command == "braid":
            alg = get_algebra(args.instance, args.order)
            entries = load_samples(args.input, alg).entries
            if not entries:
                raise SampleFileError(f"{args.input} holds no element")
            x = entries[0][1]
            word = BraidWord.parse(args.word, x.rank)
            y = braid_act(build_R(args.instance, args.order), word, x)
        else:
            y = dump_element(args.what, args.instance, args.order, args.n, args.element, args.samples)
    except (SampleFileError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    canonical = getattr(args, "canonical", False) or (args.command == "braid" and not args.pretty)
    print(y.canonical() if canonical else y.pretty())
    return 0


if __name__ == "__main__":
    sys.exit(main())
