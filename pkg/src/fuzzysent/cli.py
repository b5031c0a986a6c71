"""Command line entry point: ``analyze``, ``eval`` and ``replicate``."""

import argparse
import logging
import sys
from pathlib import Path

from .errors import ConfigError, FuzzySentError
from .evaluation import to_csv, to_text_table
from .fuzzy import display
from .pipeline import RunConfig, analyze, evaluate_corpus, load_config, timestamp, write_maps
from .replication import format_checks, run_checks

EXIT_OK, EXIT_GOLDEN, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("fuzzysent")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = path config file (defaults to the bundled data)")
    common.add_argument("--city", help="only analyze documents for this city")
    common.add_argument("--out", type=Path, help="output directory (default: out)")
    common.add_argument("--fixed-clock", metavar="ISO8601", help="timestamp to write instead of the current time")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for per-document stages")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="fuzzysent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="write a polarity map per city")
    sub.add_parser("eval", parents=[common], help="score predictions against gold labels")
    sub.add_parser("replicate", parents=[common], help="run the golden worked-example checks")
    return parser


def _config(args):
    config = load_config(args.config) if args.config else RunConfig()
    if args.city:
        config.city = args.city
    if args.out:
        config.out_dir = args.out
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    return config


def cmd_analyze(args):
    config = _config(args)
    maps = analyze(config, fixed_clock=args.fixed_clock, jobs=args.jobs)
    paths = write_maps(maps, config.out_dir)
    for m, p in zip(maps, paths):
        cp_value, cp_term = m.city_polarity
        print(f"{m.city}: {len(m.features)} features, city polarity {display(cp_value, config.decimals)} {cp_term} -> {p}")
        for f in m.features:
            causes = ", ".join(f"{n} ({t})" for n, t in f.causes)
            line = f"  {f.name:<18} {display(f.value, config.decimals):>12} {f.term:<12} n={f.sentence_count}"
            print(line + (f"  causes: {causes}" if causes else ""))
    return EXIT_OK


def cmd_eval(args):
    config = _config(args)
    timestamp(args.fixed_clock)  # validate the flag even though metrics carry no time
    run = evaluate_corpus(config, jobs=args.jobs)
    out = Path(config.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "metrics.csv").write_text(to_csv(run.rows), encoding="utf-8")
        (out / "metrics.txt").write_text(to_text_table(run.rows), encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write metrics to {out}: {exc.strerror}") from None
    sys.stdout.write(to_text_table(run.rows))
    return EXIT_OK


def cmd_replicate(args):
    config = _config(args)
    config.check()
    checks = run_checks(config)
    sys.stdout.write(format_checks(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_GOLDEN


COMMANDS = {"analyze": cmd_analyze, "eval": cmd_eval, "replicate": cmd_replicate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except FuzzySentError as exc:
        print(f"fuzzysent {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
