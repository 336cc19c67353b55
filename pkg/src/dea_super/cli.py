"""``dea-super`` command line.

Exit codes: 0 success, 1 validation error (data, config, preset, direction),
2 solver or conditioning failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, lp
from .dataset import DatasetError, RtsSpec, make_context
from .directions import DirectionError, build_direction, validate_direction, slack_index_sets
from .evaluation import RunConfig, parse_config, run_evaluation
from .ingest import ConfigError, load_config, load_dataset, parse_rts
from .report import emit_report

EXIT_OK, EXIT_VALIDATION, EXIT_SOLVER = 0, 1, 2

VALIDATION_ERRORS = (DatasetError, ConfigError, catalog.PresetError, DirectionError, ValueError,
                     OSError)


def _cmd_run(args) -> int:
    raw = load_config(args.config) if args.config else {}
    if args.model:
        raw["model"] = args.model
    if args.format:
        raw["format"] = args.format
    if args.output:
        raw["output"] = args.output
    config = parse_config(raw)
    dataset = load_dataset(args.data, allow_negative=config.allow_negative)
    report = run_evaluation(dataset, config, max_workers=args.workers)
    text = emit_report(report, config.format, config.output)
    if config.output is None:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_presets(args) -> int:
    width = max(len(n) for n in catalog.REGISTRY)
    for p in catalog.REGISTRY.values():
        flags = []
        if not p.enforce_output_nonneg and p.family == "rdse":
            flags.append("no output floor")
        if p.transform != "native":
            flags.append(f"score={p.transform}")
        if not p.transform_verified:
            flags.append("unverified index")
        extra = f" [{'; '.join(flags)}]" if flags else ""
        print(f"{p.name.ljust(width)}  {p.family:<16} {p.rts.label:<12} {p.description}{extra}")
    return EXIT_OK


def _cmd_check(args) -> int:
    raw = load_config(args.config) if args.config else {}
    config = parse_config(raw)
    dataset = load_dataset(args.data, allow_negative=config.allow_negative)
    ins, outs = dataset.input_labels, dataset.output_labels
    for o in range(dataset.n):
        if config.is_preset:
            ctx = make_context(dataset, o, catalog.get_preset(config.model).rts)
            g = catalog.resolve_preset(config.model, ctx, {"M": config.M, "a": config.a,
                                                           "b": config.b}).direction
        else:
            ctx = make_context(dataset, o, config.rts or RtsSpec.crs())
            strategy = config.direction if isinstance(config.direction, str) else "custom"
            custom = None if isinstance(config.direction, str) else config.direction
            g = build_direction(ctx, strategy, config.include_self, custom)
        P, Q = slack_index_sets(ctx)
        rep = validate_direction(ctx, g)
        bad = [ins[i] for i in rep.violating_inputs] + [outs[r] for r in rep.violating_outputs]
        print(f"{ctx.name}: P_o={{{', '.join(ins[i] for i in P)}}} Q_o={{{', '.join(outs[r] for r in Q)}}} "
              f"necessary={'ok' if rep.necessary_ok else 'FAIL ' + ','.join(bad)} "
              f"welldef_grs={'ok' if rep.welldef_grs_ok else 'FAIL'} "
              f"welldef_vrs={'ok' if rep.welldef_vrs_ok else 'FAIL'} "
              f"strictly_positive={'yes' if rep.guaranteed_feasible else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dea-super",
                                     description="Directional super-efficiency scores for DEA.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="score every DMU")
    run.add_argument("--data", required=True, type=Path, help="CSV with dmu, i:*, o:* columns")
    run.add_argument("--config", type=Path, help="flat YAML/JSON run configuration")
    run.add_argument("--model", help="override the config's model (preset or family)")
    run.add_argument("--format", choices=["table", "csv", "json"])
    run.add_argument("--output", help="write the report here instead of stdout")
    run.add_argument("--workers", type=int, default=None, help="evaluate DMUs on a thread pool")
    run.set_defaults(func=_cmd_run)

    presets = sub.add_parser("presets", help="list the conventional-model presets")
    presets.set_defaults(func=_cmd_presets)

    check = sub.add_parser("check", help="zero-pattern and direction diagnostics, no solving")
    check.add_argument("--data", required=True, type=Path)
    check.add_argument("--config", type=Path)
    check.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except lp.SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
