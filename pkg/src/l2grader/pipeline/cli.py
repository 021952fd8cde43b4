"""Command-line interface.

Subcommands mirror the pipeline stages (ingest, train-lms, extract,
train, score, evaluate) plus agreement and synth. Exit codes: 0 success,
1 configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ..errors import ConfigError, DataError, GraderError
from .config import PipelineConfig, load_config
from .reports import render_report_text
from .synth import SyntheticSpec, generate_synthetic
from . import stages

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="pipeline config file (JSON or TOML)")
    parser.add_argument("--output-dir", help="override the configured output directory")
    parser.add_argument("--seed", type=int, help="override the configured split seed")


def _config_from_args(args) -> PipelineConfig:
    overrides = {"output_dir": args.output_dir, "seed": args.seed}
    return load_config(args.config, overrides=overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2grader",
        description="Automatic proficiency grading of spoken L2 answers.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("ingest", "validate the corpus and build the speaker-disjoint split"),
        ("train-lms", "train the 5x4 per-context n-gram language models"),
        ("extract", "compute the 116-entry feature vectors"),
        ("train", "train the per-group indicator classifiers"),
        ("score", "predict indicator scores for the eval split"),
        ("evaluate", "compute CC / WK / Corr reports"),
    ):
        sub = commands.add_parser(name, help=text)
        _add_config_options(sub)

    agreement = commands.add_parser(
        "agreement", help="inter-annotator word accuracy between two transcription files"
    )
    agreement.add_argument("file_a", help="reference transcription file (corpus JSONL)")
    agreement.add_argument("file_b", help="second transcription file (corpus JSONL)")
    agreement.add_argument(
        "--per-utterance", action="store_true", help="also list per-utterance rows"
    )

    synth = commands.add_parser(
        "synth", help="generate a synthetic corpus with planted score signal"
    )
    synth.add_argument("--out", required=True, help="directory for the generated files")
    synth.add_argument("--spec", help="SyntheticSpec JSON file (defaults otherwise)")
    synth.add_argument("--seed", type=int, help="override the generation seed")
    return parser


def _run_stage(args) -> int:
    config = _config_from_args(args)
    runner = {
        "ingest": stages.ingest,
        "train-lms": stages.train_lms,
        "extract": stages.extract,
        "train": stages.train_models,
        "score": stages.score,
        "evaluate": stages.evaluate,
    }[args.command]
    result = runner(config)
    if args.command == "evaluate":
        print(render_report_text(result))
    elif args.command == "ingest":
        train, evaluation = result
        print(f"ingested {len(train) + len(evaluation)} utterances "
              f"({len(train)} train / {len(evaluation)} eval)")
    else:
        print(f"{args.command}: done ({result})")
    return EXIT_OK


def _run_agreement(args) -> int:
    table = stages.agreement(args.file_a, args.file_b)
    print(f"{'utterances':<14} {'#words':>8} {'#different':>11} {'WA':>8}")
    if args.per_utterance:
        for row in table["per_utterance"]:
            wa = f"{row['wa'] * 100:7.2f}%" if row["wa"] is not None else "     n/a"
            print(f"{row['utterance_id']:<14} {row['n_ref']:>8} {row['n_err']:>11} {wa}")
    pooled = table["pooled"]
    print(
        f"{'(pooled)':<14} {pooled['n_ref']:>8} {pooled['n_err']:>11} "
        f"{pooled['wa'] * 100:7.2f}%"
    )
    return EXIT_OK


def _run_synth(args) -> int:
    spec = SyntheticSpec.from_file(args.spec) if args.spec else SyntheticSpec()
    if args.seed is not None:
        spec.seed = args.seed
    paths = generate_synthetic(spec, args.out)
    print(f"wrote {len(paths.utterances)} utterances under {paths.root}")
    print(f"pipeline config: {paths.config}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "agreement":
            return _run_agreement(args)
        if args.command == "synth":
            return _run_synth(args)
        return _run_stage(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except GraderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
