"""Command-line entry points: ``seednet train`` and ``seednet predict``.

Exit codes: 0 on success, 2 for invalid parameters or mismatched inputs,
4 for unreadable or malformed files.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import ConfigError, DataError
from .forward_eval import load_table
from .jsonl_data import load_corpus
from .model import ModelSpec
from .predict import predict_masks, write_mask_lines
from .train import TrainConfig, format_metrics, save_checkpoint, train_model
from .train import load_checkpoint

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seednet",
        description="Train and apply the seed-mask predictor.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser(
        "train", help="fit a model to a mask/pattern corpus"
    )
    train.add_argument("--data", required=True, help="corpus JSONL file")
    train.add_argument("--out", required=True, help="checkpoint file to write")
    train.add_argument(
        "--metrics", default=None, help="per-epoch metrics file to write"
    )
    train.add_argument(
        "--table",
        default=None,
        help="slit-field table; enables the per-epoch pattern error column",
    )
    defaults = TrainConfig()
    train.add_argument("--seed", type=int, default=defaults.seed)
    train.add_argument("--max-epochs", type=int, default=defaults.max_epochs)
    train.add_argument("--batch-size", type=int, default=defaults.batch_size)
    train.add_argument(
        "--learning-rate", type=float, default=defaults.learning_rate
    )
    train.add_argument("--patience", type=int, default=defaults.patience)
    train.add_argument("--min-delta", type=float, default=defaults.min_delta)
    train.add_argument(
        "--no-reversal-augment",
        action="store_true",
        help="train without the mirror-image copies of the training rows",
    )
    train.add_argument("--channels", type=int, default=None)
    train.add_argument("--hidden", type=int, default=None)

    predict = commands.add_parser(
        "predict", help="write seed masks for a file of target patterns"
    )
    predict.add_argument("--model", required=True, help="checkpoint file")
    predict.add_argument(
        "--patterns", required=True, help="JSONL file of target patterns"
    )
    predict.add_argument("--out", required=True, help="mask-lines file to write")
    return parser


def _cmd_train(args: argparse.Namespace) -> int:
    masks, patterns = load_corpus(args.data)
    table = load_table(args.table) if args.table is not None else None
    config = TrainConfig(
        seed=args.seed,
        max_epochs=args.max_epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        patience=args.patience,
        min_delta=args.min_delta,
        augment_reversal=not args.no_reversal_augment,
    )
    spec = None
    if args.channels is not None or args.hidden is not None:
        overrides = {}
        if args.channels is not None:
            overrides["channels"] = args.channels
        if args.hidden is not None:
            overrides["hidden"] = args.hidden
        spec = ModelSpec(
            n_sections=masks.shape[1], n_detector=patterns.shape[1], **overrides
        )
    model, metrics = train_model(
        masks, patterns, config, spec=spec, table=table, log=sys.stdout
    )
    save_checkpoint(args.out, model, config)
    if args.metrics is not None:
        with open(args.metrics, "w", encoding="utf-8") as handle:
            handle.write(format_metrics(metrics))
    best = min(metrics, key=lambda row: row.val_loss)
    print(f"trained {len(metrics)} epochs on {masks.shape[0]} records")
    print(f"best validation loss {best.val_loss:.17g} at epoch {best.epoch}")
    print(f"checkpoint {args.out}")
    return EXIT_OK


def _cmd_predict(args: argparse.Namespace) -> int:
    model, _ = load_checkpoint(args.model)
    _, patterns = load_corpus(args.patterns)
    mask_rows = predict_masks(model, patterns)
    with open(args.out, "w", encoding="utf-8") as handle:
        write_mask_lines(handle, mask_rows)
    print(f"wrote {mask_rows.shape[0]} masks to {args.out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"train": _cmd_train, "predict": _cmd_predict}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
