"""``mesia`` command-line interface.

Subcommands: stats, score, dedup, partition, trainsets, bleu. Each run that
writes outputs also writes a manifest (config snapshot, input hashes,
timestamp) next to them. Failures exit with the error class's code and a
one-line ``error: <Class>: <message>`` diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from mesia import io
from mesia.bleu import bleu_per_group, bleu_tokens
from mesia.config import PipelineConfig
from mesia.dataset import (
    bin_by_interval,
    build_training_sets,
    dedup,
    interval_label,
    partition_ranked,
)
from mesia.engine import build_word_stats, mean_mesia, score_dataset
from mesia.errors import MesiaError
from mesia.lexer import stem_comment, tokenize_pair
from mesia.model import GroupPartition, RANK_DECILES

logger = logging.getLogger("mesia")

EXIT_IO = 16


def _split_for(path: str, default: str = "train") -> str:
    name = Path(path).stem.lower()
    if "valid" in name or "dev" in name:
        return "validation"
    if "test" in name:
        return "test"
    if "train" in name:
        return "train"
    return default


def _manifest_path(output: str | Path) -> Path:
    output = Path(output)
    if output.is_dir():
        return output / "manifest.json"
    return output.with_name(output.name + ".manifest.json")


def _config(args) -> PipelineConfig:
    overrides = {
        "log_base": getattr(args, "log_base", None),
        "stopword_path": getattr(args, "stopwords", None),
        "split_variant": getattr(args, "split_variant", None),
        "dedup_equality": getattr(args, "equality", None),
        "drop_remainder_side": getattr(args, "drop_side", None),
        "bleu_variant": getattr(args, "bleu_variant", None),
    }
    if getattr(args, "no_signature_types", False):
        overrides["signature_types_in_code"] = False
    if getattr(args, "stemmed", False):
        overrides["bleu_stemmed"] = True
    return PipelineConfig.from_env(overrides)


def distribution_summary(scores) -> dict:
    part = bin_by_interval(scores)
    n = len(scores)
    values = [s.mesia for s in scores.values()]
    frac = (lambda k: k / n) if n else (lambda k: math.nan)
    return {
        "count": n,
        "bins": [
            {"bin": interval_label(i), "count": len(g), "fraction": frac(len(g))}
            for i, g in enumerate(part.groups)
        ],
        "fraction_below_3": frac(sum(v < 3 for v in values)),
        "fraction_above_6": frac(sum(v > 6 for v in values)),
        "fraction_below_10": frac(sum(v < 10 for v in values)),
        "mean_mesia": math.fsum(values) / n if n else math.nan,
    }


def cmd_stats(args) -> int:
    cfg = _config(args)
    token_lists = []
    for path in args.datasets:
        ds = io.load_dataset(path, args.format, _split_for(path))
        token_lists.extend(stem_comment(p.comment) for p in ds)
    stats = build_word_stats(token_lists)
    digest = io.write_stats(stats, args.output)
    io.write_manifest(_manifest_path(args.output), "stats", cfg.to_dict(), args.datasets, [args.output])
    print(f"tokens={stats.total} vocab={stats.vocab_size} sha256={digest}")
    return 0


def cmd_score(args) -> int:
    cfg = _config(args)
    ds = io.load_dataset(args.dataset, args.format, _split_for(args.dataset))
    tokenized, errors = [], {}
    for p in ds:
        try:
            tokenized.append(tokenize_pair(p, cfg.signature_types_in_code, cfg.split_variant))
        except MesiaError as e:
            errors[p.id] = f"{type(e).__name__}: {e}"
    if args.stats:
        stats = io.read_stats(args.stats)
    else:
        stats = build_word_stats(stem_comment(p.comment) for p in ds)
    report = score_dataset(tokenized, stats, cfg.stopwords(), cfg.log_base, jobs=args.jobs)
    errors.update(report.errors)
    io.write_scores(report.scores, args.output)
    outputs = [args.output]

    summary = distribution_summary(report.scores)
    summary["errors"] = len(errors)
    if args.report:
        io.write_csv(summary["bins"], args.report, ["bin", "count", "fraction"])
        outputs.append(args.report)
    if args.summary:
        Path(args.summary).write_text(json.dumps(summary, indent=1) + "\n", encoding="utf-8")
        outputs.append(args.summary)
    if errors:
        err_path = Path(str(args.output) + ".errors.jsonl")
        with open(err_path, "w", encoding="utf-8") as f:
            for pid in ds.ids:
                if pid in errors:
                    f.write(json.dumps({"id": pid, "error": errors[pid]}) + "\n")
        outputs.append(err_path)
        logger.warning("%d pairs skipped, see %s", len(errors), err_path)
    inputs = [args.dataset] + ([args.stats] if args.stats else [])
    io.write_manifest(_manifest_path(args.output), "score", cfg.to_dict(), inputs, outputs)

    print(f"scored {summary['count']} pairs ({len(errors)} errors), mean MESIA {summary['mean_mesia']:.4f}")
    for b in summary["bins"]:
        print(f"  {b['bin']:>10} {b['count']:>8} {100 * b['fraction']:6.2f}%")
    print(f"  below 3: {100 * summary['fraction_below_3']:.2f}%")
    print(f"  above 6: {100 * summary['fraction_above_6']:.2f}%")
    print(f"  below 10: {100 * summary['fraction_below_10']:.2f}%")
    return 0


def cmd_dedup(args) -> int:
    cfg = _config(args)
    train = io.load_dataset(args.train, args.format, "train")
    valid = io.load_dataset(args.valid, args.format, "validation")
    test = io.load_dataset(args.test, args.format, "test")
    train, valid, test, report = dedup(train, valid, test, cfg.dedup_equality)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    outputs = []
    for name, ds in (("train", train), ("valid", valid), ("test", test)):
        io.save_dataset(ds, out / f"{name}.jsonl")
        outputs.append(out / f"{name}.jsonl")
    record = {**report.to_dict(), "sizes": {"train": len(train), "valid": len(valid), "test": len(test)}}
    (out / "dedup_report.json").write_text(json.dumps(record, indent=1) + "\n", encoding="utf-8")
    outputs.append(out / "dedup_report.json")
    io.write_manifest(out / "manifest.json", "dedup", cfg.to_dict(), [args.train, args.valid, args.test], outputs)
    print(json.dumps(record, sort_keys=True))
    return 0


def cmd_partition(args) -> int:
    cfg = _config(args)
    scores = io.read_scores(args.scores)
    part = partition_ranked(scores, args.k, args.drop_remainder, cfg.drop_remainder_side)
    means = [mean_mesia(scores, g) for g in part.groups]
    io.write_partition(part, args.output, {"mean_mesia": means})
    io.write_manifest(_manifest_path(args.output), "partition", cfg.to_dict(), [args.scores], [args.output])
    for i, (g, m) in enumerate(zip(part.groups, means), start=1):
        print(f"G{i}: {len(g)} pairs, mean MESIA {m:.4f}")
    if part.dropped:
        print(f"dropped {len(part.dropped)} pairs ({cfg.drop_remainder_side} end)")
    return 0


def cmd_trainsets(args) -> int:
    cfg = _config(args)
    ds = io.load_dataset(args.dataset, args.format, "train")
    part = io.read_partition(args.groups)
    sets = build_training_sets(ds, part)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    outputs = []
    for name, subset in sets.items():
        io.save_dataset(subset, out / f"{name}.jsonl")
        outputs.append(out / f"{name}.jsonl")
        print(f"{name}: {len(subset)} pairs")
    io.write_manifest(out / "manifest.json", "trainsets", cfg.to_dict(), [args.dataset, args.groups], outputs)
    return 0


def cmd_bleu(args) -> int:
    cfg = _config(args)
    cand_text = io.read_candidates(args.candidates)
    refs_ds = io.load_dataset(args.references, args.format, _split_for(args.references, "test"))
    candidates = {pid: bleu_tokens(t, cfg.bleu_stemmed) for pid, t in cand_text.items()}
    references = {p.id: bleu_tokens(p.comment, cfg.bleu_stemmed) for p in refs_ds}
    if args.groups:
        part = io.read_partition(args.groups)
    else:
        part = GroupPartition(kind=RANK_DECILES, groups=[sorted(candidates)])
    scores = io.read_scores(args.scores) if args.scores else None
    rows = bleu_per_group(candidates, references, part, scores)
    columns = ["group", "size", "corpus_bleu", "sentence_bleu", "mean_mesia"]
    io.write_csv([r.to_dict() for r in rows], args.output, columns)
    inputs = [args.candidates, args.references] + [p for p in (args.groups, args.scores) if p]
    io.write_manifest(_manifest_path(args.output), "bleu", cfg.to_dict(), inputs, [args.output])
    key = "corpus_bleu" if cfg.bleu_variant == "corpus" else "sentence_bleu"
    for r in rows:
        print(f"G{r.group}: {key}={getattr(r, key):.4f} n={r.size} mean_mesia={r.mean_mesia:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mesia", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["jsonl", "csv"], help="dataset format (default: by extension)")
        p.add_argument("--stopwords", help="stop-word list file")
        p.add_argument("--log-base", choices=["2", "e"])
        p.add_argument("--split-variant", choices=["standard", "plural"])
        p.add_argument("--no-signature-types", action="store_true", help="leave parameter/return types out of the signature words")
        p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("stats", help="word-frequency table over comments")
    p.add_argument("datasets", nargs="+")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("score", help="MESIA score per pair plus distribution report")
    p.add_argument("dataset")
    p.add_argument("--stats", help="stats file (default: computed from the dataset)")
    p.add_argument("--report", help="CSV of interval-bin counts")
    p.add_argument("--summary", help="JSON distribution summary")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("dedup", help="deduplicate train/valid/test splits")
    p.add_argument("train")
    p.add_argument("valid")
    p.add_argument("test")
    p.add_argument("--equality", choices=["raw", "token"])
    common(p)
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("partition", help="rank scores into k equal groups")
    p.add_argument("scores")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--drop-remainder", action="store_true")
    p.add_argument("--drop-side", choices=["high", "low"])
    common(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("trainsets", help="build L/M/H training sets from 10 groups")
    p.add_argument("dataset")
    p.add_argument("groups")
    common(p)
    p.set_defaults(func=cmd_trainsets)

    p = sub.add_parser("bleu", help="BLEU of generated comments, optionally per group")
    p.add_argument("candidates")
    p.add_argument("references")
    p.add_argument("--groups")
    p.add_argument("--scores", help="scores file, for per-group mean MESIA")
    p.add_argument("--bleu-variant", choices=["corpus", "sentence-smoothed"])
    p.add_argument("--stemmed", action="store_true")
    common(p)
    p.set_defaults(func=cmd_bleu)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except MesiaError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
