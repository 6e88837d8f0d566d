"""Reading and writing datasets, stats, scores, partitions and manifests.

Data files never contain timestamps, so identical inputs produce
byte-identical outputs; run metadata goes into a separate manifest.
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import json
import sys
from pathlib import Path
from typing import Iterable, Mapping

from mesia import __version__
from mesia.errors import ParseError
from mesia.model import CodeCommentPair, CorpusStats, Dataset, GroupPartition, MesiaScore

STATS_FORMAT = "mesia-stats/1"
COMMENT_FIELDS = ("comment", "nl")


def _format_for(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path.suffix.lower() == ".csv" else "jsonl"


def _pair_from_record(rec: object, split: str, line: int, path: str) -> CodeCommentPair:
    if not isinstance(rec, dict):
        raise ParseError(line, "record is not an object", path)
    code = rec.get("code")
    comment = next((rec[f] for f in COMMENT_FIELDS if f in rec), None)
    if not isinstance(code, str):
        raise ParseError(line, "missing or non-string 'code'", path)
    if not isinstance(comment, str):
        raise ParseError(line, "missing or non-string 'comment'", path)
    if not comment.strip():
        raise ParseError(line, "empty comment", path)
    pid = rec.get("id")
    pid = f"{split}-{line}" if pid is None or pid == "" else str(pid)
    return CodeCommentPair(id=pid, code=code, comment=comment)


def load_dataset(path: str | Path, fmt: str | None = None, split: str = "train") -> Dataset:
    """Load a JSON-lines or CSV file of {code, comment} records.

    Missing ids become ``<split>-<line>``. Any bad record aborts the load.
    """
    path = Path(path)
    fmt = _format_for(path, fmt)
    pairs = []
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as e:
                    raise ParseError(line_no, f"invalid JSON: {e.msg}", str(path)) from e
                pairs.append(_pair_from_record(rec, split, line_no, str(path)))
    elif fmt == "csv":
        with open(path, encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or "code" not in reader.fieldnames:
                raise ParseError(1, "CSV header must name a 'code' column", str(path))
            for row in reader:
                pairs.append(_pair_from_record(row, split, reader.line_num, str(path)))
    else:
        raise ValueError(f"unknown dataset format {fmt!r}")
    return Dataset(split, pairs)


def save_dataset(ds: Dataset, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for p in ds.pairs:
            f.write(json.dumps(p.to_dict(), ensure_ascii=False) + "\n")


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def stats_hash(stats: CorpusStats) -> str:
    return hashlib.sha256(_canonical(stats.to_dict()["freq"]).encode("utf-8")).hexdigest()


def write_stats(stats: CorpusStats, path: str | Path) -> str:
    digest = stats_hash(stats)
    payload = {"format": STATS_FORMAT, "content_hash": digest, **stats.to_dict()}
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    return digest


def read_stats(path: str | Path) -> CorpusStats:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, f"invalid stats file: {e.msg}", str(path)) from e
    if payload.get("format") != STATS_FORMAT:
        raise ParseError(1, f"not a {STATS_FORMAT} file", str(path))
    stats = CorpusStats.from_dict(payload)
    if payload.get("content_hash") != stats_hash(stats):
        raise ParseError(1, "content hash mismatch", str(path))
    return stats


def write_scores(scores: Mapping[str, MesiaScore], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for pid, s in scores.items():
            f.write(json.dumps({"id": pid, **s.to_dict()}, ensure_ascii=False) + "\n")


def read_scores(path: str | Path) -> dict[str, MesiaScore]:
    out = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                out[str(rec["id"])] = MesiaScore.from_dict(rec)
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise ParseError(line_no, f"bad score record: {e}", str(path)) from e
    return out


def write_partition(partition: GroupPartition, path: str | Path, extra: Mapping | None = None) -> None:
    payload = {**partition.to_dict(), **(extra or {})}
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


def read_partition(path: str | Path) -> GroupPartition:
    try:
        return GroupPartition.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
    except (json.JSONDecodeError, KeyError, ValueError) as e:
        raise ParseError(1, f"bad partition file: {e}", str(path)) from e


def read_candidates(path: str | Path) -> dict[str, str]:
    """Generated comments, one {id, text} record per line."""
    out = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(line_no, f"invalid JSON: {e.msg}", str(path)) from e
            if not isinstance(rec, dict) or "id" not in rec or not isinstance(rec.get("text"), str):
                raise ParseError(line_no, "record needs 'id' and string 'text'", str(path))
            out[str(rec["id"])] = rec["text"]
    return out


def write_csv(rows: Iterable[Mapping], path: str | Path, columns: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: r[c] for c in columns})


def file_sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(
    path: str | Path,
    command: str,
    config: Mapping,
    inputs: Iterable[str | Path],
    outputs: Iterable[str | Path] = (),
) -> None:
    manifest = {
        "tool": "mesia",
        "version": __version__,
        "command": command,
        "argv": sys.argv[1:],
        "created": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        "config": dict(config),
        "inputs": {str(p): file_sha256(p) for p in inputs},
        "outputs": {str(p): file_sha256(p) for p in outputs if Path(p).is_file()},
    }
    Path(path).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8")
