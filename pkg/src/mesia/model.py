"""Shared data types for every pipeline stage.

All types are frozen. ``to_dict``/``from_dict`` give a JSON-compatible form
that round-trips to a structurally equal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from mesia.errors import DuplicateId

SPLITS = ("train", "validation", "test")


@dataclass(frozen=True)
class CodeCommentPair:
    id: str
    code: str
    comment: str

    def __post_init__(self) -> None:
        if not self.comment.strip():
            raise ValueError(f"pair {self.id!r}: comment is empty")

    def to_dict(self) -> dict:
        return {"id": self.id, "code": self.code, "comment": self.comment}

    @classmethod
    def from_dict(cls, d: Mapping) -> CodeCommentPair:
        return cls(id=str(d["id"]), code=d["code"], comment=d["comment"])


@dataclass(frozen=True)
class Signature:
    name: str
    param_names: tuple[str, ...] = ()
    param_types: tuple[str, ...] = ()
    return_type: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("signature name is empty")
        if len(self.param_names) != len(self.param_types):
            raise ValueError("param_names and param_types differ in length")

    @property
    def params(self) -> list[tuple[str, str]]:
        return list(zip(self.param_names, self.param_types))

    def identifiers(self, include_types: bool = True) -> list[str]:
        """Identifiers a reader sees in the method header."""
        out = [self.name, *self.param_names]
        if include_types:
            out.extend(self.param_types)
            if self.return_type:
                out.append(self.return_type)
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "param_names": list(self.param_names),
            "param_types": list(self.param_types),
            "return_type": self.return_type,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> Signature:
        return cls(
            name=d["name"],
            param_names=tuple(d["param_names"]),
            param_types=tuple(d["param_types"]),
            return_type=d.get("return_type"),
        )


@dataclass(frozen=True)
class TokenizedPair:
    """Normalized view of a pair.

    ``comment_tokens`` are stems; ``surface_tokens`` are the same tokens
    before stemming (stop-word tests run on these). ``raw_comment_len`` is
    len(C), stop words included.
    """

    id: str
    comment_tokens: tuple[str, ...]
    signature_tokens: frozenset[str]
    surface_tokens: tuple[str, ...] = ()
    raw_comment_len: int = -1

    def __post_init__(self) -> None:
        object.__setattr__(self, "comment_tokens", tuple(self.comment_tokens))
        object.__setattr__(self, "signature_tokens", frozenset(self.signature_tokens))
        if not self.surface_tokens:
            object.__setattr__(self, "surface_tokens", self.comment_tokens)
        else:
            object.__setattr__(self, "surface_tokens", tuple(self.surface_tokens))
        if self.raw_comment_len < 0:
            object.__setattr__(self, "raw_comment_len", len(self.comment_tokens))
        if self.raw_comment_len != len(self.comment_tokens):
            raise ValueError("raw_comment_len must equal len(comment_tokens)")
        if len(self.surface_tokens) != len(self.comment_tokens):
            raise ValueError("surface_tokens and comment_tokens differ in length")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "comment_tokens": list(self.comment_tokens),
            "surface_tokens": list(self.surface_tokens),
            "signature_tokens": sorted(self.signature_tokens),
            "raw_comment_len": self.raw_comment_len,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> TokenizedPair:
        return cls(
            id=d["id"],
            comment_tokens=tuple(d["comment_tokens"]),
            signature_tokens=frozenset(d["signature_tokens"]),
            surface_tokens=tuple(d.get("surface_tokens") or d["comment_tokens"]),
            raw_comment_len=d["raw_comment_len"],
        )


@dataclass(frozen=True)
class CorpusStats:
    """Comment-word frequency table."""

    freq: Mapping[str, int]
    total: int = field(init=False)
    vocab_size: int = field(init=False)

    def __post_init__(self) -> None:
        counts = dict(self.freq)
        if any(c < 1 for c in counts.values()):
            raise ValueError("every frequency must be >= 1")
        object.__setattr__(self, "freq", MappingProxyType(counts))
        object.__setattr__(self, "total", sum(counts.values()))
        object.__setattr__(self, "vocab_size", len(counts))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CorpusStats):
            return NotImplemented
        return dict(self.freq) == dict(other.freq)

    def __hash__(self) -> int:
        return hash(frozenset(self.freq.items()))

    def __reduce__(self):
        # MappingProxyType does not pickle
        return (CorpusStats, (dict(self.freq),))

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "vocab_size": self.vocab_size,
            "freq": {w: self.freq[w] for w in sorted(self.freq)},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> CorpusStats:
        stats = cls(freq=d["freq"])
        if "total" in d and d["total"] != stats.total:
            raise ValueError("stats total does not match frequency table")
        return stats


@dataclass(frozen=True)
class MesiaScore:
    info_total: float
    mesia: float
    remaining_count: int
    remaining_proportion: float
    # I(C|W), kept for diagnostics
    info_unconditioned: float = math.nan

    def to_dict(self) -> dict:
        return {
            "info_total": self.info_total,
            "info_unconditioned": self.info_unconditioned,
            "mesia": self.mesia,
            "remaining_count": self.remaining_count,
            "remaining_proportion": self.remaining_proportion,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> MesiaScore:
        unc = d.get("info_unconditioned")
        return cls(
            info_total=float(d["info_total"]),
            mesia=float(d["mesia"]),
            remaining_count=int(d["remaining_count"]),
            remaining_proportion=float(d["remaining_proportion"]),
            info_unconditioned=math.nan if unc is None else float(unc),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MesiaScore):
            return NotImplemented
        both_nan = math.isnan(self.info_unconditioned) and math.isnan(
            other.info_unconditioned
        )
        return (
            self.info_total == other.info_total
            and self.mesia == other.mesia
            and self.remaining_count == other.remaining_count
            and self.remaining_proportion == other.remaining_proportion
            and (both_nan or self.info_unconditioned == other.info_unconditioned)
        )

    __hash__ = None  # type: ignore[assignment]


INTERVAL_BINS = "interval-bins"
RANK_DECILES = "rank-deciles"


@dataclass(frozen=True)
class GroupPartition:
    kind: str
    groups: tuple[tuple[str, ...], ...]
    boundaries: Optional[tuple[float, ...]] = None
    dropped: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (INTERVAL_BINS, RANK_DECILES):
            raise ValueError(f"unknown partition kind {self.kind!r}")
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        object.__setattr__(self, "dropped", tuple(self.dropped))
        if self.boundaries is not None:
            object.__setattr__(self, "boundaries", tuple(float(b) for b in self.boundaries))
        seen: set[str] = set()
        for g in self.groups:
            for i in g:
                if i in seen:
                    raise ValueError(f"id {i!r} appears in more than one group")
                seen.add(i)

    @property
    def ids(self) -> list[str]:
        return [i for g in self.groups for i in g]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "groups": [list(g) for g in self.groups],
            # inf is not valid JSON
            "boundaries": None
            if self.boundaries is None
            else [None if math.isinf(b) else b for b in self.boundaries],
            "dropped": list(self.dropped),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> GroupPartition:
        bounds = d.get("boundaries")
        return cls(
            kind=d["kind"],
            groups=tuple(tuple(g) for g in d["groups"]),
            boundaries=None
            if bounds is None
            else tuple(math.inf if b is None else b for b in bounds),
            dropped=tuple(d.get("dropped", ())),
        )


@dataclass(frozen=True)
class Dataset:
    split: str
    pairs: tuple[CodeCommentPair, ...]

    def __post_init__(self) -> None:
        if self.split not in SPLITS:
            raise ValueError(f"split must be one of {SPLITS}, got {self.split!r}")
        object.__setattr__(self, "pairs", tuple(self.pairs))
        seen: set[str] = set()
        for p in self.pairs:
            if p.id in seen:
                raise DuplicateId(f"duplicate id {p.id!r} in {self.split} dataset")
            seen.add(p.id)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def ids(self) -> list[str]:
        return [p.id for p in self.pairs]

    def by_id(self) -> dict[str, CodeCommentPair]:
        return {p.id: p for p in self.pairs}

    def subset(self, ids: Iterable[str], split: str | None = None) -> Dataset:
        """Pairs whose id is in ``ids``, in this dataset's order."""
        keep = set(ids)
        return Dataset(split or self.split, tuple(p for p in self.pairs if p.id in keep))
