"""Turning raw Java methods and comments into normalized token streams."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from mesia.errors import MalformedSignature
from mesia.model import CodeCommentPair, Signature, TokenizedPair
from mesia.porter import stem

# "standard": an uppercase run yields its last letter to a following lowercase
# word (HTTPServer -> http, server). "plural": same, except an acronym directly
# followed by a lone "s" keeps it (IDsArray -> ids, array). The default was
# chosen by scoring both against hand-labeled identifiers; see tests/test_lexer.py.
SPLIT_VARIANTS = ("standard", "plural")
DEFAULT_SPLIT_VARIANT = "plural"

_MODIFIERS = frozenset(
    {
        "public",
        "protected",
        "private",
        "static",
        "final",
        "abstract",
        "synchronized",
        "native",
        "strictfp",
        "transient",
        "volatile",
        "default",
    }
)

_NAME_PAREN = re.compile(r"([A-Za-z_$][\w$]*)\s*\(")
_BLOCK_COMMENT = re.compile(r"/\*.*?\*/", re.S)
_LINE_COMMENT = re.compile(r"//[^\n]*")
_DASHES = re.compile(r"[-‐-―]")
_ANNOTATION = re.compile(r"@\s*[\w$.]+")


@dataclass(frozen=True)
class StopWordList:
    words: frozenset[str]

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> StopWordList:
        words = set()
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words.add(line.lower())
        return cls(frozenset(words))

    @classmethod
    def load(cls, path: str | Path) -> StopWordList:
        with open(path, encoding="utf-8") as f:
            return cls.from_lines(f)

    @classmethod
    def default(cls) -> StopWordList:
        text = resources.files("mesia.data").joinpath("stopwords.txt").read_text("utf-8")
        return cls.from_lines(text.splitlines())


def _skip_balanced(text: str, start: int, open_ch: str, close_ch: str) -> int:
    """Index just past the bracket group opening at ``start``."""
    depth = 0
    for i in range(start, len(text)):
        if text[i] == open_ch:
            depth += 1
        elif text[i] == close_ch:
            depth -= 1
            if depth == 0:
                return i + 1
    return len(text)


def _strip_annotations(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        if text[i] != "@":
            out.append(text[i])
            i += 1
            continue
        m = _ANNOTATION.match(text, i)
        if m is None or m.group() == "@interface":
            out.append(text[i])
            i += 1
            continue
        i = m.end()
        j = i
        while j < len(text) and text[j].isspace():
            j += 1
        if j < len(text) and text[j] == "(":
            i = _skip_balanced(text, j, "(", ")")
        out.append(" ")
    return "".join(out)


def _strip_generics(text: str) -> str:
    out = []
    depth = 0
    for ch in text:
        if ch == "<":
            depth += 1
        elif ch == ">":
            depth = max(depth - 1, 0)
            if depth == 0:
                out.append(" ")
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def _base_type(type_text: str) -> str:
    base = _strip_generics(type_text).replace("[", " ").replace("]", " ").replace("...", " ")
    words = [w for w in base.split() if w not in _MODIFIERS]
    if not words:
        return ""
    return words[-1].split(".")[-1]


def _split_params(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch in "<([":
            depth += 1
        elif ch in ">)]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_signature(code: str) -> Signature:
    """Extract name, parameters and return type from a Java method header.

    Generic arguments and array brackets are reduced to the base identifier,
    so ``List<Entry>[]`` becomes ``List``. A ``void`` return is reported as
    ``None``, as is a constructor's missing return type.
    """
    text = _LINE_COMMENT.sub(" ", _BLOCK_COMMENT.sub(" ", code))
    text = _strip_annotations(text)
    brace = text.find("{")
    header = text if brace < 0 else text[:brace]
    m = _NAME_PAREN.search(header)
    if m is None:
        raise MalformedSignature(f"no method name found in {code[:60]!r}")
    name = m.group(1)

    open_idx = m.end() - 1
    close_idx = _skip_balanced(header, open_idx, "(", ")")
    names, types = [], []
    for param in _split_params(header[open_idx + 1 : close_idx - 1]):
        param = _strip_generics(param).replace("...", " ")
        words = [w for w in param.split() if w != "final"]
        if not words:
            continue
        pname = words[-1].replace("[", "").replace("]", "")
        names.append(pname)
        types.append(_base_type(" ".join(words[:-1])))

    prefix = _strip_generics(header[: m.start()]).replace("[", " ").replace("]", " ")
    words = prefix.split()
    ret = None
    if words and words[-1] not in _MODIFIERS:
        ret = words[-1].split(".")[-1]
        if ret == "void":
            ret = None
    return Signature(name=name, param_names=tuple(names), param_types=tuple(types), return_type=ret)


def _char_class(ch: str) -> str:
    if ch.isdigit():
        return "digit"
    if ch.isupper():
        return "upper"
    return "lower"


def split_identifier(ident: str, variant: str = DEFAULT_SPLIT_VARIANT) -> list[str]:
    """Split a camelCase / snake_case identifier into lowercase word parts.

    >>> split_identifier("getAvailalbeIDsArray")
    ['get', 'availalbe', 'ids', 'array']
    >>> split_identifier("utf8_reader", variant="standard")
    ['utf', '8', 'reader']
    """
    if variant not in SPLIT_VARIANTS:
        raise ValueError(f"unknown split variant {variant!r}")
    parts: list[str] = []
    for chunk in re.split(r"[_$]+", ident):
        if not chunk:
            continue
        classes = [_char_class(c) for c in chunk]
        start = 0
        for i in range(1, len(chunk)):
            prev, cur = classes[i - 1], classes[i]
            cut = False
            if (prev == "digit") != (cur == "digit"):
                cut = True
            elif prev == "lower" and cur == "upper":
                cut = True
            elif prev == "upper" and cur == "upper":
                nxt = classes[i + 1] if i + 1 < len(chunk) else None
                if nxt == "lower":
                    cut = True
                    if variant == "plural" and _plural_acronym(chunk, classes, i):
                        cut = False
            if cut:
                parts.append(chunk[start:i])
                start = i
        parts.append(chunk[start:])
    return [p.lower() for p in parts if p]


def _plural_acronym(chunk: str, classes: list[str], i: int) -> bool:
    # chunk[i] ends an uppercase run and is followed by a lone "s".
    if chunk[i + 1] != "s":
        return False
    return i + 2 >= len(chunk) or classes[i + 2] != "lower"


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize_comment(comment: str) -> list[str]:
    """Whitespace/hyphen tokenization with edge punctuation removed, lowercased.

    >>> tokenize_comment("java nio replacement of common-io")
    ['java', 'nio', 'replacement', 'of', 'common', 'io']
    """
    tokens = []
    for chunk in comment.split():
        for piece in _DASHES.split(chunk):
            piece = _strip_punct(piece)
            if piece:
                tokens.append(piece.lower())
    return tokens


def signature_tokens(
    sig: Signature,
    include_types: bool = True,
    variant: str = DEFAULT_SPLIT_VARIANT,
) -> frozenset[str]:
    return frozenset(
        stem(part)
        for ident in sig.identifiers(include_types)
        if ident
        for part in split_identifier(ident, variant)
    )


def tokenize_pair(
    pair: CodeCommentPair,
    include_types: bool = True,
    variant: str = DEFAULT_SPLIT_VARIANT,
) -> TokenizedPair:
    """Stemmed comment tokens plus the stemmed split-signature word set.

    Stop words stay in ``comment_tokens``; they only matter for the
    remaining-words count, which is computed later from ``surface_tokens``.
    """
    sig = parse_signature(pair.code)
    surface = tokenize_comment(pair.comment)
    return TokenizedPair(
        id=pair.id,
        comment_tokens=tuple(stem(t) for t in surface),
        signature_tokens=signature_tokens(sig, include_types, variant),
        surface_tokens=tuple(surface),
        raw_comment_len=len(surface),
    )


def stem_comment(comment: str) -> list[str]:
    return [stem(t) for t in tokenize_comment(comment)]
