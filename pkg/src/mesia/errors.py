"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures to distinct
process exit statuses without a lookup table.
"""

from __future__ import annotations


class MesiaError(Exception):
    exit_code = 1


class ParseError(MesiaError):
    exit_code = 3

    def __init__(self, line: int, reason: str, path: str | None = None) -> None:
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {reason}")


class MalformedSignature(MesiaError):
    exit_code = 4


class EmptyCorpus(MesiaError):
    exit_code = 5


class EmptyComment(MesiaError):
    exit_code = 6


class NegativeScore(MesiaError):
    exit_code = 7


class TooFewItems(MesiaError):
    exit_code = 8


class WrongGroupCount(MesiaError):
    exit_code = 9


class EmptyReference(MesiaError):
    exit_code = 10


class MissingReference(MesiaError):
    exit_code = 11

    def __init__(self, id: str) -> None:
        self.id = id
        super().__init__(f"no reference for id {id!r}")


class MissingCandidate(MesiaError):
    exit_code = 12

    def __init__(self, id: str) -> None:
        self.id = id
        super().__init__(f"no candidate for id {id!r}")


class ConfigError(MesiaError):
    exit_code = 13


class DuplicateId(MesiaError):
    exit_code = 14


class UnknownId(MesiaError):
    exit_code = 15
