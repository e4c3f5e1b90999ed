"""Token sequences, tokenizers, and example-pair parsing.

Tokens are plain non-empty strings compared by exact equality. A token
sequence is an immutable tuple of tokens; its length is the ``L`` that the
learned rules are parameterized over.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

TokenSeq = tuple[str, ...]

# Maximal alphanumeric runs, else one token per non-space character.
_SYMBOL_RE = re.compile(r"\w+|[^\w\s]")


class TokenizeError(ValueError):
    pass


@dataclass(frozen=True)
class TokenizerMode:
    """How raw strings become token sequences.

    kind is one of "symbols", "chars", "delimited". Delimited mode splits on
    an exact separator string and drops empty pieces (tokens must be
    non-empty).
    """

    kind: str = "symbols"
    separator: str = field(default=" ")

    def __post_init__(self):
        if self.kind not in ("symbols", "chars", "delimited"):
            raise TokenizeError(f"unknown tokenizer mode {self.kind!r}")
        if self.kind == "delimited" and not self.separator:
            raise TokenizeError("delimited mode needs a non-empty separator")


SYMBOLS = TokenizerMode("symbols")
CHARS = TokenizerMode("chars")


def delimited(separator: str) -> TokenizerMode:
    return TokenizerMode("delimited", separator)


@dataclass(frozen=True)
class ExamplePair:
    """One training example: an input sequence and its transformed output."""

    input: TokenSeq
    output: TokenSeq

    def __post_init__(self):
        if len(self.input) < 1:
            raise ValueError("example input must contain at least one token")
        for tok in self.input + self.output:
            if not tok:
                raise ValueError("tokens must be non-empty")


def tokenize(raw: str, mode: TokenizerMode = SYMBOLS) -> TokenSeq:
    """Split a raw string into tokens; deterministic, empty input gives ()."""
    if mode.kind == "chars":
        return tuple(raw)
    if mode.kind == "delimited":
        return tuple(piece for piece in raw.split(mode.separator) if piece)
    return tuple(_SYMBOL_RE.findall(raw))


def detokenize(seq: TokenSeq, mode: TokenizerMode = SYMBOLS) -> str:
    """Inverse of tokenize up to whitespace: chars concatenates, symbols
    joins with single spaces, delimited joins with the separator."""
    if mode.kind == "chars":
        return "".join(seq)
    if mode.kind == "delimited":
        return mode.separator.join(seq)
    return " ".join(seq)


def parse_pair_line(line: str, raw: bool = False,
                    mode: TokenizerMode = SYMBOLS) -> ExamplePair:
    """Parse an ``input<TAB>output`` example line.

    Without ``raw`` both sides are space-separated token lists; with ``raw``
    they are arbitrary strings run through the given tokenizer.
    """
    if "\t" not in line:
        raise TokenizeError("example line must be 'input<TAB>output'")
    left, right = line.split("\t", 1)
    if raw:
        return ExamplePair(tokenize(left, mode), tokenize(right, mode))
    return ExamplePair(tuple(left.split()), tuple(right.split()))
