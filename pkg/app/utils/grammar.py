"""Text grammars shared by the CLI, element files and the HTTP API.

Words:   word := syllable* ; syllable := gen ('^' signed-int)? ;
         gen := name | name '[' int ',' int ']'
         Tokens are separated by whitespace; the literal `1` is the identity.
         Example: `a^2 b^-1 x[0,1]^3`.
Matrix:  `m11,m12;m21,m22` (row-major, semicolon between rows).
"""
from __future__ import annotations

import re
from typing import Callable, Collection, Optional

from app.core.errors import ParseError
from app.services.words import GenLabel, Word
from app.services.zn_order import IntMatrix2

DEFAULT_NAMES = frozenset("abctxy")

_SYLLABLE = re.compile(
    r"^(?P<name>[A-Za-z])"
    r"(?:\[\s*(?P<i>[+-]?\d+)\s*,\s*(?P<j>[+-]?\d+)\s*\])?"
    r"(?:\^(?P<exp>[+-]?\d+))?$"
)


def _tokens(text: str) -> list[str]:
    # "x[0, 1]" is one generator even with a space after the comma
    text = re.sub(r"\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]", r"[\1,\2]", text)
    return text.split()


def parse_word(
    text: str,
    *,
    plain: Collection[str] = DEFAULT_NAMES,
    indexed: Collection[str] = ("x",),
    alias: Optional[Callable[[GenLabel], GenLabel]] = None,
) -> Word:
    """Parse `text` into a reduced word.

    `plain` names the generators allowed without subscripts, `indexed` the
    families allowed with `[i,j]` subscripts; anything else is a ParseError.
    """
    syllables = []
    for token in _tokens(text):
        if token == "1":
            continue
        match = _SYLLABLE.match(token)
        if match is None:
            raise ParseError(f"malformed syllable {token!r}")
        name = match.group("name")
        exp = int(match.group("exp")) if match.group("exp") is not None else 1
        if match.group("i") is not None:
            if name not in indexed:
                raise ParseError(f"generator family {name}[i,j] is not allowed here")
            label = GenLabel(name, (int(match.group("i")), int(match.group("j"))))
        else:
            if name not in plain:
                raise ParseError(f"generator {name!r} is not allowed here")
            label = GenLabel(name)
        if alias is not None:
            label = alias(label)
        syllables.append((label, exp))
    return Word(tuple(syllables))


def parse_matrix(text: str) -> IntMatrix2:
    rows = [row for row in text.strip().split(";")]
    if len(rows) != 2:
        raise ParseError(f"matrix {text!r} must have two rows separated by ';'")
    entries = []
    for row in rows:
        cells = [cell.strip() for cell in row.split(",")]
        if len(cells) != 2:
            raise ParseError(f"matrix row {row!r} must have two comma-separated entries")
        for cell in cells:
            try:
                entries.append(int(cell))
            except ValueError:
                raise ParseError(f"matrix entry {cell!r} is not an integer") from None
    return IntMatrix2(*entries)


__all__ = ["parse_word", "parse_matrix", "DEFAULT_NAMES"]
