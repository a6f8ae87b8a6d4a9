"""Tuples of partitions (spectral types) and their compact string codec.

A tuple is written leg by leg, legs separated by commas.  Inside a leg every
character is one part: ``1``-``9``, then ``a``=10 ... ``z``=35; larger parts
are written as a parenthesised decimal such as ``(40)``.  ``c^k`` repeats the
part ``c`` k times, so ``1^4`` is ``1111``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .partitions import codim

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class SpectralParseError(ValueError):
    """Malformed tuple text."""

    def __init__(self, message: str, text: str = "", pos: Optional[int] = None):
        if pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)
        self.text = text
        self.pos = pos


class IllegalPartitions(ValueError):
    """Legs of a tuple do not share a common sum."""

    def __init__(self, legs=None):
        super().__init__("illegal partitions")
        self.legs = legs


@dataclass(frozen=True)
class SpectralTuple:
    """A tuple of p partitions of a common order n.

    Legs keep the order of their parts as given; zero parts are tolerated so
    that :meth:`strip` has something to act on, but every leg must sum to the
    same positive order.
    """

    legs: tuple

    def __post_init__(self):
        legs = tuple(tuple(int(x) for x in leg) for leg in self.legs)
        if not legs:
            raise ValueError("a tuple needs at least one partition")
        for leg in legs:
            if not leg or min(leg) < 0:
                raise ValueError(f"bad partition {list(leg)}")
        sums = {sum(leg) for leg in legs}
        if len(sums) != 1 or 0 in sums:
            raise IllegalPartitions(legs)
        object.__setattr__(self, "legs", legs)

    @classmethod
    def of(cls, legs: Iterable[Sequence[int]]) -> "SpectralTuple":
        return cls(tuple(tuple(leg) for leg in legs))

    @property
    def order(self) -> int:
        return sum(self.legs[0])

    @property
    def p(self) -> int:
        return len(self.legs)

    def __len__(self) -> int:
        return len(self.legs)

    def __iter__(self):
        return iter(self.legs)

    def __getitem__(self, j):
        return self.legs[j]

    def __str__(self) -> str:
        return format_tuple(self)

    def to_list(self) -> list:
        return [list(leg) for leg in self.legs]

    def scaled(self, k: int) -> "SpectralTuple":
        return SpectralTuple(tuple(tuple(k * x for x in leg) for leg in self.legs))

    def strip(self) -> "SpectralTuple":
        """Drop zero parts and sort every leg non-increasingly."""
        return SpectralTuple(
            tuple(tuple(sorted((x for x in leg if x), reverse=True)) for leg in self.legs)
        )

    def without_trivial_legs(self) -> "SpectralTuple":
        """Remove legs with a single part; keeps one leg if all are trivial."""
        n = self.order
        legs = tuple(leg for leg in self.legs if tuple(x for x in leg if x) != (n,))
        return SpectralTuple(legs or ((n,),))


def ord_(m: SpectralTuple) -> int:
    return m.order


def idx(m) -> int:
    """Index of rigidity 2n^2 - sum of leg codimensions."""
    legs = m.legs if isinstance(m, SpectralTuple) else m
    n = sum(legs[0])
    return 2 * n * n - sum(codim(leg) for leg in legs)


def fuchs_excess(m) -> int:
    """S = sum_j (n - m_j1) - 2n for a monotone tuple; basic tuples need S >= 0."""
    legs = m.legs if isinstance(m, SpectralTuple) else m
    n = sum(legs[0])
    return sum(n - max(leg) for leg in legs) - 2 * n


def square_defect(m) -> int:
    """SS = sum_j sum_nu (m_j1 - m_jnu) m_jnu; non-negative on monotone tuples."""
    legs = m.legs if isinstance(m, SpectralTuple) else m
    total = 0
    for leg in legs:
        top = leg[0]
        total += sum((top - x) * x for x in leg)
    return total


def normalize_monotone(m: SpectralTuple) -> SpectralTuple:
    """Sort every leg non-increasingly (the map s); leg order is untouched."""
    return SpectralTuple(tuple(tuple(sorted(leg, reverse=True)) for leg in m.legs))


def normalize_ordered(m: SpectralTuple) -> SpectralTuple:
    """Sort legs so that larger partitions come first.  Input must be monotone."""
    return SpectralTuple(tuple(sorted(m.legs, reverse=True)))


def canonical(m: SpectralTuple) -> SpectralTuple:
    """Monotone, ordered, zero parts and trivial legs removed."""
    return normalize_ordered(m.strip().without_trivial_legs())


def is_divisible(m: SpectralTuple) -> Optional[int]:
    """Largest k > 1 dividing every part, or None."""
    g = reduce(gcd, (x for leg in m.legs for x in leg), 0)
    return g if g > 1 else None


def tuple_key(m) -> tuple:
    """Sort key realising the tuple order (legs compared descending-lex)."""
    legs = m.legs if isinstance(m, SpectralTuple) else m
    return tuple(tuple(leg) for leg in legs)


# ---------------------------------------------------------------- codec

def format_part(x: int) -> str:
    if 0 <= x <= 9:
        return str(x)
    if 10 <= x <= 35:
        return _LETTERS[x - 10]
    return f"({x})"


def format_leg(leg: Sequence[int]) -> str:
    return "".join(format_part(x) for x in leg)


def format_tuple(m) -> str:
    legs = m.legs if isinstance(m, SpectralTuple) else m
    return ",".join(format_leg(leg) for leg in legs)


def parse_leg(text: str, offset: int = 0, whole: Optional[str] = None) -> list:
    """Parse one leg of the compact codec into a list of parts."""
    whole = text if whole is None else whole
    parts: list = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isdigit():
            parts.append(int(c))
            i += 1
        elif c in _LETTERS:
            parts.append(_LETTERS.index(c) + 10)
            i += 1
        elif c == "(":
            j = text.find(")", i)
            body = text[i + 1:j] if j > 0 else ""
            if j < 0 or not body.isdigit():
                raise SpectralParseError("bad parenthesised part", whole, offset + i)
            parts.append(int(body))
            i = j + 1
        elif c == "^":
            if not parts:
                raise SpectralParseError("exponent without a part", whole, offset + i)
            mt = re.match(r"\^(\d+|\(\d+\))", text[i:])
            if mt is None:
                raise SpectralParseError("bad exponent", whole, offset + i)
            k = int(mt.group(1).strip("()"))
            if k < 1:
                raise SpectralParseError("zero exponent", whole, offset + i)
            parts.extend([parts[-1]] * (k - 1))
            i += mt.end()
        else:
            raise SpectralParseError(f"unexpected character {c!r}", whole, offset + i)
    if not parts:
        raise SpectralParseError("empty partition", whole, offset)
    return parts


def _split_legs(text: str):
    """Yield (offset, leg_text) for the comma separated legs of ``text``."""
    pos = 0
    for chunk in text.split(","):
        yield pos, chunk
        pos += len(chunk) + 1


def parse_tuple(text) -> SpectralTuple:
    """Parse a Fuchsian tuple from codec text or a nested list (or its JSON)."""
    if isinstance(text, SpectralTuple):
        return text
    if not isinstance(text, str):
        return SpectralTuple.of(text)
    s = "".join(text.split())
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise SpectralParseError("bad list syntax", s, exc.pos) from None
        if not (isinstance(data, list) and data and all(isinstance(x, list) for x in data)):
            raise SpectralParseError("expected a list of partitions", s, 0)
        return SpectralTuple.of(data)
    if "|" in s:
        raise SpectralParseError("irregular spectrum where a tuple was expected", s, s.index("|"))
    legs = [parse_leg(chunk, off, s) for off, chunk in _split_legs(s)]
    return SpectralTuple.of(legs)


def parse(text):
    """Parse either a Fuchsian tuple or, if it contains ``|`` or a space-separated
    parenthesised group, an irregular spectrum."""
    if isinstance(text, str):
        s = text.strip()
        if "|" in s or (" " in s and not s.startswith("[")):
            from .irregular import parse_irregular

            return parse_irregular(s)
    return parse_tuple(text)
