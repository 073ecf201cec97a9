"""Free-group words over named generators.

A letter is a pair ``(name, exp)`` with ``exp`` in ``{+1, -1}``; a :class:`Word`
is an immutable, freely reduced tuple of letters.  Generator names are plain
strings; :class:`GeneratorSymbol` maps the catalog families onto them.

Text syntax (see README)::

    word    := "1" | factor ( ("*" | whitespace)? factor )*
    factor  := atom ( "^" ["-"] digits | "'" )?
    atom    := name | "(" word ")"
    name    := letter digits? ( "_" letter digits? )*

so ``a1 a2^-1``, ``a1*a2'``, ``a1a2'`` and ``(a1 a2)^-3`` all parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

Letter = tuple[str, int]


class WordError(ValueError):
    pass


class WordSyntaxError(WordError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at offset {pos} in {text!r}")
        self.text = text
        self.pos = pos


# -- generator symbols -------------------------------------------------------

_FAMILY_NAMES = {
    "a": "a", "b": "b", "y": "y", "e": "e", "f": "f", "usq": "u", "c": "c",
    "bseq": "b", "bbar": "B", "rho": "r", "rhobar": "R",
}
_INDEXED = {"a", "bseq", "bbar"}
_PRETTY = {"u": "y²", "r": "ρ", "R": "ρ̄"}


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    family: str
    index: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILY_NAMES:
            raise WordError(f"unknown generator family {self.family!r}")
        if (self.index is not None) != (self.family in _INDEXED):
            raise WordError(f"family {self.family!r} index mismatch: {self.index!r}")
        if self.index is not None and self.index < 0:
            raise WordError("generator index must be non-negative")

    @property
    def name(self) -> str:
        base = _FAMILY_NAMES[self.family]
        return base if self.index is None else f"{base}{self.index}"

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, name: str) -> "GeneratorSymbol":
        m = re.fullmatch(r"([abBeyfucrR])(\d*)", name)
        if not m:
            raise WordError(f"{name!r} is not a catalog generator")
        head, digits = m.groups()
        if head == "a":
            family = "a"
        elif head == "b":
            family = "bseq" if digits else "b"
        elif head == "B":
            family = "bbar"
        else:
            family = {v: k for k, v in _FAMILY_NAMES.items() if k not in _INDEXED}[head]
        index = int(digits) if digits else None
        return cls(family, index)


def sym(family: str, index: int | None = None) -> str:
    """Name of the catalog generator ``(family, index)``."""
    return GeneratorSymbol(family, index).name


def pretty_name(name: str) -> str:
    if name in _PRETTY:
        return _PRETTY[name]
    m = re.fullmatch(r"B(\d+)", name)
    if m:
        return f"b̄{m.group(1)}"
    if "_" in name:
        base, _, rep = name.partition("_")
        return f"{rep}·{base}·{rep}⁻¹"
    return name


# -- reduction -----------------------------------------------------------------

def _check_letter(letter) -> Letter:
    name, exp = letter
    if exp not in (1, -1):
        raise WordError(f"exponent must be +1 or -1, got {exp!r}")
    if not isinstance(name, str) or not name:
        raise WordError(f"bad generator name {name!r}")
    return name, exp


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, exp in letters:
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


class Word:
    """Freely reduced word.  Supports ``*``, ``~`` (inverse) and ``**``."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = free_reduce(_check_letter(x) for x in letters)
        self._hash = None

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls(parse_letters(text))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        if exp >= 0:
            return cls([(name, 1)] * exp)
        return cls([(name, -1)] * (-exp))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word(base.letters * abs(n))

    def __str__(self):
        return format_word(self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def pretty(self) -> str:
        if not self.letters:
            return "1"
        return "·".join(pretty_name(n) + ("" if e == 1 else "⁻¹") for n, e in self.letters)

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)


IDENTITY = Word()


def reduce(letters: Iterable[Letter]) -> Word:
    return Word(letters)


def invert(w: Word) -> Word:
    return ~w


def concat(*words: Word) -> Word:
    out: tuple[Letter, ...] = ()
    for w in words:
        out += w.letters
    return Word(out)


def conjugate(w: Word, by: Word) -> Word:
    """``by * w * by^-1``."""
    return Word(by.letters + w.letters + (~by).letters)


def substitute(w: Word, mapping: Mapping[str, Word]) -> Word:
    out: list[Letter] = []
    for name, exp in w.letters:
        try:
            image = mapping[name]
        except KeyError:
            raise WordError(f"substitution map has no image for {name!r}") from None
        out.extend(image.letters if exp == 1 else (~image).letters)
    return Word(out)


def cyclic_rotations(w: Word) -> list[tuple[Letter, ...]]:
    n = len(w.letters)
    return [w.letters[k:] + w.letters[:k] for k in range(max(n, 1))]


# -- parity ----------------------------------------------------------------------

class ParityMap:
    """Homomorphism from the free group on an alphabet to Z/2."""

    def __init__(self, assignment: Mapping[str, int]):
        for k, v in assignment.items():
            if v not in (0, 1):
                raise WordError(f"parity of {k!r} must be 0 or 1")
        self.assignment = dict(assignment)

    @property
    def alphabet(self) -> list[str]:
        return list(self.assignment)

    def __getitem__(self, name: str) -> int:
        try:
            return self.assignment[name]
        except KeyError:
            raise WordError(f"parity map has no value for {name!r}") from None

    def __contains__(self, name):
        return name in self.assignment

    def __call__(self, w: Word) -> int:
        return parity(w, self)

    def __eq__(self, other):
        return isinstance(other, ParityMap) and self.assignment == other.assignment

    def __repr__(self):
        return f"ParityMap({self.assignment!r})"


def parity(w: Word, p: ParityMap) -> int:
    bit = 0
    for name, _ in w.letters:
        bit ^= p[name]
    return bit


# -- text syntax -------------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z]\d*(?:_[A-Za-z]\d*)*")
_POWER = re.compile(r"\^\s*(-?)\s*(\d+)")


def parse_letters(text: str) -> tuple[Letter, ...]:
    """Parse the word syntax into a (not yet reduced) letter tuple."""
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and (text[pos].isspace() or text[pos] == "*"):
            pos += 1

    def parse_seq(closing: str | None) -> list[Letter]:
        nonlocal pos
        out: list[Letter] = []
        while True:
            skip()
            if pos >= len(text):
                if closing:
                    raise WordSyntaxError(text, pos, "unbalanced parenthesis")
                return out
            ch = text[pos]
            if ch == ")":
                if closing != ")":
                    raise WordSyntaxError(text, pos, "unexpected ')'")
                pos += 1
                return out
            if ch == "(":
                pos += 1
                atom = parse_seq(")")
            elif ch == "1" and not (pos + 1 < len(text) and text[pos + 1].isdigit()):
                pos += 1
                atom = []
            else:
                m = _NAME.match(text, pos)
                if not m:
                    raise WordSyntaxError(text, pos, f"unexpected character {ch!r}")
                pos = m.end()
                atom = [(m.group(0), 1)]
            m = _POWER.match(text, pos)
            if m:
                pos = m.end()
                n = int(m.group(2))
                if m.group(1):
                    atom = [(nm, -e) for nm, e in reversed(atom)]
                atom = atom * n
            elif pos < len(text) and text[pos] == "'":
                pos += 1
                atom = [(nm, -e) for nm, e in reversed(atom)]
            elif pos < len(text) and text[pos] == "^":
                raise WordSyntaxError(text, pos, "malformed exponent")
            out.extend(atom)

    return tuple(parse_seq(None))


def format_word(letters: Iterable[Letter]) -> str:
    parts = [n if e == 1 else f"{n}^-1" for n, e in letters]
    return " ".join(parts) if parts else "1"


def W(text: str) -> Word:
    """Shorthand for :meth:`Word.parse`."""
    return Word.parse(text)
