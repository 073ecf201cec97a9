"""Finitely presented groups: labeled relators, cyclic comparison, export."""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .words import Word, WordError, parse_letters

KINDS = ("mcg", "twist")
VARIANTS = ("standard", "uwF", "full", "reduced", "raw", "working", "custom")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Meta:
    g: int | None = None
    s: int | None = None
    kind: str = "mcg"
    variant: str = "custom"

    def to_json(self) -> dict:
        return {"g": self.g, "s": self.s, "kind": self.kind, "variant": self.variant}


@dataclass(frozen=True)
class Relator:
    label: str
    word: Word
    # (source label, transversal element) for Reidemeister-Schreier output
    provenance: tuple[str, str] | None = None


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = ()
    meta: Meta = field(default_factory=Meta)
    # generator -> defining word over the other generators
    definitions: Mapping[str, Word] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(r if isinstance(r, Relator) else Relator(*r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        object.__setattr__(self, "definitions", dict(self.definitions))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        alphabet = set(self.generators)
        seen = set()
        for r in rels:
            if r.label in seen:
                raise PresentationError(f"duplicate relator label {r.label!r}")
            seen.add(r.label)
            stray = r.word.generators() - alphabet
            if stray:
                raise PresentationError(
                    f"relator {r.label!r} uses symbols outside the alphabet: {sorted(stray)}")
        for name, w in self.definitions.items():
            if name not in alphabet:
                raise PresentationError(f"definition for unknown generator {name!r}")
            if name in w.generators():
                raise PresentationError(f"definition of {name!r} is recursive")

    # -- access ---------------------------------------------------------------

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.relators]

    def __contains__(self, label: str) -> bool:
        return any(r.label == label for r in self.relators)

    def relator(self, label: str) -> Word:
        for r in self.relators:
            if r.label == label:
                return r.word
        raise KeyError(label)

    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def without(self, labels: Iterable[str]) -> "Presentation":
        drop = set(labels)
        return replace(self, relators=tuple(r for r in self.relators if r.label not in drop))

    def with_relators(self, extra: Iterable[Relator | tuple[str, Word]]) -> "Presentation":
        return replace(self, relators=self.relators + tuple(
            r if isinstance(r, Relator) else Relator(*r) for r in extra))

    def __str__(self):
        rels = ", ".join(f"{r.label}: {r.word}" for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


# -- labels ------------------------------------------------------------------------

_MACRON = "̄"
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_UNSUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def normalize_label(label: str) -> str:
    """Map ASCII spellings such as ``Bbar1_2`` onto the canonical ``B̄1₂``.

    Precomposed letters (U+0100 for A with macron) are decomposed first, so
    the canonical form always carries a combining macron.
    """
    label = unicodedata.normalize("NFD", label.strip().strip("()"))
    label = re.sub(r"([A-Z])bar", lambda m: m.group(1) + _MACRON, label)
    head, bracket, rest = label.partition("[")
    head = re.sub(r"_(\d+)", lambda m: m.group(1).translate(_SUB), head)
    return head + bracket + rest


def ascii_label(label: str) -> str:
    head, bracket, rest = label.partition("[")
    head = re.sub(r"([A-Z])" + _MACRON, r"\1bar", head)
    head = re.sub(r"([₀-₉]+)", lambda m: "_" + m.group(1).translate(_UNSUB), head)
    return head + bracket + rest


# -- cyclic comparison -----------------------------------------------------------------

def relators_equal_cyclically(u: Word, v: Word) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    target = u.letters
    for base in (v.letters, (~v).letters):
        n = len(base)
        for k in range(n):
            if base[k:] + base[:k] == target:
                return True
    return False


# -- serialization ------------------------------------------------------------------

def to_json_obj(p: Presentation) -> dict:
    obj: dict = {"meta": p.meta.to_json(), "generators": list(p.generators)}
    rels = []
    for r in p.relators:
        item: dict = {"label": r.label, "word": str(r.word)}
        if r.provenance is not None:
            item["provenance"] = {"source": r.provenance[0], "coset": r.provenance[1]}
        rels.append(item)
    obj["relators"] = rels
    if p.definitions:
        obj["definitions"] = {k: str(v) for k, v in p.definitions.items()}
    return obj


def _gap(p: Presentation) -> str:
    index = {g: i + 1 for i, g in enumerate(p.generators)}

    def word(w: Word) -> str:
        if not w:
            return "One(F)"
        return "*".join(f"F.{index[n]}" + ("" if e == 1 else "^-1") for n, e in w)

    names = ", ".join(f'"{g}"' for g in p.generators)
    lines = [f"# {p.meta.kind} g={p.meta.g} s={p.meta.s} variant={p.meta.variant}",
             f"F := FreeGroup({names});" if p.generators else "F := FreeGroup(0);"]
    rels = [f"  {word(r.word)}" for r in p.relators]
    body = ",\n".join(rels)
    lines.append(f"G := F / [\n{body}\n];" if rels else "G := F / [ ];")
    return "\n".join(lines) + "\n"


def _magma(p: Presentation) -> str:
    index = {g: i + 1 for i, g in enumerate(p.generators)}

    def word(w: Word) -> str:
        if not w:
            return "Id(F)"
        return "*".join(f"F.{index[n]}" + ("" if e == 1 else "^-1") for n, e in w)

    names = ",".join(p.generators)
    lines = [f"// {p.meta.kind} g={p.meta.g} s={p.meta.s} variant={p.meta.variant}",
             f"F<{names}> := FreeGroup({len(p.generators)});"]
    rels = [f"  {word(r.word)}" for r in p.relators] or ["  Id(F)"]
    lines.append("G := quo< F |\n" + ",\n".join(rels) + "\n>;")
    return "\n".join(lines) + "\n"


def serialize(p: Presentation, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_json_obj(p), indent=2, ensure_ascii=False) + "\n"
    if fmt == "gap":
        return _gap(p)
    if fmt == "magma":
        return _magma(p)
    raise PresentationError(f"unknown format {fmt!r}")


def _word_field(text, where: str) -> Word:
    if not isinstance(text, str):
        raise PresentationError(f"{where}: expected a word string")
    try:
        return Word(parse_letters(text))
    except WordError as exc:
        raise PresentationError(f"{where}: {exc}") from None


def from_json_obj(obj) -> Presentation:
    if not isinstance(obj, dict):
        raise PresentationError("$: expected an object")
    for key in ("meta", "generators", "relators"):
        if key not in obj:
            raise PresentationError(f"$: missing key {key!r}")
    meta = obj["meta"]
    if not isinstance(meta, dict):
        raise PresentationError("$.meta: expected an object")
    kind = meta.get("kind", "mcg")
    if kind not in KINDS:
        raise PresentationError(f"$.meta.kind: {kind!r} not in {KINDS}")
    s = meta.get("s")
    if s not in (0, 1, None):
        raise PresentationError("$.meta.s: must be 0 or 1")
    g = meta.get("g")
    if g is not None and not isinstance(g, int):
        raise PresentationError("$.meta.g: must be an integer")
    gens = obj["generators"]
    if not isinstance(gens, list) or not all(isinstance(x, str) for x in gens):
        raise PresentationError("$.generators: expected a list of strings")
    rels = []
    if not isinstance(obj["relators"], list):
        raise PresentationError("$.relators: expected a list")
    for i, item in enumerate(obj["relators"]):
        where = f"$.relators[{i}]"
        if not isinstance(item, dict) or "label" not in item or "word" not in item:
            raise PresentationError(f"{where}: expected {{label, word}}")
        prov = item.get("provenance")
        if prov is not None:
            prov = (prov["source"], prov["coset"])
        rels.append(Relator(item["label"], _word_field(item["word"], where + ".word"), prov))
    defs = {k: _word_field(v, f"$.definitions.{k}")
            for k, v in obj.get("definitions", {}).items()}
    try:
        return Presentation(tuple(gens), tuple(rels),
                            Meta(g, s, kind, meta.get("variant", "custom")), defs)
    except PresentationError as exc:
        raise PresentationError(f"$: {exc}") from None


def parse(text: str, fmt: str = "json") -> Presentation:
    if fmt != "json":
        raise PresentationError(f"only json can be parsed, not {fmt!r}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_json_obj(obj)


def load(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(p: Presentation, path, fmt: str = "json") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(p, fmt))
