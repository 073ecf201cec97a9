"""Tietze moves.  Relator moves require a checked derivation certificate."""

from __future__ import annotations

from dataclasses import replace

from .derivation import DerivationScript, check_derivation
from .presentation import Presentation, PresentationError, Relator, normalize_label, relators_equal_cyclically
from .words import Word, substitute


class TietzeError(PresentationError):
    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg if step is None else f"{msg} (step {step})")
        self.step = step


def definition_relator(s: str, definition: Word) -> Word:
    """Relator form of ``s = definition``."""
    return Word.gen(s) * ~definition


def add_generator(p: Presentation, s: str, definition: Word, label: str | None = None) -> Presentation:
    if s in p.generators:
        raise TietzeError(f"generator {s!r} already present")
    stray = definition.generators() - set(p.generators)
    if stray:
        raise TietzeError(f"definition of {s!r} uses unknown symbols {sorted(stray)}")
    label = label or f"def:{s}"
    if label in p:
        raise TietzeError(f"label {label!r} already in use")
    defs = dict(p.definitions)
    defs[s] = definition
    return replace(p, generators=p.generators + (s,),
                   relators=p.relators + (Relator(label, definition_relator(s, definition)),),
                   definitions=defs)


def remove_generator(p: Presentation, s: str, definition: Word) -> Presentation:
    if s not in p.generators:
        raise TietzeError(f"unknown generator {s!r}")
    if s in definition.generators():
        raise TietzeError(f"{s!r} occurs in its own definition")
    target = definition_relator(s, definition)
    hit = next((r for r in p.relators if relators_equal_cyclically(r.word, target)), None)
    if hit is None:
        raise TietzeError(f"no relator of the form {s} = {definition}")
    image = {x: Word.gen(x) for x in p.generators}
    image[s] = definition
    rels = []
    for r in p.relators:
        if r is hit:
            continue
        rels.append(replace(r, word=substitute(r.word, image)))
    defs = {k: substitute(v, image) for k, v in p.definitions.items() if k != s}
    return replace(p, generators=tuple(x for x in p.generators if x != s),
                   relators=tuple(rels), definitions=defs)


def _is_certificate_for(cert: DerivationScript, w: Word) -> bool:
    ends = (cert.start, cert.end)
    return (relators_equal_cyclically(ends[0], w) and not ends[1]) or \
        (relators_equal_cyclically(ends[1], w) and not ends[0])


def add_relator(p: Presentation, label: str, w: Word, certificate: DerivationScript) -> Presentation:
    if label in p:
        raise TietzeError(f"label {label!r} already in use")
    if not _is_certificate_for(certificate, w):
        raise TietzeError("certificate must connect the relator word with the empty word")
    rep = check_derivation(p, certificate)
    if not rep.ok:
        raise TietzeError(f"certificate rejected: {rep.message}", rep.failed_step)
    return p.with_relators([Relator(label, w)])


def remove_relator(p: Presentation, label: str, certificate: DerivationScript) -> Presentation:
    key = label if label in p else normalize_label(label)
    if key not in p:
        raise TietzeError(f"stale label {label!r}")
    w = p.relator(key)
    if not _is_certificate_for(certificate, w):
        raise TietzeError("certificate must connect the relator word with the empty word")
    rest = p.without([key])
    rep = check_derivation(rest, certificate)
    if not rep.ok:
        raise TietzeError(f"certificate rejected: {rep.message}", rep.failed_step)
    return rest


def rename_generators(p: Presentation, mapping: dict[str, Word]) -> Presentation:
    """Apply an invertible renaming ``old -> new^{+-1}`` to every relator.

    Each image must be a single letter; the new names must be distinct.
    """
    new_names = []
    image = {}
    for x in p.generators:
        w = mapping.get(x, Word.gen(x))
        if len(w) != 1:
            raise TietzeError(f"image of {x!r} is not a single letter: {w}")
        image[x] = w
        new_names.append(w[0][0])
    if len(set(new_names)) != len(new_names):
        raise TietzeError("renaming is not injective")
    rels = tuple(replace(r, word=substitute(r.word, image)) for r in p.relators)
    defs = {image[k][0][0]: substitute(v, image) for k, v in p.definitions.items()}
    return replace(p, generators=tuple(new_names), relators=rels, definitions=defs)
