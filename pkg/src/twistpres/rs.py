"""Reidemeister-Schreier rewriting for finite-index subgroups.

Only index 2 is constructed (from a parity map); :class:`CosetStructure`
itself accepts any finite permutation action with a Schreier transversal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .presentation import Meta, Presentation, Relator
from .tietze import rename_generators
from .words import Letter, ParityMap, Word, format_word

log = logging.getLogger(__name__)


class RSError(ValueError):
    pass


@dataclass(frozen=True)
class CosetStructure:
    index: int
    transversal: tuple[Word, ...]
    # action[x] = tuple of cosets: coset i * x lies in coset action[x][i]
    action: dict

    def __post_init__(self):
        if self.transversal[0]:
            raise RSError("representative of coset 0 must be the empty word")
        if len(self.transversal) != self.index:
            raise RSError("transversal size differs from the index")
        for x, perm in self.action.items():
            if sorted(perm) != list(range(self.index)):
                raise RSError(f"action of {x!r} is not a permutation")

    def act(self, i: int, x: str, exp: int = 1) -> int:
        perm = self.action[x]
        if exp == 1:
            return perm[i]
        return perm.index(i)

    def coset_of(self, w: Word) -> int:
        i = 0
        for x, e in w:
            i = self.act(i, x, e)
        return i

    def rep_name(self, i: int) -> str:
        return str(self.transversal[i])


def build_coset_structure(p: ParityMap, odd_generator: str) -> CosetStructure:
    if p[odd_generator] != 1:
        raise RSError(f"{odd_generator!r} has parity 0; no index-2 transversal")
    action = {x: (p[x], 1 - p[x]) for x in p.alphabet}
    return CosetStructure(2, (Word(), Word.gen(odd_generator)), action)


@dataclass(frozen=True)
class SubgroupGenerator:
    coset: int
    base: str
    name: str
    coset_rep: Word
    display_name: str = ""


def _gen_name(C: CosetStructure, i: int, x: str) -> str:
    if i == 0:
        return x
    rep = C.transversal[i]
    if C.index == 2 and rep == Word.gen(x):
        return "u"
    tag = "".join(n for n, _ in rep.letters) if len(rep) > 1 else rep[0][0]
    return f"{x}_{tag}"


def _is_tree_edge(C: CosetStructure, i: int, x: str) -> bool:
    """u_i x equals the representative of its coset as a free word."""
    j = C.act(i, x, 1)
    return Word(C.transversal[i].letters + ((x, 1),)) == C.transversal[j]


def subgroup_generators(P: Presentation, C: CosetStructure) -> list[SubgroupGenerator]:
    out = []
    for i in range(C.index):
        for x in P.generators:
            if not _is_tree_edge(C, i, x):
                w = generator_word(C, SubgroupGenerator(i, x, "", C.transversal[i]))
                out.append(SubgroupGenerator(i, x, _gen_name(C, i, x), C.transversal[i], w.pretty()))
    return out


def generator_word(C: CosetStructure, gen: SubgroupGenerator) -> Word:
    """u x (bar(u x))^-1 in the ambient free group."""
    j = C.act(gen.coset, gen.base, 1)
    return C.transversal[gen.coset] * Word.gen(gen.base) * ~C.transversal[j]


def rewrite_relator(r: Word, u: Word, C: CosetStructure, names: dict | None = None) -> Word:
    """tau(u r u^-1), as a reduced word in the subgroup generator names."""
    if C.coset_of(r) != 0:
        raise RSError(f"relator {r} does not lie in the subgroup")
    i = C.transversal.index(u) if u in C.transversal else None
    if i is None:
        raise RSError(f"{u} is not a transversal element")
    out: list[Letter] = []
    for x, e in r:
        if e == 1:
            j = C.act(i, x, 1)
            if not _is_tree_edge(C, i, x):
                out.append((names[(i, x)] if names else _gen_name(C, i, x), 1))
            i = j
        else:
            j = C.act(i, x, -1)
            if not _is_tree_edge(C, j, x):
                out.append((names[(j, x)] if names else _gen_name(C, j, x), -1))
            i = j
    return Word(out)


def reidemeister_schreier(P: Presentation, C: CosetStructure, drop_empty: bool = True,
                          stats: dict | None = None) -> Presentation:
    gens = subgroup_generators(P, C)
    names = {(sg.coset, sg.base): sg.name for sg in gens}
    if len(set(names.values())) != len(names):
        raise RSError("subgroup generator names collide")
    rels = []
    dropped = 0
    for r in P.relators:
        for i, u in enumerate(C.transversal):
            w = rewrite_relator(r.word, u, C, names)
            tag = "1" if not u else format_word(u.letters).replace(" ", "")
            if not w and drop_empty:
                log.info("dropping empty rewrite of %s@%s", r.label, tag)
                dropped += 1
                continue
            rels.append(Relator(f"{r.label}@{tag}", w, (r.label, tag)))
    if stats is not None:
        stats["before_drop"] = len(rels) + dropped
        stats["dropped"] = dropped
    meta = Meta(P.meta.g, P.meta.s, "twist", "raw")
    return Presentation([sg.name for sg in gens], rels, meta)


def back_substitution(P: Presentation, C: CosetStructure) -> dict[str, Word]:
    return {sg.name: generator_word(C, sg) for sg in subgroup_generators(P, C)}


def twist_renaming(g: int) -> dict[str, Word]:
    """Map scheme names onto the twist alphabet: a2_y -> e^-1, b_y -> c, b{i}_y -> B{i}."""
    out = {"a2_y": Word.gen("e", -1)}
    if g >= 4:
        out["b_y"] = Word.gen("c")
    for i in range(g):
        out[f"b{i}_y"] = Word.gen(f"B{i}")
    if g % 2 == 0:
        out["r_y"] = Word.gen("R")
    return out


def rename_to_twist(raw: Presentation) -> Presentation:
    mapping = {k: v for k, v in twist_renaming(raw.meta.g or 0).items() if k in raw.generators}
    return rename_generators(raw, mapping)
