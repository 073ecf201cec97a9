"""Checkable derivations: sequences of elementary word moves modulo relators.

A script starts from a word and applies steps.  Every step replaces the
current letter sequence by one that represents the same element of the
presented group, except :class:`Rotate`, which conjugates; scripts containing
rotations only prove ``start = 1 <=> end = 1`` and must declare
``claim="relator"``.

ApplyRelator semantics: let ``v`` be the relator (inverted first if
``inverted``, then rotated left by ``rotation``) and split ``v = P Q`` with
``|P| = length``.  Direction ``"->"`` replaces an occurrence of ``P`` at
``position`` by ``Q^-1``; ``"<-"`` replaces ``Q^-1`` by ``P``.  When ``length``
is omitted the longest match at ``position`` is used.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .presentation import Presentation, normalize_label
from .words import Letter, Word, format_word, free_reduce, parse_letters


class DerivationError(ValueError):
    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg if step is None else f"step {step}: {msg}")
        self.step = step


def _inv(letters) -> tuple[Letter, ...]:
    return tuple((n, -e) for n, e in reversed(letters))


@dataclass(frozen=True)
class FreeInsert:
    position: int
    symbol: str
    exp: int = 1


@dataclass(frozen=True)
class FreeCancel:
    position: int


@dataclass(frozen=True)
class ApplyRelator:
    label: str
    position: int
    direction: str = "->"
    rotation: int = 0
    inverted: bool = False
    length: int | None = None


@dataclass(frozen=True)
class SubstituteDef:
    symbol: str
    position: int
    direction: str = "->"
    definition: Word | None = None


@dataclass(frozen=True)
class Rotate:
    offset: int


Step = Union[FreeInsert, FreeCancel, ApplyRelator, SubstituteDef, Rotate]


@dataclass
class DerivationScript:
    start: Word
    end: Word
    steps: list = field(default_factory=list)
    claim: str = "equal"
    uses: list[str] | None = None
    checkpoints: list[tuple[int, Word]] = field(default_factory=list)
    name: str = ""
    description: str = ""
    context: dict = field(default_factory=dict)
    start_letters: tuple[Letter, ...] | None = None

    def initial(self) -> tuple[Letter, ...]:
        return self.start_letters if self.start_letters is not None else self.start.letters


@dataclass
class CheckReport:
    ok: bool
    failed_step: int | None = None
    message: str = ""
    expected: str | None = None
    actual: str | None = None
    final: Word | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        out = f"FAIL at step {self.failed_step}: {self.message}"
        if self.expected is not None:
            out += f"\n  expected: {self.expected}\n  actual:   {self.actual}"
        return out


# -- step semantics ------------------------------------------------------------

def relator_variant(word: Word, rotation: int, inverted: bool) -> tuple[Letter, ...]:
    base = _inv(word.letters) if inverted else word.letters
    if not base:
        return base
    k = rotation % len(base)
    return base[k:] + base[:k]


def _common_prefix(a, b) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def apply_step(p: Presentation, cur: tuple[Letter, ...], step, claim: str = "equal",
               uses: set[str] | None = None) -> tuple[Letter, ...]:
    """Apply one step; raise :class:`DerivationError` (without index) if illegal."""
    if isinstance(step, FreeInsert):
        if not 0 <= step.position <= len(cur):
            raise DerivationError(f"insert position {step.position} out of range")
        if step.symbol not in p.generators:
            raise DerivationError(f"unknown symbol {step.symbol!r}")
        pair = ((step.symbol, step.exp), (step.symbol, -step.exp))
        return cur[:step.position] + pair + cur[step.position:]
    if isinstance(step, FreeCancel):
        i = step.position
        if not 0 <= i < len(cur) - 1:
            raise DerivationError(f"cancel position {i} out of range")
        (a, x), (b, y) = cur[i], cur[i + 1]
        if a != b or x != -y:
            raise DerivationError(f"letters at {i} do not cancel: {format_word(cur[i:i + 2])}")
        return cur[:i] + cur[i + 2:]
    if isinstance(step, ApplyRelator):
        label = step.label
        if label not in p:
            label = normalize_label(label)
        if label not in p:
            raise DerivationError(f"unknown relator label {step.label!r}")
        if uses is not None and label not in uses:
            raise DerivationError(f"relator {label!r} is not among the declared uses")
        v = relator_variant(p.relator(label), step.rotation, step.inverted)
        pos = step.position
        if not 0 <= pos <= len(cur):
            raise DerivationError(f"position {pos} out of range")
        if step.direction == "->":
            m = step.length if step.length is not None else _common_prefix(v, cur[pos:])
            if not 0 <= m <= len(v):
                raise DerivationError(f"bad length {m}")
            old, new = v[:m], _inv(v[m:])
        elif step.direction == "<-":
            vi = _inv(v)
            k = (len(v) - step.length) if step.length is not None else _common_prefix(vi, cur[pos:])
            if not 0 <= k <= len(v):
                raise DerivationError(f"bad length {step.length}")
            old, new = vi[:k], v[:len(v) - k]
        else:
            raise DerivationError(f"bad direction {step.direction!r}")
        if cur[pos:pos + len(old)] != old:
            raise DerivationError(
                f"relator {label} does not match at {pos}: expected {format_word(old)}, "
                f"found {format_word(cur[pos:pos + len(old)])}")
        return cur[:pos] + new + cur[pos + len(old):]
    if isinstance(step, SubstituteDef):
        if step.symbol not in p.definitions:
            raise DerivationError(f"no definition for {step.symbol!r}")
        d = p.definitions[step.symbol]
        if step.definition is not None and step.definition != d:
            raise DerivationError(
                f"stated definition {step.definition} differs from {step.symbol} = {d}")
        pos = step.position
        if step.direction == "->":
            if not 0 <= pos < len(cur) or cur[pos][0] != step.symbol:
                raise DerivationError(f"no {step.symbol!r} at position {pos}")
            image = d.letters if cur[pos][1] == 1 else (~d).letters
            return cur[:pos] + image + cur[pos + 1:]
        if step.direction == "<-":
            n = len(d)
            seg = cur[pos:pos + n]
            if seg == d.letters:
                return cur[:pos] + ((step.symbol, 1),) + cur[pos + n:]
            if seg == (~d).letters:
                return cur[:pos] + ((step.symbol, -1),) + cur[pos + n:]
            raise DerivationError(
                f"definition of {step.symbol} not found at {pos}: found {format_word(seg)}")
        raise DerivationError(f"bad direction {step.direction!r}")
    if isinstance(step, Rotate):
        if claim != "relator":
            raise DerivationError("rotation is only legal in relator-claim scripts")
        if not cur:
            return cur
        k = step.offset % len(cur)
        return cur[k:] + cur[:k]
    raise DerivationError(f"unknown step {step!r}")


def check_derivation(p: Presentation, d: DerivationScript) -> CheckReport:
    if d.claim not in ("equal", "relator"):
        return CheckReport(False, None, f"unknown claim {d.claim!r}")
    uses = None
    if d.uses is not None:
        uses = {lab if lab in p else normalize_label(lab) for lab in d.uses}
        missing = [lab for lab in uses if lab not in p]
        if missing:
            return CheckReport(False, None, f"declared relators missing from presentation: {missing}")
    cur = tuple(d.initial())
    if free_reduce(cur) != d.start.letters:
        return CheckReport(False, None, "start letters do not reduce to the start word")
    stray = {n for n, _ in cur} - set(p.generators)
    if stray:
        return CheckReport(False, None, f"start uses unknown symbols {sorted(stray)}")
    marks: dict[int, list[Word]] = {}
    for after, w in d.checkpoints:
        marks.setdefault(after, []).append(w)
    for w in marks.get(-1, []):
        if Word(cur) != w:
            return CheckReport(False, -1, "checkpoint mismatch", str(w), str(Word(cur)))
    for i, step in enumerate(d.steps):
        try:
            cur = apply_step(p, cur, step, d.claim, uses)
        except DerivationError as exc:
            return CheckReport(False, i, str(exc), actual=format_word(cur))
        for w in marks.get(i, []):
            if Word(cur) != w:
                return CheckReport(False, i, "checkpoint mismatch", str(w), str(Word(cur)))
    final = Word(cur)
    if final != d.end:
        return CheckReport(False, len(d.steps), "final word differs from end",
                           str(d.end), str(final), final)
    return CheckReport(True, final=final)


# -- JSON ------------------------------------------------------------------------

def step_to_json(step) -> dict:
    if isinstance(step, FreeInsert):
        return {"op": "insert", "pos": step.position, "gen": step.symbol, "exp": step.exp}
    if isinstance(step, FreeCancel):
        return {"op": "cancel", "pos": step.position}
    if isinstance(step, ApplyRelator):
        out = {"op": "apply", "label": step.label, "pos": step.position, "dir": step.direction,
               "rot": step.rotation, "inv": step.inverted}
        if step.length is not None:
            out["len"] = step.length
        return out
    if isinstance(step, SubstituteDef):
        out = {"op": "subst", "gen": step.symbol, "pos": step.position, "dir": step.direction}
        if step.definition is not None:
            out["def"] = str(step.definition)
        return out
    if isinstance(step, Rotate):
        return {"op": "rotate", "by": step.offset}
    raise TypeError(step)


def step_from_json(obj: dict):
    op = obj.get("op")
    if op == "insert":
        return FreeInsert(obj["pos"], obj["gen"], obj.get("exp", 1))
    if op == "cancel":
        return FreeCancel(obj["pos"])
    if op == "apply":
        return ApplyRelator(obj["label"], obj["pos"], obj.get("dir", "->"), obj.get("rot", 0),
                            obj.get("inv", False), obj.get("len"))
    if op == "subst":
        d = obj.get("def")
        return SubstituteDef(obj["gen"], obj["pos"], obj.get("dir", "->"),
                             Word.parse(d) if d is not None else None)
    if op == "rotate":
        return Rotate(obj["by"])
    raise DerivationError(f"unknown step op {op!r}")


def script_to_json(d: DerivationScript) -> dict:
    obj = {"name": d.name, "description": d.description, "context": d.context,
           "claim": d.claim, "uses": d.uses, "start": str(d.start), "end": str(d.end)}
    if d.start_letters is not None and d.start_letters != d.start.letters:
        obj["start_letters"] = format_word(d.start_letters)
    obj["checkpoints"] = [{"after": k, "word": str(w)} for k, w in d.checkpoints]
    obj["steps"] = [step_to_json(s) for s in d.steps]
    return obj


def script_from_json(obj: dict) -> DerivationScript:
    raw = obj.get("start_letters")
    return DerivationScript(
        start=Word.parse(obj["start"]), end=Word.parse(obj["end"]),
        steps=[step_from_json(s) for s in obj["steps"]],
        claim=obj.get("claim", "equal"), uses=obj.get("uses"),
        checkpoints=[(c["after"], Word.parse(c["word"])) for c in obj.get("checkpoints", [])],
        name=obj.get("name", ""), description=obj.get("description", ""),
        context=obj.get("context", {}),
        start_letters=parse_letters(raw) if raw else None)


def dumps_script(d: DerivationScript) -> str:
    # one step per line keeps long fixtures diffable
    obj = script_to_json(d)
    steps = obj.pop("steps")
    head = json.dumps(obj, indent=2, ensure_ascii=False)
    body = ",\n".join("    " + json.dumps(s, ensure_ascii=False) for s in steps)
    return head[:-2] + ',\n  "steps": [\n' + body + "\n  ]\n}\n"


def loads_script(text: str) -> DerivationScript:
    return script_from_json(json.loads(text))


# -- authoring ---------------------------------------------------------------------

class ScriptBuilder:
    """Records a script while replaying it; used to transcribe hand derivations.

    ``rewrite(old, new, using)`` locates ``old`` in the current word and finds
    the rotation/inversion of relator ``using`` that licenses the replacement.
    The resulting script is position-addressed and checked independently.
    """

    def __init__(self, p: Presentation, start, claim: str = "equal", uses=None,
                 name: str = "", description: str = "", context: dict | None = None):
        self.p = p
        letters = parse_letters(start) if isinstance(start, str) else tuple(start)
        self.start_letters = letters
        self.cur = letters
        self.steps: list = []
        self.claim = claim
        self.uses = [u if u in p else normalize_label(u) for u in uses] if uses is not None else None
        self.checkpoints: list[tuple[int, Word]] = []
        self.name = name
        self.description = description
        self.context = context or {}

    @staticmethod
    def _letters(x) -> tuple[Letter, ...]:
        if isinstance(x, Word):
            return x.letters
        if isinstance(x, str):
            return parse_letters(x)
        return tuple(x)

    def _do(self, step):
        self.cur = apply_step(self.p, self.cur, step, self.claim,
                              set(self.uses) if self.uses is not None else None)
        self.steps.append(step)

    def find(self, seg, occurrence: int = 0, start: int = 0) -> int:
        seg = self._letters(seg)
        hits = [i for i in range(start, len(self.cur) - len(seg) + 1)
                if self.cur[i:i + len(seg)] == seg]
        if len(hits) <= occurrence:
            raise DerivationError(f"{format_word(seg)} not found in {format_word(self.cur)}")
        return hits[occurrence]

    def reduce(self):
        while True:
            for i in range(len(self.cur) - 1):
                (a, x), (b, y) = self.cur[i], self.cur[i + 1]
                if a == b and x == -y:
                    self._do(FreeCancel(i))
                    break
            else:
                return self

    def _allowed(self) -> list[str]:
        return list(self.uses) if self.uses is not None else self.p.labels

    def rewrite(self, old, new, using: str | None = None, occurrence: int = 0,
                at: int | None = None, reduce: bool = True):
        """Replace ``old`` by ``new``; ``using=None`` tries every allowed relator."""
        old, new = self._letters(old), self._letters(new)
        pos = at if at is not None else self.find(old, occurrence)
        if self.cur[pos:pos + len(old)] != old:
            raise DerivationError(f"{format_word(old)} not at {pos}")
        labels = [using] if using is not None else self._allowed()
        target = old + _inv(new)
        for lab in labels:
            label = lab if lab in self.p else normalize_label(lab)
            r = self.p.relator(label)
            if len(r) != len(target):
                continue
            for inverted in (False, True):
                for rot in range(max(len(r), 1)):
                    if relator_variant(r, rot, inverted) == target:
                        self._do(ApplyRelator(label, pos, "->", rot, inverted, len(old)))
                        return self.reduce() if reduce else self
        raise DerivationError(
            f"{using or 'no allowed relator'} does not license {format_word(old)} -> {format_word(new)}")

    def swap(self, i: int):
        """Commute the letters at ``i`` and ``i + 1``."""
        a, b = self.cur[i], self.cur[i + 1]
        return self.rewrite((a, b), (b, a), at=i, reduce=False)

    def _balanced_moves(self, labels):
        moves = []
        for lab in labels:
            r = self.p.relator(lab if lab in self.p else normalize_label(lab))
            if len(r) % 2 or not r:
                continue
            k = len(r) // 2
            seen = set()
            for inverted in (False, True):
                for rot in range(len(r)):
                    v = relator_variant(r, rot, inverted)
                    if v in seen:
                        continue
                    seen.add(v)
                    moves.append((v[:k], _inv(v[k:]), ApplyRelator(lab, 0, "->", rot, inverted, k)))
        return moves

    def transform(self, start: int, length: int, target, using=None, max_states: int = 200000,
                  cancel: bool = False):
        """Turn ``cur[start:start+length]`` into ``target`` by length-preserving relator moves.

        Breadth-first search over splits ``P -> Q^-1`` with ``|P| = |Q|`` of the
        allowed relators (and free cancellations if ``cancel``); the path found
        is recorded as ordinary steps.
        """
        target = self._letters(target)
        seg = self.cur[start:start + length]
        labels = using if using is not None else self._allowed()
        moves = self._balanced_moves(labels)
        prev = {seg: None}
        queue = deque([seg])
        while queue:
            w = queue.popleft()
            if w == target:
                break
            for old, new, step in moves:
                k = len(old)
                for i in range(len(w) - k + 1):
                    if w[i:i + k] == old:
                        nxt = w[:i] + new + w[i + k:]
                        if nxt not in prev:
                            prev[nxt] = (w, i, step)
                            queue.append(nxt)
            if cancel and len(w) > len(target):
                for i in range(len(w) - 1):
                    if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
                        nxt = w[:i] + w[i + 2:]
                        if nxt not in prev:
                            prev[nxt] = (w, i, None)
                            queue.append(nxt)
            if len(prev) > max_states:
                raise DerivationError("transform search exhausted")
        if target not in prev:
            raise DerivationError(f"{format_word(seg)} cannot be moved to {format_word(target)}")
        path = []
        w = target
        while prev[w] is not None:
            w, i, step = prev[w]
            path.append((i, step))
        for i, step in reversed(path):
            if step is None:
                self._do(FreeCancel(start + i))
            else:
                self._do(ApplyRelator(step.label, start + i, "->", step.rotation, step.inverted, step.length))
        return self

    def transform_to(self, target, using=None, max_states: int = 200000):
        """Whole-word version of :meth:`transform`."""
        return self.transform(0, len(self.cur), target, using, max_states)

    def insert(self, pos: int, symbol: str, exp: int = 1):
        self._do(FreeInsert(pos, symbol, exp))
        return self

    def insert_word(self, pos: int, w):
        """Insert ``w w^-1`` at ``pos`` by free insertions."""
        letters = self._letters(w)
        for k, (n, e) in enumerate(letters):
            self._do(FreeInsert(pos + k, n, e))
        return self

    def expand(self, symbol: str, occurrence: int = 0, reduce: bool = False):
        hits = [i for i, (n, _) in enumerate(self.cur) if n == symbol]
        if len(hits) <= occurrence:
            raise DerivationError(f"no occurrence {occurrence} of {symbol}")
        self._do(SubstituteDef(symbol, hits[occurrence], "->", self.p.definitions[symbol]))
        return self.reduce() if reduce else self

    def expand_all(self, symbol: str):
        while any(n == symbol for n, _ in self.cur):
            self.expand(symbol)
        return self

    def contract(self, symbol: str, occurrence: int = 0, at: int | None = None):
        d = self.p.definitions[symbol]
        if at is None:
            hits = []
            for seg in (d.letters, (~d).letters):
                n = len(seg)
                hits += [i for i in range(len(self.cur) - n + 1) if self.cur[i:i + n] == seg]
            hits.sort()
            if len(hits) <= occurrence:
                raise DerivationError(f"definition of {symbol} not found in {format_word(self.cur)}")
            at = hits[occurrence]
        self._do(SubstituteDef(symbol, at, "<-", d))
        return self

    def rotate(self, k: int):
        self._do(Rotate(k))
        return self

    def delete(self, using: str, at: int | None = None):
        """Remove a full rotated/inverted copy of ``using`` from the current word."""
        label = using if using in self.p else normalize_label(using)
        r = self.p.relator(label)
        n = len(r)
        starts = [at] if at is not None else range(len(self.cur) - n + 1)
        for pos in starts:
            seg = self.cur[pos:pos + n]
            for inverted in (False, True):
                for rot in range(max(n, 1)):
                    if relator_variant(r, rot, inverted) == seg:
                        self._do(ApplyRelator(label, pos, "->", rot, inverted, n))
                        return self.reduce()
        raise DerivationError(f"no copy of {label} in {format_word(self.cur)}")

    def checkpoint(self, w):
        w = w if isinstance(w, Word) else Word(self._letters(w))
        if Word(self.cur) != w:
            raise DerivationError(
                f"checkpoint mismatch:\n  want {w}\n  have {Word(self.cur)}")
        self.checkpoints.append((len(self.steps) - 1, w))
        return self

    @property
    def word(self) -> Word:
        return Word(self.cur)

    def build(self, end=None) -> DerivationScript:
        end_w = Word(self._letters(end)) if end is not None else Word(self.cur)
        return DerivationScript(
            start=Word(self.start_letters), end=end_w, steps=list(self.steps),
            claim=self.claim, uses=self.uses, checkpoints=list(self.checkpoints),
            name=self.name, description=self.description, context=dict(self.context),
            start_letters=self.start_letters)
