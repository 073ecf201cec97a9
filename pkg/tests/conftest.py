"""Shared oracles.  None of these import the code paths they are compared with."""

import json
import re
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def naive_reduce(letters):
    """Repeated left-to-right scan; quadratic, obviously correct."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
                del w[i:i + 2]
                changed = True
                break
    return w


_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(\^-1)?")


def letters_of(text):
    """Reads only the flat format written by format_word (no powers, no brackets)."""
    text = text.strip()
    if text in ("", "1"):
        return []
    out = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        assert m, tok
        out.append((m.group(1), -1 if m.group(2) else 1))
    return out


def _inverse(w):
    return [(n, -e) for n, e in reversed(w)]


def naive_replay(script: dict, relators: dict, generators, definitions):
    """Replay a derivation script from its JSON form.

    relators/definitions map names to flat letter lists.  Every intermediate
    word is rebuilt from scratch; relator moves are validated semantically by
    checking that old * new^-1 is a cyclic rotation of r or r^-1.
    Returns (ok, index_of_first_bad_step_or_None).
    """
    claim = script.get("claim", "equal")
    uses = script.get("uses")
    cur = letters_of(script.get("start_letters") or script["start"])
    checkpoints = {}
    for c in script.get("checkpoints", []):
        checkpoints.setdefault(c["after"], []).append(naive_reduce(letters_of(c["word"])))
    for i, st in enumerate(script["steps"]):
        op = st["op"]
        w = list(cur)
        if op == "insert":
            if st["gen"] not in generators or not 0 <= st["pos"] <= len(w):
                return False, i
            e = st.get("exp", 1)
            w[st["pos"]:st["pos"]] = [(st["gen"], e), (st["gen"], -e)]
        elif op == "cancel":
            p = st["pos"]
            if not (0 <= p < len(w) - 1 and w[p][0] == w[p + 1][0] and w[p][1] == -w[p + 1][1]):
                return False, i
            del w[p:p + 2]
        elif op == "rotate":
            if claim != "relator":
                return False, i
            if w:
                k = st["by"] % len(w)
                w = w[k:] + w[:k]
        elif op == "subst":
            d = definitions.get(st["gen"])
            if d is None:
                return False, i
            p = st["pos"]
            if st.get("dir", "->") == "->":
                if not (0 <= p < len(w)) or w[p][0] != st["gen"]:
                    return False, i
                w[p:p + 1] = d if w[p][1] == 1 else _inverse(d)
            else:
                seg = w[p:p + len(d)]
                if seg == d:
                    w[p:p + len(d)] = [(st["gen"], 1)]
                elif seg == _inverse(d):
                    w[p:p + len(d)] = [(st["gen"], -1)]
                else:
                    return False, i
        elif op == "apply":
            label = st["label"]
            if label not in relators or (uses is not None and label not in uses):
                return False, i
            r = relators[label]
            base = _inverse(r) if st.get("inv") else list(r)
            k = st.get("rot", 0) % len(base) if base else 0
            v = base[k:] + base[:k]
            n = st["len"]
            if not 0 <= n <= len(v):
                return False, i
            if st.get("dir", "->") == "->":
                old, new = v[:n], _inverse(v[n:])
            else:
                vi = _inverse(v)
                old, new = vi[:len(v) - n], v[:n]
            p = st["pos"]
            if not 0 <= p <= len(w) or w[p:p + len(old)] != old:
                return False, i
            # semantic re-check: old new^-1 must be a cyclic conjugate of r^(+-1)
            probe = old + _inverse(new)
            forms = [r[j:] + r[:j] for j in range(len(r))]
            ri = _inverse(r)
            forms += [ri[j:] + ri[:j] for j in range(len(ri))]
            if probe not in forms:
                return False, i
            w[p:p + len(old)] = new
        else:
            return False, i
        cur = w
        for want in checkpoints.get(i, []):
            if naive_reduce(cur) != want:
                return False, i
    if naive_reduce(cur) != naive_reduce(letters_of(script["end"])):
        return False, len(script["steps"])
    return True, None


def presentation_tables(P):
    rel = {r.label: list(r.word.letters) for r in P.relators}
    defs = {k: list(v.letters) for k, v in P.definitions.items()}
    return rel, list(P.generators), defs


@pytest.fixture(scope="session")
def derivation_files():
    files = sorted((FIXTURES / "derivations").glob("*.json"))
    assert files, "fixtures/derivations is empty; run scripts/make_fixtures.py"
    return files


@pytest.fixture(scope="session")
def catalog_files():
    return sorted((FIXTURES / "catalog").glob("*.json"))


def load_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))
