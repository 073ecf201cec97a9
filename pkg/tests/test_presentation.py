import json
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import load_json
from twistpres import catalog
from twistpres.catalog import CatalogKey
from twistpres.presentation import (Meta, Presentation, PresentationError, Relator, ascii_label,
                                    normalize_label, parse, relators_equal_cyclically, serialize)
from twistpres.words import W, Word

nonempty = st.lists(st.tuples(st.sampled_from(["a1", "a2", "y"]), st.sampled_from([1, -1])),
                    min_size=1, max_size=12).map(Word).filter(bool)


def test_cyclic_equality_examples():
    assert relators_equal_cyclically(W("a1 a2 a1 a2^-1 a1^-1 a2^-1"), W("a2 a1 a2 a1^-1 a2^-1 a1^-1"))
    assert not relators_equal_cyclically(W("a1"), W("a2"))
    r = catalog.build(CatalogKey(5, 1, "twist")).relator(normalize_label("Abar5"))
    rot = Word(r.letters[3:] + r.letters[:3])
    assert relators_equal_cyclically(r, rot)
    assert relators_equal_cyclically(r, ~rot)


@given(nonempty, nonempty, nonempty)
def test_cyclic_equality_is_equivalence(u, v, w):
    assert relators_equal_cyclically(u, u)
    assert relators_equal_cyclically(u, v) == relators_equal_cyclically(v, u)
    if relators_equal_cyclically(u, v) and relators_equal_cyclically(v, w):
        assert relators_equal_cyclically(u, w)


def test_labels():
    assert normalize_label("Bbar1_2") == "B̄1₂"
    assert normalize_label("Abar3_1[i=1]") == "A\u03043\u2081[i=1]"
    assert normalize_label("\u01003\u2081[i=1]") == normalize_label("Abar3_1[i=1]")  # precomposed A-macron
    assert normalize_label("B̄7₁") == "B̄7₁"
    assert normalize_label(ascii_label("C̄4a")) == "C̄4a"


def test_invariants_enforced():
    with pytest.raises(PresentationError):
        Presentation(["x"], [Relator("r", W("x z"))], Meta())
    with pytest.raises(PresentationError):
        Presentation(["x"], [Relator("r", W("x")), Relator("r", W("x x"))], Meta())


def test_json_roundtrip_on_corpus(catalog_files):
    assert len(catalog_files) == len(catalog.valid_keys(range(3, 13)))
    for path in catalog_files:
        text = path.read_text(encoding="utf-8")
        assert serialize(parse(text)) == text, path.name


def test_generated_matches_frozen_fixtures(catalog_files):
    for path in catalog_files:
        key = parse(path.read_text(encoding="utf-8")).meta
        P = catalog.build(CatalogKey(key.g, key.s, key.kind, key.variant))
        assert serialize(P) == path.read_text(encoding="utf-8"), path.name


def test_json_schema_of_t41(catalog_files):
    obj = load_json([p for p in catalog_files if p.name == "twist-g4-s1-reduced.json"][0])
    assert obj["generators"] == ["a1", "a2", "a3", "e", "f", "u", "b", "c"]
    assert obj["meta"] == {"g": 4, "s": 1, "kind": "twist", "variant": "reduced"}
    assert all(set(r) >= {"label", "word"} for r in obj["relators"])


def test_parse_errors_carry_location():
    with pytest.raises(PresentationError, match="line 1"):
        parse('{"meta": ')
    bad = {"meta": {"g": 3, "s": 1, "kind": "mcg", "variant": "x"}, "generators": ["a1"],
           "relators": [{"label": "r", "word": "a1 ("}]}
    with pytest.raises(PresentationError, match=r"relators\[0\]"):
        parse(json.dumps(bad))


GAP_WORD = r"(?:One\(F\)|F\.\d+(?:\^-1)?(?:\*F\.\d+(?:\^-1)?)*)"
GAP_PROGRAM = re.compile(
    r'F := FreeGroup\((?:0|"[A-Za-z0-9_]+"(?:, "[A-Za-z0-9_]+")*)\);'
    r"G := F / \[(?:" + GAP_WORD + r"(?:," + GAP_WORD + r")*| )\];")
MAGMA_PROGRAM = re.compile(
    r"F<[A-Za-z0-9_,]*> := FreeGroup\(\d+\);"
    r"G := quo< F \|" + GAP_WORD.replace("One", "Id") + r"(?:," + GAP_WORD.replace("One", "Id") + r")*>;")


def _strip(text, comment):
    lines = [ln for ln in text.splitlines() if not ln.startswith(comment)]
    return re.sub(r"\n\s*", "", "\n".join(lines)).replace("  ", "")


def test_gap_and_magma_export():
    P = Presentation(["x"], [Relator("r", W("x x x"))], Meta())
    gap = serialize(P, "gap")
    assert 'F := FreeGroup("x");' in gap and "F.1*F.1*F.1" in gap
    for key in [None] + catalog.valid_keys(range(3, 7)):
        Q = P if key is None else catalog.build(key)
        assert GAP_PROGRAM.fullmatch(_strip(serialize(Q, "gap"), "#")), key
        assert MAGMA_PROGRAM.fullmatch(_strip(serialize(Q, "magma"), "//")), key
    empty = Presentation([], [], Meta())
    assert GAP_PROGRAM.fullmatch(_strip(serialize(empty, "gap"), "#"))


def test_without_and_with_relators():
    P = catalog.build(CatalogKey(4, 1, "twist"))
    Q = P.without(["A2[i=1]"])
    assert "A2[i=1]" not in Q and len(Q.relators) == len(P.relators) - 1
    R = Q.with_relators([("A2[i=1]", P.relator("A2[i=1]"))])
    assert set(R.labels) == set(P.labels)
