import pytest

from twistpres import catalog
from twistpres.catalog import CatalogError, CatalogKey, L
from twistpres.words import W, Word

KEYS = catalog.valid_keys(range(3, 13))


def test_generator_lists():
    assert catalog.build(CatalogKey(4, 1, "twist")).generators == ("a1", "a2", "a3", "e", "f", "u", "b", "c")
    t6 = catalog.build(CatalogKey(6, 1, "twist")).generators
    assert t6 == ("a1", "a2", "a3", "a4", "a5", "e", "f", "u", "b", "c",
                  "b0", "b1", "b2", "B0", "B1", "B2")
    assert catalog.build(CatalogKey(3, 1, "twist")).generators == ("a1", "a2", "e", "f", "u")
    assert catalog.build(CatalogKey(5, 0, "mcg")).generators[-2:] == ("b", "r")
    assert catalog.build(CatalogKey(6, 0, "twist")).generators[-1] == "R"
    assert catalog.build(CatalogKey(7, 0, "twist")).generators[-1] == "r"


def test_labels_unique_everywhere():
    for key in KEYS:
        P = catalog.build(key)
        assert len(set(P.labels)) == len(P.labels), key


@pytest.mark.parametrize("args", [
    (2, 1, "mcg"), (3, 0, "mcg"), (3, 0, "twist"), (5, 2, "mcg"), (4, 1, "braid"),
    (4, 1, "mcg", "full"), (4, 1, "twist", "standard"), (4, 1, "mcg", "uwF"), (65, 1, "mcg"),
])
def test_validation_errors(args):
    with pytest.raises(CatalogError):
        CatalogKey(*args)


def test_closed_twist_bounds():
    CatalogKey(4, 0, "twist")
    CatalogKey(5, 0, "twist")
    with pytest.raises(CatalogError, match="g >= 5 odd"):
        CatalogKey(3, 0, "twist")


# counted by hand from the family guards, g = 6, s = 1
G6_TWIST = {
    "A1": 6, "A2": 4, "A3": 4, "A4": 1, "A5": 1, "A7": 2, "A8": 1, "A9a": 1,
    "Abar1_1": 2, "Abar1_2": 2, "Abar2_1": 1, "Abar2_2": 1, "Abar2_3": 1, "Abar4": 1, "Abar5": 1,
    "Bbar1": 1, "Bbar2_1": 1, "Bbar2_2": 1, "Bbar3": 1, "Bbar4_1": 1, "Bbar4_2": 1, "Bbar6_1": 1,
    "Bbar7_1": 1, "Bbar7_2": 1, "Bbar8_1": 1, "Bbar8_2": 1,
    "Abar7a": 2, "Abar8a": 1, "Abar9a": 1,
}


def _family(label):
    return label.split("[")[0]


def test_independent_relator_count_g6():
    P = catalog.build(CatalogKey(6, 1, "twist"))
    seen = {}
    for lab in P.labels:
        seen[_family(lab)] = seen.get(_family(lab), 0) + 1
    assert seen == {L(k): v for k, v in G6_TWIST.items()}
    assert len(P.relators) == 44


def _mcg_count(g):
    n = (g - 2) * (g - 3) // 2 + (g - 2)          # A1, A2
    if g >= 4:
        n += g - 2 if g >= 5 else 3                  # A3 skips i = 4
        n += 1 + 1 + (g - 3) + 1 + 1 + 1             # B1, B2, B3, B4, B5, B6
    else:
        n += 3                                        # B2, B4, B5
    n += (g >= 5) * 3 + (g >= 7) + (g >= 6)          # A4, A5, B8; A6; B7
    if g >= 6 and g % 2 == 0:
        n += 2 + (g - 4) // 2 + 1                     # A7, A8, A9
    return n


@pytest.mark.parametrize("g", range(3, 13))
def test_mcg_count_formula(g):
    assert len(catalog.build(CatalogKey(g, 1, "mcg")).relators) == _mcg_count(g)


def test_mcg_relators_have_even_parity():
    for key in KEYS:
        if key.kind != "mcg":
            continue
        p = catalog.mcg_parity(key.g, key.s)
        for r in catalog.build(key).relators:
            assert p(r.word) == 0, (key, r.label)


def test_embedding_lands_in_even_words():
    for g in range(3, 13):
        for s in (0, 1) if g >= 4 else (1,):
            p = catalog.mcg_parity(g, s)
            emb = catalog.embedding_map(g, s)
            assert set(emb) >= set(catalog.twist_generators(g, s))
            for x, word in emb.items():
                assert p(word) == 0, (g, s, x)


def test_z_words():
    assert catalog.z_word(3) == W("e^-1 a3 a1^-1 e^-1 a2^-1 a1^-1 a3^-1 a2^-1")
    assert catalog.z_word(4) == W("a3 a4 e^-1 a3 a1^-1 e^-1 a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1")
    for k in range(3, 12):
        z = catalog.z_word(k)
        assert len(z) == 4 * (k - 3) + 8
        assert z.exponent_sum("e") == -2


def test_derived_words():
    t = catalog.derived_words(6)
    assert t["e"] == W("y a2^-1 y^-1") and t["f"] == W("y^-1 a2^-1 y") and t["u"] == W("y^2")
    assert t["c"] == W("y b y^-1") and t["B1"] == W("y b y^-1")
    # A8 at i = 1 with b0 = a1, b1 = b
    assert t["b2"] == W("(a1 a2 a3 a4 a5 b)^5 (a1 a2 a3 a4 a5)^-6")
    assert t.twist["z3"] == catalog.z_word(3)
    assert catalog.rho_word(5) == W("(a1 a2 a3 a4)^5")
    assert catalog.derived_words(6, 0)["R"] == W("y") * catalog.rho_word(6)
    with pytest.raises(CatalogError):
        catalog.derived_word(4, "b2")


def test_full_extends_reduced():
    for key in KEYS:
        if key.kind == "twist" and key.variant == "full":
            full = catalog.build(key)
            red = catalog.build(CatalogKey(key.g, key.s, "twist", "reduced"))
            assert set(red.labels) <= set(full.labels), key
            assert full.generators == red.generators


def test_proof_only_forms_kept_out_of_variants():
    for g in range(4, 13):
        wide = {lab for lab, _ in catalog.abar3_wide(g)}
        for v in ("full", "reduced"):
            assert not wide & set(catalog.build(CatalogKey(g, 1, "twist", v)).labels)
    assert [lab for lab, _ in catalog.abar7_proof(8)] == [L("Abar7[i=0]"), L("Abar7[i=1]")]
    assert catalog.abar7_proof(7) == []


def test_build_is_cached_and_keyword_form():
    assert catalog.build(CatalogKey(5, 1, "twist")) is catalog.build(g=5, s=1, kind="twist")
    assert catalog.build(g=5).meta.kind == "mcg"
    assert isinstance(catalog.build(g=4).relator("B5"), Word)
