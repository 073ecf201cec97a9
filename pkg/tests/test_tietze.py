import pytest

from twistpres import catalog, chains, rs
from twistpres.abelian import abelian_invariants
from twistpres.catalog import CatalogKey, L
from twistpres.derivation import ApplyRelator, DerivationScript, FreeInsert
from twistpres.presentation import Meta, Presentation, Relator, relators_equal_cyclically
from twistpres.tietze import (TietzeError, add_generator, add_relator, remove_generator, remove_relator,
                              rename_generators)
from twistpres.words import W, Word


def _raw_twist(g):
    P = catalog.build(CatalogKey(g, 1, "mcg"))
    C = rs.build_coset_structure(catalog.mcg_parity(g, 1), "y")
    return rs.rename_to_twist(rs.reidemeister_schreier(P, C))


@pytest.mark.parametrize("g", [4, 5, 7])
def test_adding_f_gives_d1(g):
    T = _raw_twist(g)
    Q = add_generator(T, "f", W("u^-1 e u"))
    assert Q.generators[-1] == "f" and Q.definitions["f"] == W("u^-1 e u")
    full = catalog.build(CatalogKey(g, 1, "twist", "full"))
    assert relators_equal_cyclically(Q.relators[-1].word, full.relator("D1"))
    assert abelian_invariants(Q) == abelian_invariants(T)


def test_eliminate_generator_small():
    P = Presentation(["x", "z"], [Relator("def", W("z x^-2"))], Meta())
    Q = remove_generator(P, "z", W("x x"))
    assert Q.generators == ("x",) and not Q.relators
    assert str(abelian_invariants(Q)) == "Z"
    # eliminating a generator that still occurs elsewhere substitutes it away
    P = Presentation(["x", "z"], [Relator("def", W("z x^-2")), Relator("t", W("z^3"))], Meta())
    Q = remove_generator(P, "z", W("x x"))
    assert Q.relator("t") == W("x^6")
    assert abelian_invariants(Q) == abelian_invariants(P)


def test_remove_relators_with_certificates():
    full = catalog.build(CatalogKey(4, 1, "twist", "full"))
    before = abelian_invariants(full)
    Q = remove_relator(full, "Bbar1_2", chains.bbar1_2_reduction())
    assert L("Bbar1_2") not in Q
    Q = remove_relator(Q, "D1", chains.d1_superfluous())
    assert "D1" not in Q and len(Q.relators) == len(full.relators) - 2
    assert abelian_invariants(Q) == before


def test_add_relator_and_rename_preserve_invariants():
    P = catalog.build(CatalogKey(4, 1, "twist"))
    inv = abelian_invariants(P)
    cert = DerivationScript(W("a1 e a1 e^-1 a1^-1 e^-1"), Word(),
                            [ApplyRelator(L("Abar2_1"), 0, "->", 0, False, 6)], claim="relator")
    Q = add_relator(P, "copy", W("a1 e a1 e^-1 a1^-1 e^-1"), cert)
    assert abelian_invariants(Q) == inv
    R = rename_generators(Q, {"e": W("E^-1")})
    assert "E" in R.generators and "e" not in R.generators
    assert abelian_invariants(R) == inv
    S = add_generator(R, "h", W("a1 a2"))
    assert abelian_invariants(S) == inv
    assert abelian_invariants(remove_generator(S, "h", W("a1 a2"))) == inv


def test_errors():
    P = catalog.build(CatalogKey(4, 1, "twist", "full"))
    with pytest.raises(TietzeError, match="stale"):
        remove_relator(P, "Bbar9_9", chains.d1_superfluous())
    with pytest.raises(TietzeError, match="unknown symbols"):
        add_generator(P, "h", W("a1 q"))
    with pytest.raises(TietzeError, match="own definition"):
        remove_generator(P, "e", W("e a1"))
    with pytest.raises(TietzeError, match="already present"):
        add_generator(P, "e", W("a1"))
    with pytest.raises(TietzeError, match="not a single letter"):
        rename_generators(P, {"e": W("a1 a2")})
    with pytest.raises(TietzeError, match="not injective"):
        rename_generators(P, {"e": W("f")})
    # a certificate that fails part way through names the step
    bad = DerivationScript(W("a1 e a1 e^-1 a1^-1 e^-1"), Word(),
                           [FreeInsert(0, "a2"), ApplyRelator(L("Abar2_1"), 0, "->", 0, False, 6)],
                           claim="relator")
    with pytest.raises(TietzeError) as err:
        add_relator(P, "copy", W("a1 e a1 e^-1 a1^-1 e^-1"), bad)
    assert err.value.step == 1 and "step 1" in str(err.value)
    # D1 cannot certify itself once it is gone
    Q = remove_relator(P, "D1", chains.d1_superfluous())
    with pytest.raises(TietzeError):
        remove_relator(Q, "D1", chains.d1_superfluous())


def test_certificate_must_match_relator():
    P = catalog.build(CatalogKey(4, 1, "twist", "full"))
    with pytest.raises(TietzeError, match="connect"):
        remove_relator(P, "Bbar1_2", chains.d1_superfluous())
