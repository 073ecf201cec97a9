"""Presentations of M(N_{g,s}) and of its twist subgroup T(N_{g,s}).

Relation families are instantiated for every index value satisfying the
printed guard.  Relators are stored as ``lhs * rhs^-1``.

Generator names: ``a1..a{g-1}``, ``y``, ``b``, ``b0..`` (even g >= 6), ``r``
(rho); twist alphabet adds ``e``, ``f``, ``u`` (= y^2), ``c``, ``B0..``
(b-bar) and ``R`` (rho-bar, even g).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .presentation import Meta, Presentation, Relator, normalize_label, relators_equal_cyclically
from .words import ParityMap, Word, substitute

MAX_GENUS = 64

MCG_VARIANTS = {1: ("standard",), 0: ("standard", "uwF")}
TWIST_VARIANTS = ("full", "reduced")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogKey:
    g: int
    s: int = 1
    kind: str = "mcg"
    variant: str | None = None

    def __post_init__(self):
        if self.variant is None:
            object.__setattr__(self, "variant", "standard" if self.kind == "mcg" else "reduced")
        validate(self)

    def __str__(self):
        return f"{self.kind}-g{self.g}-s{self.s}-{self.variant}"


def validate(key: CatalogKey, max_genus: int = MAX_GENUS) -> None:
    g, s, kind, variant = key.g, key.s, key.kind, key.variant
    if not isinstance(g, int) or g < 3:
        raise CatalogError(f"genus must be an integer >= 3, got {g!r}")
    if g > max_genus:
        raise CatalogError(f"genus {g} exceeds the configured bound {max_genus}")
    if s not in (0, 1):
        raise CatalogError(f"s must be 0 or 1, got {s!r}")
    if kind == "mcg":
        if s == 0 and g < 4:
            raise CatalogError("M(N_{g,0}) requires g >= 4")
        if variant not in MCG_VARIANTS[s]:
            raise CatalogError(f"mcg s={s} variant must be one of {MCG_VARIANTS[s]}, got {variant!r}")
    elif kind == "twist":
        if s == 0 and g < 4:
            raise CatalogError("T(N_{g,0}) requires g >= 5 odd or g >= 4 even")
        if s == 0 and g % 2 == 1 and g < 5:
            raise CatalogError("T(N_{g,0}) for odd g requires g >= 5")
        if variant not in TWIST_VARIANTS:
            raise CatalogError(f"twist variant must be one of {TWIST_VARIANTS}, got {variant!r}")
    else:
        raise CatalogError(f"kind must be 'mcg' or 'twist', got {kind!r}")


def valid_keys(genera=range(3, 13)) -> list[CatalogKey]:
    keys = []
    for g in genera:
        for s in (1, 0):
            for kind in ("mcg", "twist"):
                variants = MCG_VARIANTS[s] if kind == "mcg" else TWIST_VARIANTS
                for v in variants:
                    try:
                        keys.append(CatalogKey(g, s, kind, v))
                    except CatalogError:
                        pass
    return keys


# -- word helpers -----------------------------------------------------------------

def w(text: str) -> Word:
    return Word.parse(text)


def a(i: int, exp: int = 1) -> Word:
    return Word.gen(f"a{i}", exp)


def chain(i: int, j: int) -> Word:
    """a_i a_{i+1} ... a_j (empty if j < i)."""
    return Word([(f"a{k}", 1) for k in range(i, j + 1)])


def rel(lhs: Word, rhs: Word = Word()) -> Word:
    return lhs * ~rhs


def L(label: str) -> str:
    return normalize_label(label)


def b_count(g: int) -> int:
    """Number of b_i generators (0 unless g >= 6 even)."""
    return (g - 2) // 2 + 1 if g >= 6 and g % 2 == 0 else 0


def bbar_indices(g: int) -> list[int]:
    if g >= 6 and g % 2 == 0:
        return [(g - 6) // 2, (g - 4) // 2, (g - 2) // 2]
    return []


# -- alphabets -------------------------------------------------------------------------

def mcg_generators(g: int, s: int) -> list[str]:
    gens = [f"a{i}" for i in range(1, g)] + ["y"]
    if g >= 4:
        gens.append("b")
    gens += [f"b{i}" for i in range(b_count(g))]
    if s == 0:
        gens.append("r")
    return gens


def twist_generators(g: int, s: int) -> list[str]:
    gens = [f"a{i}" for i in range(1, g)] + ["e", "f", "u"]
    if g >= 4:
        gens += ["b", "c"]
    gens += [f"b{i}" for i in range(b_count(g))]
    gens += [f"B{i}" for i in bbar_indices(g)]
    if s == 0:
        gens.append("r" if g % 2 else "R")
    return gens


def mcg_parity(g: int, s: int) -> ParityMap:
    """y -> 1, twists -> 0, rho -> 0 for odd g and 1 for even g."""
    p = {x: 0 for x in mcg_generators(g, s)}
    p["y"] = 1
    if s == 0:
        p["r"] = g % 2 == 0 and 1 or 0
    return ParityMap(p)


def twist_parity(g: int, s: int) -> ParityMap:
    return ParityMap({x: 0 for x in twist_generators(g, s)})


# -- M(N_{g,1}) -----------------------------------------------------------------------

def _family_a(g: int) -> list[tuple[str, Word]]:
    out = []
    if g >= 4:
        for i in range(1, g):
            for j in range(i + 2, g):
                out.append((f"A1[i={i},j={j}]", rel(a(i) * a(j), a(j) * a(i))))
    for i in range(1, g - 1):
        out.append((f"A2[i={i}]", rel(a(i) * a(i + 1) * a(i), a(i + 1) * a(i) * a(i + 1))))
    if g >= 4:
        for i in range(1, g):
            if i != 4:
                out.append((f"A3[i={i}]", rel(a(i) * w("b"), w("b") * a(i))))
    if g >= 5:
        out.append(("A4", rel(w("b a4 b"), w("a4 b a4"))))
        out.append(("A5", rel(w("(a2 a3 a4 b)^10"), w("(a1 a2 a3 a4 b)^6"))))
    if g >= 7:
        out.append(("A6", rel(w("(a2 a3 a4 a5 a6 b)^12"), w("(a1 a2 a3 a4 a5 a6 b)^9"))))
    return out


def _family_a_even(g: int) -> list[tuple[str, Word]]:
    if b_count(g) == 0:
        return []
    out = [("A7[i=0]", rel(w("b0"), a(1))), ("A7[i=1]", rel(w("b1"), w("b")))]
    for i in range(1, (g - 4) // 2 + 1):
        head = Word.gen(f"b{i - 1}") * chain(2 * i, 2 * i + 3)
        out.append((f"A8[i={i}]", rel(Word.gen(f"b{i + 1}"),
                                      (head * Word.gen(f"b{i}")) ** 5 * head ** -6)))
    top = Word.gen(f"b{(g - 2) // 2}")
    if g == 6:
        out.append(("A9a", rel(w("b2 b"), w("b b2"))))
    if g >= 8:
        out.append(("A9b", rel(top * a(g - 5), a(g - 5) * top)))
    return out


def _family_b(g: int) -> list[tuple[str, Word]]:
    out = []
    x1 = w("a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1")
    if g >= 4:
        out.append(("B1", rel(w("y") * x1, x1 * w("y"))))
    x2 = w("a2 a1 y^-1 a2^-1 y a1 a2")
    out.append(("B2", rel(w("y") * x2 * w("y"), a(1) * x2 * a(1))))
    if g >= 4:
        for i in range(3, g):
            out.append((f"B3[i={i}]", rel(a(i) * w("y"), w("y") * a(i))))
    out.append(("B4", rel(w("a2 y a2 y^-1"), w("y a2 y^-1 a2"))))
    out.append(("B5", rel(w("y a1"), w("a1^-1 y"))))
    if g >= 4:
        out.append(("B6", rel(w("b y b y^-1"),
                              w("a1 a2 a3 y^-1 a2 y a3^-1 a2^-1 a1^-1 a2^-1 a3^-1 y a2 y^-1 a3 a2"))))
    if g >= 6:
        z = w("a4 a5 a3 a4 a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1")
        out.append(("B7", rel(z * w("b"), w("b") * z)))
    if g >= 5:
        lhs = w("(y a1^-1 a2^-1 a3^-1 a4^-1) b (a4 a3 a2 a1 y^-1)"
                "(a1^-1 a2^-1 a3^-1 a4^-1) b^-1 (a4 a3 a2 a1)")
        rhs = w("(a4^-1 a3^-1 a2^-1) y (a2 a3 a4) (a3^-1 a2^-1 y^-1 a2 a3) (a2^-1 y a2) y^-1")
        out.append(("B8", rel(lhs, rhs)))
    return out


def _family_c(g: int, variant: str) -> list[tuple[str, Word]]:
    A = chain(2, g - 1)
    r, y = w("r"), w("y")
    top = chain(1, g - 1) ** g
    out = [("C1a", rel(top, r)) if g % 2 else ("C1b", rel(top))]
    if variant == "standard":
        out.append((L("C2_1"), rel(r * a(1), a(1) * r)))
        out.append(("C3", rel(r * r)))
        if g % 2:
            out.append(("C4a", rel((~y * A * y * A) ** ((g - 1) // 2))))
        else:
            out.append(("C4b", rel((~y * A * y * A) ** ((g - 2) // 2) * ~y * A, r)))
    else:
        out.append(("C3", rel(r * r)))
        for i in range(1, g):
            out.append((f"C2[i={i}]", rel(r * a(i), a(i) * r)))
        out.append(("C5", rel(y * r, r * ~y)))
        out.append(("C4", rel((y * r * A) ** (g - 1))))
    return out


def _mcg(g: int, s: int, variant: str) -> Presentation:
    rels = _family_a(g) + _family_b(g) + _family_a_even(g)
    if s == 0:
        rels += _family_c(g, variant)
    return Presentation(mcg_generators(g, s), [Relator(lab, word) for lab, word in rels],
                        Meta(g, s, "mcg", variant))


# -- T(N_{g,1}) -------------------------------------------------------------------------

def z_word(k: int) -> Word:
    """The element z_k, 3 <= k <= g-1, over the twist alphabet."""
    head = Word()
    for j in range(k, 3, -1):
        head = head * a(j - 1) * a(j)
    mid = w("e^-1 a3 a1^-1 e^-1")
    tail = Word()
    for j in range(2, k + 1):
        tail = tail * a(j, -1) * a(j - 1, -1)
    return head * mid * tail


def _twist_statement(g: int) -> list[tuple[str, Word]]:
    out = _family_a(g) + _family_a_even(g)
    e, f, u, c, b = w("e"), w("f"), w("u"), w("c"), w("b")
    if g >= 5:
        for j in range(4, g):
            out.append((L(f"Abar1_1[j={j}]"), rel(e * a(j), a(j) * e)))
        for j in range(4, g):
            out.append((L(f"Abar1_2[j={j}]"), rel(f * a(j), a(j) * f)))
    out.append((L("Abar2_1"), rel(w("a1 e a1"), w("e a1 e"))))
    if g >= 4:
        out.append((L("Abar2_2"), rel(w("a3^-1 e a3^-1"), w("e a3^-1 e"))))
    out.append((L("Abar2_3"), rel(w("a1 f a1"), w("f a1 f"))))
    if g in (4, 5):
        out.append((L("Abar3_1"), rel(a(1) * c, c * a(1))))
        out.append((L("Abar3_2"), rel(e * c, c * e)))
    if g in (5, 6):
        out += _abar4_5()
    if g in (7, 8):
        out += _abar6()
    if g >= 4:
        out.append((L("Bbar1"), _bbar1()))
    p = w("a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2")
    q = w("a2 a1 f a1 a2 a1 a2 a1 a2 e a1 a2")
    out.append((L("Bbar2_1"), rel(u, p)))
    out.append((L("Bbar2_2"), rel(p * q)))
    if g >= 4:
        out.append((L("Bbar3"), rel(u * a(3), a(3) * u)))
    out.append((L("Bbar4_1"), rel(e * a(2), a(2) * e)))
    out.append((L("Bbar4_2"), rel(f * a(2), a(2) * f)))
    if g >= 4:
        out.append((L("Bbar6_1"), rel(b * c, w("a1 a2 a3 f^-1 a3^-1 a2^-1 a1^-1 a2^-1 a3^-1 e^-1 a3 a2"))))
    if g in (4, 5):
        out.append(_bbar6_2())
    if g >= 6:
        z = w("a4 a5 a3 a4 a2 a3 a1 a2 e a1 a3^-1 e a4^-1 a3^-1 a5^-1 a4^-1")
        out.append((L("Bbar7_1"), rel(z * c, b * z)))
        p7 = w("a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1")
        q7 = w("a4 a5 a3 a4 a2 a3 a1 a2")
        out.append((L("Bbar7_2"), rel(p7 * b * q7 * u, u * p7 * b * q7)))
    if g >= 5:
        lhs = w("(a1 e a3^-1 a4^-1) c (a4 a3 e^-1 a1^-1) (a1^-1 a2^-1 a3^-1 a4^-1) b^-1 (a4 a3 a2 a1)")
        rhs = w("a4^-1 (a3^-1 a2^-1 e^-1 a3) a4 (a3^-1 e a2 a3) a2^-1 e^-1")
        out.append((L("Bbar8_1"), rel(lhs, rhs)))
    if g in (5, 6):
        out.append(_bbar8_2())
    if b_count(g):
        out += _twist_even(g)
    return out


def _abar4_5():
    return [(L("Abar4"), rel(w("c a4 c"), w("a4 c a4"))),
            (L("Abar5"), rel(w("(e^-1 a3 a4 c)^10"), w("(a1^-1 e^-1 a3 a4 c)^6")))]


def _abar6():
    return [(L("Abar6"), rel(w("(e^-1 a3 a4 a5 a6 c)^12"), w("(a1^-1 e^-1 a3 a4 a5 a6 c)^9")))]


def _bbar1() -> Word:
    return w("a2 a3 a1 a2 e a1 a3^-1 e a2 a3 a1 a2 f a1 a3^-1 f")


def _bbar6_2():
    return (L("Bbar6_2"), rel(w("c u b u^-1"),
                              w("a1^-1 e^-1 a3 a2 a3^-1 e a1 e a3^-1 u a2 u^-1 a3 e^-1")))


def bbar7_3():
    """B̄7₁ conjugated by y^-1, inverted, rewritten with (B̄1): z_5 u^-1 c u = b z_5."""
    z5 = z_word(5)
    return (L("Bbar7_3"), rel(z5 * w("u^-1 c u"), w("b") * z5))


def _bbar8_2():
    lhs = w("(a1^-1 a2^-1 a3^-1 a4^-1) b (a4 a3 a2 a1) (a1 f a3^-1 a4^-1) u^-1 c^-1 u (a4 a3 f^-1 a1^-1)")
    rhs = w("a4^-1 (a3^-1 f a2 a3) a4 (a3^-1 a2^-1 f^-1 a3) f a2")
    return (L("Bbar8_2"), rel(lhs, rhs))


def _twist_even(g: int) -> list[tuple[str, Word]]:
    out = []
    B = lambda i: Word.gen(f"B{i}")  # noqa: E731
    if g == 6:
        out.append((L("Abar7a[i=0]"), rel(B(0), a(1, -1))))
        out.append((L("Abar7a[i=1]"), rel(B(1), w("c"))))
    if g == 8:
        out.append((L("Abar7b"), rel(B(1), w("c"))))
    z = z_word(g - 1)
    for i in ((g - 6) // 2, (g - 4) // 2):
        if i >= 2:
            out.append((L(f"Abar7c[i={i}]"), rel(B(i), z * Word.gen(f"b{i}") * ~z)))
    if g == 6:
        head = B(0) * w("e^-1 a3 a4 a5")
        out.append((L("Abar8a"), rel(B(2), (head * B(1)) ** 5 * head ** -6)))
    if g >= 8:
        lo, mid, top = bbar_indices(g)
        head = B(lo) * chain(g - 4, g - 1)
        out.append((L("Abar8b"), rel(B(top), (head * B(mid)) ** 5 * head ** -6)))
    if g == 6:
        out.append((L("Abar9a"), rel(B(2) * w("c"), w("c") * B(2))))
    if g >= 8:
        top = (g - 2) // 2
        out.append((L("Abar9b"), rel(B(top) * a(g - 5), a(g - 5) * B(top))))
    return out


def d_relations(g: int) -> list[tuple[str, Word]]:
    """(D2)-(D9): conjugation by z_k mimics conjugation by y left of mu_k."""
    out = []
    for k in range(3, g):
        z = z_word(k)
        conj = lambda x: z * x * ~z  # noqa: E731
        out.append((f"D2[k={k}]", rel(conj(a(1)), a(1, -1))))
        if k >= 4:
            out.append((f"D3[k={k}]", rel(conj(a(2)), w("e^-1"))))
        for i in range(3, k - 1):
            out.append((f"D4[k={k},i={i}]", rel(conj(a(i)), a(i))))
        if k >= 5:
            out.append((f"D5[k={k}]", rel(conj(w("b")), w("c"))))
        out.append((f"D6[k={k}]", rel(conj(w("u")), w("u"))))
        if k >= 4:
            out.append((f"D7[k={k}]", rel(conj(w("f")), a(2, -1))))
            out.append((f"D8[k={k}]", rel(conj(w("e")), w("u a2^-1 u^-1"))))
        if k >= 5:
            out.append((f"D9[k={k}]", rel(conj(w("c")), w("u b u^-1"))))
    return out


def proof_relations(g: int) -> list[tuple[str, Word]]:
    """Relations met along the derivation that turn out to follow from the rest.

    Includes the wider range of B̄3 (i = 1, 4, ..) and the relations dropped
    as redundant at the end.  The wide Ā3₁ range lives in :func:`abar3_wide`
    and is not part of any catalog variant.
    """
    u, e, f, c = w("u"), w("e"), w("f"), w("c")
    out = [("D1", rel(f, ~u * e * u))]
    if g >= 4:
        out.append((L("Abar2_4"), rel(w("a3^-1 f a3^-1"), w("f a3^-1 f"))))
        out.append((L("Bbar1_2"), rel(u * w("f^-1 a3 a1^-1 f^-1 a2^-1 a1^-1 a3^-1 a2^-1"),
                                     w("a2 a3 a1 a2 e a1 a3^-1 e") * u)))
    for i in [1] + list(range(4, g)):
        out.append((L(f"Bbar3[i={i}]"), rel(u * a(i), a(i) * u)))
    if g >= 6:
        out.append((L("Abar3_2"), rel(e * c, c * e)))
    if g >= 7:
        out += _abar4_5()
    if g >= 9:
        out += _abar6()
    if g >= 6:
        out.append(_bbar6_2())
    if g >= 6:
        out.append(bbar7_3())
    if g >= 7:
        out.append(_bbar8_2())
    out += d_relations(g)
    return out


def abar3_wide(g: int) -> list[tuple[str, Word]]:
    """Proof-form Ā3₁: a_i c = c a_i for every i != 2, 4 (g >= 4)."""
    c = w("c")
    return [(L(f"Abar3_1[i={i}]"), rel(a(i) * c, c * a(i)))
            for i in range(1, g) if g >= 4 and i not in (2, 4)]


def abar7_proof(g: int) -> list[tuple[str, Word]]:
    """Proof-form Ā7, b̄_0 = a_1^-1 and b̄_1 = c, for every even g >= 6."""
    if g % 2 or g < 6:
        return []
    return [(L("Abar7[i=0]"), rel(w("B0"), a(1, -1))), (L("Abar7[i=1]"), rel(w("B1"), w("c")))]


# -- T(N_{g,0}) additions -------------------------------------------------------------

SUPERFLUOUS_CLOSED = {
    1: [L("Abar1_2"), L("Bbar2_2"), L("Bbar4_2")],  # g odd
    0: [L("Abar1_1"), L("Abar2_1"), L("Abar2_2")],  # g even
}


def _is_superfluous_closed(g: int, label: str) -> bool:
    heads = SUPERFLUOUS_CLOSED[g % 2]
    return any(label == h or label.startswith(h + "[") for h in heads)


def _twist_closed(g: int) -> list[tuple[str, Word]]:
    r, u = w("r"), w("u")
    top = chain(1, g - 1) ** g
    A = chain(2, g - 1)
    if g % 2:
        out = [("C1a", rel(top, r)),
               (L("Cbar1a"), rel((w("a1^-1 e^-1") * chain(3, g - 1)) ** g, u * r))]
        out += [(f"C2[i={i}]", rel(a(i) * r, r * a(i))) for i in range(1, g)]
        out += [(L("Cbar2"), rel(r * w("e"), w("f") * r)),
                (L("Cbar5"), rel(r * u, ~u * r)),
                ("C3", rel(r * r)),
                (L("Cbar4a"), rel((A * w("e^-1") * chain(3, g - 1)) ** ((g - 1) // 2)))]
        return out
    R = w("R")
    out = [("C1b", rel(top)),
           (L("Cbar2_1"), rel(R * a(1), a(1, -1) * R))]
    out += [(L(f"Cbar2_2[i={i}]"), rel(R * a(i), a(i) * R)) for i in range(3, g)]
    out += [(L("Cbar2_3"), rel(R * a(2), w("e^-1") * R)),
            (L("Cbar5"), rel(R * u, ~u * R)),
            (L("Cbar3"), rel(R * R)),
            (L("Cbar4"), rel((R * A) ** (g - 1)))]
    return out


def _twist(g: int, s: int, variant: str) -> Presentation:
    rels = _twist_statement(g)
    if variant == "full":
        rels += proof_relations(g)
    if s == 0:
        rels += _twist_closed(g)
        if variant == "reduced":
            rels = [(lab, word) for lab, word in rels if not _is_superfluous_closed(g, lab)]
    return Presentation(twist_generators(g, s), [Relator(lab, word) for lab, word in rels],
                        Meta(g, s, "twist", variant))


@lru_cache(maxsize=None)
def _build_cached(g: int, s: int, kind: str, variant: str) -> Presentation:
    if kind == "mcg":
        return _mcg(g, s, variant)
    return _twist(g, s, variant)


def build(key: CatalogKey | None = None, **kw) -> Presentation:
    if key is None:
        key = CatalogKey(**kw)
    validate(key)
    return _build_cached(key.g, key.s, key.kind, key.variant)


# -- derived words and embedding ------------------------------------------------------

def b_words(g: int) -> dict[int, Word]:
    """b_i expanded over a_j and b via the (A8) recursion."""
    if b_count(g) == 0:
        return {}
    out = {0: a(1), 1: w("b")}
    for i in range(1, (g - 4) // 2 + 1):
        head = out[i - 1] * chain(2 * i, 2 * i + 3)
        out[i + 1] = (head * out[i]) ** 5 * head ** -6
    return out


def rho_word(g: int) -> Word:
    if g % 2:
        return chain(1, g - 1) ** g
    A, y = chain(2, g - 1), w("y")
    return (~y * A * y * A) ** ((g - 2) // 2) * ~y * A


@dataclass(frozen=True)
class DerivedWordTable:
    g: int
    s: int
    ambient: dict   # name -> Word over the mcg alphabet (b_i expanded)
    twist: dict     # name -> Word over the twist alphabet (z_k, primed twists)

    def __getitem__(self, name: str) -> Word:
        if name in self.ambient:
            return self.ambient[name]
        return self.twist[name]

    def __contains__(self, name):
        return name in self.ambient or name in self.twist


def derived_words(g: int, s: int = 1) -> DerivedWordTable:
    if g < 3:
        raise CatalogError("derived words need g >= 3")
    amb: dict[str, Word] = {"e": w("y a2^-1 y^-1"), "f": w("y^-1 a2^-1 y"), "u": w("y y")}
    if g >= 4:
        amb["c"] = w("y b y^-1")
    for i, bw in b_words(g).items():
        amb[f"b{i}"] = bw
        amb[f"B{i}"] = w("y") * bw * w("y^-1")
    if s == 0:
        amb["r"] = rho_word(g)
        if g % 2 == 0:
            amb["R"] = w("y") * amb["r"]
    tw: dict[str, Word] = {}
    for k in range(3, g):
        tw[f"z{k}"] = z_word(k)
    if g >= 4:
        tw["e'"] = w("(a3 a2)^-1 e^-1 (a3 a2)")
        tw["f'"] = w("(a1 a2 a3) f^-1 (a1 a2 a3)^-1")
        tw["b'"] = w("(a4 a3 a2 a1)^-1 b^-1 (a4 a3 a2 a1)") if g >= 5 else None
    if g >= 5:
        tw["a'"] = w("(a3^-1 e a2 a3)^-1 a4 (a3^-1 e a2 a3)")
        tw["c'"] = w("(a1 e a3^-1 a4^-1) c (a1 e a3^-1 a4^-1)^-1")
    tw = {k: v for k, v in tw.items() if v is not None}
    emb = embedding_map(g, s)
    for k, v in list(tw.items()):
        amb[k] = substitute(v, emb)
    return DerivedWordTable(g, s, amb, tw)


def derived_word(g: int, name: str, s: int = 1) -> Word:
    table = derived_words(g, s)
    if name not in table:
        raise CatalogError(f"{name!r} is not defined for g={g}, s={s}")
    return table[name]


def embedding_map(g: int, s: int = 1) -> dict[str, Word]:
    """Twist-alphabet generator -> word in the mcg alphabet."""
    out = {f"a{i}": a(i) for i in range(1, g)}
    out.update(e=w("y a2^-1 y^-1"), f=w("y^-1 a2^-1 y"), u=w("y y"))
    if g >= 4:
        out.update(b=w("b"), c=w("y b y^-1"))
    for i in range(b_count(g)):
        out[f"b{i}"] = Word.gen(f"b{i}")
        out[f"B{i}"] = w(f"y b{i} y^-1")
    if s == 0:
        if g % 2:
            out["r"] = w("r")
        else:
            out["R"] = w("y r")
    return out


def symmetric_forms() -> dict[str, Word]:
    """Symmetric rewritings of (B̄1) and (B̄2₁) over the twist alphabet."""
    return {
        L("Bbar1") + "-sym": w("(a2 e a1) a3^-1 (a2 e a1) a3 (a2 f a1) a3^-1 (a2 f a1) a3"),
        L("Bbar2_1") + "-sym": rel(w("u"), w("(a2 e a1)^2 (a2 f a1)^2")),
    }


# -- working context for derivations ------------------------------------------------------

@lru_cache(maxsize=None)
def working(g: int, s: int = 1) -> Presentation:
    """Ambient presentation extended by the twist generators and their definitions.

    Relators: the mcg relators (both closed variants when s = 0) followed by
    every twist relation of the full variant.  Used as the context in which the
    proof chains are checked.
    """
    if s == 0 and g < 4:
        raise CatalogError("closed working context needs g >= 4")
    gens = mcg_generators(g, s)
    defs = {}
    for x in twist_generators(g, s):
        if x not in gens:
            gens.append(x)
    for i in range(b_count(g)):
        if f"B{i}" not in gens:
            gens.append(f"B{i}")
    emb = embedding_map(g, s)
    for x in gens:
        if x in emb and emb[x] != Word.gen(x):
            defs[x] = emb[x]
    rels: dict[str, Word] = {}
    sources = [_mcg(g, s, "standard")]
    if s == 0:
        sources.append(_mcg(g, s, "uwF"))
    twist_rels = _twist_statement(g) + proof_relations(g)
    if s == 0:
        twist_rels += _twist_closed(g)
    items = [(r.label, r.word) for p in sources for r in p.relators] + twist_rels
    for lab, word in items:
        if lab in rels:
            if not relators_equal_cyclically(rels[lab], word):
                raise CatalogError(f"conflicting relators for label {lab}")
            continue
        rels[lab] = word
    return Presentation(gens, [Relator(k, v) for k, v in rels.items()],
                        Meta(g, s, "mcg", "working"), defs)


def presentation_for(context: dict) -> Presentation:
    """Rebuild the presentation a derivation fixture was written against."""
    try:
        g, s = int(context["g"]), int(context.get("s", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"derivation context needs integer 'g' and 's': {context!r}") from exc
    variant = context.get("variant")
    if variant == "working":
        return working(g, s)
    return build(CatalogKey(g, s, context.get("kind", "twist"), variant))
