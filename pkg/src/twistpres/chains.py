"""Transcriptions of the hand derivations used to build the twist presentations.

Each function replays one chain with :class:`ScriptBuilder` and returns the
recorded :class:`DerivationScript`.  The intermediate lines of the written
derivation are kept as checkpoints.  ``all_chains`` lists the shipped set.
"""

from __future__ import annotations

from . import catalog
from .catalog import CatalogKey, chain, z_word
from .derivation import DerivationError, DerivationScript, ScriptBuilder
from .presentation import Presentation
from .presentation import normalize_label as L
from .words import W, Word

# the bracket of z_k and its (B̄1)-partner
X = W("e^-1 a3 a1^-1 e^-1 a2^-1 a1^-1 a3^-1 a2^-1")
F = W("a2 a3 a1 a2 f a1 a3^-1 f")
P_WORD = W("a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2")
Q_WORD = W("a2 a1 f a1 a2 a1 a2 a1 a2 e a1 a2")


def _full(g: int) -> Presentation:
    return catalog.build(CatalogKey(g, 1, "twist", "full"))


def _ctx(g, s, variant):
    if variant == "working":
        return {"g": g, "s": s, "kind": "mcg", "variant": "working"}
    return {"g": g, "s": s, "kind": "twist", "variant": variant}


def _match_rotation(B: ScriptBuilder, lhs, rhs):
    """Rotate the current relator to lhs rhs^-1 and record it as a checkpoint."""
    target = W(lhs) * ~W(rhs) if isinstance(lhs, str) else lhs * ~rhs
    n = len(B.cur)
    for k in range(n):
        if B.cur[k:] + B.cur[:k] == target.letters:
            if k:
                B.rotate(k)
            B.checkpoint(target)
            return
    raise DerivationError(f"no rotation of {B.word} equals {target}")


def _head(k: int) -> Word:
    h = Word()
    for j in range(k, 3, -1):
        h = h * W(f"a{j - 1} a{j}")
    return h


# -- T(N_{g,1}) -----------------------------------------------------------------------

def bbar2_1(g: int = 4) -> DerivationScript:
    """(B2), rewritten in the twist generators, turns into (B̄2₁)."""
    P = catalog.working(g, 1)
    B = ScriptBuilder(P, P.relator("B2").letters, claim="relator",
                      uses=["B2", "B5", "A2[i=1]", L("Abar2_1"), L("Bbar4_1"), L("Bbar4_2")],
                      name="bbar2_1", context=_ctx(g, 1, "working"),
                      description="(B2) rewritten as y^2 = a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2")
    B.contract("f")
    B.contract("f")
    B.insert_word(2, "y^-1")
    B.contract("e")
    B.insert_word(3, "y^-1")
    B.rewrite("y a1 y^-1", "a1^-1", "B5")
    B.expand("f", 0, reduce=True)
    B.insert_word(5, "y^-1")
    B.rewrite("y a1 y^-1", "a1^-1", "B5")
    B.insert_word(6, "y^-1")
    B.contract("e")
    B.contract("u")
    B.checkpoint(W("e^-1 a1^-1 a2^-1 a1^-1 e^-1 u") * ~W("a1 a2 a1 f a1 a2 a1"))
    B.rotate(5)
    B.rewrite("a1^-1 a2^-1 a1^-1", "a2^-1 a1^-1 a2^-1")
    B.checkpoint(W("u") * ~W("e a1 a2 a1 e a1 a2 a1 f a2 a1 a2"))
    B.rewrite("a1^-1 a2^-1 a1^-1", "a2^-1 a1^-1 a2^-1", occurrence=1)
    B.checkpoint(W("u") * ~W("e a2 a1 a2 e a1 a2 a1 f a2 a1 a2"))
    B.rewrite("a2^-1 f^-1", "f^-1 a2^-1")
    B.rewrite("e^-1 a2^-1", "a2^-1 e^-1")
    B.rewrite("a2^-1 e^-1", "e^-1 a2^-1", occurrence=1)
    B.checkpoint(W("u") * ~W("a2 e a1 e a2 a1 a2 a1 a2 f a1 a2"))
    B.rewrite("e^-1 a1^-1 e^-1", "a1^-1 e^-1 a1^-1")
    return B.build(end=P.relator(L("Bbar2_1")))


def bbar1_2_reduction(g: int = 4) -> DerivationScript:
    """(B̄1₂) follows from the braid/commutation relations, (B̄1) and (B̄2)."""
    P = _full(g)
    uses = ["A1[i=1,j=3]", "A2[i=1]", "A2[i=2]"] + [L(x) for x in (
        "Abar2_1", "Abar2_2", "Abar2_3", "Abar2_4", "Bbar1", "Bbar2_1", "Bbar2_2", "Bbar4_1", "Bbar4_2")]
    B = ScriptBuilder(P, P.relator(L("Bbar1_2")).letters, claim="relator", uses=uses,
                      name="bbar1_2_reduction", context=_ctx(g, 1, "full"),
                      description="certificate removing (B̄1₂)")
    E = W("a2 a3 a1 a2 e a1 a3^-1 e")
    G = ~F
    B.rewrite("u", P_WORD, L("Bbar2_1"))
    B.rewrite("u^-1", ~P_WORD, L("Bbar2_1"))
    B.rewrite(~P_WORD, Q_WORD, L("Bbar2_2"))
    _match_rotation(B, P_WORD * G, E * ~Q_WORD)
    B.transform(6, 6, "a1 a2 f a1 a2 f")
    B.reduce()
    B.swap(B.find("a1^-1 a3^-1 a1"))
    B.reduce()
    B.swap(B.find("a1^-1 a3^-1 a2^-1"))
    B.rotate(len(B.cur) - 2)
    B.reduce()
    B.transform(B.find("a1 a2 a1 a2 a1 a2"), 6, "a2 a1 a2 a1 a2 a1")
    B.rewrite("a1 e a1", "e a1 e")
    B.rewrite("e a2", "a2 e")
    _match_rotation(B, "e a1 a2 a1 a1 a2 f a1 a2 a3 a1^-1 f^-1 a2^-1 a3^-1",
                    "a3 a2 e a1 a3^-1 a2^-1 a1^-1 e^-1 a2^-1 a1^-1 a2^-1 a1^-1 a2^-1 f^-1")
    B.transform(3, 11, "a1 f a1 a2 f a3 f^-1 a2^-1 a3^-1", cancel=True)
    B.rotate(4)
    B.swap(8)
    B.transform(len(B.cur) - 4, 4, "a2 e a1 a2")
    B.transform(B.find("a1 a2 e a1 a2 a3 a1^-1 e^-1 a2^-1 a3^-1"), 10,
                "e a1 a2 e a3 e^-1 a2^-1 a3^-1", cancel=True)
    _match_rotation(B, "e a1 a2 f a1 a2 f a3 f^-1 a2^-1 a3^-1 a2",
                    "a2^-1 a3 a2 e a3^-1 e^-1 a2^-1 a1^-1 e^-1 a2^-1 a1^-1 f^-1")
    B.transform(B.find("f a3 f^-1 a2^-1 a3^-1 a2 f"), 7, "a3 f^-1 a2^-1 a3^-1 f", cancel=True)
    B.rotate(1)
    B.transform(B.find("e a3 e^-1 a2^-1 a3^-1 a2 e"), 7, "a3 e^-1 a2^-1 a3^-1 e", cancel=True)
    _match_rotation(B, "a1 a2 f a1 a2 a3 f^-1 a2^-1 a3^-1 f",
                    "e^-1 a3 a2 e a3^-1 a2^-1 a1^-1 e^-1 a2^-1 a1^-1")
    B.transform(B.find("a2 a3 f^-1 a2^-1 a3^-1 f"), 6, "a3^-1 a2 f a3", cancel=True)
    B.transform(B.find("a2 a3 e^-1 a2^-1 a3^-1 e"), 6, "a3^-1 a2 e a3", cancel=True)
    _match_rotation(B, "a1 a2 f a1 a3^-1 a2 f a3", "a3^-1 e^-1 a2^-1 a3 a1^-1 e^-1 a2^-1 a1^-1")
    B.rewrite("a2 f", "f a2", occurrence=1)
    B.rewrite("a2 e", "e a2", occurrence=1)
    _match_rotation(B, F, X)
    B.delete(L("Bbar1"))
    return B.build(end="1")


def d1_superfluous(g: int = 4) -> DerivationScript:
    """(D1) f = u^-1 e u is a consequence of the statement relations."""
    P = _full(g)
    uses = ["A2[i=1]"] + [L(x) for x in ("Abar2_1", "Abar2_3", "Bbar2_1", "Bbar4_1", "Bbar4_2")]
    B = ScriptBuilder(P, P.relator("D1").letters, claim="relator", uses=uses,
                      name="d1_superfluous", context=_ctx(g, 1, "full"),
                      description="certificate removing (D1)")
    p = P_WORD
    B.rewrite("u^-1", ~p, L("Bbar2_1"))
    B.rewrite("u", p, L("Bbar2_1"))
    B.checkpoint(W("f") * ~(~p * W("e") * p))
    B.rotate(13)
    B.transform(10, 4, "a1 f a1 a2")
    B.transform(5, 6, "a1 a2 a1 a2 a1 a2")
    B.rewrite("a1 e a1", "e a1 e")
    B.rewrite("a2 e", "e a2")
    return B.build(end="1")


def d6(g: int = 7, k: int = 5) -> DerivationScript:
    """z_k y^2 = y^2 z_k."""
    if not 3 <= k <= g - 1:
        raise ValueError("need 3 <= k <= g-1")
    P = _full(g)
    H, z, u = _head(k), z_word(k), W("u")
    uses = [L("Bbar1"), L("Bbar1_2"), L("Bbar3")] + [L(f"Bbar3[i={i}]") for i in range(4, g)]
    B = ScriptBuilder(P, z * u, claim="equal", uses=uses, name=f"d6_k{k}",
                      context=_ctx(g, 1, "full"), description=f"(D6) for k = {k}")
    n = len(B.cur)
    for t in range(2 * (k - 3)):
        B.swap(n - 2 - t)
    B.checkpoint(H * X * u * ~H)
    B.rewrite(X * u, u * F, L("Bbar1_2"), at=len(H))
    B.rewrite(F, X, L("Bbar1"), at=len(H) + 1)
    B.checkpoint(H * u * X * ~H)
    for t in range(len(H)):
        B.swap(len(H) - 1 - t)
    return B.build(end=u * z)


def d7(g: int = 7, k: int = 5) -> DerivationScript:
    """z_k f = a2^-1 z_k for k >= 4."""
    if not 4 <= k <= g - 1:
        raise ValueError("need 4 <= k <= g-1")
    P = _full(g)
    H, z = _head(k), z_word(k)
    uses = [lab for lab in P.labels if lab.startswith(("A1[", "A2[", L("Abar1_2")))]
    uses += [L("Abar2_4"), L("Bbar1")]
    B = ScriptBuilder(P, z * W("f"), claim="equal", uses=uses, name=f"d7_k{k}",
                      context=_ctx(g, 1, "full"), description=f"(D7) for k = {k}")
    B.rewrite(X, F, L("Bbar1"), at=len(H))
    n = len(B.cur)
    for t in range(2 * (k - 4)):
        B.swap(n - 2 - t)
    outer = Word(H.letters[:-2])
    rest = Word((~H).letters[2:])
    B.checkpoint(outer * W("a3 a4") * F * W("a4^-1 a3^-1 f") * rest)
    s0 = len(outer)

    def rw(old, new):
        B.rewrite(old, new, at=B.find(old, start=s0), reduce=False)

    # a3 a4 F a4^-1 a3^-1 f -> a2^-1 a3 a4 F a4^-1 a3^-1
    rw("f a4^-1", "a4^-1 f")
    rw("f a3^-1 f", "a3^-1 f a3^-1")
    rw("a3^-1 a4^-1 a3^-1", "a4^-1 a3^-1 a4^-1")
    for left in ("a1", "f", "a2", "a1"):
        rw(f"{left} a4^-1", f"a4^-1 {left}")
    rw("a4 a2", "a2 a4")
    rw("a4 a3 a4^-1", "a3^-1 a4 a3")
    rw("a3 a2 a3^-1", "a2^-1 a3 a2")
    rw("a2 a4", "a4 a2")
    rw("a4^-1 f", "f a4^-1")
    B.checkpoint(outer * W("a2^-1 a3 a4") * F * W("a4^-1 a3^-1") * rest)
    for t in range(len(outer)):
        B.swap(len(outer) - 1 - t)
    B.rewrite(F, X, L("Bbar1"), at=len(H) + 1)
    return B.build(end=W("a2^-1") * z)


def bbar7_3(g: int = 6) -> DerivationScript:
    """The y^-1-conjugate of (B̄7₁), rewritten with (B̄1) into (B̄7₃)."""
    P = _full(g)
    H5 = W("a4 a5 a3 a4")
    Z = H5 * F * ~H5
    B = ScriptBuilder(P, Z * W("u^-1 c u") * ~Z * W("b^-1"), claim="relator", uses=[L("Bbar1")],
                      name="bbar7_3", context=_ctx(g, 1, "full"),
                      description="(B̄7₃) from the conjugated form of (B̄7₁)")
    B.rewrite(F, X, at=len(H5))
    B.rewrite(~F, ~X, at=B.find(~F))
    return B.build(end=P.relator(L("Bbar7_3")))


# -- T(N_{g,0}) -----------------------------------------------------------------------

def _slide_y_inverse(B: ScriptBuilder, g: int):
    """y a2 y^-1 a3 .. a_{g-1}  ->  y a2 a3 .. a_{g-1} y^-1, for every occurrence."""
    i = 0
    while True:
        try:
            i = B.find("y^-1 a3", start=i)
        except DerivationError:
            return
        for j in range(g - 3):
            B.swap(i + j)


def c5(g: int = 5) -> DerivationScript:
    """(C5) gives (C̄5); for even g through rho-bar = y rho."""
    P = catalog.working(g, 0)
    B = ScriptBuilder(P, P.relator(L("Cbar5")), claim="relator", uses=["C5"],
                      name=f"c5_g{g}", context=_ctx(g, 0, "working"),
                      description="(C̄5) from (C5)")
    if g % 2 == 0:
        B.expand("R")
        B.expand("R")
    B.expand("u")
    B.expand("u")
    B.reduce()
    if B.cur[0] == ("r", 1):
        B.rotate(len(B.cur) - 1)
    B.rewrite("y r y", "r", "C5")
    B.delete("C5")
    return B.build(end="1")


def c4a(g: int = 5) -> DerivationScript:
    """Odd g: (C̄4a) is the y-conjugate of (C4a)."""
    if g % 2 == 0:
        raise ValueError("(C̄4a) is an odd-genus relation")
    P = catalog.working(g, 0)
    B = ScriptBuilder(P, P.relator(L("Cbar4a")), claim="relator",
                      uses=["C4a"] + [f"B3[i={i}]" for i in range(3, g)],
                      name=f"c4a_g{g}", context=_ctx(g, 0, "working"),
                      description="(C̄4a) from (C4a)")
    B.expand_all("e")
    _slide_y_inverse(B, g)
    B.rotate(2 * (g - 2) + 1)
    B.delete("C4a")
    return B.build(end="1")


def c4(g: int = 4) -> DerivationScript:
    """Even g: (C4) in terms of rho-bar is (C̄4)."""
    if g % 2:
        raise ValueError("(C̄4) is an even-genus relation")
    P = catalog.working(g, 0)
    B = ScriptBuilder(P, P.relator(L("Cbar4")), claim="relator", uses=["C4"],
                      name=f"c4_g{g}", context=_ctx(g, 0, "working"),
                      description="(C̄4) from (C4)")
    B.expand_all("R")
    B.delete("C4")
    return B.build(end="1")


def c4b(g: int = 6) -> DerivationScript:
    """Even g: the y-conjugate of (C4b) in the twist generators."""
    if g % 2:
        raise ValueError("(C4b) is an even-genus relation")
    P = catalog.working(g, 0)
    A = chain(2, g - 1)
    start = (A * W("e^-1") * chain(3, g - 1)) ** ((g - 2) // 2) * A * W("R^-1")
    B = ScriptBuilder(P, start, claim="relator",
                      uses=["C4b"] + [f"B3[i={i}]" for i in range(3, g)],
                      name=f"c4b_g{g}", context=_ctx(g, 0, "working"),
                      description="(C4b) conjugated by y, in terms of e and rho-bar")
    B.expand_all("e")
    B.expand("R")
    _slide_y_inverse(B, g)
    B.rotate(len(B.cur) - 1)
    B.delete("C4b")
    return B.build(end="1")


def all_chains() -> list[DerivationScript]:
    out = [bbar2_1(4), bbar1_2_reduction(4), d1_superfluous(4)]
    out += [d6(7, k) for k in range(3, 7)]
    out += [d7(7, k) for k in range(4, 7)]
    out.append(bbar7_3(6))
    out += [c5(5), c5(4), c4a(5), c4a(7), c4(4), c4b(4), c4b(6)]
    return out
