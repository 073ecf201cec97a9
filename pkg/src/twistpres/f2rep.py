"""Action on H_1(N; Z/2) in the basis mu_1..mu_g of one-sided circles.

The intersection form on this basis is the identity form, so a Dehn twist about
a two-sided circle with class v acts as the transvection x -> x + <x,v> v.
Crosscap slides are sent to the identity (see README for the justification).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .presentation import Presentation
from .words import Word


class RepError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


class F2Matrix:
    """Square matrix over GF(2); row i is an int whose bit j is entry (i, j)."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int]):
        self.n = n
        self.rows = tuple(rows)
        if len(self.rows) != n:
            raise RepError(f"expected {n} rows, got {len(self.rows)}")
        mask = (1 << n) - 1
        if any(r & ~mask for r in self.rows):
            raise RepError("row wider than the dimension")

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, (1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries) -> "F2Matrix":
        n = len(entries)
        return cls(n, (sum((int(v) & 1) << j for j, v in enumerate(row)) for row in entries))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __eq__(self, other):
        return isinstance(other, F2Matrix) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.n != other.n:
            raise RepError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return F2Matrix(self.n, out)

    def apply(self, x: int) -> int:
        """Matrix times column vector (bitmask)."""
        return sum((_popcount(r & x) & 1) << i for i, r in enumerate(self.rows))

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.n, (sum(((self.rows[i] >> j) & 1) << i for i in range(self.n))
                                 for j in range(self.n)))

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def rank(self) -> int:
        rows = list(self.rows)
        rank = 0
        for col in range(self.n):
            bit = 1 << col
            piv = next((k for k in range(rank, self.n) if rows[k] & bit), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for k in range(self.n):
                if k != rank and rows[k] & bit:
                    rows[k] ^= rows[rank]
            rank += 1
        return rank

    def inverse(self) -> "F2Matrix":
        n = self.n
        rows = list(self.rows)
        inv = [1 << i for i in range(n)]
        for col in range(n):
            bit = 1 << col
            piv = next((k for k in range(col, n) if rows[k] & bit), None)
            if piv is None:
                raise RepError("matrix is singular over GF(2)")
            rows[col], rows[piv] = rows[piv], rows[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            for k in range(n):
                if k != col and rows[k] & bit:
                    rows[k] ^= rows[col]
                    inv[k] ^= inv[col]
        return F2Matrix(n, inv)

    def __repr__(self):
        body = "; ".join("".join(str(v) for v in row) for row in self.to_lists())
        return f"F2Matrix[{body}]"


def vector(indices: Iterable[int]) -> int:
    """Bitmask with ones at the given 1-based positions."""
    v = 0
    for i in indices:
        v |= 1 << (i - 1)
    return v


def pairing(u: int, v: int) -> int:
    return _popcount(u & v) & 1


def transvection(v: int, n: int) -> F2Matrix:
    """x -> x + <x, v> v; row i is e_i + v_i v."""
    return F2Matrix(n, ((1 << i) ^ (v if (v >> i) & 1 else 0) for i in range(n)))


# -- representation of the catalog alphabets ------------------------------------

def twist_classes(g: int) -> dict[str, int]:
    """Homology classes of the basic two-sided circles alpha_i and beta."""
    out = {f"a{i}": vector((i, i + 1)) for i in range(1, g)}
    if g >= 4:
        out["b"] = vector((1, 2, 3, 4))
    return out


@dataclass
class RepAssignment:
    g: int
    images: dict
    y_matrix: F2Matrix

    def __getitem__(self, name):
        return self.images[name]

    def __contains__(self, name):
        return name in self.images


def evaluate(w: Word, R: Mapping[str, F2Matrix] | RepAssignment, n: int | None = None) -> F2Matrix:
    images = R.images if isinstance(R, RepAssignment) else R
    if n is None:
        n = R.g if isinstance(R, RepAssignment) else next(iter(images.values())).n
    inverses: dict[str, F2Matrix] = {}
    acc = F2Matrix.identity(n)
    for x, e in w:
        if x not in images:
            raise RepError(f"no matrix assigned to {x!r}")
        m = images[x]
        if e == -1:
            if x not in inverses:
                inverses[x] = m.inverse()
            m = inverses[x]
        acc = acc @ m
    return acc


def rep_assignment(g: int, s: int = 1, y_matrix: F2Matrix | None = None) -> RepAssignment:
    """Images of the mcg and twist alphabets (both, keyed by generator name)."""
    from . import catalog

    if g < 3:
        raise RepError("need g >= 3")
    images: dict[str, F2Matrix] = {x: transvection(v, g) for x, v in twist_classes(g).items()}
    Y = y_matrix if y_matrix is not None else F2Matrix.identity(g)
    images["y"] = Y
    bw = catalog.b_count(g)
    if bw:
        images["b0"], images["b1"] = images["a1"], images["b"]
        for i in range(1, (g - 4) // 2 + 1):
            head = images[f"b{i - 1}"]
            for k in range(2 * i, 2 * i + 4):
                head = head @ images[f"a{k}"]
            hinv = head.inverse()
            m = head @ images[f"b{i}"]
            acc = F2Matrix.identity(g)
            for _ in range(5):
                acc = acc @ m
            for _ in range(6):
                acc = acc @ hinv
            images[f"b{i + 1}"] = acc
    if s == 0:
        images["r"] = evaluate(catalog.rho_word(g), images, g)
    for x, word in catalog.embedding_map(g, s).items():
        if x not in images:
            images[x] = evaluate(word, images, g)
    return RepAssignment(g, images, Y)


@dataclass
class VerifyReport:
    failures: list
    checked: int
    y_matrix: F2Matrix

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_presentation(P: Presentation, R: RepAssignment | None = None, via_embedding: bool | None = None) -> VerifyReport:
    """Labels of relators whose image is not the identity.

    Twist presentations are evaluated after substituting the embedding map.
    """
    from . import catalog
    from .words import substitute

    g = P.meta.g
    if R is None:
        R = rep_assignment(g, P.meta.s if P.meta.s is not None else 1)
    if via_embedding is None:
        via_embedding = P.meta.kind == "twist"
    emb = catalog.embedding_map(g, P.meta.s or 0) if via_embedding else None
    fails = []
    for r in P.relators:
        w = substitute(r.word, emb) if emb is not None else r.word
        if not evaluate(w, R).is_identity():
            fails.append(r.label)
    return VerifyReport(fails, len(P.relators), R.y_matrix)


# -- oracle: candidate y matrices -------------------------------------------------

def _solve_commutant(mats: list[F2Matrix], anti: list[F2Matrix], n: int) -> list[list[int]]:
    """Basis (as flattened bit lists) of {Y : Y M = M Y for M in mats, Y A = A^-1 Y for A in anti}."""
    eqs = []
    pairs = [(m, m) for m in mats] + [(a, a.inverse()) for a in anti]
    for left, right in pairs:
        # (Y left)_{ij} - (right Y)_{ij} = sum_k Y_ik left_kj - right_ik Y_kj
        for i in range(n):
            for j in range(n):
                eq = 0
                for k in range(n):
                    if left[k, j]:
                        eq ^= 1 << (i * n + k)
                    if right[i, k]:
                        eq ^= 1 << (k * n + j)
                if eq:
                    eqs.append(eq)
    # row-reduce and read off a nullspace basis
    nv = n * n
    pivots: dict[int, int] = {}
    for eq in eqs:
        for col, row in pivots.items():
            if eq >> col & 1:
                eq ^= row
        if eq:
            col = eq.bit_length() - 1
            for c2 in list(pivots):
                if pivots[c2] >> col & 1:
                    pivots[c2] ^= eq
            pivots[col] = eq
    free = [c for c in range(nv) if c not in pivots]
    basis = []
    for fcol in free:
        v = 1 << fcol
        for col, row in pivots.items():
            if row >> fcol & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def search_y_matrices(g: int, limit: int | None = None) -> list[F2Matrix]:
    """All Y in GL(g, 2) compatible with (B3), (B5), (B4), (B1) given the a_i images.

    (B3) and (B5) are linear in Y, so the search enumerates the solution space
    of those equations and filters by invertibility and the remaining relations.
    """
    from . import catalog

    if g < 4:
        raise RepError("search needs g >= 4 so that (B1) and (B3) are present")
    a = {i: transvection(vector((i, i + 1)), g) for i in range(1, g)}
    basis = _solve_commutant([a[i] for i in range(3, g)], [a[1]], g)
    P = catalog.build(catalog.CatalogKey(g, 1, "mcg"))
    rels = [P.relator("B4"), P.relator("B1")]
    found = []
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        flat = 0
        for c, v in zip(coeffs, basis):
            if c:
                flat ^= v
        Y = F2Matrix(g, ((flat >> (i * g)) & ((1 << g) - 1) for i in range(g)))
        if Y.rank() < g:
            continue
        images = {f"a{i}": m for i, m in a.items()}
        images["y"] = Y
        if all(evaluate(r, images, g).is_identity() for r in rels):
            found.append(Y)
            if limit and len(found) >= limit:
                break
    return found
