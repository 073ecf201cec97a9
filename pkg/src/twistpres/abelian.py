"""Abelianization via Smith normal form over the integers."""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import Presentation


def exponent_matrix(P: Presentation) -> list[list[int]]:
    col = {x: j for j, x in enumerate(P.generators)}
    rows = []
    for r in P.relators:
        row = [0] * len(col)
        for x, e in r.word:
            row[col[x]] += e
        rows.append(row)
    return rows


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


@dataclass
class SmithForm:
    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    diagonal: list[int]
    invariants: AbelianInvariants


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: list[list[int]], ncols: int | None = None, track: bool = True) -> SmithForm:
    """U M V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal.

    Pivot: entry of least nonzero absolute value in the trailing block.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    A = [list(map(int, row)) for row in M]
    U = _identity(m) if track else None
    V = _identity(n) if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        if q:
            rs, rd = A[src], A[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] -= q * rs[k]
            if track:
                us, ud = U[src], U[dst]
                for k in range(m):
                    if us[k]:
                        ud[k] -= q * us[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        if q:
            for row in A:
                if row[src]:
                    row[dst] -= q * row[src]
            if track:
                for row in V:
                    if row[src]:
                        row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                # a remainder is smaller than the pivot; move it into place
                best = None
                for i in range(t, m):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t, n):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if track:
                U[t] = [-v for v in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return SmithForm(A, U, V, diag, AbelianInvariants(n - rank, torsion))


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    M = exponent_matrix(P)
    return smith_normal_form(M, ncols=len(P.generators), track=False).invariants


def invariants_from_matrix(M: list[list[int]], ncols: int | None = None) -> AbelianInvariants:
    return smith_normal_form(M, ncols=ncols, track=False).invariants
