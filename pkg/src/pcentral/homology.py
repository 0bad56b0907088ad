"""Smith normal form and the Schur multiplier ``H_2(G, Z)``.

``h2_integral`` works on the normalized bar complex.  Since
``C_2 / ker d_2`` embeds in the free module ``C_1`` it is free, so
``coker d_3 = C_2 / im d_3`` splits as ``H_2 (+) free`` and the torsion
invariants of ``d_3`` are exactly the invariants of ``H_2``.  The rank of
``d_2`` is computed as well to confirm that the free part of ``H_2`` is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Tuple

from .cayley import CayleyGroup, exponent, is_p_central
from .commutators import factorize, witt_count
from .errors import HypothesisError, ResourceLimitError, StructureViolation

DEFAULT_HOMOLOGY_CAP = 32


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix dimensions do not match entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(len(rows), len(rows[0]) if rows else 0, rows)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d_1 | d_2 | ...``; empty means the trivial group."""

    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        f = self.factors
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"{f} is not a divisibility chain of factors >= 2")

    @classmethod
    def from_diagonal(cls, diagonal) -> "AbelianInvariants":
        """Canonical chain from any diagonal presentation of a finite group."""
        return cls(_to_invariant_chain([abs(d) for d in diagonal if abs(d) > 1]))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def __str__(self) -> str:
        return " ".join(map(str, self.factors)) if self.factors else "1"


def _to_invariant_chain(ds: Sequence[int]) -> Tuple[int, ...]:
    """Turn a list of cyclic orders into the divisibility chain via prime powers."""
    per_prime: dict[int, list[int]] = {}
    for d in ds:
        for p, e in factorize(d).items():
            per_prime.setdefault(p, []).append(p**e)
    if not per_prime:
        return ()
    width = max(len(v) for v in per_prime.values())
    for v in per_prime.values():
        v.sort()
        v[:0] = [1] * (width - len(v))
    return tuple(math.prod(v[i] for v in per_prime.values()) for i in range(width))


# -- Smith normal form -------------------------------------------------------


def _dense_diagonalize(a: list[list[int]]) -> list[int]:
    """Diagonal of a Smith form of ``a`` (destroys ``a``); length ``min(m, n)``."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            diag.extend([0] * (min(m, n) - t))
            break
        while True:
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // piv
                    if f:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= f * rt[j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // piv
                    if f:
                        for i in range(t, m):
                            a[i][j] -= f * a[i][t]
                    if a[t][j]:
                        clean = False
            if clean:
                # enforce divisibility: pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                i = bad[0]
                for j in range(t, n):
                    a[t][j] += a[i][j]
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        diag.append(abs(a[t][t]))
    return diag


def smith_normal_form(M: IntegerMatrix) -> Tuple[Tuple[int, ...], int]:
    """Invariant factors ``d_1 | d_2 | ...`` (length ``min(rows, cols)``, zeros last) and rank."""
    a = [list(r) for r in M.entries]
    diag = _dense_diagonalize(a)
    rank = sum(1 for d in diag if d)
    nonzero = sorted(d for d in diag if d)
    # the diagonal already divides down the chain, but sort defensively
    return tuple(nonzero) + (0,) * (len(diag) - rank), rank


def _sparse_invariants(rows: list[dict[int, int]]) -> Tuple[list[int], int]:
    """Non-unit invariant factors and rank of a sparse matrix given by row dicts.

    Unit pivots are eliminated sparsely first; what is left is handed to the
    dense Smith routine.
    """
    rows = [dict(r) for r in rows if r]
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    rank = 0
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            if i not in alive:
                continue
            r = rows[i]
            if not r:
                alive.discard(i)
                continue
            j = next((j for j, v in r.items() if v in (1, -1)), None)
            if j is None:
                continue
            u = r[j]
            for k in list(cols[j]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[j] * u
                for jj, v in r.items():
                    nv = rk.get(jj, 0) - f * v
                    if nv:
                        if jj not in rk:
                            cols.setdefault(jj, set()).add(k)
                        rk[jj] = nv
                    elif jj in rk:
                        del rk[jj]
                        cols[jj].discard(k)
                if not rk:
                    alive.discard(k)
            for jj in r:
                cols[jj].discard(i)
            alive.discard(i)
            rows[i] = {}
            rank += 1
            changed = True
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [], rank
    used = sorted({j for r in rest for j in r})
    pos = {j: t for t, j in enumerate(used)}
    dense = [[0] * len(used) for _ in rest]
    for t, r in enumerate(rest):
        for j, v in r.items():
            dense[t][pos[j]] = v
    diag = _dense_diagonalize(dense)
    rank += sum(1 for d in diag if d)
    return [d for d in diag if d > 1], rank


# -- bar complex ------------------------------------------------------------


def _boundary_rows(G: CayleyGroup):
    """Transposed boundary maps of the normalized bar complex.

    Returns ``(d2_rows, d3_rows)`` where each row is the boundary of one basis
    chain, keyed by the index of the target basis chain.
    """
    t = [list(map(int, row)) for row in G.table]
    nonid = range(1, G.order)
    m = G.order - 1
    idx2 = lambda g, h: (g - 1) * m + (h - 1)

    def add(d, key, v):
        d[key] = d.get(key, 0) + v
        if not d[key]:
            del d[key]

    d2 = []
    for g, h in product(nonid, repeat=2):
        d: dict[int, int] = {}
        gh = t[g][h]
        add(d, h, 1)
        if gh:
            add(d, gh, -1)
        add(d, g, 1)
        d2.append(d)
    d3 = []
    for g, h, k in product(nonid, repeat=3):
        d = {}
        gh, hk = t[g][h], t[h][k]
        add(d, idx2(h, k), 1)
        if gh:
            add(d, idx2(gh, k), -1)
        if hk:
            add(d, idx2(g, hk), 1)
        add(d, idx2(g, h), -1)
        d3.append(d)
    return d2, d3


def h2_integral(G: CayleyGroup, cap: int = DEFAULT_HOMOLOGY_CAP) -> AbelianInvariants:
    """Invariant factors of ``H_2(G, Z)``, the Schur multiplier of ``G``."""
    if G.order > cap:
        raise ResourceLimitError(
            f"homology of a group of order {G.order} exceeds the cap {cap}", required=G.order
        )
    if G.order == 1:
        return AbelianInvariants()
    d2, d3 = _boundary_rows(G)
    # d3 rows are the images of 3-chains; its invariants equal those of the matrix
    torsion, rank3 = _sparse_invariants(d3)
    _, rank2 = _sparse_invariants(d2)
    c2 = (G.order - 1) ** 2
    if rank2 + rank3 != c2:
        raise StructureViolation(
            f"H_2 has free rank {c2 - rank2 - rank3}; impossible for a finite group"
        )
    return AbelianInvariants.from_diagonal(torsion)


def multiplier_free_pcentral(p: int, r: int, n: int) -> AbelianInvariants:
    """Multiplier of ``nG_r``: rank ``sum_{i=2}^{n+1} c(r, i)`` copies of ``Z_p`` (``Z_4`` if p = 2)."""
    rank = sum(witt_count(r, i) for i in range(2, n + 2))
    return AbelianInvariants((4 if p == 2 else p,) * rank)


def check_exp_multiplier(G: CayleyGroup, p: int, cap: int = DEFAULT_HOMOLOGY_CAP) -> bool:
    """Whether ``exp M(G)`` divides ``exp G`` for a p-central ``G``."""
    if not is_p_central(G, p):
        raise HypothesisError(f"{G.name or 'group'} is not {p}-central")
    m = h2_integral(G, cap)
    return exponent(G) % m.exponent == 0
