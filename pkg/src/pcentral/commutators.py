"""Hall basic commutators and Witt's count.

A basic commutator is stored as a row of a :class:`BasicCommutatorTable`.
Weight-one rows are the generators ``a, b, c, ...`` in index order; a row of
weight ``w > 1`` is a pair ``(left, right)`` of earlier rows with
``left > right`` and, when ``left`` is itself a pair ``(x, y)``, ``right >= y``.
Within one weight, pairs are listed lexicographically by ``(left, right)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import ResourceLimitError

DEFAULT_ENTRY_CAP = 100_000


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation of a positive integer."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def witt_count(r: int, w: int) -> int:
    """Number of basic commutators of weight ``w`` on ``r`` generators."""
    if r < 1 or w < 1:
        raise ValueError("witt_count needs r >= 1 and w >= 1")
    total = sum(mobius(d) * r ** (w // d) for d in range(1, w + 1) if w % d == 0)
    count, rem = divmod(total, w)
    assert rem == 0
    return count


def cumulative_count(r: int, i: int) -> int:
    """``b_i``: the number of basic commutators of weight at most ``i``."""
    return sum(witt_count(r, w) for w in range(1, i + 1))


@dataclass(frozen=True)
class BasicCommutator:
    id: int
    weight: int
    generator: Optional[int] = None  # 1-based, set for weight-one entries
    left: Optional[int] = None
    right: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.generator is not None


def generator_name(index: int) -> str:
    """Letters ``a..z`` for the first 26 generators, ``g27`` beyond."""
    return chr(ord("a") + index - 1) if index <= 26 else f"g{index}"


@dataclass(frozen=True)
class BasicCommutatorTable:
    r: int
    max_weight: int
    entries: Tuple[BasicCommutator, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> BasicCommutator:
        return self.entries[i]

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(e.weight for e in self.entries)

    def ids_of_weight(self, w: int) -> list[int]:
        return [e.id for e in self.entries if e.weight == w]

    def pair_index(self) -> dict[Tuple[int, int], int]:
        """Map ``(left, right)`` to the id of the pair entry."""
        return {(e.left, e.right): e.id for e in self.entries if not e.is_leaf}

    def name(self, i: int) -> str:
        e = self.entries[i]
        if e.is_leaf:
            return generator_name(e.generator)
        return f"[{self.name(e.left)},{self.name(e.right)}]"

    def weight_counts(self) -> Tuple[int, ...]:
        counts = [0] * self.max_weight
        for e in self.entries:
            counts[e.weight - 1] += 1
        return tuple(counts)


@lru_cache(maxsize=None)
def _cached_table(r: int, max_weight: int, cap: int) -> BasicCommutatorTable:
    expected = cumulative_count(r, max_weight)
    if expected > cap:
        raise ResourceLimitError(
            f"basic commutator table for r={r}, weight<={max_weight} has "
            f"{expected} entries (cap {cap})",
            required=expected,
        )
    entries: list[BasicCommutator] = [
        BasicCommutator(id=i, weight=1, generator=i + 1) for i in range(r)
    ]
    by_weight: dict[int, list[BasicCommutator]] = {1: list(entries)}
    for w in range(2, max_weight + 1):
        found = []
        for wl in range(w - 1, 0, -1):
            wr = w - wl
            if wr > wl:
                continue
            for u in by_weight[wl]:
                for v in by_weight[wr]:
                    if u.id <= v.id:
                        continue
                    if not u.is_leaf and v.id < u.right:
                        continue
                    found.append((u.id, v.id))
        found.sort()
        layer = []
        for left, right in found:
            e = BasicCommutator(id=len(entries), weight=w, left=left, right=right)
            entries.append(e)
            layer.append(e)
        by_weight[w] = layer
    return BasicCommutatorTable(r=r, max_weight=max_weight, entries=tuple(entries))


def basic_commutators(
    r: int, max_weight: int, cap: int = DEFAULT_ENTRY_CAP
) -> BasicCommutatorTable:
    """Build the Hall basic-commutator table on ``r`` generators up to ``max_weight``.

    Raises :class:`ResourceLimitError` when the table would exceed ``cap`` entries.
    """
    if r < 1 or max_weight < 1:
        raise ValueError("basic_commutators needs r >= 1 and max_weight >= 1")
    return _cached_table(r, max_weight, cap)
