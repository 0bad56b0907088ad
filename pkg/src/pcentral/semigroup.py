"""Exponent semigroup and exponential rank, by exhaustive pair checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cayley import CayleyGroup, center, exponent, quotient, require_p_group
from .errors import StructureViolation


def is_power_endomorphism(G: CayleyGroup, m: int) -> bool:
    """True iff ``(xy)^m = x^m y^m`` for every pair ``x, y`` of ``G``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    pw = G.power_map(m)
    t = G.table
    return bool(np.array_equal(pw[t], t[pw[:, None], pw[None, :]]))


def _log(p: int, n: int) -> int:
    k = 0
    while n > 1:
        n, rem = divmod(n, p)
        if rem:
            raise ValueError("not a power of p")
        k += 1
    return k


@dataclass(frozen=True)
class ExponentSemigroup:
    group: CayleyGroup
    p: int
    e: int
    s: int
    verified_period: int

    @property
    def exprank(self) -> int:
        return self.s - self.e

    @property
    def modulus(self) -> int:
        return self.p**self.s

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in (0, 1 % self.modulus)

    def __str__(self) -> str:
        m = self.modulus
        return "Z" if m == 1 else f"{m}Z u ({m}Z+1)"


def exponent_semigroup(G: CayleyGroup, p: int) -> ExponentSemigroup:
    """``E(G)`` for a finite p-group, checked over every residue modulo ``exp G``.

    ``E(G)`` must have the shape ``p^s Z u (p^s Z + 1)`` with ``s >= e`` where
    ``p^e = exp(G/Z(G))``; anything else raises :class:`StructureViolation`.
    """
    require_p_group(G, p)
    Z = center(G)
    e = _log(p, exponent(quotient(G, Z)))
    period = exponent(G)
    bound = _log(p, period) + 2
    s = e
    while not is_power_endomorphism(G, p**s):
        s += 1
        if s > bound:
            raise StructureViolation(
                f"no p-power endomorphism x -> x^(p^s) with s <= {bound} in {G.name}"
            )
    modulus = p**s
    for n in range(period):
        member = is_power_endomorphism(G, n)
        if member != (n % modulus in (0, 1 % modulus)):
            raise StructureViolation(
                f"E({G.name}) is not {modulus}Z u ({modulus}Z+1): n={n} "
                f"{'is' if member else 'is not'} a member"
            )
    return ExponentSemigroup(group=G, p=p, e=e, s=s, verified_period=period)


def exprank(G: CayleyGroup, p: int) -> int:
    return exponent_semigroup(G, p).exprank
