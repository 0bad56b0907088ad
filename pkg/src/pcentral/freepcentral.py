"""Free p-central groups ``F_r / L_{n+1}(F_r)`` as mixed-modulus exponent vectors.

For ``p = 2`` the series ``L`` is ``L_{n+1} = L_n^4 [L_n, F]``; for odd ``p``
it is the lower p-central series ``L_{n+1} = L_n^p [L_n, F]``.  Write ``q``
for 4 or ``p`` respectively.

Why reducing collected normal forms is the quotient map: ``L_{n+1}``
contains ``gamma_{n+1}``, so we may work in the free nilpotent group of
class ``n``.  There ``L_{n+1}`` is the product of the power subgroups
``gamma_w^(q^(n+1-w))``, so every ``c_k^(q^(n+1-w_k))`` lies in it and,
``L_{n+1}`` being normal, changing one exponent of a normal form by a
multiple of its modulus ``q^(n+1-w_k)`` does not change the coset.  Reduced
vectors therefore reach every coset.  Conversely the layers
``L_i / L_{i+1}`` have the images of the ``c_k^(q^(i-w_k))`` (``w_k <= i``)
as a basis, so the group has order ``q^(b_1 + ... + b_n)``, which equals
the number of reduced vectors.  Hence distinct reduced vectors are
distinct elements and componentwise reduction is a homomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from .cayley import CayleyGroup, series_modulus
from .collection import NormalForm, collector_for
from .commutators import DEFAULT_ENTRY_CAP, BasicCommutatorTable, basic_commutators, is_prime
from .errors import ResourceLimitError

DEFAULT_ENUMERATION_CAP = 65536


@dataclass(frozen=True)
class FpcScheme:
    p: int
    r: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def q(self) -> int:
        return series_modulus(self.p)

    @property
    def table(self) -> BasicCommutatorTable:
        return basic_commutators(self.r, self.n)

    @cached_property
    def moduli(self) -> Tuple[int, ...]:
        return tuple(self.q ** (self.n + 1 - w) for w in self.table.weights)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def name(self) -> str:
        return f"{self.n}G{self.r}(p={self.p})"

    def identity(self) -> "FpcElement":
        return FpcElement(self, (0,) * len(self.moduli))

    def element(self, exponents) -> "FpcElement":
        """Reduce an exponent vector (or class-n :class:`NormalForm`) into the group."""
        if isinstance(exponents, NormalForm):
            exponents = exponents.exponents
        if len(exponents) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} exponents")
        return FpcElement(self, tuple(int(e) % m for e, m in zip(exponents, self.moduli)))

    def basis(self, k: int) -> "FpcElement":
        vec = [0] * len(self.moduli)
        vec[k] = 1
        return self.element(vec)

    def generator(self, index: int) -> "FpcElement":
        """Generator number ``index`` (1-based)."""
        return self.basis(index - 1)

    def encode(self, exponents) -> int:
        """Mixed-radix index, first table entry most significant."""
        idx = 0
        for e, m in zip(exponents, self.moduli):
            idx = idx * m + e
        return idx

    def decode(self, index: int) -> Tuple[int, ...]:
        out = []
        for m in reversed(self.moduli):
            index, e = divmod(index, m)
            out.append(e)
        return tuple(reversed(out))


@dataclass(frozen=True)
class FpcElement:
    scheme: FpcScheme
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= e < m for e, m in zip(self.exponents, self.scheme.moduli)):
            raise ValueError("exponents must be reduced modulo the scheme moduli")

    def lift(self) -> NormalForm:
        return NormalForm(self.scheme.table, self.exponents)

    def __mul__(self, other: "FpcElement") -> "FpcElement":
        return fpc_multiply(self, other)

    def __pow__(self, m: int) -> "FpcElement":
        return self.scheme.element(self.lift() ** m)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    @property
    def index(self) -> int:
        return self.scheme.encode(self.exponents)


def construct_free_pcentral(
    p: int, r: int, n: int, cap: int = DEFAULT_ENTRY_CAP
) -> FpcScheme:
    """Scheme for ``nG_r`` at the prime ``p``.

    Raises :class:`ResourceLimitError` if the commutator table exceeds ``cap``.
    """
    s = FpcScheme(p, r, n)
    basic_commutators(r, n, cap)
    return s


def fpc_multiply(x: FpcElement, y: FpcElement) -> FpcElement:
    if x.scheme != y.scheme:
        raise ValueError("elements of different schemes")
    col = collector_for(x.scheme.table)
    vec = list(x.exponents)
    col.collect(vec, y.lift().word())
    return x.scheme.element(vec)


def fpc_order_exponent(s: FpcScheme) -> Tuple[int, int]:
    """``(|nG_r|, exp nG_r) = (prod moduli, q^n)``."""
    return s.order, s.q**s.n


def fpc_enumerate(s: FpcScheme, cap: int = DEFAULT_ENUMERATION_CAP) -> CayleyGroup:
    """Cayley table of the scheme; element index is :meth:`FpcScheme.encode`.

    Right multiplication by each basis letter ``c_k`` is computed by
    collection once per element; every column of the table is then reached
    by composing those permutations, since ``x * (y c_k) = (x y) c_k`` and the
    normal form of ``y c_k`` is ``y`` with one more ``c_k`` whenever ``y`` has
    no letters after ``c_k``.
    """
    order = s.order
    if order > cap:
        raise ResourceLimitError(
            f"{s.name} has order {order}, above the enumeration cap {cap}", required=order
        )
    k_count = len(s.moduli)
    col = collector_for(s.table)
    right = np.empty((k_count, order), dtype=np.int64)
    for idx in range(order):
        vec = list(s.decode(idx))
        for k in range(k_count):
            w = vec.copy()
            col.collect(w, ((k, 1),))
            right[k, idx] = s.encode([e % m for e, m in zip(w, s.moduli)])
    table = np.empty((order, order), dtype=np.int64)
    table[:, 0] = np.arange(order)
    for j in range(1, order):
        digits = s.decode(j)
        k = max(i for i, e in enumerate(digits) if e)
        prev = list(digits)
        prev[k] -= 1
        table[:, j] = right[k, table[:, s.encode(prev)]]
    return CayleyGroup(table, name=s.name)
