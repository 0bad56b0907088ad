"""Exact arithmetic in free nilpotent groups by collection.

Elements of the free nilpotent group of class ``c`` on ``r`` generators are
written uniquely as ``c_0^{e_0} c_1^{e_1} ... c_{N-1}^{e_{N-1}}`` over the
basic-commutator table of weight ``<= c``.  :class:`NormalForm` stores the
exponent vector.

Multiplication is collection from the left over a power-conjugate
presentation whose relations have the shape

    c_j^{c_i}      = c_j * w_ij      (j > i)
    c_j^{c_i^{-1}} = c_j * w'_ij

with ``w_ij``, ``w'_ij`` words in letters of id ``> j``.  The presentation is
built by descending induction on ``i``: when ``(j, i)`` is a basic pair the
commutator is a table entry; otherwise ``c_j = [x, y]`` with ``y > i`` and
``c_j^{c_i} = [x^{c_i}, y^{c_i}]`` is collected using only relations with
lower index ``> i``, all of which are already known.  Commutators of weight
``> c`` are trivial and simply never appear.

:func:`magnus_image` maps into the truncated integer tensor ring via
``g_i -> 1 + x_i``; it shares no code with the collector and serves as an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .commutators import BasicCommutatorTable, basic_commutators

Word = Tuple[Tuple[int, int], ...]


class Collector:
    """Power-conjugate presentation of a free nilpotent group plus its collector."""

    def __init__(self, table: BasicCommutatorTable):
        self.table = table
        self.size = len(table)
        self.weights = table.weights
        # _conj[sign][g][m] = w with c_m^{c_g^sign} = c_m * w; absent means they commute
        self._pos: list[dict[int, Word]] = [dict() for _ in range(self.size)]
        self._neg: list[dict[int, Word]] = [dict() for _ in range(self.size)]
        self._build()

    def _build(self) -> None:
        table, c = self.table, self.table.max_weight
        pairs = table.pair_index()
        for i in range(self.size - 1, -1, -1):
            wi = self.weights[i]
            pos = self._pos[i]
            for j in range(i + 1, self.size):
                if wi + self.weights[j] > c:
                    continue
                ej = table[j]
                if ej.is_leaf or ej.right <= i:
                    pos[j] = ((pairs[(j, i)], 1),)
                    continue
                x, y = ej.left, ej.right
                xc = ((x, 1),) + pos.get(x, ())
                yc = ((y, 1),) + pos.get(y, ())
                vec = self.identity_vector()
                self.collect(vec, _inverse_word(xc) + _inverse_word(yc) + xc + yc)
                pos[j] = self._tail_after(vec, j)
            neg = self._neg[i]
            for j in range(self.size - 1, i, -1):
                w = pos.get(j)
                if not w:
                    continue
                # psi = inverse of conjugation by c_i: psi(c_j) = c_j * psi(w)^{-1}
                image = []
                for m, e in w:
                    unit = ((m, 1),) + neg.get(m, ())
                    image.extend(_word_power(unit, e))
                vec = self.identity_vector()
                self.collect(vec, ((j, 1),) + _inverse_word(tuple(image)))
                neg[j] = self._tail_after(vec, j)

    def _tail_after(self, vec: list[int], j: int) -> Word:
        assert all(v == 0 for v in vec[:j]) and vec[j] == 1, (j, vec)
        return tuple((m, vec[m]) for m in range(j + 1, self.size) if vec[m])

    def identity_vector(self) -> list[int]:
        return [0] * self.size

    def collect(self, vec: list[int], word: Iterable[Tuple[int, int]]) -> None:
        """Replace ``vec`` in place by the normal form of ``vec * word``."""
        n = self.size
        stack = list(word)
        stack.reverse()
        while stack:
            g, e = stack.pop()
            if e == 0:
                continue
            conj = self._pos[g] if e > 0 else self._neg[g]
            tail = [(m, vec[m]) for m in range(g + 1, n) if vec[m]]
            if not any(m in conj for m, _ in tail):
                vec[g] += e
                continue
            s = 1 if e > 0 else -1
            if e != s:
                stack.append((g, e - s))
            for m, _ in tail:
                vec[m] = 0
            vec[g] += s
            pieces = []
            for m, xm in tail:
                w = conj.get(m)
                if w is None:
                    pieces.append(((m, xm),))
                else:
                    pieces.append(_word_power(((m, 1),) + w, xm))
            for piece in reversed(pieces):
                stack.extend(reversed(piece))


def _inverse_word(word: Sequence[Tuple[int, int]]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def _word_power(word: Sequence[Tuple[int, int]], m: int) -> Word:
    if m >= 0:
        return tuple(word) * m
    return _inverse_word(word) * (-m)


@lru_cache(maxsize=None)
def _collector(r: int, c: int) -> Collector:
    return Collector(basic_commutators(r, c))


def collector_for(table: BasicCommutatorTable) -> Collector:
    return _collector(table.r, table.max_weight)


@dataclass(frozen=True)
class NormalForm:
    """Element of the free nilpotent group of class ``table.max_weight``."""

    table: BasicCommutatorTable
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.table):
            raise ValueError(
                f"expected {len(self.table)} exponents, got {len(self.exponents)}"
            )

    @classmethod
    def identity(cls, table: BasicCommutatorTable) -> "NormalForm":
        return cls(table, (0,) * len(table))

    @classmethod
    def basis(cls, table: BasicCommutatorTable, k: int, e: int = 1) -> "NormalForm":
        """The element ``c_k^e``."""
        vec = [0] * len(table)
        vec[k] = e
        return cls(table, tuple(vec))

    @classmethod
    def generator(cls, table: BasicCommutatorTable, index: int) -> "NormalForm":
        """Generator number ``index`` (1-based)."""
        return cls.basis(table, index - 1)

    @classmethod
    def from_word(
        cls, table: BasicCommutatorTable, word: Iterable[Tuple[int, int]]
    ) -> "NormalForm":
        """Collect a word of ``(table id, exponent)`` letters."""
        col = collector_for(table)
        vec = col.identity_vector()
        col.collect(vec, word)
        return cls(table, tuple(vec))

    def word(self) -> Word:
        return tuple((k, e) for k, e in enumerate(self.exponents) if e)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return nf_multiply(self, other)

    def __pow__(self, m: int) -> "NormalForm":
        return nf_power(self, m)

    def inverse(self) -> "NormalForm":
        return NormalForm.from_word(self.table, _inverse_word(self.word()))

    def __str__(self) -> str:
        if self.is_identity():
            return "1"
        parts = []
        for k, e in self.word():
            name = self.table.name(k)
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)


def _check_same(u: NormalForm, v: NormalForm) -> None:
    if u.table is not v.table and u.table != v.table:
        raise ValueError("normal forms over different commutator tables")


def nf_multiply(u: NormalForm, v: NormalForm) -> NormalForm:
    _check_same(u, v)
    col = collector_for(u.table)
    vec = list(u.exponents)
    col.collect(vec, v.word())
    return NormalForm(u.table, tuple(vec))


def nf_inverse(u: NormalForm) -> NormalForm:
    return u.inverse()


def nf_power(u: NormalForm, m: int) -> NormalForm:
    if m < 0:
        u, m = u.inverse(), -m
    result = NormalForm.identity(u.table)
    base = u
    while m:
        if m & 1:
            result = nf_multiply(result, base)
        m >>= 1
        if m:
            base = nf_multiply(base, base)
    return result


def nf_commutator(u: NormalForm, v: NormalForm) -> NormalForm:
    """``[u, v] = u^-1 v^-1 u v``."""
    _check_same(u, v)
    word = _inverse_word(u.word()) + _inverse_word(v.word()) + u.word() + v.word()
    return NormalForm.from_word(u.table, word)


# -- Magnus oracle ---------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of Z<<x_1..x_r>> modulo monomials of degree > ``degree``.

    ``coeffs`` maps tuples of 1-based generator indices to non-zero integers.
    """

    r: int
    degree: int
    coeffs: Tuple[Tuple[Tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, r: int, degree: int, d: dict) -> "TruncatedSeries":
        items = tuple(sorted((k, v) for k, v in d.items() if v and len(k) <= degree))
        return cls(r, degree, items)

    @classmethod
    def one(cls, r: int, degree: int) -> "TruncatedSeries":
        return cls.from_dict(r, degree, {(): 1})

    @classmethod
    def generator(cls, r: int, degree: int, i: int) -> "TruncatedSeries":
        return cls.from_dict(r, degree, {(): 1, (i,): 1})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, monomial) -> int:
        return self.as_dict().get(tuple(monomial), 0)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out: dict = {}
        for ka, va in self.coeffs:
            room = self.degree - len(ka)
            for kb, vb in other.coeffs:
                if len(kb) <= room:
                    key = ka + kb
                    out[key] = out.get(key, 0) + va * vb
        return TruncatedSeries.from_dict(self.r, self.degree, out)

    def inverse(self) -> "TruncatedSeries":
        d = self.as_dict()
        if d.get((), 0) != 1:
            raise ValueError("only series with constant term 1 are inverted")
        # (1 + X)^-1 = sum_k (-X)^k, and X^k vanishes for k > degree
        neg_x = TruncatedSeries.from_dict(
            self.r, self.degree, {k: -v for k, v in d.items() if k}
        )
        result = TruncatedSeries.one(self.r, self.degree)
        term = result
        for _ in range(self.degree):
            term = term * neg_x
            result = result + term
        return result

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = self.as_dict()
        for k, v in other.coeffs:
            out[k] = out.get(k, 0) + v
        return TruncatedSeries.from_dict(self.r, self.degree, out)

    def __pow__(self, m: int) -> "TruncatedSeries":
        base = self.inverse() if m < 0 else self
        m = abs(m)
        result = TruncatedSeries.one(self.r, self.degree)
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result


@lru_cache(maxsize=None)
def _basis_images(r: int, c: int) -> Tuple[TruncatedSeries, ...]:
    table = basic_commutators(r, c)
    images: list[TruncatedSeries] = []
    for e in table.entries:
        if e.is_leaf:
            images.append(TruncatedSeries.generator(r, c, e.generator))
        else:
            x, y = images[e.left], images[e.right]
            images.append(x.inverse() * y.inverse() * x * y)
    return tuple(images)


def magnus_image(u: NormalForm) -> TruncatedSeries:
    """Image of ``u`` under ``g_i -> 1 + x_i``, truncated above degree ``c``."""
    images = _basis_images(u.table.r, u.table.max_weight)
    result = TruncatedSeries.one(u.table.r, u.table.max_weight)
    for k, e in u.word():
        result = result * images[k] ** e
    return result
