"""Finite groups given by multiplication tables, and the subgroup series built on them.

Elements are ``0..order-1`` with the identity at ``0``.  Tables are numpy
arrays so products over whole subsets (all commutators of a 1024-element
group, all ``m``-th powers, ...) are a handful of vectorised lookups.
"""

from __future__ import annotations

import math
from functools import cached_property
from itertools import product as _cartesian
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .commutators import factorize, is_prime
from .errors import GroupTableError, NotNormalError, NotPGroupError, PCentralError

FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_ASSOCIATIVITY_ROWS = 24


class CayleyGroup:
    """A finite group stored as its full multiplication table."""

    def __init__(self, table, name: str = "", check: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupTableError("multiplication table must be a non-empty square")
        t.setflags(write=False)
        self.table = t
        self.order = int(t.shape[0])
        self.name = name
        if check:
            self._validate()

    def _validate(self) -> None:
        n, t = self.order, self.table
        ar = np.arange(n)
        if t.min() < 0 or t.max() >= n:
            raise GroupTableError("table entry out of range")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupTableError("index 0 is not a two-sided identity")
        if not (np.sort(t, axis=1) == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
            raise GroupTableError("table is not a Latin square")
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            rows = ar
        else:
            rows = np.random.default_rng(n).choice(n, SAMPLED_ASSOCIATIVITY_ROWS, replace=False)
        for a in rows:
            if not np.array_equal(t[t[a]], t[a][t]):
                bad = np.argwhere(t[t[a]] != t[a][t])[0]
                raise GroupTableError(
                    f"associativity fails for ({a}, {bad[0]}, {bad[1]})"
                )

    def __repr__(self) -> str:
        return f"CayleyGroup({self.name or '?'}, order={self.order})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CayleyGroup)
            and self.name == other.name
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        return inv

    def power_map(self, m: int) -> np.ndarray:
        """Array whose entry ``x`` is ``x^m``."""
        t = self.table
        base = np.arange(self.order) if m >= 0 else self.inverses.copy()
        m = abs(m)
        result = np.zeros(self.order, dtype=np.int64)
        while m:
            if m & 1:
                result = t[result, base]
            m >>= 1
            if m:
                base = t[base, base]
        return result

    def power(self, x: int, m: int) -> int:
        return int(self.power_map(m)[x])

    def commutator(self, x, y):
        """``[x, y] = x^-1 y^-1 x y``; works elementwise on arrays."""
        t, inv = self.table, self.inverses
        return t[t[inv[x], inv[y]], t[x, y]]

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(self.order)
        ar = np.arange(self.order)
        k = 1
        while not orders.all():
            cur = self.table[cur, ar]
            k += 1
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.zeros(1, dtype=np.int64))


class Subgroup:
    """A subgroup of a :class:`CayleyGroup`, held as a sorted index array."""

    __slots__ = ("parent", "elements", "_mask")

    def __init__(self, parent: CayleyGroup, elements):
        self.parent = parent
        self.elements = np.unique(np.asarray(elements, dtype=np.int64))
        self._mask = None

    @property
    def order(self) -> int:
        return int(self.elements.size)

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[self.elements] = True
            self._mask = m
        return self._mask

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(self.elements, other.elements)
        )

    def __hash__(self) -> int:
        return hash(self.elements.tobytes())

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.elements].all())

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_valid(self) -> bool:
        """Contains the identity, closed under products and inverses."""
        e, m, t = self.elements, self.mask, self.parent.table
        return bool(
            m[0] and m[t[np.ix_(e, e)]].all() and m[self.parent.inverses[e]].all()
        )

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.elements[other.mask[self.elements]])

    def is_normal(self) -> bool:
        g = np.arange(self.parent.order)
        t, inv = self.parent.table, self.parent.inverses
        conj = t[t[inv[g][:, None], self.elements[None, :]], g[:, None]]
        return bool(self.mask[conj].all())

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.parent.element_orders[self.elements]))


def subgroup_closure(G: CayleyGroup, S: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``S``."""
    cand = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    t = G.table
    for s in cand:
        if mask[s]:
            continue
        gens.append(int(s))
        g = np.asarray(gens)
        frontier = np.flatnonzero(mask)
        while frontier.size:
            prods = t[np.ix_(frontier, g)].ravel()
            new = np.unique(prods[~mask[prods]])
            mask[new] = True
            frontier = new
    return Subgroup(G, np.flatnonzero(mask))


def _as_array(A) -> np.ndarray:
    if isinstance(A, Subgroup):
        return A.elements
    return np.asarray(A, dtype=np.int64)


def commutator_subgroup(G: CayleyGroup, A, B) -> Subgroup:
    """``[A, B]``: the subgroup generated by all ``[a, b]``."""
    a, b = _as_array(A), _as_array(B)
    return subgroup_closure(G, G.commutator(a[:, None], b[None, :]).ravel())


def power_subgroup(G: CayleyGroup, m: int, within=None) -> Subgroup:
    """Subgroup generated by the ``m``-th powers of ``within`` (default: all of G)."""
    if m < 1:
        raise ValueError("power_subgroup needs m >= 1")
    elems = np.arange(G.order) if within is None else _as_array(within)
    return subgroup_closure(G, G.power_map(m)[elems])


def join(G: CayleyGroup, *subgroups: Subgroup) -> Subgroup:
    if not subgroups:
        return G.trivial
    return subgroup_closure(G, np.concatenate([s.elements for s in subgroups]))


def center(G: CayleyGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, np.flatnonzero((t == t.T).all(axis=1)))


def exponent(G: CayleyGroup) -> int:
    return int(np.lcm.reduce(G.element_orders))


def lower_central(G: CayleyGroup, start: Optional[Subgroup] = None) -> list[Subgroup]:
    """``gamma_1 >= gamma_2 >= ...`` until it stabilises (last term repeated once).

    With ``start`` given, the series of that subgroup is computed inside ``G``.
    """
    H = G.whole if start is None else start
    series = [H]
    while True:
        nxt = commutator_subgroup(G, series[-1], H)
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.is_trivial():
            return series


def gamma(series: Sequence[Subgroup], k: int) -> Subgroup:
    """``gamma_k`` from a lower central series, valid past stabilisation."""
    return series[min(k, len(series)) - 1]


def p_of_group(G: CayleyGroup) -> Optional[int]:
    """The prime ``p`` if ``|G|`` is a power of ``p`` (``None`` for the trivial group)."""
    f = factorize(G.order) if G.order > 1 else {}
    if len(f) > 1:
        raise NotPGroupError(f"order {G.order} is not a prime power")
    return next(iter(f), None)


def require_p_group(G: CayleyGroup, p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p_of_group(G)
    if q is not None and q != p:
        raise NotPGroupError(f"{G.name or 'group'} of order {G.order} is not a {p}-group")


def series_modulus(p: int) -> int:
    """The power taken at each step of the lambda series: 4 for p = 2, else p."""
    return 4 if p == 2 else p


def omega(G: CayleyGroup, p: int, i: int) -> Subgroup:
    """Subgroup generated by the elements of order dividing ``p^i``."""
    require_p_group(G, p)
    return subgroup_closure(G, np.flatnonzero(G.power_map(p**i) == 0))


def omega_set(G: CayleyGroup, p: int, i: int) -> np.ndarray:
    """The plain set ``{x : x^(p^i) = 1}`` as a sorted index array."""
    return np.flatnonzero(G.power_map(p**i) == 0)


def lambda_series(G: CayleyGroup, p: int) -> list[Subgroup]:
    """``L_1 = G``, ``L_{n+1} = L_n^q [L_n, G]`` with ``q = 4`` for p = 2 and ``q = p`` otherwise.

    Stops at the trivial subgroup (or at stabilisation, which cannot happen for a p-group).
    """
    require_p_group(G, p)
    q = series_modulus(p)
    series = [G.whole]
    while not series[-1].is_trivial():
        cur = series[-1]
        nxt = join(G, power_subgroup(G, q, cur), commutator_subgroup(G, cur, G.whole))
        if nxt == cur:
            break
        series.append(nxt)
    return series


def lambda_term(series: Sequence[Subgroup], n: int) -> Subgroup:
    """``L_n`` from :func:`lambda_series`; trivial beyond the computed range."""
    if n <= len(series):
        return series[n - 1]
    last = series[-1]
    if not last.is_trivial():
        raise PCentralError("lambda series stabilised at a non-trivial subgroup")
    return last


def n_subgroup(
    G: CayleyGroup, p: int, n: int, k: int, lcs: Optional[Sequence[Subgroup]] = None
) -> Subgroup:
    """``N_{n,k}``: the product of ``gamma_j^(q^(n-j))`` for ``j = k..n``."""
    if not 1 <= k <= n:
        raise ValueError("n_subgroup needs 1 <= k <= n")
    q = series_modulus(p)
    lcs = lower_central(G) if lcs is None else lcs
    parts = [power_subgroup(G, q ** (n - j), gamma(lcs, j)) for j in range(k, n + 1)]
    return join(G, *parts)


def is_p_central(G: CayleyGroup, p: int) -> bool:
    """``Omega_1 <= Z`` for odd ``p``; ``Omega_2 <= Z`` for ``p = 2``."""
    return omega(G, p, 2 if p == 2 else 1) <= center(G)


def quotient(G: CayleyGroup, N: Subgroup, name: str = "") -> CayleyGroup:
    """Coset table of ``G/N``; the coset of ``N`` itself is index 0."""
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormalError(f"subgroup of order {N.order} is not normal")
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset[x] < 0:
            coset[G.table[x, N.elements]] = len(reps)
            reps.append(x)
    reps = np.asarray(reps)
    qt = coset[G.table[np.ix_(reps, reps)]]
    return CayleyGroup(qt, name=name or f"{G.name}/N{N.order}")


def abelian_invariants(G: CayleyGroup) -> tuple[int, ...]:
    """Invariant factors ``d_1 | d_2 | ...`` of ``G / [G, G]``."""
    A = G if G.is_abelian else quotient(G, commutator_subgroup(G, G.whole, G.whole))
    if A.order == 1:
        return ()
    per_prime: dict[int, list[int]] = {}
    for p in factorize(A.order):
        sizes = [0]
        i = 0
        while True:
            i += 1
            cnt = int((A.power_map(p**i) == 0).sum())
            sizes.append(round(math.log(cnt, p)))
            if cnt == A.order or sizes[-1] == sizes[-2]:
                break
        # number of cyclic p-factors of order >= p^i is sizes[i] - sizes[i-1]
        at_least = [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))]
        exps = []
        for i in range(len(at_least)):
            exact = at_least[i] - (at_least[i + 1] if i + 1 < len(at_least) else 0)
            exps.extend([i + 1] * exact)
        per_prime[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for slot in range(width):
        d = 1
        for p, exps in per_prime.items():
            if slot < len(exps):
                d *= p ** exps[slot]
        factors.append(d)
    return tuple(sorted(factors))


# -- builtin families --------------------------------------------------------


def from_elements(elements: Sequence, mul: Callable, name: str) -> CayleyGroup:
    """Build a table from an element list (identity first) and a product function."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    t = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            t[i, j] = index[mul(x, y)]
    return CayleyGroup(t, name=name)


def cyclic(n: int) -> CayleyGroup:
    if n < 1:
        raise ValueError("cyclic needs n >= 1")
    ar = np.arange(n)
    return CayleyGroup((ar[:, None] + ar[None, :]) % n, name=f"C{n}")


def direct_product(G: CayleyGroup, H: CayleyGroup, name: str = "") -> CayleyGroup:
    """Element ``(g, h)`` has index ``g * |H| + h``."""
    m = H.order
    t = G.table[:, None, :, None] * m + H.table[None, :, None, :]
    t = t.reshape(G.order * m, G.order * m)
    return CayleyGroup(t, name=name or f"{G.name}x{H.name}")


def dihedral(order: int) -> CayleyGroup:
    """Dihedral group of the given (even) order; elements ``(k, s)`` = r^k s^s."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2
    els = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(x, y):
        (k1, s1), (k2, s2) = x, y
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return from_elements(els, mul, f"D{order}")


def quaternion(order: int = 8) -> CayleyGroup:
    """Generalised quaternion group ``<x, y | x^(2m), y^2 = x^m, y^-1 x y = x^-1>``."""
    if order < 8 or order & (order - 1):
        raise ValueError("quaternion order must be a power of 2, at least 8")
    n = order // 2
    half = n // 2
    els = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(x, y):
        (k1, s1), (k2, s2) = x, y
        k2 = -k2 if s1 else k2
        k = k1 + k2 + (half if s1 and s2 else 0)
        return (k % n, s1 ^ s2)

    return from_elements(els, mul, f"Q{order}")


def modular(order: int) -> CayleyGroup:
    """``M_{p^k} = <a, b | a^(p^(k-1)), b^p, b^-1 a b = a^(1+p^(k-2))>``."""
    f = factorize(order)
    if len(f) != 1:
        raise ValueError("modular group order must be a prime power")
    (p, k), = f.items()
    if k < 3 or (p == 2 and k < 4):
        raise ValueError(f"modular group M_{order} is not defined")
    n = p ** (k - 1)
    t = 1 + p ** (k - 2)
    els = [(i, j) for j in range(p) for i in range(n)]

    def mul(x, y):
        # a^i b^j a^u b^v = a^(i + u t^j) b^(j + v)
        (i, j), (u, v) = x, y
        return ((i + u * pow(t, j, n)) % n, (j + v) % p)

    return from_elements(els, mul, f"M{order}")


def extraspecial(p: int) -> CayleyGroup:
    """Heisenberg group mod ``p`` (odd): order ``p^3``, exponent ``p``."""
    if not is_prime(p) or p == 2:
        raise ValueError("extraspecial needs an odd prime")
    els = [(0, 0, 0)] + [e for e in _cartesian(range(p), repeat=3) if any(e)]

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return from_elements(els, mul, f"E{p**3}")


def builtin_group(family: str, *params: int) -> CayleyGroup:
    """Look up a builtin family by name.

    ``cyclic(n)``, ``abelian(n1, n2, ...)`` (direct product of cyclics),
    ``dihedral(order)``, ``quaternion(order)``, ``modular(order)``,
    ``extraspecial(order)`` with order ``p^3`` for odd ``p``.
    """
    try:
        if family == "cyclic":
            (n,) = params
            return cyclic(n)
        if family == "abelian":
            if not params:
                return cyclic(1)
            G = cyclic(params[0])
            for n in params[1:]:
                G = direct_product(G, cyclic(n))
            return G
        if family == "dihedral":
            (n,) = params
            return dihedral(n)
        if family == "quaternion":
            return quaternion(*params)
        if family == "modular":
            (n,) = params
            return modular(n)
        if family == "extraspecial":
            (n,) = params
            f = factorize(n)
            if len(f) != 1 or list(f.values()) != [3]:
                raise ValueError("extraspecial order must be p^3")
            return extraspecial(next(iter(f)))
    except (TypeError, ValueError) as exc:
        raise PCentralError(f"bad parameters for {family}{params}: {exc}") from exc
    raise PCentralError(f"unknown group family {family!r}")
