"""Replay the group-theoretic statements over a corpus of small groups.

Each check takes a loaded group and reports ``pass``, ``fail`` (with a
witness) or ``skipped`` (with the hypothesis that was not met).  A check
whose hypothesis fails is never reported as a pass.

Check ids:

    C1   L_n = N_{n,1} for every n until both are trivial
    C2   [N_{n,k}, G] = N_{n+1,k+1} for 1 <= k <= n <= 4
    C3   Omega_{2i} = L_{n+1-i} in nG_r (Omega_i for odd p)
    C4   exp G' = exp G/Z(G)                      (p-central)
    C5   x^(p^i) y^(p^i) = (xy)^(p^i) when [x,y] in Omega_{i-eps}   (p-central)
    C6   exp M(G) divides exp G                   (p-central, small order)
    C7   exprank 0 for odd p or abelian, 1 for non-abelian p = 2   (p-central)
    C8   L_{ceil(n/2)+1} = 1 when exp G = 2^n     (2-central)
    C9   sampled power/commutator congruences modulo N-subgroups
    C10  Omega_i equals the set {x : x^(p^i) = 1} (p-central)
    C11  L_n^(q^m) <= L_{n+m} and [L_n, L_m] <= L_{n+m}

``L`` is the lambda series with step power ``q`` (4 for p = 2, p otherwise).
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import cayley as cy
from .errors import PCentralError
from .freepcentral import construct_free_pcentral, fpc_enumerate
from .homology import h2_integral
from .semigroup import exponent_semigroup

DEFAULT_HOMOLOGY_LIMIT = 16
C9_SAMPLES = 12
MAX_N = 4


@dataclass(frozen=True)
class CorpusEntry:
    """``source`` is ``("builtin", family, *params)``, ``("fpc", p, r, n)`` or ``("file", path)``."""

    id: str
    source: tuple
    p: int
    tags: frozenset = field(default_factory=frozenset)

    def load(self) -> cy.CayleyGroup:
        kind = self.source[0]
        if kind == "builtin":
            G = cy.builtin_group(self.source[1], *self.source[2:])
        elif kind == "fpc":
            G = fpc_enumerate(construct_free_pcentral(*self.source[1:]))
        elif kind == "file":
            from .formats import read_group_file

            G = read_group_file(self.source[1])
            if not isinstance(G, cy.CayleyGroup):
                G = fpc_enumerate(G)
        else:
            raise PCentralError(f"unknown corpus source {self.source!r}")
        return G

    @property
    def scheme_n(self) -> Optional[int]:
        if self.source[0] == "fpc":
            return self.source[3]
        return None


@dataclass(frozen=True)
class CheckResult:
    check: str
    group: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str
    duration_ms: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "group": self.group,
                "status": self.status,
                "detail": self.detail,
                "duration_ms": self.duration_ms,
            },
            sort_keys=False,
        )


def default_corpus() -> list[CorpusEntry]:
    out: list[CorpusEntry] = []

    def abelian(p, *ns):
        name = "x".join(f"C{n}" for n in ns)
        out.append(CorpusEntry(name, ("builtin", "abelian", *ns), p, frozenset({"abelian", "p-central"})))

    for ns in [(2,), (4,), (8,), (2, 2), (2, 4), (4, 4)]:
        abelian(2, *ns)
    for ns in [(3,), (9,), (3, 3), (3, 9)]:
        abelian(3, *ns)
    for ns in [(5,), (25,), (5, 5)]:
        abelian(5, *ns)
    for p, r, n in [(2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1), (3, 2, 2)]:
        out.append(
            CorpusEntry(f"{n}G{r}_p{p}", ("fpc", p, r, n), p, frozenset({"fpc", "p-central"}))
        )
    for gid, src, p in [
        ("Q8", ("builtin", "quaternion", 8), 2),
        ("D8", ("builtin", "dihedral", 8), 2),
        ("M16", ("builtin", "modular", 16), 2),
        ("M27", ("builtin", "modular", 27), 3),
        ("E27", ("builtin", "extraspecial", 27), 3),
    ]:
        out.append(CorpusEntry(gid, src, p, frozenset({"control"})))
    return out


def corpus_from_dir(path) -> list[CorpusEntry]:
    """Every ``*.pgt`` / ``*.fpc`` file in ``path``; ``p`` comes from the group order."""
    from .formats import read_group_file

    entries = []
    for f in sorted(Path(path).iterdir()):
        if f.suffix not in (".pgt", ".fpc"):
            continue
        obj = read_group_file(f)
        if isinstance(obj, cy.CayleyGroup):
            p = cy.p_of_group(obj) or 2
            entries.append(CorpusEntry(f.stem, ("file", str(f)), p))
        else:
            entries.append(
                CorpusEntry(f.stem, ("fpc", obj.p, obj.r, obj.n), obj.p, frozenset({"fpc"}))
            )
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise PCentralError("corpus ids must be unique (same stem used twice)")
    return entries


# -- per-group context -------------------------------------------------------


class Context:
    """Lazily computed data shared by the checks for one group."""

    def __init__(self, entry: CorpusEntry, G: cy.CayleyGroup, homology_limit: int):
        self.entry = entry
        self.G = G
        self.p = entry.p
        self.q = cy.series_modulus(entry.p)
        self.homology_limit = homology_limit
        self._n_cache: dict = {}

    @cached_property
    def lcs(self):
        return cy.lower_central(self.G)

    @cached_property
    def lam(self):
        return cy.lambda_series(self.G, self.p)

    def L(self, n: int) -> cy.Subgroup:
        return cy.lambda_term(self.lam, n)

    def N(self, n: int, k: int) -> cy.Subgroup:
        key = (n, k)
        if key not in self._n_cache:
            self._n_cache[key] = cy.n_subgroup(self.G, self.p, n, k, self.lcs)
        return self._n_cache[key]

    @cached_property
    def center(self):
        return cy.center(self.G)

    @cached_property
    def p_central(self) -> bool:
        return cy.is_p_central(self.G, self.p)

    @cached_property
    def exponent(self) -> int:
        return cy.exponent(self.G)

    @cached_property
    def log_exp(self) -> int:
        k, e = 0, self.exponent
        while e > 1:
            e //= self.p
            k += 1
        return k


class Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Fail(Exception):
    pass


def _elements(H: cy.Subgroup, limit: int = 8) -> str:
    els = H.elements.tolist()
    return str(els[:limit]) + ("..." if len(els) > limit else "")


def _gate(ctx: Context):
    if not ctx.p_central:
        raise Skip(f"not {ctx.p}-central")


def check_c1(ctx: Context) -> str:
    n_max = len(ctx.lam) + 1
    for n in range(1, n_max + 1):
        L, N = ctx.L(n), ctx.N(n, 1)
        if L != N:
            raise Fail(f"n={n}: |L_n|={L.order} but |N_(n,1)|={N.order}")
    return f"L_n = N_(n,1) for n=1..{n_max} (q={ctx.q}), orders {[ctx.L(n).order for n in range(1, n_max + 1)]}"


def check_c2(ctx: Context) -> str:
    G = ctx.G
    count = 0
    for n in range(1, MAX_N + 1):
        for k in range(1, n + 1):
            lhs = cy.commutator_subgroup(G, ctx.N(n, k), G.whole)
            rhs = ctx.N(n + 1, k + 1)
            if lhs != rhs:
                raise Fail(f"n={n}, k={k}: |[N_(n,k),G]|={lhs.order}, |N_(n+1,k+1)|={rhs.order}")
            count += 1
    return f"{count} pairs (n,k) with 1<=k<=n<={MAX_N} (q={ctx.q})"


def check_c3(ctx: Context) -> str:
    n = ctx.entry.scheme_n
    if n is None:
        raise Skip("not a free p-central scheme")
    step = 2 if ctx.p == 2 else 1
    for i in range(n + 1):
        om = cy.omega(ctx.G, ctx.p, step * i)
        L = ctx.L(n + 1 - i)
        if om != L:
            raise Fail(f"i={i}: |Omega_{step * i}|={om.order} but |L_{n + 1 - i}|={L.order}")
    return f"Omega_{step}i = L_(n+1-i) for i=0..{n}, n={n}"


def check_c4(ctx: Context) -> str:
    _gate(ctx)
    G = ctx.G
    lhs = cy.gamma(ctx.lcs, 2).exponent()
    rhs = cy.exponent(cy.quotient(G, ctx.center))
    if lhs != rhs:
        raise Fail(f"exp G' = {lhs} but exp G/Z(G) = {rhs}")
    return f"exp G' = exp G/Z(G) = {lhs}"


def check_c5(ctx: Context) -> str:
    _gate(ctx)
    G, p = ctx.G, ctx.p
    eps = 1 if p == 2 else 0
    ar = np.arange(G.order)
    comm = G.commutator(ar[:, None], ar[None, :])
    t = G.table
    checked = 0
    for i in range(ctx.log_exp + 1):
        level = i - eps
        if level < 0:
            continue
        mask = cy.omega(G, p, level).mask[comm]
        pw = G.power_map(p**i)
        bad = mask & (pw[t] != t[pw[:, None], pw[None, :]])
        if bad.any():
            x, y = map(int, np.argwhere(bad)[0])
            raise Fail(f"i={i}: x={x}, y={y} with [x,y] in Omega_{level} but (xy)^{p**i} != x^{p**i} y^{p**i}")
        checked += int(mask.sum())
    return f"{checked} (pair, i) instances, i=0..{ctx.log_exp}"


def check_c6(ctx: Context) -> str:
    _gate(ctx)
    if ctx.G.order > ctx.homology_limit:
        raise Skip(f"order {ctx.G.order} above homology limit {ctx.homology_limit}")
    m = h2_integral(ctx.G, cap=max(ctx.homology_limit, 1))
    if ctx.exponent % m.exponent:
        raise Fail(f"M(G) invariants {m}; exp M(G) = {m.exponent} does not divide exp G = {ctx.exponent}")
    return f"M(G) = [{m}], exp M(G) = {m.exponent} | exp G = {ctx.exponent}"


def check_c7(ctx: Context) -> str:
    _gate(ctx)
    E = exponent_semigroup(ctx.G, ctx.p)
    expected = 1 if (ctx.p == 2 and not ctx.G.is_abelian) else 0
    if E.exprank != expected:
        raise Fail(f"exprank {E.exprank} (e={E.e}, s={E.s}), expected {expected}")
    return f"exprank {E.exprank}, E(G) = {E}, e={E.e}"


def check_c8(ctx: Context) -> str:
    if ctx.p != 2:
        raise Skip("only for p = 2")
    _gate(ctx)
    n = ctx.log_exp
    idx = -(-n // 2) + 1
    L = ctx.L(idx)
    if not L.is_trivial():
        raise Fail(f"exp G = 2^{n} but |L_{idx}| = {L.order}: {_elements(L)}")
    return f"exp G = 2^{n}, L_{idx} = 1"


def _congruent(G, a: int, b: int, N: cy.Subgroup) -> bool:
    return int(G.table[G.inverses[a], b]) in N


def check_c9(ctx: Context) -> str:
    """Sampled congruences; every sub-statement is run and every first witness kept.

    ``power``       (xy)^(p^k) = x^(p^k) y^(p^k) modulo the power-commutator subgroup of <x, y>
    ``commutator``  [x^(p^k), y] = [x, y]^(p^k) modulo the same subgroup of <x, [x, y]>
    ``absorb``      (xy)^(4^(n-j)) = x^(4^(n-j)) mod N_{n+1,j} for y in gamma_j^4 gamma_{j+1}
    ``product``     (xy)^(4^(n-k+1)) = x^.. y^.. mod N_{n,k} & N_{n+1,k-1} for x, y in gamma_{k-1}
    """
    G, p = ctx.G, ctx.p
    seed = f"C9:{ctx.entry.id}"
    rng = random.Random(seed)
    t = G.table
    counts = {"power": 0, "commutator": 0, "absorb": 0, "product": 0}
    failures: list[str] = []

    def pick(H: cy.Subgroup) -> int:
        return int(H.elements[rng.randrange(H.order)])

    def record(key: str, ok: bool, witness: str) -> None:
        counts[key] += 1
        if not ok and not any(f.startswith(witness.split(":")[0] + ":") for f in failures):
            failures.append(witness)

    for _ in range(C9_SAMPLES):
        x, y = rng.randrange(G.order), rng.randrange(G.order)
        cxy = int(G.commutator(x, y))
        for k in (1, 2):
            pk = p**k
            N = _hall_petrescu_modulus(G, cy.subgroup_closure(G, [x, y]), p, k)
            lhs = G.power(int(t[x, y]), pk)
            rhs = int(t[G.power(x, pk), G.power(y, pk)])
            record("power", _congruent(G, lhs, rhs, N), f"power p^k={pk}: x={x}, y={y}")
            N2 = _hall_petrescu_modulus(G, cy.subgroup_closure(G, [x, cxy]), p, k)
            lhs = int(G.commutator(G.power(x, pk), y))
            record("commutator", _congruent(G, lhs, G.power(cxy, pk), N2), f"commutator p^k={pk}: x={x}, y={y}")
    notes = [f"seed={seed!r}"]
    if p == 2:
        for n in range(1, 4):
            for j in range(1, n + 1):
                gj = cy.gamma(ctx.lcs, j)
                yset = cy.join(G, cy.power_subgroup(G, 4, gj), cy.gamma(ctx.lcs, j + 1))
                mod = ctx.N(n + 1, j)
                e = 4 ** (n - j)
                for _ in range(C9_SAMPLES):
                    x, y = pick(gj), pick(yset)
                    ok = _congruent(G, G.power(int(t[x, y]), e), G.power(x, e), mod)
                    record("absorb", ok, f"absorb n={n} j={j}: x={x}, y={y}")
            for k in range(2, n + 1):
                gk = cy.gamma(ctx.lcs, k - 1)
                mod = ctx.N(n, k).intersection(ctx.N(n + 1, k - 1))
                e = 4 ** (n - k + 1)
                for _ in range(C9_SAMPLES):
                    x, y = pick(gk), pick(gk)
                    lhs = G.power(int(t[x, y]), e)
                    rhs = int(t[G.power(x, e), G.power(y, e)])
                    record(
                        "product",
                        _congruent(G, lhs, rhs, mod),
                        f"product n={n} k={k}: x={x}, y={y}, |modulus|={mod.order}",
                    )
        notes.append("absorb: x in gamma_j, y in gamma_j^4 gamma_(j+1)")
    else:
        notes.append("absorb and product apply to the 4-power series only (p = 2)")
    done = ", ".join(f"{k}:{v}" for k, v in counts.items())
    summary = f"{done}; " + "; ".join(notes)
    if failures:
        raise Fail("counterexamples " + " | ".join(failures) + f"; samples {summary}")
    return summary


def _hall_petrescu_modulus(G, H: cy.Subgroup, p: int, k: int) -> cy.Subgroup:
    """``gamma_2(H)^(p^k) * prod_{i=1..k} gamma_{p^i}(H)^(p^(k-i))``."""
    lcs = cy.lower_central(G, H)
    parts = [cy.power_subgroup(G, p**k, cy.gamma(lcs, 2))]
    for i in range(1, k + 1):
        parts.append(cy.power_subgroup(G, p ** (k - i), cy.gamma(lcs, p**i)))
    return cy.join(G, *parts)


def check_c10(ctx: Context) -> str:
    _gate(ctx)
    for i in range(ctx.log_exp + 1):
        om = cy.omega(ctx.G, ctx.p, i)
        s = cy.omega_set(ctx.G, ctx.p, i)
        if not np.array_equal(om.elements, s):
            extra = np.setdiff1d(om.elements, s)
            raise Fail(f"i={i}: Omega_{i} has {om.order} elements, the set has {s.size}; e.g. {extra[:4].tolist()}")
    return f"Omega_i is a set of elements of order | p^i for i=0..{ctx.log_exp}"


def check_c11(ctx: Context) -> str:
    G = ctx.G
    L = len(ctx.lam)
    count = 0
    for n in range(1, L + 1):
        for m in range(1, L + 1):
            target = ctx.L(n + m)
            pw = cy.power_subgroup(G, ctx.q**m, ctx.L(n))
            if not pw <= target:
                raise Fail(f"L_{n}^(q^{m}) (order {pw.order}) not in L_{n + m} (order {target.order})")
            cm = cy.commutator_subgroup(G, ctx.L(n), ctx.L(m))
            if not cm <= target:
                raise Fail(f"[L_{n}, L_{m}] (order {cm.order}) not in L_{n + m} (order {target.order})")
            count += 2
    return f"{count} inclusions for n, m in 1..{L} (q={ctx.q})"


CHECKS: dict[str, Callable[[Context], str]] = {
    "C1": check_c1,
    "C2": check_c2,
    "C3": check_c3,
    "C4": check_c4,
    "C5": check_c5,
    "C6": check_c6,
    "C7": check_c7,
    "C8": check_c8,
    "C9": check_c9,
    "C10": check_c10,
    "C11": check_c11,
}


def _check_key(cid: str) -> int:
    return int(cid[1:])


def run_entry(
    entry: CorpusEntry,
    checks: Sequence[str],
    homology_limit: int = DEFAULT_HOMOLOGY_LIMIT,
    timings: bool = False,
) -> list[CheckResult]:
    try:
        G = entry.load()
    except (PCentralError, OSError) as exc:
        raise PCentralError(f"cannot load corpus entry {entry.id}: {exc}") from exc
    ctx = Context(entry, G, homology_limit)
    results = []
    for cid in checks:
        start = time.perf_counter()
        try:
            status, detail = "pass", CHECKS[cid](ctx)
        except Skip as s:
            status, detail = "skipped", s.reason
        except Fail as f:
            status, detail = "fail", str(f)
        except PCentralError as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        ms = round((time.perf_counter() - start) * 1000, 1) if timings else None
        results.append(CheckResult(cid, entry.id, status, detail, ms))
    return results


def run_suite(
    corpus: Iterable[CorpusEntry],
    checks: Optional[Iterable[str]] = None,
    jobs: int = 1,
    homology_limit: int = DEFAULT_HOMOLOGY_LIMIT,
    timings: bool = False,
) -> list[CheckResult]:
    """Run ``checks`` (default: all) over ``corpus``; results sorted by (check, group)."""
    corpus = list(corpus)
    ids = [e.id for e in corpus]
    if len(set(ids)) != len(ids):
        raise PCentralError("corpus ids must be unique")
    checks = set(CHECKS if checks is None else checks)
    unknown = sorted(c for c in checks if c not in CHECKS)
    if unknown:
        raise PCentralError(f"unknown check id(s): {', '.join(unknown)}")
    checks = sorted(checks, key=_check_key)
    args = [(e, checks, homology_limit, timings) for e in corpus]
    if jobs > 1 and len(corpus) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_entry_star, args))
    else:
        batches = [run_entry(*a) for a in args]
    results = [r for batch in batches for r in batch]
    results.sort(key=lambda r: (_check_key(r.check), r.group))
    return results


def _run_entry_star(args):
    return run_entry(*args)


def write_report(results: Sequence[CheckResult], path) -> None:
    text = "".join(r.to_json() + "\n" for r in results)
    Path(path).write_text(text)


def summarize(results: Sequence[CheckResult]) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        out[r.status] += 1
    return out
