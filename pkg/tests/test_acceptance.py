"""Acceptance criteria 1 to 12, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` to see the lines; ``--slow``
extends criterion 7 to groups of order 32.
"""

import io
import math
import random
import time
from contextlib import redirect_stdout
from itertools import combinations, permutations

import numpy as np
import pytest

from pcentral.cayley import (
    builtin_group,
    center,
    commutator_subgroup,
    exponent,
    is_p_central,
    lambda_series,
    lambda_term,
    lower_central,
    n_subgroup,
    omega,
    quotient,
)
from pcentral.cli import main
from pcentral.collection import NormalForm, magnus_image
from pcentral import commutators
from pcentral.commutators import basic_commutators, witt_count
from pcentral.freepcentral import construct_free_pcentral, fpc_enumerate
from pcentral.homology import (
    IntegerMatrix,
    check_exp_multiplier,
    h2_integral,
    multiplier_free_pcentral,
    smith_normal_form,
)
from pcentral.semigroup import exponent_semigroup, is_power_endomorphism
from pcentral.verify import default_corpus


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[AC {n}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def corpus():
    return [(e, e.load()) for e in default_corpus()]


def _lyndon_count(r, w):
    """Aperiodic necklaces by brute force: words that are strictly smallest among their rotations."""
    count = 0
    for word in np.ndindex(*([r] * w)):
        rots = [word[i:] + word[:i] for i in range(1, w)]
        if all(word < rot for rot in rots):
            count += 1
    return count


def test_ac01_witt_counts(report):
    start = time.perf_counter()
    commutators._cached_table.cache_clear()  # time a cold enumeration
    bad = []
    for r in range(1, 5):
        table = basic_commutators(r, 6)
        for w in range(1, 7):
            formula = witt_count(r, w)
            enumerated = len(table.ids_of_weight(w))
            oracle = _lyndon_count(r, w)
            if not formula == enumerated == oracle:
                bad.append((r, w, formula, enumerated, oracle))
    elapsed = time.perf_counter() - start
    ok = not bad and witt_count(2, 3) == 2 and witt_count(3, 3) == 8 and elapsed < 1.0
    report(1, ok, f"Witt formula = enumeration = necklace count for r<=4, w<=6 in {elapsed:.2f}s {bad or ''}")


def test_ac02_collection(report):
    start = time.perf_counter()
    rng = random.Random("AC2")
    pairs = assoc = inverses = 0
    bad = []
    for r, c in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)]:
        T = basic_commutators(r, c)
        rand = lambda: NormalForm(T, tuple(rng.randint(-3, 3) for _ in range(len(T))))
        for _ in range(100):
            u, v, w = rand(), rand(), rand()
            if magnus_image(u * v) != magnus_image(u) * magnus_image(v):
                bad.append(("magnus", r, c, u, v))
            pairs += 1
            if (u * v) * w != u * (v * w):
                bad.append(("assoc", r, c, u, v, w))
            assoc += 1
            if not (u * u.inverse()).is_identity() or not (u.inverse() * u).is_identity():
                bad.append(("inverse", r, c, u))
            inverses += 1
    elapsed = time.perf_counter() - start
    ok = not bad and pairs >= 500 and elapsed < 30
    report(2, ok, f"{pairs} Magnus pairs, {assoc} triples, {inverses} inverses in {elapsed:.1f}s {bad[:1] or ''}")


def test_ac03_free_pcentral_orders(report):
    start = time.perf_counter()
    rows = []
    ok = True
    for p, n, order, exp in [(2, 1, 16, 4), (2, 2, 1024, 16), (3, 2, 243, 9)]:
        s = construct_free_pcentral(p, 2, n)
        q = 4 if p == 2 else p
        formula = q ** sum(witt_count(2, w) * (n + 1 - w) for w in range(1, n + 1))
        G = fpc_enumerate(s)
        scanned = int(np.lcm.reduce(G.element_orders))
        ok &= formula == s.order == G.order == order and scanned == exp == q**n
        rows.append(f"{s.name}: {G.order}/{scanned}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    report(3, ok, f"{', '.join(rows)} in {elapsed:.1f}s")


def test_ac04_omega_lambda(report, g2_p2):
    om = omega(g2_p2, 2, 2)
    lam2 = lambda_term(lambda_series(g2_p2, 2), 2)
    ok = om == lam2 and om.order == 64 == 4 ** (witt_count(2, 1) + witt_count(2, 2))
    report(4, ok, f"Omega_2 = lambda_2 in 2G2(p=2), order {om.order}")


def test_ac05_series_identities(report, corpus):
    bad = []
    groups = 0
    for e, G in corpus:
        if e.p != 2 or G.order > 1024:
            continue
        groups += 1
        lam = lambda_series(G, 2)
        lcs = lower_central(G)
        for n in range(1, len(lam) + 2):
            if lambda_term(lam, n) != n_subgroup(G, 2, n, 1, lcs):
                bad.append((e.id, "L=N", n))
        for n in range(1, 5):
            for k in range(1, n + 1):
                lhs = commutator_subgroup(G, n_subgroup(G, 2, n, k, lcs), G.whole)
                if lhs != n_subgroup(G, 2, n + 1, k + 1, lcs):
                    bad.append((e.id, "[N,G]", n, k))
    report(5, not bad and groups > 0, f"{groups} 2-groups, lambda_n = N_n,1 and [N_n,k, G] = N_n+1,k+1 {bad[:3] or ''}")


def test_ac06_multiplier(report):
    start = time.perf_counter()
    got = {}
    for p in (2, 3):
        G = fpc_enumerate(construct_free_pcentral(p, 2, 1))
        got[p] = (h2_integral(G).factors, multiplier_free_pcentral(p, 2, 1).factors)
    klein = h2_integral(builtin_group("abelian", 2, 2)).factors
    cyclics = [h2_integral(builtin_group("cyclic", n)).factors for n in (2, 4, 8, 16, 3, 9)]
    elapsed = time.perf_counter() - start
    ok = (
        got[2] == ((4,), (4,))
        and got[3] == ((3,), (3,))
        and klein == (2,)
        and all(c == () for c in cyclics)
        and elapsed < 120
    )
    report(6, ok, f"1G2: oracle/formula p=2 {got[2]}, p=3 {got[3]}; H2(C2xC2)={klein}; cyclic trivial; {elapsed:.1f}s")


def test_ac07_exp_multiplier(report, corpus, slow_enabled):
    limit = 32 if slow_enabled else 16
    groups = [(e.id, G, e.p) for e, G in corpus]
    if slow_enabled:
        for ns in [(2, 4, 4), (4, 8), (2, 16)]:
            groups.append(("x".join(f"C{n}" for n in ns), builtin_group("abelian", *ns), 2))
    checked, bad = [], []
    for gid, G, p in groups:
        if G.order > limit or not is_p_central(G, p):
            continue
        checked.append(gid)
        if not check_exp_multiplier(G, p, cap=limit):
            bad.append(gid)
    report(7, not bad and len(checked) >= 10, f"exp M(G) | exp G on {len(checked)} p-central groups of order <= {limit} {bad or ''}")


def test_ac08_exprank(report, corpus, g2_p2, g2_p3):
    start = time.perf_counter()
    E2 = exponent_semigroup(g2_p2, 2)
    residues = [n for n in range(16) if is_power_endomorphism(g2_p2, n)]
    E3 = exponent_semigroup(g2_p3, 3)
    abelian_ranks = {e.id: exponent_semigroup(G, e.p).exprank for e, G in corpus if G.is_abelian}
    elapsed = time.perf_counter() - start
    ok = (
        E2.exprank == 1
        and residues == [0, 1, 8, 9]
        and str(E2) == "8Z u (8Z+1)"
        and E3.exprank == 0
        and set(abelian_ranks.values()) == {0}
        and elapsed < 60
    )
    report(8, ok, f"2G2(p=2): E = {E2}, exprank {E2.exprank}; 2G2(p=3): exprank {E3.exprank}; {len(abelian_ranks)} abelian: 0; {elapsed:.1f}s")


def _log(p, n):
    return round(math.log(n, p))


def test_ac09_laffey_and_power_lemma(report, corpus):
    bad = []
    groups = 0
    for e, G in corpus:
        p = e.p
        if G.order > 1024 or not is_p_central(G, p):
            continue
        groups += 1
        derived = commutator_subgroup(G, G.whole, G.whole)
        if derived.exponent() != exponent(quotient(G, center(G))):
            bad.append((e.id, "exp derived vs exp G/Z"))
        eps = 1 if p == 2 else 0
        ar = np.arange(G.order)
        comm = G.commutator(ar[:, None], ar[None, :])
        t = G.table
        for i in range(eps, _log(p, exponent(G)) + 1):
            # pairs whose commutator has order dividing p^(i - eps)
            hyp = G.power_map(p ** (i - eps))[comm] == 0
            pw = G.power_map(p**i)
            if (hyp & (pw[t] != t[pw[:, None], pw[None, :]])).any():
                bad.append((e.id, "power lemma", i))
    report(9, not bad and groups > 0, f"exp G' = exp G/Z and the p^i power identity hold on {groups} p-central groups {bad[:3] or ''}")


def test_ac10_lambda_vanishing(report, corpus):
    bad, checked = [], []
    for e, G in corpus:
        if e.p != 2 or not is_p_central(G, 2):
            continue
        n = _log(2, exponent(G))
        idx = -(-n // 2) + 1
        checked.append(e.id)
        if not lambda_term(lambda_series(G, 2), idx).is_trivial():
            bad.append((e.id, n))
    report(10, not bad and checked, f"lambda_(ceil(n/2)+1) = 1 on {len(checked)} 2-central groups {bad or ''}")


def _det(a):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        sign = (-1) ** sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += sign * math.prod(a[i][perm[i]] for i in range(n))
    return total


def test_ac11_snf(report):
    rng = random.Random("AC11")
    bad = []
    for trial in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        factors, rank = smith_normal_form(IntegerMatrix.from_rows(rows))
        nz = factors[:rank]
        if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)) or any(factors[rank:]):
            bad.append(("chain", rows))
        for k in range(1, min(m, n) + 1):
            g = 0
            for rs in combinations(range(m), k):
                for cs in combinations(range(n), k):
                    g = math.gcd(g, _det([[rows[i][j] for j in cs] for i in rs]))
            if math.prod(factors[:k]) != g:
                bad.append(("minors", rows, k))
    report(11, not bad, f"200 random matrices: divisibility chain and minor gcds {bad[:1] or ''}")


def _verify(tmp_path, tag, *extra):
    path = tmp_path / f"{tag}.jsonl"
    with redirect_stdout(io.StringIO()) as out:
        code = main(["verify", "--corpus", "builtin", "--report", str(path), *extra])
    return code, path.read_bytes(), out.getvalue()


@pytest.fixture(scope="module")
def verify_runs(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("ac12")
    return [_verify(tmp, "a"), _verify(tmp, "b"), _verify(tmp, "c", "--jobs", "4")]


def test_ac12_report_is_deterministic(verify_runs):
    reports = {r[1] for r in verify_runs}
    assert len(reports) == 1
    assert len({r[0] for r in verify_runs}) == 1


def test_ac12_builtin_verify(report, verify_runs):
    code, data, out = verify_runs[0]
    identical = len({r[1] for r in verify_runs}) == 1
    fails = [line for line in out.splitlines() if line.startswith("FAIL ")]
    ok = code == 0 and not fails and identical
    detail = f"exit {code}; report byte-identical across runs and --jobs: {'yes' if identical else 'no'}"
    if fails:
        detail += "; " + " | ".join(fails)
    report(12, ok, detail)
