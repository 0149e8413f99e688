"""Exit criteria.  Each test records one PASS/FAIL line, printed in the terminal summary."""

import io
import json
import os
import random
import time
from math import comb

from conftest import FIXTURES, GOLDEN, RESULTS
from goldens import GOLDENS
from ddbar.bicomplex import (Bicomplex, aeppli_numbers, betti_numbers, bott_chern_numbers,
                             build_ce_bicomplex, dolbeault_numbers, summarize)
from ddbar.cli import main
from ddbar.constructions import (BlowupStep, blow_up, evaluate_blowup_sequence,
                                 exceptional_divisor, heredity_lift, projectivize)
from ddbar.diamond import is_ddbar
from ddbar.registry import abelian, builtin_model, dumps_model, iwasawa, kodaira_thurston
from ddbar.verify import (GRID, admissible_pairs, delta_nonneg, random_structure,
                          route_independence)


def record(number, ok, text):
    RESULTS[number] = (bool(ok), text)
    assert ok, text


def test_1_abelian_closed_forms():
    t0 = time.perf_counter()
    ok = True
    for m in (1, 2, 3):
        B = build_ce_bicomplex(abelian(m))
        b, bc = betti_numbers(B), bott_chern_numbers(B)
        ok &= b.b == tuple(comb(2 * m, k) for k in range(2 * m + 1))
        ok &= all(v == comb(m, p) * comb(m, q) for (p, q), v in bc.items())
    elapsed = time.perf_counter() - t0
    record(1, ok and elapsed < 1.0,
           f"abelian m=1..3 binomial Betti/Bott-Chern tables, {elapsed:.3f}s (limit 1s)")


def test_2_iwasawa():
    t0 = time.perf_counter()
    B = build_ce_bicomplex(iwasawa())
    s = summarize(B, "iwasawa")
    elapsed = time.perf_counter() - t0
    with open(os.path.join(GOLDEN, "ce_iwasawa.json"), encoding="utf-8") as f:
        golden = json.load(f)
    ok = (sum(B.spaces.values()) == 64
          and s.betti[1] == 4 and s.dolbeault[1, 0] == 3 and s.dolbeault[0, 1] == 2
          and s.bott_chern[1, 0] == 2
          and all(x >= 0 for x in s.delta) and any(x > 0 for x in s.delta)
          and s.ddbar_verdict is False
          and golden["betti"] == list(s.betti.b)
          and golden["bott_chern"] == [list(r) for r in s.bott_chern.h]
          and golden["dolbeault"] == [list(r) for r in s.dolbeault.h]
          and golden["aeppli"] == [list(r) for r in s.aeppli.h])
    record(2, ok and elapsed < 5.0,
           f"Iwasawa b_1=4, h_dbar(1,0)=3, h_dbar(0,1)=2, h_BC(1,0)=2, "
           f"delta={s.delta.delta}, verdict false, {elapsed:.3f}s (limit 5s)")


def test_3_delta_nonneg():
    res = delta_nonneg()
    out = io.StringIO()
    code = main(["verify", "delta-nonneg"], out=out, err=io.StringIO())
    record(3, res.ok and code == 0, f"verify delta-nonneg: {res.summary()}")


def test_4_route_independence():
    t0 = time.perf_counter()
    res = route_independence(seed=2024, count=1000)
    elapsed = time.perf_counter() - t0
    record(4, res.ok and res.checks == 2000 and elapsed < 10.0,
           f"1000 seeded models per route, exact equality: {res.summary()}, "
           f"{elapsed:.3f}s (limit 10s)")


def test_5_prop_equivalences():
    failures, checks = [], 0
    for x, y, r in admissible_pairs(GRID, max_codim=4):
        checks += 1
        if is_ddbar(blow_up(x, y, r)) != (is_ddbar(x) and is_ddbar(y)):
            failures.append(f"blow_up({x.name}, {y.name}, {r})")
    for name in GRID:
        m = builtin_model(name)
        for r in range(1, 5):
            checks += 1
            if is_ddbar(projectivize(m, r)) != is_ddbar(m):
                failures.append(f"projectivize({name}, {r})")
    record(5, not failures and checks > len(GRID),
           f"{checks} blow-up/projective-bundle equivalences, failures: {failures or 'none'}")


def test_6_corollary():
    failures, checks = [], 0
    for x, y, r in admissible_pairs(GRID, max_codim=4):
        checks += 1
        if is_ddbar(blow_up(x, y, r)) != (is_ddbar(x) and is_ddbar(exceptional_divisor(y, r))):
            failures.append(f"blow_up({x.name}, {y.name}, {r})")
    record(6, not failures and checks > 0,
           f"{checks} exceptional-divisor equivalences, failures: {failures or 'none'}")


def test_7_heredity_lift():
    failures, checks = [], 0
    for name in GRID:
        x = builtin_model(name)
        for codim_y in (1, 2):
            for k in (1, 2, 3):
                checks += 1
                ambient, codim = heredity_lift(x, codim_y, k)
                if codim != codim_y + k or is_ddbar(ambient) != is_ddbar(x):
                    failures.append(f"heredity_lift({name}, {codim_y}, {k})")
    record(7, not failures, f"{checks} lifts, failures: {failures or 'none'}")


def test_8_duality_symmetry_froelicher():
    rng = random.Random(8)
    unimodular = [iwasawa(), kodaira_thurston(), abelian(1), abelian(2), abelian(3)]
    ce = unimodular + [random_structure(rng) for _ in range(10)]
    failures = []
    for S in ce:
        B = build_ce_bicomplex(S)
        n = B.n
        bc, ae = bott_chern_numbers(B), aeppli_numbers(B)
        if any(ae[n - p, n - q] != bc[p, q] or bc[p, q] != bc[q, p]
               for p in range(n + 1) for q in range(n + 1)):
            failures.append(f"duality/symmetry on {S.name}")
    tested = [build_ce_bicomplex(S) for S in ce]
    tested += [Bicomplex(2, {(p, q): rng.randint(0, 3) for p in range(3) for q in range(3)})
               for _ in range(5)]
    for B in tested:
        b, dol = betti_numbers(B), dolbeault_numbers(B)
        if any(dol.total(k) < b[k] for k in range(2 * B.n + 1)):
            failures.append("Froelicher inequality")
    record(8, not failures,
           f"{len(ce)} CE complexes for duality/symmetry, {len(tested)} bicomplexes for "
           f"Froelicher, failures: {failures or 'none'}")


def test_9_round_trip():
    cases = [("torus:3", "torus:1", 2), ("torus:3", "point", 3), ("torus:5", "iwasawa", 2),
             ("cpn:2", "point", 2)]
    failures = []
    for start, center, r in cases:
        x, y = builtin_model(start), builtin_model(center)
        out = evaluate_blowup_sequence(x, [BlowupStep("up", y, r), BlowupStep("down", y, r)])
        if dumps_model(out[-1].model).encode() != dumps_model(x).encode():
            failures.append(f"{start} along {center}")
    record(9, not failures, f"{len(cases)} up/down round trips byte-identical, "
                            f"failures: {failures or 'none'}")


def test_10_cli_goldens():
    failures = []
    for fname, argv in sorted(GOLDENS.items()):
        out = io.StringIO()
        code = main([a.format(fixtures=FIXTURES) for a in argv], out=out, err=io.StringIO())
        with open(os.path.join(GOLDEN, fname), encoding="utf-8") as f:
            if code != 0 or out.getvalue() != f.read():
                failures.append(fname)
    commands = {argv[0] for argv in GOLDENS.values()}
    record(10, not failures and {"inspect", "construct", "ce-compute"} <= commands,
           f"{len(GOLDENS)} golden outputs byte-for-byte, failures: {failures or 'none'}")
