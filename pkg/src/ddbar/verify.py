"""Invariant suites run by ``ddbar verify``.

Each suite returns a :class:`SuiteResult`; a failure message names the
offending input so that it can be reproduced.
"""

import random
from dataclasses import dataclass, field

from .bicomplex import (StructureEquations, aeppli_numbers, bott_chern_numbers,
                        build_ce_bicomplex, del_cohomology_numbers, betti_numbers,
                        dolbeault_numbers)
from .constructions import (blow_up, delta_blow_up, delta_projectivize, exceptional_divisor,
                            heredity_lift, projectivize)
from .diamond import ManifoldModel, delta, is_ddbar, validate_model
from .linalg import GaussRational
from .registry import builtin, builtin_model, builtin_names

GRID = ["point", "torus:1", "torus:2", "torus:3", "cpn:1", "cpn:2", "iwasawa",
        "kodaira-thurston"]
CE_FIXTURES = ["iwasawa", "kodaira-thurston", "abelian:1", "abelian:2", "abelian:3"]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, cond, message):
        self.checks += 1
        if not cond:
            self.failures.append(message)

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status} ({self.checks} checks, {len(self.failures)} failures)"


def random_model(rng, n, max_entry=6, name="random"):
    """Structurally valid model with independent random entries (usually not realizable)."""
    return ManifoldModel.from_lists(
        name, n, [rng.randint(0, max_entry) for _ in range(2 * n + 1)],
        [[rng.randint(0, max_entry) for _ in range(n + 1)] for _ in range(n + 1)])


def _small_gauss(rng, allow_zero=True):
    while True:
        x = GaussRational(rng.randint(-2, 2), rng.randint(-1, 1))
        if x or allow_zero:
            return x


def random_structure(rng):
    """Random 2-step nilpotent structure equations of dimension 2 or 3.

    Only ``phi_1``, ``phi_2`` (and conjugates) appear on the right-hand side and
    those two are closed, which makes ``d^2 = 0`` automatic.
    """
    m = rng.choice((2, 3))
    if m == 2:
        return StructureEquations(2, terms11=[(2, 1, 1, _small_gauss(rng, allow_zero=False))],
                                  name="random-ks")
    t20 = [(3, 1, 2, _small_gauss(rng))]
    t11 = [(3, b, c, _small_gauss(rng)) for b in (1, 2) for c in (1, 2)]
    return StructureEquations(3, terms20=[t for t in t20 if t[3]],
                              terms11=[t for t in t11 if t[3]], name="random-2step")


def admissible_pairs(names=GRID, max_codim=4):
    models = [builtin_model(n) for n in names]
    for x in models:
        for y in models:
            r = x.n - y.n
            if 2 <= r <= max_codim:
                yield x, y, r


def delta_nonneg(seed=0, count=0):
    """Every builtin passes validation; in particular no degree is negative."""
    res = SuiteResult("delta-nonneg")
    for name in builtin_names() + ["torus:5", "abelian:1", "abelian:2", "abelian:3"]:
        m = builtin_model(name)
        report = validate_model(m)
        res.check(report.ok, f"{name}: {report}")
        res.check(all(x >= 0 for x in delta(m)), f"{name}: negative degree {delta(m).delta}")
    return res


def route_independence(seed=0, count=1000):
    res = SuiteResult("route-independence")
    rng = random.Random(seed)
    for i in range(count):
        m = random_model(rng, rng.randint(0, 4))
        r = rng.randint(1, 5)
        lhs = delta(projectivize(m, r))
        rhs = delta_projectivize(delta(m), r, m.n)
        res.check(lhs == rhs, f"projectivize sample {i}: {m} r={r}: {lhs.delta} != {rhs.delta}")

        nx = rng.randint(2, 6)
        r = rng.randint(2, nx)
        x = random_model(rng, nx)
        y = random_model(rng, nx - r)
        lhs = delta(blow_up(x, y, r, strict=False))
        rhs = delta_blow_up(delta(x), delta(y), r)
        res.check(lhs == rhs, f"blow-up sample {i}: {x} / {y} r={r}: {lhs.delta} != {rhs.delta}")
    return res


def prop22(seed=0, count=0):
    """Projective bundles and the heredity lift preserve the verdict both ways."""
    res = SuiteResult("prop22")
    for name in GRID:
        m = builtin_model(name)
        base = is_ddbar(m)
        for r in range(1, 5):
            res.check(is_ddbar(projectivize(m, r)) == base,
                      f"projectivize({name}, {r}) verdict differs from base ({base})")
        for k in (1, 2, 3):
            ambient, codim = heredity_lift(m, 1, k)
            res.check(codim == 1 + k and ambient.n == m.n + k,
                      f"heredity_lift({name}, 1, {k}) bookkeeping: codim {codim}, dim {ambient.n}")
            res.check(is_ddbar(ambient) == base,
                      f"heredity_lift({name}, 1, {k}) verdict differs from base ({base})")
    return res


def prop23(seed=0, count=0):
    """Blow-up verdict equals ambient AND center, and ambient AND exceptional divisor."""
    res = SuiteResult("prop23")
    for x, y, r in admissible_pairs():
        bl = is_ddbar(blow_up(x, y, r))
        res.check(bl == (is_ddbar(x) and is_ddbar(y)),
                  f"blow_up({x.name}, {y.name}, {r}): {bl} vs ambient/center")
        res.check(bl == (is_ddbar(x) and is_ddbar(exceptional_divisor(y, r))),
                  f"blow_up({x.name}, {y.name}, {r}): {bl} vs ambient/exceptional divisor")
    return res


def _ce_sample(seed, count):
    rng = random.Random(seed)
    items = [(name, builtin(name)) for name in CE_FIXTURES]
    items += [(f"random[{i}]", random_structure(rng)) for i in range(count)]
    return items


def duality(seed=0, count=20):
    res = SuiteResult("duality")
    for name, S in _ce_sample(seed, count):
        B = build_ce_bicomplex(S)
        n = B.n
        bc, ae = bott_chern_numbers(B), aeppli_numbers(B)
        dol, dol_conj = dolbeault_numbers(B), del_cohomology_numbers(B)
        for p in range(n + 1):
            for q in range(n + 1):
                res.check(ae[n - p, n - q] == bc[p, q],
                          f"{name}: aeppli({n - p},{n - q}) = {ae[n - p, n - q]} "
                          f"!= bott_chern({p},{q}) = {bc[p, q]}")
                res.check(bc[p, q] == bc[q, p], f"{name}: bott_chern not symmetric at ({p},{q})")
                res.check(dol_conj[p, q] == dol[q, p],
                          f"{name}: del-cohomology({p},{q}) != dolbeault({q},{p})")
    return res


def froelicher(seed=0, count=20):
    res = SuiteResult("froelicher")
    for name, S in _ce_sample(seed, count):
        B = build_ce_bicomplex(S)
        b, dol = betti_numbers(B), dolbeault_numbers(B)
        for k in range(2 * B.n + 1):
            res.check(dol.total(k) >= b[k],
                      f"{name}: sum of Dolbeault numbers in degree {k} is {dol.total(k)} < b_{k} = {b[k]}")
    return res


SUITES = {
    "delta-nonneg": delta_nonneg,
    "route-independence": route_independence,
    "prop22": prop22,
    "prop23": prop23,
    "duality": duality,
    "froelicher": froelicher,
}


def run_suite(name, seed=0, count=None):
    fn = SUITES[name]
    return fn(seed=seed) if count is None else fn(seed=seed, count=count)
