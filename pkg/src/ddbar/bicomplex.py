"""Finite double complexes and their cohomology dimensions.

A :class:`Bicomplex` holds bigraded spaces ``A^{p,q}`` (``0 <= p, q <= n``)
together with matrices for ``del: A^{p,q} -> A^{p+1,q}`` and
``delbar: A^{p,q} -> A^{p,q+1}`` over Q(i).  Missing matrices are zero maps.
All dimensions are computed from exact ranks.

:func:`build_ce_bicomplex` turns the structure equations of a nilpotent Lie
algebra with a complex structure into the double complex of invariant forms
on the associated nilmanifold.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .diamond import (BettiVector, BigradedTable, DeltaVector, ManifoldModel,
                      ValidationReport, delta, is_ddbar)
from .errors import BicomplexError
from .linalg import ZERO, GaussRational, Matrix, exact_rank, hstack, vstack


class Bicomplex:
    """Bigraded spaces with two anticommuting differentials.

    ``spaces[p, q]`` is the dimension of ``A^{p,q}``; ``dell[p, q]`` and
    ``delbar[p, q]`` are matrices acting on column vectors of ``A^{p,q}``.
    """

    def __init__(self, n, spaces, dell=None, delbar=None):
        self.n = n
        self.spaces = {(p, q): int(spaces.get((p, q), 0))
                       for p in range(n + 1) for q in range(n + 1)}
        self.dell = dict(dell or {})
        self.delbar = dict(delbar or {})

    def dim(self, p, q):
        return self.spaces.get((p, q), 0)

    def del_map(self, p, q):
        return self.dell.get((p, q)) or Matrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def delbar_map(self, p, q):
        return self.delbar.get((p, q)) or Matrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    def ddbar_map(self, p, q):
        """``del o delbar : A^{p,q} -> A^{p+1,q+1}``."""
        return self.del_map(p, q + 1) @ self.delbar_map(p, q)

    def total_dim(self, k):
        return sum(self.dim(p, k - p) for p in range(self.n + 1))

    def total_differential(self, k):
        """``d = del + delbar`` from total degree ``k`` to ``k + 1`` as one block matrix."""
        src = [(p, k - p) for p in range(self.n + 1) if 0 <= k - p <= self.n]
        dst = [(p, k + 1 - p) for p in range(self.n + 1) if 0 <= k + 1 - p <= self.n]
        col_off, off = {}, 0
        for pq in src:
            col_off[pq] = off
            off += self.dim(*pq)
        ncols = off
        row_off, off = {}, 0
        for pq in dst:
            row_off[pq] = off
            off += self.dim(*pq)
        D = Matrix.zeros(off, ncols)
        for p, q in src:
            for target, block in (((p + 1, q), self.del_map(p, q)),
                                  ((p, q + 1), self.delbar_map(p, q))):
                if target not in row_off:
                    continue
                r0, c0 = row_off[target], col_off[(p, q)]
                for i, row in enumerate(block.rows):
                    for j, x in enumerate(row):
                        if x:
                            D.rows[r0 + i][c0 + j] = x
        return D


def validate_bicomplex(B):
    """Check matrix shapes and the identities del^2 = delbar^2 = del delbar + delbar del = 0."""
    v = []
    for name, maps, step in (("del", B.dell, (1, 0)), ("delbar", B.delbar, (0, 1))):
        for (p, q), M in maps.items():
            expect = (B.dim(p + step[0], q + step[1]), B.dim(p, q))
            if not (0 <= p <= B.n and 0 <= q <= B.n):
                v.append(("shape", f"{name} defined outside the grid at ({p},{q})"))
            elif M.shape != expect:
                v.append(("shape", f"{name} at ({p},{q}) has shape {M.shape}, expected {expect}"))
    if v:
        return ValidationReport(tuple(v))
    for p in range(B.n + 1):
        for q in range(B.n + 1):
            if not (B.del_map(p + 1, q) @ B.del_map(p, q)).is_zero():
                v.append(("del-squared", f"del o del != 0 on A^{{{p},{q}}}"))
            if not (B.delbar_map(p, q + 1) @ B.delbar_map(p, q)).is_zero():
                v.append(("delbar-squared", f"delbar o delbar != 0 on A^{{{p},{q}}}"))
            anti = (B.del_map(p, q + 1) @ B.delbar_map(p, q)) + \
                   (B.delbar_map(p + 1, q) @ B.del_map(p, q))
            if not anti.is_zero():
                v.append(("anticommute", f"del delbar + delbar del != 0 on A^{{{p},{q}}}"))
    return ValidationReport(tuple(v))


def _require_valid(B):
    report = validate_bicomplex(B)
    if not report.ok:
        raise BicomplexError("invalid-bicomplex", str(report))


def betti_numbers(B, check=True):
    if check:
        _require_valid(B)
    ranks = [exact_rank(B.total_differential(k)) for k in range(2 * B.n + 1)]
    return BettiVector(B.n, tuple(B.total_dim(k) - ranks[k] - (ranks[k - 1] if k else 0)
                                  for k in range(2 * B.n + 1)))


def dolbeault_numbers(B, check=True):
    if check:
        _require_valid(B)
    rank = {(p, q): exact_rank(B.delbar_map(p, q))
            for p in range(B.n + 1) for q in range(B.n + 1)}
    return BigradedTable.from_function(
        B.n, lambda p, q: B.dim(p, q) - rank[p, q] - rank.get((p, q - 1), 0))


def del_cohomology_numbers(B, check=True):
    """Dimensions of the cohomology of ``del`` alone (the conjugate Dolbeault numbers)."""
    if check:
        _require_valid(B)
    rank = {(p, q): exact_rank(B.del_map(p, q))
            for p in range(B.n + 1) for q in range(B.n + 1)}
    return BigradedTable.from_function(
        B.n, lambda p, q: B.dim(p, q) - rank[p, q] - rank.get((p - 1, q), 0))


def bott_chern_numbers(B, check=True):
    """``dim (ker del ∩ ker delbar) - rank(del delbar)`` in each bidegree."""
    if check:
        _require_valid(B)

    def h(p, q):
        closed = B.dim(p, q) - exact_rank(vstack(B.del_map(p, q), B.delbar_map(p, q)))
        exact = exact_rank(B.ddbar_map(p - 1, q - 1)) if p and q else 0
        return closed - exact

    return BigradedTable.from_function(B.n, h)


def aeppli_numbers(B, check=True):
    """``dim ker(del delbar) - dim(im del + im delbar)`` in each bidegree."""
    if check:
        _require_valid(B)

    def h(p, q):
        kernel = B.dim(p, q) - exact_rank(B.ddbar_map(p, q))
        incoming = [M for M in (B.del_map(p - 1, q) if p else None,
                                B.delbar_map(p, q - 1) if q else None) if M is not None]
        image = exact_rank(hstack(*incoming)) if incoming else 0
        return kernel - image

    return BigradedTable.from_function(B.n, h)


# -- Chevalley-Eilenberg complexes -------------------------------------------

@dataclass(frozen=True)
class StructureEquations:
    """Structure constants of a complex nilpotent Lie algebra, 1-based generators.

    ``terms20`` holds ``(a, b, c, coeff)`` meaning ``d phi_a += coeff * phi_b ^ phi_c``;
    ``terms11`` holds ``(a, b, c, coeff)`` meaning ``d phi_a += coeff * phi_b ^ conj(phi_c)``;
    ``terms02`` exists only so that non-integrable input can be represented and refused.
    """

    m: int
    terms20: tuple = ()
    terms11: tuple = ()
    terms02: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for kind in ("terms20", "terms11", "terms02"):
            terms = tuple((int(a), int(b), int(c), GaussRational.coerce(x))
                          for a, b, c, x in getattr(self, kind))
            for a, b, c, _ in terms:
                if not all(1 <= i <= self.m for i in (a, b, c)):
                    raise BicomplexError("index-out-of-range",
                                         f"term ({a},{b},{c}) with m = {self.m}")
            object.__setattr__(self, kind, terms)


def _sort_with_sign(idx):
    """Sort a wedge monomial; return (sign, sorted tuple), sign 0 on a repeated index."""
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    if any(idx[i] == idx[i + 1] for i in range(len(idx) - 1)):
        return 0, None
    return sign, tuple(idx)


def _generator_differentials(S):
    """``d`` of each of the 2m generators as {sorted pair: coeff}.

    Generator ``a-1`` is phi_a and ``m+a-1`` is conj(phi_a), so the sorted order of
    a monomial lists holomorphic factors first, each group increasing.
    """
    m = S.m
    d = [dict() for _ in range(2 * m)]

    def add(target, i, j, coeff):
        sign, key = _sort_with_sign((i, j))
        if sign:
            d[target][key] = d[target].get(key, ZERO) + coeff * sign

    for a, b, c, x in S.terms20:
        add(a - 1, b - 1, c - 1, x)
        add(m + a - 1, m + b - 1, m + c - 1, x.conjugate())
    for a, b, c, x in S.terms11:
        add(a - 1, b - 1, m + c - 1, x)
        add(m + a - 1, m + b - 1, c - 1, x.conjugate())
    for a, b, c, x in S.terms02:
        add(a - 1, m + b - 1, m + c - 1, x)
        add(m + a - 1, b - 1, c - 1, x.conjugate())
    return [{k: v for k, v in t.items() if v} for t in d]


def _d_monomial(mono, gen_d):
    """Apply d as a graded derivation to a sorted monomial; returns {monomial: coeff}."""
    out = {}
    for s, g in enumerate(mono):
        sign = -1 if s % 2 else 1
        for pair, coeff in gen_d[g].items():
            new = mono[:s] + pair + mono[s + 1:]
            sgn, key = _sort_with_sign(new)
            if sgn:
                out[key] = out.get(key, ZERO) + coeff * (sign * sgn)
    return {k: v for k, v in out.items() if v}


def ce_basis(m, p, q):
    """Basis of Λ^{p,q} as sorted generator tuples, in lexicographic order on (I, J)."""
    return [tuple(i - 1 for i in I) + tuple(m + j - 1 for j in J)
            for I in combinations(range(1, m + 1), p)
            for J in combinations(range(1, m + 1), q)]


def build_ce_bicomplex(S):
    """Double complex of invariant forms for the structure equations ``S``.

    Raises ``not-integrable`` on (0,2)-terms and ``jacobi-violation`` when the
    induced ``d`` does not square to zero.
    """
    if S.terms02:
        raise BicomplexError("not-integrable",
                             f"{len(S.terms02)} (0,2)-term(s) in the structure equations")
    m = S.m
    gen_d = _generator_differentials(S)
    bases = {(p, q): ce_basis(m, p, q) for p in range(m + 1) for q in range(m + 1)}
    index = {pq: {mono: i for i, mono in enumerate(basis)} for pq, basis in bases.items()}
    dell, delbar = {}, {}
    for (p, q), basis in bases.items():
        D = Matrix.zeros(len(bases.get((p + 1, q), [])), len(basis))
        Db = Matrix.zeros(len(bases.get((p, q + 1), [])), len(basis))
        for j, mono in enumerate(basis):
            for img, coeff in _d_monomial(mono, gen_d).items():
                hol = sum(1 for g in img if g < m)
                if hol == p + 1:
                    D.rows[index[p + 1, q][img]][j] = coeff
                else:
                    Db.rows[index[p, q + 1][img]][j] = coeff
        dell[p, q] = D
        delbar[p, q] = Db
    B = Bicomplex(m, {pq: len(b) for pq, b in bases.items()}, dell, delbar)
    report = validate_bicomplex(B)
    if not report.ok:
        raise BicomplexError("jacobi-violation", str(report))
    return B


@dataclass(frozen=True)
class CohomologySummary:
    name: str
    n: int
    betti: BettiVector
    dolbeault: BigradedTable
    bott_chern: BigradedTable
    aeppli: BigradedTable
    delta: DeltaVector
    ddbar_verdict: bool

    def model(self):
        return ManifoldModel(self.name, self.n, self.betti, self.bott_chern)


def summarize(B, name=""):
    """All four tables plus the degrees and verdict (lenient: the degrees of an
    arbitrary double complex may be negative)."""
    _require_valid(B)
    betti = betti_numbers(B, check=False)
    bc = bott_chern_numbers(B, check=False)
    model = ManifoldModel(name, B.n, betti, bc)
    return CohomologySummary(
        name=name, n=B.n, betti=betti,
        dolbeault=dolbeault_numbers(B, check=False),
        bott_chern=bc,
        aeppli=aeppli_numbers(B, check=False),
        delta=delta(model),
        ddbar_verdict=is_ddbar(model, strict=False),
    )
