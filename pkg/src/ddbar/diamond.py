"""Cohomological models of compact complex manifolds and non-Kählerness degrees.

A :class:`ManifoldModel` stores only what the degree formula needs: the Betti
numbers ``b_0 .. b_2n`` and the Bott-Chern numbers ``h_BC^{p,q}``. From these,

    Delta^k = sum_{p+q=k} h_BC^{p,q} + sum_{p+q=2n-k} h_BC^{p,q} - 2 b_k,

which is nonnegative on every compact complex manifold and vanishes for all
``k`` exactly on the manifolds satisfying the dd^c-lemma.  The formula is
evaluated on arbitrary tables as well, so a negative entry flags input that
cannot come from a manifold.
"""

from dataclasses import dataclass, field

from .errors import ModelError, ShapeError


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ShapeError(detail=f"{what} must be an integer, got {x!r}")
    return x


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers ``b_0 .. b_2n``; out-of-range indices read as 0."""

    n: int
    b: tuple

    def __post_init__(self):
        _as_int(self.n, "dimension")
        if self.n < 0:
            raise ShapeError(detail=f"negative dimension {self.n}")
        b = tuple(_as_int(x, "betti entry") for x in self.b)
        if len(b) != 2 * self.n + 1:
            raise ShapeError(detail=f"betti vector of dimension {self.n} needs "
                                    f"{2 * self.n + 1} entries, got {len(b)}")
        object.__setattr__(self, "b", b)

    def __getitem__(self, k):
        return self.b[k] if 0 <= k <= 2 * self.n else 0

    def __iter__(self):
        return iter(self.b)

    def __len__(self):
        return len(self.b)


@dataclass(frozen=True)
class BigradedTable:
    """Map ``(p, q) -> int`` for ``0 <= p, q <= n``, stored densely (row ``p``, column ``q``)."""

    n: int
    h: tuple

    def __post_init__(self):
        _as_int(self.n, "dimension")
        if self.n < 0:
            raise ShapeError(detail=f"negative dimension {self.n}")
        rows = tuple(tuple(_as_int(x, "table entry") for x in row) for row in self.h)
        if len(rows) != self.n + 1 or any(len(row) != self.n + 1 for row in rows):
            raise ShapeError(detail=f"bigraded table of dimension {self.n} must be "
                                    f"{self.n + 1}x{self.n + 1}")
        object.__setattr__(self, "h", rows)

    @classmethod
    def from_function(cls, n, f):
        return cls(n, tuple(tuple(f(p, q) for q in range(n + 1)) for p in range(n + 1)))

    def __getitem__(self, pq):
        p, q = pq
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return self.h[p][q]
        return 0

    def items(self):
        for p in range(self.n + 1):
            for q in range(self.n + 1):
                yield (p, q), self.h[p][q]

    def transpose(self):
        return BigradedTable.from_function(self.n, lambda p, q: self.h[q][p])

    def total(self, k):
        """Sum of the entries on the antidiagonal ``p + q = k``."""
        return sum(self[p, k - p] for p in range(max(0, k - self.n), min(k, self.n) + 1))


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    n: int
    betti: BettiVector
    bott_chern: BigradedTable

    def __post_init__(self):
        if self.betti.n != self.n or self.bott_chern.n != self.n:
            raise ShapeError(detail=f"model {self.name!r}: dimension {self.n} but betti has "
                                    f"{self.betti.n} and bott_chern has {self.bott_chern.n}")

    @classmethod
    def from_lists(cls, name, n, betti, bott_chern):
        return cls(name, n, BettiVector(n, tuple(betti)),
                   BigradedTable(n, tuple(tuple(r) for r in bott_chern)))

    def same_tables(self, other):
        """Equality of the cohomological data, ignoring the label."""
        return (self.n == other.n and self.betti == other.betti
                and self.bott_chern == other.bott_chern)

    def renamed(self, name):
        return ManifoldModel(name, self.n, self.betti, self.bott_chern)


@dataclass(frozen=True)
class DeltaVector:
    """Non-Kählerness degrees ``Delta^0 .. Delta^2n`` (signed)."""

    n: int
    delta: tuple

    def __post_init__(self):
        d = tuple(_as_int(x, "delta entry") for x in self.delta)
        if len(d) != 2 * self.n + 1:
            raise ShapeError(detail=f"delta vector of dimension {self.n} needs "
                                    f"{2 * self.n + 1} entries, got {len(d)}")
        object.__setattr__(self, "delta", d)

    def __getitem__(self, k):
        return self.delta[k] if 0 <= k <= 2 * self.n else 0

    def __iter__(self):
        return iter(self.delta)

    def is_zero(self):
        return not any(self.delta)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def names(self):
        return [name for name, _ in self.violations]

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(f"{name}: {detail}" for name, detail in self.violations)


def delta(m):
    """Evaluate the degree formula on ``m`` for every ``k`` in ``[0, 2n]``."""
    n = m.n
    h = m.bott_chern
    return DeltaVector(n, tuple(h.total(k) + h.total(2 * n - k) - 2 * m.betti[k]
                                for k in range(2 * n + 1)))


def validate_model(m):
    """Collect every violated check; never raises on realizability problems."""
    n = m.n
    b, h = m.betti, m.bott_chern
    v = []
    neg_b = [k for k in range(2 * n + 1) if b[k] < 0]
    if neg_b:
        v.append(("nonnegative", f"negative Betti numbers at k = {neg_b}"))
    neg_h = [pq for pq, x in h.items() if x < 0]
    if neg_h:
        v.append(("nonnegative", f"negative Bott-Chern numbers at (p,q) = {neg_h}"))
    if b[0] != 1:
        v.append(("connected", f"b_0 = {b[0]}, expected 1"))
    bad = [k for k in range(n) if b[k] != b[2 * n - k]]
    if bad:
        v.append(("poincare-duality",
                  "; ".join(f"b_{k} = {b[k]} != b_{2 * n - k} = {b[2 * n - k]}" for k in bad)))
    asym = [(p, q) for (p, q), x in h.items() if p < q and x != h[q, p]]
    if asym:
        v.append(("conjugation-symmetry",
                  "; ".join(f"h({p},{q}) = {h[p, q]} != h({q},{p}) = {h[q, p]}"
                            for p, q in asym)))
    if h[0, 0] != 1:
        v.append(("bc-bottom", f"h_BC(0,0) = {h[0, 0]}, expected 1"))
    if h[n, n] != 1 and n > 0:
        v.append(("bc-top", f"h_BC({n},{n}) = {h[n, n]}, expected 1"))
    dv = delta(m)
    negative = [(k, x) for k, x in enumerate(dv) if x < 0]
    if negative:
        v.append(("delta-nonnegative",
                  "; ".join(f"Delta^{k} = {x}" for k, x in negative)))
    return ValidationReport(tuple(v))


def is_ddbar(m, strict=True):
    """Decide the dd^c-property of ``m`` from its degrees.

    In strict mode a model that fails :func:`validate_model` is rejected with
    :class:`ModelError` (code ``non-realizable`` when some degree is negative,
    ``invalid-model`` otherwise).  Lenient mode only answers whether every
    degree vanishes.
    """
    if strict:
        report = validate_model(m)
        if not report.ok:
            code = "non-realizable" if "delta-nonnegative" in report.names() else "invalid-model"
            raise ModelError(code, f"{m.name}: {report}")
    return delta(m).is_zero()
