"""Projective bundles, blow-ups and related constructions on cohomological models.

All constructions are formal: they transform Betti and Bott-Chern tables by
the shifted-sum formulas and only check dimension bookkeeping.  No embedding
or bundle is ever constructed.

    P(E), rank r:      b_k  = sum_{i=0}^{r-1} b_{k-2i}(X),     h^{p,q} likewise with (p-i, q-i)
    blow-up along Y:   b_k  = b_k(X) + sum_{i=1}^{r-1} b_{k-2i}(Y), h^{p,q} likewise

and the degrees transform by the same shifted sums.
"""

from dataclasses import dataclass

from .diamond import (BettiVector, BigradedTable, DeltaVector, ManifoldModel,
                      delta, is_ddbar)
from .errors import ConstructionError


def _shift_sum_betti(n, pieces):
    """``pieces`` is a list of (BettiVector, shift); returns the summed vector of dimension n."""
    return BettiVector(n, tuple(sum(b[k - 2 * i] for b, i in pieces) for k in range(2 * n + 1)))


def _shift_sum_table(n, pieces):
    return BigradedTable.from_function(n, lambda p, q: sum(h[p - i, q - i] for h, i in pieces))


def _shift_sum_delta(n, pieces):
    return DeltaVector(n, tuple(sum(d[k - 2 * i] for d, i in pieces) for k in range(2 * n + 1)))


def projectivize(m, r, name=None):
    """Model of the projectivization of a rank ``r`` bundle over ``m``."""
    if r < 1:
        raise ConstructionError("rank-too-small", f"rank must be >= 1, got {r}")
    n = m.n + r - 1
    return ManifoldModel(
        name or f"P({m.name},r={r})", n,
        _shift_sum_betti(n, [(m.betti, i) for i in range(r)]),
        _shift_sum_table(n, [(m.bott_chern, i) for i in range(r)]),
    )


def delta_projectivize(dv, r, n_base):
    if r < 1:
        raise ConstructionError("rank-too-small", f"rank must be >= 1, got {r}")
    if dv.n != n_base:
        raise ConstructionError("dimension-mismatch",
                                f"delta vector has dimension {dv.n}, base has {n_base}")
    return _shift_sum_delta(n_base + r - 1, [(dv, i) for i in range(r)])


def product_with_cpk(m, k, name=None):
    """``m x CP^k``, i.e. the projectivization of the trivial bundle of rank ``k + 1``."""
    if k < 1:
        raise ConstructionError("invalid-parameter", f"k must be >= 1, got {k}")
    return projectivize(m, k + 1, name=name or f"{m.name}xCP^{k}")


def _check_blowup(nx, ny, r):
    if r < 2:
        raise ConstructionError("codim-too-small", f"codimension must be >= 2, got {r}")
    if ny + r != nx:
        raise ConstructionError("dimension-mismatch",
                                f"dim(center) + codim = {ny} + {r} != dim(ambient) = {nx}")


def blow_up(x, y, r, strict=True, name=None):
    """Model of the blow-up of ``x`` along a center modelled by ``y`` of codimension ``r``.

    With ``strict`` the center must be connected (``b_0 = 1``).
    """
    _check_blowup(x.n, y.n, r)
    if strict and y.betti[0] != 1:
        raise ConstructionError("center-not-connected", f"center {y.name!r} has b_0 = {y.betti[0]}")
    n = x.n
    return ManifoldModel(
        name or f"Bl({x.name};{y.name},r={r})", n,
        _shift_sum_betti(n, [(x.betti, 0)] + [(y.betti, i) for i in range(1, r)]),
        _shift_sum_table(n, [(x.bott_chern, 0)] + [(y.bott_chern, i) for i in range(1, r)]),
    )


def delta_blow_up(dx, dy, r):
    _check_blowup(dx.n, dy.n, r)
    return _shift_sum_delta(dx.n, [(dx, 0)] + [(dy, i) for i in range(1, r)])


def blow_down(x_tilde, y, r, name=None):
    """Undo :func:`blow_up` by exact subtraction of the center's shifted copies.

    Raises ``not-invertible`` when any resulting entry would be negative.
    """
    _check_blowup(x_tilde.n, y.n, r)
    n = x_tilde.n
    b = [x_tilde.betti[k] - sum(y.betti[k - 2 * i] for i in range(1, r))
         for k in range(2 * n + 1)]
    h = [[x_tilde.bott_chern[p, q] - sum(y.bott_chern[p - i, q - i] for i in range(1, r))
          for q in range(n + 1)] for p in range(n + 1)]
    if min(b) < 0 or min(min(row) for row in h) < 0:
        raise ConstructionError("not-invertible",
                                f"removing {y.name!r} (codim {r}) from {x_tilde.name!r} "
                                "leaves negative entries")
    return ManifoldModel.from_lists(name or f"Bd({x_tilde.name};{y.name},r={r})", n, b, h)


def exceptional_divisor(y, r, name=None):
    """The exceptional divisor, i.e. the projectivized normal bundle of the center."""
    if r < 2:
        raise ConstructionError("codim-too-small", f"codimension must be >= 2, got {r}")
    return projectivize(y, r, name=name or f"E({y.name},r={r})")


def heredity_lift(x, codim_y, k):
    """Replace the ambient ``x`` by ``x x CP^k``; a submanifold ``Y x {pt}`` then
    has codimension ``codim_y + k``.  Returns ``(ambient, new_codim)``."""
    if codim_y < 1 or k < 1:
        raise ConstructionError("invalid-parameter",
                                f"need codim_y >= 1 and k >= 1, got {codim_y}, {k}")
    return product_with_cpk(x, k), codim_y + k


@dataclass(frozen=True)
class BlowupStep:
    direction: str
    center: ManifoldModel
    codim: int

    def __post_init__(self):
        if self.direction not in ("up", "down"):
            raise ConstructionError("invalid-step", f"direction must be up or down, "
                                                    f"got {self.direction!r}")
        if self.codim < 2:
            raise ConstructionError("codim-too-small",
                                    f"codimension must be >= 2, got {self.codim}")


@dataclass(frozen=True)
class SequenceStep:
    model: ManifoldModel
    delta: DeltaVector
    verdict: bool


def evaluate_blowup_sequence(start, steps, allow_unrecorded=False):
    """Run a sequence of blow-ups and blow-downs starting from ``start``.

    A down-step subtracts the center's shifted copies and must land on a
    model already seen earlier in the sequence (that model, label included,
    is restored).  With ``allow_unrecorded`` any nonnegative subtraction
    result is accepted instead.  Returns one :class:`SequenceStep` per step.
    """
    current = start
    seen = [start]
    out = []
    for step in steps:
        if step.direction == "up":
            current = blow_up(current, step.center, step.codim)
        else:
            candidate = blow_down(current, step.center, step.codim)
            match = next((m for m in reversed(seen) if m.same_tables(candidate)), None)
            if match is None and not allow_unrecorded:
                raise ConstructionError(
                    "not-invertible",
                    f"down-step along {step.center.name!r} (codim {step.codim}) "
                    "does not undo any recorded blow-up")
            current = match or candidate
        seen.append(current)
        out.append(SequenceStep(current, delta(current), is_ddbar(current, strict=False)))
    return out
