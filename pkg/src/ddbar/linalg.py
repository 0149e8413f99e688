"""Exact linear algebra over the Gaussian rationals Q(i).

Matrices are small (a few dozen rows at most for the nilmanifold complexes we
care about), so everything is pure Python on top of :class:`fractions.Fraction`.
Ranks are computed by fraction-free (Bareiss) elimination over the Gaussian
integers after clearing denominators row by row.
"""

from fractions import Fraction
from math import lcm


class GaussRational:
    """An element ``re + i*im`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x)

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussRational.coerce(other)
        return GaussRational(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __eq__(self, other):
        try:
            other = GaussRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


ZERO = GaussRational(0)
ONE = GaussRational(1)


class Matrix:
    """Dense matrix over Q(i) with an explicit shape (zero rows/columns allowed).

    A matrix of shape ``(m, n)`` acts on column vectors of length ``n``.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[ZERO] * ncols for _ in range(nrows)]
        else:
            rows = [[GaussRational.coerce(x) for x in row] for row in rows]
            if len(rows) != nrows or any(len(row) != ncols for row in rows):
                raise ValueError(f"rows do not match shape {(nrows, ncols)}")
        self.rows = rows

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.rows[i][j] = GaussRational.coerce(value)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for row in self.rows:
            nz = [(k, x) for k, x in enumerate(row) if x]
            out.append([sum((x * col[k] for k, x in nz), ZERO) for col in cols])
        return Matrix(self.nrows, other.ncols, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.nrows, self.ncols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def is_zero(self):
        return not any(x for row in self.rows for x in row)

    def transpose(self):
        return Matrix(self.ncols, self.nrows, [list(c) for c in zip(*self.rows)]
                      if self.nrows else [[] for _ in range(self.ncols)])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def vstack(*mats):
    """Stack matrices with equal column counts on top of each other."""
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("vstack: column counts differ")
    rows = [list(r) for m in mats for r in m.rows]
    return Matrix(len(rows), ncols, rows)


def hstack(*mats):
    """Place matrices with equal row counts side by side."""
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("hstack: row counts differ")
    rows = [[x for m in mats for x in m.rows[i]] for i in range(nrows)]
    return Matrix(nrows, sum(m.ncols for m in mats), rows)


# Gaussian integers as (re, im) pairs of ints.

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gdiv_exact(a, b):
    norm = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, norm)
    qi, ri = divmod(im, norm)
    if rr or ri:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return (qr, qi)


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, x.re.denominator, x.im.denominator)
        out.append([(int(x.re * den), int(x.im * den)) for x in row])
    return out


def exact_rank(M):
    """Rank of ``M`` over Q(i), computed by fraction-free elimination.

    Each row is scaled by the lcm of its denominators (which does not change
    the rank), then Bareiss elimination runs over Z[i]; every division by the
    previous pivot is exact, and this is checked.
    """
    if not isinstance(M, Matrix):
        M = Matrix.from_rows(M)
    rows = _integer_rows(M.rows)
    nrows, ncols = M.nrows, M.ncols
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if rows[i][c] != (0, 0)), None)
        if piv_row is None:
            continue
        rows[r], rows[piv_row] = rows[piv_row], rows[r]
        piv = rows[r][c]
        top = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = _gdiv_exact(_gsub(_gmul(piv, row[j]), _gmul(lead, top[j])), prev)
            row[c] = (0, 0)
        prev = piv
        r += 1
    return r
