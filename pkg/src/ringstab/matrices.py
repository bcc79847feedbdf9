"""Dense exact matrices over a ring or its fraction field.

Also holds the row-selection machinery for full-size minors: index sets,
the selection matrices, and the bijection between m-subsets and n-subsets
used to compare minors of a right fraction with those of a left fraction.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence

from .rings import RingElement, RingKind, RingSpec
from .rings import arith

# Bareiss needs exact division; in the cuspidal ring that costs a Groebner
# basis, so cofactor expansion is used up to this size.
COFACTOR_LIMIT = 6


class DimensionError(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


# fractions ------------------------------------------------------------------


class FractionElement:
    """n/d over a supported ring with d nonzero.

    Reduced by gcd in UFD kinds; otherwise reduced only when the division is
    exact and cheap to detect.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: RingElement, den: Optional[RingElement] = None, reduce: bool = True):
        if den is None:
            den = num.spec.one()
        if num.spec != den.spec:
            raise ValueError("numerator and denominator from different rings")
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def spec(self) -> RingSpec:
        return self.num.spec

    def _other(self, other) -> "FractionElement":
        if isinstance(other, FractionElement):
            return other
        if isinstance(other, RingElement):
            return FractionElement(other)
        return FractionElement(self.spec.coerce(other))

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return FractionElement(self.num + o.num, self.den)
        return FractionElement(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FractionElement(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return FractionElement(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FractionElement":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return FractionElement(self.den, self.num)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        try:
            o = self._other(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # equal fractions may have different representatives off the UFD kinds
        return hash(self.spec)

    def to_ring(self) -> Optional[RingElement]:
        """The equal ring element when there is one."""
        if self.den == self.spec.one():
            return self.num
        return arith.exact_divide(self.num, self.den)

    def __str__(self) -> str:
        if self.den == self.spec.one():
            return str(self.num)
        return f"{_paren(str(self.num))}/{_paren(str(self.den))}"

    __repr__ = __str__


def _reduce(num: RingElement, den: RingElement):
    spec = num.spec
    k = spec.kind
    if num.is_zero():
        return num, spec.one()
    if spec.is_ufd:
        g = arith.gcd(num, den)
        num = arith.exact_divide(num, g)
        den = arith.exact_divide(den, g)
        unit = _normalizing_unit(den)
        if unit is not None:
            num = num * unit
            den = den * unit
        return num, den
    if k is RingKind.QUADRATIC:
        q = arith.exact_divide(num, den)
        if q is not None:
            return q, spec.one()
        a, b = den.payload
        if a < 0 or (a == 0 and b < 0):
            return -num, -den
        return num, den
    c = den.constant_value()
    if c is not None:
        return num * spec.coerce(1 / c), spec.one()
    unit = _normalizing_unit(den)
    if unit is not None:
        num, den = num * unit, den * unit
    return num, den


def _normalizing_unit(den: RingElement) -> Optional[RingElement]:
    spec = den.spec
    k = spec.kind
    if k is RingKind.INTEGERS:
        return spec.from_int(-1) if den.payload < 0 else None
    if k is RingKind.RATIONALS:
        return spec.coerce(1 / den.payload)
    from .rings import poly as P

    _, c = P.lead(den.payload)
    return None if c == 1 else spec.coerce(1 / c)


def _paren(s: str) -> str:
    body = s[1:] if s.startswith("-") else s
    return s if body.replace("^", "").replace("_", "").isalnum() else f"({s})"


def as_fraction(x) -> FractionElement:
    return x if isinstance(x, FractionElement) else FractionElement(x)


# matrices -------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix; entries are all RingElement or all FractionElement."""

    __slots__ = ("spec", "rows", "nrows", "ncols")

    def __init__(self, spec: RingSpec, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrices need positive dimensions")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        kinds = {isinstance(x, FractionElement) for r in rows for x in r}
        if len(kinds) > 1:
            # mixed grid: promote ring entries so the all-or-nothing invariant holds
            rows = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        self.spec = spec
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # construction --------------------------------------------------------

    @classmethod
    def identity(cls, spec: RingSpec, k: int) -> "Matrix":
        one, zero = spec.one(), spec.zero()
        return cls(spec, [[one if i == j else zero for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, spec: RingSpec, r: int, c: int) -> "Matrix":
        return cls(spec, [[spec.zero()] * c for _ in range(r)])

    @classmethod
    def from_values(cls, spec: RingSpec, values) -> "Matrix":
        return cls(spec, [[spec.coerce(x) for x in row] for row in values])

    @property
    def is_fraction(self) -> bool:
        return isinstance(self.rows[0][0], FractionElement)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or other.shape != self.shape:
            return NotImplemented
        return all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    def __hash__(self):
        return hash((self.spec, self.shape))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{body}]"

    def _zero(self):
        z = self.spec.zero()
        return FractionElement(z) if self.is_fraction else z

    def to_fractions(self) -> "Matrix":
        if self.is_fraction:
            return self
        return Matrix(self.spec, [[FractionElement(x, reduce=False) for x in r] for r in self.rows])

    def to_ring(self) -> Optional["Matrix"]:
        """The same matrix over the ring, or None if some entry is a proper fraction."""
        if not self.is_fraction:
            return self
        out = []
        for r in self.rows:
            row = []
            for x in r:
                y = x.to_ring()
                if y is None:
                    return None
                row.append(y)
            out.append(row)
        return Matrix(self.spec, out)

    # structure -------------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix(self.spec, list(zip(*self.rows)))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        cols = list(cols)
        return Matrix(self.spec, [[self.rows[i][j] for j in cols] for i in rows])

    def select_rows(self, rows: Iterable[int]) -> "Matrix":
        return Matrix(self.spec, [self.rows[i] for i in rows])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self.spec, self.rows + other.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix(self.spec, [a + b for a, b in zip(self.rows, other.rows)])

    def map(self, fn) -> "Matrix":
        return Matrix(self.spec, [[fn(x) for x in r] for r in self.rows])

    def entries(self):
        return [x for r in self.rows for x in r]

    # arithmetic -----------------------------------------------------------

    def _coerce_pair(self, other: "Matrix"):
        if self.is_fraction or other.is_fraction:
            return self.to_fractions(), other.to_fractions()
        return self, other

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        a, b = self._coerce_pair(other)
        return Matrix(self.spec, [[x + y for x, y in zip(r, s)] for r, s in zip(a.rows, b.rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self._coerce_pair(other)
        cols = list(zip(*b.rows))
        zero = a._zero()
        out = []
        for r in a.rows:
            row = []
            for c in cols:
                s = zero
                for x, y in zip(r, c):
                    if not x.is_zero() and not y.is_zero():
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix(self.spec, out)

    def scale(self, c) -> "Matrix":
        if isinstance(c, FractionElement) and not self.is_fraction:
            return self.to_fractions().scale(c)
        return self.map(lambda x: x * c)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def block(rows_of_blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    out = None
    for blocks in rows_of_blocks:
        row = blocks[0]
        for b in blocks[1:]:
            row = row.hstack(b)
        out = row if out is None else out.vstack(row)
    return out


# determinants ----------------------------------------------------------------


def _laplace(rows, zero):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = zero
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _laplace(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss(rows, spec: RingSpec) -> RingElement:
    A = [list(r) for r in rows]
    n = len(A)
    sign = 1
    prev = spec.one()
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return spec.zero()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                q = arith.exact_divide(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
                assert q is not None, "Bareiss division must be exact"
                A[i][j] = q
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def det_cofactor(M: Matrix) -> RingElement:
    if M.nrows != M.ncols:
        raise DimensionError("determinant of a non-square matrix")
    return _laplace(M.rows, M._zero())


def common_denominator(M: Matrix):
    """(d, M') with M == M'/d and M' over the ring."""
    spec = M.spec
    if not M.is_fraction:
        return spec.one(), M
    d = spec.one()
    for x in M.entries():
        if x.den != spec.one() and x.den != d:
            d = arith.lcm(d, x.den) if spec.is_ufd else d * x.den
    out = []
    for r in M.rows:
        row = []
        for x in r:
            y = arith.exact_divide(d * x.num, x.den) if x.den != spec.one() else d * x.num
            assert y is not None
            row.append(y)
        out.append(row)
    return d, Matrix(spec, out)


def det(M: Matrix):
    """Exact determinant (a RingElement, or FractionElement for fraction matrices)."""
    if M.nrows != M.ncols:
        raise DimensionError("determinant of a non-square matrix")
    if M.is_fraction:
        d, R = common_denominator(M)
        return FractionElement(det(R), d ** M.nrows)
    n = M.nrows
    if n <= 3 or (M.spec.kind is RingKind.CUSPIDAL and n <= COFACTOR_LIMIT):
        return _laplace(M.rows, M.spec.zero())
    return _bareiss(M.rows, M.spec)


def adjugate(M: Matrix) -> Matrix:
    if M.nrows != M.ncols:
        raise DimensionError("adjugate of a non-square matrix")
    n = M.nrows
    if M.is_fraction:
        d, R = common_denominator(M)
        scale = FractionElement(M.spec.one(), d ** (n - 1))
        return adjugate(R).scale(scale)
    spec = M.spec
    if n == 1:
        return Matrix(spec, [[spec.one()]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = M.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            c = det(minor)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return Matrix(spec, out)


def fraction_matrix_inverse(M: Matrix) -> Matrix:
    """Inverse over the fraction field via adjugate / determinant."""
    d = as_fraction(det(M))
    if d.is_zero():
        raise SingularMatrix("matrix is singular over the fraction field")
    return adjugate(M).to_fractions().scale(d.inverse())


# index sets --------------------------------------------------------------------


class IndexSet(tuple):
    """Strictly increasing 1-based row indices selecting a square submatrix."""

    def __new__(cls, indices: Iterable[int]):
        t = tuple(int(i) for i in indices)
        if any(i < 1 for i in t) or any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError(f"malformed index set {t}")
        return super().__new__(cls, t)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"

    __repr__ = __str__

    def zero_based(self) -> List[int]:
        return [i - 1 for i in self]


def all_index_sets(k: int, width: int) -> List[IndexSet]:
    if not 0 < k <= width:
        raise ValueError(f"need 0 < k <= width, got k={k}, width={width}")
    return [IndexSet(c) for c in itertools.combinations(range(1, width + 1), k)]


def delta_matrix(I: IndexSet, width: int, spec: RingSpec) -> Matrix:
    if I and I[-1] > width:
        raise ValueError(f"index set {I} out of range for width {width}")
    one, zero = spec.one(), spec.zero()
    return Matrix(spec, [[one if c == i - 1 else zero for c in range(width)] for i in I])


def tau(I: IndexSet, m: int, n: int) -> IndexSet:
    """Bijection from m-subsets to n-subsets of [1, m+n]."""
    if len(I) != m or (I and I[-1] > m + n):
        raise ValueError(f"{I} is not an m-subset of [1, {m + n}]")
    i_n = {i for i in I if i <= n}
    i_d = {i for i in I if i > n}
    j_n = set(range(1, m + 1)) - {i - n for i in i_d}
    j_d = {i + m for i in range(1, n + 1) if i not in i_n}
    return IndexSet(sorted(j_n | j_d))


def tau_inv(J: IndexSet, m: int, n: int) -> IndexSet:
    if len(J) != n or (J and J[-1] > m + n):
        raise ValueError(f"{J} is not an n-subset of [1, {m + n}]")
    j_n = {j for j in J if j <= m}
    j_d = {j for j in J if j > m}
    i_n = set(range(1, n + 1)) - {j - m for j in j_d}
    i_d = {j + n for j in range(1, m + 1) if j not in j_n}
    return IndexSet(sorted(i_n | i_d))


def full_size_minors(M: Matrix) -> Dict[IndexSet, RingElement]:
    """det of every square row-selection of M, in lexicographic order."""
    k = M.ncols
    if M.nrows < k:
        raise DimensionError(f"a {M.shape} matrix has no full-size minors")
    return {I: det(M.select_rows(I.zero_based())) for I in all_index_sets(k, M.nrows)}
