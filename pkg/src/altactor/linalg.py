"""Exact scalar arithmetic and dense linear algebra over GF(p) and the rationals.

Scalars are plain Python ints (residues in [0, p)) for prime fields and
`fractions.Fraction` for the rationals, so every computation in the package
is exact.  Subspaces are canonicalized by reduced row echelon form, which
makes subspace equality representation equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product


class FieldMismatchError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) for a prime 2 <= p < 2**16, or the rationals when p is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or self.p >= 2 ** 16 or not _is_prime(self.p)):
            raise ValueError(f"not a supported prime: {self.p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime-field"

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def coerce(self, x):
        """Coerce an int, Fraction or string into a scalar of this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"denominator not invertible mod {self.p}: {x}")
            return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
        return x % self.p

    def parse(self, s: str):
        s = s.strip().replace("−", "-")
        frac = Fraction(s)
        return self.coerce(frac)

    def format(self, x) -> str:
        return str(x)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p) if self.p is not None else 1 / Fraction(a)

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)
GF2 = Field(2)
GF3 = Field(3)
GF5 = Field(5)


def _check_same_field(a: Field, b: Field):
    if a != b:
        raise FieldMismatchError(f"{a!r} vs {b!r}")


# ---------------------------------------------------------------------------
# vectors (plain tuples of scalars)

def zero_vec(field: Field, n: int) -> tuple:
    return (field.zero(),) * n


def vec_add(field: Field, u, v):
    p = field.p
    if p is None:
        return tuple(a + b for a, b in zip(u, v))
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_sub(field: Field, u, v):
    p = field.p
    if p is None:
        return tuple(a - b for a, b in zip(u, v))
    return tuple((a - b) % p for a, b in zip(u, v))


def vec_neg(field: Field, u):
    p = field.p
    if p is None:
        return tuple(-a for a in u)
    return tuple((-a) % p for a in u)


def vec_scale(field: Field, c, u):
    p = field.p
    if p is None:
        return tuple(c * a for a in u)
    return tuple((c * a) % p for a in u)


def vec_is_zero(u) -> bool:
    return all(a == 0 for a in u)


def basis_vec(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one() if j == i else field.zero() for j in range(n))


class Matrix:
    """Immutable rectangular matrix over a single field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise DimensionMismatchError("ragged rows")
        elif cols is None:
            raise DimensionMismatchError("empty matrix needs an explicit column count")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, [[z] * cols for _ in range(rows)], cols)

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @staticmethod
    def from_columns(field: Field, columns, rows: int | None = None) -> "Matrix":
        columns = list(columns)
        if not columns:
            if rows is None:
                raise DimensionMismatchError("empty column list needs a row count")
            return Matrix(field, [[] for _ in range(rows)], 0) if rows else Matrix(field, [], 0)
        return Matrix(field, list(zip(*columns)), len(columns))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def entry(self, i, j):
        return self.data[i][j]

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix(self.field, [[]] * self.cols if self.cols else [], 0)
        return Matrix(self.field, list(zip(*self.data)), self.rows)

    def vstack(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.cols != other.cols:
            raise DimensionMismatchError("column mismatch in vstack")
        return Matrix(self.field, self.data + other.data, self.cols)

    def add(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("shape mismatch")
        p = self.field.p
        if p is None:
            return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)
        return Matrix(self.field, [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def sub(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("shape mismatch")
        p = self.field.p
        if p is None:
            return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)
        return Matrix(self.field, [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def neg(self) -> "Matrix":
        p = self.field.p
        if p is None:
            return Matrix(self.field, [[-a for a in r] for r in self.data], self.cols)
        return Matrix(self.field, [[(-a) % p for a in r] for r in self.data], self.cols)

    def mul(self, other: "Matrix") -> "Matrix":
        _check_same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError("shape mismatch in mul")
        p = self.field.p
        if other.rows == 0:
            return Matrix.zero(self.field, self.rows, other.cols)
        cols = tuple(zip(*other.data))
        # skipping zero factors pays off on the sparse multiplication
        # operators this package mostly works with
        if p is None:
            data = [[sum(a * b for a, b in zip(row, col) if a != 0 and b != 0)
                     for col in cols] for row in self.data]
        else:
            data = [[sum(a * b for a, b in zip(row, col) if a != 0 and b != 0) % p
                     for col in cols] for row in self.data]
        return Matrix(self.field, data, other.cols)

    def mul_vec(self, v) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length mismatch")
        p = self.field.p
        if p is None:
            return tuple(sum(a * b for a, b in zip(row, v) if a != 0 and b != 0)
                         for row in self.data)
        return tuple(sum(a * b for a, b in zip(row, v) if a != 0 and b != 0) % p
                     for row in self.data)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.data)


def _echelonize(field: Field, rows, cols):
    """Reduced row echelon form of a list of row tuples.

    Returns (nonzero rows as tuples, pivot column list).
    """
    p = field.p
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            work[r], work[pr] = work[pr], work[r]
        pivot = work[r][c]
        if pivot != 1:
            inv = pow(pivot, p - 2, p) if p is not None else 1 / pivot
            if p is None:
                work[r] = [x * inv for x in work[r]]
            else:
                work[r] = [x * inv % p for x in work[r]]
        prow = work[r]
        for i in range(nrows):
            if i == r:
                continue
            f = work[i][c]
            if f != 0:
                if p is None:
                    work[i] = [a - f * b for a, b in zip(work[i], prow)]
                else:
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], pivots


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (Matrix, rank, pivot column tuple)."""
    rows, pivots = _echelonize(m.field, m.data, m.cols)
    pad = [zero_vec(m.field, m.cols)] * (m.rows - len(rows))
    return Matrix(m.field, rows + pad, m.cols), len(rows), tuple(pivots)


def solve(m: Matrix, v):
    """One solution x of m @ x = v, or None if the system is inconsistent."""
    if len(v) != m.rows:
        raise DimensionMismatchError("rhs length mismatch")
    rhs = tuple(m.field.coerce(x) for x in v)
    aug = [row + (vi,) for row, vi in zip(m.data, rhs)]
    rows, pivots = _echelonize(m.field, aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = list(zero_vec(m.field, m.cols))
    for row, c in zip(rows, pivots):
        x[c] = row[-1]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace, canonically represented by an RREF basis matrix."""

    ambient: int
    basis: Matrix

    @staticmethod
    def from_vectors(field: Field, ambient: int, vectors) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        if any(len(v) != ambient for v in vecs):
            raise DimensionMismatchError("vector length does not match ambient")
        rows, _ = _echelonize(field, vecs, ambient)
        return Subspace(ambient, Matrix(field, rows, ambient))

    @staticmethod
    def zero_space(field: Field, ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix(field, [], ambient))

    @staticmethod
    def full_space(field: Field, ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(field, ambient))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self):
        return self.basis.data

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatchError("vector length mismatch")
        field = self.field
        p = field.p
        rem = [field.coerce(x) for x in v]
        pivots = _pivot_cols(self.basis)
        for row, c in zip(self.basis.data, pivots):
            f = rem[c]
            if f != 0:
                if p is None:
                    rem = [a - f * b for a, b in zip(rem, row)]
                else:
                    rem = [(a - f * b) % p for a, b in zip(rem, row)]
        return all(x == 0 for x in rem)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis.data)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.field, self.ambient, self.basis.data + other.basis.data)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        stacked = self.complement_matrix().vstack(other.complement_matrix())
        return kernel(stacked)

    def complement_matrix(self) -> Matrix:
        """Rows spanning the annihilator of this space under the dot pairing."""
        if self.dim == 0:
            return Matrix.identity(self.field, self.ambient)
        return kernel(self.basis).basis

    def preimage_under(self, m: Matrix) -> "Subspace":
        """{v : m @ v lies in this subspace}."""
        if m.rows != self.ambient:
            raise DimensionMismatchError("matrix codomain does not match ambient")
        comp = self.complement_matrix()
        if comp.rows == 0:
            return Subspace.full_space(self.field, m.cols)
        return kernel(comp.mul(m))

    def is_zero(self) -> bool:
        return self.dim == 0

    def _check_compatible(self, other: "Subspace"):
        _check_same_field(self.field, other.field)
        if self.ambient != other.ambient:
            raise DimensionMismatchError("ambient mismatch")


def _pivot_cols(rref_matrix: Matrix):
    pivots = []
    for row in rref_matrix.data:
        for c, x in enumerate(row):
            if x != 0:
                pivots.append(c)
                break
    return pivots


def kernel(m: Matrix) -> Subspace:
    """The exact null space {v : m @ v = 0}."""
    rows, pivots = _echelonize(m.field, m.data, m.cols)
    field = m.field
    p = field.p
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for fc in free:
        v = [field.zero()] * m.cols
        v[fc] = field.one()
        for row, pc in zip(rows, pivots):
            x = row[fc]
            if x != 0:
                v[pc] = (-x) % p if p is not None else -x
        vecs.append(tuple(v))
    return Subspace.from_vectors(field, m.cols, vecs)


def span_vectors_exhaustive(field: Field, vectors, ambient: int):
    """Brute-force span enumeration; only feasible over tiny prime fields.

    Used as an independent oracle for `Subspace.contains`.
    """
    if field.p is None:
        raise ValueError("exhaustive span only over finite fields")
    vecs = [tuple(field.coerce(x) for x in v) for v in vectors]
    out = set()
    for coeffs in product(range(field.p), repeat=len(vecs)):
        acc = [0] * ambient
        for c, v in zip(coeffs, vecs):
            if c:
                acc = [(a + c * b) % field.p for a, b in zip(acc, v)]
        out.add(tuple(acc))
    return out
