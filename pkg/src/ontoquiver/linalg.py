"""Exact scalars (rationals, prime fields) and dense matrices over them.

There is no floating point anywhere: rationals are :class:`fractions.Fraction`
and prime-field elements are :class:`FpElement`.  Gaussian elimination pivots
on the first nonzero entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FpElement:
    """Element of F_p stored as its canonical residue in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Rationals:
    """The field Q; elements are Fractions."""

    name = "Q"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return Fraction(x)

    def format(self, x: Fraction):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        return {"field": "Q"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """F_p for a prime p; elements are FpElement residues."""

    p: int
    name = "Fp"

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} used in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot read {x!r} as an element of F_{self.p}")
        return FpElement(x, self.p)

    def elements(self) -> list[FpElement]:
        return [FpElement(i, self.p) for i in range(self.p)]

    def format(self, x: FpElement):
        return int(x)

    def to_json(self) -> dict:
        return {"field": "Fp", "p": self.p}

    def __str__(self):
        return f"F_{self.p}"


QQ = Rationals()


def field_from_json(data) -> Rationals | PrimeField:
    kind = data.get("field", "Q")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(data["p"]))
    raise ValueError(f"unknown field {kind!r}")


class Matrix:
    """Immutable dense ``rows x cols`` matrix, row-major; 0-sized shapes are legal."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(field(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeMismatch(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, field, data: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ShapeMismatch("ragged rows")
        return cls(field, len(data), cols, [x for r in data for x in r])

    @classmethod
    def zero(cls, field, rows: int, cols: int) -> Matrix:
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n: int) -> Matrix:
        return cls(field, n, n, [field.one if i == j else field.zero for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def to_json(self) -> list[list]:
        return [[self.field.format(x) for x in r] for r in self.row_lists()]

    def _check_same(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.field, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(self.field, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            row = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        acc = acc + a * other.entries[k * other.cols + j]
                out.append(acc)
        return Matrix(self.field, self.rows, other.cols, out)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.to_json()})"

    def rank(self) -> int:
        return len(rref(self.field, self.row_lists(), self.cols)[1])

    def nullspace(self) -> list[Matrix]:
        """Basis of ``{x : self @ x = 0}`` as ``cols x 1`` column matrices."""
        return [Matrix(self.field, self.cols, 1, v) for v in nullspace(self.field, self.row_lists(), self.cols)]

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ShapeMismatch("only square matrices can be inverted")
        n = self.rows
        aug = [r + [self.field.one if i == j else self.field.zero for j in range(n)] for i, r in enumerate(self.row_lists())]
        red, pivots = rref(self.field, aug, 2 * n)
        if [p for p in pivots if p < n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix.from_rows(self.field, [r[n:] for r in red[:n]], n)


def rref(field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(field, rows: list[list], ncols: int) -> list[list]:
    red, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def rank_of_vectors(field, vectors: list[list], length: int) -> int:
    return len(rref(field, vectors, length)[1])


def block_diag(field, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, j in itertools.product(range(b.rows), range(b.cols)):
            out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix(field, rows, cols, [x for r in out for x in r])
