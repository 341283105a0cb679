"""Dense square matrices over an exact field.

Matrices are immutable: every operation returns a new object.  Indices are
0-based everywhere except ``Matrix.unit``, which follows the usual E_ij
convention (1-based) so that code reads like the formulas it implements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix
from .field import Q, FieldSpec, Scalar

Vector = Tuple[Scalar, ...]


class Matrix:
    __slots__ = ("field", "n", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable], field: FieldSpec = Q):
        rows = tuple(tuple(field(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        self.field = field
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows, field, n):
        # trusted constructor: rows are tuples of field elements already
        m = object.__new__(cls)
        m.field, m.n, m.rows, m._hash = field, n, rows, None
        return m

    @classmethod
    def zeros(cls, n: int, field: FieldSpec = Q) -> "Matrix":
        z = field.zero()
        return cls._raw(tuple((z,) * n for _ in range(n)), field, n)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Q) -> "Matrix":
        return cls.diagonal([1] * n, field)

    @classmethod
    def diagonal(cls, values: Sequence, field: FieldSpec = Q) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: FieldSpec = Q) -> "Matrix":
        """The matrix unit E_ij (1-based indices)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"E_{i}{j} out of range for n={n}")
        return cls([[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)], field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: FieldSpec = Q) -> "Matrix":
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_flat(cls, n: int, values: Sequence, field: FieldSpec = Q) -> "Matrix":
        return cls([values[i * n:(i + 1) * n] for i in range(n)], field)

    # -- JSON wire format ---------------------------------------------------

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        """Inverse of ``to_json``; raises ValueError on malformed input."""
        if not isinstance(obj, dict) or not {"field", "n", "entries"} <= obj.keys():
            raise ValueError("matrix JSON needs keys 'field', 'n', 'entries'")
        field = FieldSpec.from_tag(str(obj["field"]))
        n, entries = obj["n"], obj["entries"]
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"bad dimension {n!r}")
        if not isinstance(entries, list) or len(entries) != n or any(
            not isinstance(r, list) or len(r) != n for r in entries
        ):
            raise ValueError(f"entries must be an {n}x{n} array")
        return cls([[field.parse(str(x)) for x in row] for row in entries], field)

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.tag,
            "n": self.n,
            "entries": [[fmt(x) for x in row] for row in self.rows],
        }

    # -- basic structure ----------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def __repr__(self):
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def flat(self) -> Vector:
        """Coordinates in the row-major matrix-unit basis."""
        return tuple(x for r in self.rows for x in r)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)), self.field, self.n)

    def trace(self) -> Scalar:
        t = self.field.zero()
        for i in range(self.n):
            t = t + self.rows[i][i]
        return t

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal_entries(self) -> Vector:
        return tuple(self.rows[i][i] for i in range(self.n))

    def nonzero_count(self) -> int:
        return sum(1 for r in self.rows for x in r if x)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.field, self.n,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.field, self.n,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.field, self.n)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.field, self.n)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        cols = tuple(zip(*other.rows))
        zero = self.field.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(tuple(out), self.field, self.n)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        zero = self.field.zero()
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return invert(self) ** (-k)
        result = Matrix.identity(self.n, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def bracket(a: Matrix, b: Matrix) -> Matrix:
    """The commutator ab - ba."""
    a._check(b)
    return a @ b - b @ a


# -- row reduction ------------------------------------------------------------


def row_reduce(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row-echelon form of a (not necessarily square) matrix.

    Pivots on the first nonzero entry in column order.  Returns the nonzero
    rows of the RREF and the list of pivot columns.
    """
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: Matrix) -> int:
    return len(row_reduce(a.rows, a.field)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, field: FieldSpec) -> List[Vector]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    rref, pivots = row_reduce(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    zero, one = field.zero(), field.one()
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(rref, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel_basis(a: Matrix) -> List[Vector]:
    return nullspace(a.rows, a.n, a.field)


def is_nilpotent(a: Matrix) -> bool:
    return (a ** a.n).is_zero()


def invert(a: Matrix) -> Matrix:
    n, field = a.n, a.field
    aug = [list(r) + [field.one() if i == j else field.zero() for j in range(n)] for i, r in enumerate(a.rows)]
    rref, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return Matrix._raw(tuple(tuple(r[n:]) for r in rref), field, n)


def is_independent(vectors: Sequence[Sequence[Scalar]], field: FieldSpec) -> bool:
    return len(row_reduce(vectors, field)[1]) == len(vectors) if vectors else True


# -- similarity -----------------------------------------------------------------


@dataclass(frozen=True)
class SimilarityWitness:
    """An invertible ``c`` with its inverse; acts by a -> c a c^-1."""

    c: Matrix
    c_inv: Matrix

    def __post_init__(self):
        self.c._check(self.c_inv)
        if self.c @ self.c_inv != Matrix.identity(self.c.n, self.c.field):
            raise ValueError("c_inv is not the inverse of c")

    @classmethod
    def of(cls, c: Matrix) -> "SimilarityWitness":
        return cls(c, invert(c))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Q) -> "SimilarityWitness":
        e = Matrix.identity(n, field)
        return cls(e, e)

    def inverse(self) -> "SimilarityWitness":
        return SimilarityWitness(self.c_inv, self.c)

    def then(self, other: "SimilarityWitness") -> "SimilarityWitness":
        """Witness for applying ``self`` first, then ``other``."""
        return SimilarityWitness(other.c @ self.c, self.c_inv @ other.c_inv)

    def to_json(self) -> dict:
        return {"c": self.c.to_json(), "c_inv": self.c_inv.to_json()}


def conjugate(w: SimilarityWitness, a: Matrix) -> Matrix:
    return w.c @ a @ w.c_inv
