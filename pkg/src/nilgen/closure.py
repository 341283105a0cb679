"""Lie subalgebra generated by a set of matrices.

Matrices are handled through their coordinates in the row-major basis of
matrix units.  Internally everything runs on Python ints: rational
coordinate vectors are cleared of denominators (a nonzero rescaling does not
change a span) and reduced fraction-free, prime-field vectors are plain
residues.  Fraction arithmetic was two orders of magnitude slower here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import EmptyGenerators, NotTraceless
from .field import FieldSpec, Scalar
from .matrix import Matrix

IntVec = List[int]


def encode(m: Matrix) -> IntVec:
    """Integer coordinate vector spanning the same line as ``m``."""
    if m.field.is_infinite:
        flat = m.flat()
        den = lcm(*(x.denominator for x in flat))
        return [x.numerator * (den // x.denominator) for x in flat]
    return [x.value for x in m.flat()]


def decode(vec: Sequence[int], n: int, field: FieldSpec) -> Matrix:
    return Matrix.from_flat(n, list(vec), field)


def int_bracket(a: IntVec, b: IntVec, n: int, p: Optional[int]) -> IntVec:
    out = [0] * (n * n)
    for x, y, sign in ((a, b, 1), (b, a, -1)):
        for i in range(n):
            base = i * n
            for k in range(n):
                c = x[base + k]
                if not c:
                    continue
                c *= sign
                kb = k * n
                for j in range(n):
                    d = y[kb + j]
                    if d:
                        out[base + j] += c * d
    if p is not None:
        out = [v % p for v in out]
    return out


class Span:
    """Reduced row-echelon basis of a subspace of K^dim, built incrementally.

    Every stored row is zero at the pivots of all other rows.  Over Q a row
    is kept as a primitive integer vector with a positive pivot entry (the
    normalized row is ``row / row[pivot]``); over F_p pivots are one.
    """

    def __init__(self, dim: int, modulus: Optional[int] = None):
        self.dim = dim
        self.p = modulus
        self.rows: List[Tuple[int, IntVec]] = []

    def __len__(self):
        return len(self.rows)

    def _eliminate(self, v: IntVec, piv: int, row: IntVec) -> IntVec:
        c = v[piv]
        p = self.p
        if p is not None:
            return [(x - c * y) % p for x, y in zip(v, row)]
        a = row[piv]
        g = gcd(a, c)
        a, c = a // g, c // g
        v = [a * x - c * y for x, y in zip(v, row)]
        g = gcd(*v)
        return [x // g for x in v] if g > 1 else v

    def reduce(self, vec: Sequence[int]) -> IntVec:
        v = list(vec)
        for piv, row in self.rows:
            if v[piv]:
                v = self._eliminate(v, piv, row)
        return v

    def add(self, vec: Sequence[int]) -> Optional[IntVec]:
        """Insert ``vec``; return its reduced form, or None if already spanned."""
        v = self.reduce(vec)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is None:
            return None
        if self.p is None:
            g = gcd(*v)
            if v[piv] < 0:
                g = -g
            v = [x // g for x in v]
        else:
            inv = pow(v[piv], -1, self.p)
            v = [x * inv % self.p for x in v]
        self.rows = [(q, self._eliminate(r, piv, v) if r[piv] else r) for q, r in self.rows]
        self.rows.append((piv, v))
        return v

    def __contains__(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

@dataclass(frozen=True)
class ClosureBasis:
    """Basis of a generated subalgebra.

    ``basis`` is the reduced row-echelon basis of the span (pivot entries
    one), so ``coords`` is just the list of flattened basis matrices.
    """

    generators: Tuple[Matrix, ...]
    span: Span = dc_field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def field(self) -> FieldSpec:
        return self.generators[0].field

    @property
    def dim(self) -> int:
        return len(self.span)

    @property
    def is_full(self) -> bool:
        return self.dim == self.n * self.n - 1

    @cached_property
    def basis(self) -> Tuple[Matrix, ...]:
        field, n = self.field, self.n
        rows = sorted(self.span.rows)
        if field.is_infinite:
            return tuple(decode([Fraction(x, r[q]) for x in r], n, field) for q, r in rows)
        return tuple(decode(r, n, field) for _, r in rows)

    @cached_property
    def coords(self) -> List[List[Scalar]]:
        """Reduced row-echelon coordinates of the basis (matrix-unit basis)."""
        return [list(b.flat()) for b in self.basis]

    def contains(self, m: Matrix) -> bool:
        self.generators[0]._check(m)
        return encode(m) in self.span

    def contains_all(self, ms: Sequence[Matrix]) -> bool:
        return all(self.contains(m) for m in ms)

    def within(self, other: "ClosureBasis") -> bool:
        return other.contains_all(self.basis)


def _check_gens(gens: Sequence[Matrix]) -> Tuple[Matrix, ...]:
    gens = tuple(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise EmptyGenerators("need at least one nonzero generator")
    for g in gens[1:]:
        gens[0]._check(g)
    return gens


def generated_subalgebra(gens: Sequence[Matrix]) -> ClosureBasis:
    """Span of all left-normed brackets [g1, [g2, [..., g]]] of the generators.

    FIFO worklist: each new basis element is bracketed with every generator
    (in the given order) and kept if independent of what is already there.
    By the Jacobi identity the result is closed under the bracket.
    """
    gens = _check_gens(gens)
    n, field = gens[0].n, gens[0].field
    p = field.modulus
    span = Span(n * n, p)
    gvecs = [encode(g) for g in gens]
    # insertion-time reduced vectors; the span's own rows keep changing
    stored: List[IntVec] = []
    for gv in gvecs:
        row = span.add(gv)
        if row is not None:
            stored.append(row)
    i = 0
    while i < len(stored):
        e = stored[i]
        i += 1
        for gv in gvecs:
            row = span.add(int_bracket(gv, e, n, p))
            if row is not None:
                stored.append(row)
    return ClosureBasis(gens, span)


def generates_sln(gens: Sequence[Matrix]) -> bool:
    gens = _check_gens(gens)
    for g in gens:
        if g.trace():
            raise NotTraceless("generators of sl_n must be traceless")
    return generated_subalgebra(gens).is_full


def bracket_closure_audit(cb: ClosureBasis) -> bool:
    """Check every pairwise bracket of basis elements against the span."""
    n, p = cb.n, cb.field.modulus
    vecs = [r for _, r in cb.span.rows]
    return all(int_bracket(a, b, n, p) in cb.span for a, b in combinations(vecs, 2))


def span_of(matrices: Sequence[Matrix]) -> Span:
    n, p = matrices[0].n, matrices[0].field.modulus
    span = Span(n * n, p)
    for m in matrices:
        span.add(encode(m))
    return span


def is_subalgebra(matrices: Sequence[Matrix]) -> bool:
    """True if the linear span of ``matrices`` is closed under the bracket."""
    n, p = matrices[0].n, matrices[0].field.modulus
    span = span_of(matrices)
    vecs = [encode(m) for m in matrices]
    return all(int_bracket(a, b, n, p) in span for a, b in combinations(vecs, 2))
