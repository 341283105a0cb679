"""Building a nilpotent partner Y for a nonzero nilpotent X.

The route is:

1. bring X to superdiagonal form A = sum a_i E_{i,i+1} with a_1 = 1
   (Jordan chains, largest block first);
2. get a nilpotent B0 generating sl_n together with E_12, by splitting a
   consistent diagonal matrix T = A' + B' into nilpotents with A' of rank
   one and conjugating A' onto E_12;
3. sample nonzero scalings alpha_i until X0 = sum alpha_i a_i E_{i,i+1}
   and B0 generate (each candidate is certified by a closure run);
4. X0 is diagonally conjugate to A, hence to X; carry B0 along.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from .closure import bracket_closure_audit, generated_subalgebra, generates_sln
from .errors import (
    BudgetExhausted,
    CharacteristicTwo,
    NoConsistentSet,
    NotDiagonal,
    NotNilpotent,
    NotRankOneNilpotent,
    NotTraceless,
    PreconditionError,
    RepeatedOrZeroDiagonal,
    ZeroMatrix,
    ZeroScalingFactor,
)
from .field import Q, FieldSpec, Scalar, field_of
from .matrix import (
    Matrix,
    SimilarityWitness,
    conjugate,
    invert,
    is_nilpotent,
    kernel_basis,
    rank,
    row_reduce,
)

DEFAULT_BUDGET = 64
SAMPLE_WINDOW = 65536


class OutsideHypothesesWarning(UserWarning):
    """The pipeline ran over a finite field, where no success is promised."""


def _require_odd_characteristic(field: FieldSpec):
    if field.characteristic() == 2:
        raise CharacteristicTwo("characteristic 2 is not supported here")


# -- consistent sets ----------------------------------------------------------


@dataclass(frozen=True)
class ConsistentSet:
    field: FieldSpec
    values: Tuple[Scalar, ...]

    def matrix(self) -> Matrix:
        return Matrix.diagonal(self.values, self.field)


def failed_conditions(values: Sequence[Scalar]) -> List[int]:
    """Indices (1..4) of the consistency conditions that ``values`` violate."""
    n = len(values)
    failed = []
    if sum(values[1:], values[0]):
        failed.append(1)
    if any(not a for a in values):
        failed.append(2)
    if len(set(values)) < n:
        failed.append(3)
    # differences over ordered pairs i != j must all be distinct; a coincidence
    # with i == j forces k == l through condition 3
    diffs = [values[i] - values[j] for i, j in permutations(range(n), 2)]
    if len(set(diffs)) < len(diffs):
        failed.append(4)
    return failed


def verify_consistent(s: ConsistentSet) -> bool:
    return not failed_conditions(s.values)


def powers_of_two_set(n: int, field: FieldSpec = Q) -> Tuple[Scalar, ...]:
    """1, 2, 4, ..., 2^(n-2), 1 - 2^(n-1)."""
    return tuple(field(2 ** i) for i in range(n - 1)) + (field(1 - 2 ** (n - 1)),)


def sample_consistent(n: int, field: FieldSpec, rng: random.Random, budget: int = 1000,
                      window: int = SAMPLE_WINDOW) -> ConsistentSet:
    """Rejection-sample a consistent set: n-1 random values, the last fixed by the sum."""
    _require_odd_characteristic(field)
    for _ in range(budget):
        if field.is_infinite:
            head = [field(rng.randint(-window, window)) for _ in range(n - 1)]
        else:
            head = [field.random_nonzero(rng) for _ in range(n - 1)]
        values = tuple(head) + (-sum(head[1:], head[0]),)
        if not failed_conditions(values):
            return ConsistentSet(field, values)
    raise NoConsistentSet(f"no consistent set of size {n} over {field} found in {budget} samples")


def consistent_set(n: int, field: FieldSpec = Q, seed: Optional[int] = None,
                   budget: int = 1000) -> ConsistentSet:
    """Deterministic powers-of-two set over Q, seeded sampling over F_p."""
    if n < 2:
        raise PreconditionError("consistent sets need n >= 2")
    _require_odd_characteristic(field)
    if field.is_infinite:
        return ConsistentSet(field, powers_of_two_set(n, field))
    return sample_consistent(n, field, random.Random(seed or 0), budget)


# -- splitting a diagonal matrix into nilpotents --------------------------------


def shift_matrix(n: int, field: FieldSpec = Q) -> Matrix:
    """sum_i E_{i,i+1}."""
    return superdiagonal([1] * (n - 1), field)


def superdiagonal(values: Sequence, field: FieldSpec = Q) -> Matrix:
    n = len(values) + 1
    return Matrix([[values[i] if j == i + 1 else 0 for j in range(n)] for i in range(n)], field)


def split_diagonal(c: Matrix) -> Tuple[Matrix, Matrix]:
    """Write a diagonal c with distinct nonzero entries as a + b, both nilpotent.

    With v_i = sum_j c_jj^(1-i) e_j we have c v_{i+1} = v_i.  b shifts the
    v-basis down (b v_1 = 0, b v_{i+1} = v_i), so a = c - b kills v_2..v_n
    and has rank one.
    """
    if not c.is_diagonal():
        raise NotDiagonal("split_diagonal needs a diagonal matrix")
    d = c.diagonal_entries()
    if any(not x for x in d) or len(set(d)) < len(d):
        raise RepeatedOrZeroDiagonal("diagonal entries must be nonzero and pairwise distinct")
    if c.trace():
        # tr c = tr a + tr b, and both are nilpotent
        raise NotTraceless("a sum of two nilpotents has trace zero")
    n, field = c.n, c.field
    inv = [1 / x for x in d]
    vander = Matrix([[inv[j] ** i for i in range(n)] for j in range(n)], field)
    b = vander @ shift_matrix(n, field) @ invert(vander)
    return c - b, b


def vandermonde_basis(c: Matrix) -> List[Tuple[Scalar, ...]]:
    """The vectors v_1..v_n used by ``split_diagonal``."""
    d = c.diagonal_entries()
    return [tuple((1 / x) ** i for x in d) for i in range(c.n)]


# -- rank one nilpotents ----------------------------------------------------------


def _check_rank_one_nilpotent(m: Matrix):
    if rank(m) != 1 or not is_nilpotent(m):
        raise NotRankOneNilpotent("expected a nilpotent matrix of rank 1")


def _independent_extension(base: List, candidates: Sequence, field: FieldSpec, limit: int) -> List:
    """Greedily add candidates to ``base`` while they stay independent."""
    chosen = list(base)
    r = len(row_reduce(chosen, field)[1]) if chosen else 0
    for v in candidates:
        if r == limit:
            break
        trial = chosen + [v]
        r2 = len(row_reduce(trial, field)[1])
        if r2 > r:
            chosen, r = trial, r2
    return chosen


def _rank_one_frame(p: Matrix) -> Matrix:
    """S with S^-1 p S = E_12: columns (p v, v, completion of ker p)."""
    j = next(j for j in range(p.n) if any(p.column(j)))
    field = p.field
    v = tuple(field.one() if i == j else field.zero() for i in range(p.n))
    u = p.column(j)
    ker = _independent_extension([u], kernel_basis(p), field, p.n - 1)
    return Matrix.from_columns([u, v] + ker[1:], field)


def similarity_rank1(p: Matrix, q: Matrix) -> SimilarityWitness:
    """Witness w with q = w p w^-1 for rank-one nilpotents p and q."""
    p._check(q)
    _check_rank_one_nilpotent(p)
    _check_rank_one_nilpotent(q)
    sp, sq = _rank_one_frame(p), _rank_one_frame(q)
    return SimilarityWitness(sq @ invert(sp), sp @ invert(sq))


def rank_one_partner(n_mat: Matrix, seed: int = 0) -> Matrix:
    """A nilpotent m such that n_mat and m generate sl_n (n_mat nilpotent of rank 1)."""
    _check_rank_one_nilpotent(n_mat)
    _require_odd_characteristic(n_mat.field)
    t = consistent_set(n_mat.n, n_mat.field, seed).matrix()
    a, b = split_diagonal(t)
    return conjugate(similarity_rank1(a, n_mat), b)


# -- superdiagonal normal form ------------------------------------------------------


@dataclass(frozen=True)
class SuperdiagonalForm:
    """``conjugate(witness, x) == superdiagonal(pattern)`` with pattern[0] == 1."""

    pattern: Tuple[Scalar, ...]
    witness: SimilarityWitness
    blocks: Tuple[int, ...]

    @property
    def matrix(self) -> Matrix:
        return superdiagonal(self.pattern, self.witness.c.field)


def _check_nonzero_nilpotent(x: Matrix):
    if x.is_zero():
        raise ZeroMatrix("nonzero nilpotent required")
    if not is_nilpotent(x):
        raise NotNilpotent("nonzero nilpotent required")


def nilpotent_superdiagonal_form(x: Matrix) -> SuperdiagonalForm:
    """Jordan chains of x via the filtration ker x ⊆ ker x^2 ⊆ ..., largest first."""
    _check_nonzero_nilpotent(x)
    n, field = x.n, x.field
    powers = [Matrix.identity(n, field)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ x)
    depth = len(powers) - 1
    kernels = [kernel_basis(pw) for pw in powers]

    chains: List[Tuple[int, tuple]] = []
    carried: List[tuple] = []
    for k in range(depth, 0, -1):
        base = list(kernels[k - 1]) + carried
        dim_k = len(kernels[k])
        extended = _independent_extension(base, kernels[k], field, dim_k)
        tops = extended[len(base):]
        chains.extend((k, t) for t in tops)
        carried = [x.apply(v) for v in carried + tops]

    columns, pattern, blocks = [], [], []
    for k, top in chains:
        chain = [top]
        for _ in range(k - 1):
            chain.append(x.apply(chain[-1]))
        columns.extend(reversed(chain))
        pattern.extend([field.one()] * (k - 1) + [field.zero()])
        blocks.append(k)
    s = Matrix.from_columns(columns, field)
    return SuperdiagonalForm(tuple(pattern[:n - 1]), SimilarityWitness(invert(s), s), tuple(blocks))


# -- scaling search and assembly ------------------------------------------------------


@dataclass(frozen=True)
class ScaledPartner:
    x0: Matrix
    b0: Matrix
    alphas: Tuple[Scalar, ...]
    attempts: int


def scaled_partner(pattern: Sequence[Scalar], field: Optional[FieldSpec] = None, seed: int = 0,
                   budget: int = DEFAULT_BUDGET) -> ScaledPartner:
    """Find nonzero alphas with sum alpha_i a_i E_{i,i+1} and B0 generating sl_n.

    B0 is ``rank_one_partner(E_12)``.  The good alphas form a nonempty
    Zariski-open set, so random sampling almost always succeeds at once;
    every accepted sample is certified by a closure run.
    """
    field = field or field_of(pattern[0])
    pattern = tuple(field(a) for a in pattern)
    if not pattern or pattern[0] != field.one():
        raise PreconditionError("pattern must start with a_1 = 1")
    _require_odd_characteristic(field)
    n = len(pattern) + 1
    b0 = rank_one_partner(Matrix.unit(n, 1, 2, field), seed)
    rng = random.Random(seed)
    tried = []
    for attempt in range(1, budget + 1):
        alphas = tuple(field.random_nonzero(rng, SAMPLE_WINDOW) for _ in range(n - 1))
        x0 = superdiagonal([al * a for al, a in zip(alphas, pattern)], field)
        if generates_sln([x0, b0]):
            return ScaledPartner(x0, b0, alphas, attempt)
        tried.append(alphas)
    raise BudgetExhausted(f"no generating scaling found in {budget} attempts", tried)


def diagonal_rescaling(alphas: Sequence[Scalar], pattern: Sequence[Scalar],
                       field: Optional[FieldSpec] = None) -> SimilarityWitness:
    """Diagonal D with D (sum alpha_i a_i E_{i,i+1}) D^-1 = sum a_i E_{i,i+1}."""
    field = field or field_of(alphas[0])
    if any(not field(a) for a in alphas):
        raise ZeroScalingFactor("scaling factors must be nonzero")
    d = [field.one()]
    for al, a in zip(alphas, pattern):
        d.append(field(al) * d[-1] if a else d[-1])
    return SimilarityWitness(Matrix.diagonal(d, field), Matrix.diagonal([1 / x for x in d], field))


@dataclass
class GeneratorCertificate:
    x: Matrix
    y: Matrix
    closure_dim: int
    x_nilpotent: bool
    y_nilpotent: bool
    audit: Optional[bool] = None
    provenance: dict = dc_field(default_factory=dict)

    @property
    def expected_dim(self) -> int:
        return self.x.n ** 2 - 1

    @property
    def verified(self) -> bool:
        return (self.x_nilpotent and self.y_nilpotent and self.closure_dim == self.expected_dim
                and self.audit is not False)

    def recheck(self, audit: bool = False) -> bool:
        """Re-verify from x and y alone, ignoring the stored flags and provenance."""
        if not (is_nilpotent(self.x) and is_nilpotent(self.y)) or self.x.is_zero():
            return False
        cb = generated_subalgebra([self.x, self.y])
        if not cb.is_full:
            return False
        return bracket_closure_audit(cb) if audit else True

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "closure_dim": self.closure_dim,
            "expected_dim": self.expected_dim,
            "x_nilpotent": self.x_nilpotent,
            "y_nilpotent": self.y_nilpotent,
            "audit": self.audit,
            "verified": self.verified,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneratorCertificate":
        return cls(
            x=Matrix.from_json(obj["x"]),
            y=Matrix.from_json(obj["y"]),
            closure_dim=int(obj["closure_dim"]),
            x_nilpotent=bool(obj["x_nilpotent"]),
            y_nilpotent=bool(obj["y_nilpotent"]),
            audit=obj.get("audit"),
            provenance=dict(obj.get("provenance", {})),
        )


def nilpotent_partner(x: Matrix, seed: int = 0, budget: int = DEFAULT_BUDGET,
                      audit: bool = False) -> GeneratorCertificate:
    """Nilpotent y such that x and y generate sl_n, with a checked certificate.

    Any nonzero nilpotent x with n >= 2 is accepted; for n = 1 no such x exists.
    """
    field = x.field
    _check_nonzero_nilpotent(x)
    _require_odd_characteristic(field)
    outside = not field.is_infinite
    if outside:
        warnings.warn(f"{field} is finite: outside the theorem's hypotheses, best effort only",
                      OutsideHypothesesWarning, stacklevel=2)

    form = nilpotent_superdiagonal_form(x)
    sp = scaled_partner(form.pattern, field, seed, budget)
    resc = diagonal_rescaling(sp.alphas, form.pattern, field)
    # x = g x0 g^-1 with g = c^-1 D, where c x c^-1 = A and D x0 D^-1 = A
    g = resc.then(form.witness.inverse())
    y = conjugate(g, sp.b0)

    cb = generated_subalgebra([x, y])
    fmt = field.format
    provenance = {
        "field": field.tag,
        "seed": seed,
        "budget": budget,
        "attempts": sp.attempts,
        "pattern": [fmt(a) for a in form.pattern],
        "jordan_blocks": list(form.blocks),
        "form_witness": form.witness.to_json(),
        "alphas": [fmt(a) for a in sp.alphas],
        "rescaling": [fmt(d) for d in resc.c.diagonal_entries()],
        "x0": sp.x0.to_json(),
        "b0": sp.b0.to_json(),
        "transport": g.to_json(),
        "outside_theorem_hypotheses": outside,
    }
    return GeneratorCertificate(
        x=x,
        y=y,
        closure_dim=cb.dim,
        x_nilpotent=is_nilpotent(x),
        y_nilpotent=is_nilpotent(y),
        audit=bracket_closure_audit(cb) if audit else None,
        provenance=provenance,
    )
