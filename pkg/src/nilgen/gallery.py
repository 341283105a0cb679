"""Worked examples: explicit generating pairs, the even-n obstruction, and
the exhaustive sl_3(F_2) counterexample.

Every report has ``ok`` (all of its checks hold), ``to_json`` and
``to_text``.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field as dc_field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .closure import (
    bracket_closure_audit,
    encode,
    generated_subalgebra,
    is_subalgebra,
    span_of,
)
from .construct import nilpotent_superdiagonal_form, shift_matrix
from .errors import ConditionsViolated, PreconditionError
from .field import Q, FieldSpec, Scalar
from .matrix import Matrix, bracket, invert, is_nilpotent, nullspace, rank, row_reduce

F2 = FieldSpec.prime(2)


def _fmt_list(values, field):
    return [field.format(v) for v in values]


def _text(title: str, items: Dict[str, object]) -> str:
    lines = [title]
    lines += [f"  {k}: {v}" for k, v in items.items()]
    return "\n".join(lines)


# -- explicit pair with a diagonal bracket ------------------------------------------


def example1_failures(alphas: Sequence[Scalar]) -> List[int]:
    n = len(alphas)
    failed = []
    if sum(alphas[1:], alphas[0]):
        failed.append(1)
    steps = [alphas[i + 1] - alphas[i] for i in range(n - 1)]
    if any(not d for d in steps):
        failed.append(2)
    if len(set(steps)) < len(steps):
        failed.append(3)
    partial = alphas[0]
    for k in range(1, n):
        if not partial:
            failed.append(4)
            break
        partial = partial + alphas[k]
    return failed


@dataclass
class Example1Data:
    field: FieldSpec
    alphas: Tuple[Scalar, ...]
    partial_sums: Tuple[Scalar, ...]
    a: Matrix
    b: Matrix
    t: Matrix
    bracket_is_diag_alphas: bool
    closure_dim: int
    generates: bool
    audit: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.bracket_is_diag_alphas and self.generates and self.audit is not False

    def to_json(self) -> dict:
        return {
            "example": "example1",
            "n": self.a.n,
            "field": self.field.tag,
            "alphas": _fmt_list(self.alphas, self.field),
            "partial_sums": _fmt_list(self.partial_sums, self.field),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "bracket_is_diag_alphas": self.bracket_is_diag_alphas,
            "closure_dim": self.closure_dim,
            "generates": self.generates,
            "audit": self.audit,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        return _text(f"example1 (n={self.a.n}, {self.field})", {
            "alphas": ", ".join(_fmt_list(self.alphas, self.field)),
            "[A, B] = diag(alphas)": self.bracket_is_diag_alphas,
            "closure dim": f"{self.closure_dim} / {self.a.n ** 2 - 1}",
            "generates": self.generates,
            "audit": self.audit,
            "ok": self.ok,
        })


def default_example1_alphas(n: int, field: FieldSpec = Q, seed: int = 0,
                            budget: int = 1000) -> Tuple[Scalar, ...]:
    values = tuple(field(2 ** i) for i in range(n - 1)) + (field(1 - 2 ** (n - 1)),)
    if not example1_failures(values):
        return values
    rng = random.Random(seed)
    for _ in range(budget):
        head = [field.random_element(rng, -64, 64) for _ in range(n - 1)]
        values = tuple(head) + (-sum(head[1:], head[0]),)
        if not example1_failures(values):
            return values
    note = " (n = 4 in characteristic 2 is excluded)" if n == 4 and field.characteristic() == 2 else ""
    raise ConditionsViolated([], f"no admissible alphas for n={n} over {field}{note}")


def example1_pair(n: int, alphas: Optional[Sequence] = None, field: FieldSpec = Q,
                  seed: int = 0, audit: bool = False) -> Example1Data:
    """A = shift matrix, B = subdiagonal of partial sums; [A, B] = diag(alphas)."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    if alphas is None:
        alphas = default_example1_alphas(n, field, seed)
    alphas = tuple(field(a) for a in alphas)
    if len(alphas) != n:
        raise PreconditionError(f"expected {n} alphas, got {len(alphas)}")
    failed = example1_failures(alphas)
    if failed:
        raise ConditionsViolated(failed)
    sums = []
    acc = field.zero()
    for al in alphas:
        acc = acc + al
        sums.append(acc)
    a = shift_matrix(n, field)
    b = Matrix([[sums[j] if i == j + 1 else 0 for j in range(n)] for i in range(n)], field)
    t = bracket(a, b)
    cb = generated_subalgebra([a, b])
    return Example1Data(
        field=field,
        alphas=alphas,
        partial_sums=tuple(sums),
        a=a,
        b=b,
        t=t,
        bracket_is_diag_alphas=t == Matrix.diagonal(alphas, field),
        closure_dim=cb.dim,
        generates=cb.is_full,
        audit=bracket_closure_audit(cb) if audit else None,
    )


# -- shift matrix with the corner unit ---------------------------------------------------


def corner_pair(n: int, field: FieldSpec = Q) -> Tuple[Matrix, Matrix]:
    """M = sum E_{i,i+1} and N = E_{n1}."""
    return shift_matrix(n, field), Matrix.unit(n, n, 1, field)


@dataclass
class Example2Data:
    field: FieldSpec
    m: Matrix
    nn: Matrix
    closure_dim: int
    generates: bool
    expected: Optional[bool]
    audit: Optional[bool] = None

    def __iter__(self):
        return iter((self.m, self.nn, self.generates))

    @property
    def ok(self) -> bool:
        return (self.expected is None or self.generates == self.expected) and self.audit is not False

    def to_json(self) -> dict:
        return {
            "example": "example2",
            "n": self.m.n,
            "field": self.field.tag,
            "m": self.m.to_json(),
            "n_matrix": self.nn.to_json(),
            "closure_dim": self.closure_dim,
            "generates": self.generates,
            "expected": self.expected,
            "audit": self.audit,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        return _text(f"example2 (n={self.m.n}, {self.field})", {
            "closure dim": f"{self.closure_dim} / {self.m.n ** 2 - 1}",
            "generates": self.generates,
            "expected": self.expected,
            "audit": self.audit,
            "ok": self.ok,
        })


def example2_pair(n: int, field: FieldSpec = Q, audit: bool = False) -> Example2Data:
    """Over Q the pair generates exactly when n is odd or n = 2; no claim over F_p."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    m, nn = corner_pair(n, field)
    cb = generated_subalgebra([m, nn])
    return Example2Data(
        field=field,
        m=m,
        nn=nn,
        closure_dim=cb.dim,
        generates=cb.is_full,
        # for n = 2 the obstruction is all of sl_2, so even n only fails from 4 on
        expected=(n % 2 == 1 or n == 2) if field.is_infinite else None,
        audit=bracket_closure_audit(cb) if audit else None,
    )


def antidiagonal_form(n: int, field: FieldSpec = Q) -> Matrix:
    """C with C[i][j] = (-1)^j on the antidiagonal i + j = n + 1 (1-based)."""
    return Matrix([[(-1) ** (j + 1) if i + j == n - 1 else 0 for j in range(n)] for i in range(n)], field)


def lambda_relation(a: Matrix, c_inv: Matrix) -> Matrix:
    return a @ c_inv + c_inv @ a.transpose()


@dataclass
class ObstructionReport:
    n: int
    field: FieldSpec
    lambda_basis: List[Matrix]
    lambda_dim: int
    relation_holds: bool
    is_subalgebra: bool
    contains_m: bool
    contains_n: bool
    closure_dim: int
    closure_within_lambda: bool
    audit: Optional[bool] = None

    @property
    def proper(self) -> bool:
        return self.lambda_dim < self.n ** 2 - 1

    @property
    def ok(self) -> bool:
        base = self.relation_holds and self.is_subalgebra and self.proper and self.audit is not False
        if self.n % 2 == 0:
            return base and self.contains_m and self.contains_n and self.closure_within_lambda
        return base

    def to_json(self) -> dict:
        return {
            "example": "lambda",
            "n": self.n,
            "field": self.field.tag,
            "lambda_dim": self.lambda_dim,
            "proper": self.proper,
            "relation_holds": self.relation_holds,
            "is_subalgebra": self.is_subalgebra,
            "contains_m": self.contains_m,
            "contains_n": self.contains_n,
            "closure_dim": self.closure_dim,
            "closure_within_lambda": self.closure_within_lambda,
            "audit": self.audit,
            "lambda_basis": [b.to_json() for b in self.lambda_basis],
            "ok": self.ok,
        }

    def to_text(self) -> str:
        return _text(f"lambda obstruction (n={self.n}, {self.field})", {
            "dim Lambda": f"{self.lambda_dim} (sl_n has {self.n ** 2 - 1})",
            "subalgebra": self.is_subalgebra,
            "M in Lambda": self.contains_m,
            "N in Lambda": self.contains_n,
            "closure(M, N) dim": self.closure_dim,
            "closure(M, N) within Lambda": self.closure_within_lambda,
            "ok": self.ok,
        })


def lambda_subalgebra(n: int, field: FieldSpec = Q, audit: bool = False) -> ObstructionReport:
    """Solve A C^-1 + C^-1 A^T = 0, tr A = 0 and test it against the pair (M, N)."""
    if n < 3:
        raise PreconditionError("the obstruction is stated for n >= 3")
    c_inv = invert(antidiagonal_form(n, field))
    units = [Matrix.unit(n, i, j, field) for i in range(1, n + 1) for j in range(1, n + 1)]
    # column k of the system is the image of the k-th matrix unit
    images = [lambda_relation(u, c_inv).flat() + (u.trace(),) for u in units]
    system = [list(row) for row in zip(*images)]
    basis = [Matrix.from_flat(n, v, field) for v in nullspace(system, n * n, field)]

    m, nn = corner_pair(n, field)
    zero = Matrix.zeros(n, field)
    lam = span_of(basis)
    cb = generated_subalgebra([m, nn])
    return ObstructionReport(
        n=n,
        field=field,
        lambda_basis=basis,
        lambda_dim=len(basis),
        relation_holds=all(lambda_relation(b, c_inv) == zero for b in basis),
        is_subalgebra=is_subalgebra(basis),
        contains_m=encode(m) in lam,
        contains_n=encode(nn) in lam,
        closure_dim=cb.dim,
        closure_within_lambda=all(encode(b) in lam for b in cb.basis),
        audit=bracket_closure_audit(cb) if audit else None,
    )


# -- sl_3(F_2) ---------------------------------------------------------------------------


def antidiagonal_reflection(x: Matrix) -> Matrix:
    """x' = J x^T J with J the antidiagonal permutation."""
    n = x.n
    return Matrix([[x[n - 1 - j, n - 1 - i] for j in range(n)] for i in range(n)], x.field)


def all_matrices(n: int, field: FieldSpec) -> List[Matrix]:
    p = field.modulus
    return [Matrix.from_flat(n, vals, field) for vals in product(range(p), repeat=n * n)]


def nilpotent_count_formula(q: int, n: int) -> int:
    """Number of nilpotent n x n matrices over F_q (Fine and Herstein)."""
    return q ** (n * n - n)


def _f2(rows) -> Matrix:
    return Matrix(rows, F2)


A1 = _f2([[1, 1, 0], [1, 1, 0], [1, 1, 0]])
A2 = _f2([[1, 0, 1], [1, 0, 1], [1, 0, 1]])
A3 = _f2([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
B_F2 = _f2([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
LAMBDA1 = [
    A1,
    B_F2,
    _f2([[1, 1, 1], [0, 0, 1], [0, 0, 1]]),
    _f2([[1, 0, 1], [1, 0, 1], [0, 1, 1]]),
]
LAMBDA2 = [
    A2,
    B_F2,
    _f2([[1, 1, 1], [1, 1, 1], [0, 1, 0]]),
    _f2([[1, 0, 0], [0, 0, 1], [0, 0, 1]]),
    _f2([[0, 1, 1], [0, 0, 1], [0, 0, 0]]),
]


@dataclass
class F2Report:
    total_matrices: int
    nilpotent_count: int
    expected_nilpotent_count: int
    nilpotent_by_rank: Dict[int, int]
    closure_dims: Dict[int, int]
    generating_partners: int
    max_closure_dim: int
    rank1_common_kernel: bool
    rank2_single_class: bool
    reduction_candidates: int
    reduction_persymmetric: int
    reduction_orbit_reps: int
    a123_represent_pairs: bool
    reduction_generating: int
    audit: bool
    message: str = dc_field(default="")

    @property
    def ok(self) -> bool:
        return (self.total_matrices == 2 ** 9
                and self.nilpotent_count == self.expected_nilpotent_count
                and self.generating_partners == 0
                and self.max_closure_dim < 8
                and self.rank1_common_kernel
                and self.rank2_single_class
                and self.reduction_candidates == 8
                and self.reduction_persymmetric == 2
                and self.reduction_orbit_reps == 5
                and self.a123_represent_pairs
                and self.reduction_generating == 0
                and self.audit)

    def to_json(self) -> dict:
        d = asdict(self)
        d["example"] = "f2check"
        d["nilpotent_by_rank"] = {str(k): v for k, v in sorted(self.nilpotent_by_rank.items())}
        d["closure_dims"] = {str(k): v for k, v in sorted(self.closure_dims.items())}
        d["ok"] = self.ok
        return d

    def to_text(self) -> str:
        return _text(self.message, {
            "matrices enumerated": self.total_matrices,
            "nilpotent": f"{self.nilpotent_count} (formula: {self.expected_nilpotent_count})",
            "nilpotent by rank": self.nilpotent_by_rank,
            "closure dims with E_12": self.closure_dims,
            "generating partners": self.generating_partners,
            "rank-1 partners share a kernel vector with E_12": self.rank1_common_kernel,
            "rank-2 nilpotents form one class": self.rank2_single_class,
            "rank-1 A with a_31 = 1": f"{self.reduction_candidates} "
                                       f"({self.reduction_persymmetric} persymmetric, "
                                       f"{self.reduction_orbit_reps} up to reflection)",
            "A_1, A_2, A_3 represent the reflection pairs": self.a123_represent_pairs,
            "of those generating with B": self.reduction_generating,
            "audit": self.audit,
            "ok": self.ok,
        })


def f2_counterexample() -> F2Report:
    """Exhaustive check that E_12 has no nilpotent partner in sl_3(F_2)."""
    n = 3
    e12 = Matrix.unit(n, 1, 2, F2)
    mats = all_matrices(n, F2)
    nilpotents = [m for m in mats if is_nilpotent(m)]

    by_rank: Dict[int, int] = {}
    dims: Dict[int, int] = {}
    audit_ok = True
    generating = 0
    common_kernel = True
    single_class = True
    for y in nilpotents:
        r = rank(y)
        by_rank[r] = by_rank.get(r, 0) + 1
        cb = generated_subalgebra([e12, y])
        dims[cb.dim] = dims.get(cb.dim, 0) + 1
        generating += cb.is_full
        audit_ok = audit_ok and bracket_closure_audit(cb)
        if r == 1:
            # y and E_12 have a common kernel vector iff the stacked rows have rank < 3
            stacked = list(y.rows) + list(e12.rows)
            common_kernel = common_kernel and len(row_reduce(stacked, F2)[1]) < n
        elif r == 2:
            single_class = single_class and nilpotent_superdiagonal_form(y).blocks == (3,)

    # with B = E_12 + E_23, only rank-1 A with a_31 = 1 remain
    candidates = [a for a in nilpotents if rank(a) == 1 and a[2, 0]]
    persym = [a for a in candidates if antidiagonal_reflection(a) == a]
    def orbit(a):
        return frozenset((a, antidiagonal_reflection(a)))

    reps = {orbit(a) for a in candidates}
    mixed_pairs = {o for o in reps if len(o) == 2}
    cand_generating = sum(generated_subalgebra([a, B_F2]).is_full for a in candidates)

    return F2Report(
        total_matrices=len(mats),
        nilpotent_count=len(nilpotents),
        expected_nilpotent_count=nilpotent_count_formula(2, n),
        nilpotent_by_rank=by_rank,
        closure_dims=dims,
        generating_partners=generating,
        max_closure_dim=max(dims),
        rank1_common_kernel=common_kernel,
        rank2_single_class=single_class,
        reduction_candidates=len(candidates),
        reduction_persymmetric=len(persym),
        reduction_orbit_reps=len(reps),
        a123_represent_pairs={orbit(a) for a in (A1, A2, A3)} == mixed_pairs,
        reduction_generating=cand_generating,
        audit=audit_ok,
        message="no nilpotent partner for E_12 in sl_3(F_2)" if generating == 0
        else "E_12 HAS a nilpotent partner in sl_3(F_2)",
    )


@dataclass
class Lambda12Report:
    dim_lambda1: int
    dim_lambda2: int
    lambda1_closed: bool
    lambda2_closed: bool
    lambda1_traceless: bool
    lambda2_traceless: bool
    a1_b_in_lambda1: bool
    a2_a3_b_in_lambda2: bool
    closures_within: bool

    @property
    def ok(self) -> bool:
        return all(asdict(self).values()) and (self.dim_lambda1, self.dim_lambda2) == (4, 5)

    def to_json(self) -> dict:
        d = asdict(self)
        d["example"] = "lambda12"
        d["ok"] = self.ok
        return d

    def to_text(self) -> str:
        return _text("Lambda_1, Lambda_2 in sl_3(F_2)", {**asdict(self), "ok": self.ok})


def lambda12_check() -> Lambda12Report:
    """The two listed spans are subalgebras containing the reduced pairs."""
    l1, l2 = span_of(LAMBDA1), span_of(LAMBDA2)
    closures_within = (
        all(encode(b) in l1 for b in generated_subalgebra([A1, B_F2]).basis)
        and all(encode(b) in l2 for a in (A2, A3) for b in generated_subalgebra([a, B_F2]).basis)
    )
    return Lambda12Report(
        dim_lambda1=len(l1),
        dim_lambda2=len(l2),
        lambda1_closed=is_subalgebra(LAMBDA1),
        lambda2_closed=is_subalgebra(LAMBDA2),
        lambda1_traceless=all(not m.trace() for m in LAMBDA1),
        lambda2_traceless=all(not m.trace() for m in LAMBDA2),
        a1_b_in_lambda1=all(encode(m) in l1 for m in (A1, B_F2)),
        a2_a3_b_in_lambda2=all(encode(m) in l2 for m in (A2, A3, B_F2)),
        closures_within=closures_within,
    )
