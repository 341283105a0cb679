import random

import pytest

import oracles
from nilgen.closure import (
    Span,
    bracket_closure_audit,
    encode,
    generated_subalgebra,
    generates_sln,
    is_subalgebra,
)
from nilgen.errors import EmptyGenerators, FieldMismatch, NotTraceless
from nilgen.field import Q, FieldSpec
from nilgen.matrix import Matrix, conjugate
from nilgen.sampling import random_traceless, random_witness

E = Matrix.unit


def test_sl2_triple():
    cb = generated_subalgebra([E(2, 1, 2), E(2, 2, 1)])
    assert cb.dim == 3
    assert cb.contains_all([E(2, 1, 2), E(2, 2, 1), E(2, 1, 1) - E(2, 2, 2)])
    assert bracket_closure_audit(cb)


def test_single_unit_is_abelian():
    cb = generated_subalgebra([E(3, 1, 2)])
    assert cb.dim == 1
    assert cb.basis == (E(3, 1, 2),)


def test_example1_pair_n3():
    a = E(3, 1, 2) + E(3, 2, 3)
    b = E(3, 2, 1) + 3 * E(3, 3, 2)  # partial sums of (1, 2, -3)
    cb = generated_subalgebra([a, b])
    assert cb.dim == 8 == oracles.closure_dim([a.rows, b.rows])
    assert bracket_closure_audit(cb)


def test_generates_sln_examples():
    assert generates_sln([E(2, 1, 2), E(2, 2, 1)])
    assert not generates_sln([E(3, 1, 2), E(3, 1, 3)])
    m = E(4, 1, 2) + E(4, 2, 3) + E(4, 3, 4)
    assert not generates_sln([m, E(4, 4, 1)])


def test_generates_sln_needs_traceless():
    with pytest.raises(NotTraceless):
        generates_sln([E(2, 1, 1), E(2, 1, 2)])


def test_empty_generators():
    with pytest.raises(EmptyGenerators):
        generated_subalgebra([])
    with pytest.raises(EmptyGenerators):
        generated_subalgebra([Matrix.zeros(3)])


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        generated_subalgebra([E(2, 1, 2), E(2, 2, 1, FieldSpec.prime(3))])


def test_coords_are_reduced_echelon():
    cb = generated_subalgebra([E(3, 1, 2), E(3, 2, 1)])
    coords = cb.coords
    pivots = [next(k for k, x in enumerate(r) if x) for r in coords]
    assert pivots == sorted(pivots)
    for r, p in zip(coords, pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in coords if other is not r)


@pytest.mark.parametrize("seed", range(30))
def test_dimension_matches_full_pairwise_oracle(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    # sparse-ish generators so that proper subalgebras show up too
    gens = []
    for _ in range(rng.choice([1, 2, 2, 3])):
        g = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(n)] for _ in range(n)]
        g[n - 1][n - 1] -= sum(g[i][i] for i in range(n))
        gens.append(g)
    if all(oracles.is_zero(g) for g in gens):
        gens[0][0][1] = 1
    cb = generated_subalgebra([Matrix(g) for g in gens])
    assert cb.dim == oracles.closure_dim(gens)
    assert cb.dim <= n * n - 1
    assert bracket_closure_audit(cb)


@pytest.mark.parametrize("seed", range(10))
def test_dimension_oracle_mod_p(seed):
    rng = random.Random(100 + seed)
    f = FieldSpec.prime(3)
    gens = [[[rng.randrange(3) for _ in range(3)] for _ in range(3)] for _ in range(2)]
    for g in gens:
        g[2][2] = (g[2][2] - sum(g[i][i] for i in range(3))) % 3
    if all(oracles.is_zero(g) for g in gens):
        gens[0][0][1] = 1
    cb = generated_subalgebra([Matrix(g, f) for g in gens])
    assert cb.dim == oracles.closure_dim(gens, 3)
    assert bracket_closure_audit(cb)


@pytest.mark.parametrize("seed", range(15))
def test_conjugation_invariance(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3, 4])
    gens = [random_traceless(n, rng, bound=2) for _ in range(2)]
    w = random_witness(n, rng)
    assert generated_subalgebra(gens).dim == generated_subalgebra([conjugate(w, g) for g in gens]).dim


@pytest.mark.parametrize("seed", range(15))
def test_monotone_in_generators(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3, 4])
    gens = [Matrix([[rng.choice([0, 0, 1]) if i != j else 0 for j in range(n)] for i in range(n)])
            for _ in range(3)]
    gens[0] = gens[0] + E(n, 1, 2)
    dims = [generated_subalgebra(gens[:k]).dim for k in (1, 2, 3)]
    assert dims == sorted(dims)


def test_span_membership_and_rescaling():
    span = Span(4)
    assert span.add([2, 4, 0, 0]) == [1, 2, 0, 0]
    assert span.add([3, 6, 0, 0]) is None
    assert [0, 0, 5, 0] not in span
    assert span.add([1, 1, 1, 0]) is not None
    assert [0, 1, -1, 0] in span


def test_encode_clears_denominators():
    m = Matrix([["1/2", "1/3"], [0, "-1/6"]])
    assert encode(m) == [3, 2, 0, -1]


def test_is_subalgebra():
    upper = [E(3, 1, 2), E(3, 2, 3), E(3, 1, 3)]
    assert is_subalgebra(upper)
    assert not is_subalgebra([E(3, 1, 2), E(3, 2, 1)])
