import json
import random
from fractions import Fraction
from itertools import permutations, product

import pytest

import oracles
from nilgen.closure import bracket_closure_audit, generated_subalgebra, generates_sln
from nilgen.construct import (
    ConsistentSet,
    GeneratorCertificate,
    OutsideHypothesesWarning,
    consistent_set,
    diagonal_rescaling,
    nilpotent_partner,
    nilpotent_superdiagonal_form,
    rank_one_partner,
    sample_consistent,
    scaled_partner,
    similarity_rank1,
    split_diagonal,
    superdiagonal,
    vandermonde_basis,
    verify_consistent,
)
from nilgen.errors import (
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
from nilgen.field import Q, FieldSpec
from nilgen.matrix import Matrix, conjugate, invert, is_nilpotent, rank, row_reduce
from nilgen.sampling import random_nilpotent, random_split_diagonal, random_witness

E = Matrix.unit
H = Fraction(1, 2)


def consistent_by_definition(values):
    n = len(values)
    if sum(values) != 0 or any(v == 0 for v in values) or len(set(values)) < n:
        return False
    for i, j, k, l in product(range(n), repeat=4):
        if values[i] - values[j] == values[k] - values[l]:
            if not ((i == j and k == l) or (i == k and j == l)):
                return False
    return True


# -- consistent sets ---------------------------------------------------------------


def test_powers_of_two_set():
    s = consistent_set(4)
    assert s.values == (1, 2, 4, -7)
    assert verify_consistent(s) and consistent_by_definition(s.values)


def test_n2_set():
    assert consistent_set(2).values == (1, -1)


@pytest.mark.parametrize("n", range(2, 9))
def test_powers_of_two_consistent_for_all_n(n):
    assert consistent_by_definition(consistent_set(n).values)


def test_verify_examples():
    assert verify_consistent(ConsistentSet(Q, (Q(1), Q(2), Q(4), Q(-7))))
    assert not verify_consistent(ConsistentSet(Q, (Q(1), Q(-1), Q(0))))
    assert not verify_consistent(ConsistentSet(Q, (Q(1), Q(2), Q(3), Q(-6))))


def test_f7_triples_exist_exhaustively():
    p = 7
    found = [v for v in product(range(p), repeat=3)
             if consistent_by_definition([x if x <= p // 2 else x - p for x in v])
             or _consistent_mod(v, p)]
    assert found
    f = FieldSpec.prime(p)
    for seed in range(10):
        s = consistent_set(3, f, seed=seed)
        assert verify_consistent(s)
        assert tuple(x.value for x in s.values) in {tuple(v) for v in found}


def _consistent_mod(v, p):
    n = len(v)
    if sum(v) % p or any(x % p == 0 for x in v) or len({x % p for x in v}) < n:
        return False
    for i, j, k, l in product(range(n), repeat=4):
        if (v[i] - v[j] - v[k] + v[l]) % p == 0 and not ((i == j and k == l) or (i == k and j == l)):
            return False
    return True


def test_verify_agrees_with_definition_mod_p():
    f = FieldSpec.prime(7)
    for v in product(range(7), repeat=3):
        assert verify_consistent(ConsistentSet(f, tuple(f(x) for x in v))) == _consistent_mod(v, 7)


def test_random_rational_sets():
    rng = random.Random(5)
    for n in range(2, 7):
        s = sample_consistent(n, Q, rng)
        assert consistent_by_definition(s.values)


def test_consistent_errors():
    with pytest.raises(CharacteristicTwo):
        consistent_set(3, FieldSpec.prime(2))
    with pytest.raises(NoConsistentSet):
        consistent_set(3, FieldSpec.prime(3), budget=50)
    with pytest.raises(PreconditionError):
        consistent_set(1)


# -- split_diagonal ------------------------------------------------------------------


def test_split_hand_derived():
    a, b = split_diagonal(Matrix.diagonal([1, -1]))
    assert a == Matrix([[H, H], [-H, -H]])
    assert b == Matrix([[H, -H], [H, -H]])
    assert a + b == Matrix.diagonal([1, -1])
    assert (a @ a).is_zero() and (b @ b).is_zero() and rank(a) == 1


def test_split_consistent_n3_all_entries_nonzero():
    c = consistent_set(3).matrix()
    a, b = split_diagonal(c)
    assert a.nonzero_count() == 9
    assert a.trace() == 0


@pytest.mark.parametrize("seed", range(10))
def test_split_properties(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    c = random_split_diagonal(n, rng)
    a, b = split_diagonal(c)
    assert a + b == c
    assert (a @ a).is_zero()
    assert rank(a) == 1
    assert a.nonzero_count() == n * n
    assert (b ** n).is_zero()
    assert oracles.is_nilpotent(b.rows)
    vs = vandermonde_basis(c)
    assert len(row_reduce(vs, Q)[1]) == n
    assert a.apply(vs[0]) != (0,) * n and all(not any(a.apply(v)) for v in vs[1:])


def test_split_errors():
    with pytest.raises(NotDiagonal):
        split_diagonal(E(2, 1, 2))
    with pytest.raises(RepeatedOrZeroDiagonal):
        split_diagonal(Matrix.diagonal([1, 1]))
    with pytest.raises(RepeatedOrZeroDiagonal):
        split_diagonal(Matrix.diagonal([0, 1]))
    with pytest.raises(NotTraceless):
        split_diagonal(Matrix.diagonal([1, 2]))


# -- rank one ----------------------------------------------------------------------------


def test_similarity_identity_case():
    w = similarity_rank1(E(2, 1, 2), E(2, 1, 2))
    assert conjugate(w, E(2, 1, 2)) == E(2, 1, 2)


def test_similarity_to_transpose():
    w = similarity_rank1(E(2, 1, 2), E(2, 2, 1))
    assert w.c @ E(2, 1, 2) @ w.c_inv == E(2, 2, 1)


def test_similarity_to_split_matrix():
    a, _ = split_diagonal(Matrix.diagonal([1, -1]))
    w = similarity_rank1(E(2, 1, 2), a)
    assert w.c @ E(2, 1, 2) @ w.c_inv == a


@pytest.mark.parametrize("seed", range(8))
def test_similarity_random(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    p = conjugate(random_witness(n, rng), E(n, 1, n))
    q = conjugate(random_witness(n, rng), E(n, 2, 1))
    w = similarity_rank1(p, q)
    assert conjugate(w, p) == q


def test_similarity_rejects_rank_two():
    with pytest.raises(NotRankOneNilpotent):
        similarity_rank1(E(3, 1, 2) + E(3, 2, 3), E(3, 1, 2))


@pytest.mark.parametrize("n, i, j", [(2, 1, 2), (3, 1, 3), (4, 3, 1), (5, 2, 4)])
def test_rank_one_partner(n, i, j):
    m = rank_one_partner(E(n, i, j))
    assert is_nilpotent(m) and m.trace() == 0
    cb = generated_subalgebra([E(n, i, j), m])
    assert cb.dim == n * n - 1
    assert bracket_closure_audit(cb)


def test_rank_one_partner_rejects():
    with pytest.raises(NotRankOneNilpotent):
        rank_one_partner(Matrix.diagonal([1, -1]))


# -- superdiagonal form -------------------------------------------------------------------


def test_form_already_superdiagonal():
    x = E(3, 1, 2) + E(3, 2, 3)
    f = nilpotent_superdiagonal_form(x)
    assert f.pattern == (1, 1)
    assert conjugate(f.witness, x) == x


def test_form_of_lower_unit():
    f = nilpotent_superdiagonal_form(E(2, 2, 1))
    assert f.pattern == (1,)
    assert conjugate(f.witness, E(2, 2, 1)) == E(2, 1, 2)
    assert f.witness.c == Matrix([[0, 1], [1, 0]])


def test_form_rank_one_n3():
    f = nilpotent_superdiagonal_form(E(3, 1, 3))
    assert f.pattern == (1, 0)
    assert f.blocks == (2, 1)


@pytest.mark.parametrize("seed", range(20))
def test_form_random(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    x = random_nilpotent(n, rng)
    f = nilpotent_superdiagonal_form(x)
    assert conjugate(f.witness, x) == f.matrix
    assert f.pattern[0] == 1
    assert set(f.pattern) <= {0, 1}
    assert list(f.blocks) == sorted(f.blocks, reverse=True) and sum(f.blocks) == n
    # Jordan type determines the ranks of powers
    for k in range(1, n + 1):
        assert rank(x ** k) == sum(max(b - k, 0) for b in f.blocks)


def test_form_errors():
    with pytest.raises(ZeroMatrix):
        nilpotent_superdiagonal_form(Matrix.zeros(3))
    with pytest.raises(NotNilpotent):
        nilpotent_superdiagonal_form(Matrix.diagonal([1, -1]))


# -- scaling ------------------------------------------------------------------------------


def test_scaled_partner_n3():
    sp = scaled_partner([Q(1), Q(1)], seed=1)
    assert all(sp.alphas)
    assert generates_sln([sp.x0, sp.b0])
    assert sp.x0 == superdiagonal(sp.alphas)
    assert sp.b0 == rank_one_partner(E(3, 1, 2))


def test_scaled_partner_n2():
    sp = scaled_partner([Q(1)], seed=0)
    assert generates_sln([sp.x0, sp.b0])
    assert all(sp.alphas)


def test_scaled_partner_bad_pattern():
    with pytest.raises(PreconditionError):
        scaled_partner([Q(0), Q(1)])


def test_scaled_partner_budget_exhausted(monkeypatch):
    import nilgen.construct as construct

    b0 = rank_one_partner(E(3, 1, 2))
    monkeypatch.setattr(construct, "rank_one_partner", lambda m, seed=0: b0)
    monkeypatch.setattr(construct, "generates_sln", lambda gens: False)
    with pytest.raises(BudgetExhausted) as info:
        scaled_partner([Q(1), Q(1)], seed=0, budget=3)
    assert len(info.value.candidates) == 3
    assert all(a != 0 for alphas in info.value.candidates for a in alphas)


def test_scaled_partner_small_prime_has_no_consistent_set():
    f = FieldSpec.prime(5)
    with pytest.raises(NoConsistentSet):
        scaled_partner([f(1), f(1)], f)


def test_diagonal_rescaling_identity():
    w = diagonal_rescaling([Q(1), Q(1), Q(1)], [Q(1), Q(0), Q(1)])
    assert w.c == Matrix.identity(4)


def test_diagonal_rescaling_n2():
    w = diagonal_rescaling([Q(2)], [Q(1)])
    assert w.c == Matrix.diagonal([1, 2])
    assert conjugate(w, 2 * E(2, 1, 2)) == E(2, 1, 2)


@pytest.mark.parametrize("seed", range(10))
def test_diagonal_rescaling_random(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    pattern = [Q(1)] + [Q(rng.choice([0, 1])) for _ in range(n - 2)]
    alphas = [Q(Fraction(rng.randint(1, 50), rng.randint(1, 9)) * rng.choice([1, -1])) for _ in range(n - 1)]
    w = diagonal_rescaling(alphas, pattern)
    x0 = superdiagonal([al * a for al, a in zip(alphas, pattern)])
    assert conjugate(w, x0) == superdiagonal(pattern)


def test_diagonal_rescaling_zero():
    with pytest.raises(ZeroScalingFactor):
        diagonal_rescaling([Q(1), Q(0)], [Q(1), Q(1)])


# -- full pipeline --------------------------------------------------------------------------


def test_partner_n4_regular():
    x = E(4, 1, 2) + E(4, 2, 3) + E(4, 3, 4)
    cert = nilpotent_partner(x, audit=True)
    assert cert.verified and cert.closure_dim == 15 and cert.audit
    assert oracles.is_nilpotent(cert.y.rows)
    assert cert.recheck(audit=True)


def test_partner_rank_one_matches_direct_route():
    x = E(3, 1, 3)
    cert = nilpotent_partner(x)
    assert cert.closure_dim == 8 and is_nilpotent(cert.y)
    direct = rank_one_partner(x)
    assert generates_sln([x, direct])


def test_certificate_is_transport_of_scaled_pair():
    x = random_nilpotent(4, random.Random(11))
    cert = nilpotent_partner(x, seed=3)
    g = cert.provenance["transport"]
    c, c_inv = Matrix.from_json(g["c"]), Matrix.from_json(g["c_inv"])
    x0 = Matrix.from_json(cert.provenance["x0"])
    b0 = Matrix.from_json(cert.provenance["b0"])
    assert c @ x0 @ c_inv == x
    assert c @ b0 @ c_inv == cert.y


def test_partner_deterministic():
    x = random_nilpotent(4, random.Random(2))
    one = json.dumps(nilpotent_partner(x, seed=9).to_json())
    two = json.dumps(nilpotent_partner(x, seed=9).to_json())
    assert one == two


def test_certificate_json_roundtrip():
    cert = nilpotent_partner(E(3, 1, 2), seed=4)
    back = GeneratorCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert back.x == cert.x and back.y == cert.y
    assert back.verified and back.recheck()


def test_recheck_ignores_stored_flags():
    cert = nilpotent_partner(E(3, 1, 2))
    forged = GeneratorCertificate(cert.x, E(3, 2, 1), 8, True, True)
    assert forged.verified  # flags alone say yes
    assert not forged.recheck()


def test_partner_prime_field_warns():
    f = FieldSpec.prime(10007)
    with pytest.warns(OutsideHypothesesWarning):
        cert = nilpotent_partner(E(3, 1, 2, f) + E(3, 2, 3, f))
    assert cert.provenance["outside_theorem_hypotheses"] is True
    assert cert.verified


def test_partner_errors():
    with pytest.raises(ZeroMatrix):
        nilpotent_partner(Matrix.zeros(3))
    with pytest.raises(NotNilpotent):
        nilpotent_partner(Matrix.diagonal([1, -1]))
    with pytest.raises(CharacteristicTwo):
        nilpotent_partner(E(3, 1, 2, FieldSpec.prime(2)))


@pytest.mark.parametrize("seed", range(6))
def test_conjugation_transport(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    p = E(n, 1, 2)
    q = rank_one_partner(p)
    w = random_witness(n, rng)
    assert generates_sln([conjugate(w, p), conjugate(w, q)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lemma1_small(n):
    rng = random.Random(n)
    t = sample_consistent(n, Q, rng).matrix()
    a = [[Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n)]
         for _ in range(n)]
    for i in range(n):
        a[i][i] = 0
    assert generates_sln([t, Matrix(a)])
