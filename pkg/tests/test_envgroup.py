"""Tests for presentations, Smith normal form, coset enumeration, hom checks."""

import random

import pytest

from quandlekit.envgroup import (
    ConcreteModel,
    Presentation,
    abelianization,
    commutator_generators,
    evaluate_word,
    free_reduce,
    integer_model,
    permutation_model,
    presentation_of,
    relator_matrix,
    semidirect_z_model,
    smith_normal_form,
    todd_coxeter,
    verify_hom,
    word_from_json,
    word_inverse,
    word_to_json,
)
from quandlekit.errors import CosetLimitExceeded
from quandlekit.fingroup import conj_quandle, symmetric_group_table
from quandlekit.perm import Perm
from quandlekit.quandle import build, enumerate_quandles, orbit_partition

R3 = build("dihedral", 3)
SQUARE_OF_GEN0 = (((0, 1), (0, 1)),)


def random_word(rng, ngens, length):
    return tuple((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(length))


def test_free_reduce_examples():
    assert free_reduce(((0, 1), (0, -1))) == ()
    assert free_reduce(((1, 1), (0, 1), (0, -1), (1, -1))) == ()
    assert free_reduce(((0, 1), (1, 1), (1, 1))) == ((0, 1), (1, 1), (1, 1))


def test_free_reduce_is_idempotent_and_shrinking():
    rng = random.Random(7)
    for _ in range(200):
        w = random_word(rng, 3, rng.randrange(12))
        r = free_reduce(w)
        assert len(r) <= len(w)
        assert free_reduce(r) == r


def test_word_inverse_cancels():
    rng = random.Random(8)
    for _ in range(100):
        w = random_word(rng, 4, 9)
        assert free_reduce(w + word_inverse(w)) == ()


def test_word_json_round_trip():
    w = ((0, 1), (2, -1), (1, 1))
    assert word_to_json(w) == [1, -3, 2]
    assert word_from_json([1, -3, 2]) == w
    with pytest.raises(ValueError):
        word_from_json([0])


def test_presentation_validation_and_json():
    p = Presentation(2, (((0, 1), (1, -1)),))
    doc = p.to_json()
    assert doc == {"kind": "presentation", "ngens": 2, "relators": [[1, -2]]}
    assert Presentation.from_json(doc) == p
    with pytest.raises(ValueError):
        Presentation(1, (((1, 1),),))
    with pytest.raises(ValueError):
        Presentation(2, (((0, 2),),))


def test_presentation_of_counts_and_shape():
    p = presentation_of(R3)
    assert p.ngens == 3
    assert len(p.relators) == 6
    assert all(len(w) == 4 for w in p.relators)


def test_presentation_of_trivial_two_is_a_commutator():
    p = presentation_of(build("trivial", 2))
    # a_i^{-1} a_j a_i a_j^{-1} for both ordered pairs
    assert ((0, -1), (1, 1), (0, 1), (1, -1)) in p.relators
    assert ((1, -1), (0, 1), (1, 1), (0, -1)) in p.relators


def test_commutator_generators_trivial_quandle_all_cancel():
    assert commutator_generators(build("trivial", 4)) == []


def test_commutator_generators_r3():
    words = commutator_generators(R3)
    assert 0 < len(words) <= 9
    assert all(w == free_reduce(w) and w for w in words)
    assert len(set(words)) == len(words)


def test_commutator_generator_count_bound_on_enumerated_quandles():
    for n in range(1, 6):
        for q in enumerate_quandles(n):
            assert len(commutator_generators(q)) <= n * n


def test_smith_normal_form_zero_matrix():
    s = smith_normal_form([[0, 0], [0, 0]])
    assert s.invariant_factors == ()
    assert s.free_rank == 2
    assert s.d == ((0, 0), (0, 0))


def test_smith_normal_form_diag_2_3():
    s = smith_normal_form([[2, 0], [0, 3]])
    assert s.invariant_factors == (1, 6)
    assert s.free_rank == 0


def test_smith_normal_form_rectangular():
    s = smith_normal_form([[1, 2, 3]])
    assert s.invariant_factors == (1,)
    assert s.free_rank == 2
    s2 = smith_normal_form([[2, 4], [6, 8], [10, 12]])
    assert s2.invariant_factors == (2, 4)


def test_smith_normal_form_empty_edge_cases():
    s = smith_normal_form([])
    assert s.invariant_factors == ()
    assert s.free_rank == 0
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


def matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_smith_normal_form_certificate_on_random_matrices():
    rng = random.Random(31)
    for _ in range(40):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        s = smith_normal_form(a)
        d = [list(r) for r in s.d]
        assert matmul(matmul([list(r) for r in s.u], a), [list(r) for r in s.v]) == d
        diag = [d[i][i] for i in range(min(m, n))]
        assert all(x >= 0 for x in diag)
        for i in range(len(diag) - 1):
            if diag[i + 1]:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        # off-diagonal entries are zero
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0


def test_relator_matrix_of_r3():
    p = presentation_of(R3)
    rows = relator_matrix(p)
    assert len(rows) == 6 and all(len(r) == 3 for r in rows)
    assert all(sum(r) == 0 for r in rows)


def test_abelianization_trivial_quandles_are_free():
    for n in (1, 2, 3, 5):
        assert abelianization(presentation_of(build("trivial", n))) == (n, ())


def test_abelianization_of_r3_is_z():
    assert abelianization(presentation_of(R3)) == (1, ())


def test_abelianization_of_conj_s3_is_z_cubed():
    q = conj_quandle(symmetric_group_table(3))
    assert len(orbit_partition(q)) == 3
    assert abelianization(presentation_of(q)) == (3, ())


def test_abelianization_matches_orbit_count_up_to_order_five():
    for n in range(1, 6):
        for q in enumerate_quandles(n):
            free, torsion = abelianization(presentation_of(q))
            assert torsion == ()
            assert free == len(orbit_partition(q))


def test_todd_coxeter_whole_group_is_index_one():
    p = presentation_of(R3)
    gens = [((i, 1),) for i in range(3)]
    assert todd_coxeter(p, gens) == 1


def test_todd_coxeter_cyclic_three():
    p = Presentation(1, (((0, 1), (0, 1), (0, 1)),))
    assert todd_coxeter(p, ()) == 3


def test_todd_coxeter_braid_presentation_index_six():
    braid = Presentation(
        2,
        (
            ((1, 1), (0, 1), (1, 1), (0, -1), (1, -1), (0, -1)),
            ((0, 1), (0, 1), (1, -1), (1, -1)),
        ),
    )
    assert todd_coxeter(braid, SQUARE_OF_GEN0) == 6


def test_todd_coxeter_r3_presentation_index_six():
    assert todd_coxeter(presentation_of(R3), SQUARE_OF_GEN0) == 6


def test_todd_coxeter_order_independent():
    p = presentation_of(R3)
    reordered = Presentation(p.ngens, tuple(reversed(p.relators)))
    assert todd_coxeter(p, SQUARE_OF_GEN0) == todd_coxeter(reordered, SQUARE_OF_GEN0)


def test_todd_coxeter_symmetric_group_presentation():
    # <s,t | s^2, t^2, (st)^3> has order 6; trivial subgroup
    p = Presentation(
        2,
        (
            ((0, 1), (0, 1)),
            ((1, 1), (1, 1)),
            ((0, 1), (1, 1)) * 3,
        ),
    )
    assert todd_coxeter(p, ()) == 6
    assert todd_coxeter(p, (((0, 1),),)) == 3


def test_todd_coxeter_limit():
    # Z has infinite index over the trivial subgroup
    p = Presentation(1, ())
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(p, (), max_cosets=50)


def test_todd_coxeter_rejects_bad_input():
    with pytest.raises(ValueError):
        todd_coxeter(Presentation(1, ()), (((3, 1),),))
    with pytest.raises(ValueError):
        todd_coxeter(Presentation(1, ()), (), max_cosets=0)


def test_evaluate_word_in_integer_model():
    m = integer_model()
    assert evaluate_word(m, [3, 5], ((0, 1), (1, -1), (0, 1))) == 1


def test_semidirect_z_model_laws():
    m = semidirect_z_model(3)
    rng = random.Random(4)
    elems = [(rng.randrange(3), rng.randrange(-4, 5)) for _ in range(30)]
    for x in elems:
        assert m.mul(x, m.inv(x)) == m.identity
        assert m.mul(m.inv(x), x) == m.identity
    for x, y, z in zip(elems, elems[1:], elems[2:]):
        assert m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z))


def test_verify_hom_r3_into_semidirect_model():
    p = presentation_of(R3)
    m = semidirect_z_model(3)
    report = verify_hom(p, m, [(0, 1), (1, 1), (2, 1)], targets=[(1, 0), (0, 1)])
    assert report["relators_hold"]
    assert report["all_targets_reached"]


def test_verify_hom_r3_abelianized_to_z():
    p = presentation_of(R3)
    report = verify_hom(p, integer_model(), [1, 1, 1], targets=[1])
    assert report["relators_hold"]
    assert report["all_targets_reached"]


def test_verify_hom_r3_onto_symmetric_group():
    p = presentation_of(R3)
    m = permutation_model(3)
    images = [
        Perm.transposition(3, 1, 2),
        Perm.transposition(3, 0, 2),
        Perm.transposition(3, 0, 1),
    ]
    report = verify_hom(p, m, images, targets=list(m.mul(a, b) for a in images for b in images))
    assert report["relators_hold"]
    assert report["all_targets_reached"]
    assert report["elements_explored"] == 6


def test_verify_hom_reports_failures_without_raising():
    p = presentation_of(R3)
    report = verify_hom(p, permutation_model(3), [Perm.identity(3)] * 2 + [Perm.transposition(3, 0, 1)])
    assert not report["relators_hold"]
    assert report["failed_relators"]


def test_verify_hom_image_count_checked():
    with pytest.raises(ValueError):
        verify_hom(presentation_of(R3), integer_model(), [1, 1])
