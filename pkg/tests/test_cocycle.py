"""Tests for constant/abelian cocycles, extensions, stabilizers, and H^2."""

import itertools
import random
from math import gcd

import pytest

from quandlekit.cocycle import (
    AbelianCocycle,
    ConstantCocycle,
    abelian_to_constant,
    act,
    all_constant_cocycles,
    are_cohomologous,
    cocycle_stabilizer,
    compute_h2,
    constant_cocycle_classes,
    embed,
    extend,
    trivial_cocycle,
    validate_abelian,
    validate_constant,
    zero_abelian_cocycle,
)
from quandlekit.errors import (
    CapExceeded,
    CocycleViolation,
    DiagonalViolation,
    NotAutomorphism,
    NotInStabilizer,
)
from quandlekit.perm import Perm
from quandlekit.quandle import QuandleMap, aut, build, inn, is_isomorphic

T2 = build("trivial", 2)
R3 = build("dihedral", 3)
SWAP = Perm((1, 0))
ID2 = Perm.identity(2)


def spec_example():
    # base trivial(2), fiber of size 2, only alpha(0,1) is the swap
    return validate_constant(T2, 2, [[ID2, SWAP], [ID2, ID2]])


def test_validate_all_identity():
    a = trivial_cocycle(R3, 3)
    assert a.fiber_size == 3
    assert all(p.is_identity() for row in a.table for p in row)


def test_validate_spec_example():
    a = spec_example()
    assert a.table[0][1] == SWAP


def test_validate_diagonal_violation():
    with pytest.raises(DiagonalViolation) as e:
        validate_constant(T2, 2, [[SWAP, ID2], [ID2, ID2]])
    assert e.value.x == 0


def test_validate_cocycle_violation_carries_witness():
    # over R_3 a single nontrivial entry breaks pair coherence
    table = [[ID2] * 3 for _ in range(3)]
    table[0][1] = SWAP
    with pytest.raises(CocycleViolation) as e:
        validate_constant(R3, 2, table)
    assert e.value.triple == (0, 1, 0)


def test_validate_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        validate_constant(T2, 2, [[ID2, ID2]])
    with pytest.raises(ValueError):
        validate_constant(T2, 3, [[ID2, ID2], [ID2, ID2]])


def test_constant_json_round_trip():
    a = spec_example()
    assert ConstantCocycle.from_json(a.to_json()).table == a.table


def test_extend_sizes_and_projection():
    a = trivial_cocycle(R3, 2)
    ext = extend(a)
    assert ext.order == 6
    proj = QuandleMap(ext, R3, tuple(i // 2 for i in range(6)))
    assert set(proj.images) == {0, 1, 2}


def test_extend_fibers_are_trivial_subquandles():
    a = spec_example()
    ext = extend(a)
    s = a.fiber_size
    for x in range(a.base.order):
        for t in range(s):
            for u in range(s):
                assert ext.table[x * s + t][x * s + u] == x * s + t


def test_extend_spec_example_inner_group():
    assert inn(extend(spec_example())).order == 2


def test_cohomologous_reflexive():
    a = spec_example()
    w = are_cohomologous(a, a)
    assert w is not None and all(p.is_identity() for p in w)


def test_cohomologous_negative_spec_example():
    assert are_cohomologous(spec_example(), trivial_cocycle(T2, 2)) is None


def random_lambda(rng, n, s):
    return tuple(Perm(tuple(rng.sample(range(s), s))) for _ in range(n))


def push_through_lambda(alpha, lam):
    n = alpha.base.order
    t = alpha.base.table
    table = tuple(
        tuple(lam[t[x][y]] * alpha.table[x][y] * lam[x].inverse() for y in range(n))
        for x in range(n)
    )
    return validate_constant(alpha.base, alpha.fiber_size, table)


def test_cohomologous_constructed_witness_found():
    rng = random.Random(17)
    for alpha in (trivial_cocycle(R3, 3), spec_example()):
        for _ in range(5):
            lam = random_lambda(rng, alpha.base.order, alpha.fiber_size)
            beta = push_through_lambda(alpha, lam)
            w = are_cohomologous(alpha, beta)
            assert w is not None


def test_cohomologous_witness_gives_extension_isomorphism():
    rng = random.Random(23)
    alpha = trivial_cocycle(R3, 3)
    lam = random_lambda(rng, 3, 3)
    beta = push_through_lambda(alpha, lam)
    w = are_cohomologous(alpha, beta)
    ea, eb = extend(alpha), extend(beta)
    s = alpha.fiber_size
    f = Perm(tuple((i // s) * s + w[i // s](i % s) for i in range(ea.order)))
    for i in range(ea.order):
        for j in range(ea.order):
            assert f(ea.table[i][j]) == eb.table[f(i)][f(j)]
    assert is_isomorphic(ea, eb)


def test_act_identity_fixes():
    a = spec_example()
    assert act(ID2, ID2, a).table == a.table


def test_act_commuting_theta_fixes_spec_example():
    a = spec_example()
    assert act(ID2, SWAP, a).table == a.table


def test_act_rejects_non_automorphism():
    a = trivial_cocycle(build("dihedral", 4), 2)
    with pytest.raises(NotAutomorphism):
        act(Perm((1, 0, 2, 3)), ID2, a)


def test_act_is_a_left_action():
    a = spec_example()
    base_auts = aut(T2).elements
    fiber_perms = [Perm(p) for p in itertools.permutations(range(2))]
    for p1 in itertools.product(base_auts, fiber_perms):
        for p2 in itertools.product(base_auts, fiber_perms):
            lhs = act(p1[0], p1[1], act(p2[0], p2[1], a))
            rhs = act(p1[0] * p2[0], p1[1] * p2[1], a)
            assert lhs.table == rhs.table


def test_act_preserves_cohomologous_pairs():
    # transported witness: x -> theta * lambda(phi^{-1} x) * theta^{-1}
    rng = random.Random(5)
    alpha = trivial_cocycle(R3, 2)
    lam = random_lambda(rng, 3, 2)
    beta = push_through_lambda(alpha, lam)
    for phi in aut(R3).elements:
        for theta in (ID2, SWAP):
            ta = act(phi, theta, alpha)
            tb = act(phi, theta, beta)
            pinv = phi.inverse()
            moved = tuple(theta * lam[pinv(x)] * theta.inverse() for x in range(3))
            rebuilt = push_through_lambda(ta, moved)
            assert rebuilt.table == tb.table
            assert are_cohomologous(ta, tb) is not None


def test_stabilizer_of_trivial_cocycle_is_everything():
    a = trivial_cocycle(R3, 2)
    assert len(cocycle_stabilizer(a)) == aut(R3).order * 2


def test_stabilizer_of_spec_example():
    stab = cocycle_stabilizer(spec_example())
    assert len(stab) == 2
    assert (ID2, ID2) in stab
    assert (ID2, SWAP) in stab


def test_stabilizer_size_divides_group_order():
    for a in (spec_example(), trivial_cocycle(R3, 2)):
        total = aut(a.base).order * len(list(itertools.permutations(range(a.fiber_size))))
        assert total % len(cocycle_stabilizer(a)) == 0


def test_embed_identity_pair():
    a = spec_example()
    g = embed((ID2, ID2), a)
    assert g.is_identity()


def test_embed_is_injective_homomorphism_into_aut():
    a = spec_example()
    stab = cocycle_stabilizer(a)
    ext = extend(a)
    full = set(aut(ext).elements)
    images = {}
    for pair in stab:
        g = embed(pair, a)
        assert g in full
        images[pair] = g
    assert len(set(images.values())) == len(stab)
    for p1 in stab:
        for p2 in stab:
            combined = (p1[0] * p2[0], p1[1] * p2[1])
            assert images[combined] == images[p1] * images[p2]


def test_embed_rejects_non_stabilizing_pair():
    a = spec_example()
    with pytest.raises(NotInStabilizer):
        embed((SWAP, ID2), a)


def naive_constant_cocycles(base, s):
    n = base.order
    t = base.table
    perms = [Perm(p) for p in itertools.permutations(range(s))]
    ident = Perm.identity(s)
    free = [(x, y) for x in range(n) for y in range(n) if x != y]
    found = []
    for combo in itertools.product(perms, repeat=len(free)):
        table = [[ident] * n for _ in range(n)]
        for (x, y), p in zip(free, combo):
            table[x][y] = p
        if all(
            table[t[x][y]][z] * table[x][y] == table[t[x][z]][t[y][z]] * table[x][z]
            for x in range(n)
            for y in range(n)
            for z in range(n)
        ):
            found.append(tuple(tuple(row) for row in table))
    return found


def test_all_constant_cocycles_matches_naive_filter():
    for base in (T2, R3):
        ours = {a.table for a in all_constant_cocycles(base, 2)}
        assert ours == set(naive_constant_cocycles(base, 2))


def test_all_constant_cocycles_cap():
    with pytest.raises(CapExceeded):
        all_constant_cocycles(build("trivial", 4), 4, cap=10)


def test_constant_classes_over_trivial_base():
    # conjugation by lambda cannot change anything inside an abelian fiber group
    assert len(constant_cocycle_classes(T2, 2)) == 4


def test_abelian_validation_and_json():
    mu = validate_abelian(T2, (2,), [[(0,), (1,)], [(0,), (0,)]])
    assert AbelianCocycle.from_json(mu.to_json()).table == mu.table
    with pytest.raises(DiagonalViolation):
        validate_abelian(T2, (2,), [[(1,), (0,)], [(0,), (0,)]])
    with pytest.raises(CocycleViolation):
        validate_abelian(R3, (2,), [[(0,), (1,), (0,)], [(0,)] * 3, [(0,)] * 3])
    with pytest.raises(ValueError):
        validate_abelian(T2, (0,), [[(0,), (0,)], [(0,), (0,)]])


def test_abelian_to_constant_translations():
    mu = validate_abelian(T2, (2,), [[(0,), (1,)], [(0,), (0,)]])
    a = abelian_to_constant(mu)
    assert a.fiber_size == 2
    assert a.table[0][1] == SWAP
    assert a.table[0][0].is_identity()


def test_abelian_extension_matches_direct_formula():
    mu = validate_abelian(T2, (2, 2), [
        [(0, 0), (1, 1)],
        [(0, 1), (0, 0)],
    ])
    ext = extend(abelian_to_constant(mu))
    elements = list(itertools.product(range(2), range(2)))
    index = {e: i for i, e in enumerate(elements)}
    s = 4
    for x in range(2):
        for a in elements:
            for y in range(2):
                for b in elements:
                    val = tuple((c + d) % 2 for c, d in zip(a, mu.table[x][y]))
                    i = x * s + index[a]
                    j = y * s + index[b]
                    assert ext.table[i][j] == T2.table[x][y] * s + index[val]


def both_validations_agree(table):
    try:
        validate_abelian(R3, (3,), table)
        abelian_ok = True
    except (DiagonalViolation, CocycleViolation):
        abelian_ok = False
    perm_table = [
        [Perm(tuple((e + v[0]) % 3 for e in range(3))) for v in row]
        for row in table
    ]
    try:
        validate_constant(R3, 3, perm_table)
        constant_ok = True
    except (DiagonalViolation, CocycleViolation):
        constant_ok = False
    assert abelian_ok == constant_ok
    return abelian_ok


def test_abelian_valid_iff_constant_valid():
    rng = random.Random(11)
    for _ in range(200):
        table = [[(rng.randrange(3),) for _ in range(3)] for _ in range(3)]
        both_validations_agree(table)
    # random tables are essentially never valid, so exercise that side too
    assert both_validations_agree([[(0,)] * 3] * 3)
    lam = (0, 1, 2)
    coboundary = [
        [((lam[x] - lam[R3.table[x][y]]) % 3,) for y in range(3)] for x in range(3)
    ]
    assert both_validations_agree(coboundary)


def h2_oracle(base, m):
    """Exhaustive cocycle/coboundary counts: order-dividing-k profile of H^2."""
    n = base.order
    t = base.table
    free = [(x, y) for x in range(n) for y in range(n) if x != y]
    valid = []
    for combo in itertools.product(range(m), repeat=len(free)):
        tab = [[0] * n for _ in range(n)]
        for (x, y), val in zip(free, combo):
            tab[x][y] = val
        if all(
            (tab[t[x][y]][z] + tab[x][y] - tab[t[x][z]][t[y][z]] - tab[x][z]) % m == 0
            for x in range(n)
            for y in range(n)
            for z in range(n)
        ):
            valid.append(tuple(tuple(r) for r in tab))
    cobs = set()
    for lam in itertools.product(range(m), repeat=n):
        cobs.add(
            tuple(tuple((lam[x] - lam[t[x][y]]) % m for y in range(n)) for x in range(n))
        )
    order = len(valid) // len(cobs)
    profile = {}
    for k in range(1, m + 1):
        count = sum(
            1
            for v in valid
            if tuple(tuple((k * c) % m for c in row) for row in v) in cobs
        )
        profile[k] = count // len(cobs)
    return order, profile, cobs


@pytest.mark.parametrize(
    "base,m",
    [(T2, 2), (T2, 4), (R3, 2), (R3, 3), (build("trivial", 3), 2)],
)
def test_h2_matches_exhaustive_oracle(base, m):
    factors, reps = compute_h2(base, (m,))
    order, profile, cobs = h2_oracle(base, m)
    total = 1
    for f in factors:
        total *= f
    assert total == order
    for k, expected in profile.items():
        predicted = 1
        for f in factors:
            predicted *= gcd(k, f)
        assert predicted == expected
    for f, rep in zip(factors, reps):
        flat = tuple(tuple(v[0] for v in row) for row in rep.table)
        for k in range(1, f):
            scaled = tuple(tuple((k * c) % m for c in row) for row in flat)
            assert scaled not in cobs
        killed = tuple(tuple((f * c) % m for c in row) for row in flat)
        assert killed in cobs


def test_h2_trivial_point():
    assert compute_h2(build("trivial", 1), (7,)) == ((), [])


def test_h2_known_values():
    assert compute_h2(T2, (2,))[0] == (2, 2)
    assert compute_h2(T2, (2, 2))[0] == (2, 2, 2, 2)
    assert compute_h2(R3, (2,))[0] == ()
    assert compute_h2(R3, (3,))[0] == ()


def test_h2_zero_class_extension_is_product():
    mu = zero_abelian_cocycle(R3, (2,))
    assert extend(abelian_to_constant(mu)).table == extend(trivial_cocycle(R3, 2)).table


def test_h2_reps_link_to_constant_classes():
    factors, reps = compute_h2(T2, (2,))
    constants = [abelian_to_constant(r) for r in reps]
    assert are_cohomologous(constants[0], constants[1]) is None
    for c in constants:
        assert are_cohomologous(c, trivial_cocycle(T2, 2)) is None


def test_h2_cap():
    with pytest.raises(CapExceeded):
        compute_h2(build("trivial", 9), (2,))
