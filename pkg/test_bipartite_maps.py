import random

import pytest

from app.exceptions import ClosureOverflowError, CongruenceError, DomainError, NotAdmissibleError
from app.models.knn import DeltaBar, StarVariant
from app.models.perm import Perm
from app.services.bipartite_maps import (
    build_r_l, canonical_triple, check_star_equation, delta_of_deltabar, deltabar_nx,
    deltabar_of_delta, derived_map, enumerate_nnon, half_turn_related, in_mnon_by_group,
    in_mnon_by_star, linear_deltabar, map_of_deltabar, nnon_rejection, reduction,
    reduction_chain, star_witnesses, vertex_negation,
)
from app.services.classifier import iter_involutions
from app.services.flag_maps import is_orientable, is_regular, isomorphic
from app.services.permutation_groups import close_group, order

SWEEP_MAX = 10


def identity_deltabar(n):
    return DeltaBar(n, Perm.identity(n))


def iota_deltabar(n):
    return deltabar_of_delta(n, Perm.identity(n))


@pytest.fixture(scope='module')
def sweep():
    """Every involution delta fixing 0 for 2 <= n <= SWEEP_MAX, with both verdicts and the derived map."""
    rows = []
    for n in range(2, SWEEP_MAX + 1):
        for delta in iter_involutions(n):
            deltabar = deltabar_of_delta(n, delta)
            try:
                flag_map = derived_map(canonical_triple(n, delta))
            except (NotAdmissibleError, ClosureOverflowError):
                flag_map = None
            rows.append({
                'n': n,
                'delta': delta,
                'deltabar': deltabar,
                'group': in_mnon_by_group(deltabar),
                'star': in_mnon_by_star(deltabar),
                'witnesses': star_witnesses(deltabar),
                'map': flag_map,
            })
    return rows


@pytest.fixture(scope='module')
def nnon_members():
    return [db for n in range(2, 201) for db in enumerate_nnon(n)]


def test_canonical_triple_n4_identity():
    triple = canonical_triple(4, Perm.identity(4))
    assert triple.ell(1) == 7
    assert [triple.ell(k) for k in range(4)] == [4, 7, 6, 5]
    assert [triple.t(k) for k in range(8)] == [0, 3, 2, 1, 4, 7, 6, 5]
    assert [triple.r(k) for k in range(8)] == [0, 1, 2, 3, 5, 4, 7, 6]
    assert triple.root_edge == (0, 4)


def test_canonical_triple_commutes():
    for n in range(2, 12):
        triple = canonical_triple(n, Perm.identity(n))
        assert triple.ell * triple.t == triple.t * triple.ell


def test_canonical_triple_rejects_bad_delta():
    with pytest.raises(DomainError):
        canonical_triple(4, Perm([0, 2, 3, 1]))
    with pytest.raises(DomainError):
        canonical_triple(4, Perm([1, 0, 2, 3]))


def test_products_transcribed_on_n4():
    for delta in iter_involutions(4):
        triple = canonical_triple(4, delta)
        deltabar = deltabar_of_delta(4, delta)
        rotation, swap = build_r_l(deltabar)
        assert triple.r * triple.t == rotation
        assert triple.t * triple.ell == swap
        assert [rotation(k) for k in range(4)] == deltabar.to_list()
        assert [rotation(4 + j) for j in range(4)] == [5, 6, 7, 4]
        assert triple.t == vertex_negation(4)


def test_deltabar_of_identity_is_negation():
    deltabar = iota_deltabar(5)
    assert deltabar.to_list() == [0, 4, 3, 2, 1]
    assert deltabar.perm.cycles(include_fixed=True) == [(0,), (1, 4), (2, 3)]


def test_delta_of_deltabar_14_4():
    delta = delta_of_deltabar(14, deltabar_nx(14, 4))
    for k in range(14):
        expected = k if k % 2 == 0 else (4 - k) % 14
        assert delta(k) == expected
    assert delta.is_involution()


def test_delta_deltabar_round_trip():
    rng = random.Random(42)
    for _ in range(100):
        n = rng.randrange(3, 21)
        points = list(range(1, n))
        rng.shuffle(points)
        image = list(range(n))
        for a, b in list(zip(points[::2], points[1::2]))[:rng.randrange(0, n // 2 + 1)]:
            image[a], image[b] = b, a
        delta = Perm(image)
        deltabar = deltabar_of_delta(n, delta)
        assert deltabar.skew
        assert delta_of_deltabar(n, deltabar) == delta
        assert deltabar_of_delta(n, delta_of_deltabar(n, deltabar)) == deltabar


def test_deltabar_rejects_non_skew_and_moved_zero():
    with pytest.raises(DomainError):
        DeltaBar(4, Perm([0, 2, 1, 3]))
    with pytest.raises(DomainError):
        DeltaBar(3, Perm([1, 0, 2]))
    assert not DeltaBar(4, Perm([0, 2, 1, 3]), check_skew=False).skew


def test_build_r_l():
    rotation, swap = build_r_l(deltabar_nx(14, 4))
    assert (swap * swap).is_identity()
    assert order(swap * rotation) == 8

    rotation, _ = build_r_l(identity_deltabar(7))
    assert [rotation(k) for k in range(7)] == list(range(7))
    assert rotation.cycles() == [tuple(range(7, 14))]


def test_in_mnon_by_group_examples():
    assert in_mnon_by_group(deltabar_nx(14, 4))
    assert not in_mnon_by_group(identity_deltabar(5))
    assert not in_mnon_by_group(iota_deltabar(6))


def test_star_witnesses_14_4():
    witnesses = star_witnesses(deltabar_nx(14, 4))
    assert len(witnesses) == 14
    second = witnesses[2]
    assert (second.variant, second.a, second.b) == (StarVariant.STAR1, 12, 9)
    first = witnesses[1]
    assert (first.variant, first.a, first.b) == (StarVariant.STAR2, 5, 9)
    assert StarVariant.FAIL not in {w.variant for w in witnesses}
    assert witnesses[0].variant == StarVariant.STAR1
    assert in_mnon_by_star(deltabar_nx(14, 4))


def test_star_witnesses_iota_even_n():
    witnesses = star_witnesses(iota_deltabar(6))
    assert all(w.variant == StarVariant.STAR1 for w in witnesses)
    assert not in_mnon_by_star(iota_deltabar(6))


def test_deltabar_nx_14_4():
    deltabar = deltabar_nx(14, 4)
    assert deltabar.perm.cycles(include_fixed=True) == [
        (0,), (1, 5, 9, 13, 3, 7, 11), (2, 12), (4, 10), (6, 8),
    ]
    assert deltabar.skew
    inverse = deltabar.perm.inverse()
    for k in range(14):
        assert inverse((-k) % 14) == (-deltabar(k)) % 14
    assert deltabar.order_d == 14


def test_deltabar_nx_14_6_builds_but_is_not_member():
    deltabar = deltabar_nx(14, 6)
    assert not in_mnon_by_star(deltabar)
    assert not in_mnon_by_group(deltabar)


@pytest.mark.parametrize('n,x', [(14, 5), (13, 4), (14, 2), (14, 14), (12, 4), (16, 8)])
def test_deltabar_nx_rejects(n, x):
    with pytest.raises(DomainError):
        deltabar_nx(n, x)


def test_nnon_rejection_reasons():
    assert nnon_rejection(14, 4) is None
    assert 'x^2 = 2' in nnon_rejection(14, 6)
    assert nnon_rejection(12, 4) == 'n is divisible by 4'
    assert nnon_rejection(15, 4) == 'n is odd'


def test_enumerate_nnon():
    assert [db.x for db in enumerate_nnon(14)] == [4, 10]
    assert enumerate_nnon(12) == []
    assert enumerate_nnon(13) == []
    assert enumerate_nnon(2) == []
    assert [db.x for db in enumerate_nnon(34)] == [6, 28]


def test_reduction_identity_modulus():
    deltabar = deltabar_nx(14, 4)
    assert reduction(deltabar, 14) == deltabar


def test_reduction_of_negation():
    assert reduction(iota_deltabar(12), 4) == iota_deltabar(4)


def test_reduction_congruence_violation():
    deltabar = deltabar_of_delta(8, Perm.from_cycles([(1, 2)], 8))
    assert deltabar(1) == 7 and deltabar(7) == 2
    with pytest.raises(CongruenceError) as info:
        reduction(deltabar, 2)
    assert info.value.m == 2


def test_reduction_requires_divisor():
    with pytest.raises(DomainError):
        reduction(deltabar_nx(14, 4), 4)


def test_reduction_chain_stops():
    assert reduction_chain(deltabar_nx(14, 4)) == [deltabar_nx(14, 4)]
    assert reduction_chain(iota_deltabar(12)) == [iota_deltabar(12)]


def test_reduction_chain_steps_down():
    # k -> 4k on Z_9 has order 3, and reduces to the identity on Z_3
    chain = reduction_chain(linear_deltabar(9, 3, 1))
    assert [db.n for db in chain] == [9, 3]
    assert chain[-1].to_list() == [0, 1, 2]


@pytest.mark.parametrize('n,d,r', [(5, 1, 5), (9, 3, 1), (9, 3, 2), (8, 2, 1)])
def test_linear_family_closure(n, d, r):
    deltabar = linear_deltabar(n, d, r)
    rotation, swap = build_r_l(deltabar)
    closure = close_group([rotation, swap], cap=4 * n * n + 1)
    assert closure.is_complete
    assert len(closure) == 2 * n * n
    assert vertex_negation(n) not in closure
    assert not in_mnon_by_group(deltabar)


@pytest.mark.parametrize('n,d,r', [(5, 1, 5), (8, 2, 1)])
def test_linear_family_derived_map_is_orientable(n, d, r):
    deltabar = linear_deltabar(n, d, r)
    assert deltabar.skew
    flag_map = map_of_deltabar(deltabar)
    assert flag_map.flag_count == 4 * n * n
    assert is_regular(flag_map)
    assert is_orientable(flag_map)


def test_linear_family_skew_only_for_involutive_multiplier():
    assert not linear_deltabar(9, 3, 1).skew
    assert not linear_deltabar(9, 3, 2).skew


def test_linear_family_rejects_wrong_order():
    with pytest.raises(DomainError):
        linear_deltabar(9, 3, 3)
    with pytest.raises(DomainError):
        linear_deltabar(9, 2, 1)


def test_derived_map_flag_order_is_deterministic():
    first = derived_map(canonical_triple(14, delta_of_deltabar(14, deltabar_nx(14, 4))))
    second = derived_map(canonical_triple(14, delta_of_deltabar(14, deltabar_nx(14, 4))))
    assert first == second
    assert first.flag_count == 784


def test_derived_map_rejects_non_admissible():
    with pytest.raises((NotAdmissibleError, ClosureOverflowError)):
        derived_map(canonical_triple(4, Perm.from_cycles([(1, 2)], 4)))


def test_derived_map_n2_degenerates():
    with pytest.raises(NotAdmissibleError) as info:
        derived_map(canonical_triple(2, Perm.identity(2)))
    assert info.value.condition == 'klein_four'


def test_half_turn_related():
    delta = Perm.from_cycles([(1, 5)], 6)
    shifted = Perm([(delta((k + 3) % 6) + 3) % 6 for k in range(6)])
    assert half_turn_related(6, delta, shifted)
    assert half_turn_related(6, shifted, delta)
    assert not half_turn_related(5, Perm.identity(5), Perm.identity(5))


def test_routes_agree(sweep):
    for row in sweep:
        assert row['group'] == row['star'], (row['n'], row['delta'])


def test_group_route_agrees_with_derived_map(sweep):
    for row in sweep:
        pipeline = row['map'] is not None and not is_orientable(row['map'])
        assert row['group'] == pipeline, (row['n'], row['delta'])


def test_derived_maps_are_regular(sweep):
    for row in sweep:
        if row['map'] is not None:
            assert is_regular(row['map']), (row['n'], row['delta'])


def test_witness_formulas_on_sweep(sweep):
    for row in sweep:
        deltabar = row['deltabar']
        n = deltabar.n
        for witness in row['witnesses']:
            assert witness.a == deltabar(witness.i)
            step = deltabar.power_at(witness.i, 1)
            if witness.variant == StarVariant.STAR1:
                assert witness.b == step == deltabar.power_at(-witness.a, 1)
            elif witness.variant == StarVariant.STAR2:
                assert witness.b == (-step) % n == deltabar.power_at(-witness.a, 1)


def test_witness_formulas_on_constructive_family(nnon_members):
    for deltabar in nnon_members:
        n = deltabar.n
        for witness in star_witnesses(deltabar):
            assert witness.variant != StarVariant.FAIL
            assert witness.a == deltabar(witness.i)
            step = deltabar.power_at(witness.i, 1)
            expected = step if witness.variant == StarVariant.STAR1 else (-step) % n
            assert witness.b == expected == deltabar.power_at(-witness.a, 1)


def test_no_shift_satisfies_both_variants(nnon_members):
    for deltabar in nnon_members:
        for i in range(deltabar.n):
            assert not (check_star_equation(deltabar, i, StarVariant.STAR1)
                        and check_star_equation(deltabar, i, StarVariant.STAR2)), (deltabar, i)


def test_covalency_eight_on_constructive_family(nnon_members):
    for deltabar in nnon_members:
        rotation, swap = build_r_l(deltabar)
        assert order(swap * rotation) == 8, deltabar


def test_constructive_family_members_by_both_routes(nnon_members):
    for deltabar in nnon_members:
        if deltabar.n <= 50:
            assert in_mnon_by_group(deltabar), deltabar
        assert in_mnon_by_star(deltabar), deltabar


def half_turn_census(sweep):
    """Counts of admissible maps, isomorphic pairs and half-turn related pairs over the sweep."""
    maps = isomorphic_pairs = related_pairs = 0
    for n in range(3, SWEEP_MAX + 1):
        rows = [row for row in sweep if row['n'] == n and row['map'] is not None]
        maps += len(rows)
        for i, first in enumerate(rows):
            for second in rows[i + 1:]:
                related = half_turn_related(n, first['delta'], second['delta'])
                related_pairs += related
                if isomorphic(first['map'], second['map'], regular=True):
                    assert n % 2 == 0 and related, (n, first['delta'], second['delta'])
                    isomorphic_pairs += 1
    return maps, isomorphic_pairs, related_pairs


def test_isomorphic_derived_maps_are_half_turn_related(sweep):
    # up to n = 10 distinct admissible delta never give isomorphic maps
    assert half_turn_census(sweep) == (16, 0, 0)
