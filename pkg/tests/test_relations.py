from __future__ import annotations

import random

import pytest

from pmmobility import (
    AxisRef,
    InconsistentRelations,
    RelationCode,
    UnknownAxis,
    build_relation_graph,
    decode_leg,
)

from helpers import (
    PRRRR_MATRIX,
    RRC_MATRIX,
    UPS_MATRIX,
    leg_from_relations,
    make_mechanism,
    pair_mechanism,
    random_mechanism,
)


def brute_force_relations(mech):
    """Independent closure: fixpoint iteration over an explicit pair table.

    Starts from the seeded codes and repeatedly applies two rules until
    nothing changes: parallel/coaxial merge transitively, and a
    perpendicular pair spreads to everything parallel to either side.
    Returns the strongest relation per unordered pair.
    """
    axes = []
    seeds = {}
    for leg in mech.legs:
        for i in range(1, leg.f + 1):
            axes.append(AxisRef(leg.label, i))
        for i in range(1, leg.f + 1):
            for j in range(i + 1, leg.f + 1):
                code = leg.relation(i, j)
                if code is not RelationCode.ARBITRARY:
                    seeds[frozenset((AxisRef(leg.label, i), AxisRef(leg.label, j)))] = code
    k = mech.leg_count
    for i in range(k):
        for j in range(i + 1, k):
            for matrix, pick in ((mech.moving.matrix, -1), (mech.fixed.matrix, 0)):
                code = matrix[i][j]
                if code is RelationCode.ARBITRARY:
                    continue
                a = AxisRef(mech.legs[i].label, 1 if pick == 0 else mech.legs[i].f)
                b = AxisRef(mech.legs[j].label, 1 if pick == 0 else mech.legs[j].f)
                key = frozenset((a, b))
                old = seeds.get(key)
                if old is None or _stronger(code, old):
                    if old is not None and _direction_conflict(old, code):
                        raise InconsistentRelations(f"{a} vs {b}")
                    seeds[key] = code
                elif old is not None and _direction_conflict(old, code):
                    raise InconsistentRelations(f"{a} vs {b}")

    parallel = {frozenset((a, b)) for pair, c in seeds.items()
                for a, b in [sorted(pair)]
                if c in (RelationCode.PARALLEL, RelationCode.COAXIAL)}
    coaxial = {frozenset((a, b)) for pair, c in seeds.items()
               for a, b in [sorted(pair)]
               if c is RelationCode.COAXIAL}
    perp = {pair for pair, c in seeds.items() if c is RelationCode.PERPENDICULAR}

    changed = True
    while changed:
        changed = False
        for x in axes:
            for y in axes:
                if x >= y:
                    continue
                for z in axes:
                    if z in (x, y):
                        continue
                    # transitive parallel through z
                    if (
                        frozenset((x, z)) in parallel
                        and frozenset((z, y)) in parallel
                        and frozenset((x, y)) not in parallel
                    ):
                        parallel.add(frozenset((x, y)))
                        changed = True
                    if (
                        frozenset((x, z)) in coaxial
                        and frozenset((z, y)) in coaxial
                        and frozenset((x, y)) not in coaxial
                    ):
                        coaxial.add(frozenset((x, y)))
                        changed = True
                    # perpendicularity spreads over parallels, from each end
                    if (
                        frozenset((x, z)) in perp
                        and frozenset((z, y)) in parallel
                        and frozenset((x, y)) not in perp
                    ):
                        perp.add(frozenset((x, y)))
                        changed = True
                    if (
                        frozenset((y, z)) in perp
                        and frozenset((z, x)) in parallel
                        and frozenset((x, y)) not in perp
                    ):
                        perp.add(frozenset((x, y)))
                        changed = True
    conflict = parallel & perp
    if conflict:
        raise InconsistentRelations(f"{sorted(conflict)[0]}")

    out = {}
    for i, a in enumerate(axes):
        for b in axes[i + 1:]:
            pair = frozenset((a, b))
            if pair in coaxial:
                out[pair] = RelationCode.COAXIAL
            elif pair in parallel:
                out[pair] = RelationCode.PARALLEL
            elif pair in perp:
                out[pair] = RelationCode.PERPENDICULAR
            else:
                out[pair] = seeds.get(pair, RelationCode.ARBITRARY)
    return out


def _stronger(new, old):
    rank = {
        RelationCode.ARBITRARY: 0,
        RelationCode.COPLANAR: 1,
        RelationCode.COMMON_POINT: 1,
        RelationCode.PERPENDICULAR: 2,
        RelationCode.PARALLEL: 2,
        RelationCode.COAXIAL: 3,
    }
    return rank[new] > rank[old]


def _direction_conflict(a, b):
    pair = {a, b}
    return RelationCode.PERPENDICULAR in pair and pair & {
        RelationCode.PARALLEL,
        RelationCode.COAXIAL,
    }


def assert_matches_brute_force(mech):
    g = build_relation_graph(mech)
    expected = brute_force_relations(mech)
    for pair, code in expected.items():
        a, b = sorted(pair)
        assert g.relation_between(a, b) is code, f"{a} vs {b}"


def test_matches_brute_force_on_fixtures(tricept, three_rrc):
    assert_matches_brute_force(tricept)
    assert_matches_brute_force(three_rrc)
    assert_matches_brute_force(pair_mechanism(PRRRR_MATRIX))
    assert_matches_brute_force(pair_mechanism(UPS_MATRIX))


def test_matches_brute_force_on_random_mechanisms():
    rng = random.Random(11)
    checked = 0
    while checked < 30:
        mech = random_mechanism(rng, max_legs=3)
        try:
            expected = brute_force_relations(mech)
        except InconsistentRelations:
            with pytest.raises(InconsistentRelations):
                build_relation_graph(mech)
            continue
        g = build_relation_graph(mech)
        for pair, code in expected.items():
            a, b = sorted(pair)
            assert g.relation_between(a, b) is code, f"{mech.name}: {a} vs {b}"
        checked += 1


def test_derived_perpendicular_through_parallel():
    # R1 || R2 and R2 _|_ R3 force R1 _|_ R3 even though (1,3) is unseeded
    leg = leg_from_relations(1, "RRR", {(1, 2): 1, (2, 3): 2})
    mech = make_mechanism("derived", [leg, leg_from_relations(2, "RRR", {(1, 2): 1, (2, 3): 2})])
    g = build_relation_graph(mech)
    assert g.relation_between(AxisRef(1, 1), AxisRef(1, 3)) is RelationCode.PERPENDICULAR


def test_prrrr_perpendicular_survives_unseeding():
    # drop the seeded (3,5) entry; closure re-derives it from R3 || R2 _|_ R5
    matrix = [row[:] for row in PRRRR_MATRIX]
    matrix[2][4] = matrix[4][2] = 0
    g = build_relation_graph(pair_mechanism(matrix))
    assert g.relation_between(AxisRef(1, 3), AxisRef(1, 5)) is RelationCode.PERPENDICULAR


def test_coaxial_chain():
    leg = leg_from_relations(1, "RRR", {(1, 2): 3, (2, 3): 3})
    mech = make_mechanism("coax", [leg, leg_from_relations(2, "RRR", {(1, 2): 3, (2, 3): 3})])
    g = build_relation_graph(mech)
    assert g.same_axis(AxisRef(1, 1), AxisRef(1, 3))
    assert g.relation_between(AxisRef(1, 1), AxisRef(1, 3)) is RelationCode.COAXIAL
    assert g.parallel(AxisRef(1, 1), AxisRef(1, 3))
    assert not g.same_axis(AxisRef(1, 1), AxisRef(2, 1))


def test_relation_is_reflexive_and_symmetric(tricept):
    g = build_relation_graph(tricept)
    axes = g.axes()
    for a in axes:
        assert g.relation_between(a, a) is RelationCode.PARALLEL
    for a in axes:
        for b in axes:
            assert g.relation_between(a, b) is g.relation_between(b, a)


def test_same_pair_conflicting_seeds():
    # one joint per leg: the moving and fixed platforms relate the same
    # axis pair, so contradictory codes collide on one seed
    legs = [leg_from_relations(1, "R", {}), leg_from_relations(2, "R", {})]
    mech = make_mechanism("clash", legs, moving_codes={(1, 2): 3}, fixed_codes={(1, 2): 2})
    with pytest.raises(InconsistentRelations, match="both perpendicular and parallel"):
        build_relation_graph(mech)


def test_perpendicular_inside_parallel_chain_names_the_cycle():
    legs = [leg_from_relations(label, "R", {}) for label in (1, 2, 3)]
    mech = make_mechanism(
        "cycle",
        legs,
        moving_codes={(1, 2): 1, (2, 3): 1, (1, 3): 2},
    )
    with pytest.raises(InconsistentRelations, match="parallel chain"):
        build_relation_graph(mech)


def test_unknown_axis():
    g = build_relation_graph(pair_mechanism(PRRRR_MATRIX))
    ghost = AxisRef(9, 1)
    with pytest.raises(UnknownAxis):
        g.kind(ghost)
    with pytest.raises(UnknownAxis):
        g.relation_between(ghost, AxisRef(1, 1))


def test_labels(tricept):
    g = build_relation_graph(tricept)
    assert g.label(AxisRef(4, 1)) == "R41"
    assert g.label(AxisRef(4, 3)) == "P43"
    assert g.label(AxisRef(1, 3)) == "P13"


def test_parallel_class_representative():
    g = build_relation_graph(pair_mechanism(RRC_MATRIX))
    root = g.parallel_class(AxisRef(1, 4))
    assert root == AxisRef(1, 1)
    assert all(g.parallel_class(AxisRef(1, j)) == root for j in range(1, 5))


def test_seeded_pairs_sorted_and_nontrivial(three_rrc):
    g = build_relation_graph(three_rrc)
    pairs = g.seeded_pairs()
    assert pairs == tuple(sorted(pairs))
    assert all(code is not RelationCode.ARBITRARY for _, _, code in pairs)
    cpt = [(a, b) for a, b, code in pairs if code is RelationCode.COMMON_POINT]
    assert len(cpt) == 6  # three moving pairs and three fixed pairs


def test_monotonicity_of_added_seeds():
    # seeding one more parallel never weakens a derived relation
    base = leg_from_relations(1, "RRRR", {(1, 2): 1, (3, 4): 2})
    richer = leg_from_relations(1, "RRRR", {(1, 2): 1, (3, 4): 2, (2, 3): 1})
    order = {
        RelationCode.ARBITRARY: 0,
        RelationCode.COPLANAR: 0,
        RelationCode.COMMON_POINT: 0,
        RelationCode.PERPENDICULAR: 1,
        RelationCode.PARALLEL: 1,
        RelationCode.COAXIAL: 2,
    }
    g_base = build_relation_graph(make_mechanism("a", [base, leg_from_relations(2, "RRRR", {})]))
    g_rich = build_relation_graph(make_mechanism("b", [richer, leg_from_relations(2, "RRRR", {})]))
    for i in range(1, 5):
        for j in range(i + 1, 5):
            before = g_base.relation_between(AxisRef(1, i), AxisRef(1, j))
            after = g_rich.relation_between(AxisRef(1, i), AxisRef(1, j))
            if before in (RelationCode.PARALLEL, RelationCode.COAXIAL):
                assert after in (RelationCode.PARALLEL, RelationCode.COAXIAL)
            if before is RelationCode.PERPENDICULAR:
                assert after is RelationCode.PERPENDICULAR
            assert order[after] >= order[before]
