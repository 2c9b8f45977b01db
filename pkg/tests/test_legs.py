"""Leg analysis: reference outputs, trace structure, numeric agreement."""

import pytest

from pmmobility import analyze_leg, build_relation_graph, normalize, poc_or
from pmmobility.oracle import (
    Unsatisfiable,
    _rank,
    instantiate_geometry,
    leg_twist_space,
)
from pmmobility.subchains import extract_subchains

from helpers import (
    REFERENCE_LEGS,
    labeled_random_mechanism,
    leg_and_graph,
    leg_from_relations,
    make_mechanism,
    pair_mechanism,
)


@pytest.mark.parametrize("name", sorted(REFERENCE_LEGS))
def test_reference_leg_matrices(name):
    matrix, expected = REFERENCE_LEGS[name]
    leg, g = leg_and_graph(matrix)
    result = analyze_leg(leg, g)
    assert (result.matrix.t, result.matrix.r) == expected, name
    assert result.matrix.width == 6


def test_leg_matrix_owners():
    matrix, _ = REFERENCE_LEGS["UP"]
    leg, g = leg_and_graph(matrix)
    result = analyze_leg(leg, g)
    assert result.matrix.owners == (1, 1)


def test_trace_matches_segments_and_combined():
    matrix, _ = REFERENCE_LEGS["UPS"]
    leg, g = leg_and_graph(matrix)
    result = analyze_leg(leg, g)
    assert result.segments == extract_subchains(leg, g)
    assert tuple(seg for seg, _ in result.trace) == result.segments
    assert poc_or([part for _, part in result.trace]) == result.combined
    assert result.matrix == normalize(result.combined, g).widen(6)
    assert all(part.owners[0] == 1 or part.owners[1] == 1 for _, part in result.trace)


def test_coaxial_revolute_pair_adds_nothing():
    coaxial = leg_from_relations(1, "RR", {(1, 2): 3})
    mech = make_mechanism("coax", [coaxial, leg_from_relations(2, "RR", {(1, 2): 3})])
    g = build_relation_graph(mech)
    result = analyze_leg(coaxial, g)
    assert (result.xi_t, result.xi_r) == (0, 1)

    parallel = leg_from_relations(1, "RR", {(1, 2): 1})
    mech = make_mechanism("par", [parallel, leg_from_relations(2, "RR", {(1, 2): 1})])
    g = build_relation_graph(mech)
    result = analyze_leg(parallel, g)
    # distinct parallel axes do generate the relative translation
    assert (result.xi_t, result.xi_r) == (1, 1)


def test_leg_rank_never_exceeds_joint_count():
    import random

    rng = random.Random(5)
    for _ in range(40):
        mech = labeled_random_mechanism(rng)
        g = build_relation_graph(mech)
        for leg in mech.legs:
            result = analyze_leg(leg, g)
            assert result.matrix.rank <= min(leg.f, 6)


def _numeric_leg_ranks(mech, leg_index, inst):
    tb = leg_twist_space(mech, leg_index, inst)
    angular = _rank(tb.screws[:, :3])[0]
    return tb.rank, angular


@pytest.mark.parametrize("name", sorted(REFERENCE_LEGS))
def test_reference_legs_match_numeric_twists(name):
    matrix, _ = REFERENCE_LEGS[name]
    mech = pair_mechanism(matrix, name=name.lower())
    g = build_relation_graph(mech)
    result = analyze_leg(mech.legs[0], g)
    for seed in range(20):
        inst = instantiate_geometry(mech, g, seed=seed)
        rank, angular = _numeric_leg_ranks(mech, 0, inst)
        assert rank == result.xi_t + result.xi_r, (name, seed)
        assert angular == result.xi_r, (name, seed)


def test_random_legs_match_numeric_twists():
    import random

    rng = random.Random(20240815)
    checked = 0
    while checked < 60:
        mech = labeled_random_mechanism(rng)
        g = build_relation_graph(mech)
        try:
            instances = [instantiate_geometry(mech, g, seed=s) for s in (0, 1, 2)]
        except Unsatisfiable:
            continue
        for i, leg in enumerate(mech.legs):
            result = analyze_leg(leg, g)
            for inst in instances:
                rank, angular = _numeric_leg_ranks(mech, i, inst)
                assert rank == result.xi_t + result.xi_r, (mech.name, leg.label)
                assert angular == result.xi_r, (mech.name, leg.label)
            checked += 1
