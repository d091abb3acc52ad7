#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import numpy as np
import pytest

from supportvar import constants, errors, utils
from supportvar.catalog import catalog_graph
from supportvar.families import (
    FamilySpec,
    cycle_fiber,
    cycle_fiber_variety,
    delta_graph,
    equigeneration_degrees,
    expected_variety,
    family_matching,
    make_family,
    suggest_matchings)
from supportvar.gcd_graph import build_gcd_graph, isomorphisms
from supportvar.matchings import verify_matching
from supportvar.taylor import build_taylor
from supportvar.variety import AlternatingBinomial, CoordinateSubspace, Full, MonomialHypersurface, Union

kinds = constants.FamilyKind


def test_double_broom_is_a_path():
    ideal = make_family(FamilySpec(kinds.DoubleBroom, a=1, b=1))
    assert build_gcd_graph(ideal).edge_list() == [(1, 2), (1, 4), (2, 3), (3, 5)]
    assert utils.bit(2) not in ideal.masks
    with_f2 = make_family(FamilySpec(kinds.DoubleBroom, a=1, b=1, with_f2=True))
    assert utils.bit(2) in with_f2.masks


def test_cycle_edge_ideal_types():
    ideal = make_family(FamilySpec(kinds.CycleEdgeIdeal, n=6))
    assert sorted(ideal.masks) == sorted(utils.mask_from_indices([i, i % 6 + 1]) for i in range(1, 7))


def test_delta_three_is_catalog_graph_38():
    assert isomorphisms(delta_graph(3), catalog_graph(38).graph)
    ideal = make_family(FamilySpec(kinds.DeltaN, n=3))
    assert ideal.n == 6


def test_expected_varieties():
    assert expected_variety(FamilySpec(kinds.WhiskeredTriangle, a=2, b=3)) == \
        Union(8, [CoordinateSubspace(8, [4, 5]), CoordinateSubspace(8, [6, 7, 8])])
    assert expected_variety(FamilySpec(kinds.DoubleBroom, a=2, b=3, with_f2=True)) == Full(8)
    assert expected_variety(FamilySpec(kinds.DeltaN, n=5)) == MonomialHypersurface(10, range(6, 11))
    assert expected_variety(FamilySpec(kinds.CycleEdgeIdeal, n=10)) == \
        AlternatingBinomial(10, [1, 3, 5, 7, 9], [2, 4, 6, 8, 10])
    assert expected_variety(FamilySpec(kinds.CycleEdgeIdeal, n=8)) == Full(8)
    assert expected_variety(FamilySpec(kinds.TypeB, graph=30)) == MonomialHypersurface(6, [4, 6])


def test_cycle_fiber_parity_rule():
    assert cycle_fiber_variety(6, []) == AlternatingBinomial(6, [1, 3, 5], [2, 4, 6])
    assert cycle_fiber_variety(6, [1, 5]) == MonomialHypersurface(6, [2, 4, 6])
    assert cycle_fiber_variety(6, [4]) == MonomialHypersurface(6, [1, 3, 5])
    assert cycle_fiber_variety(6, [1, 2]) == Full(6)
    assert cycle_fiber_variety(7, []) == Full(7)
    ideal, variety = cycle_fiber(6, [1, 3])
    assert len(ideal.masks) == 8
    assert variety == MonomialHypersurface(6, [2, 4, 6])


def test_labels():
    assert FamilySpec(kinds.DoubleBroom, a=1, b=2).label == "DB(1,2)"
    assert FamilySpec(kinds.WhiskeredTriangle, a=1, b=1, with_f2=True).label == "WT(1,1)+x2"
    assert FamilySpec(kinds.CycleFiber, n=6, singletons=[3, 1]).label == "C(6)+x1x3"
    assert FamilySpec(kinds.DeltaN, n=4).generator_count == 8


def test_invalid_parameters():
    with pytest.raises(errors.BadParameters):
        make_family(FamilySpec(kinds.CycleEdgeIdeal, n=2))
    with pytest.raises(errors.BadParameters):
        make_family(FamilySpec(kinds.DoubleBroom, a=0, b=2))
    with pytest.raises(errors.BadParameters):
        make_family(FamilySpec(kinds.TypeB, graph=12))
    with pytest.raises(errors.BadParameters):
        make_family(FamilySpec(kinds.DeltaN, n=13))
    with pytest.raises(errors.IndexOutOfRange):
        make_family(FamilySpec(kinds.CycleFiber, n=6, singletons=[7]))
    with pytest.raises(ValueError):
        FamilySpec(kinds.DeltaN, m=3)


@pytest.mark.parametrize("spec", [
    FamilySpec(kinds.CycleEdgeIdeal, n=6),
    FamilySpec(kinds.CycleFiber, n=6, singletons=[1]),
    FamilySpec(kinds.CycleFiber, n=6, singletons=[2]),
    FamilySpec(kinds.DoubleBroom, a=1, b=2),
    FamilySpec(kinds.WhiskeredTriangle, a=1, b=1),
    FamilySpec(kinds.DeltaN, n=3),
    FamilySpec(kinds.TypeB, graph=27),
    FamilySpec(kinds.TypeB, graph=33),
], ids=lambda spec: spec.label)
def test_hand_matchings_verify(spec):
    sigma, matching = family_matching(spec)
    assert sigma == matching.sigma
    assert verify_matching(build_taylor(make_family(spec)), matching)


def test_no_hand_construction_for_full_support():
    with pytest.raises(errors.NoHandConstruction):
        family_matching(FamilySpec(kinds.CycleFiber, n=6, singletons=[1, 2]))
    with pytest.raises(errors.NoHandConstruction):
        family_matching(FamilySpec(kinds.DoubleBroom, a=1, b=1, with_f2=True))


def test_suggested_matchings_verify():
    ideal = make_family(FamilySpec(kinds.DoubleBroom, a=1, b=1))
    taylor = build_taylor(ideal)
    suggested = suggest_matchings(ideal, taylor)
    assert suggested
    for label, sigma, matching in suggested:
        assert label.startswith("DB")
        assert sigma == matching.sigma
        assert verify_matching(taylor, matching)


def test_equigeneration_degrees(running_ideal):
    degrees = equigeneration_degrees(running_ideal, np.random.default_rng(0), count=5)
    assert len(degrees) == 5
    assert degrees[0] == {mask: 1 for mask in running_ideal.masks}
    assert all(1 <= d <= 4 for assignment in degrees for d in assignment.values())
