#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import numpy as np
import pytest

from supportvar import constants, detectors, errors, utils
from supportvar.catalog import TYPE_B_CONTAINMENTS, catalog_graph
from supportvar.detectors import (
    ContainmentCertificate,
    FullSupportWitness,
    counting_detectors,
    find_high_degree_vertices,
    find_homotopy_sources_sinks,
    find_isolated,
    find_odd_alternating_walk,
    full_support_witnesses,
    verify_witness)
from supportvar.families import FamilySpec, make_family
from supportvar.ideal import SquareFreeIdeal
from supportvar.taylor import build_taylor
from supportvar.variety import membership


def m(*members):
    return utils.mask_from_indices(members)


def cycle(n):
    return make_family(FamilySpec(constants.FamilyKind.CycleEdgeIdeal, n=n))


def vertex(text):
    return utils.parse_mask(text)[0]


def test_isolated_vertices():
    assert vertex("11001100") in find_isolated(build_taylor(cycle(8)))
    assert find_isolated(build_taylor(cycle(6))) == []


def test_isolated_vertices_of_graph_41_with_singletons():
    base = catalog_graph(41).interesting_ideal()
    isolated = find_isolated(build_taylor(base.with_types(add=[m(1), m(2)])))
    assert vertex("111001") in isolated


@pytest.mark.parametrize("singletons, text", [
    ((1, 2), "111001"),
    ((1, 4), "011011"),
])
def test_isolated_vertices_of_hexagon_with_mixed_parity_singletons(hexagon_ideal, singletons, text):
    ideal = hexagon_ideal.with_types(add=[m(i) for i in singletons])
    assert vertex(text) in find_isolated(build_taylor(ideal))


def test_sources_and_sinks_of_running_example(running_ideal):
    found = find_homotopy_sources_sinks(build_taylor(running_ideal))
    assert ContainmentCertificate(m(1, 4, 5), constants.ContainmentKind.Sink, [1], 5) in found
    assert ContainmentCertificate(m(2, 3), constants.ContainmentKind.Source, [5], 5) in found


def test_empty_set_is_a_source_of_complete_intersection(complete_intersection):
    found = find_homotopy_sources_sinks(build_taylor(complete_intersection))
    assert ContainmentCertificate(0, constants.ContainmentKind.Source, [1, 2, 3], 3) in found


def test_containments_lie_in_support(running_ideal):
    taylor = build_taylor(running_ideal)
    rng = np.random.default_rng(11)
    for certificate in find_homotopy_sources_sinks(taylor):
        for _ in range(10):
            point = [int(v) for v in rng.integers(0, 101, size=5)]
            for i in certificate.indices:
                point[i - 1] = 0
            assert membership(running_ideal, point, 101, taylor)


@pytest.mark.parametrize("number", sorted(TYPE_B_CONTAINMENTS))
def test_type_b_containments(number):
    taylor = build_taylor(catalog_graph(number).interesting_ideal())
    found = find_homotopy_sources_sinks(taylor)
    for text, kind, index in TYPE_B_CONTAINMENTS[number]:
        assert any(c.vertex == vertex(text) and c.kind.value == kind and index in c.indices
                   for c in found), (number, text)


def test_degree3_witness_on_graph_1():
    taylor = build_taylor(catalog_graph(1).interesting_ideal())
    witnesses = counting_detectors(taylor)
    expected = FullSupportWitness(constants.WitnessKind.Degree3Isolated, 6, sigma=m(3, 4, 5))
    assert expected in witnesses
    assert verify_witness(taylor, taylor.gcd_graph, expected)


def test_edge_pair_witness_on_graph_7():
    taylor = build_taylor(catalog_graph(7).interesting_ideal())
    expected = FullSupportWitness(constants.WitnessKind.EdgePairFamily, 6, edges=[m(1, 2), m(5, 6)])
    assert expected in counting_detectors(taylor)


def test_odd_walks_on_odd_cycles():
    for n in (7, 9):
        taylor = build_taylor(cycle(n))
        walk = find_odd_alternating_walk(taylor)
        assert walk is not None
        assert len(walk['walk']) % 2 == 1
        assert verify_witness(taylor, taylor.gcd_graph, walk)


def bit_flip_walk(start):
    mask, n = utils.parse_mask(start)
    walk = [mask]
    for i in range(n - 1):
        mask ^= 1 << i
        walk.append(mask)
    return walk, n


@pytest.mark.parametrize("start, end, direction", [
    ("0110011", "1001101", constants.WalkDirection.Sink),
    ("001100110", "110011000", constants.WalkDirection.Source),
])
def test_bit_flip_walks_on_odd_cycles(start, end, direction):
    walk, n = bit_flip_walk(start)
    assert walk[-1] == vertex(end)
    taylor = build_taylor(cycle(n))
    witness = FullSupportWitness(
        constants.WitnessKind.OddAlternatingWalk, n, walk=walk, direction=direction)
    assert verify_witness(taylor, taylor.gcd_graph, witness)
    reversed_walk = FullSupportWitness(
        constants.WitnessKind.OddAlternatingWalk, n, walk=walk[::-1], direction=direction)
    assert verify_witness(taylor, taylor.gcd_graph, reversed_walk)
    assert full_support_witnesses(taylor)


def test_walk_with_a_non_terminal_end_is_rejected():
    walk, n = bit_flip_walk("0110011")
    taylor = build_taylor(cycle(n))
    witness = FullSupportWitness(
        constants.WitnessKind.OddAlternatingWalk, n, walk=walk[:-2], direction=constants.WalkDirection.Sink)
    assert not verify_witness(taylor, taylor.gcd_graph, witness)


def test_no_odd_walk_on_complete_intersection(complete_intersection):
    assert find_odd_alternating_walk(build_taylor(complete_intersection)) is None
    with pytest.raises(errors.BadParameters):
        find_odd_alternating_walk(build_taylor(complete_intersection), max_len=4)


def test_high_degree_vertex_gives_full_support():
    ideal = SquareFreeIdeal(4, [m(1, 2), m(1, 3), m(1, 4), m(2), m(3), m(4)])
    taylor = build_taylor(ideal)
    found = find_high_degree_vertices(taylor)
    assert [w['index'] for w in found] == [1]
    assert full_support_witnesses(taylor)


def test_hexagon_has_no_full_support_witness(hexagon_ideal):
    assert full_support_witnesses(build_taylor(hexagon_ideal), find_all=True) == []


def test_generic_rank_stage_runs_without_suspects(hexagon_ideal, monkeypatch):
    seen = []

    def record(taylor, cap, suspects=None):
        seen.append(suspects)
        return []

    monkeypatch.setattr(detectors, "generic_component_ranks", record)
    assert full_support_witnesses(build_taylor(hexagon_ideal), find_all=True) == []
    assert seen == [None]


def test_type_b_fiber_member_with_x1_is_full():
    ideal = catalog_graph(27).interesting_ideal().with_types(add=[m(1)])
    assert full_support_witnesses(build_taylor(ideal))


def test_witness_documents():
    witness = FullSupportWitness(constants.WitnessKind.IsolatedVertex, 4, vertex=m(1, 2))
    document = witness.to_json()
    assert document == {"lemma": "IsolatedVertex", "vertex": "1100"}
    assert FullSupportWitness.from_json(document, 4) == witness
    certificate = ContainmentCertificate(m(1, 4, 5), "sink", [1], 5)
    assert certificate.to_json() == {"kind": "sink", "vertex": "10011", "indices": [1]}
    assert ContainmentCertificate.from_json(certificate.to_json(), 5) == certificate
