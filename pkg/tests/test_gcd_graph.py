#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

from itertools import combinations

import pytest

from supportvar import errors, utils
from supportvar.enumeration import count_fiber, enumerate_fiber, fiber_extremes, jg_minimal_generators
from supportvar.gcd_graph import (
    GcdGraph,
    build_gcd_graph,
    clique_complex,
    components,
    ideal_automorphisms,
    isomorphisms,
    neighborhood,
    presence_constraints)
from supportvar.ideal import SquareFreeIdeal


def m(*members):
    return utils.mask_from_indices(members)


def path(n):
    return GcdGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def brute_force_fiber(graph):
    faces = clique_complex(graph).faces
    found = set()
    for size in range(1, len(faces) + 1):
        for chosen in combinations(faces, size):
            try:
                ideal = SquareFreeIdeal(graph.n, chosen)
            except errors.InputError:
                continue
            if build_gcd_graph(ideal) == graph:
                found.add(ideal)
    return found


def test_triangle_with_pendant(triangle_pendant_ideal):
    graph = build_gcd_graph(triangle_pendant_ideal)
    assert graph.edge_list() == [(1, 2), (1, 3), (1, 4), (2, 3)]
    assert graph.triangle_masks() == [m(1, 2, 3)]
    assert graph.leaves() == [4]
    assert neighborhood(graph, m(1)) == m(2, 3, 4)
    assert sorted(clique_complex(graph).facets()) == [m(1, 2, 3), m(1, 4)]


def test_gcd_graph_of_running_example(running_ideal):
    assert build_gcd_graph(running_ideal) == path(5)


def test_adjacency_is_checked():
    with pytest.raises(errors.BadParameters):
        GcdGraph(2, [0b10, 0])
    with pytest.raises(errors.IndexOutOfRange):
        GcdGraph.from_edges(3, [(1, 4)])


def test_presence_constraints_on_path():
    forced = sorted(c.forced for c in presence_constraints(path(5)) if c.is_forced)
    assert forced == sorted([m(1), m(5), m(1, 2), m(2, 3), m(3, 4), m(4, 5)])


def test_presence_constraints_hold_on_fiber():
    graph = GcdGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
    constraints = presence_constraints(graph)
    for ideal in enumerate_fiber(graph):
        assert all(c.satisfied_by(ideal.masks) for c in constraints)


def test_components_split_disconnected_graph():
    graph = GcdGraph.from_edges(5, [(1, 2), (4, 5)])
    assert components(graph) == [m(1, 2), m(3), m(4, 5)]


def test_dot_export_accepts_styles():
    dot = path(3).to_dot({2: {"style": "dashed"}})
    assert dot.startswith("graph G {")
    assert "1 -- 2" in dot
    assert 'style="dashed"' in dot


def test_isomorphisms_of_path():
    assert len(list(isomorphisms(path(5), path(5)))) == 2


def test_automorphisms_of_hexagon(hexagon_ideal):
    found = ideal_automorphisms(hexagon_ideal)
    assert len(found) == 12
    assert found[0] == {i: i for i in range(1, 7)}


def test_jg_of_triangle_with_pendant():
    graph = GcdGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
    description = jg_minimal_generators(graph)
    assert len(description.minimal_supports) == 4
    assert frozenset([m(4), m(1, 2), m(1, 3), m(1, 4), m(2, 3)]) in description.minimal_supports
    assert "x4*x12*x13*x14*x23" in description.render()


def test_triangle_free_graphs_have_principal_jg():
    for graph in (path(4), path(5), GcdGraph.from_edges(4, [(1, 2), (1, 3), (1, 4)])):
        assert len(jg_minimal_generators(graph).minimal_supports) == 1


def test_fiber_sizes():
    assert count_fiber(path(5)) == 8
    assert len(list(enumerate_fiber(path(5)))) == 8
    hexagon = GcdGraph.from_edges(6, [(i, i % 6 + 1) for i in range(1, 7)])
    assert count_fiber(hexagon) == 64


def test_fiber_matches_brute_force():
    for graph in (GcdGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)]),
                  GcdGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]),
                  path(4)):
        streamed = list(enumerate_fiber(graph))
        assert len(streamed) == len(set(streamed))
        assert set(streamed) == brute_force_fiber(graph)
        assert count_fiber(graph) == len(streamed)


def test_fiber_order_is_stable():
    graph = GcdGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
    first = [ideal.dumps() for ideal in enumerate_fiber(graph)]
    second = [ideal.dumps() for ideal in enumerate_fiber(graph)]
    assert first == second


def test_fiber_cap_truncates():
    stream = enumerate_fiber(path(5), cap=3)
    assert len(list(stream)) == 3
    assert stream.truncated


def test_fiber_extremes():
    minimal, maximal = fiber_extremes(path(5))
    assert len(minimal) == 1
    assert len(minimal[0].masks) == 6
    assert len(maximal.masks) == 9
