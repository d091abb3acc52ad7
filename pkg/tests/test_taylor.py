#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json

import numpy as np
import pytest

from supportvar import constants, errors, utils
from supportvar.enumeration import fiber_extremes
from supportvar.gcd_graph import build_gcd_graph
from supportvar.ideal import SquareFreeIdeal
from supportvar.matchings import hypercube
from supportvar.taylor import (
    EdgeRef,
    build_taylor,
    evaluate_matrix,
    evaluate_rank,
    is_taylor_subgraph,
    rank_mod_p,
    symbolic_block,
    symbolic_rank)
from supportvar.variety import membership


def m(*members):
    return utils.mask_from_indices(members)


def test_complete_intersection_has_only_homotopy_edges(complete_intersection):
    taylor = build_taylor(complete_intersection)
    assert not taylor.differential_edges
    assert len(taylor.homotopy_edges) == 3 * 2 ** 2


def test_complete_graph_ideal_has_singleton_homotopy_targets():
    n = 4
    full = utils.full_mask(n)
    ideal = SquareFreeIdeal(n, [full & ~utils.bit(i) for i in range(1, n + 1)])
    taylor = build_taylor(ideal)
    assert len(taylor.homotopy_edges) == n
    assert all(utils.popcount(e.target) == 1 for e in taylor.homotopy_edges)


def test_running_example_contains_hypercube(running_ideal):
    taylor = build_taylor(running_ideal)
    edges = hypercube(taylor, constants.EdgeKind.Differential, m(2, 4), 3, m(1, 5))
    assert len(edges) == 4
    assert EdgeRef.differential(m(2, 4), 3, 5) in taylor
    assert EdgeRef.differential(m(2, 4), 1, 5) not in taylor


def test_missing_hypercube_edge_is_reported(running_ideal):
    taylor = build_taylor(running_ideal)
    with pytest.raises(errors.MissingEdge) as e:
        hypercube(taylor, constants.EdgeKind.Homotopy, 0, 2, m(1))
    assert e.value.info['edge']['kind'] == "h"


def test_edge_orientation():
    d = EdgeRef.differential(m(1), 3, 4)
    assert d.source == m(1, 3)
    assert d.target == m(1)
    h = EdgeRef.homotopy(m(2), 1, 4)
    assert h.source == m(2)
    assert h.target == m(1, 2)
    assert EdgeRef.from_json(d.to_json()) == d
    with pytest.raises(errors.BadParameters):
        EdgeRef.homotopy(m(2), 2, 4)


def test_ranks():
    ci = SquareFreeIdeal(2, [m(1), m(2)])
    assert evaluate_rank(build_taylor(ci), (1, 1), 101) == 2
    assert evaluate_rank(build_taylor(ci), (0, 0), 101) == 0


def test_hexagon_binomial_point_drops_rank(hexagon_ideal):
    taylor = build_taylor(hexagon_ideal)
    assert evaluate_rank(taylor, (1, 1, 1, 1, 1, -1), 101) < 2 ** 5
    assert not membership(hexagon_ideal, (1, 1, 1, 1, 1, 1), 101, taylor)
    assert membership(hexagon_ideal, (0,) * 6, 101, taylor)


def test_running_example_membership(running_ideal):
    assert membership(running_ideal, (0, 1, 1, 1, 1), 101)
    assert membership(running_ideal, (1, 1, 1, 1, 0), 101)
    assert not membership(running_ideal, (1, 1, 1, 1, 1), 101)


def test_matrix_squares_to_zero(running_ideal, hexagon_ideal):
    rng = np.random.default_rng(3)
    for ideal in (running_ideal, hexagon_ideal):
        taylor = build_taylor(ideal)
        for p in (2, 101):
            point = [int(v) for v in rng.integers(0, p, size=ideal.n)]
            assert evaluate_matrix(taylor, point, p).square_is_zero()


def test_rank_checks_inputs(running_ideal):
    taylor = build_taylor(running_ideal)
    with pytest.raises(errors.NotPrime):
        evaluate_rank(taylor, (1,) * 5, 100)
    with pytest.raises(errors.DimensionMismatch):
        evaluate_rank(taylor, (1,) * 4, 101)
    with pytest.raises(errors.MatrixTooLarge):
        evaluate_rank(taylor, (1,) * 5, 101, rank_cap_n=4)


def test_rank_mod_p_matches_dense_matrix(hexagon_ideal):
    taylor = build_taylor(hexagon_ideal)
    point = (3, 5, 7, 11, 13, 17)
    dense = evaluate_matrix(taylor, point, 32003).dense()
    assert rank_mod_p(dense, 32003) == evaluate_rank(taylor, point, 32003)


def test_generic_rank_is_half(running_ideal):
    taylor = build_taylor(running_ideal)
    rows = [v for v in range(taylor.vertex_count) if taylor.in_edges(v)]
    cols = [v for v in range(taylor.vertex_count) if taylor.out_edges(v)]
    assert symbolic_rank(symbolic_block(taylor, rows, cols)) == 2 ** 4


def test_taylor_graphs_shrink_up_the_fiber(running_ideal):
    minimal, maximal = fiber_extremes(build_gcd_graph(running_ideal))
    small = build_taylor(maximal)
    large = build_taylor(minimal[0])
    assert is_taylor_subgraph(small, large)
    removed = [e for e in large.edges if e not in small]
    assert removed and all(not e.is_homotopy for e in removed)


def test_exports(running_ideal):
    taylor = build_taylor(running_ideal)
    dot = taylor.to_dot()
    assert dot.startswith("digraph T {")
    assert '"00000" -> "10000"' in dot
    document = json.loads(taylor.dumps())
    assert document["n"] == 5
    assert len(document["edges"]) == len(taylor.edges)
