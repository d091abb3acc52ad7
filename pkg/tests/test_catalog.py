#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import pytest

from supportvar import constants, errors, utils
from supportvar.catalog import GRAPH_COUNT, catalog_graph, graphs_of_type, representative_ideals
from supportvar.gcd_graph import build_gcd_graph
from supportvar.variety import AlternatingBinomial, CoordinateSubspace, Full, MonomialHypersurface, Union


def m(*members):
    return utils.mask_from_indices(members)


def test_groups_partition_the_catalog():
    counts = {t: len(graphs_of_type(t)) for t in constants.GraphType}
    assert counts[constants.GraphType.F1] == 6
    assert counts[constants.GraphType.B] == 9
    assert counts[constants.GraphType.A] == 2
    assert graphs_of_type("C") == [38, 39, 40, 41]
    assert sum(counts.values()) == GRAPH_COUNT
    with pytest.raises(errors.BadParameters):
        catalog_graph(42)


def test_every_interesting_ideal_realizes_its_graph():
    for number in range(1, GRAPH_COUNT + 1):
        entry = catalog_graph(number)
        ideal = entry.interesting_ideal()
        assert build_gcd_graph(ideal) == entry.graph, number
        assert not set(entry.dashed) & set(ideal.masks)


def test_interesting_varieties():
    assert catalog_graph(3).interesting_variety() == Full(6)
    assert catalog_graph(36).interesting_variety() == \
        Union(6, [CoordinateSubspace(6, [4]), CoordinateSubspace(6, [5, 6])])
    assert catalog_graph(29).interesting_variety() == MonomialHypersurface(6, [4, 6])
    assert catalog_graph(40).interesting_variety() == MonomialHypersurface(6, [2, 4, 6])


def test_dashed_variables():
    assert catalog_graph(27).dashed == (m(1), m(1, 2), m(1, 5))
    assert catalog_graph(41).dashed == (m(2), m(4), m(6))
    assert catalog_graph(12).dashed == ()


def test_expected_variety_of_interesting_ideal():
    for number in range(27, GRAPH_COUNT):
        entry = catalog_graph(number)
        assert entry.expected_variety_for(entry.interesting_ideal()) == entry.interesting_variety()


def test_graph_41_follows_cycle_parity():
    entry = catalog_graph(41)
    hexagon = [label for label in representative_ideals(41) if label[0] == "41:hexagon"][0]
    assert hexagon[2] == AlternatingBinomial(6, [1, 3, 5], [2, 4, 6])
    even_only = [label for label in representative_ideals(41) if label[0] == "41:x2-only"][0]
    assert even_only[2] == MonomialHypersurface(6, [1, 3, 5])
    assert entry.expected_variety_for(entry.interesting_ideal()) == MonomialHypersurface(6, [2, 4, 6])


def test_representative_ideals():
    assert [label for label, _, _ in representative_ideals(1)] == ["1:K_G"]
    labels = [label for label, _, _ in representative_ideals(27)]
    assert labels == ["27:dashed-absent", "27:x1-present", "27:x12-present", "27:x15-present"]
    assert len(representative_ideals(41)) == 6
