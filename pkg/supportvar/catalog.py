#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

"""The six-generator GCD graphs whose support is not full for trivial reasons.

Graphs are numbered 1..41 and grouped by type: F1 (1-6), F2 (7-8), F3 (9-19),
F4 (20-26), B (27-35), A (36-37) and C (38-41). Dashed variables are the
types whose absence yields interesting support.
"""

import logging

from supportvar import constants, errors, utils
from supportvar.gcd_graph import GcdGraph, clique_complex, isomorphisms
from supportvar.ideal import SquareFreeIdeal, permute_mask
from supportvar.variety import CoordinateSubspace, Full, MonomialHypersurface, Union

_logger = logging.getLogger(__name__)

GRAPH_COUNT = 41

_EDGES = {
    1: "1-4 4-5 5-6 5-3 3-2",
    2: "1-4 4-5 5-3 3-4 3-2 5-6",
    3: "5-6 5-3 3-2 2-1 1-4 4-5",
    4: "5-6 5-4 4-1 1-2 2-3 3-5 3-4",
    5: "5-6 4-1 1-2 2-3 3-5 3-4",
    6: "1-6 6-2 2-3 3-4 4-1 4-5 5-6",
    7: "6-5 5-4 3-2 2-1 4-3",
    8: "6-5 5-4 4-3 3-2 2-1 3-1",
    9: "1-6 3-2 3-4 2-4 2-6 4-6 6-5",
    10: "1-4 1-6 5-4 5-6 2-4 2-6 2-3 4-6",
    11: "3-2 3-4 3-5 5-4 5-6 2-4 2-6 4-6 6-1",
    12: "1-6 1-2 6-3 6-5 2-3 2-5 3-5 3-4 5-4",
    13: "6-5 6-1 6-2 5-1 5-4 1-4 1-2 4-2 4-3 2-3",
    14: "6-5 6-4 6-1 5-4 5-1 2-4 2-1 2-3 4-1",
    15: "1-2 1-6 2-3 2-6 5-3 5-6 5-4 3-6 3-4",
    16: "6-5 6-4 6-1 5-4 5-1 2-4 2-1 2-3 4-3 1-3",
    17: "6-5 6-4 6-1 5-2 5-4 5-1 2-4 2-1 2-3 4-3 1-3",
    18: "6-5 6-2 6-4 6-1 5-4 5-1 5-3 2-4 2-1 2-3 4-3 1-3",
    19: "1-6 1-2 4-5 4-3 5-3 5-6 3-6 6-2",
    20: "1-5 1-4 2-3 2-4 3-4 3-5 4-5 5-6",
    21: "1-3 1-4 2-3 2-4 2-5 3-5 4-5 5-6",
    22: "1-2 1-5 2-5 3-4 3-5 4-5 4-6",
    23: "6-5 5-3 3-1 1-2 2-4 4-6 4-5 2-3 4-3 2-5",
    24: "6-5 5-2 2-1 1-3 3-5 5-4 4-1 2-4 2-3 4-3",
    25: "1-2 2-3 3-6 6-4 4-1 1-5 5-3 2-5 5-4",
    26: "6-5 5-2 2-4 4-1 1-6 5-3 3-4 2-3",
    27: "1-2 1-3 1-5 2-3 2-4 2-5 3-5 3-6 4-5",
    28: "1-2 1-3 1-5 2-4 2-5 3-5 3-6 4-5",
    29: "1-2 1-3 1-5 2-4 2-5 3-6 4-5",
    30: "1-2 1-3 1-5 2-3 2-4 2-5 3-5 3-6",
    31: "1-2 1-3 1-5 2-4 2-5 3-5 3-6",
    32: "1-2 1-3 2-3 2-4 2-5 3-5 3-6",
    33: "1-2 1-3 2-4 2-5 3-5 3-6",
    34: "1-2 1-3 1-5 2-3 2-4 2-5 3-6",
    35: "1-2 1-3 1-5 2-4 2-5 3-6",
    36: "1-2 2-3 1-3 1-4 3-5 3-6",
    37: "1-2 2-3 1-4 3-5 3-6",
    38: "1-5 1-2 1-6 1-3 5-4 5-6 5-3 2-3 4-3",
    39: "1-5 1-2 1-6 5-4 5-6 5-3 2-3 4-3",
    40: "1-5 1-2 1-6 5-4 5-6 2-3 4-3",
    41: "1-2 1-6 5-4 5-6 2-3 4-3",
}

_DASHED = {
    27: "1 12 15", 28: "1 12 15", 29: "1 12 15",
    30: "1 15", 31: "1 15", 32: "1", 33: "1", 34: "1 15", 35: "1 15",
    36: "2", 37: "2",
    38: "2 4 6", 39: "2 4 6", 40: "2 4 6", 41: "2 4 6",
}

# Homotopy sources and sinks certifying V(x4) and V(x6) for the type B
# representatives: (vertex, kind, index).
TYPE_B_CONTAINMENTS = {
    27: [("001101", "sink", 4), ("110000", "source", 6)],
    28: [("001101", "sink", 4), ("100010", "source", 6)],
    29: [("001101", "sink", 4), ("100010", "source", 6)],
    30: [("001101", "sink", 4), ("010101", "sink", 6)],
    31: [("001101", "sink", 4), ("010101", "sink", 6)],
    32: [("001101", "sink", 4), ("010101", "sink", 6)],
    33: [("001101", "sink", 4), ("010101", "sink", 6)],
    34: [("101000", "source", 4), ("010101", "sink", 6)],
    35: [("101000", "source", 4), ("010101", "sink", 6)],
}


def _group(number):
    if number <= 6:
        return constants.GraphType.F1
    if number <= 8:
        return constants.GraphType.F2
    if number <= 19:
        return constants.GraphType.F3
    if number <= 26:
        return constants.GraphType.F4
    if number <= 35:
        return constants.GraphType.B
    if number <= 37:
        return constants.GraphType.A
    return constants.GraphType.C


def _parse_edges(text):
    return [tuple(int(v) for v in pair.split("-")) for pair in text.split()]


def _parse_types(text):
    return [utils.mask_from_indices(int(c) for c in token) for token in text.split()]


class CatalogGraph(object):
    """One of the 41 six-generator GCD graphs.

    :ivar number: The graph number, 1..41.
    :vartype number: int
    :ivar graph_type: The classification group.
    :vartype graph_type: ~supportvar.constants.GraphType
    :ivar graph: The GCD graph on 1..6.
    :vartype graph: ~supportvar.gcd_graph.GcdGraph
    :ivar dashed: Masks of the variables whose absence gives interesting support.
    :vartype dashed: tuple[int]
    """

    n = 6

    def __init__(self, number):
        if number not in _EDGES:
            raise errors.BadParameters("no catalog graph {}; graphs are 1..{}".format(number, GRAPH_COUNT))
        self.number = number
        self.graph_type = _group(number)
        self.graph = GcdGraph.from_edges(self.n, _parse_edges(_EDGES[number]))
        self.dashed = tuple(_parse_types(_DASHED.get(number, "")))

    def __repr__(self):
        return "CatalogGraph({}, {})".format(self.number, self.graph_type.value)

    def universe(self):
        return clique_complex(self.graph).faces

    def interesting_ideal(self):
        """X = K_G without the dashed variables."""
        dashed = set(self.dashed)
        return SquareFreeIdeal(self.n, [m for m in self.universe() if m not in dashed])

    def interesting_variety(self):
        """The support of the interesting ideal in the catalog labeling."""
        kind = self.graph_type
        if kind == constants.GraphType.A:
            return Union(self.n, [CoordinateSubspace(self.n, [4]), CoordinateSubspace(self.n, [5, 6])])
        if kind == constants.GraphType.B:
            return MonomialHypersurface(self.n, [4, 6])
        if kind == constants.GraphType.C:
            return MonomialHypersurface(self.n, [2, 4, 6])
        return Full(self.n)

    def expected_variety_for(self, ideal):
        """The support variety the classification predicts for a fiber member.

        The dashed rule holds up to relabeling: if some automorphism of the
        graph moves X off every dashed variable, the interesting variety is
        pulled back along it. Graph 41 follows the cycle-fiber parity rule.

        :type ideal: ~supportvar.ideal.SquareFreeIdeal
        :rtype: ~supportvar.variety.VarietyExpr
        """
        if self.number == 41:
            from supportvar.families import cycle_fiber_variety
            singletons = [utils.lowest_index(m) for m in ideal.masks if utils.popcount(m) == 1]
            return cycle_fiber_variety(self.n, singletons)
        if not self.dashed:
            return Full(self.n)
        masks = set(ideal.masks)
        dashed = set(self.dashed)
        for mapping in isomorphisms(self.graph, self.graph):
            if not any(permute_mask(m, mapping) in dashed for m in masks):
                inverse = {new: old for old, new in mapping.items()}
                return self.interesting_variety().permute(inverse)
        return Full(self.n)


def catalog_graph(number):
    """The catalog entry for a graph number.

    :rtype: ~supportvar.catalog.CatalogGraph
    """
    return CatalogGraph(number)


def graphs_of_type(graph_type):
    graph_type = constants.GraphType(graph_type)
    return [k for k in range(1, GRAPH_COUNT + 1) if _group(k) == graph_type]


def representative_ideals(number):
    """Representative fiber ideals with their predicted varieties.

    The interesting ideal comes first, followed by one ideal per dashed
    variable added back. Graph 41 adds the hexagon edge ideal and the
    even-singleton ideal.

    :rtype: list[tuple[str, ~supportvar.ideal.SquareFreeIdeal, ~supportvar.variety.VarietyExpr]]
    """
    entry = catalog_graph(number)
    base = entry.interesting_ideal()
    if not entry.dashed:
        return [("{}:K_G".format(number), base, Full(entry.n))]
    found = [("{}:dashed-absent".format(number), base, entry.interesting_variety())]
    for mask in entry.dashed:
        ideal = base.with_types(add=[mask])
        label = "{}:{}-present".format(number, utils.variable_name(mask))
        found.append((label, ideal, entry.expected_variety_for(ideal)))
    if number == 41:
        edges = [m for m in base.masks if utils.popcount(m) == 2]
        hexagon = SquareFreeIdeal(entry.n, edges)
        found.append(("41:hexagon", hexagon, entry.expected_variety_for(hexagon)))
        even = hexagon.with_types(add=[utils.bit(2)])
        found.append(("41:x2-only", even, entry.expected_variety_for(even)))
    _logger.debug("Graph %r has %r representatives", number, len(found))
    return found
