#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging

import networkx as nx
from networkx.algorithms import isomorphism

from supportvar import constants, errors, utils
from supportvar.ideal import permute_mask

_logger = logging.getLogger(__name__)


class GcdGraph(object):
    """The GCD graph G_f: generators i and j are adjacent when gcd(f_i, f_j)
    is not a unit.

    :ivar n: The number of vertices.
    :vartype n: int
    :ivar adjacency: Neighbor mask of each vertex, adjacency[i - 1] for vertex i.
    :vartype adjacency: tuple[int]
    """

    def __init__(self, n, adjacency):
        adjacency = tuple(int(a) for a in adjacency)
        if len(adjacency) != n:
            raise errors.DimensionMismatch("adjacency has {} rows for n={}".format(len(adjacency), n))
        for i, row in enumerate(adjacency, 1):
            if row & utils.bit(i):
                raise errors.BadParameters("vertex {} has a self-loop".format(i))
            for j in utils.indices(row):
                if j > n or not adjacency[j - 1] & utils.bit(i):
                    raise errors.BadParameters("adjacency is not symmetric at {}-{}".format(i, j))
        self.n = n
        self.adjacency = adjacency

    def __repr__(self):
        return "GcdGraph(n={}, edges={})".format(self.n, self.edge_list())

    def __eq__(self, other):
        return isinstance(other, GcdGraph) and (self.n, self.adjacency) == (other.n, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.adjacency))

    @classmethod
    def from_edges(cls, n, edges):
        """Build a graph on 1..n from an iterable of (i, j) pairs."""
        adjacency = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise errors.IndexOutOfRange("edge {}-{} is not an edge on 1..{}".format(i, j, n))
            adjacency[i - 1] |= utils.bit(j)
            adjacency[j - 1] |= utils.bit(i)
        return cls(n, adjacency)

    def edge_list(self):
        return [(i, j) for i in range(1, self.n + 1)
                for j in utils.indices(self.adjacency[i - 1]) if i < j]

    def edge_masks(self):
        return [utils.bit(i) | utils.bit(j) for i, j in self.edge_list()]

    def triangle_masks(self):
        found = []
        for i, j in self.edge_list():
            common = self.adjacency[i - 1] & self.adjacency[j - 1]
            for k in utils.indices(common):
                if k > j:
                    found.append(utils.bit(i) | utils.bit(j) | utils.bit(k))
        return found

    def degree(self, i):
        return utils.popcount(self.adjacency[i - 1])

    def leaves(self):
        return [i for i in range(1, self.n + 1) if self.degree(i) == 1]

    def is_triangle_free(self):
        return not self.triangle_masks()

    def is_clique(self, mask):
        for i in utils.indices(mask):
            if (mask & ~utils.bit(i)) & ~self.adjacency[i - 1]:
                return False
        return True

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edge_list())
        return graph

    def to_dot(self, styles=None):
        """Export the graph in DOT.

        :param styles: Optional attribute map keyed by vertex (int) or edge
         (sorted pair), e.g. {1: {"style": "dashed"}}.
        :rtype: str
        """
        styles = styles or {}
        lines = ["graph G {"]
        for i in range(1, self.n + 1):
            lines.append("  {}{};".format(i, _dot_attributes(styles.get(i))))
        for edge in self.edge_list():
            lines.append("  {} -- {}{};".format(edge[0], edge[1], _dot_attributes(styles.get(edge))))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_attributes(attributes):
    if not attributes:
        return ""
    return " [{}]".format(", ".join('{}="{}"'.format(k, v) for k, v in sorted(attributes.items())))


class CliqueComplex(object):
    """The clique complex K_f of a GCD graph, as a downward closed face set.

    :ivar faces: All faces, ascending by mask.
    :vartype faces: tuple[int]
    """

    def __init__(self, n, faces):
        self.n = n
        self.faces = tuple(sorted(faces))
        self._face_set = frozenset(self.faces)

    def __contains__(self, mask):
        return mask in self._face_set

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def facets(self):
        return [f for f in self.faces
                if not any(g != f and g & f == f for g in self.faces)]

    def index(self):
        """Position of every face in the sorted face universe."""
        return {face: k for k, face in enumerate(self.faces)}


class PresenceConstraint(object):
    """A constraint on X_f forced by the shape of G_f.

    :ivar forced: The type that must be present, or None for a disjunction.
    :vartype forced: int
    :ivar options: For a disjunction, the alternative type sets (each a
     frozenset of masks), at least one of which must be fully present.
    :vartype options: list[frozenset[int]]
    """

    def __init__(self, forced=None, options=None):
        if (forced is None) == (options is None):
            raise errors.BadParameters("a constraint is either forced or a disjunction")
        self.forced = forced
        self.options = [frozenset(o) for o in options] if options is not None else None

    def __repr__(self):
        if self.forced is not None:
            return "Forced({})".format(utils.variable_name(self.forced))
        return "Disjunction({})".format(" | ".join(
            "{" + ",".join(utils.variable_name(m) for m in sorted(o)) + "}" for o in self.options))

    def __eq__(self, other):
        return isinstance(other, PresenceConstraint) and \
            (self.forced, self.options) == (other.forced, other.options)

    @property
    def is_forced(self):
        return self.forced is not None

    def satisfied_by(self, masks):
        masks = set(masks)
        if self.forced is not None:
            return self.forced in masks
        return any(option <= masks for option in self.options)


def build_gcd_graph(ideal):
    """Build G_f from the variable types of an ideal.

    :type ideal: ~supportvar.ideal.SquareFreeIdeal
    :rtype: ~supportvar.gcd_graph.GcdGraph
    """
    adjacency = [0] * ideal.n
    for mask in ideal.masks:
        for i in utils.indices(mask):
            adjacency[i - 1] |= mask & ~utils.bit(i)
    return GcdGraph(ideal.n, adjacency)


def neighborhood(graph, sigma):
    """N(sigma): the union of the neighbor masks of the members of sigma.

    :rtype: int
    """
    result = 0
    for i in utils.indices(sigma):
        result |= graph.adjacency[i - 1]
    return result


def clique_complex(graph, budget=constants.FACE_BUDGET):
    """All cliques of G, downward closed.

    Maximal cliques come from networkx's pivoting Bron-Kerbosch and are then
    closed under subsets.

    :param budget: The largest number of faces allowed.
    :type budget: int
    :rtype: ~supportvar.gcd_graph.CliqueComplex
    """
    faces = set()
    for clique in nx.find_cliques(graph.to_networkx()):
        top = utils.mask_from_indices(clique)
        for sub in utils.iter_submasks(top):
            if sub:
                faces.add(sub)
        if len(faces) > budget:
            raise errors.FaceBudgetExceeded(
                "clique complex exceeds {} faces".format(budget), info={'budget': budget})
    return CliqueComplex(graph.n, faces)


def presence_constraints(graph):
    """Constraints every ideal with this GCD graph must satisfy.

    Forced x_ij for every edge in no triangle; forced x_l for every vertex of
    degree at most one; for every vertex l with N(l) = {i, j} the disjunction
    {x_il, x_jl} or {x_l, x_ijl}, the second option only when ijl is a face.

    :rtype: list[~supportvar.gcd_graph.PresenceConstraint]
    """
    constraints = []
    for i, j in graph.edge_list():
        if not graph.adjacency[i - 1] & graph.adjacency[j - 1]:
            constraints.append(PresenceConstraint(forced=utils.bit(i) | utils.bit(j)))
    for l in range(1, graph.n + 1):
        if graph.degree(l) <= 1:
            constraints.append(PresenceConstraint(forced=utils.bit(l)))
    for l in range(1, graph.n + 1):
        if graph.degree(l) != 2:
            continue
        i, j = utils.indices(graph.adjacency[l - 1])
        options = [{utils.bit(i) | utils.bit(l), utils.bit(j) | utils.bit(l)}]
        if graph.adjacency[i - 1] & utils.bit(j):
            options.append({utils.bit(l), utils.bit(i) | utils.bit(j) | utils.bit(l)})
        constraints.append(PresenceConstraint(options=options))
    return constraints


def components(graph):
    """Connected components as masks, ascending by lowest member.

    :rtype: list[int]
    """
    found = [utils.mask_from_indices(c) for c in nx.connected_components(graph.to_networkx())]
    return sorted(found, key=lambda m: m & -m)


def isomorphisms(pattern, graph):
    """Label maps pattern -> graph that are graph isomorphisms.

    :type pattern: ~supportvar.gcd_graph.GcdGraph
    :type graph: ~supportvar.gcd_graph.GcdGraph
    :rtype: iterator of dict[int, int]
    """
    if pattern.n != graph.n:
        return
    matcher = isomorphism.GraphMatcher(graph.to_networkx(), pattern.to_networkx())
    for mapping in matcher.isomorphisms_iter():
        yield {p: g for g, p in mapping.items()}


def monomorphisms(pattern, graph):
    """Label maps pattern -> graph sending edges to edges, injective on vertices.

    :rtype: iterator of dict[int, int]
    """
    matcher = isomorphism.GraphMatcher(graph.to_networkx(), pattern.to_networkx())
    for mapping in matcher.subgraph_monomorphisms_iter():
        yield {p: g for g, p in mapping.items()}


def ideal_automorphisms(ideal, cap=5040):
    """Generator permutations mapping X_f onto itself, identity first.

    Each is an automorphism of G_f and of the Taylor graph, up to signs.

    :rtype: list[dict[int, int]]
    """
    graph = build_gcd_graph(ideal)
    masks = set(ideal.masks)
    found = []
    for mapping in isomorphisms(graph, graph):
        if all(permute_mask(m, mapping) in masks for m in masks):
            found.append(mapping)
        if len(found) >= cap:
            _logger.info("Automorphism search stopped at cap %r", cap)
            break
    identity = {i: i for i in range(1, ideal.n + 1)}
    found.sort(key=lambda m: (m != identity, [m[i] for i in range(1, ideal.n + 1)]))
    return found
