#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
from itertools import combinations

import networkx as nx
import sympy

from supportvar import constants, errors, utils
from supportvar.gcd_graph import build_gcd_graph, neighborhood
from supportvar.taylor import chi_symbols, symbolic_block, symbolic_det, symbolic_rank

_logger = logging.getLogger(__name__)

_VERTEX_FIELDS = frozenset([
    'vertex', 'sources', 'sinks', 'neighbors', 'walk', 'sigma', 'edges',
    'triangles', 'component', 'support', 'rows'])

WALK_NODE_BUDGET = 10 ** 5
BLOCK_DET_CAP = 16


class FullSupportWitness(object):
    """A certificate that V_f is all of affine space.

    :ivar kind: The detection rule that produced the witness.
    :vartype kind: ~supportvar.constants.WitnessKind
    :ivar fields: The rule's data. Vertex sets are tuples of masks.
    :vartype fields: dict
    """

    def __init__(self, kind, n, **fields):
        self.kind = constants.WitnessKind(kind)
        self.n = n
        self.fields = {}
        for key, value in fields.items():
            if isinstance(value, (list, tuple, set, frozenset)):
                value = tuple(value) if key == 'walk' else tuple(sorted(value))
            self.fields[key] = value

    def __getitem__(self, key):
        return self.fields[key]

    def __repr__(self):
        return "{}({})".format(self.kind.value, ", ".join(
            "{}={!r}".format(k, v) for k, v in sorted(self.fields.items())))

    def __eq__(self, other):
        return isinstance(other, FullSupportWitness) and \
            (self.kind, self.fields) == (other.kind, other.fields)

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.fields.items(), key=lambda kv: kv[0]))))

    def to_json(self):
        document = {"lemma": self.kind.value}
        for key, value in sorted(self.fields.items()):
            if key in _VERTEX_FIELDS:
                if isinstance(value, tuple):
                    value = [utils.render_mask(m, self.n) for m in value]
                else:
                    value = utils.render_mask(value, self.n)
            elif isinstance(value, constants.WalkDirection):
                value = value.value
            document[key] = value
        return document

    @classmethod
    def from_json(cls, document, n):
        try:
            kind = constants.WitnessKind(document["lemma"])
        except (KeyError, ValueError):
            raise errors.MalformedDocument("unknown witness {!r}".format(document))
        fields = {}
        for key, value in document.items():
            if key == "lemma":
                continue
            if key in _VERTEX_FIELDS:
                if isinstance(value, list):
                    value = [utils.parse_mask(v)[0] for v in value]
                else:
                    value = utils.parse_mask(value)[0]
            elif key == "direction":
                value = constants.WalkDirection(value)
            fields[key] = value
        return cls(kind, n, **fields)


class ContainmentCertificate(object):
    """A homotopy source or sink at a differentially isolated vertex.

    Certifies V(chi_i : i in indices) inside V_f.
    """

    def __init__(self, vertex, kind, indices, n):
        self.vertex = vertex
        self.kind = constants.ContainmentKind(kind)
        self.indices = tuple(sorted(indices))
        self.n = n

    def __repr__(self):
        return "ContainmentCertificate({} {} for {})".format(
            self.kind.value, utils.render_mask(self.vertex, self.n), self.indices)

    def __eq__(self, other):
        return isinstance(other, ContainmentCertificate) and \
            (self.vertex, self.kind, self.indices) == (other.vertex, other.kind, other.indices)

    def __hash__(self):
        return hash((self.vertex, self.kind, self.indices))

    @property
    def zero_set(self):
        return utils.mask_from_indices(self.indices)

    def to_json(self):
        return {
            "kind": self.kind.value,
            "vertex": utils.render_mask(self.vertex, self.n),
            "indices": list(self.indices)}

    @classmethod
    def from_json(cls, document, n):
        try:
            return cls(utils.parse_mask(document["vertex"])[0], document["kind"], document["indices"], n)
        except (KeyError, ValueError) as e:
            raise errors.MalformedDocument("bad containment certificate: {}".format(e))


class HypersurfaceCertificate(object):
    """A component of T_f made of sources U and sinks W with |U| = |W|.

    The component block is the square W x U matrix B, so it is rank
    deficient exactly on V(det B), which therefore lies in V_f.

    :ivar polynomial: det B up to a unit, with positive leading coefficient.
    :vartype polynomial: sympy.Expr
    """

    def __init__(self, component, sources, sinks, polynomial, n):
        self.component = tuple(component)
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)
        self.polynomial = polynomial
        self.n = n

    def __repr__(self):
        return "HypersurfaceCertificate(V({}) at {})".format(
            self.polynomial, utils.render_mask(self.component[0], self.n))

    def to_json(self):
        return {
            "kind": "hypersurface",
            "sources": [utils.render_mask(m, self.n) for m in self.sources],
            "sinks": [utils.render_mask(m, self.n) for m in self.sinks],
            "polynomial": str(self.polynomial)}

    @classmethod
    def from_json(cls, document, n):
        sources = [utils.parse_mask(m)[0] for m in document["sources"]]
        sinks = [utils.parse_mask(m)[0] for m in document["sinks"]]
        polynomial = sympy.sympify(document["polynomial"], locals={str(s): s for s in chi_symbols(n)})
        return cls(sorted(sources + sinks), sources, sinks, polynomial, n)


def normalize_polynomial(expression, n):
    """Drop the content and sign of a polynomial in x1..xn."""
    symbols = chi_symbols(n)
    poly = sympy.Poly(sympy.expand(expression), *symbols)
    _, primitive = poly.primitive()
    if primitive.LC() < 0:
        primitive = -primitive
    return primitive.as_expr()


def _sources(taylor):
    return [m for m in range(taylor.vertex_count) if taylor.out_edges(m) and not taylor.in_edges(m)]


def _sinks(taylor):
    return [m for m in range(taylor.vertex_count) if taylor.in_edges(m) and not taylor.out_edges(m)]


def _in_neighbors(taylor, mask):
    return frozenset(e.source for e in taylor.in_edges(mask))


def _out_neighbors(taylor, mask):
    return frozenset(e.target for e in taylor.out_edges(mask))


def find_isolated(taylor):
    """Every vertex used by no edge.

    :rtype: list[int]
    """
    return [m for m in range(taylor.vertex_count) if taylor.is_isolated(m)]


def find_homotopy_sources_sinks(taylor, graph=None):
    """All homotopy sources and sinks, with the indices of their homotopy edges.

    :rtype: list[~supportvar.detectors.ContainmentCertificate]
    """
    graph = graph or taylor.gcd_graph
    full = utils.full_mask(taylor.n)
    found = []
    for mask in range(taylor.vertex_count):
        if not taylor.is_differentially_isolated(mask):
            continue
        closed = neighborhood(graph, mask)
        indices = {e.i for e in taylor.out_edges(mask) + taylor.in_edges(mask)}
        if mask | closed == full:
            found.append(ContainmentCertificate(mask, constants.ContainmentKind.Sink, indices, taylor.n))
        if not mask & ~closed:
            found.append(ContainmentCertificate(mask, constants.ContainmentKind.Source, indices, taylor.n))
    _logger.debug("Found %r homotopy sources and sinks", len(found))
    return found


def _neighbor_groups(candidates, adjacent):
    """Groups (S, N) of candidate vertices and their neighbor sets.

    One group per seed, closed to every candidate whose neighbors stay
    inside the seed's neighbors, plus one group per connected component of
    the candidate/neighbor incidence graph.
    """
    neighbors = {c: adjacent(c) for c in candidates}
    touching = {}
    for c, near in neighbors.items():
        for u in near:
            touching.setdefault(u, set()).add(c)
    groups = set()
    for seed in candidates:
        near = neighbors[seed]
        members = set()
        for u in near:
            members.update(w for w in touching[u] if neighbors[w] <= near)
        groups.add((frozenset(members), near))
    incidence = nx.Graph()
    for c, near in neighbors.items():
        incidence.add_node(('c', c))
        incidence.add_edges_from((('c', c), ('n', u)) for u in near)
    for part in nx.connected_components(incidence):
        members = frozenset(m for tag, m in part if tag == 'c')
        near = frozenset(m for tag, m in part if tag == 'n')
        groups.add((members, near))
    return sorted(groups, key=lambda g: (sorted(g[0]), sorted(g[1])))


def _sink_groups(taylor):
    return _neighbor_groups(_sinks(taylor), lambda m: _in_neighbors(taylor, m))


def _source_groups(taylor):
    return _neighbor_groups(_sources(taylor), lambda m: _out_neighbors(taylor, m))


def _edges_and_triangles(taylor, graph):
    edges = [m for m in graph.edge_masks() if taylor.is_homotopically_isolated(m)]
    triangles = [m for m in graph.triangle_masks() if taylor.is_homotopically_isolated(m)]
    return edges, triangles


def _degree3_holds(graph, sigma):
    full = utils.full_mask(graph.n)
    if neighborhood(graph, sigma) != full:
        return False
    for i in utils.indices(sigma):
        if not graph.adjacency[i - 1] & ~sigma:
            return False
    for j in utils.indices(full & ~sigma):
        if utils.popcount(graph.adjacency[j - 1] & sigma) != 1:
            return False
    return True


def _edge_pair_holds(graph, family):
    theta = 0
    for sigma in family:
        theta |= sigma
    if neighborhood(graph, theta) != utils.full_mask(graph.n):
        return False
    closed = [neighborhood(graph, sigma) for sigma in family]
    for a, b in combinations(closed, 2):
        if a & b:
            return False
    for sigma, near in zip(family, closed):
        for l in utils.indices(near & ~sigma):
            if not graph.adjacency[l - 1] & ~near:
                return False
    return True


def counting_detectors(taylor, graph=None, degree3_cap=constants.DEGREE3_SCAN_CAP,
                       edge_pair_cap=constants.EDGE_PAIR_CAP):
    """Full-support witnesses from the counting and isolation rules.

    :rtype: list[~supportvar.detectors.FullSupportWitness]
    """
    graph = graph or taylor.gcd_graph
    n = taylor.n
    found = []
    for sinks, sources in _sink_groups(taylor):
        if len(sinks) > len(sources):
            found.append(FullSupportWitness(
                constants.WitnessKind.SinksVsSources, n, sinks=sinks, sources=sources))
    for sources, near in _source_groups(taylor):
        if len(sources) > len(near):
            found.append(FullSupportWitness(
                constants.WitnessKind.SourcesVsNeighbors, n, sources=sources, neighbors=near))
    edges, triangles = _edges_and_triangles(taylor, graph)
    if len(edges) > len(triangles):
        found.append(FullSupportWitness(
            constants.WitnessKind.EdgesVsTriangles, n, edges=edges, triangles=triangles))
    for size in range(1, min(degree3_cap, n - 1) + 1):
        for members in combinations(range(1, n + 1), size):
            sigma = utils.mask_from_indices(members)
            if _degree3_holds(graph, sigma):
                found.append(FullSupportWitness(constants.WitnessKind.Degree3Isolated, n, sigma=sigma))
    edge_masks = graph.edge_masks()
    for size in range(1, edge_pair_cap + 1):
        for family in combinations(edge_masks, size):
            if _edge_pair_holds(graph, family):
                found.append(FullSupportWitness(constants.WitnessKind.EdgePairFamily, n, edges=family))
    _logger.debug("Counting detectors found %r witnesses", len(found))
    return found


def _walk_moves(taylor, direction):
    if direction == constants.WalkDirection.Sink:
        return (lambda m: [e.source for e in taylor.in_edges(m)],
                lambda m: [e.target for e in taylor.out_edges(m)],
                lambda m: not taylor.out_edges(m))
    return (lambda m: [e.target for e in taylor.out_edges(m)],
            lambda m: [e.source for e in taylor.in_edges(m)],
            lambda m: not taylor.in_edges(m))


def _search_walk(taylor, direction, max_len, budget):
    back, forward, terminal = _walk_moves(taylor, direction)
    starts = [m for m in range(taylor.vertex_count) if terminal(m) and len(back(m)) == 1]
    visited = 0
    for start in starts:
        stack = [[start]]
        while stack:
            path = stack.pop()
            visited += 1
            if visited > budget:
                _logger.info("Odd walk search stopped at node budget %r", budget)
                return None
            last = path[-1]
            previous = path[-2] if len(path) > 1 else None
            pivots = [u for u in back(last) if u != previous]
            if len(pivots) != 1 or pivots[0] in path:
                continue
            pivot = pivots[0]
            for w in forward(pivot):
                if w in path:
                    continue
                incoming = back(w)
                if len(incoming) == 1 and terminal(w):
                    return path + [pivot, w]
                if len(incoming) == 2 and len(path) + 4 <= max_len:
                    stack.append(path + [pivot, w])
    return None


def find_odd_alternating_walk(taylor, max_len=None, budget=WALK_NODE_BUDGET):
    """Search for an odd alternating walk between two degree-one sinks or sources.

    :param max_len: The longest walk, in vertices; odd, default 2n + 1.
    :rtype: ~supportvar.detectors.FullSupportWitness or None
    """
    max_len = max_len or 2 * taylor.n + 1
    if max_len % 2 == 0:
        raise errors.BadParameters("walk length must be odd, got {}".format(max_len))
    for direction in (constants.WalkDirection.Sink, constants.WalkDirection.Source):
        walk = _search_walk(taylor, direction, max_len, budget)
        if walk:
            return FullSupportWitness(
                constants.WitnessKind.OddAlternatingWalk, taylor.n, walk=walk, direction=direction)
    return None


def _in_suspects(component_of, vertices, suspects):
    if suspects is None:
        return True
    return any(component_of[v] in suspects for v in vertices)


def _component_index(taylor):
    index = {}
    for k, component in enumerate(taylor.components()):
        for m in component:
            index[m] = k
    return index


def find_odd_components(taylor):
    return [FullSupportWitness(constants.WitnessKind.OddComponent, taylor.n, component=c)
            for c in taylor.components() if len(c) % 2]


def find_high_degree_vertices(taylor, graph=None):
    graph = graph or taylor.gcd_graph
    if taylor.n < 2:
        return []
    return [FullSupportWitness(constants.WitnessKind.HighDegreeVertex, taylor.n, index=i)
            for i in range(1, taylor.n + 1) if graph.degree(i) == taylor.n - 1]


def sinks_vs_image_rank(taylor, cap=constants.SYMBOLIC_CAP, suspects=None):
    """Groups of sinks larger than the exact rank of the edges feeding them."""
    component_of = _component_index(taylor)
    found = []
    for sinks, sources in _sink_groups(taylor):
        if len(sinks) > len(sources) or len(sources) > cap or len(sinks) > cap:
            continue
        if not _in_suspects(component_of, sinks, suspects):
            continue
        rank = symbolic_rank(symbolic_block(taylor, sorted(sinks), sorted(sources)))
        if len(sinks) > rank:
            found.append(FullSupportWitness(
                constants.WitnessKind.SinksVsImageRank, taylor.n, sinks=sinks, sources=sources, rank=rank))
    return found


def _source_cycle_closes(taylor, vertex, support):
    rows = sorted({e.target for c in support for e in taylor.out_edges(c)})
    columns = sorted(support)
    block = symbolic_block(taylor, rows, columns)
    others = [k for k, c in enumerate(columns) if c != vertex]
    return rows, symbolic_rank(block) == symbolic_rank(block.extract(list(range(len(rows))), others))


def find_source_cycles(taylor, cap=constants.SOURCE_CYCLE_CAP, suspects=None):
    """Kernel vectors of T_f over Q(chi) that are nonzero at a source.

    The support grows from the source by alternately taking every row its
    columns reach and every column reaching those rows.
    """
    component_of = _component_index(taylor)
    found = []
    for vertex in _sources(taylor):
        if not _in_suspects(component_of, [vertex], suspects):
            continue
        support = {vertex}
        while len(support) <= cap:
            rows, closes = _source_cycle_closes(taylor, vertex, support)
            if closes:
                found.append(FullSupportWitness(
                    constants.WitnessKind.SourceCycle, taylor.n, vertex=vertex, support=support, rows=rows))
                break
            grown = support | {e.source for r in rows for e in taylor.in_edges(r)}
            if grown == support:
                break
            support = grown
    return found


def _component_symbolic_rank(taylor, component):
    rank = 0
    for parity in (0, 1):
        cols = [m for m in component if utils.popcount(m) % 2 == parity and taylor.out_edges(m)]
        rows = [m for m in component if utils.popcount(m) % 2 != parity and taylor.in_edges(m)]
        rank += symbolic_rank(symbolic_block(taylor, rows, cols))
    return rank


def generic_component_ranks(taylor, cap=constants.SYMBOLIC_CAP, suspects=None):
    """Components whose exact rank over Q(chi) is below half their size."""
    found = []
    for k, component in enumerate(taylor.components()):
        if len(component) > cap or len(component) < 2 or len(component) % 2:
            continue
        if suspects is not None and k not in suspects:
            continue
        rank = _component_symbolic_rank(taylor, component)
        if 2 * rank < len(component):
            found.append(FullSupportWitness(
                constants.WitnessKind.GenericComponentRank, taylor.n, component=component, rank=rank))
    return found


def component_block_certificates(taylor, cap=BLOCK_DET_CAP):
    """Hypersurfaces V(det B) from components made only of sources and sinks.

    :rtype: list[~supportvar.detectors.HypersurfaceCertificate]
    """
    found = []
    seen = set()
    for component in taylor.components():
        if len(component) < 2 or len(component) % 2:
            continue
        sources = [m for m in component if not taylor.in_edges(m)]
        sinks = [m for m in component if not taylor.out_edges(m)]
        if len(sources) != len(sinks) or len(sources) + len(sinks) != len(component):
            continue
        if len(sources) > cap:
            _logger.info("Skipping a %r-vertex source/sink component above the cap", len(component))
            continue
        determinant = symbolic_det(symbolic_block(taylor, sinks, sources))
        if determinant == 0 or determinant.is_number:
            continue
        polynomial = normalize_polynomial(determinant, taylor.n)
        if polynomial in seen:
            continue
        seen.add(polynomial)
        found.append(HypersurfaceCertificate(component, sources, sinks, polynomial, taylor.n))
    _logger.debug("Found %r hypersurface certificates", len(found))
    return found


def _verify_walk(taylor, witness):
    walk = list(witness['walk'])
    if len(walk) < 3 or len(walk) % 2 == 0 or len(set(walk)) != len(walk):
        return False
    back, _, terminal = _walk_moves(taylor, witness['direction'])
    if not terminal(walk[0]) or not terminal(walk[-1]):
        return False
    for k in range(0, len(walk), 2):
        v = walk[k]
        expected = set(walk[j] for j in (k - 1, k + 1) if 0 <= j < len(walk))
        if set(back(v)) != expected or len(back(v)) != len(expected):
            return False
    return True


def _verify_sinks(taylor, witness):
    sinks, sources = set(witness['sinks']), set(witness['sources'])
    if any(taylor.out_edges(m) for m in sinks):
        return False
    feeding = set()
    for m in sinks:
        feeding |= _in_neighbors(taylor, m)
    return feeding <= sources


def verify_witness(taylor, graph, witness):
    """Re-check a full-support witness against the graphs it cites.

    :rtype: bool
    """
    graph = graph or taylor.gcd_graph
    kind = witness.kind
    kinds = constants.WitnessKind
    if kind == kinds.IsolatedVertex:
        return taylor.is_isolated(witness['vertex'])
    if kind == kinds.SinksVsSources:
        return _verify_sinks(taylor, witness) and len(witness['sinks']) > len(witness['sources'])
    if kind == kinds.SourcesVsNeighbors:
        sources, near = set(witness['sources']), set(witness['neighbors'])
        if any(taylor.in_edges(m) for m in sources):
            return False
        reached = set()
        for m in sources:
            reached |= _out_neighbors(taylor, m)
        return reached <= near and len(sources) > len(near)
    if kind == kinds.OddAlternatingWalk:
        return _verify_walk(taylor, witness)
    if kind == kinds.Degree3Isolated:
        sigma = witness['sigma']
        return _degree3_holds(graph, sigma) and taylor.is_isolated(sigma)
    if kind == kinds.EdgePairFamily:
        family = witness['edges']
        theta = 0
        for sigma in family:
            theta |= sigma
        return _edge_pair_holds(graph, family) and taylor.is_isolated(theta)
    if kind == kinds.EdgesVsTriangles:
        edges, triangles = _edges_and_triangles(taylor, graph)
        return tuple(sorted(edges)) == witness['edges'] and \
            tuple(sorted(triangles)) == witness['triangles'] and len(edges) > len(triangles)
    if kind == kinds.HighDegreeVertex:
        i = witness['index']
        vertex = utils.bit(i)
        incoming = taylor.in_edges(vertex)
        return graph.degree(i) == taylor.n - 1 and not taylor.out_edges(vertex) and \
            len(incoming) == 1 and incoming[0].is_homotopy and incoming[0].sigma == 0 and \
            len(taylor.out_edges(0)) > 1
    if kind == kinds.OddComponent:
        component = list(witness['component'])
        return len(component) % 2 == 1 and taylor.component_of(component[0]) == component
    if kind == kinds.SinksVsImageRank:
        if not _verify_sinks(taylor, witness):
            return False
        rank = symbolic_rank(symbolic_block(taylor, list(witness['sinks']), list(witness['sources'])))
        return rank == witness['rank'] and len(witness['sinks']) > rank
    if kind == kinds.SourceCycle:
        vertex, support = witness['vertex'], witness['support']
        if taylor.in_edges(vertex) or vertex not in support:
            return False
        rows, closes = _source_cycle_closes(taylor, vertex, support)
        return closes and tuple(rows) == witness['rows']
    if kind == kinds.GenericComponentRank:
        component = list(witness['component'])
        if taylor.component_of(component[0]) != component:
            return False
        rank = _component_symbolic_rank(taylor, component)
        return rank == witness['rank'] and 2 * rank < len(component)
    raise errors.BadParameters("unknown witness kind {!r}".format(kind))


def full_support_witnesses(taylor, graph=None, find_all=False, suspects=None, **kwargs):
    """Run every full-support detector in cost order.

    :param find_all: Keep searching after the first verified witness.
    :param suspects: Indices of components rank deficient at every sampled
     point; the symbolic detectors only look inside them. None means no
     restriction.
    :rtype: list[~supportvar.detectors.FullSupportWitness]
    """
    degree3_cap = kwargs.pop('degree3_cap', constants.DEGREE3_SCAN_CAP)
    edge_pair_cap = kwargs.pop('edge_pair_cap', constants.EDGE_PAIR_CAP)
    walk_len = kwargs.pop('walk_len', None)
    symbolic_cap = kwargs.pop('symbolic_cap', constants.SYMBOLIC_CAP)
    source_cycle_cap = kwargs.pop('source_cycle_cap', constants.SOURCE_CYCLE_CAP)
    if kwargs:
        raise ValueError("Received unrecognized kwargs: {}".format(", ".join(kwargs.keys())))
    graph = graph or build_gcd_graph(taylor.ideal)

    def isolated():
        return [FullSupportWitness(constants.WitnessKind.IsolatedVertex, taylor.n, vertex=m)
                for m in find_isolated(taylor)]

    def walks():
        walk = find_odd_alternating_walk(taylor, walk_len)
        return [walk] if walk else []

    stages = [
        lambda: find_high_degree_vertices(taylor, graph),
        isolated,
        lambda: find_odd_components(taylor),
        lambda: counting_detectors(taylor, graph, degree3_cap, edge_pair_cap),
        walks,
        lambda: sinks_vs_image_rank(taylor, symbolic_cap, suspects),
        lambda: find_source_cycles(taylor, source_cycle_cap, suspects),
        lambda: generic_component_ranks(taylor, symbolic_cap, suspects),
    ]
    verified = []
    for stage in stages:
        for witness in stage():
            if not verify_witness(taylor, graph, witness):
                _logger.warning("Dropping witness that failed re-verification: %r", witness)
                continue
            verified.append(witness)
            if not find_all:
                _logger.debug("Full support witnessed by %r", witness)
                return verified
    return verified
