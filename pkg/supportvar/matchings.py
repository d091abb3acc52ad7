#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
from itertools import islice

import networkx as nx
import sympy

from supportvar import constants, errors, utils
from supportvar.taylor import EdgeRef, chi_symbols

_logger = logging.getLogger(__name__)


class Matching(object):
    """A sigma-perfect matching: 2^(n-1) vertex-disjoint Taylor edges whose
    homotopy indices lie in sigma.

    :ivar sigma: The allowed homotopy indices.
    :vartype sigma: int
    :ivar edges: The matched edges.
    :vartype edges: list[~supportvar.taylor.EdgeRef]
    """

    def __init__(self, sigma, edges, n, label=None):
        self.sigma = sigma
        self.edges = list(edges)
        self.n = n
        self.label = label
        self.verified_against = None

    def __repr__(self):
        return "Matching(sigma={}, {} edges{})".format(
            utils.render_indices(self.sigma), len(self.edges), ", " + self.label if self.label else "")

    def __len__(self):
        return len(self.edges)

    @property
    def sources(self):
        return [e.source for e in self.edges]

    def partner_targets(self):
        return {e.source: e.target for e in self.edges}

    def matched_edge(self):
        return {e.source: e for e in self.edges}

    def homotopy_indices(self):
        return utils.mask_from_indices(e.i for e in self.edges if e.is_homotopy)

    def D(self, i):
        return [e for e in self.edges if not e.is_homotopy and e.i == i]

    def H(self, j):
        return [e for e in self.edges if e.is_homotopy and e.i == j]

    def to_json(self):
        document = {
            "sigma": list(utils.indices(self.sigma)),
            "edges": [e.to_json() for e in sorted(self.edges)]}
        if self.label:
            document["label"] = self.label
        return document

    @classmethod
    def from_json(cls, document, n):
        try:
            sigma = utils.mask_from_indices(document["sigma"])
            edges = [EdgeRef.from_json(e, n) for e in document["edges"]]
        except (KeyError, TypeError) as e:
            raise errors.MalformedDocument("bad matching document: {}".format(e))
        return cls(sigma, edges, n, document.get("label"))


class SupportPolynomial(object):
    """A polynomial in chi_1..chi_n known to lie in the support ideal I_f.

    :param parts: Optional factors whose product is the polynomial; they are
     factored one at a time and never multiplied out.
    :type parts: list[sympy.Expr]
    """

    def __init__(self, expression, n, parts=None):
        self.n = n
        self.parts = list(parts) if parts is not None else [expression]
        self.expression = expression if expression is not None else sympy.Mul(*self.parts)
        self._factors = None

    def __repr__(self):
        return "SupportPolynomial({})".format(self.render())

    @property
    def is_zero(self):
        return any(part == 0 for part in self.parts)

    def factors(self):
        """Irreducible factors with multiplicities, constants and signs dropped.

        :rtype: list[tuple[sympy.Expr, int]]
        """
        if self._factors is None:
            merged = {}
            if not self.is_zero:
                symbols = chi_symbols(self.n)
                for part in self.parts:
                    if part.is_number:
                        continue
                    _, found = sympy.factor_list(part, *symbols)
                    for factor, power in found:
                        if factor.could_extract_minus_sign():
                            factor = -factor
                        merged[factor] = merged.get(factor, 0) + power
            self._factors = sorted(merged.items(), key=lambda fk: sympy.default_sort_key(fk[0]))
        return self._factors

    def permute(self, mapping):
        """The polynomial with chi_i renamed to chi_mapping[i]."""
        symbols = chi_symbols(self.n)
        renaming = {symbols[old - 1]: symbols[new - 1] for old, new in mapping.items()}
        return SupportPolynomial(None, self.n, [part.xreplace(renaming) for part in self.parts])

    @property
    def is_monomial(self):
        return all(f.is_Symbol for f, _ in self.factors())

    @property
    def grammar(self):
        """'monomial', 'scaled-power' (monomial times a power of one non-monomial
        factor) or 'general'."""
        others = [f for f, _ in self.factors() if not f.is_Symbol]
        if not others:
            return "monomial"
        if len(others) == 1:
            return "scaled-power"
        return "general"

    @property
    def support(self):
        """The mask of the variables dividing the polynomial's monomial part."""
        symbols = chi_symbols(self.n)
        return utils.mask_from_indices(
            symbols.index(f) + 1 for f, _ in self.factors() if f.is_Symbol)

    def evaluate(self, point, p):
        symbols = chi_symbols(self.n)
        value = self.expression.subs(dict(zip(symbols, point)))
        return int(value) % p

    def render(self):
        parts = []
        for factor, power in self.factors():
            text = str(factor) if factor.is_Symbol else "({})".format(factor)
            parts.append(text if power == 1 else "{}^{}".format(text, power))
        return "*".join(parts) if parts else str(self.expression)

    def to_json(self):
        return {"polynomial": self.render(), "grammar": self.grammar}


class AuxiliaryGraph(object):
    """The directed graph A_f^M on the sources of a matching.

    Edge u -> w exists when a Taylor edge runs from u to the matched target
    of w; it carries the inverse of w's matched edge and the traversed edge.
    """

    def __init__(self, matching, graph):
        self.matching = matching
        self.graph = graph

    def __repr__(self):
        return "AuxiliaryGraph({} vertices, {} edges)".format(
            self.graph.number_of_nodes(), self.graph.number_of_edges())

    def edge_count(self):
        return self.graph.number_of_edges()

    def weight_label(self, u, w):
        data = self.graph.edges[u, w]
        return "{}^-1 {}".format(data['matched'].label(), data['edge'].label())

    def to_dot(self):
        n = self.matching.n
        lines = ["digraph A {"]
        for u in sorted(self.graph.nodes):
            lines.append('  "{}";'.format(utils.render_mask(u, n)))
        for u, w in sorted(self.graph.edges):
            lines.append('  "{}" -> "{}" [label="{}"];'.format(
                utils.render_mask(u, n), utils.render_mask(w, n), self.weight_label(u, w)))
        lines.append("}")
        return "\n".join(lines) + "\n"


class TriangularCertificate(object):
    """An acyclic auxiliary graph: det T^M is a monomial, so chi^support is in I_f."""

    def __init__(self, matching, order, polynomial):
        self.matching = matching
        self.order = list(order)
        self.polynomial = polynomial

    def __repr__(self):
        return "TriangularCertificate({} in I_f)".format(self.polynomial.render())

    def to_json(self):
        return {
            "kind": "triangular",
            "label": self.matching.label,
            "sigma": list(utils.indices(self.matching.sigma)),
            "polynomial": self.polynomial.render(),
            "matching": self.matching.to_json()["edges"]}


class DeterminantCertificate(object):
    """det T^M computed over cycle decompositions of the auxiliary graph."""

    def __init__(self, matching, polynomial, cycles):
        self.matching = matching
        self.polynomial = polynomial
        self.cycles = cycles

    def __repr__(self):
        return "DeterminantCertificate({} in I_f)".format(self.polynomial.render())

    def to_json(self):
        return {
            "kind": "determinant",
            "label": self.matching.label,
            "sigma": list(utils.indices(self.matching.sigma)),
            "polynomial": self.polynomial.render(),
            "cycles": self.cycles,
            "matching": self.matching.to_json()["edges"]}


class CyclesFound(object):

    def __init__(self, cycles, disjoint):
        self.cycles = cycles
        self.count = len(cycles)
        self.disjoint = disjoint

    def __repr__(self):
        return "CyclesFound({}, {})".format(self.count, "disjoint" if self.disjoint else "overlapping")


class ThetaDetermination(object):
    """Result of a theta-determinedness check.

    :ivar colors: Type color per coordinate phi, None where a class mixes colors.
    :vartype colors: dict[int, tuple]
    """

    def __init__(self, determined, colors, certificate=None):
        self.determined = determined
        self.colors = colors
        self.certificate = certificate

    def __bool__(self):
        return self.determined

    __nonzero__ = __bool__


def hypercube_edges(kind, sigma, i, spread, n):
    """The edge set d_{sigma,i} x 2^spread or h_{sigma,i} x 2^spread."""
    if sigma & spread or spread & utils.bit(i):
        raise errors.BadParameters("hypercube spread overlaps sigma or the index")
    return [EdgeRef(kind, sigma | sub, i, n) for sub in utils.iter_submasks(spread)]


def hypercube(taylor, kind, sigma, i, spread):
    """The hypercube of edges, every one of which must exist in the Taylor graph.

    :raises: ~supportvar.errors.MissingEdge
    :rtype: list[~supportvar.taylor.EdgeRef]
    """
    edges = hypercube_edges(kind, sigma, i, spread, taylor.n)
    for edge in edges:
        if edge not in taylor:
            raise errors.MissingEdge(edge=edge)
    return edges


def verify_matching(taylor, matching):
    """Check a sigma-perfect matching against a Taylor graph.

    :raises: ~supportvar.errors.WrongCardinality
    :raises: ~supportvar.errors.SharedVertex
    :raises: ~supportvar.errors.MissingEdge
    :raises: ~supportvar.errors.ForbiddenHomotopyIndex
    """
    expected = 1 << (taylor.n - 1)
    if len(matching.edges) != expected:
        raise errors.WrongCardinality(
            "matching has {} edges, expected {}".format(len(matching.edges), expected),
            info={'found': len(matching.edges), 'expected': expected})
    used = set()
    for edge in matching.edges:
        for vertex in (edge.source, edge.target):
            if vertex in used:
                raise errors.SharedVertex(mask=utils.render_mask(vertex, taylor.n))
            used.add(vertex)
        if edge not in taylor:
            raise errors.MissingEdge(edge=edge)
        if edge.is_homotopy and not matching.sigma & utils.bit(edge.i):
            raise errors.ForbiddenHomotopyIndex(index=edge.i)
    matching.verified_against = taylor
    return True


def build_auxiliary(taylor, matching):
    """Build A_f^M.

    :raises: ~supportvar.errors.UnverifiedMatching
    :rtype: ~supportvar.matchings.AuxiliaryGraph
    """
    if matching.verified_against is not taylor:
        raise errors.UnverifiedMatching("verify the matching against this Taylor graph first")
    matched = matching.matched_edge()
    owner = {e.target: e.source for e in matching.edges}
    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(matched))
    for u in sorted(matched):
        for edge in taylor.out_edges(u):
            w = owner.get(edge.target)
            if w is None or w == u:
                continue
            graph.add_edge(u, w, edge=edge, matched=matched[w])
    _logger.debug("Auxiliary graph has %r edges", graph.number_of_edges())
    return AuxiliaryGraph(matching, graph)


def _diagonal_product(matching, symbols, skip=()):
    product = sympy.Integer(1)
    for edge in matching.edges:
        if edge.source not in skip:
            product *= edge.symbol(symbols)
    return product


def _cycles(auxiliary, cap):
    cycles = list(islice(nx.simple_cycles(auxiliary.graph), cap + 1))
    if len(cycles) > cap:
        raise errors.CycleCapExceeded("more than {} cycles in the auxiliary graph".format(cap),
                                      info={'cycle_cap': cap})
    return sorted(cycles, key=lambda c: (len(c), sorted(c)))


def triangularity(auxiliary, cap=constants.CYCLE_CAP):
    """Acyclic auxiliary graphs give a triangular certificate, others a cycle census.

    :rtype: ~supportvar.matchings.TriangularCertificate or ~supportvar.matchings.CyclesFound
    """
    matching = auxiliary.matching
    if nx.is_directed_acyclic_graph(auxiliary.graph):
        order = list(nx.lexicographical_topological_sort(auxiliary.graph))
        polynomial = SupportPolynomial(
            sympy.Mul(*[chi_symbols(matching.n)[i - 1] for i in utils.indices(matching.homotopy_indices())]),
            matching.n)
        return TriangularCertificate(matching, order, polynomial)
    cycles = _cycles(auxiliary, cap)
    return CyclesFound(cycles, _pairwise_disjoint(cycles))


def _pairwise_disjoint(cycles):
    seen = set()
    for cycle in cycles:
        if seen.intersection(cycle):
            return False
        seen.update(cycle)
    return True


def _cycle_term(auxiliary, cycle, symbols):
    term = sympy.Integer(-1 if (len(cycle) - 1) % 2 else 1)
    for k, u in enumerate(cycle):
        w = cycle[(k + 1) % len(cycle)]
        term *= auxiliary.graph.edges[u, w]['edge'].symbol(symbols)
    return term


def _disjoint_families(cycles, cap):
    """Every set of pairwise vertex-disjoint cycles, empty set included."""
    sets = [frozenset(c) for c in cycles]
    families = []
    stack = [(0, frozenset(), ())]
    while stack:
        start, used, chosen = stack.pop()
        families.append(chosen)
        if len(families) > cap:
            raise errors.OverlappingCyclesUnsupported(
                "more than {} cycle decompositions".format(cap), info={'cap': cap})
        for k in range(start, len(cycles)):
            if not used & sets[k]:
                stack.append((k + 1, used | sets[k], chosen + (k,)))
    return families


def determinant_via_cycles(taylor, matching, cap=constants.CYCLE_CAP,
                           decomposition_cap=constants.DECOMPOSITION_CAP):
    """det T^M as a sum over decompositions into disjoint auxiliary cycles.

    A cycle of length L contributes (-1)^(L-1) times its edge weights; every
    source it misses contributes its matched edge's weight.

    :rtype: ~supportvar.matchings.DeterminantCertificate
    """
    auxiliary = build_auxiliary(taylor, matching)
    symbols = chi_symbols(taylor.n)
    cycles = _cycles(auxiliary, cap)
    diagonal = {e.source: e.symbol(symbols) for e in matching.edges}
    if _pairwise_disjoint(cycles):
        covered = set()
        parts = []
        for cycle in cycles:
            covered.update(cycle)
            on_cycle = sympy.Mul(*[diagonal[u] for u in cycle])
            parts.append(sympy.expand(on_cycle + _cycle_term(auxiliary, cycle, symbols)))
        parts.extend(v for u, v in sorted(diagonal.items()) if u not in covered)
        polynomial = SupportPolynomial(None, taylor.n, parts)
    else:
        _logger.debug("Overlapping cycles, enumerating decompositions")
        determinant = sympy.Integer(0)
        for family in _disjoint_families(cycles, decomposition_cap):
            covered = set()
            term = sympy.Integer(1)
            for k in family:
                covered.update(cycles[k])
                term *= _cycle_term(auxiliary, cycles[k], symbols)
            term *= sympy.Mul(*[v for u, v in diagonal.items() if u not in covered])
            determinant += term
        polynomial = SupportPolynomial(sympy.expand(determinant), taylor.n)
    if polynomial.is_zero:
        _logger.debug("Determinant of %r vanishes", matching)
    _logger.debug("det T^M = %s", polynomial.render())
    return DeterminantCertificate(matching, polynomial, len(cycles))


def _allowed(edge, sigma):
    return not edge.is_homotopy or sigma & utils.bit(edge.i)


def _edge_between(taylor, sigma, u, w):
    options = [e for e in taylor.out_edges(u) if e.target == w and _allowed(e, sigma)]
    options += [e for e in taylor.out_edges(w) if e.target == u and _allowed(e, sigma)]
    options.sort(key=lambda e: (e.is_homotopy, e.source, e.i))
    return options[0]


def search_matching(taylor, sigma):
    """Find a sigma-perfect matching by maximum bipartite matching.

    Sides are even and odd popcount; the usable edges are all differential
    edges and the homotopy edges with index in sigma.

    :rtype: ~supportvar.matchings.Matching or None
    """
    graph = nx.Graph()
    evens = [m for m in range(taylor.vertex_count) if utils.popcount(m) % 2 == 0]
    graph.add_nodes_from(evens)
    graph.add_nodes_from(m for m in range(taylor.vertex_count) if utils.popcount(m) % 2)
    pairs = sorted({tuple(sorted((e.source, e.target), key=lambda m: utils.popcount(m) % 2))
                    for e in taylor.edges if _allowed(e, sigma)}, key=lambda p: (p[1], p[0]))
    graph.add_edges_from(pairs)
    matched = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=evens)
    if len(matched) != taylor.vertex_count:
        _logger.debug("No %s-perfect matching", utils.render_indices(sigma))
        return None
    edges = [_edge_between(taylor, sigma, u, matched[u]) for u in evens]
    return Matching(sigma, edges, taylor.n, label="search")


class _Peeling(object):
    """State of the triangular search: matched vertices and forced targets."""

    def __init__(self, taylor, sigma):
        self.size = taylor.vertex_count
        self.allowed_in = [[e for e in taylor.in_edges(v) if _allowed(e, sigma)] for v in range(self.size)]
        self.in_sources = [sorted({e.source for e in taylor.in_edges(v)}) for v in range(self.size)]
        self.allowed_out = [[e for e in taylor.out_edges(v) if _allowed(e, sigma)] for v in range(self.size)]
        self.matched = [False] * self.size
        self.forced = [False] * self.size
        self.free = self.size

    def candidates(self, target):
        return [e for e in self.allowed_in[target]
                if not self.matched[e.source] and not self.forced[e.source]]

    def would_force(self, target):
        return sum(1 for s in self.in_sources[target] if not self.matched[s] and not self.forced[s])

    def choose_target(self):
        pending = [v for v in range(self.size) if self.forced[v] and not self.matched[v]]
        if pending:
            return min(pending, key=lambda v: (len(self.candidates(v)), v))
        best = None
        for v in range(self.size):
            if self.matched[v]:
                continue
            options = len(self.candidates(v))
            if not options:
                continue
            key = (self.would_force(v), options, v)
            if best is None or key < best[0]:
                best = (key, v)
        return best[1] if best else None

    def apply(self, edge):
        self.matched[edge.source] = self.matched[edge.target] = True
        self.free -= 2
        newly = [s for s in self.in_sources[edge.target] if not self.matched[s] and not self.forced[s]]
        for s in newly:
            self.forced[s] = True
        return newly

    def undo(self, edge, newly):
        for s in newly:
            self.forced[s] = False
        self.matched[edge.source] = self.matched[edge.target] = False
        self.free += 2

    def feasible(self):
        for v in range(self.size):
            if self.forced[v] and not self.matched[v] and not self.candidates(v):
                return False
        return True

    def source_rank(self, edge):
        source = edge.source
        return (sum(1 for e in self.allowed_out[source] if not self.matched[e.target]), source, edge.i)


def search_triangular_matching(taylor, sigma, budget=constants.MATCHING_NODE_BUDGET):
    """Search for a sigma-perfect matching whose auxiliary graph is acyclic.

    Pairs are placed one at a time; once a target is matched, every unmatched
    vertex with an edge into it is forced to become a target, so no later
    source reaches an earlier target. Forced targets with the fewest
    candidate sources are handled first.

    :rtype: ~supportvar.matchings.Matching or None
    """
    state = _Peeling(taylor, sigma)
    chosen = []
    frames = []
    nodes = 0
    target = state.choose_target()
    if target is None:
        return None
    frames.append([sorted(state.candidates(target), key=state.source_rank), 0, None])
    while frames:
        frame = frames[-1]
        options, position, applied = frame
        if applied is not None:
            state.undo(*applied)
            chosen.pop()
            frame[2] = None
        if position >= len(options):
            frames.pop()
            continue
        frame[1] = position + 1
        nodes += 1
        if nodes > budget:
            _logger.info("Triangular search for %s stopped at node budget %r",
                         utils.render_indices(sigma), budget)
            return None
        edge = options[position]
        newly = state.apply(edge)
        frame[2] = (edge, newly)
        chosen.append(edge)
        if not state.feasible():
            continue
        if not state.free:
            _logger.debug("Triangular %s-perfect matching after %r nodes", utils.render_indices(sigma), nodes)
            return Matching(sigma, list(chosen), taylor.n, label="triangular-search")
        target = state.choose_target()
        if target is None:
            continue
        frames.append([sorted(state.candidates(target), key=state.source_rank), 0, None])
    return None


def type_coloring(matching):
    """The type color (kind, index) of every matched source."""
    return {e.source: (e.kind.value, e.i) for e in matching.edges}


def coordinate_coloring(matching, theta):
    """The theta-coordinate of every matched source."""
    return {e.source: e.source & theta for e in matching.edges}


def theta_determined(matching, theta):
    """Whether the matched edge type is a function of the theta-coordinate.

    :raises: ~supportvar.errors.ThetaTouchedByMatching
    :rtype: ~supportvar.matchings.ThetaDetermination
    """
    for edge in matching.edges:
        if theta & utils.bit(edge.i):
            raise errors.ThetaTouchedByMatching(index=edge.i)
    types = type_coloring(matching)
    coordinates = coordinate_coloring(matching, theta)
    colors = {}
    for source, phi in coordinates.items():
        color = types[source]
        if phi not in colors:
            colors[phi] = color
        elif colors[phi] != color:
            colors[phi] = None
    determined = all(c is not None for c in colors.values())
    certificate = None
    if determined and utils.popcount(theta) == 2:
        polynomial = SupportPolynomial(
            sympy.Mul(*[chi_symbols(matching.n)[i - 1] for i in utils.indices(matching.homotopy_indices())]),
            matching.n)
        certificate = TriangularCertificate(matching, [], polynomial)
    return ThetaDetermination(determined, colors, certificate)


def permute_matching(matching, mapping):
    """Relabel a matching along a generator map old -> new."""
    sigma = 0
    for j in utils.indices(matching.sigma):
        sigma |= utils.bit(mapping[j])
    return Matching(sigma, [e.permute(mapping) for e in matching.edges], matching.n, matching.label)


def leibniz_determinant(taylor, matching):
    """det T^M by Leibniz expansion over permutations allowed by the sparsity pattern.

    Rows are the matched targets in the order of their sources.

    :rtype: sympy.Expr
    """
    symbols = chi_symbols(taylor.n)
    sources = [e.source for e in matching.edges]
    targets = [e.target for e in matching.edges]
    row_of = {t: k for k, t in enumerate(targets)}
    column_entries = []
    for source in sources:
        entries = []
        for edge in taylor.out_edges(source):
            if edge.target in row_of:
                entries.append((row_of[edge.target], edge.symbol(symbols)))
        column_entries.append(sorted(entries, key=lambda rv: rv[0]))
    total = sympy.Integer(0)
    size = len(sources)
    stack = [(0, (), sympy.Integer(1))]
    while stack:
        column, rows, product = stack.pop()
        if column == size:
            inversions = sum(1 for a in range(size) for b in range(a + 1, size) if rows[a] > rows[b])
            total += -product if inversions % 2 else product
            continue
        for row, value in column_entries[column]:
            if row not in rows:
                stack.append((column + 1, rows + (row,), product * value))
    return sympy.expand(total)
