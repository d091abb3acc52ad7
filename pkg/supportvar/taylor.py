#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json
import logging

import networkx as nx
import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from supportvar import constants, errors, utils
from supportvar.gcd_graph import build_gcd_graph

_logger = logging.getLogger(__name__)


def chi_symbols(n):
    """The sympy symbols x1..xn standing for the operators chi_1..chi_n."""
    return sympy.symbols("x1:{}".format(n + 1))


class EdgeRef(object):
    """A signed edge d_{sigma,i} or h_{sigma,i} of a Taylor graph.

    Sigma is always the smaller endpoint. A differential edge runs from
    sigma + i down to sigma, a homotopy edge from sigma up to sigma + i.

    :ivar kind: Differential or Homotopy.
    :vartype kind: ~supportvar.constants.EdgeKind
    :ivar sigma: The smaller endpoint mask.
    :vartype sigma: int
    :ivar i: The generator index toggled by the edge.
    :vartype i: int
    """

    __slots__ = ('kind', 'sigma', 'i', 'n', 'sign')

    def __init__(self, kind, sigma, i, n):
        self.kind = constants.EdgeKind(kind)
        if sigma & utils.bit(i):
            raise errors.BadParameters("index {} already lies in sigma".format(i))
        self.sigma = sigma
        self.i = i
        self.n = n
        self.sign = utils.sign(sigma, i)

    @classmethod
    def differential(cls, sigma, i, n):
        return cls(constants.EdgeKind.Differential, sigma, i, n)

    @classmethod
    def homotopy(cls, sigma, i, n):
        return cls(constants.EdgeKind.Homotopy, sigma, i, n)

    @property
    def is_homotopy(self):
        return self.kind == constants.EdgeKind.Homotopy

    @property
    def source(self):
        if self.is_homotopy:
            return self.sigma
        return self.sigma | utils.bit(self.i)

    @property
    def target(self):
        if self.is_homotopy:
            return self.sigma | utils.bit(self.i)
        return self.sigma

    def key(self):
        return (self.kind.value, self.sigma, self.i)

    def __eq__(self, other):
        return isinstance(other, EdgeRef) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return (self.source, self.i, self.kind.value) < (other.source, other.i, other.kind.value)

    def __repr__(self):
        return "{}_{{{},{}}}".format(self.kind.value, utils.render_indices(self.sigma), self.i)

    def label(self):
        """Short label such as 'd5' or 'h6'."""
        return "{}{}".format(self.kind.value, self.i)

    def value(self, point, p=None):
        """The matrix entry at a point: sign, or sign * a_i for homotopies."""
        if self.is_homotopy:
            entry = self.sign * point[self.i - 1]
        else:
            entry = self.sign
        return entry % p if p else entry

    def symbol(self, symbols):
        if self.is_homotopy:
            return self.sign * symbols[self.i - 1]
        return sympy.Integer(self.sign)

    def permute(self, mapping):
        """The edge with generator labels moved along mapping (old -> new)."""
        sigma = 0
        for j in utils.indices(self.sigma):
            sigma |= utils.bit(mapping[j])
        return EdgeRef(self.kind, sigma, mapping[self.i], self.n)

    def to_json(self):
        return {
            "kind": self.kind.value,
            "src": utils.render_mask(self.source, self.n),
            "i": self.i,
            "sign": self.sign}

    @classmethod
    def from_json(cls, document, n=None):
        try:
            source, n_read = utils.parse_mask(document["src"])
            kind = constants.EdgeKind(document["kind"])
            i = int(document["i"])
        except (KeyError, ValueError, TypeError) as e:
            raise errors.MalformedDocument("bad edge document {!r}: {}".format(document, e))
        if n is not None and n != n_read:
            raise errors.DimensionMismatch("edge mask has {} bits, expected {}".format(n_read, n))
        if kind == constants.EdgeKind.Homotopy:
            return cls(kind, source, i, n_read)
        if not source & utils.bit(i):
            raise errors.MalformedDocument("differential edge source lacks index {}".format(i))
        return cls(kind, source & ~utils.bit(i), i, n_read)


class TaylorGraph(object):
    """The Taylor graph T_f on all 2^n subsets of the generators.

    Vertices are masks; the edges are stored once in a flat list sorted by
    (source, index) and indexed by source and by target.

    :ivar n: The number of generators.
    :vartype n: int
    :ivar ideal: The ideal the graph was built from.
    :vartype ideal: ~supportvar.ideal.SquareFreeIdeal
    """

    def __init__(self, ideal, gcd_graph, edges):
        self.n = ideal.n
        self.ideal = ideal
        self.gcd_graph = gcd_graph
        self.edges = sorted(edges)
        size = 1 << self.n
        self._out = [[] for _ in range(size)]
        self._in = [[] for _ in range(size)]
        for edge in self.edges:
            self._out[edge.source].append(edge)
            self._in[edge.target].append(edge)
        self._edge_set = None
        self._components = None

    def __repr__(self):
        return "TaylorGraph(n={}, differential={}, homotopy={})".format(
            self.n, len(self.differential_edges), len(self.homotopy_edges))

    def __contains__(self, edge):
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges)
        return edge in self._edge_set

    @property
    def vertex_count(self):
        return 1 << self.n

    @property
    def differential_edges(self):
        return [e for e in self.edges if not e.is_homotopy]

    @property
    def homotopy_edges(self):
        return [e for e in self.edges if e.is_homotopy]

    def out_edges(self, mask):
        return self._out[mask]

    def in_edges(self, mask):
        return self._in[mask]

    def degree(self, mask):
        return len(self._out[mask]) + len(self._in[mask])

    def is_isolated(self, mask):
        return not self._out[mask] and not self._in[mask]

    def is_differentially_isolated(self, mask):
        return not any(not e.is_homotopy for e in self._out[mask] + self._in[mask])

    def is_homotopically_isolated(self, mask):
        return not any(e.is_homotopy for e in self._out[mask] + self._in[mask])

    def components(self):
        """Connected components of the underlying undirected graph.

        T_f(a) is block diagonal along them.

        :rtype: list[list[int]]
        """
        if self._components is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.vertex_count))
            graph.add_edges_from((e.source, e.target) for e in self.edges)
            found = [sorted(c) for c in nx.connected_components(graph)]
            found.sort(key=lambda c: c[0])
            self._components = found
        return self._components

    def component_of(self, mask):
        for component in self.components():
            if mask in component:
                return component
        raise errors.IndexOutOfRange("vertex {} is not in the graph".format(mask))

    def to_dot(self):
        """DOT export with vertices named by b_1...b_n and edges labeled d_i/h_i with signs."""
        lines = ["digraph T {"]
        for mask in range(self.vertex_count):
            lines.append('  "{}";'.format(utils.render_mask(mask, self.n)))
        for edge in self.edges:
            lines.append('  "{}" -> "{}" [label="{}{}"{}];'.format(
                utils.render_mask(edge.source, self.n),
                utils.render_mask(edge.target, self.n),
                "+" if edge.sign > 0 else "-",
                edge.label(),
                ', style="dashed"' if edge.is_homotopy else ""))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "n": self.n,
            "ideal": self.ideal.to_json(),
            "edges": [e.to_json() for e in self.edges]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def build_taylor(ideal, budget=constants.EDGE_BUDGET):
    """Build the Taylor graph of an ideal.

    A differential edge d_{sigma,i} exists when f_i divides f_sigma, a
    homotopy edge h_{sigma,i} when i lies outside sigma and N(sigma).

    :type ideal: ~supportvar.ideal.SquareFreeIdeal
    :param budget: The largest number of edges allowed.
    :rtype: ~supportvar.taylor.TaylorGraph
    """
    n = ideal.n
    graph = build_gcd_graph(ideal)
    containing = [ideal.containing(i) for i in range(1, n + 1)]
    size = 1 << n
    neighbors = [0] * size
    for sigma in range(1, size):
        low = sigma & -sigma
        neighbors[sigma] = neighbors[sigma ^ low] | graph.adjacency[low.bit_length() - 1]
    edges = []
    for sigma in range(size):
        blocked = sigma | neighbors[sigma]
        for i in range(1, n + 1):
            b = utils.bit(i)
            if sigma & b:
                continue
            if all(mask & sigma for mask in containing[i - 1]):
                edges.append(EdgeRef.differential(sigma, i, n))
            if not blocked & b:
                edges.append(EdgeRef.homotopy(sigma, i, n))
        if len(edges) > budget:
            raise errors.EdgeBudgetExceeded(
                "Taylor graph exceeds {} edges".format(budget), info={'budget': budget})
    taylor = TaylorGraph(ideal, graph, edges)
    _logger.debug("Built %r", taylor)
    return taylor


class EvaluatedMatrix(object):
    """T_f(a) over F_p as a sparse entry list.

    Rows are edge targets and columns edge sources.

    :ivar entries: (row mask, column mask, value) triples with nonzero values.
    :vartype entries: list[tuple[int, int, int]]
    """

    def __init__(self, n, p, point, entries):
        self.n = n
        self.p = p
        self.point = tuple(point)
        self.entries = entries

    def dense(self):
        size = 1 << self.n
        matrix = np.zeros((size, size), dtype=np.int64)
        for row, col, value in self.entries:
            matrix[row, col] = value
        return matrix

    def square_is_zero(self):
        by_source = {}
        for row, col, value in self.entries:
            by_source.setdefault(col, []).append((row, value))
        product = {}
        for middle, col, value in self.entries:
            for row, other in by_source.get(middle, ()):
                key = (row, col)
                product[key] = (product.get(key, 0) + other * value) % self.p
        return not any(product.values())


def _check_point(taylor, point, p):
    p = utils.check_prime(p)
    point = tuple(int(v) % p for v in point)
    if len(point) != taylor.n:
        raise errors.DimensionMismatch(
            "point has {} coordinates, expected {}".format(len(point), taylor.n))
    return point, p


def evaluate_matrix(taylor, point, p):
    """Substitute chi_i = a_i into T_f.

    :rtype: ~supportvar.taylor.EvaluatedMatrix
    """
    point, p = _check_point(taylor, point, p)
    entries = []
    for edge in taylor.edges:
        value = edge.value(point, p)
        if value:
            entries.append((edge.target, edge.source, value))
    return EvaluatedMatrix(taylor.n, p, point, entries)


def rank_mod_p(matrix, p):
    """Rank of an integer matrix over F_p by dense row reduction.

    :type matrix: numpy.ndarray
    :rtype: int
    """
    work = np.array(matrix, dtype=np.int64) % p
    rows, cols = work.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(work[rank:, c])[0]
        if not len(nonzero):
            continue
        pivot = rank + nonzero[0]
        if pivot != rank:
            work[[rank, pivot], :] = work[[pivot, rank], :]
        inverse = pow(int(work[rank, c]), -1, p)
        work[rank, :] = (work[rank, :] * inverse) % p
        below = rank + 1 + np.nonzero(work[rank + 1:, c])[0]
        if len(below):
            factors = work[below, c].reshape(-1, 1)
            work[below, :] = (work[below, :] - factors * work[rank, :]) % p
        rank += 1
    return rank


def rank_gf2(rows):
    """Rank over GF(2) of rows packed as integer bitsets."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def _block_rank(taylor, rows, cols, point, p):
    if not rows or not cols:
        return 0
    row_index = {m: k for k, m in enumerate(rows)}
    col_index = {m: k for k, m in enumerate(cols)}
    if p == 2:
        packed = [0] * len(rows)
        for source in cols:
            for edge in taylor.out_edges(source):
                if edge.target in row_index and edge.value(point, 2):
                    packed[row_index[edge.target]] ^= 1 << col_index[source]
        return rank_gf2(packed)
    block = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for source in cols:
        for edge in taylor.out_edges(source):
            if edge.target in row_index:
                block[row_index[edge.target], col_index[source]] = edge.value(point, p)
    return rank_mod_p(block, p)


def component_ranks(taylor, point, p, rank_cap_n=constants.DEFAULT_RANK_CAP_N):
    """Rank of T_f(a) on every connected component.

    Each block splits further by popcount parity of the source, since every
    edge changes the parity.

    :returns: (component, rank) pairs in component order.
    :rtype: list[tuple[list[int], int]]
    """
    if taylor.n > rank_cap_n:
        raise errors.MatrixTooLarge(
            "n={} exceeds the rank cap {}".format(taylor.n, rank_cap_n), info={'rank_cap_n': rank_cap_n})
    point, p = _check_point(taylor, point, p)
    result = []
    for component in taylor.components():
        if len(component) == 1:
            result.append((component, 0))
            continue
        rank = 0
        for parity in (0, 1):
            cols = [m for m in component
                    if utils.popcount(m) % 2 == parity and taylor.out_edges(m)]
            rows = [m for m in component
                    if utils.popcount(m) % 2 != parity and taylor.in_edges(m)]
            rank += _block_rank(taylor, rows, cols, point, p)
        result.append((component, rank))
    return result


def evaluate_rank(taylor, point, p, rank_cap_n=constants.DEFAULT_RANK_CAP_N):
    """Exact rank of T_f(a) over F_p.

    :raises: ~supportvar.errors.MatrixTooLarge when n exceeds rank_cap_n.
    :raises: ~supportvar.errors.NotPrime
    :rtype: int
    """
    return sum(rank for _, rank in component_ranks(taylor, point, p, rank_cap_n))


def is_taylor_subgraph(first, second):
    """Whether every edge of the first Taylor graph is an edge of the second.

    :raises: ~supportvar.errors.DimensionMismatch
    :rtype: bool
    """
    if first.n != second.n:
        raise errors.DimensionMismatch("Taylor graphs on {} and {} generators".format(first.n, second.n))
    return all(edge in second for edge in first.edges)


def symbolic_block(taylor, rows, cols):
    """The exact submatrix of T_f on the given target rows and source columns.

    Entries are +-1 and +-x_i as sympy expressions.

    :rtype: sympy.Matrix
    """
    symbols = chi_symbols(taylor.n)
    row_index = {m: k for k, m in enumerate(rows)}
    col_index = {m: k for k, m in enumerate(cols)}
    block = sympy.zeros(len(rows), len(cols))
    for source in cols:
        for edge in taylor.out_edges(source):
            if edge.target in row_index:
                block[row_index[edge.target], col_index[source]] = edge.symbol(symbols)
    return block


def symbolic_rank(matrix):
    """Exact rank of a polynomial matrix over the fraction field Q(x1..xn)."""
    if not matrix.rows or not matrix.cols:
        return 0
    return DomainMatrix.from_Matrix(matrix).to_field().rank()


def symbolic_det(matrix):
    """Exact determinant of a square polynomial matrix, as an expanded sympy expression."""
    if matrix.rows != matrix.cols:
        raise errors.DimensionMismatch("determinant of a {}x{} matrix".format(matrix.rows, matrix.cols))
    if not matrix.rows:
        return sympy.Integer(1)
    converted = DomainMatrix.from_Matrix(matrix)
    return sympy.expand(converted.domain.to_sympy(converted.det()))
