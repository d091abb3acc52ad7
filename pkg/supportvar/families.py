#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
from itertools import islice, product

from supportvar import constants, errors, utils
from supportvar.catalog import catalog_graph
from supportvar.gcd_graph import GcdGraph, build_gcd_graph, clique_complex, isomorphisms, monomorphisms
from supportvar.ideal import SquareFreeIdeal
from supportvar.matchings import Matching, hypercube_edges, permute_matching
from supportvar.taylor import EdgeRef, build_taylor
from supportvar.variety import AlternatingBinomial, CoordinateSubspace, Full, MonomialHypersurface, Union

_logger = logging.getLogger(__name__)

TRANSPORT_CAP = 48
TYPE_B_GRAPHS = tuple(range(27, 36))

_D = constants.EdgeKind.Differential
_H = constants.EdgeKind.Homotopy


class FamilySpec(object):
    """Parameters of one member of an infinite family.

    :param kind: The family.
    :type kind: ~supportvar.constants.FamilyKind or str
    :param n: Cycle length, or the size of [f] for Delta(n).
    :type n: int
    :param a: Whisker count at f1 for brooms and triangles.
    :type a: int
    :param b: Whisker count at f3 for brooms and triangles.
    :type b: int
    :param with_f2: Whether the variable x_f2 is present.
    :type with_f2: bool
    :param graph: Catalog number of a type B graph.
    :type graph: int
    :param singletons: Singleton variables added to a cycle edge ideal.
    :type singletons: list[int]
    """

    def __init__(self, kind, **kwargs):
        self.kind = constants.FamilyKind(kind)
        self.n = kwargs.pop('n', None)
        self.a = kwargs.pop('a', None)
        self.b = kwargs.pop('b', None)
        self.with_f2 = bool(kwargs.pop('with_f2', False))
        self.graph = kwargs.pop('graph', None)
        self.singletons = tuple(sorted(set(kwargs.pop('singletons', ()))))
        if kwargs:
            raise ValueError("Received unrecognized kwargs: {}".format(", ".join(kwargs.keys())))

    def __repr__(self):
        return "FamilySpec({})".format(self.label)

    @property
    def label(self):
        kind = self.kind
        if kind == constants.FamilyKind.CycleEdgeIdeal:
            return "C({})".format(self.n)
        if kind == constants.FamilyKind.CycleFiber:
            return "C({})+{}".format(self.n, "".join("x{}".format(i) for i in self.singletons) or "none")
        if kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
            name = "DB" if kind == constants.FamilyKind.DoubleBroom else "WT"
            return "{}({},{}){}".format(name, self.a, self.b, "+x2" if self.with_f2 else "")
        if kind == constants.FamilyKind.DeltaN:
            return "Delta({})".format(self.n)
        return "B({})".format(self.graph)

    @property
    def generator_count(self):
        if self.kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
            return 3 + self.a + self.b
        if self.kind == constants.FamilyKind.DeltaN:
            return 2 * self.n
        if self.kind == constants.FamilyKind.TypeB:
            return 6
        return self.n

    def validate(self):
        """Check the parameter ranges.

        :raises: ~supportvar.errors.BadParameters
        """
        kind = self.kind
        if kind in (constants.FamilyKind.CycleEdgeIdeal, constants.FamilyKind.CycleFiber):
            if self.n is None or self.n < 3:
                raise errors.BadParameters("cycles need n >= 3")
            for i in self.singletons:
                if not 1 <= i <= self.n:
                    raise errors.IndexOutOfRange("singleton x{} is not on the {}-cycle".format(i, self.n))
        elif kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
            if self.a is None or self.b is None or self.a < 1 or self.b < 1:
                raise errors.BadParameters("brooms and triangles need a, b >= 1")
        elif kind == constants.FamilyKind.DeltaN:
            if self.n is None or self.n < 3:
                raise errors.BadParameters("Delta(n) needs n >= 3")
        elif self.graph not in TYPE_B_GRAPHS:
            raise errors.BadParameters("type B graphs are 27..35, not {!r}".format(self.graph))
        if self.generator_count > constants.MAX_STRUCTURAL_N:
            raise errors.BadParameters("{} has more than {} generators".format(
                self.label, constants.MAX_STRUCTURAL_N))

    def to_json(self):
        document = {"kind": self.kind.value}
        for name in ('n', 'a', 'b', 'graph'):
            value = getattr(self, name)
            if value is not None:
                document[name] = value
        if self.with_f2:
            document["with_f2"] = True
        if self.singletons:
            document["singletons"] = list(self.singletons)
        return document


def _cycle_types(n):
    return [utils.bit(i) | utils.bit(i % n + 1) for i in range(1, n + 1)]


def cycle_graph(n):
    return GcdGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def broom_graph(a, b, triangle=False):
    """DB(a,b), or WT(a,b) with the extra edge f1-f3.

    Labels: f1, f2, f3 = 1, 2, 3; g_i = 3 + i; h_j = 3 + a + j.
    """
    edges = [(1, 2), (2, 3)]
    edges.extend((1, 3 + i) for i in range(1, a + 1))
    edges.extend((3, 3 + a + j) for j in range(1, b + 1))
    if triangle:
        edges.append((1, 3))
    return GcdGraph.from_edges(3 + a + b, edges)


def delta_graph(n):
    """Delta(n): f_i = i, g_i = n + i; K_n on [f] plus f_i - g_j for i != j."""
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges.extend((i, n + j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
    return GcdGraph.from_edges(2 * n, edges)


def _delta_types(n):
    graph = delta_graph(n)
    excluded = set()
    for k in (1, 2, 3):
        g = utils.bit(n + k)
        pool = utils.full_mask(n) & ~utils.full_mask(k)
        for sub in utils.iter_submasks(pool):
            if utils.popcount(sub) <= n - 3:
                excluded.add(g | sub)
    faces = [m for m in clique_complex(graph).faces if m not in excluded]
    return graph, faces


def make_family(spec):
    """The ideal a family member stands for.

    :type spec: ~supportvar.families.FamilySpec
    :rtype: ~supportvar.ideal.SquareFreeIdeal
    :raises: ~supportvar.errors.BadParameters
    """
    spec.validate()
    kind = spec.kind
    if kind == constants.FamilyKind.CycleEdgeIdeal:
        return SquareFreeIdeal(spec.n, _cycle_types(spec.n))
    if kind == constants.FamilyKind.CycleFiber:
        return SquareFreeIdeal(spec.n, _cycle_types(spec.n) + [utils.bit(i) for i in spec.singletons])
    if kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
        graph = broom_graph(spec.a, spec.b, kind == constants.FamilyKind.WhiskeredTriangle)
        faces = clique_complex(graph).faces
        if not spec.with_f2:
            faces = [m for m in faces if m != utils.bit(2)]
        return SquareFreeIdeal(graph.n, faces)
    if kind == constants.FamilyKind.DeltaN:
        graph, faces = _delta_types(spec.n)
        ideal = SquareFreeIdeal(graph.n, faces)
        if build_gcd_graph(ideal) != graph:
            raise errors.BadParameters("the Delta({}) ideal does not realize Delta({})".format(spec.n, spec.n))
        return ideal
    return catalog_graph(spec.graph).interesting_ideal()


def cycle_fiber_variety(n, singletons):
    """The support of a cycle edge ideal with singleton variables added.

    :rtype: ~supportvar.variety.VarietyExpr
    """
    if n % 4 != 2:
        return Full(n)
    odd = list(range(1, n, 2))
    even = list(range(2, n + 1, 2))
    parities = set(i % 2 for i in singletons)
    if not parities:
        return AlternatingBinomial(n, odd, even)
    if len(parities) > 1:
        return Full(n)
    if parities == {1}:
        return MonomialHypersurface(n, even)
    return MonomialHypersurface(n, odd)


def expected_variety(spec):
    """The support variety the family's theorem gives, in its labeling.

    :rtype: ~supportvar.variety.VarietyExpr
    """
    spec.validate()
    kind = spec.kind
    if kind == constants.FamilyKind.CycleEdgeIdeal:
        return cycle_fiber_variety(spec.n, ())
    if kind == constants.FamilyKind.CycleFiber:
        return cycle_fiber_variety(spec.n, spec.singletons)
    if kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
        n = spec.generator_count
        if spec.with_f2:
            return Full(n)
        whiskers = range(4, 4 + spec.a)
        hairs = range(4 + spec.a, n + 1)
        return Union(n, [CoordinateSubspace(n, whiskers), CoordinateSubspace(n, hairs)])
    if kind == constants.FamilyKind.DeltaN:
        return MonomialHypersurface(2 * spec.n, range(spec.n + 1, 2 * spec.n + 1))
    return catalog_graph(spec.graph).interesting_variety()


def cycle_matching(n):
    """The E-perfect, O-determined matching of the (4m+2)-cycle.

    For every assignment b of the odd coordinates, i is the first odd index
    with b_i = b_{i+2}, wrapping to n-1; the edges h_{sigma_b,i+1} (b_i = 0)
    or d_{sigma_b,i+1} (b_i = 1) are spread over the other even coordinates.

    :rtype: ~supportvar.matchings.Matching
    """
    if n % 4 != 2:
        raise errors.NoHandConstruction("the cycle matching needs n = 2 mod 4, not {}".format(n))
    odd = list(range(1, n, 2))
    even = utils.mask_from_indices(range(2, n + 1, 2))
    edges = []
    for bits in product((0, 1), repeat=len(odd)):
        b = dict(zip(odd, bits))
        i = next((j for j in odd[:-1] if b[j] == b[j + 2]), n - 1)
        sigma = utils.mask_from_indices(j for j in odd if b[j])
        middle = i + 1
        edges.extend(hypercube_edges(_D if b[i] else _H, sigma, middle, even & ~utils.bit(middle), n))
    return Matching(even, edges, n, label="cycle")


def broom_matching(a, b, i=1, j=1):
    """The {g_i, h_j}-perfect, {f1, f3}-determined matching of DB(a,b) and WT(a,b).

    :rtype: ~supportvar.matchings.Matching
    """
    n = 3 + a + b
    g = 3 + i
    h = 3 + a + j
    whiskers = utils.full_mask(n) & ~utils.full_mask(3)
    full = utils.full_mask(n)
    edges = hypercube_edges(_D, utils.bit(1) | utils.bit(3), 2, whiskers, n)
    edges += hypercube_edges(_H, 0, g, full & ~utils.bit(1) & ~utils.bit(g), n)
    edges += hypercube_edges(_H, utils.bit(1), h, full & ~utils.bit(1) & ~utils.bit(3) & ~utils.bit(h), n)
    return Matching(utils.bit(g) | utils.bit(h), edges, n, label="broom:g{}h{}".format(i, j))


def delta_matching(n):
    """The [g]-perfect, [f]-determined matching of Delta(n).

    :rtype: ~supportvar.matchings.Matching
    """
    size = 2 * n
    f = {k: utils.bit(k) for k in range(1, n + 1)}
    g = {k: utils.bit(n + k) for k in range(1, n + 1)}
    all_g = utils.full_mask(size) & ~utils.full_mask(n)
    edges = hypercube_edges(_H, 0, n + 1, (all_g & ~g[1]) | f[1], size)
    for k in range(2, n + 1):
        edges += hypercube_edges(_H, f[k], n + k, all_g & ~g[k], size)
    rest = utils.full_mask(n) & ~f[1]
    for sigma in utils.iter_submasks(utils.full_mask(size) & ~g[1]):
        if utils.popcount(sigma & rest) >= 2:
            edges.append(EdgeRef(_D, sigma, n + 1, size))
    for k in range(3, n + 1):
        edges += hypercube_edges(_D, f[1] | f[k], n + 2, all_g & ~g[2], size)
    edges += hypercube_edges(_D, f[1] | f[2], n + 3, all_g & ~g[3], size)
    return Matching(all_g, edges, size, label="delta")


def type_b_matching(graph_number):
    """M1 for graphs 27-29 and M2 for graphs 30-35, both {4, 6}-perfect."""
    if graph_number not in TYPE_B_GRAPHS:
        raise errors.NoHandConstruction("graph {} is not of type B".format(graph_number))
    m = utils.mask_from_indices
    edges = hypercube_edges(_D, m([2, 3]), 1, m([4, 5, 6]), 6)
    if graph_number <= 29:
        edges += hypercube_edges(_D, m([3, 5]), 1, m([4, 6]), 6)
        edges += hypercube_edges(_H, m([3]), 4, m([1, 6]), 6)
        label = "type-b:M1"
    else:
        edges += hypercube_edges(_H, m([3]), 4, m([1, 5, 6]), 6)
        label = "type-b:M2"
    edges += hypercube_edges(_H, 0, 6, m([1, 2, 4, 5]), 6)
    return Matching(m([4, 6]), edges, 6, label=label)


def family_matching(spec):
    """The hand-built matching from the family's proof.

    :rtype: tuple[int, ~supportvar.matchings.Matching]
    :raises: ~supportvar.errors.NoHandConstruction
    """
    spec.validate()
    kind = spec.kind
    if kind == constants.FamilyKind.CycleEdgeIdeal:
        matching = cycle_matching(spec.n)
    elif kind == constants.FamilyKind.CycleFiber:
        parities = set(i % 2 for i in spec.singletons)
        if len(parities) > 1:
            raise errors.NoHandConstruction("mixed-parity singletons give full support")
        matching = cycle_matching(spec.n)
        if parities == {0}:
            rotation = {k: k % spec.n + 1 for k in range(1, spec.n + 1)}
            matching = permute_matching(matching, rotation)
    elif kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
        if spec.with_f2:
            raise errors.NoHandConstruction("x_f2 present gives full support")
        matching = broom_matching(spec.a, spec.b)
    elif kind == constants.FamilyKind.DeltaN:
        matching = delta_matching(spec.n)
    else:
        matching = type_b_matching(spec.graph)
    return matching.sigma, matching


def _patterns(n):
    """(label, pattern graph, template matchings, use every map) for size n."""
    if n % 4 == 2 and n >= 6:
        yield "cycle", cycle_graph(n), [cycle_matching(n)], True
    for a in range(1, n - 3):
        b = n - 3 - a
        if a > b:
            break
        templates = [broom_matching(a, b, i, j) for i in range(1, a + 1) for j in range(1, b + 1)]
        yield "DB({},{})".format(a, b), broom_graph(a, b), templates, False
        yield "WT({},{})".format(a, b), broom_graph(a, b, True), templates, False
    if n % 2 == 0 and n >= 6:
        yield "Delta({})".format(n // 2), delta_graph(n // 2), [delta_matching(n // 2)], False
    if n == 6:
        for number in TYPE_B_GRAPHS:
            yield "B({})".format(number), catalog_graph(number).graph, [type_b_matching(number)], False


def suggest_matchings(ideal, taylor=None):
    """Hand constructions transported onto the labels of an ideal.

    Cycle matchings follow every Hamiltonian cycle of G_f; the broom, Delta(n)
    and type B matchings follow isomorphisms of G_f with their pattern graph.
    Candidates with an edge missing from T_f are dropped.

    :type ideal: ~supportvar.ideal.SquareFreeIdeal
    :rtype: list[tuple[str, int, ~supportvar.matchings.Matching]]
    """
    taylor = taylor or build_taylor(ideal)
    graph = taylor.gcd_graph
    found = []
    seen = set()
    for label, pattern, templates, every_map in _patterns(ideal.n):
        finder = monomorphisms if every_map else isomorphisms
        placed = False
        for mapping in islice(finder(pattern, graph), TRANSPORT_CAP):
            for template in templates:
                matching = permute_matching(template, mapping)
                key = frozenset(matching.edges)
                if key in seen:
                    continue
                seen.add(key)
                missing = next((e for e in matching.edges if e not in taylor), None)
                if missing is not None:
                    _logger.debug("Dropped %s matching: %r is not in T_f", label, missing)
                    continue
                found.append((label, matching.sigma, matching))
                placed = True
            if placed and not every_map:
                break
    _logger.debug("Suggested %r hand matchings for %r", len(found), ideal)
    return found


def cycle_fiber(n, singletons=()):
    """A cycle edge ideal with singletons and its predicted support.

    :rtype: tuple[~supportvar.ideal.SquareFreeIdeal, ~supportvar.variety.VarietyExpr]
    """
    spec = FamilySpec(constants.FamilyKind.CycleFiber, n=n, singletons=singletons)
    return make_family(spec), expected_variety(spec)


def equigeneration_degrees(ideal, rng, count=32, top=4):
    """Degree assignments, positive on every present type.

    The all-ones assignment comes first.

    :param rng: A numpy Generator.
    :rtype: list[dict[int, int]]
    """
    masks = ideal.masks
    assignments = [{m: 1 for m in masks}]
    for _ in range(count - 1):
        drawn = rng.integers(1, top + 1, size=len(masks))
        assignments.append({m: int(d) for m, d in zip(masks, drawn)})
    return assignments
