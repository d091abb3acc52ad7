#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import heapq
import logging
from itertools import combinations

from supportvar import constants, errors, utils
from supportvar.gcd_graph import clique_complex
from supportvar.ideal import SquareFreeIdeal

_logger = logging.getLogger(__name__)

INCLUSION_EXCLUSION_CAP = 22


class MonomialPrime(object):
    """A prime generated by face variables.

    :ivar generators: The type masks of the generating variables.
    :vartype generators: frozenset[int]
    """

    def __init__(self, generators):
        self.generators = frozenset(generators)
        if not self.generators:
            raise errors.BadParameters("a monomial prime needs a generator")

    def __repr__(self):
        return "MonomialPrime({})".format(
            ", ".join(utils.variable_name(m) for m in sorted(self.generators)))


class FiberDescription(object):
    """The minimal generators of J_G together with the face universe.

    :ivar minimal_supports: Minimal supports, each a frozenset of type masks.
    :vartype minimal_supports: list[frozenset[int]]
    :ivar universe: The clique complex whose faces index the variables.
    :vartype universe: ~supportvar.gcd_graph.CliqueComplex
    """

    def __init__(self, graph, universe, minimal_supports):
        self.graph = graph
        self.universe = universe
        self.minimal_supports = list(minimal_supports)
        position = universe.index()
        self.codes = [sum(1 << position[m] for m in s) for s in self.minimal_supports]

    def __repr__(self):
        return "FiberDescription({} supports over {} faces)".format(
            len(self.minimal_supports), len(self.universe))

    def decode(self, code):
        return [face for k, face in enumerate(self.universe.faces) if code >> k & 1]

    def render(self):
        """Each minimal support as a monomial string, e.g. 'x4*x12*x13*x14*x23'."""
        return ["*".join(utils.variable_name(m) for m in sorted(s, key=_face_order))
                for s in self.minimal_supports]


def _face_order(mask):
    return (utils.popcount(mask), utils.indices(mask))


def edge_primes(graph):
    """The primes whose intersection is J_G.

    For each edge {i,j}: the faces containing both, the faces containing i
    but not j, and the faces containing j but not i. An isolated vertex i
    contributes the prime (x_i).

    :rtype: list[~supportvar.enumeration.MonomialPrime]
    """
    universe = clique_complex(graph)
    primes = []
    for i, j in graph.edge_list():
        pair = utils.bit(i) | utils.bit(j)
        primes.append(MonomialPrime(f for f in universe if f & pair == pair))
        primes.append(MonomialPrime(f for f in universe if f & pair == utils.bit(i)))
        primes.append(MonomialPrime(f for f in universe if f & pair == utils.bit(j)))
    for i in range(1, graph.n + 1):
        if not graph.adjacency[i - 1]:
            primes.append(MonomialPrime([utils.bit(i)]))
    return universe, primes


def _minimalize(supports):
    kept = []
    for support in sorted(supports, key=lambda s: (utils.popcount(s), s)):
        if not any(k & support == k for k in kept):
            kept.append(support)
    return kept


def jg_minimal_generators(graph, budget=constants.FACE_BUDGET):
    """Minimal square-free supports of J_G, by iterated intersection.

    Supports are tracked as bitmasks over the sorted face universe; the
    intersection with a prime keeps a support meeting the prime and
    otherwise extends it by each generator of the prime.

    :type graph: ~supportvar.gcd_graph.GcdGraph
    :rtype: ~supportvar.enumeration.FiberDescription
    """
    universe, primes = edge_primes(graph)
    if len(universe) > budget:
        raise errors.FaceBudgetExceeded("{} faces exceed the budget".format(len(universe)))
    position = universe.index()
    supports = [0]
    for prime in primes:
        prime_code = sum(1 << position[m] for m in prime.generators)
        extended = set()
        for support in supports:
            if support & prime_code:
                extended.add(support)
                continue
            for m in prime.generators:
                extended.add(support | 1 << position[m])
        supports = _minimalize(extended)
        if len(supports) > budget:
            raise errors.FaceBudgetExceeded("J_G has more than {} minimal generators".format(budget))
    supports.sort(key=lambda s: (utils.popcount(s), s))
    faces = universe.faces
    described = [frozenset(faces[k] for k in range(len(faces)) if s >> k & 1) for s in supports]
    _logger.debug("J_G of %r has %r minimal generators", graph, len(described))
    return FiberDescription(graph, universe, described)


class FiberStream(object):
    """Iterates the ideals of a GCD fiber in ascending face-code order.

    Each X is emitted from the up-set of the lowest-index minimal support it
    contains, so overlapping up-sets never repeat an ideal.

    :ivar truncated: True once iteration stopped at the cap with ideals left.
    :vartype truncated: bool
    """

    def __init__(self, description, cap):
        if cap < 1:
            raise errors.BadParameters("cap must be at least 1")
        self.description = description
        self.cap = cap
        self.truncated = False
        self.emitted = 0

    def __iter__(self):
        description = self.description
        universe_code = (1 << len(description.universe)) - 1
        codes = description.codes
        if len(codes) == 1:
            merged = utils.iter_supermasks(codes[0], universe_code)
        else:
            merged = heapq.merge(*[self._stream(k, universe_code) for k in range(len(codes))])
        n = description.graph.n
        for code in merged:
            if self.emitted >= self.cap:
                self.truncated = True
                _logger.info("Fiber enumeration truncated at %r ideals", self.cap)
                return
            self.emitted += 1
            yield SquareFreeIdeal(n, description.decode(code))

    def _stream(self, k, universe_code):
        codes = self.description.codes
        earlier = codes[:k]
        for code in utils.iter_supermasks(codes[k], universe_code):
            if not any(code & c == c for c in earlier):
                yield code


def enumerate_fiber(graph, cap=10 ** 6):
    """Every ideal whose GCD graph is G, up to cap of them.

    :rtype: ~supportvar.enumeration.FiberStream
    """
    return FiberStream(jg_minimal_generators(graph), cap)


def count_fiber(graph):
    """Size of the fiber by inclusion-exclusion over the minimal supports.

    :rtype: int
    """
    description = jg_minimal_generators(graph)
    codes = description.codes
    if len(codes) > INCLUSION_EXCLUSION_CAP:
        raise errors.FaceBudgetExceeded(
            "inclusion-exclusion over {} supports".format(len(codes)))
    size = len(description.universe)
    total = 0
    for r in range(1, len(codes) + 1):
        for chosen in combinations(codes, r):
            union = 0
            for c in chosen:
                union |= c
            term = 1 << (size - utils.popcount(union))
            total += term if r % 2 else -term
    return total


def fiber_extremes(graph):
    """The ideals of the minimal supports and the ideal X = K_G.

    :rtype: tuple[list[~supportvar.ideal.SquareFreeIdeal], ~supportvar.ideal.SquareFreeIdeal]
    """
    description = jg_minimal_generators(graph)
    minimal = [SquareFreeIdeal(graph.n, sorted(s)) for s in description.minimal_supports]
    maximal = SquareFreeIdeal(graph.n, description.universe.faces)
    return minimal, maximal
