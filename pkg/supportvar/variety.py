#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import itertools
import json
import logging

import numpy as np
import six
import sympy

from supportvar import constants, errors, utils
from supportvar.detectors import (
    component_block_certificates,
    find_homotopy_sources_sinks,
    full_support_witnesses,
    normalize_polynomial)
from supportvar.gcd_graph import build_gcd_graph, components, ideal_automorphisms
from supportvar.matchings import (
    TriangularCertificate,
    build_auxiliary,
    determinant_via_cycles,
    search_matching,
    search_triangular_matching,
    triangularity,
    verify_matching)
from supportvar.taylor import build_taylor, chi_symbols, component_ranks

_logger = logging.getLogger(__name__)

SAMPLE_RETRIES = 64
SUSPECT_SAMPLES = 8
UPPER_NODE_CAP = 10 ** 4
CANDIDATE_SIGMA_CAP = 64
AUTOMORPHISM_IMAGE_CAP = 64


class Component(object):
    """A piece V(x_i : i in zeros) cut by polynomials.

    Polynomials are kept primitive with positive leading coefficient, and a
    polynomial that is a single variable joins the zeros. Reducible
    polynomials are split by irreducible_components.
    """

    __slots__ = ('n', 'zeros', 'polynomials')

    def __init__(self, n, zeros=(), polynomials=()):
        self.n = n
        polynomials = list(polynomials)
        symbols = chi_symbols(n) if polynomials else ()
        zeros = set(zeros)
        normal = set()
        for p in polynomials:
            g = normalize_polynomial(p, n)
            if g.is_Symbol:
                zeros.add(symbols.index(g) + 1)
            else:
                normal.add(g)
        self.zeros = frozenset(zeros)
        self.polynomials = tuple(sorted(normal, key=sympy.default_sort_key))

    def __repr__(self):
        return "Component({})".format(_render_locus(self.n, self.zeros, self.polynomials))

    def __eq__(self, other):
        return isinstance(other, Component) and \
            (self.zeros, self.polynomials) == (other.zeros, other.polynomials)

    def __hash__(self):
        return hash((self.zeros, self.polynomials))

    def key(self):
        return (len(self.zeros) + len(self.polynomials), sorted(self.zeros),
                [str(p) for p in self.polynomials])

    @property
    def codim(self):
        return len(self.zeros) + len(self.polynomials)

    def vanishes_on(self, polynomial):
        """Whether the polynomial is identically zero on this component."""
        if polynomial.is_Symbol:
            return chi_symbols(self.n).index(polynomial) + 1 in self.zeros
        if normalize_polynomial(polynomial, self.n) in self.polynomials:
            return True
        symbols = chi_symbols(self.n)
        return sympy.expand(polynomial.xreplace({symbols[i - 1]: 0 for i in self.zeros})) == 0

    def within(self, other):
        return other.zeros <= self.zeros and all(self.vanishes_on(g) for g in other.polynomials)

    def extend(self, factor):
        """The component cut further by one irreducible factor."""
        if factor.is_Symbol:
            index = chi_symbols(self.n).index(factor) + 1
            return Component(self.n, self.zeros | {index}, self.polynomials)
        return Component(self.n, self.zeros, self.polynomials + (factor,))

    def contains(self, point, p):
        if any(point[i - 1] % p for i in self.zeros):
            return False
        if not self.polynomials:
            return True
        values = dict(zip(chi_symbols(self.n), (sympy.Integer(int(v)) for v in point)))
        return all(int(g.xreplace(values)) % p == 0 for g in self.polynomials)

    def relabeled(self, mapping, n):
        """Move along an index map old -> new into A^n."""
        source = chi_symbols(self.n)
        target = chi_symbols(n)
        renaming = {source[old - 1]: target[new - 1] for old, new in mapping.items()}
        return Component(n, (mapping[i] for i in self.zeros),
                         (g.xreplace(renaming) for g in self.polynomials))


def irreducible_components(component):
    """Split a component along the irreducible factors of its polynomials.

    Each polynomial is reduced modulo the zeros first; a factor that is a
    variable becomes a zero, which restarts the reduction of the others.

    :rtype: list[~supportvar.variety.Component]
    """
    if not component.polynomials:
        return [component]
    n = component.n
    symbols = chi_symbols(n)
    found = []
    stack = [(component.zeros, list(component.polynomials), [])]
    while stack:
        zeros, pending, kept = stack.pop()
        if not pending:
            found.append(Component(n, zeros, kept))
            continue
        g = sympy.expand(pending[0].xreplace({symbols[i - 1]: 0 for i in zeros}))
        rest = pending[1:]
        if g.is_zero:
            stack.append((zeros, rest, kept))
            continue
        if g.is_Number:
            continue
        _, factors = sympy.factor_list(g, *symbols)
        for factor, _ in factors:
            if factor.is_Number:
                continue
            if factor.is_Symbol:
                stack.append((zeros | {symbols.index(factor) + 1}, kept + rest, []))
            else:
                stack.append((zeros, rest, kept + [factor]))
    return found


def minimalize(found):
    """Drop every component contained in another one; equal varieties keep the first."""
    unique = sorted(set(piece for c in found for piece in irreducible_components(c)), key=Component.key)
    kept = []
    for k, c in enumerate(unique):
        dominated = False
        for j, d in enumerate(unique):
            if j == k or not c.within(d):
                continue
            if j > k and d.within(c):
                continue
            dominated = True
            break
        if not dominated:
            kept.append(c)
    return kept


def _render_locus(n, zeros, polynomials):
    if not zeros and not polynomials:
        return "A^{}".format(n)
    parts = ["x{}".format(i) for i in sorted(zeros)] + [str(g) for g in polynomials]
    return "V({})".format(",".join(parts))


class VarietyExpr(object):
    """A variety in A^n built from the grammar below.

    Two expressions compare equal when their minimal irreducible components
    agree, so V(x1*x5) equals V(x1) u V(x5).
    """

    def __init__(self, n):
        self.n = n

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__, self.render())

    def __str__(self):
        return self.render()

    def __eq__(self, other):
        return isinstance(other, VarietyExpr) and self.n == other.n and \
            self.canonical() == other.canonical()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.n, self.canonical()))

    def components(self):
        raise NotImplementedError()

    def render(self):
        raise NotImplementedError()

    def to_json(self):
        raise NotImplementedError()

    def canonical(self):
        return frozenset(minimalize(self.components()))

    @property
    def is_full(self):
        return any(not c.zeros and not c.polynomials for c in self.components())

    def contains(self, point, p):
        return any(c.contains(point, p) for c in self.components())

    def dim(self):
        return max(self.n - c.codim for c in minimalize(self.components()))

    def polynomials(self):
        """Defining polynomials of every component, as sympy expressions."""
        symbols = chi_symbols(self.n)
        return [[symbols[i - 1] for i in sorted(c.zeros)] + list(c.polynomials)
                for c in minimalize(self.components())]

    def permute(self, mapping):
        """Relabel coordinates along mapping (old -> new, dict or 1-based list)."""
        if not isinstance(mapping, dict):
            mapping = {old: new for old, new in enumerate(mapping, 1)}
        return variety_from_components(self.n, [c.relabeled(mapping, self.n) for c in self.components()])

    def embed(self, embedding, n):
        """Place this variety on the coordinates embedding[0..] of A^n."""
        mapping = {k: i for k, i in enumerate(embedding, 1)}
        return variety_from_components(n, [c.relabeled(mapping, n) for c in self.components()])

    def simplify(self):
        return variety_from_components(self.n, self.components())


class Locus(VarietyExpr):
    """V(x_i : i in zeros, polynomials), irreducible."""

    def __init__(self, n, zeros=(), polynomials=()):
        super(Locus, self).__init__(n)
        self.component = Component(n, zeros, polynomials)
        for i in self.component.zeros:
            if not 1 <= i <= n:
                raise errors.IndexOutOfRange("coordinate {} is not in 1..{}".format(i, n))

    @property
    def zeros(self):
        return self.component.zeros

    def components(self):
        return [self.component]

    def render(self):
        return _render_locus(self.n, self.component.zeros, self.component.polynomials)

    def to_json(self):
        return {
            "type": "locus",
            "n": self.n,
            "zeros": sorted(self.component.zeros),
            "polynomials": [str(g) for g in self.component.polynomials]}


class Full(Locus):

    def __init__(self, n):
        super(Full, self).__init__(n)

    def to_json(self):
        return {"type": "full", "n": self.n}


class CoordinateSubspace(Locus):

    def __init__(self, n, zeros):
        super(CoordinateSubspace, self).__init__(n, zeros)

    def to_json(self):
        return {"type": "subspace", "n": self.n, "zeros": sorted(self.zeros)}


class Hypersurface(Locus):

    def __init__(self, n, polynomial):
        super(Hypersurface, self).__init__(n, polynomials=[polynomial])
        self._polynomial = normalize_polynomial(polynomial, n)

    @property
    def polynomial(self):
        return self._polynomial

    def to_json(self):
        return {"type": "hypersurface", "n": self.n, "polynomial": str(self.polynomial)}


class AlternatingBinomial(Hypersurface):
    """V(x^O + x^E) for disjoint index sets O and E."""

    def __init__(self, n, odd, even):
        self.odd = utils.mask_from_indices(odd) if not isinstance(odd, six.integer_types) else odd
        self.even = utils.mask_from_indices(even) if not isinstance(even, six.integer_types) else even
        if not self.odd or not self.even or self.odd & self.even:
            raise errors.BadParameters("the two monomials need disjoint nonempty supports")
        symbols = chi_symbols(n)
        polynomial = sympy.Mul(*[symbols[i - 1] for i in utils.indices(self.odd)]) + \
            sympy.Mul(*[symbols[i - 1] for i in utils.indices(self.even)])
        super(AlternatingBinomial, self).__init__(n, polynomial)

    def to_json(self):
        return {"type": "binomial", "n": self.n,
                "odd": list(utils.indices(self.odd)), "even": list(utils.indices(self.even))}


class MonomialHypersurface(VarietyExpr):
    """V(prod of x_i over indices), the union of the coordinate hyperplanes."""

    def __init__(self, n, indices):
        super(MonomialHypersurface, self).__init__(n)
        self.indices = tuple(sorted(set(indices)))
        if not self.indices:
            raise errors.BadParameters("a monomial hypersurface needs an index")

    def components(self):
        return [Component(self.n, [i]) for i in self.indices]

    def render(self):
        return "V({})".format("*".join("x{}".format(i) for i in self.indices))

    def to_json(self):
        return {"type": "monomial", "n": self.n, "indices": list(self.indices)}


class Union(VarietyExpr):

    def __init__(self, n, parts):
        super(Union, self).__init__(n)
        self.parts = list(parts)
        if not self.parts:
            raise errors.BadParameters("an empty union")

    def components(self):
        return [c for part in self.parts for c in part.components()]

    def render(self):
        return " u ".join(part.render() for part in self.parts)

    def to_json(self):
        return {"n": self.n, "union": [part.to_json() for part in self.parts]}


class Product(VarietyExpr):
    """V_1 x ... x V_s, each factor placed on its coordinates of A^n."""

    def __init__(self, n, factors, embeddings):
        super(Product, self).__init__(n)
        self.factors = list(factors)
        self.embeddings = [tuple(e) for e in embeddings]
        covered = sorted(i for e in self.embeddings for i in e)
        if covered != list(range(1, n + 1)):
            raise errors.BadParameters("product embeddings must partition 1..{}".format(n))
        for factor, embedding in zip(self.factors, self.embeddings):
            if factor.n != len(embedding):
                raise errors.DimensionMismatch("factor on {} coordinates embedded into {}".format(
                    factor.n, len(embedding)))

    def components(self):
        placed = [[c.relabeled({k: i for k, i in enumerate(e, 1)}, self.n) for c in f.components()]
                  for f, e in zip(self.factors, self.embeddings)]
        merged = []
        for combination in itertools.product(*placed):
            zeros = set()
            polynomials = []
            for c in combination:
                zeros |= c.zeros
                polynomials.extend(c.polynomials)
            merged.append(Component(self.n, zeros, polynomials))
        return merged

    def dim(self):
        return sum(f.dim() for f in self.factors)

    def render(self):
        return self.simplify().render()

    def to_json(self):
        return {"n": self.n, "product": [f.to_json() for f in self.factors],
                "embeddings": [list(e) for e in self.embeddings]}


def _alternating_supports(polynomial, n):
    """The two monomial supports of x^O + x^E, or None."""
    terms = sympy.Poly(polynomial, *chi_symbols(n)).terms()
    if len(terms) != 2:
        return None
    supports = []
    for exponents, coefficient in terms:
        if coefficient != 1 or any(e > 1 for e in exponents):
            return None
        supports.append(utils.mask_from_indices(k + 1 for k, e in enumerate(exponents) if e))
    if supports[0] & supports[1] or not all(supports):
        return None
    return sorted(supports, key=lambda m: m & -m)


def _component_expr(c):
    if not c.zeros and not c.polynomials:
        return Full(c.n)
    if not c.polynomials:
        return CoordinateSubspace(c.n, c.zeros)
    if not c.zeros and len(c.polynomials) == 1:
        supports = _alternating_supports(c.polynomials[0], c.n)
        if supports:
            return AlternatingBinomial(c.n, supports[0], supports[1])
        return Hypersurface(c.n, c.polynomials[0])
    return Locus(c.n, c.zeros, c.polynomials)


def variety_from_components(n, found):
    """The simplest expression whose components are the minimal ones of found.

    :rtype: ~supportvar.variety.VarietyExpr
    """
    kept = minimalize(found)
    if not kept:
        raise errors.BadParameters("a variety needs at least one component")
    if len(kept) == 1:
        return _component_expr(kept[0])
    if all(len(c.zeros) == 1 and not c.polynomials for c in kept):
        return MonomialHypersurface(n, [next(iter(c.zeros)) for c in kept])
    return Union(n, [_component_expr(c) for c in kept])


def variety_from_json(document):
    """Inverse of VarietyExpr.to_json.

    :rtype: ~supportvar.variety.VarietyExpr
    """
    try:
        n = int(document["n"])
        if "union" in document:
            return Union(n, [variety_from_json(d) for d in document["union"]])
        if "product" in document:
            return Product(n, [variety_from_json(d) for d in document["product"]], document["embeddings"])
        kind = document["type"]
        symbols = {str(s): s for s in chi_symbols(n)}
        if kind == "full":
            return Full(n)
        if kind == "subspace":
            return CoordinateSubspace(n, document["zeros"])
        if kind == "monomial":
            return MonomialHypersurface(n, document["indices"])
        if kind == "binomial":
            return AlternatingBinomial(n, document["odd"], document["even"])
        if kind == "hypersurface":
            return Hypersurface(n, sympy.sympify(document["polynomial"], locals=symbols))
        if kind == "locus":
            return Locus(n, document["zeros"],
                         [sympy.sympify(g, locals=symbols) for g in document["polynomials"]])
    except (KeyError, TypeError, ValueError, sympy.SympifyError) as e:
        raise errors.MalformedDocument("bad variety document: {}".format(e))
    raise errors.MalformedDocument("unknown variety type {!r}".format(kind))


class PointSample(object):
    """Points over F_p drawn on (or off) a variety.

    :ivar on_variety: Whether the points lie on the context variety.
    :vartype on_variety: bool
    """

    def __init__(self, prime, points, context, on_variety=True):
        self.prime = prime
        self.points = list(points)
        self.context = context
        self.on_variety = on_variety

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _random_point(rng, n, p):
    return [int(v) for v in rng.integers(0, p, size=n)]


def _solve_component(component, p, rng):
    n = component.n
    symbols = chi_symbols(n)
    for _ in range(SAMPLE_RETRIES):
        point = _random_point(rng, n, p)
        for i in component.zeros:
            point[i - 1] = 0
        solved = set(component.zeros)
        for polynomial in component.polynomials:
            linear = [k for k in range(1, n + 1)
                      if k not in solved and sympy.degree(polynomial, symbols[k - 1]) == 1]
            if not linear:
                raise errors.UnsatisfiableOverField(
                    "no coordinate of {} can be solved for".format(polynomial))
            k = linear[int(rng.integers(len(linear)))]
            x = symbols[k - 1]
            values = {s: sympy.Integer(v) for j, (s, v) in enumerate(zip(symbols, point), 1) if j != k}
            slope = int(sympy.diff(polynomial, x).xreplace(values)) % p
            if not slope:
                break
            offset = int(polynomial.xreplace(values).xreplace({x: 0})) % p
            point[k - 1] = (-offset * pow(slope, -1, p)) % p
            solved.add(k)
        if component.contains(point, p):
            return tuple(point)
    raise errors.UnsatisfiableOverField(
        "no point found on {!r} over F_{} after {} tries".format(component, p, SAMPLE_RETRIES))


def _generator(rng, seed):
    return rng if rng is not None else np.random.default_rng(seed)


def sample_on_variety(expr, n, p, count, rng=None, seed=constants.DEFAULT_SEED):
    """Draw points on expr: a random component, zeros set, one coordinate solved
    per polynomial.

    :raises: ~supportvar.errors.UnsatisfiableOverField
    :rtype: ~supportvar.variety.PointSample
    """
    if expr.n != n:
        raise errors.DimensionMismatch("variety lives in A^{}, not A^{}".format(expr.n, n))
    p = utils.check_prime(p)
    rng = _generator(rng, seed)
    pieces = minimalize(expr.components())
    points = []
    for _ in range(count):
        component = pieces[int(rng.integers(len(pieces)))]
        points.append(_solve_component(component, p, rng))
    return PointSample(p, points, expr)


def sample_off_variety(expr, n, p, count, rng=None, seed=constants.DEFAULT_SEED):
    """Uniform points not on expr, by rejection. Only primes above 3.

    :raises: ~supportvar.errors.BadParameters
    :raises: ~supportvar.errors.UnsatisfiableOverField
    :rtype: ~supportvar.variety.PointSample
    """
    if expr.n != n:
        raise errors.DimensionMismatch("variety lives in A^{}, not A^{}".format(expr.n, n))
    p = utils.check_prime(p)
    if p <= 3:
        raise errors.BadParameters("off-variety sampling needs a prime above 3, got {}".format(p))
    if expr.is_full:
        raise errors.UnsatisfiableOverField("A^{} has no complement".format(n))
    rng = _generator(rng, seed)
    points = []
    tries = 0
    while len(points) < count:
        tries += 1
        if tries > count * SAMPLE_RETRIES:
            raise errors.UnsatisfiableOverField("rejection sampling off {} gave up".format(expr.render()))
        point = _random_point(rng, n, p)
        if not expr.contains(point, p):
            points.append(tuple(point))
    return PointSample(p, points, expr, on_variety=False)


def membership(ideal, point, p, taylor=None, rank_cap_n=constants.DEFAULT_RANK_CAP_N):
    """Whether a lies on V_f, i.e. rank T_f(a) < 2^(n-1).

    Each component block has rank at most half its size, so the total is
    deficient exactly when some block is.

    :raises: ~supportvar.errors.MatrixTooLarge
    :rtype: bool
    """
    taylor = taylor or build_taylor(ideal)
    return any(2 * rank < len(component)
               for component, rank in component_ranks(taylor, point, p, rank_cap_n))


def product_decompose(ideal):
    """One restricted ideal per connected component of G_f, with its embedding.

    :rtype: list[tuple[~supportvar.ideal.SquareFreeIdeal, tuple[int]]]
    """
    return [ideal.restrict(mask) for mask in components(build_gcd_graph(ideal))]


def minimal_transversals(masks, n):
    """Minimal index sets meeting every mask, ascending by size then mask."""
    if not masks:
        return [0]
    found = []
    for size in range(1, n + 1):
        for members in itertools.combinations(range(1, n + 1), size):
            candidate = utils.mask_from_indices(members)
            if any(f & candidate == f for f in found):
                continue
            if all(candidate & m for m in masks):
                found.append(candidate)
    return found


def candidate_sigmas(lower, n):
    """Sigma candidates for the matching search.

    Transversals of the certified coordinate components, each widened by the
    variable support of a monomial of a certified hypersurface.
    """
    coordinate = [utils.mask_from_indices(c.zeros) for c in lower if not c.polynomials]
    transversals = minimal_transversals(coordinate, n)
    supports = set()
    for c in lower:
        for g in c.polynomials:
            for exponents, _ in sympy.Poly(g, *chi_symbols(n)).terms():
                supports.add(utils.mask_from_indices(k + 1 for k, e in enumerate(exponents) if e))
    widened = {t | s for t in transversals for s in (supports or {0})}
    return sorted(widened, key=lambda m: (utils.popcount(m), m))[:CANDIDATE_SIGMA_CAP]


class AutomorphismImage(object):
    """A membership moved along an automorphism of X_f, which fixes I_f."""

    def __init__(self, label, mapping, polynomial):
        self.label = label
        self.mapping = mapping
        self.polynomial = polynomial

    def __repr__(self):
        return "AutomorphismImage({} in I_f)".format(self.polynomial.render())

    def to_json(self):
        return {
            "kind": "automorphism-image",
            "of": self.label,
            "mapping": [self.mapping[i] for i in sorted(self.mapping)],
            "polynomial": self.polynomial.render()}


class UpperBound(object):
    """V(P_1, ..., P_k) for the memberships P_k in I_f found so far.

    Components are found by choosing one irreducible factor per P_k,
    depth first; a branch already inside the lower bound is closed early.
    """

    def __init__(self, n, lower):
        self.n = n
        self.lower = list(lower)
        self._factor_sets = []
        self._seen = set()

    def __len__(self):
        return len(self._factor_sets)

    def add(self, polynomial):
        if polynomial.is_zero:
            return False
        factors = frozenset(normalize_polynomial(f, self.n) for f, _ in polynomial.factors())
        if not factors or factors in self._seen:
            return False
        self._seen.add(factors)
        self._factor_sets.append(sorted(factors, key=lambda f: (f.is_Symbol, sympy.default_sort_key(f))))
        return True

    def _inside_lower(self, component):
        return any(component.within(low) for low in self.lower)

    def components(self, cap=UPPER_NODE_CAP):
        """Components of the upper bound, or None past the node cap."""
        sets = sorted(self._factor_sets, key=len)
        found = []
        stack = [(0, Component(self.n))]
        nodes = 0
        while stack:
            k, current = stack.pop()
            nodes += 1
            if nodes > cap:
                _logger.info("Upper bound search stopped at %r nodes", cap)
                return None
            if self._inside_lower(current):
                found.append(current)
                continue
            while k < len(sets) and any(current.vanishes_on(f) for f in sets[k]):
                k += 1
            if k == len(sets):
                found.append(current)
                continue
            for factor in sets[k]:
                stack.append((k + 1, current.extend(factor)))
        return minimalize(found)

    def closed(self, upper=None):
        upper = upper if upper is not None else self.components()
        return upper is not None and all(self._inside_lower(c) for c in upper)


class VarietyReport(object):
    """The classification of one ideal.

    :ivar verdict: Exact, Bounded or SampledOnly.
    :vartype verdict: ~supportvar.constants.VerdictKind
    :ivar variety: The variety for exact verdicts.
    :vartype variety: ~supportvar.variety.VarietyExpr
    :ivar certificates: Certificate documents, sorted.
    :vartype certificates: list[dict]
    :ivar samples: Per prime {"on": [members, total], "off": [nonmembers, total]}.
    :vartype samples: dict
    """

    def __init__(self, n, verdict, lower, upper=None, certificates=(), **kwargs):
        self.n = n
        self.verdict = constants.VerdictKind(verdict)
        self.lower = lower
        self.upper = upper
        self.variety = lower if self.verdict == constants.VerdictKind.Exact else None
        self.certificates = sorted(certificates, key=lambda c: json.dumps(c, sort_keys=True))
        self.evidence = kwargs.pop('evidence', [])
        self.primes = list(kwargs.pop('primes', ()))
        self.samples = kwargs.pop('samples', {})
        self.seed = kwargs.pop('seed', constants.DEFAULT_SEED)
        self.consistent = kwargs.pop('consistent', True)
        self.caps = kwargs.pop('caps', {})
        self.factors = [list(f) for f in kwargs.pop('factors', [list(range(1, n + 1))])]
        if kwargs:
            raise ValueError("Received unrecognized kwargs: {}".format(", ".join(kwargs.keys())))

    def __repr__(self):
        return "VarietyReport({}: {})".format(self.verdict.value, self.render())

    def render(self):
        if self.variety is not None:
            return self.variety.render()
        upper = self.upper.render() if self.upper is not None else "?"
        return "{} <= V_f <= {}".format(self.lower.render(), upper)

    def to_json(self):
        return {
            "schema": constants.REPORT_SCHEMA_VERSION,
            "n": self.n,
            "verdict": self.verdict.value,
            "variety": self.variety.render() if self.variety is not None else None,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json() if self.upper is not None else None,
            "certificates": self.certificates,
            "primes": self.primes,
            "samples": {str(p): self.samples[p] for p in sorted(self.samples)},
            "seed": self.seed,
            "consistent": self.consistent,
            "caps": self.caps,
            "factors": self.factors}

    @classmethod
    def from_json(cls, document):
        try:
            if document.get("schema") != constants.REPORT_SCHEMA_VERSION:
                raise errors.MalformedDocument("unsupported report schema {!r}".format(document.get("schema")))
            upper = document.get("upper")
            return cls(
                document["n"], document["verdict"], variety_from_json(document["lower"]),
                variety_from_json(upper) if upper is not None else None,
                document.get("certificates", []),
                primes=document.get("primes", []),
                samples={int(p): s for p, s in document.get("samples", {}).items()},
                seed=document.get("seed", constants.DEFAULT_SEED),
                consistent=document.get("consistent", True),
                caps=document.get("caps", {}),
                factors=document.get("factors", [list(range(1, document["n"] + 1))]))
        except (KeyError, AttributeError, ValueError) as e:
            raise errors.MalformedDocument("bad report document: {}".format(e))


class _FactorResult(object):

    def __init__(self, verdict, lower, upper, evidence, taylor):
        self.verdict = verdict
        self.lower = lower
        self.upper = upper
        self.evidence = evidence
        self.taylor = taylor


class Classifier(object):
    """Classifies the support variety of square-free monomial ideals.

    :param primes: The primes sampled for corroboration.
    :type primes: list[int]
    :param samples_per_prime: Points drawn on and off the variety per prime.
    :type samples_per_prime: int
    :param seed: Seed of the point sampler.
    :type seed: int
    :param rank_cap_n: Largest n whose Taylor matrix is evaluated.
    :type rank_cap_n: int
    :param cycle_cap: Most auxiliary cycles enumerated per matching.
    :type cycle_cap: int
    :param matching_node_budget: Node budget of the triangular matching search.
    :type matching_node_budget: int
    :param hand_matchings: Whether to try the family constructions first.
    :type hand_matchings: bool
    """

    _DETECTOR_KEYS = ('degree3_cap', 'edge_pair_cap', 'walk_len', 'symbolic_cap', 'source_cycle_cap')

    def __init__(self, **kwargs):
        self.primes = tuple(utils.check_prime(p) for p in kwargs.pop('primes', constants.DEFAULT_PRIMES))
        self.samples_per_prime = int(kwargs.pop('samples_per_prime', constants.DEFAULT_SAMPLES_PER_PRIME))
        self.seed = int(kwargs.pop('seed', constants.DEFAULT_SEED))
        self.rank_cap_n = int(kwargs.pop('rank_cap_n', constants.DEFAULT_RANK_CAP_N))
        self.cycle_cap = int(kwargs.pop('cycle_cap', constants.CYCLE_CAP))
        self.matching_node_budget = int(kwargs.pop('matching_node_budget', constants.MATCHING_NODE_BUDGET))
        self.hand_matchings = kwargs.pop('hand_matchings', True)
        self.detector_config = {k: kwargs.pop(k) for k in self._DETECTOR_KEYS if k in kwargs}
        if kwargs:
            raise ValueError("Received unrecognized kwargs: {}".format(", ".join(kwargs.keys())))
        if not self.primes:
            raise errors.BadParameters("at least one prime is needed")
        if self.samples_per_prime < 1:
            raise errors.BadParameters("samples per prime must be positive")

    def caps(self):
        caps = {
            "rank_cap_n": self.rank_cap_n,
            "cycle_cap": self.cycle_cap,
            "matching_node_budget": self.matching_node_budget}
        caps.update(self.detector_config)
        return caps

    def classify(self, ideal):
        """Classify V_f.

        :type ideal: ~supportvar.ideal.SquareFreeIdeal
        :rtype: ~supportvar.variety.VarietyReport
        """
        if ideal.n > self.rank_cap_n:
            raise errors.MatrixTooLarge(
                "n={} exceeds the rank cap {}".format(ideal.n, self.rank_cap_n),
                info={'rank_cap_n': self.rank_cap_n})
        _logger.debug("Classifying %r", ideal)
        rng = np.random.default_rng(self.seed)
        parts = product_decompose(ideal)
        results = [self._certify(sub, rng) for sub, _ in parts]
        embeddings = [embedding for _, embedding in parts]
        n = ideal.n
        if len(parts) == 1:
            lower, upper = results[0].lower, results[0].upper
            taylor = results[0].taylor
        else:
            lower = Product(n, [r.lower for r in results], embeddings)
            upper = None
            if all(r.upper is not None for r in results):
                upper = Product(n, [r.upper for r in results], embeddings)
            taylor = build_taylor(ideal)
        verdicts = set(r.verdict for r in results)
        if verdicts == {constants.VerdictKind.Exact}:
            verdict = constants.VerdictKind.Exact
            upper = lower
        elif constants.VerdictKind.SampledOnly in verdicts:
            verdict = constants.VerdictKind.SampledOnly
        else:
            verdict = constants.VerdictKind.Bounded
        certificates = []
        evidence = []
        for r, embedding in zip(results, embeddings):
            for item in r.evidence:
                document = item.to_json()
                if len(parts) > 1:
                    document = dict(document, factor=list(embedding))
                certificates.append(document)
                evidence.append(item)
        samples, consistent = self._corroborate(ideal, taylor, verdict, lower, upper, rng)
        report = VarietyReport(
            n, verdict, lower, upper, certificates, evidence=evidence, primes=self.primes,
            samples=samples, seed=self.seed, consistent=consistent, caps=self.caps(),
            factors=embeddings)
        _logger.debug("Classified %r as %r", ideal, report)
        return report

    def _suspects(self, taylor, rng):
        """Components rank deficient at every sampled point of the largest prime."""
        p = max(self.primes)
        deficient = None
        for _ in range(SUSPECT_SAMPLES):
            point = _random_point(rng, taylor.n, p)
            ranks = component_ranks(taylor, point, p, self.rank_cap_n)
            now = set(k for k, (component, rank) in enumerate(ranks) if 2 * rank < len(component))
            deficient = now if deficient is None else deficient & now
        return deficient

    def _certify(self, ideal, rng):
        n = ideal.n
        taylor = build_taylor(ideal)
        graph = taylor.gcd_graph
        suspects = self._suspects(taylor, rng)
        witnesses = full_support_witnesses(taylor, graph, suspects=suspects, **self.detector_config)
        if witnesses:
            return _FactorResult(constants.VerdictKind.Exact, Full(n), Full(n), witnesses, taylor)
        if suspects:
            _logger.info("Components %r look deficient everywhere but no witness was found", sorted(suspects))

        pieces = {}
        for certificate in find_homotopy_sources_sinks(taylor, graph):
            pieces.setdefault(Component(n, certificate.indices), certificate)
        for certificate in component_block_certificates(taylor):
            for piece in irreducible_components(Component(n, polynomials=[certificate.polynomial])):
                pieces.setdefault(piece, certificate)
        lower_components = minimalize(list(pieces))
        lower = variety_from_components(n, lower_components)
        evidence = []
        for c in lower_components:
            if not any(pieces[c] is e for e in evidence):
                evidence.append(pieces[c])

        bound = UpperBound(n, lower_components)
        self._collect_memberships(ideal, taylor, bound, evidence)
        upper_components = bound.components()
        upper = variety_from_components(n, upper_components) if upper_components else None
        if upper_components is not None and len(bound) and bound.closed(upper_components):
            verdict = constants.VerdictKind.Exact
        elif len(bound):
            verdict = constants.VerdictKind.Bounded
        else:
            verdict = constants.VerdictKind.SampledOnly
        _logger.debug("Factor %r: %s, lower %s, upper %s", ideal, verdict.value, lower.render(),
                      upper.render() if upper is not None else "?")
        return _FactorResult(verdict, lower, upper, evidence, taylor)

    def _certify_matching(self, taylor, matching):
        try:
            verify_matching(taylor, matching)
        except errors.VerificationError as e:
            _logger.debug("Skipping %r: %s", matching, e)
            return None
        try:
            outcome = triangularity(build_auxiliary(taylor, matching), self.cycle_cap)
            if isinstance(outcome, TriangularCertificate):
                return outcome
            certificate = determinant_via_cycles(taylor, matching, self.cycle_cap)
        except errors.CapExceeded as e:
            _logger.info("Abandoned the determinant of %r: %s", matching, e)
            return None
        if certificate.polynomial.is_zero:
            return None
        return certificate

    def _record(self, ideal, bound, evidence, certificate, images):
        if not bound.add(certificate.polynomial):
            return False
        evidence.append(certificate)
        if certificate.polynomial.is_monomial:
            return True
        if images[0] is None:
            images[0] = ideal_automorphisms(ideal)[1:AUTOMORPHISM_IMAGE_CAP + 1]
        label = certificate.matching.label or "matching"
        for mapping in images[0]:
            image = certificate.polynomial.permute(mapping)
            if bound.add(image):
                evidence.append(AutomorphismImage(label, mapping, image))
        return True

    def _collect_memberships(self, ideal, taylor, bound, evidence):
        """Add memberships until the upper bound meets the lower bound."""
        n = ideal.n
        images = [None]
        with_hypersurface = any(c.polynomials for c in bound.lower)
        if self.hand_matchings:
            from supportvar.families import suggest_matchings
            for label, _, matching in suggest_matchings(ideal, taylor):
                certificate = self._certify_matching(taylor, matching)
                if certificate is None:
                    continue
                _logger.debug("Hand construction %s gives %s", label, certificate.polynomial.render())
                if self._record(ideal, bound, evidence, certificate, images) and bound.closed():
                    return
        for sigma in candidate_sigmas(bound.lower, n):
            if with_hypersurface:
                matching = search_matching(taylor, sigma)
            else:
                matching = search_triangular_matching(taylor, sigma, self.matching_node_budget)
            if matching is None:
                continue
            certificate = self._certify_matching(taylor, matching)
            if certificate is None:
                continue
            if self._record(ideal, bound, evidence, certificate, images) and bound.closed():
                return

    def _corroborate(self, ideal, taylor, verdict, lower, upper, rng):
        """Sample on the lower bound and off the upper bound at every prime."""
        n = ideal.n
        count = self.samples_per_prime
        consistent = True
        samples = {}
        for p in self.primes:
            stats = {}
            if not membership(ideal, (0,) * n, p, taylor, self.rank_cap_n):
                _logger.error("The origin is not a member for %r over F_%r", ideal, p)
                consistent = False
            try:
                on = sample_on_variety(lower, n, p, count, rng)
            except errors.UnsatisfiableOverField as e:
                _logger.warning("No on-variety sample over F_%r: %s", p, e)
                on = PointSample(p, [], lower)
            members = sum(1 for point in on if membership(ideal, point, p, taylor, self.rank_cap_n))
            stats["on"] = [members, len(on)]
            if members != len(on):
                _logger.warning("%r of %r points on %s are not members over F_%r",
                                len(on) - members, len(on), lower.render(), p)
                consistent = False
            if upper is not None and p > 3 and not upper.is_full:
                try:
                    off = sample_off_variety(upper, n, p, count, rng)
                except errors.UnsatisfiableOverField as e:
                    _logger.warning("No off-variety sample over F_%r: %s", p, e)
                    off = PointSample(p, [], upper, on_variety=False)
                outside = sum(1 for point in off if not membership(ideal, point, p, taylor, self.rank_cap_n))
                stats["off"] = [outside, len(off)]
                if outside != len(off):
                    _logger.warning("%r of %r points off %s are members over F_%r",
                                    len(off) - outside, len(off), upper.render(), p)
                    consistent = False
            if verdict == constants.VerdictKind.SampledOnly:
                uniform = [_random_point(rng, n, p) for _ in range(count)]
                stats["uniform"] = [sum(1 for point in uniform if membership(
                    ideal, point, p, taylor, self.rank_cap_n)), count]
            samples[p] = stats
        _logger.debug("Sampling statistics %r", samples)
        return samples, consistent


def classify(ideal, **kwargs):
    """Functional wrapper around Classifier.

    :rtype: ~supportvar.variety.VarietyReport
    """
    return Classifier(**kwargs).classify(ideal)


def dimension_monotone(results):
    """Pairs violating dim V_X <= dim V_X' for X inside X' with both verdicts exact.

    :param results: (ideal, report) pairs from one GCD fiber.
    :rtype: list[tuple]
    """
    exact = [(ideal, report) for ideal, report in results
             if report.verdict == constants.VerdictKind.Exact]
    violations = []
    for (small, first), (large, second) in itertools.permutations(exact, 2):
        if small == large or not set(small.masks) <= set(large.masks):
            continue
        if first.variety.dim() > second.variety.dim():
            violations.append((small, large))
    return violations
