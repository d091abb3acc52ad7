#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json
import logging
import re
from itertools import combinations

import six

from supportvar import constants, errors, utils

_logger = logging.getLogger(__name__)

_FACTOR = re.compile(r'^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*$')


class VariableType(object):
    """A variable x_sigma of a square-free ideal, identified by its type.

    :ivar mask: The generators the variable divides (bit i-1 for f_i).
    :vartype mask: int
    :ivar degree: The degree of the variable, used only for equigeneration.
    :vartype degree: int
    """

    __slots__ = ('_mask', '_degree')

    def __init__(self, mask, degree=1):
        if mask <= 0:
            raise errors.EmptyType("types must contain at least one generator")
        if degree < 0:
            raise errors.BadParameters("variable degrees must be nonnegative")
        self._mask = int(mask)
        self._degree = int(degree)

    def __repr__(self):
        return "VariableType({})".format(utils.variable_name(self._mask))

    def __eq__(self, other):
        return isinstance(other, VariableType) and \
            (self._mask, self._degree) == (other.mask, other.degree)

    def __hash__(self):
        return hash((self._mask, self._degree))

    @property
    def mask(self):
        return self._mask

    @property
    def degree(self):
        return self._degree

    @property
    def name(self):
        return utils.variable_name(self._mask)


class ExponentMonomial(object):
    """A monomial with positive exponents over named variables.

    :param exponents: Mapping from variable label to exponent.
    :type exponents: dict[str, int]
    """

    def __init__(self, exponents):
        cleaned = {}
        for label, power in exponents.items():
            power = int(power)
            if power < 0:
                raise errors.BadParameters("negative exponent on {}".format(label))
            if power:
                cleaned[six.ensure_str(label)] = power
        if not cleaned:
            raise errors.BadParameters("a monomial needs at least one positive exponent")
        self.exponents = cleaned

    def __repr__(self):
        return "ExponentMonomial({})".format(str(self))

    def __str__(self):
        return "*".join(
            label if power == 1 else "{}^{}".format(label, power)
            for label, power in sorted(self.exponents.items()))

    def __eq__(self, other):
        return isinstance(other, ExponentMonomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(tuple(sorted(self.exponents.items())))

    def divides(self, other):
        return all(other.exponents.get(label, 0) >= power for label, power in self.exponents.items())

    def gcd_is_unit(self, other):
        return not set(self.exponents) & set(other.exponents)


def parse_monomial(text):
    """Parse a monomial such as 'x^2*y' into an ExponentMonomial.

    :param text: The monomial, '*'-separated factors with optional '^k'.
    :type text: str
    :rtype: ~supportvar.ideal.ExponentMonomial
    """
    exponents = {}
    for factor in six.ensure_str(text).split("*"):
        match = _FACTOR.match(factor)
        if not match:
            raise errors.MalformedDocument("cannot parse factor '{}' of '{}'".format(factor, text))
        label, power = match.group(1), int(match.group(2) or 1)
        exponents[label] = exponents.get(label, 0) + power
    return ExponentMonomial(exponents)


class SquareFreeIdeal(object):
    """A square-free monomial ideal encoded by its set of variable types X_f.

    Types are kept sorted by mask, so two ideals with the same types compare
    equal regardless of construction order.

    :param n: The number of minimal generators.
    :type n: int
    :param types: The types, as masks, (mask, degree) pairs or VariableType.
     Repeated masks are merged and their degrees added.
    :type types: iterable
    :param validate: Whether to check the ideal is minimally generated.
    :type validate: bool
    """

    def __init__(self, n, types, validate=True):
        if n < 1:
            raise errors.EmptyInput("an ideal needs at least one generator")
        if n > constants.MAX_STRUCTURAL_N:
            raise errors.BadParameters(
                "at most {} generators are supported".format(constants.MAX_STRUCTURAL_N))
        self._n = int(n)
        merged = {}
        for item in types:
            if isinstance(item, VariableType):
                mask, degree = item.mask, item.degree
            elif isinstance(item, tuple):
                mask, degree = item
            else:
                mask, degree = item, 1
            if mask <= 0:
                raise errors.EmptyType("types must contain at least one generator")
            if mask >> self._n:
                raise errors.IndexOutOfRange(
                    "type {} mentions a generator above {}".format(bin(mask), self._n))
            merged[mask] = merged.get(mask, 0) + degree
        if not merged:
            raise errors.EmptyInput("an ideal needs at least one variable")
        self._types = tuple(VariableType(mask, merged[mask]) for mask in sorted(merged))
        self._masks = tuple(t.mask for t in self._types)
        self._mask_set = frozenset(self._masks)
        self._containing = None
        if validate:
            _check_minimal(self._n, self._masks)

    def __repr__(self):
        return "SquareFreeIdeal(n={}, types=[{}])".format(
            self._n, ", ".join(utils.variable_name(m) for m in self._masks))

    def __eq__(self, other):
        return isinstance(other, SquareFreeIdeal) and self._n == other.n and \
            self._types == other.types

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._n, self._types))

    def __contains__(self, mask):
        return mask in self._mask_set

    @property
    def n(self):
        return self._n

    @property
    def types(self):
        return self._types

    @property
    def masks(self):
        return self._masks

    @property
    def full(self):
        return utils.full_mask(self._n)

    @property
    def degrees(self):
        return {t.mask: t.degree for t in self._types}

    def containing(self, i):
        """The masks of all types containing generator i."""
        if self._containing is None:
            table = [[] for _ in range(self._n)]
            for mask in self._masks:
                for k in utils.indices(mask):
                    table[k - 1].append(mask)
            self._containing = tuple(tuple(row) for row in table)
        if not 1 <= i <= self._n:
            raise errors.IndexOutOfRange("generator {} is not in 1..{}".format(i, self._n))
        return self._containing[i - 1]

    def generators(self):
        """Reconstruct f_1..f_n as monomial strings in the x_sigma variables.

        :rtype: list[str]
        """
        rendered = []
        for i in range(1, self._n + 1):
            factors = []
            for t in self._types:
                if t.mask & utils.bit(i):
                    factors.append(t.name if t.degree == 1 else "{}^{}".format(t.name, t.degree))
            rendered.append("*".join(factors))
        return rendered

    def restrict(self, index_mask):
        """Restrict to a union of GCD components and re-index 1..k.

        :param index_mask: The generators to keep.
        :type index_mask: int
        :returns: The restricted ideal and the tuple of original indices.
        :rtype: tuple[~supportvar.ideal.SquareFreeIdeal, tuple[int]]
        """
        embedding = utils.indices(index_mask)
        if not embedding:
            raise errors.EmptyInput("cannot restrict to an empty set of generators")
        position = {old: new for new, old in enumerate(embedding, 1)}
        kept = []
        for t in self._types:
            inside = t.mask & index_mask
            if not inside:
                continue
            if inside != t.mask:
                raise errors.BadParameters(
                    "type {} crosses the restriction boundary".format(t.name))
            kept.append((utils.mask_from_indices(position[i] for i in utils.indices(t.mask)), t.degree))
        return SquareFreeIdeal(len(embedding), kept), embedding

    def relabel(self, permutation):
        """Apply a relabeling of the generators.

        :param permutation: new_label = permutation[old_label - 1], or a dict
         from old to new labels.
        :rtype: ~supportvar.ideal.SquareFreeIdeal
        """
        mapping = _as_mapping(permutation, self._n)
        relabeled = [(permute_mask(t.mask, mapping), t.degree) for t in self._types]
        return SquareFreeIdeal(self._n, relabeled)

    def with_types(self, add=(), remove=()):
        """Move within the GCD fiber by adding or removing types.

        :rtype: ~supportvar.ideal.SquareFreeIdeal
        """
        remove = set(remove)
        types = [(t.mask, t.degree) for t in self._types if t.mask not in remove]
        present = {mask for mask, _ in types}
        types.extend((mask, 1) for mask in add if mask not in present)
        return SquareFreeIdeal(self._n, types)

    def to_json(self):
        """The ideal JSON document, types sorted by mask.

        :rtype: dict
        """
        document = {
            "n": self._n,
            "types": [list(utils.indices(mask)) for mask in self._masks]}
        if any(t.degree != 1 for t in self._types):
            document["degrees"] = [t.degree for t in self._types]
        return document

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, document):
        """Load an ideal from its JSON document.

        The document carries either "types" (1-based generator lists, with an
        optional parallel "degrees" array) or "generators" (monomial strings,
        which are polarized).

        :param document: A dict, or JSON text.
        :rtype: ~supportvar.ideal.SquareFreeIdeal
        """
        if isinstance(document, (six.binary_type, six.text_type)):
            try:
                document = json.loads(six.ensure_str(document))
            except ValueError as e:
                raise errors.MalformedDocument("invalid JSON: {}".format(e))
        if not isinstance(document, dict):
            raise errors.MalformedDocument("an ideal document must be a JSON object")
        if "generators" in document:
            ideal = polarize([parse_monomial(g) for g in document["generators"]])
            if "n" in document and int(document["n"]) != ideal.n:
                raise errors.DimensionMismatch(
                    "document says n={} but lists {} generators".format(document["n"], ideal.n))
            return ideal
        try:
            n = int(document["n"])
            types = document["types"]
        except (KeyError, TypeError, ValueError):
            raise errors.MalformedDocument("an ideal document needs 'n' and 'types'")
        degrees = document.get("degrees") or [1] * len(types)
        if len(degrees) != len(types):
            raise errors.MalformedDocument("'degrees' must parallel 'types'")
        masks = []
        for members in types:
            if not members:
                raise errors.EmptyType("empty type in document")
            for i in members:
                if not 1 <= int(i) <= n:
                    raise errors.IndexOutOfRange("generator {} is not in 1..{}".format(i, n))
            masks.append(utils.mask_from_indices(int(i) for i in members))
        return validate_types(n, list(zip(masks, (int(d) for d in degrees))))

    @classmethod
    def loads(cls, text):
        return cls.from_json(text)


def permute_mask(mask, mapping):
    """Relabel the members of a mask through a dict old -> new."""
    return utils.mask_from_indices(mapping[i] for i in utils.indices(mask))


def _as_mapping(permutation, n):
    if isinstance(permutation, dict):
        mapping = dict(permutation)
        for i in range(1, n + 1):
            mapping.setdefault(i, i)
    else:
        mapping = {i: int(permutation[i - 1]) for i in range(1, n + 1)}
    if sorted(mapping.values()) != list(range(1, n + 1)):
        raise errors.BadParameters("{!r} is not a permutation of 1..{}".format(permutation, n))
    return mapping


def _check_minimal(n, masks):
    # f_i divides f_j iff every type containing i also contains j,
    # i.e. iff j lies in the intersection of the types containing i.
    for i in range(1, n + 1):
        common = utils.full_mask(n)
        hit = False
        for mask in masks:
            if mask & utils.bit(i):
                common &= mask
                hit = True
        if not hit:
            if n == 1:
                raise errors.EmptyInput("generator 1 is a unit")
            j = 2 if i == 1 else 1
            raise errors.NotMinimal(pair=(i, j))
        extra = common & ~utils.bit(i)
        if extra:
            raise errors.NotMinimal(pair=(i, utils.lowest_index(extra)))


def validate_types(n, types):
    """Check that a set of types realizes a minimally generated ideal.

    Accepts iff for every ordered pair i != j some type contains i and not j.

    :param n: The number of generators.
    :type n: int
    :param types: Masks or (mask, degree) pairs.
    :rtype: ~supportvar.ideal.SquareFreeIdeal
    :raises: ~supportvar.errors.NotMinimal naming the first violated pair.
    """
    return SquareFreeIdeal(n, types, validate=True)


def lcm_divides(ideal, i, sigma):
    """Whether f_i divides f_sigma = lcm(f_j : j in sigma).

    :rtype: bool
    """
    for mask in ideal.containing(i):
        if not mask & sigma:
            return False
    return True


def is_equigenerated(ideal, degrees=None):
    """Whether every generator has the same total degree.

    :param degrees: Mapping from type mask to positive degree; defaults to
     the degrees stored on the ideal.
    :type degrees: dict[int, int]
    :rtype: bool
    """
    degrees = ideal.degrees if degrees is None else degrees
    totals = set()
    for i in range(1, ideal.n + 1):
        total = 0
        for mask in ideal.containing(i):
            degree = degrees.get(mask, 0)
            if degree <= 0:
                raise errors.BadParameters(
                    "present variable {} needs a positive degree".format(utils.variable_name(mask)))
            total += degree
        totals.add(total)
    return len(totals) == 1


def polarize(generators):
    """Polarize monomial generators into a square-free ideal.

    The variable x of maximal exponent e becomes x_1..x_e and x^k becomes
    x_1..x_k; the type of x_k is the set of generators in which x has
    exponent at least k.

    :param generators: The minimal generators.
    :type generators: list[~supportvar.ideal.ExponentMonomial]
    :rtype: ~supportvar.ideal.SquareFreeIdeal
    """
    generators = list(generators)
    if not generators:
        raise errors.EmptyInput("no generators given")
    for (a, g), (b, h) in combinations(enumerate(generators, 1), 2):
        if g.divides(h):
            raise errors.DivisibleGenerators(divisor=a, multiple=b)
        if h.divides(g):
            raise errors.DivisibleGenerators(divisor=b, multiple=a)
    labels = sorted({label for g in generators for label in g.exponents})
    types = []
    for label in labels:
        top = max(g.exponents.get(label, 0) for g in generators)
        for k in range(1, top + 1):
            mask = utils.mask_from_indices(
                i for i, g in enumerate(generators, 1) if g.exponents.get(label, 0) >= k)
            types.append((mask, 1))
    ideal = SquareFreeIdeal(len(generators), types)
    _logger.debug("Polarized %r labels into %r", len(labels), ideal)
    return ideal


def normalize_types(generators):
    """Merge variables of equal type in a square-free generator list.

    The product of k variables sharing a type is a power of one variable, so
    a merged type carries degree k: degrees add on merging.

    :param generators: Square-free monomials, each an iterable of variable
     labels, a monomial string or an ExponentMonomial with unit exponents.
    :rtype: ~supportvar.ideal.SquareFreeIdeal
    """
    monomials = []
    for g in generators:
        if isinstance(g, ExponentMonomial):
            monomial = g
        elif isinstance(g, six.string_types):
            monomial = parse_monomial(g)
        else:
            monomial = ExponentMonomial({label: 1 for label in g})
        if any(power > 1 for power in monomial.exponents.values()):
            raise errors.BadParameters("{} is not square-free".format(monomial))
        monomials.append(monomial)
    if not monomials:
        raise errors.EmptyInput("no generators given")
    for (a, g), (b, h) in combinations(enumerate(monomials, 1), 2):
        if g.divides(h):
            raise errors.DivisibleGenerators(divisor=a, multiple=b)
        if h.divides(g):
            raise errors.DivisibleGenerators(divisor=b, multiple=a)
    types = []
    for label in sorted({label for g in monomials for label in g.exponents}):
        mask = utils.mask_from_indices(i for i, g in enumerate(monomials, 1) if label in g.exponents)
        types.append((mask, 1))
    return SquareFreeIdeal(len(monomials), types)
