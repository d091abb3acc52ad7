#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json

import numpy as np
import pytest

from supportvar import constants, errors, utils
from supportvar.families import FamilySpec, make_family
from supportvar.ideal import SquareFreeIdeal
from supportvar.taylor import chi_symbols
from supportvar.variety import (
    AlternatingBinomial,
    Classifier,
    Component,
    CoordinateSubspace,
    Full,
    Hypersurface,
    Locus,
    MonomialHypersurface,
    Product,
    Union,
    VarietyReport,
    classify,
    dimension_monotone,
    irreducible_components,
    membership,
    minimal_transversals,
    sample_off_variety,
    sample_on_variety,
    variety_from_json)


def m(*members):
    return utils.mask_from_indices(members)


def test_expressions_compare_by_components():
    assert MonomialHypersurface(5, [1, 5]) == Union(5, [CoordinateSubspace(5, [1]), CoordinateSubspace(5, [5])])
    assert MonomialHypersurface(5, [1, 5]).render() == "V(x1*x5)"
    assert Union(5, [CoordinateSubspace(5, [1, 2]), CoordinateSubspace(5, [1])]) == CoordinateSubspace(5, [1])
    assert MonomialHypersurface(5, [1]) != MonomialHypersurface(5, [5])
    assert Full(4).is_full
    assert not CoordinateSubspace(4, [2]).is_full


def test_dimensions():
    assert Full(4).dim() == 4
    assert CoordinateSubspace(6, [4, 5]).dim() == 4
    assert Union(8, [CoordinateSubspace(8, [4, 5]), CoordinateSubspace(8, [6, 7, 8])]).dim() == 6
    assert AlternatingBinomial(6, [1, 3, 5], [2, 4, 6]).dim() == 5


def test_alternating_binomial_is_recognized():
    x = chi_symbols(6)
    surface = Hypersurface(6, x[0] * x[2] * x[4] + x[1] * x[3] * x[5])
    assert surface == AlternatingBinomial(6, [1, 3, 5], [2, 4, 6])
    assert surface.simplify().to_json() == {"type": "binomial", "n": 6, "odd": [1, 3, 5], "even": [2, 4, 6]}
    with pytest.raises(errors.BadParameters):
        AlternatingBinomial(6, [1, 2], [2, 3])


def test_single_variable_polynomials_become_zeros():
    x = chi_symbols(3)
    assert Component(3, polynomials=[-2 * x[0]]) == Component(3, [1])
    assert Hypersurface(3, x[1]) == CoordinateSubspace(3, [2])
    assert Hypersurface(3, x[1]).polynomial == x[1]
    factors = [Hypersurface(1, chi_symbols(1)[0])] * 3
    assert Product(3, factors, [[1], [2], [3]]) == CoordinateSubspace(3, [1, 2, 3])


def test_reducible_polynomials_split_into_components():
    x = chi_symbols(6)
    assert Hypersurface(5, chi_symbols(5)[0] * chi_symbols(5)[4]) == MonomialHypersurface(5, [1, 5])
    locus = Locus(6, polynomials=[x[0] * x[4], x[1] * x[3] * x[5]])
    expected = Union(6, [CoordinateSubspace(6, [a, b]) for a in (1, 5) for b in (2, 4, 6)])
    assert locus == expected
    assert len(locus.canonical()) == 6
    assert irreducible_components(Component(3, [1], [x[0] * x[1] + x[2]])) == [Component(3, [1, 3])]
    assert irreducible_components(Component(3, [1], [x[0] * x[1] + 1])) == []


def test_permute_and_embed():
    assert MonomialHypersurface(6, [4, 6]).permute([1, 4, 3, 2, 5, 6]) == MonomialHypersurface(6, [2, 6])
    placed = CoordinateSubspace(2, [1]).embed([3, 5], 6)
    assert placed == CoordinateSubspace(6, [3])


def test_product_of_factors():
    product = Product(3, [CoordinateSubspace(1, [1]), MonomialHypersurface(2, [1, 2])], [[2], [1, 3]])
    assert product == Union(3, [CoordinateSubspace(3, [1, 2]), CoordinateSubspace(3, [2, 3])])
    assert product.dim() == 1
    with pytest.raises(errors.BadParameters):
        Product(3, [Full(1), Full(1)], [[1], [3]])
    with pytest.raises(errors.DimensionMismatch):
        Product(3, [Full(2), Full(1)], [[1], [2, 3]])


def test_variety_documents():
    for expr in (Full(3), CoordinateSubspace(4, [1, 3]), MonomialHypersurface(5, [1, 5]),
                 AlternatingBinomial(6, [1, 3, 5], [2, 4, 6]),
                 Union(8, [CoordinateSubspace(8, [4, 5]), CoordinateSubspace(8, [6, 7, 8])])):
        assert variety_from_json(json.loads(json.dumps(expr.to_json()))) == expr
    with pytest.raises(errors.MalformedDocument):
        variety_from_json({"type": "nonsense", "n": 2})
    with pytest.raises(errors.MalformedDocument):
        variety_from_json({"type": "full"})


def test_sampling_on_and_off():
    expr = AlternatingBinomial(6, [1, 3, 5], [2, 4, 6])
    on = sample_on_variety(expr, 6, 101, 20, seed=3)
    assert len(on) == 20
    assert all(expr.contains(point, 101) for point in on)
    off = sample_off_variety(expr, 6, 101, 20, seed=3)
    assert not any(expr.contains(point, 101) for point in off)
    with pytest.raises(errors.BadParameters):
        sample_off_variety(expr, 6, 3, 5)
    with pytest.raises(errors.UnsatisfiableOverField):
        sample_off_variety(Full(6), 6, 101, 5)
    with pytest.raises(errors.DimensionMismatch):
        sample_on_variety(expr, 5, 101, 5)


def test_sampling_is_reproducible():
    expr = MonomialHypersurface(5, [1, 5])
    first = sample_on_variety(expr, 5, 32003, 10, rng=np.random.default_rng(9))
    second = sample_on_variety(expr, 5, 32003, 10, rng=np.random.default_rng(9))
    assert first.points == second.points


def test_membership_of_running_example(running_ideal):
    assert membership(running_ideal, (0, 3, 4, 5, 6), 101)
    assert membership(running_ideal, (3, 4, 5, 6, 0), 101)
    assert not membership(running_ideal, (1, 1, 1, 1, 1), 101)


def test_minimal_transversals():
    assert minimal_transversals([], 3) == [0]
    assert minimal_transversals([m(1), m(5)], 5) == [m(1, 5)]
    assert minimal_transversals([m(1, 2), m(2, 3)], 3) == [m(2), m(1, 3)]


def test_classify_running_example(running_ideal, fast_config):
    report = classify(running_ideal, **fast_config)
    assert report.verdict == constants.VerdictKind.Exact
    assert report.variety == MonomialHypersurface(5, [1, 5])
    assert report.render() == "V(x1*x5)"
    assert report.consistent
    assert report.certificates


def test_classify_hexagon(hexagon_ideal, fast_config):
    report = classify(hexagon_ideal, **fast_config)
    assert report.verdict == constants.VerdictKind.Exact
    assert report.variety == AlternatingBinomial(6, [1, 3, 5], [2, 4, 6])
    assert report.consistent


def test_classify_complete_intersection(complete_intersection, fast_config):
    report = classify(complete_intersection, **fast_config)
    assert report.verdict == constants.VerdictKind.Exact
    assert report.variety == CoordinateSubspace(3, [1, 2, 3])
    assert report.factors == [[1], [2], [3]]


def test_classify_odd_cycle_is_full(fast_config):
    ideal = make_family(FamilySpec(constants.FamilyKind.CycleEdgeIdeal, n=7))
    report = classify(ideal, **fast_config)
    assert report.verdict == constants.VerdictKind.Exact
    assert report.variety == Full(7)
    assert report.certificates[0]["lemma"]


def test_report_document(running_ideal, fast_config):
    report = classify(running_ideal, **fast_config)
    document = json.loads(json.dumps(report.to_json()))
    assert document["schema"] == constants.REPORT_SCHEMA_VERSION
    assert document["variety"] == "V(x1*x5)"
    again = VarietyReport.from_json(document)
    assert again.variety == report.variety
    assert sorted(again.samples) == sorted(report.samples)
    with pytest.raises(errors.MalformedDocument):
        VarietyReport.from_json(dict(document, schema=99))


def test_classifier_configuration(running_ideal):
    with pytest.raises(errors.MatrixTooLarge):
        Classifier(rank_cap_n=4).classify(running_ideal)
    with pytest.raises(errors.NotPrime):
        Classifier(primes=(4,))
    with pytest.raises(errors.BadParameters):
        Classifier(samples_per_prime=0)
    with pytest.raises(ValueError):
        Classifier(colour="blue")
    assert Classifier(degree3_cap=2).caps()["degree3_cap"] == 2


def test_dimension_monotone_on_fiber(fast_config):
    small = SquareFreeIdeal(3, [m(1), m(1, 2), m(2, 3), m(3)])
    large = small.with_types(add=[m(2)])
    results = [(ideal, classify(ideal, **fast_config)) for ideal in (small, large)]
    assert dimension_monotone(results) == []
