#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json
import logging

import numpy as np

from supportvar import constants, errors
from supportvar.catalog import GRAPH_COUNT, catalog_graph, graphs_of_type, representative_ideals
from supportvar.enumeration import enumerate_fiber
from supportvar.families import FamilySpec, equigeneration_degrees, expected_variety, make_family
from supportvar.ideal import is_equigenerated
from supportvar.variety import Classifier, dimension_monotone

_logger = logging.getLogger(__name__)

THEOREM_KINDS = ('A', 'B', 'C', 'DBWT', 'Delta')
FULL_FIBER_GRAPHS = tuple(range(27, GRAPH_COUNT + 1))

_DEFAULT_RANGES = {
    'B': {'n': range(3, 11)},
    'DBWT': {'a': range(1, 4), 'b': range(1, 4)},
    'Delta': {'n': range(3, 5)},
}


class VerificationRow(object):

    def __init__(self, case, expected, obtained, verdict, passed):
        self.case = case
        self.expected = expected
        self.obtained = obtained
        self.verdict = verdict
        self.passed = bool(passed)

    def __repr__(self):
        return "VerificationRow({}: {})".format(self.case, "pass" if self.passed else "FAIL")

    def to_json(self):
        return {
            "case": self.case,
            "expected": self.expected,
            "obtained": self.obtained,
            "verdict": self.verdict,
            "pass": self.passed}


class VerificationTable(object):
    """The rows of one verify-theorem run.

    :ivar kind: The theorem verified.
    :vartype kind: str
    :ivar rows: One row per case, in run order.
    :vartype rows: list[~supportvar.theorems.VerificationRow]
    """

    def __init__(self, kind, rows=None, truncated=None):
        self.kind = kind
        self.rows = list(rows or [])
        self.truncated = list(truncated or [])

    def __repr__(self):
        return "VerificationTable({}, {}/{} passed)".format(
            self.kind, sum(r.passed for r in self.rows), len(self.rows))

    def __len__(self):
        return len(self.rows)

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def exit_code(self):
        if self.passed:
            return constants.ExitCode.Success.value
        return constants.ExitCode.VerificationFailure.value

    def add(self, row):
        if not row.passed:
            _logger.error("Theorem %s failed on %s: expected %s, obtained %s",
                          self.kind, row.case, row.expected, row.obtained)
        self.rows.append(row)
        return row

    def to_json(self):
        return {
            "theorem": self.kind,
            "pass": self.passed,
            "rows": [r.to_json() for r in self.rows],
            "truncated": self.truncated}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def render(self):
        header = ("case", "expected", "obtained", "verdict", "result")
        lines = [(r.case, r.expected, r.obtained, r.verdict, "pass" if r.passed else "FAIL")
                 for r in self.rows]
        widths = [max(len(str(line[k])) for line in [header] + lines) for k in range(len(header))]
        rendered = ["  ".join(str(v).ljust(w) for v, w in zip(line, widths)).rstrip()
                    for line in [header] + lines]
        rendered.append("{}: {}/{} passed".format(
            self.kind, sum(r.passed for r in self.rows), len(self.rows)))
        for label in self.truncated:
            rendered.append("truncated: {}".format(label))
        return "\n".join(rendered) + "\n"


def _check(table, classifier, case, ideal, expected):
    report = classifier.classify(ideal)
    obtained = report.render()
    passed = report.verdict == constants.VerdictKind.Exact and report.variety == expected \
        and report.consistent
    table.add(VerificationRow(case, expected.render(), obtained, report.verdict.value, passed))
    return report


def _range(ranges, kind, name):
    value = ranges.get(name)
    if value is None:
        value = _DEFAULT_RANGES[kind][name]
    return list(value)


def _verify_cycles(table, classifier, ranges):
    for n in _range(ranges, 'B', 'n'):
        spec = FamilySpec(constants.FamilyKind.CycleEdgeIdeal, n=n)
        _check(table, classifier, spec.label, make_family(spec), expected_variety(spec))


def _verify_brooms(table, classifier, ranges):
    for kind in (constants.FamilyKind.DoubleBroom, constants.FamilyKind.WhiskeredTriangle):
        for a in _range(ranges, 'DBWT', 'a'):
            for b in _range(ranges, 'DBWT', 'b'):
                for with_f2 in (False, True):
                    spec = FamilySpec(kind, a=a, b=b, with_f2=with_f2)
                    _check(table, classifier, spec.label, make_family(spec), expected_variety(spec))


def _verify_delta(table, classifier, ranges):
    for n in _range(ranges, 'Delta', 'n'):
        spec = FamilySpec(constants.FamilyKind.DeltaN, n=n)
        _check(table, classifier, spec.label, make_family(spec), expected_variety(spec))


def _verify_fiber(table, classifier, number, cap):
    entry = catalog_graph(number)
    stream = enumerate_fiber(entry.graph, cap)
    results = []
    for k, ideal in enumerate(stream):
        report = _check(table, classifier, "{}:fiber-{}".format(number, k), ideal,
                        entry.expected_variety_for(ideal))
        results.append((ideal, report))
    if stream.truncated:
        table.truncated.append("graph {} at {} ideals".format(number, cap))
    violations = dimension_monotone(results)
    table.add(VerificationRow(
        "{}:dim-monotone".format(number), "0 violations",
        "{} violations".format(len(violations)), constants.VerdictKind.Exact.value, not violations))


def _verify_catalog(table, classifier, ranges):
    for number in range(1, GRAPH_COUNT + 1):
        for label, ideal, expected in representative_ideals(number):
            _check(table, classifier, label, ideal, expected)
    if ranges.get('full_fiber'):
        for number in FULL_FIBER_GRAPHS:
            _verify_fiber(table, classifier, number, ranges.get('cap', 10 ** 6))


def _three_hyperplanes(variety):
    components = variety.canonical()
    return len(components) == 3 and all(
        len(c.zeros) == 1 and not c.polynomials for c in components)


def _verify_type_c(table, classifier, ranges):
    rng = np.random.default_rng(ranges.get('seed', constants.DEFAULT_SEED))
    cap = ranges.get('cap', 10 ** 6)
    for number in graphs_of_type(constants.GraphType.C):
        for label, ideal, expected in representative_ideals(number):
            _check(table, classifier, label, ideal, expected)
        entry = catalog_graph(number)
        stream = enumerate_fiber(entry.graph, cap)
        checked = 0
        equigenerated = []
        for ideal in stream:
            expected = entry.expected_variety_for(ideal)
            if ranges.get('full_fiber'):
                _check(table, classifier, "{}:fiber-{}".format(number, checked), ideal, expected)
            if not _three_hyperplanes(expected):
                continue
            checked += 1
            if any(is_equigenerated(ideal, degrees) for degrees in equigeneration_degrees(ideal, rng)):
                equigenerated.append(ideal)
        if stream.truncated:
            table.truncated.append("graph {} at {} ideals".format(number, cap))
        table.add(VerificationRow(
            "{}:equigeneration".format(number), "none equigenerated",
            "{} of {} equigenerated".format(len(equigenerated), checked),
            constants.VerdictKind.Exact.value, not equigenerated))


_RUNNERS = {
    'A': _verify_catalog,
    'B': _verify_cycles,
    'C': _verify_type_c,
    'DBWT': _verify_brooms,
    'Delta': _verify_delta,
}


def verify_theorem(kind, config=None, **ranges):
    """Classify the ideals a theorem speaks about and compare with its statement.

    :param kind: One of A, B, C, DBWT, Delta.
    :type kind: str
    :param config: Keyword configuration for the Classifier.
    :type config: dict
    :param ranges: n, a and b ranges; full_fiber and cap for catalog fibers.
    :rtype: ~supportvar.theorems.VerificationTable
    """
    runner = _RUNNERS.get(kind)
    if runner is None:
        raise errors.BadParameters("unknown theorem {!r}; expected one of {}".format(
            kind, ", ".join(THEOREM_KINDS)))
    classifier = Classifier(**(config or {}))
    table = VerificationTable(kind)
    runner(table, classifier, ranges)
    _logger.debug("Verified %r", table)
    return table
