#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

"""Command line surface: classify, enumerate, taylor, membership, family
and verify-theorem."""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import six

from supportvar import __version__, constants, errors, utils
from supportvar.catalog import catalog_graph
from supportvar.enumeration import enumerate_fiber
from supportvar.families import FamilySpec, expected_variety, make_family
from supportvar.gcd_graph import GcdGraph
from supportvar.ideal import SquareFreeIdeal
from supportvar.taylor import build_taylor
from supportvar.theorems import THEOREM_KINDS, verify_theorem
from supportvar.variety import Classifier, VarietyReport, membership

_logger = logging.getLogger(__name__)


class RunConfig(object):
    """Run configuration resolved from flags, environment and defaults.

    A flag wins over its SUPPORTVAR_ environment variable, which wins over
    the default.
    """

    _SETTINGS = (
        # (attribute, environment name, parser, default)
        ('primes', 'PRIMES', utils.parse_int_list, constants.DEFAULT_PRIMES),
        ('samples_per_prime', 'SAMPLES', int, constants.DEFAULT_SAMPLES_PER_PRIME),
        ('seed', 'SEED', int, constants.DEFAULT_SEED),
        ('rank_cap_n', 'RANK_CAP', int, constants.DEFAULT_RANK_CAP_N),
        ('cycle_cap', 'CYCLE_CAP', int, constants.CYCLE_CAP),
        ('jobs', 'JOBS', int, constants.DEFAULT_JOBS),
        ('matching_node_budget', 'MATCHING_BUDGET', int, constants.MATCHING_NODE_BUDGET),
        ('degree3_cap', 'DEGREE3_CAP', int, constants.DEGREE3_SCAN_CAP),
        ('edge_pair_cap', 'EDGE_PAIR_CAP', int, constants.EDGE_PAIR_CAP),
        ('symbolic_cap', 'SYMBOLIC_CAP', int, constants.SYMBOLIC_CAP),
        ('walk_len', 'WALK_LEN', int, None),
    )

    def __init__(self, **kwargs):
        environ = kwargs.pop('environ', os.environ)
        for name, env_name, parse, default in self._SETTINGS:
            value = kwargs.pop(name, None)
            if value is None:
                value = environ.get(constants.ENV_PREFIX + env_name)
            if value is None:
                value = default
            elif isinstance(value, six.string_types):
                try:
                    value = parse(value)
                except ValueError:
                    raise errors.BadParameters("invalid value {!r} for {}".format(value, name))
            setattr(self, name, value)
        output_format = kwargs.pop('output_format', None)
        self.format_given = output_format is not None
        self.output_format = constants.OutputFormat(output_format or constants.OutputFormat.Json.value)
        self.full_fiber = bool(kwargs.pop('full_fiber', False))
        debug = kwargs.pop('debug', False) or environ.get(constants.ENV_PREFIX + 'DEBUG', '')
        self.debug = bool(debug) and str(debug).lower() not in ('0', 'false', 'no')
        if kwargs:
            raise ValueError("Received unrecognized kwargs: {}".format(", ".join(kwargs.keys())))
        self.primes = tuple(utils.check_prime(p) for p in self.primes)
        if self.samples_per_prime < 1:
            raise errors.BadParameters("samples per prime must be at least 1")
        if self.jobs < 1:
            raise errors.BadParameters("jobs must be at least 1")

    def __repr__(self):
        return "RunConfig(primes={}, samples={}, seed={})".format(
            list(self.primes), self.samples_per_prime, self.seed)

    @classmethod
    def from_args(cls, args, environ=None):
        kwargs = {name: getattr(args, name, None) for name, _, _, _ in cls._SETTINGS}
        return cls(
            output_format=getattr(args, 'format', None),
            full_fiber=getattr(args, 'full_fiber', False),
            debug=getattr(args, 'debug', False),
            environ=os.environ if environ is None else environ,
            **kwargs)

    def classifier_kwargs(self):
        kwargs = {
            'primes': self.primes,
            'samples_per_prime': self.samples_per_prime,
            'seed': self.seed,
            'rank_cap_n': self.rank_cap_n,
            'cycle_cap': self.cycle_cap,
            'matching_node_budget': self.matching_node_budget,
            'degree3_cap': self.degree3_cap,
            'edge_pair_cap': self.edge_pair_cap,
            'symbolic_cap': self.symbolic_cap}
        if self.walk_len is not None:
            kwargs['walk_len'] = self.walk_len
        return kwargs


def serialize_report(report, output_format=constants.OutputFormat.Json):
    """Stable bytes for a report.

    :type report: ~supportvar.variety.VarietyReport
    :rtype: bytes
    """
    output_format = constants.OutputFormat(output_format)
    if output_format == constants.OutputFormat.Json:
        return (json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n").encode('utf-8')
    if output_format == constants.OutputFormat.Dot:
        raise errors.BadParameters("reports have no dot rendering")
    lines = ["{}: {}".format(report.verdict.value, report.render())]
    for certificate in report.certificates:
        lines.append("  {}".format(json.dumps(certificate, sort_keys=True)))
    for p in sorted(report.samples):
        lines.append("  p={} {}".format(p, json.dumps(report.samples[p], sort_keys=True)))
    if not report.consistent:
        lines.append("  inconsistent sampling")
    return ("\n".join(lines) + "\n").encode('utf-8')


def parse_report(data):
    """Inverse of serialize_report for the JSON format.

    :rtype: ~supportvar.variety.VarietyReport
    """
    try:
        document = json.loads(six.ensure_str(data))
    except ValueError as e:
        raise errors.MalformedDocument("report is not JSON: {}".format(e))
    return VarietyReport.from_json(document)


def _read_input(args, stdin):
    path = getattr(args, 'input', None)
    if path:
        with open(path, 'r') as handle:
            return handle.read()
    return stdin.read()


def _load_json(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise errors.MalformedDocument("input is not JSON: {}".format(e))


def _read_ideals(text):
    """One JSON ideal document, or NDJSON with one ideal per line."""
    try:
        return [SquareFreeIdeal.from_json(json.loads(text))]
    except ValueError:
        pass
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise errors.EmptyInput("no ideal given")
    return [SquareFreeIdeal.from_json(_load_json(line)) for line in lines]


def _classify_job(job):
    kwargs, document = job
    try:
        return Classifier(**kwargs).classify(SquareFreeIdeal.from_json(document)).to_json()
    except errors.SupportVarietyError as e:
        return {"error": e.to_json()}


def _report_or_raise(document):
    if "error" in document:
        raise errors.error_from_json(document["error"])
    return VarietyReport.from_json(document)


def cmd_classify(args, config, stdin):
    ideals = _read_ideals(_read_input(args, stdin))
    kwargs = config.classifier_kwargs()
    if config.jobs > 1 and len(ideals) > 1:
        jobs = [(kwargs, ideal.to_json()) for ideal in ideals]
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            reports = [_report_or_raise(d) for d in executor.map(_classify_job, jobs)]
    else:
        classifier = Classifier(**kwargs)
        reports = [classifier.classify(ideal) for ideal in ideals]
    if len(reports) == 1:
        output = serialize_report(reports[0], config.output_format)
    elif config.output_format == constants.OutputFormat.Json:
        output = b"".join(json.dumps(r.to_json(), sort_keys=True).encode('utf-8') + b"\n" for r in reports)
    else:
        output = b"".join(serialize_report(r, config.output_format) for r in reports)
    code = constants.ExitCode.Success
    if not all(r.consistent for r in reports):
        code = constants.ExitCode.VerificationFailure
    return output, code.value


def _read_graph(args, stdin):
    if args.graph is not None:
        return catalog_graph(args.graph).graph
    document = _load_json(_read_input(args, stdin))
    try:
        return GcdGraph.from_edges(int(document["n"]), [tuple(e) for e in document["edges"]])
    except (KeyError, TypeError, ValueError) as e:
        raise errors.MalformedDocument("bad graph document: {}".format(e))


def cmd_enumerate(args, config, stdin):
    graph = _read_graph(args, stdin)
    stream = enumerate_fiber(graph, args.cap)
    output = b"".join(ideal.dumps().encode('utf-8') + b"\n" for ideal in stream)
    if stream.truncated:
        _logger.warning("Enumeration stopped at the cap of %r ideals", args.cap)
    return output, constants.ExitCode.Success.value


def cmd_taylor(args, config, stdin):
    ideal = SquareFreeIdeal.from_json(_load_json(_read_input(args, stdin)))
    taylor = build_taylor(ideal)
    if config.output_format == constants.OutputFormat.Dot:
        output = taylor.to_dot()
    else:
        output = taylor.dumps()
    return (output.rstrip("\n") + "\n").encode('utf-8'), constants.ExitCode.Success.value


def cmd_membership(args, config, stdin):
    ideal = SquareFreeIdeal.from_json(_load_json(_read_input(args, stdin)))
    point = utils.parse_int_list(args.point)
    inside = membership(ideal, point, utils.check_prime(args.prime), rank_cap_n=config.rank_cap_n)
    return ("true\n" if inside else "false\n").encode('utf-8'), constants.ExitCode.Success.value


def cmd_family(args, config, stdin):
    singletons = utils.parse_int_list(args.singletons) if args.singletons else ()
    spec = FamilySpec(args.kind, n=args.n, a=args.a, b=args.b, with_f2=args.with_f2,
                      graph=args.type_b, singletons=singletons)
    ideal = make_family(spec)
    expected = expected_variety(spec)
    if config.output_format == constants.OutputFormat.Text:
        output = "{}\n{}\n".format(ideal.dumps(), expected.render())
    else:
        output = json.dumps({
            "family": spec.to_json(),
            "ideal": ideal.to_json(),
            "expected": expected.render(),
            "variety": expected.to_json()}, sort_keys=True, indent=2) + "\n"
    return output.encode('utf-8'), constants.ExitCode.Success.value


def cmd_verify_theorem(args, config, stdin):
    ranges = {'full_fiber': config.full_fiber, 'seed': config.seed}
    for name in ('n', 'a', 'b'):
        value = getattr(args, name)
        if value is not None:
            ranges[name] = utils.parse_range(value)
    if args.cap is not None:
        ranges['cap'] = args.cap
    table = verify_theorem(args.kind, config.classifier_kwargs(), **ranges)
    if config.format_given and config.output_format == constants.OutputFormat.Json:
        output = table.dumps() + "\n"
    else:
        output = table.render()
    return output.encode('utf-8'), table.exit_code()


def _add_common(parser):
    parser.add_argument("--primes", help="Comma separated primes (default: 2,3,101,32003)")
    parser.add_argument("--samples", dest="samples_per_prime", help="Sampled points per prime (default: 200)")
    parser.add_argument("--seed", help="Seed of the point sampler (default: 0)")
    parser.add_argument("--rank-cap", dest="rank_cap_n", help="Largest n evaluated by rank (default: 12)")
    parser.add_argument("--cycle-cap", dest="cycle_cap", help="Auxiliary cycles enumerated per matching")
    parser.add_argument("--jobs", help="Worker processes for classification (default: 1)")
    parser.add_argument("--format", choices=[f.value for f in constants.OutputFormat])
    parser.add_argument("--in", dest="input", help="Read from this file instead of stdin")
    parser.add_argument("--out", dest="output", help="Write to this file instead of stdout")
    parser.add_argument("--debug", action="store_true", help="Log at DEBUG to stderr")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="supportvar",
        description="Support varieties of square-free monomial ideals.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command")

    p_classify = subparsers.add_parser("classify", help="Classify ideals read as JSON or NDJSON")
    _add_common(p_classify)
    p_classify.set_defaults(handler=cmd_classify)

    p_enumerate = subparsers.add_parser("enumerate", help="Every ideal with a given GCD graph")
    _add_common(p_enumerate)
    p_enumerate.add_argument("--graph", type=int, help="Catalog graph number instead of a graph document")
    p_enumerate.add_argument("--cap", type=int, default=10 ** 6, help="Most ideals emitted")
    p_enumerate.set_defaults(handler=cmd_enumerate)

    p_taylor = subparsers.add_parser("taylor", help="The Taylor graph of an ideal")
    _add_common(p_taylor)
    p_taylor.set_defaults(handler=cmd_taylor)

    p_membership = subparsers.add_parser("membership", help="Whether a point lies on the support variety")
    _add_common(p_membership)
    p_membership.add_argument("--point", required=True, help="Comma separated coordinates")
    p_membership.add_argument("--prime", type=int, required=True)
    p_membership.set_defaults(handler=cmd_membership)

    p_family = subparsers.add_parser("family", help="A family ideal and its expected variety")
    _add_common(p_family)
    p_family.add_argument("--kind", required=True, choices=[k.value for k in constants.FamilyKind])
    p_family.add_argument("--n", type=int)
    p_family.add_argument("--a", type=int)
    p_family.add_argument("--b", type=int)
    p_family.add_argument("--with-f2", dest="with_f2", action="store_true")
    p_family.add_argument("--singletons", help="Comma separated singleton variables of a cycle fiber")
    p_family.add_argument("--graph", dest="type_b", type=int, help="Type B catalog graph, 27..35")
    p_family.set_defaults(handler=cmd_family)

    p_verify = subparsers.add_parser("verify-theorem", help="Check a classification theorem")
    _add_common(p_verify)
    p_verify.add_argument("kind", choices=THEOREM_KINDS)
    p_verify.add_argument("--n", help="Range such as 3..10")
    p_verify.add_argument("--a", help="Range of a for DBWT")
    p_verify.add_argument("--b", help="Range of b for DBWT")
    p_verify.add_argument("--full-fiber", dest="full_fiber", action="store_true")
    p_verify.add_argument("--cap", type=int, help="Most ideals per enumerated fiber")
    p_verify.set_defaults(handler=cmd_verify_theorem)
    return parser


def _write(args, output, stdout):
    path = getattr(args, 'output', None)
    if path:
        with open(path, 'wb') as handle:
            handle.write(output)
        return
    buffer = getattr(stdout, 'buffer', None)
    if buffer is not None:
        buffer.write(output)
        buffer.flush()
    else:
        stdout.write(output.decode('utf-8'))


def run_command(argv, stdin=None, stdout=None, stderr=None, environ=None):
    """Run one subcommand and return its exit code.

    :param argv: Arguments without the program name.
    :type argv: list[str]
    :rtype: int
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    policy = errors.ErrorPolicy()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return constants.ExitCode.Success.value if not e.code else constants.ExitCode.BadInput.value
    if not getattr(args, 'command', None):
        parser.print_usage(stderr)
        return constants.ExitCode.BadInput.value
    try:
        config = RunConfig.from_args(args, environ)
        if config.debug:
            utils.get_logger(logging.DEBUG, stream=stderr)
        _logger.debug("Running %s with %r", args.command, config)
        output, code = args.handler(args, config, stdin)
        _write(args, output, stdout)
        return code
    except errors.SupportVarietyError as e:
        stderr.write("error: {}\n".format(e))
        return policy.exit_code(e)
    except (IOError, OSError) as e:
        stderr.write("error: {}\n".format(e))
        return constants.ExitCode.BadInput.value


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == '__main__':
    main()
