#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import io
import json

import pytest

from supportvar import constants, errors
from supportvar.cli import RunConfig, build_parser, parse_report, run_command, serialize_report
from supportvar.variety import MonomialHypersurface

RUNNING = '{"n": 5, "types": [[1], [1, 2], [2, 3], [3, 4], [4, 5], [5]]}'
INTERSECTION = '{"n": 3, "types": [[1], [2], [3]]}'
FAST = ["--primes", "3,101,32003", "--samples", "16", "--seed", "5"]


def run(argv, text="", environ=None):
    stdout = io.StringIO()
    stderr = io.StringIO()
    code = run_command(argv, stdin=io.StringIO(text), stdout=stdout, stderr=stderr,
                       environ=environ if environ is not None else {})
    return code, stdout.getvalue(), stderr.getvalue()


def test_classify_running_example():
    code, out, _ = run(["classify"] + FAST, RUNNING)
    assert code == 0
    document = json.loads(out)
    assert document["verdict"] == "exact"
    assert document["variety"] == "V(x1*x5)"
    assert document["primes"] == [3, 101, 32003]


def test_classify_text_format():
    code, out, _ = run(["classify", "--format", "text"] + FAST, RUNNING)
    assert code == 0
    assert out.splitlines()[0] == "exact: V(x1*x5)"


def test_classify_ndjson_keeps_order():
    code, out, _ = run(["classify"] + FAST, RUNNING + "\n" + INTERSECTION + "\n")
    assert code == 0
    lines = out.splitlines()
    assert [json.loads(line)["variety"] for line in lines] == ["V(x1*x5)", "V(x1,x2,x3)"]


def test_classify_with_workers():
    code, out, _ = run(["classify", "--jobs", "2"] + FAST, RUNNING + "\n" + INTERSECTION + "\n")
    assert code == 0
    assert [json.loads(line)["n"] for line in out.splitlines()] == [5, 3]


def test_classify_writes_to_file(tmp_path):
    source = tmp_path / "ideal.json"
    source.write_text(RUNNING)
    target = tmp_path / "report.json"
    code, out, _ = run(["classify", "--in", str(source), "--out", str(target)] + FAST)
    assert code == 0
    assert out == ""
    assert parse_report(target.read_bytes()).variety == MonomialHypersurface(5, [1, 5])


def test_membership():
    assert run(["membership", "--point", "1,0,0", "--prime", "101"], INTERSECTION)[:2] == (0, "false\n")
    assert run(["membership", "--point", "0,0,0", "--prime", "101"], INTERSECTION)[:2] == (0, "true\n")
    assert run(["membership", "--point", "0,0,0", "--prime", "100"], INTERSECTION)[0] == 2


def test_enumerate_fiber_of_path():
    graph = '{"n": 5, "edges": [[1, 2], [2, 3], [3, 4], [4, 5]]}'
    code, out, _ = run(["enumerate"], graph)
    assert code == 0
    assert len(out.splitlines()) == 8
    code, out, _ = run(["enumerate", "--cap", "3"], graph)
    assert code == 0
    assert len(out.splitlines()) == 3


def test_taylor_dot():
    code, out, _ = run(["taylor", "--format", "dot"], INTERSECTION)
    assert code == 0
    assert out.startswith("digraph T {")
    assert out.endswith("}\n")


def test_family():
    code, out, _ = run(["family", "--kind", "cycle", "--n", "6"])
    assert code == 0
    document = json.loads(out)
    assert document["expected"] == "V(x1*x3*x5 + x2*x4*x6)"
    assert len(document["ideal"]["types"]) == 6
    code, out, _ = run(["family", "--kind", "db", "--a", "1", "--b", "1", "--format", "text"])
    assert out.splitlines()[1] == "V(x4) u V(x5)"


def test_verify_theorem():
    code, out, _ = run(["verify-theorem", "B", "--n", "3..6"] + FAST)
    assert code == 0
    assert out.splitlines()[-1] == "B: 4/4 passed"
    code, out, _ = run(["verify-theorem", "B", "--n", "5..6", "--format", "json"] + FAST)
    assert json.loads(out)["pass"] is True


@pytest.mark.parametrize("argv, text, code", [
    (["classify"], "not json", 2),
    (["classify"], "", 2),
    (["classify"], '{"n": 3, "types": [[1, 2], [2, 3]]}', 2),
    (["classify", "--primes", "4"], RUNNING, 2),
    (["classify", "--rank-cap", "3"], RUNNING, 3),
    (["frobnicate"], "", 2),
    ([], "", 2),
])
def test_exit_codes(argv, text, code):
    assert run(argv, text)[0] == code


def test_errors_are_reported_on_stderr():
    code, out, err = run(["classify"], '{"n": 3, "types": [[1, 2], [2, 3]]}')
    assert code == 2
    assert out == ""
    assert err.startswith("error: input:not-minimal")


def test_environment_settings():
    args = build_parser().parse_args(["classify", "--seed", "9"])
    config = RunConfig.from_args(args, {"SUPPORTVAR_SEED": "3", "SUPPORTVAR_SAMPLES": "12"})
    assert config.seed == 9
    assert config.samples_per_prime == 12
    assert config.primes == constants.DEFAULT_PRIMES
    with pytest.raises(errors.BadParameters):
        RunConfig.from_args(args, {"SUPPORTVAR_JOBS": "many"})
    with pytest.raises(errors.BadParameters):
        RunConfig.from_args(args, {"SUPPORTVAR_JOBS": "0"})
    assert run(["classify"], RUNNING, {"SUPPORTVAR_PRIMES": "6"})[0] == 2


def test_report_bytes_are_stable():
    args = build_parser().parse_args(["classify"] + FAST)
    config = RunConfig.from_args(args, {})
    from supportvar.variety import Classifier
    from supportvar.ideal import SquareFreeIdeal
    ideal = SquareFreeIdeal.from_json(RUNNING)
    first = serialize_report(Classifier(**config.classifier_kwargs()).classify(ideal))
    second = serialize_report(Classifier(**config.classifier_kwargs()).classify(ideal))
    assert first == second
    with pytest.raises(errors.BadParameters):
        serialize_report(parse_report(first), constants.OutputFormat.Dot)
