#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import json

import pytest

from supportvar import constants, errors
from supportvar.theorems import VerificationRow, VerificationTable, verify_theorem


def test_cycle_theorem_on_small_cycles(fast_config):
    table = verify_theorem('B', fast_config, n=range(3, 7))
    assert [row.case for row in table.rows] == ["C(3)", "C(4)", "C(5)", "C(6)"]
    assert table.passed
    assert table.exit_code() == 0
    assert table.rows[3].obtained == "V(x1*x3*x5 + x2*x4*x6)"


def test_broom_theorem(fast_config):
    table = verify_theorem('DBWT', fast_config, a=[1], b=[1])
    assert len(table) == 4
    assert table.passed, table.render()


def test_delta_theorem(fast_config):
    table = verify_theorem('Delta', fast_config, n=[3])
    assert table.passed, table.render()
    assert table.rows[0].obtained == table.rows[0].expected == "V(x4*x5*x6)"


def test_unknown_theorem():
    with pytest.raises(errors.BadParameters):
        verify_theorem('Z')


def test_table_output():
    table = VerificationTable('B')
    table.add(VerificationRow("C(6)", "V(a)", "V(a)", "exact", True))
    table.add(VerificationRow("C(7)", "A^7", "V(b)", "bounded", False))
    assert not table.passed
    assert table.exit_code() == constants.ExitCode.VerificationFailure.value
    document = json.loads(table.dumps())
    assert document["pass"] is False
    assert [row["pass"] for row in document["rows"]] == [True, False]
    rendered = table.render().splitlines()
    assert rendered[0].split() == ["case", "expected", "obtained", "verdict", "result"]
    assert rendered[-1] == "B: 1/2 passed"
