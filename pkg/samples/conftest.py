#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import os
import pytest
import sys


# Ignore async tests for Python < 3.5
collect_ignore = []
if sys.version_info < (3, 5):
    collect_ignore.append("asynctests")


@pytest.fixture()
def long_run_config():
    """Classifier settings for the long verification runs.

    The runs take minutes to hours and only execute when SUPPORTVAR_LONG_RUNS
    is set; SUPPORTVAR_PRIMES and SUPPORTVAR_SAMPLES override the defaults.
    """
    if not os.environ.get('SUPPORTVAR_LONG_RUNS'):
        pytest.skip("Long verification runs not enabled.")
    config = {}
    if os.environ.get('SUPPORTVAR_PRIMES'):
        config['primes'] = tuple(int(p) for p in os.environ['SUPPORTVAR_PRIMES'].split(","))
    if os.environ.get('SUPPORTVAR_SAMPLES'):
        config['samples_per_prime'] = int(os.environ['SUPPORTVAR_SAMPLES'])
    return config


@pytest.fixture()
def fiber_cap():
    try:
        return int(os.environ['SUPPORTVAR_FIBER_CAP'])
    except (KeyError, ValueError):
        return 10 ** 6
