#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
import sys
from concurrent.futures import ProcessPoolExecutor

import pytest

import supportvar
from supportvar.async_ops import ClassifierAsync


def get_logger(level):
    supportvar_logger = logging.getLogger("supportvar")
    if not supportvar_logger.handlers:
        handler = logging.StreamHandler(stream=sys.stdout)
        handler.setFormatter(logging.Formatter('%(asctime)s %(name)-12s %(levelname)-8s %(message)s'))
        supportvar_logger.addHandler(handler)
    supportvar_logger.setLevel(level)
    return supportvar_logger


log = get_logger(logging.INFO)


@pytest.mark.asyncio
@pytest.mark.parametrize("number", [38, 39, 40, 41])
async def test_type_c_fiber_async(long_run_config, fiber_cap, number):
    entry = supportvar.catalog_graph(number)
    ideals = list(supportvar.enumerate_fiber(entry.graph, fiber_cap))
    async with ClassifierAsync(executor=ProcessPoolExecutor(), max_concurrency=8, **long_run_config) as classifier:
        reports = await classifier.classify_many_async(ideals)
    failures = []
    for ideal, report in zip(ideals, reports):
        expected = entry.expected_variety_for(ideal)
        if report.variety != expected:
            failures.append((ideal, expected.render(), report.render()))
    log.info("Graph %r: %r ideals, %r mismatches", number, len(ideals), len(failures))
    assert not failures
