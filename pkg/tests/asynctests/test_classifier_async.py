#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import asyncio
from concurrent.futures import ThreadPoolExecutor

import pytest

from supportvar import constants, utils
from supportvar.async_ops import ClassifierAsync
from supportvar.ideal import SquareFreeIdeal
from supportvar.variety import CoordinateSubspace, MonomialHypersurface

FAST = {'primes': (3, 101, 32003), 'samples_per_prime': 16, 'seed': 3}


def running():
    return SquareFreeIdeal(5, [utils.mask_from_indices(t) for t in ([1], [1, 2], [2, 3], [3, 4], [4, 5], [5])])


def intersection(n):
    return SquareFreeIdeal(n, [utils.bit(i) for i in range(1, n + 1)])


@pytest.mark.asyncio
async def test_classify_async_matches_sync():
    classifier = ClassifierAsync(**FAST)
    report = await classifier.classify_async(running())
    assert report.verdict == constants.VerdictKind.Exact
    assert report.variety == MonomialHypersurface(5, [1, 5])
    assert report.to_json() == classifier.classify(running()).to_json()


@pytest.mark.asyncio
async def test_classify_many_keeps_order():
    ideals = [intersection(3), running(), intersection(2)]
    async with ClassifierAsync(executor=ThreadPoolExecutor(2), max_concurrency=2, **FAST) as classifier:
        reports = await classifier.classify_many_async(ideals)
    assert [r.n for r in reports] == [3, 5, 2]
    assert reports[0].variety == CoordinateSubspace(3, [1, 2, 3])
    assert classifier.executor is None


@pytest.mark.asyncio
async def test_loop_is_resolved_lazily():
    classifier = ClassifierAsync(**FAST)
    assert classifier.loop is None
    await classifier.classify_many_async([intersection(2)])
    assert classifier.loop is asyncio.get_event_loop()
