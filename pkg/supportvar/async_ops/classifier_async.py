#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import asyncio
import functools
import logging

from supportvar import variety
from supportvar.utils import get_running_loop

_logger = logging.getLogger(__name__)


class ClassifierAsync(variety.Classifier):
    """An asynchronous classifier.

    Classification is CPU bound, so each ideal is handed to an executor and
    awaited. Results keep the order of the input.

    :param loop: A user specified event loop.
    :type loop: ~asyncio.AbstractEventLoop
    :param executor: The executor running classifications. The loop's default
     executor is used if none is given.
    :type executor: ~concurrent.futures.Executor
    :param max_concurrency: Most classifications in flight at once.
    :type max_concurrency: int
    """

    def __init__(self, loop=None, executor=None, max_concurrency=None, **kwargs):
        self.loop = loop
        self.executor = executor
        self.max_concurrency = max_concurrency
        super(ClassifierAsync, self).__init__(**kwargs)

    def __getstate__(self):
        # Worker processes receive the classifier without its loop or executor.
        state = dict(self.__dict__)
        state.update(loop=None, executor=None)
        return state

    async def __aenter__(self):
        return self

    async def __aexit__(self, *args):
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None

    def _get_loop(self):
        if not self.loop:
            self.loop = get_running_loop()
        return self.loop

    async def classify_async(self, ideal):
        """Classify V_f without blocking the event loop.

        :type ideal: ~supportvar.ideal.SquareFreeIdeal
        :rtype: ~supportvar.variety.VarietyReport
        """
        loop = self._get_loop()
        report = await loop.run_in_executor(self.executor, functools.partial(self.classify, ideal))
        _logger.debug("Classified %r: %r", ideal, report)
        return report

    async def classify_many_async(self, ideals):
        """Classify several ideals concurrently.

        :type ideals: list[~supportvar.ideal.SquareFreeIdeal]
        :rtype: list[~supportvar.variety.VarietyReport]
        """
        ideals = list(ideals)
        if not self.max_concurrency:
            return list(await asyncio.gather(*[self.classify_async(i) for i in ideals]))
        semaphore = asyncio.Semaphore(self.max_concurrency)

        async def _bounded(ideal):
            async with semaphore:
                return await self.classify_async(ideal)

        return list(await asyncio.gather(*[_bounded(i) for i in ideals]))
