#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging

__version__ = "0.1.0"

from supportvar.constants import VerdictKind, FamilyKind, GraphType  # pylint: disable=wrong-import-position
from supportvar.ideal import SquareFreeIdeal, polarize, parse_monomial  # pylint: disable=wrong-import-position
from supportvar.gcd_graph import GcdGraph, build_gcd_graph  # pylint: disable=wrong-import-position
from supportvar.taylor import TaylorGraph, build_taylor  # pylint: disable=wrong-import-position
from supportvar.enumeration import enumerate_fiber  # pylint: disable=wrong-import-position
from supportvar.variety import Classifier, VarietyReport, classify, membership  # pylint: disable=wrong-import-position
from supportvar.families import FamilySpec, make_family, expected_variety  # pylint: disable=wrong-import-position
from supportvar.catalog import catalog_graph  # pylint: disable=wrong-import-position
from supportvar.theorems import verify_theorem  # pylint: disable=wrong-import-position

try:
    from supportvar.async_ops import ClassifierAsync
except (SyntaxError, ImportError):
    pass  # Async not supported.


_logger = logging.getLogger(__name__)


def classify_monomials(generators, **kwargs):
    """Classify the support variety of an ideal given by monomials.

    Non square-free generators are polarized first, which leaves the
    support variety unchanged.

    :param generators: Monomial strings such as "x1*x2^2".
    :type generators: list[str]
    :param kwargs: Classifier configuration.
    :rtype: ~supportvar.variety.VarietyReport
    """
    ideal = polarize([parse_monomial(g) for g in generators])
    _logger.debug("Polarized %r generators into %r", len(generators), ideal)
    return Classifier(**kwargs).classify(ideal)
