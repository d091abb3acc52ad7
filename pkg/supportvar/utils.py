#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging

import six
import sympy

from supportvar import constants, errors

logger = logging.getLogger(__name__)


def get_running_loop():
    try:
        import asyncio  # pylint: disable=import-error
        return asyncio.get_running_loop()
    except RuntimeError:
        logger.warning('No running event loop')
        return asyncio.get_event_loop()


def bit(i):
    """The mask of the single generator f_i (1-based)."""
    return 1 << (i - 1)


def full_mask(n):
    return (1 << n) - 1


def mask_from_indices(indices):
    """Build a bitmask from 1-based generator indices.

    :param indices: Iterable of positive integers.
    :rtype: int
    """
    mask = 0
    for i in indices:
        if i < 1:
            raise errors.IndexOutOfRange("generator index {} is not positive".format(i))
        mask |= bit(i)
    return mask


def indices(mask):
    """The 1-based generator indices set in a mask, ascending.

    :rtype: tuple[int]
    """
    found = []
    position = 1
    while mask:
        if mask & 1:
            found.append(position)
        mask >>= 1
        position += 1
    return tuple(found)


def popcount(mask):
    return bin(mask).count("1")


def lowest_index(mask):
    return (mask & -mask).bit_length()


def sign(sigma, i):
    """(-1) to the number of members of sigma below i."""
    return -1 if popcount(sigma & (bit(i) - 1)) % 2 else 1


def iter_submasks(mask):
    """All submasks of a mask in ascending integer order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_supermasks(mask, universe):
    """All masks between mask and universe in ascending integer order."""
    free = universe & ~mask
    for sub in iter_submasks(free):
        yield mask | sub


def render_mask(mask, n):
    """Render a mask as the binary string b_1...b_n, with b_1 leftmost.

    :rtype: str
    """
    return "".join("1" if mask >> k & 1 else "0" for k in range(n))


def parse_mask(text):
    """Parse a b_1...b_n string back into (mask, n).

    :rtype: tuple[int, int]
    """
    text = six.ensure_str(text).strip()
    if not text or set(text) - set("01"):
        raise errors.MalformedDocument("'{}' is not a binary vertex string".format(text))
    mask = 0
    for k, char in enumerate(text):
        if char == "1":
            mask |= 1 << k
    return mask, len(text)


def render_indices(mask):
    """Render a mask as its concatenated index list, e.g. 145 for {1,4,5}."""
    return "".join(str(i) for i in indices(mask)) or "0"


def variable_name(mask, prefix=constants.VARIABLE_PREFIX):
    """Name of the variable x_sigma of a type mask; indices above 9 are comma separated."""
    members = indices(mask)
    if any(i > 9 for i in members):
        return "{}{{{}}}".format(prefix, ",".join(str(i) for i in members))
    return prefix + "".join(str(i) for i in members)


def check_prime(p):
    p = int(p)
    if not sympy.isprime(p):
        raise errors.NotPrime("{} is not a prime".format(p), info={'prime': p})
    return p


def parse_int_list(value):
    """Parse '2,3,101' or an iterable into a tuple of ints."""
    if isinstance(value, six.string_types):
        try:
            return tuple(int(v) for v in value.split(",") if v.strip())
        except ValueError:
            raise errors.BadParameters("'{}' is not a comma separated list of integers".format(value))
    return tuple(int(v) for v in value)


def parse_range(value):
    """Parse 'a..b', 'a' or 'a,b,c' into a list of ints.

    :rtype: list[int]
    """
    value = six.ensure_str(value).strip()
    if ".." in value:
        low, high = value.split("..", 1)
        try:
            low, high = int(low), int(high)
        except ValueError:
            raise errors.BadParameters("'{}' is not a range".format(value))
        if low > high:
            raise errors.BadParameters("empty range '{}'".format(value))
        return list(range(low, high + 1))
    return list(parse_int_list(value))


def get_logger(level=logging.DEBUG, stream=None):
    """Attach a stream handler to the package logger."""
    package_logger = logging.getLogger("supportvar")
    if not package_logger.handlers:
        handler = logging.StreamHandler(stream=stream)
        handler.setFormatter(logging.Formatter('%(asctime)s %(name)-12s %(levelname)-8s %(message)s'))
        package_logger.addHandler(handler)
    package_logger.setLevel(level)
    return package_logger
