"""
Utility helper functions for the audit command line.
"""

import re

from utils.errors import InvalidInputError

_RANGE_PATTERN = re.compile(r'^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$')


def is_power_of_two(n):
    """
    Check whether n is a positive power of two (1 counts as 2^0).

    Args:
        n (int): Integer to test

    Returns:
        bool: True if n == 2^j for some j >= 0
    """
    return n > 0 and n & (n - 1) == 0


def two_expansion(n):
    """
    If n = 2^t1 + ... + 2^td with t1 > ... > td, return [t1, ..., td].

    Args:
        n (int): Positive integer

    Returns:
        list: Exponents of the binary expansion, largest first
    """
    exponents = []
    bit = 0
    while n:
        if n & 1:
            exponents.append(bit)
        n >>= 1
        bit += 1
    return exponents[::-1]


def parse_int_range(text):
    """
    Parse a single integer or an inclusive range "a..b".

    Args:
        text (str): Range specification, e.g. "4" or "1..8"

    Returns:
        list: The integers in the range, ascending (empty when a > b)
    """
    match = _RANGE_PATTERN.match(str(text))
    if not match:
        raise InvalidInputError(f"Malformed range '{text}', expected 'n' or 'a..b'")
    start = int(match.group(1))
    stop = int(match.group(2)) if match.group(2) is not None else start
    return list(range(start, stop + 1))


def parse_angles(text):
    """
    Parse a comma-separated list of angles in radians.

    Args:
        text (str): e.g. "0,2.0944,4.1888"

    Returns:
        list: Angles as floats, in input order
    """
    if text is None:
        return None
    parts = [p.strip() for p in str(text).split(',') if p.strip()]
    if not parts:
        raise InvalidInputError("Angle list is empty")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise InvalidInputError(f"Malformed angle list '{text}': {e}") from e
