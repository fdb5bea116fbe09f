"""Exact combinatorial counting primitives.

Everything here works in plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point is ever involved, so results
are exact at any size.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence

__all__ = ["factorial", "binomial", "multinomial", "compositions"]


def factorial(n: int) -> int:
    """Return ``n!`` for n >= 0."""
    if n < 0:
        raise ValueError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Return the binomial coefficient C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial requires nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Return ``n! / (p_1! * ... * p_k!)`` for parts summing to n."""
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be nonnegative, got {list(parts)}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {list(parts)} do not sum to {n}")
    out = 1
    remaining = n
    for p in parts:
        out *= math.comb(remaining, p)
        remaining -= p
    return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordered k-tuple of positive integers summing to n.

    Tuples appear in lexicographic order, each exactly once; there are
    C(n-1, k-1) of them.  The stream is empty when k > n.
    """
    if n < 1 or k < 1:
        raise ValueError(f"compositions requires n >= 1 and k >= 1, got ({n}, {k})")
    return _compositions(n, k)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest
