"""Brandt semigroups B_n = [n]x[n] + {theta}.

Elements are either pairs ``(i, j)`` with 1 <= i, j <= n or :data:`THETA`.
The dense encoding used by Cayley tables is ``(i, j) -> (i-1)*n + (j-1)``
with theta last, at index ``n*n``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Union

import numpy as np

from .semigroup import FiniteSemigroup, validate_semigroup

THETA = "theta"

BrandtElement = Union[tuple[int, int], str]


class IndexOutOfRange(ValueError):
    pass


def _check(n: int, a: BrandtElement) -> None:
    if a == THETA:
        return
    if not (isinstance(a, tuple) and len(a) == 2 and all(1 <= v <= n for v in a)):
        raise IndexOutOfRange(f"{a!r} is not an element of B_{n}")


def brandt_add(n: int, a: BrandtElement, b: BrandtElement) -> BrandtElement:
    _check(n, a)
    _check(n, b)
    if a == THETA or b == THETA:
        return THETA
    (i, j), (k, l) = a, b
    return (i, l) if j == k else THETA


def elements(n: int) -> list[BrandtElement]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)] + [THETA]


def encode(n: int, a: BrandtElement) -> int:
    _check(n, a)
    if a == THETA:
        return n * n
    i, j = a
    return (i - 1) * n + (j - 1)


def decode(n: int, idx: int) -> BrandtElement:
    if idx == n * n:
        return THETA
    if not 0 <= idx < n * n:
        raise IndexOutOfRange(f"index {idx} out of range for B_{n}")
    return (idx // n + 1, idx % n + 1)


def label(a: BrandtElement) -> str:
    return THETA if a == THETA else f"({a[0]},{a[1]})"


@lru_cache(maxsize=None)
def _add_table(n: int) -> np.ndarray:
    els = elements(n)
    t = np.array([[encode(n, brandt_add(n, a, b)) for b in els] for a in els], dtype=np.int64)
    t.setflags(write=False)
    return t


def add_table(n: int) -> np.ndarray:
    """Cayley table of (B_n, +) in the dense encoding."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _add_table(n)


def brandt_semigroup(n: int) -> FiniteSemigroup:
    return validate_semigroup(add_table(n), [label(a) for a in elements(n)])


def inverse(n: int, a: BrandtElement) -> BrandtElement:
    """The unique x with a+x+a = a and x+a+x = x."""
    _check(n, a)
    return THETA if a == THETA else (a[1], a[0])
