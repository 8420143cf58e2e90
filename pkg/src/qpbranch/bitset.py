"""Vertex sets as Python integers: bit ``v`` is set iff vertex ``v`` is a member."""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> list[int]:
    return list(bits(mask))


def from_iter(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def size(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """Smallest member; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def contains(mask: int, v: int) -> bool:
    return bool((mask >> v) & 1)


def full(n: int) -> int:
    return (1 << n) - 1
