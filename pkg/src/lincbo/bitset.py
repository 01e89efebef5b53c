"""Attribute and object sets as Python ints.

Bit ``i`` of the integer is set iff element ``i`` belongs to the set.  The
capacity (number of attributes or objects) is carried by whoever owns the
set, usually a :class:`~lincbo.context.FormalContext` or a
:class:`~lincbo.implications.Theory`.  Python ints give word-parallel
union/intersection/difference for free and are hashable, which is what every
algorithm in this package leans on.
"""

from typing import Iterable, Iterator, List

AttributeSet = int
ObjectSet = int

EMPTY = 0


def full(n: int) -> int:
    """The set ``{0, ..., n-1}``."""
    return (1 << n) - 1


def prefix_mask(i: int) -> int:
    """Mask of all elements strictly below ``i`` (empty for ``i <= 0``)."""
    return (1 << i) - 1 if i > 0 else 0


def prefix(s: int, i: int) -> int:
    """Restriction of ``s`` to elements lower than ``i``."""
    return s & prefix_mask(i)


def from_iter(elems: Iterable[int]) -> int:
    s = 0
    for e in elems:
        if e < 0:
            raise ValueError(f"negative element {e}")
        s |= 1 << e
    return s


def to_list(s: int) -> List[int]:
    return list(iter_bits(s))


def iter_bits(s: int) -> Iterator[int]:
    """Elements of ``s`` in ascending order."""
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def iter_bits_desc(s: int) -> Iterator[int]:
    while s:
        top = s.bit_length() - 1
        yield top
        s ^= 1 << top


def min_elem(s: int) -> int:
    """Smallest element, or -1 for the empty set."""
    return (s & -s).bit_length() - 1


def size(s: int) -> int:
    return s.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def fits(s: int, n: int) -> bool:
    """True iff every element of ``s`` is below ``n``."""
    return s >= 0 and s >> n == 0


def from_one_based(elems: Iterable[int]) -> int:
    """Build a set from the 1-based indices used in text formats."""
    return from_iter(e - 1 for e in elems)


def to_one_based(s: int) -> List[int]:
    return [e + 1 for e in iter_bits(s)]


def format_set(s: int, names=None) -> str:
    if names is None:
        return "{" + ",".join(str(e + 1) for e in iter_bits(s)) + "}"
    return "{" + ",".join(names[e] for e in iter_bits(s)) + "}"
