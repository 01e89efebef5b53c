"""Enumeration of the fixpoints of a closure operator in lectic order.

Attribute 0 is the most significant position in the lectic order, so
``{2,3} < {1}`` for 0-based attributes.  A closure operator is any callable
mapping an attribute set (int) to its closure.
"""

from typing import Callable, Iterator, List, Set

from .bitset import full, prefix_mask

ClosureFunction = Callable[[int], int]


def lectic_less(a: int, b: int) -> bool:
    """True iff ``a`` comes strictly before ``b`` in lectic order."""
    diff = a ^ b
    return diff != 0 and b & diff & -diff != 0


def lectic_key(s: int, n: int) -> int:
    """Sort key realising the lectic order on subsets of ``0..n-1``."""
    return int(format(s, f"0{n}b")[::-1], 2) if n else 0


def subsets_in_lectic_order(n: int) -> Iterator[int]:
    for k in range(1 << n):
        yield int(format(k, f"0{n}b")[::-1], 2) if n else 0


def canonicity(b: int, d: int, i: int) -> bool:
    """The CbO canonicity test: ``d`` agrees with ``b`` on all attributes below ``i``."""
    pm = prefix_mask(i)
    return d & pm == b & pm


def cbo_closed_sets(c: ClosureFunction, n: int) -> Iterator[int]:
    """Close-by-One with the right depth-first sweep.

    Yields every closed set exactly once, in increasing lectic order,
    starting with ``c(∅)``.  Runs on an explicit stack.
    """
    stack = [(c(0), -1)]
    while stack:
        b, y = stack.pop()
        yield b
        # ascending pushes leave the highest attribute on top
        for i in range(y + 1, n):
            bit = 1 << i
            if b & bit:
                continue
            d = c(b | bit)
            pm = bit - 1
            if d & pm == b & pm:
                stack.append((d, i))


def next_closure(c: ClosureFunction, b: int, n: int) -> int:
    """Lectic successor of ``b`` among the closed sets (``Y`` when there is none)."""
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        if b & bit:
            b ^= bit
        else:
            d = c(b | bit)
            if d & (bit - 1) == b:
                return d
    return full(n)


def next_closure_sequence(c: ClosureFunction, n: int) -> Iterator[int]:
    """All closed sets by iterating :func:`next_closure` from ``c(∅)``."""
    top = full(n)
    b = c(0)
    yield b
    while b != top:
        b = next_closure(c, b, n)
        yield b


def all_closed_subsets_naive(c: ClosureFunction, n: int, limit: int = 20) -> Set[int]:
    """Every fixpoint of ``c``, by testing all ``2**n`` subsets."""
    if n > limit:
        raise ValueError(f"n={n} exceeds the brute-force limit {limit}")
    return {s for s in range(1 << n) if c(s) == s}


def sort_lectic(sets, n: int) -> List[int]:
    return sorted(sets, key=lambda s: lectic_key(s, n))
