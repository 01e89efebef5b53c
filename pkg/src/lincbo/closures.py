"""Closures of attribute sets under a theory.

All procedures compute the smallest model of the theory containing the
input.  The ``_es`` and ``_rc`` variants take the last added attribute ``y``
(0-based) and give up with ``None`` as soon as the closure would gain an
attribute lower than ``y``, i.e. as soon as the CbO canonicity test is sure
to fail.  ``y <= 0`` disables the check.

Counter states are plain lists: ``counts[j]`` is the number of premise
attributes of implication ``j`` not yet in the closed set, and
``len(counts)`` is the number of implications the state covers.
"""

from typing import List, Optional, Tuple

from .bitset import prefix_mask
from .implications import Theory

CounterState = List[int]


def lin_closure(theory: Theory, b: int, trace: Optional[list] = None) -> int:
    """LinClosure: one counter per implication, each attribute dequeued once.

    If ``trace`` is given, every dequeued attribute is appended to it.
    """
    d = b | theory.empty_premise_conclusion
    count = list(theory.premise_sizes)
    lists = theory.lists
    conc = theory.conclusions
    z = d
    while z:
        low = z & -z
        z ^= low
        m = low.bit_length() - 1
        if trace is not None:
            trace.append(m)
        for j in lists[m]:
            c = count[j] - 1
            count[j] = c
            if c == 0:
                add = conc[j] & ~d
                d |= add
                z |= add
    return d


def lin_closure_es(theory: Theory, b: int, y: int) -> Optional[int]:
    """LinClosure with early stop; ``None`` when an attribute below ``y`` appears."""
    low_mask = prefix_mask(y)
    d = b
    if theory.has_empty_premise:
        add = theory.empty_premise_conclusion & ~d
        if add & low_mask:
            return None
        d |= add
    count = list(theory.premise_sizes)
    lists = theory.lists
    conc = theory.conclusions
    z = d
    while z:
        low = z & -z
        z ^= low
        for j in lists[low.bit_length() - 1]:
            c = count[j] - 1
            count[j] = c
            if c == 0:
                add = conc[j] & ~d
                if add:
                    if add & low_mask:
                        return None
                    d |= add
                    z |= add
    return d


def lin_closure_rc(theory: Theory, b: int, y: int, znew: int,
                   prev: CounterState) -> Optional[Tuple[int, CounterState]]:
    """LinClosure reusing the counters ``prev`` of a closed subset of ``b``.

    ``prev`` must describe ``b & ~znew`` for the first ``len(prev)``
    implications of ``theory``.  Counters of implications added since are
    initialised against that same set, so that dequeuing ``znew`` brings
    every counter up to date; a new counter that starts at zero fires before
    the main loop.  Returns ``(closure, counts)`` with one counter per
    implication, or ``None`` on early stop.
    """
    low_mask = prefix_mask(y)
    count = list(prev)
    d = b
    z = znew
    k = len(count)
    total = len(theory.premises)
    if k < total:
        base = b & ~znew
        prem = theory.premises
        conc = theory.conclusions
        for j in range(k, total):
            c = (prem[j] & ~base).bit_count()
            count.append(c)
            if c == 0:
                add = conc[j] & ~d
                if add:
                    if add & low_mask:
                        return None
                    d |= add
                    z |= add
    lists = theory.lists
    conc = theory.conclusions
    while z:
        low = z & -z
        z ^= low
        for j in lists[low.bit_length() - 1]:
            c = count[j] - 1
            count[j] = c
            if c == 0:
                add = conc[j] & ~d
                if add:
                    if add & low_mask:
                        return None
                    d |= add
                    z |= add
    return d, count


def wild_closure(theory: Theory, b: int) -> int:
    """Wild's closure.

    Each round, implications with a premise attribute outside D are found
    through the per-attribute lists (kept as ordinal bitmasks) and deferred;
    every other pending implication is applied and dropped.  Stops when a
    round applies nothing.
    """
    d = b | theory.empty_premise_conclusion
    masks = theory.list_masks
    conc = theory.conclusions
    pending = (1 << len(conc)) - 1
    everything = (1 << theory.n_attributes) - 1
    packed = None
    while True:
        blocked = 0
        outside = everything & ~d
        while outside:
            low = outside & -outside
            blocked |= masks[low.bit_length() - 1]
            outside ^= low
        ready = pending & ~blocked
        if not ready:
            return d
        if ready & (ready - 1) == 0:
            d |= conc[ready.bit_length() - 1]
        else:
            if packed is None:
                packed = theory.packed()
            d |= packed.or_rows(ready)
        pending &= blocked
