"""Brute-force references for pseudo-intents and the canonical basis.

Deliberately naive: everything here walks all ``2**n`` attribute subsets and
exists to check the fast algorithms on small contexts.
"""

from typing import List

from .context import FormalContext, closure_downup
from .enumeration import subsets_in_lectic_order
from .implications import Theory

HARD_LIMIT = 20


def _check_limit(n: int, limit: int) -> None:
    if n > min(limit, HARD_LIMIT):
        raise ValueError(f"{n} attributes exceeds the brute-force limit {min(limit, HARD_LIMIT)}")


def tilde_closure_naive(theory: Theory, z: int) -> int:
    """Fixpoint of ``Z -> Z ∪ ⋃{R | L => R, L ⊊ Z}``.

    Same as the ordinary theory closure except that a premise equal to the
    current set does not fire.
    """
    pairs = list(zip(theory.premises, theory.conclusions))
    changed = True
    while changed:
        changed = False
        for p, c in pairs:
            if p != z and p & ~z == 0 and c & ~z:
                z |= c
                changed = True
    return z


def pseudo_intents_bruteforce(ctx: FormalContext, limit: int = HARD_LIMIT) -> List[int]:
    """All pseudo-intents of ``ctx``, in lectic order.

    Subsets are classified in lectic order, which extends inclusion, so every
    smaller pseudo-intent is already known when a set is examined.
    """
    n = ctx.n_attributes
    _check_limit(n, limit)
    found: List[int] = []
    closures: List[int] = []
    for p in subsets_in_lectic_order(n):
        closed = closure_downup(ctx, p)
        if closed == p:
            continue
        ok = True
        for q, qc in zip(found, closures):
            # q ⊊ p requires q's closure strictly inside p
            if q & ~p == 0 and q != p and (qc & ~p or qc == p):
                ok = False
                break
        if ok:
            found.append(p)
            closures.append(closed)
    return found


def dg_basis_bruteforce(ctx: FormalContext, limit: int = HARD_LIMIT) -> Theory:
    theory = Theory(ctx.n_attributes)
    for p in pseudo_intents_bruteforce(ctx, limit):
        theory.add((p, closure_downup(ctx, p)))
    return theory


def intents_bruteforce(ctx: FormalContext, limit: int = HARD_LIMIT) -> List[int]:
    n = ctx.n_attributes
    _check_limit(n, limit)
    return [s for s in subsets_in_lectic_order(n) if closure_downup(ctx, s) == s]
