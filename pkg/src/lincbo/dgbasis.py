"""Duquenne-Guigues basis computation.

:func:`lincbo` is the main entry point.  :func:`lincbo1` is the same search
without counter reuse, and :func:`nextclosure_basis` provides the six
NextClosure-based baselines.  All drivers return identical bases; they differ
only in cost.
"""

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .bitset import full, prefix_mask
from .closures import lin_closure_es, lin_closure_rc, wild_closure
from .context import FormalContext, closure_downup, intent_of_extent
from .implications import Theory, is_valid_in_context, naive_closure


class AlgorithmId(enum.Enum):
    LINCBO = "lincbo"
    LINCBO1 = "lincbo1"
    NC1 = "nc1"
    NC2 = "nc2"
    NC3 = "nc3"
    NCP1 = "ncp1"
    NCP2 = "ncp2"
    NCP3 = "ncp3"

    @classmethod
    def parse(cls, name: str) -> "AlgorithmId":
        key = name.strip().lower().replace("+", "p").replace("-", "").replace("_", "")
        for a in cls:
            if a.value == key:
                return a
        raise ValueError(f"unknown algorithm {name!r}")


class ClosureKind(enum.Enum):
    NAIVE = 1
    LIN = 2
    WILD = 3


class CounterMismatch(AssertionError):
    """A reused-counter closure disagreed with a fresh computation."""


@dataclass
class BasisResult:
    algorithm: str
    basis: Theory
    intent_count: int = 0
    pseudo_intent_count: int = 0
    closure_calls: int = 0
    wall_time: float = 0.0
    checked_calls: int = 0

    def summary(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "intents": self.intent_count,
            "pseudo_intents": self.pseudo_intent_count,
            "closure_calls": self.closure_calls,
            "ms": round(self.wall_time * 1000.0, 3),
        }


Visit = Optional[Callable[[int], None]]


def _check_rc(theory: Theory, b: int, y: int, res) -> None:
    fresh = lin_closure_es(theory, b, y)
    if res is None:
        if fresh is not None:
            raise CounterMismatch(f"reused counters failed on {b:#x}, fresh closure {fresh:#x}")
        return
    d, count = res
    if fresh != d:
        raise CounterMismatch(f"closure of {b:#x}: reused {d:#x}, fresh {fresh}")
    if len(count) != len(theory):
        raise CounterMismatch(f"counter state covers {len(count)} of {len(theory)} implications")
    for j, p in enumerate(theory.premises):
        if count[j] != (p & ~d).bit_count():
            raise CounterMismatch(f"counter {j} is {count[j]}, expected {(p & ~d).bit_count()}")


def lincbo(ctx: FormalContext, visit: Visit = None, check: bool = False) -> BasisResult:
    """LinCbO: CbO with the right sweep, early stop, jumps and reused counters.

    Each stack frame is ``(B, y, new attributes, parent counters, extent of B,
    known intent)``.  ``visit`` receives every B• that survives the
    canonicity test, in visiting order.  With ``check=True`` every closure is
    compared against a from-scratch computation and its counters verified.
    """
    t0 = time.perf_counter()
    n = ctx.n_attributes
    cols = ctx.columns
    theory = Theory(n)
    res = BasisResult(AlgorithmId.LINCBO.value, theory)
    intents = pseudo = calls = 0
    stack: List[Tuple] = [(0, -1, 0, [], ctx.all_objects, -1)]
    while stack:
        b, y, znew, prev, ext, known = stack.pop()
        calls += 1
        out = lin_closure_rc(theory, b, y, znew, prev)
        if check:
            _check_rc(theory, b, y, out)
            res.checked_calls += 1
        if out is None:
            continue
        bb, count = out
        if visit is not None:
            visit(bb)
        if known >= 0:
            closed = known
        else:
            extra = bb & ~b
            while extra:
                low = extra & -extra
                ext &= cols[low.bit_length() - 1]
                extra ^= low
            closed = intent_of_extent(ctx, ext, bb)
        if closed != bb:
            pseudo += 1
            theory.add((bb, closed))
            pm = prefix_mask(y)
            if closed & pm == bb & pm:
                stack.append((closed, y, closed & ~bb, count, ext, closed))
        else:
            intents += 1
            for i in range(y + 1, n):
                bit = 1 << i
                if not bb & bit:
                    stack.append((bb | bit, i, bit, count, ext & cols[i], -1))
    res.intent_count = intents
    res.pseudo_intent_count = pseudo
    res.closure_calls = calls
    res.wall_time = time.perf_counter() - t0
    return res


def lincbo1(ctx: FormalContext, visit: Visit = None) -> BasisResult:
    """LinCbO without counter reuse: every closure starts from fresh counters."""
    t0 = time.perf_counter()
    n = ctx.n_attributes
    cols = ctx.columns
    theory = Theory(n)
    res = BasisResult(AlgorithmId.LINCBO1.value, theory)
    intents = pseudo = calls = 0
    stack: List[Tuple] = [(0, -1, ctx.all_objects, -1)]
    while stack:
        b, y, ext, known = stack.pop()
        calls += 1
        bb = lin_closure_es(theory, b, y)
        if bb is None:
            continue
        if visit is not None:
            visit(bb)
        if known >= 0:
            closed = known
        else:
            extra = bb & ~b
            while extra:
                low = extra & -extra
                ext &= cols[low.bit_length() - 1]
                extra ^= low
            closed = intent_of_extent(ctx, ext, bb)
        if closed != bb:
            pseudo += 1
            theory.add((bb, closed))
            pm = prefix_mask(y)
            if closed & pm == bb & pm:
                stack.append((closed, y, ext, closed))
        else:
            intents += 1
            for i in range(y + 1, n):
                bit = 1 << i
                if not bb & bit:
                    stack.append((bb | bit, i, ext & cols[i], -1))
    res.intent_count = intents
    res.pseudo_intent_count = pseudo
    res.closure_calls = calls
    res.wall_time = time.perf_counter() - t0
    return res


def _canonical_closer(theory: Theory, kind: ClosureKind):
    """A function ``(B, i) -> closure or None`` failing the canonicity test at ``i``."""
    if kind is ClosureKind.LIN:
        return lambda b, i: lin_closure_es(theory, b, i)
    closure = naive_closure if kind is ClosureKind.NAIVE else wild_closure

    def close(b, i):
        d = closure(theory, b)
        pm = prefix_mask(i)
        return d if d & pm == b & pm else None
    return close


def nextclosure_basis(ctx: FormalContext, kind: ClosureKind = ClosureKind.LIN,
                      plus: bool = False, visit: Visit = None) -> BasisResult:
    """The canonical basis via NextClosure over intents and pseudo-intents.

    Successors are closed under the theory built so far.  With ``plus``,
    after a pseudo-intent P found at attribute y the search either jumps
    straight to P↓↑ (when it passes the canonicity test at y) or resumes
    below y, skipping the supersets of P that cannot be canonical.
    """
    t0 = time.perf_counter()
    n = ctx.n_attributes
    top = full(n)
    theory = Theory(n)
    name = ("ncp" if plus else "nc") + str(kind.value)
    res = BasisResult(name, theory)
    close = _canonical_closer(theory, kind)
    intents = pseudo = calls = 0

    calls += 1
    a = close(0, -1)
    y = -1
    known = -1
    while True:
        if visit is not None:
            visit(a)
        closed = known if known >= 0 else closure_downup(ctx, a)
        known = -1
        if closed != a:
            pseudo += 1
            theory.add((a, closed))
            if plus:
                pm = prefix_mask(y)
                if closed & pm == a & pm:
                    a = known = closed
                    continue
                b, start = a & pm, y - 1
            else:
                b, start = a, n - 1
        else:
            intents += 1
            if a == top:
                break
            b, start = a, n - 1
        for i in range(start, -1, -1):
            bit = 1 << i
            if b & bit:
                b ^= bit
                continue
            calls += 1
            d = close(b | bit, i)
            if d is not None:
                a, y = d, i
                break
        else:
            break
    res.intent_count = intents
    res.pseudo_intent_count = pseudo
    res.closure_calls = calls
    res.wall_time = time.perf_counter() - t0
    return res


_NC = {
    AlgorithmId.NC1: (ClosureKind.NAIVE, False),
    AlgorithmId.NC2: (ClosureKind.LIN, False),
    AlgorithmId.NC3: (ClosureKind.WILD, False),
    AlgorithmId.NCP1: (ClosureKind.NAIVE, True),
    AlgorithmId.NCP2: (ClosureKind.LIN, True),
    AlgorithmId.NCP3: (ClosureKind.WILD, True),
}


def compute_basis(ctx: FormalContext, algorithm=AlgorithmId.LINCBO, visit: Visit = None) -> BasisResult:
    if isinstance(algorithm, str):
        algorithm = AlgorithmId.parse(algorithm)
    if algorithm is AlgorithmId.LINCBO:
        return lincbo(ctx, visit)
    if algorithm is AlgorithmId.LINCBO1:
        return lincbo1(ctx, visit)
    kind, plus = _NC[algorithm]
    return nextclosure_basis(ctx, kind, plus, visit)


# ---------------------------------------------------------------- verification

@dataclass
class VerifyReport:
    checks: List[Tuple[str, Optional[bool], str]] = field(default_factory=list)

    def add(self, name: str, passed: Optional[bool], detail: str = "") -> None:
        self.checks.append((name, passed, detail))

    @property
    def ok(self) -> bool:
        return all(p is not False for _, p, _ in self.checks)

    def __getitem__(self, name: str) -> Optional[bool]:
        for n, p, _ in self.checks:
            if n == name:
                return p
        raise KeyError(name)

    def format(self) -> str:
        lines = []
        for name, passed, detail in self.checks:
            status = "skip" if passed is None else ("pass" if passed else "FAIL")
            lines.append(f"{status:4}  {name}" + (f"  ({detail})" if detail else ""))
        return "\n".join(lines)


def exhaustive_models(theory: Theory) -> Tuple[set, List[bool]]:
    """Models of ``theory`` plus, per implication, whether some subset violates it alone.

    ``Mod(T minus k)`` is ``Mod(T)`` together with the subsets whose only
    violated implication is ``k``, so one pass over all subsets decides
    completeness of every single-implication removal.
    """
    pairs = list(zip(theory.premises, theory.conclusions))
    models = set()
    sole = [False] * len(pairs)
    for m in range(1 << theory.n_attributes):
        hit = -1
        for k, (p, c) in enumerate(pairs):
            if p & ~m == 0 and c & ~m:
                if hit >= 0:
                    hit = -2
                    break
                hit = k
        if hit == -1:
            models.add(m)
        elif hit >= 0:
            sole[hit] = True
    return models, sole


def verify_basis(ctx: FormalContext, theory: Theory, exhaustive_limit: int = 12) -> VerifyReport:
    """Soundness always; completeness, non-redundancy and count against the
    brute-force oracle when the context has at most ``exhaustive_limit``
    attributes."""
    from .oracle import intents_bruteforce, pseudo_intents_bruteforce

    report = VerifyReport()
    bad = [k for k, imp in enumerate(theory) if not is_valid_in_context(imp, ctx)]
    report.add("soundness", not bad, f"invalid: {bad[:5]}" if bad else f"{len(theory)} implications")

    n = ctx.n_attributes
    if n > exhaustive_limit:
        for name in ("completeness", "non-redundancy", "pseudo-intent count"):
            report.add(name, None, f"|Y|={n} > {exhaustive_limit}")
        return report

    intents = set(intents_bruteforce(ctx))
    models, sole = exhaustive_models(theory)
    extra = len(models - intents)
    report.add("completeness", models == intents,
               f"{len(models)} models, {len(intents)} intents, {extra} non-intent models")
    # dropping k adds exactly the sets violating k alone
    redundant = [k for k, s in enumerate(sole) if not s]
    report.add("non-redundancy", not redundant,
               f"redundant: {redundant[:5]}" if redundant else "")

    expected = len(pseudo_intents_bruteforce(ctx))
    report.add("pseudo-intent count", expected == len(theory),
               f"basis {len(theory)}, oracle {expected}")
    return report
