"""Attribute implications, theories and their models."""

import json
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set

import numpy as np

from . import bitset
from .bitset import iter_bits


_WORD = (1 << 64) - 1


class Implication(NamedTuple):
    premise: int
    conclusion: int

    def holds_in(self, m: int) -> bool:
        return holds_in(self, m)

    def format(self, names: Optional[Sequence[str]] = None, reduced: bool = False) -> str:
        rhs = self.conclusion & ~self.premise if reduced else self.conclusion
        if names is None:
            lhs_s = " ".join(str(a + 1) for a in iter_bits(self.premise))
            rhs_s = " ".join(str(a + 1) for a in iter_bits(rhs))
        else:
            lhs_s = " ".join(names[a] for a in iter_bits(self.premise))
            rhs_s = " ".join(names[a] for a in iter_bits(rhs))
        return f"{lhs_s} -> {rhs_s}".strip()

    def to_json(self, reduced: bool = False) -> dict:
        rhs = self.conclusion & ~self.premise if reduced else self.conclusion
        return {"premise": bitset.to_one_based(self.premise),
                "conclusion": bitset.to_one_based(rhs)}


class Theory:
    """Append-only sequence of implications over ``n`` attributes.

    ``lists[a]`` holds, in append order, the ordinals of implications whose
    premise contains ``a``.  Ordinals never change once assigned, which is
    what lets saved attribute counters be extended instead of rebuilt.
    """

    def __init__(self, n_attributes: int, implications: Iterable[Implication] = ()):
        self.n_attributes = n_attributes
        self.premises: List[int] = []
        self.conclusions: List[int] = []
        self.premise_sizes: List[int] = []
        self.lists: List[List[int]] = [[] for _ in range(n_attributes)]
        # same information as ``lists``, as bitmasks over ordinals
        self.list_masks: List[int] = [0] * n_attributes
        self._packed = None
        # union of conclusions of empty-premise implications
        self.empty_premise_conclusion = 0
        self.has_empty_premise = False
        for imp in implications:
            self.add(imp)

    def add(self, imp) -> int:
        premise, conclusion = imp
        n = self.n_attributes
        if not (bitset.fits(premise, n) and bitset.fits(conclusion, n)):
            raise ValueError(f"implication does not fit {n} attributes")
        j = len(self.premises)
        self.premises.append(premise)
        self.conclusions.append(conclusion)
        self.premise_sizes.append(premise.bit_count())
        lists = self.lists
        masks = self.list_masks
        jbit = 1 << j
        s = premise
        while s:
            low = s & -s
            a = low.bit_length() - 1
            lists[a].append(j)
            masks[a] |= jbit
            s ^= low
        if not premise:
            self.has_empty_premise = True
            self.empty_premise_conclusion |= conclusion
        return j

    def __len__(self) -> int:
        return len(self.premises)

    def __getitem__(self, j: int) -> Implication:
        return Implication(self.premises[j], self.conclusions[j])

    def __iter__(self) -> Iterator[Implication]:
        return (Implication(p, c) for p, c in zip(self.premises, self.conclusions))

    def __repr__(self) -> str:
        return f"Theory(n={self.n_attributes}, {list(self)!r})"

    def packed(self) -> "_PackedTheory":
        """Word-matrix view of the theory, extended to the current length."""
        if self._packed is None:
            self._packed = _PackedTheory(self.n_attributes)
        self._packed.sync(self)
        return self._packed

    def as_set(self) -> Set[Implication]:
        return set(self)

    def without(self, j: int) -> "Theory":
        return Theory(self.n_attributes, (imp for k, imp in enumerate(self) if k != j))

    def format(self, names=None, reduced: bool = False) -> str:
        return "".join(imp.format(names, reduced) + "\n" for imp in self)

    def to_json(self, reduced: bool = False) -> str:
        return json.dumps([imp.to_json(reduced) for imp in self])


def add_implication(theory: Theory, imp) -> int:
    return theory.add(imp)


def holds_in(imp, m: int) -> bool:
    """``L => R`` holds in ``M`` iff ``L ⊆ M`` implies ``R ⊆ M``."""
    premise, conclusion = imp
    return premise & ~m != 0 or conclusion & ~m == 0


def is_valid_in_context(imp, ctx) -> bool:
    return all(holds_in(imp, r) for r in ctx.rows)


def is_model(theory: Theory, m: int) -> bool:
    for p, c in zip(theory.premises, theory.conclusions):
        if p & ~m == 0 and c & ~m:
            return False
    return True


_PACK_THRESHOLD = 64


class _PackedTheory:
    """Premises and conclusions as uint64 word matrices, grown on demand."""

    def __init__(self, n_attributes: int):
        self.words = max(1, (n_attributes + 63) // 64)
        self.size = 0
        self.prem = np.zeros((64, self.words), dtype=np.uint64)
        self.conc = np.zeros((64, self.words), dtype=np.uint64)

    def to_words(self, s: int) -> np.ndarray:
        return np.array([(s >> (64 * k)) & _WORD for k in range(self.words)], dtype=np.uint64)

    def from_words(self, w: np.ndarray) -> int:
        s = 0
        for k in range(self.words - 1, -1, -1):
            s = (s << 64) | int(w[k])
        return s

    def or_rows(self, ordinals: int) -> int:
        """Union of the conclusions whose ordinals are the bits of ``ordinals``."""
        nbytes = (ordinals.bit_length() + 7) // 8
        bits = np.unpackbits(np.frombuffer(ordinals.to_bytes(nbytes, "little"), dtype=np.uint8),
                             bitorder="little")
        rows = self.conc[np.flatnonzero(bits)]
        return self.from_words(np.bitwise_or.reduce(rows, axis=0))

    def sync(self, theory: "Theory") -> None:
        m = len(theory)
        if m > len(self.prem):
            cap = max(m, 2 * len(self.prem))
            for name in ("prem", "conc"):
                grown = np.zeros((cap, self.words), dtype=np.uint64)
                grown[:self.size] = getattr(self, name)[:self.size]
                setattr(self, name, grown)
        for j in range(self.size, m):
            self.prem[j] = self.to_words(theory.premises[j])
            self.conc[j] = self.to_words(theory.conclusions[j])
        self.size = m


def naive_closure(theory: Theory, z: int) -> int:
    """Smallest model of ``theory`` containing ``z``, by repeated full passes.

    Each pass applies every implication whose premise lies in the current
    set.  Large theories run the pass as one vectorised sweep.
    """
    if len(theory) >= _PACK_THRESHOLD:
        return _naive_closure_packed(theory, z)
    pairs = list(zip(theory.premises, theory.conclusions))
    changed = True
    while changed:
        changed = False
        for p, c in pairs:
            if p & ~z == 0 and c & ~z:
                z |= c
                changed = True
    return z


def _naive_closure_packed(theory: Theory, z: int) -> int:
    packed = theory.packed()
    prem = packed.prem[:packed.size]
    conc = packed.conc[:packed.size]
    zw = packed.to_words(z)
    while True:
        fires = ~np.any(prem & ~zw, axis=1)
        if not fires.any():
            break
        new = zw | np.bitwise_or.reduce(conc[fires], axis=0)
        if np.array_equal(new, zw):
            break
        zw = new
    return packed.from_words(zw)


def models_bruteforce(theory: Theory, limit: int = 20) -> Set[int]:
    n = theory.n_attributes
    if n > limit:
        raise ValueError(f"{n} attributes exceeds the brute-force limit {limit}")
    return {m for m in range(1 << n) if is_model(theory, m)}


def parse_theory(text: str, attribute_names: Sequence[str]) -> Theory:
    """Read implications written as ``a1 a2 -> a3`` (one per line) or as JSON.

    Names are resolved against ``attribute_names``; bare 1-based integers are
    accepted when they are not themselves attribute names.
    """
    n = len(attribute_names)
    index = {name: i for i, name in enumerate(attribute_names)}

    def attr(tok):
        if tok in index:
            return index[tok]
        try:
            a = int(tok)
        except ValueError:
            raise ValueError(f"unknown attribute {tok!r}") from None
        if not 1 <= a <= n:
            raise ValueError(f"attribute number {a} out of range")
        return a - 1

    theory = Theory(n)
    stripped = text.strip()
    if stripped.startswith("["):
        for item in json.loads(stripped):
            p = bitset.from_one_based(item["premise"])
            c = bitset.from_one_based(item["conclusion"])
            theory.add((p, c | p))
        return theory
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise ValueError(f"not an implication: {line!r}")
        lhs, rhs = line.split("->", 1)
        p = bitset.from_iter(attr(t) for t in lhs.split())
        c = bitset.from_iter(attr(t) for t in rhs.split())
        theory.add((p, c | p))
    return theory
