"""Formal contexts, concept-forming operators, file formats and generators."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import bitset
from .bitset import iter_bits


class ContextFormatError(ValueError):
    """Raised when a CXT or FIMI document cannot be decoded."""


@dataclass(frozen=True)
class FormalContext:
    """Object/attribute incidence with row and column views.

    ``rows[x]`` is the attribute set of object ``x`` and ``columns[y]`` the
    object set of attribute ``y``.  Build instances with :meth:`from_rows`;
    the columns are derived there and never edited afterwards.
    """

    n_objects: int
    n_attributes: int
    rows: Tuple[int, ...]
    columns: Tuple[int, ...]
    object_names: Tuple[str, ...]
    attribute_names: Tuple[str, ...]
    name: str = ""
    all_objects: int = field(init=False, repr=False, compare=False)
    all_attributes: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n_objects or len(self.object_names) != self.n_objects:
            raise ValueError("row/object-name count does not match n_objects")
        if len(self.columns) != self.n_attributes or len(self.attribute_names) != self.n_attributes:
            raise ValueError("column/attribute-name count does not match n_attributes")
        object.__setattr__(self, "all_objects", bitset.full(self.n_objects))
        object.__setattr__(self, "all_attributes", bitset.full(self.n_attributes))

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[int],
        n_attributes: int,
        object_names: Optional[Sequence[str]] = None,
        attribute_names: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> "FormalContext":
        rows = tuple(rows)
        for x, r in enumerate(rows):
            if not bitset.fits(r, n_attributes):
                raise ValueError(f"row {x} has an attribute outside 0..{n_attributes - 1}")
        cols = [0] * n_attributes
        for x, r in enumerate(rows):
            bit = 1 << x
            for y in iter_bits(r):
                cols[y] |= bit
        if object_names is None:
            object_names = [f"x{i + 1}" for i in range(len(rows))]
        if attribute_names is None:
            attribute_names = [f"a{i + 1}" for i in range(n_attributes)]
        return cls(len(rows), n_attributes, rows, tuple(cols),
                   tuple(object_names), tuple(attribute_names), name)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], n_attributes: Optional[int] = None,
                   **kw) -> "FormalContext":
        """Build from rows given as lists of 0-based attribute indices."""
        if n_attributes is None:
            n_attributes = max((max(r) + 1 for r in rows if r), default=0)
        return cls.from_rows([bitset.from_iter(r) for r in rows], n_attributes, **kw)

    @property
    def n_incidences(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def __str__(self) -> str:
        return (f"FormalContext({self.name!r}, {self.n_objects}x{self.n_attributes}, "
                f"|I|={self.n_incidences})")


def _check(s: int, n: int, what: str) -> None:
    if not bitset.fits(s, n):
        raise ValueError(f"{what} set does not fit capacity {n}")


def up(ctx: FormalContext, objects: int) -> int:
    """Attributes shared by all the given objects."""
    _check(objects, ctx.n_objects, "object")
    result = ctx.all_attributes
    rows = ctx.rows
    for x in iter_bits(objects):
        result &= rows[x]
    return result


def down(ctx: FormalContext, attrs: int) -> int:
    """Objects having all the given attributes."""
    _check(attrs, ctx.n_attributes, "attribute")
    result = ctx.all_objects
    cols = ctx.columns
    for y in iter_bits(attrs):
        result &= cols[y]
    return result


def closure_downup(ctx: FormalContext, attrs: int) -> int:
    """The intent closure ``attrs↓↑``.

    The extent is obtained from the columns of ``attrs``; the intent is then
    completed either by intersecting the extent's rows or by testing the
    remaining columns, whichever touches fewer words.
    """
    _check(attrs, ctx.n_attributes, "attribute")
    cols = ctx.columns
    ext = ctx.all_objects
    s = attrs
    while s:
        low = s & -s
        ext &= cols[low.bit_length() - 1]
        s ^= low
    return intent_of_extent(ctx, ext, attrs)


def intent_of_extent(ctx: FormalContext, ext: int, known: int = 0) -> int:
    """``ext↑``, where ``known`` is a subset of the answer that need not be tested."""
    rest = ctx.all_attributes & ~known
    if ext.bit_count() <= rest.bit_count():
        rows = ctx.rows
        res = ctx.all_attributes
        while ext:
            low = ext & -ext
            res &= rows[low.bit_length() - 1]
            ext ^= low
        return res
    cols = ctx.columns
    res = known
    while rest:
        low = rest & -rest
        if ext & ~cols[low.bit_length() - 1] == 0:
            res |= low
        rest ^= low
    return res


def object_intent(ctx: FormalContext, x: int) -> int:
    return ctx.rows[x]


# ---------------------------------------------------------------- file formats

def read_cxt(data) -> FormalContext:
    """Decode a Burmeister CXT document (bytes or str)."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise ContextFormatError("CXT must start with a line containing 'B'")
    if len(lines) < 5:
        raise ContextFormatError("truncated CXT header")
    name = lines[1].strip()
    try:
        n_obj = int(lines[2].strip())
        n_att = int(lines[3].strip())
    except ValueError as e:
        raise ContextFormatError(f"bad object/attribute count: {e}") from None
    if n_obj < 0 or n_att < 0:
        raise ContextFormatError("negative object/attribute count")
    if lines[4].strip():
        raise ContextFormatError("expected an empty line after the counts")
    body = lines[5:]
    need = 2 * n_obj + n_att
    if len(body) < need:
        raise ContextFormatError(f"expected {need} lines after header, got {len(body)}")
    if any(line.strip() for line in body[need:]):
        raise ContextFormatError("unexpected content after the incidence rows")
    obj_names = [s.strip() for s in body[:n_obj]]
    att_names = [s.strip() for s in body[n_obj:n_obj + n_att]]
    rows = []
    for k, line in enumerate(body[n_obj + n_att:need]):
        line = line.rstrip()
        if len(line) != n_att:
            raise ContextFormatError(f"row {k + 1} has length {len(line)}, expected {n_att}")
        r = 0
        for y, ch in enumerate(line):
            if ch == "X":
                r |= 1 << y
            elif ch != ".":
                raise ContextFormatError(f"row {k + 1}: unexpected character {ch!r}")
        rows.append(r)
    return FormalContext.from_rows(rows, n_att, obj_names, att_names, name)


def write_cxt(ctx: FormalContext) -> bytes:
    out = ["B", ctx.name, str(ctx.n_objects), str(ctx.n_attributes), ""]
    out.extend(ctx.object_names)
    out.extend(ctx.attribute_names)
    n = ctx.n_attributes
    for r in ctx.rows:
        out.append("".join("X" if r >> y & 1 else "." for y in range(n)))
    return ("\n".join(out) + "\n").encode("utf-8")


def read_fimi(data) -> FormalContext:
    """One object per line, whitespace-separated 1-based attribute numbers."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    rows = []
    n_att = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        r = 0
        for tok in line.split():
            try:
                a = int(tok)
            except ValueError:
                raise ContextFormatError(f"line {lineno}: non-integer token {tok!r}") from None
            if a < 1:
                raise ContextFormatError(f"line {lineno}: attribute numbers are 1-based, got {a}")
            r |= 1 << (a - 1)
            n_att = max(n_att, a)
        rows.append(r)
    return FormalContext.from_rows(rows, n_att)


def write_fimi(ctx: FormalContext) -> bytes:
    lines = [" ".join(str(a) for a in bitset.to_one_based(r)) for r in ctx.rows]
    return "".join(line + "\n" for line in lines).encode("utf-8")


# ------------------------------------------------------------------ generators

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class XorShift64Star:
    """xorshift64* generator seeded through one round of splitmix64.

    Kept explicit (rather than :mod:`random`) so that generated datasets are
    reproducible bit for bit by any other implementation of the same recipe:

        state = splitmix64(seed) or 1
        next: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 0x2545F4914F6CDD1D
        below(k) = (next() * k) >> 64
    """

    def __init__(self, seed: int):
        self.state = splitmix64(seed & _MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        return (self.next_u64() * k) >> 64


def gen_contranominal(n: int) -> FormalContext:
    """n x n context whose incidence is inequality."""
    if n < 1:
        raise ValueError("n must be >= 1")
    full = bitset.full(n)
    rows = [full & ~(1 << i) for i in range(n)]
    return FormalContext.from_rows(rows, n, name=f"{n}x{n}-{n - 1}")


def gen_random(nx: int, ny: int, d: int, seed: int = 0) -> FormalContext:
    """Every object gets exactly ``d`` distinct attributes, drawn uniformly.

    Selection is a partial Fisher-Yates shuffle of ``0..ny-1`` driven by
    :class:`XorShift64Star`, restarted from the identity permutation for each
    object.
    """
    if d < 0 or d > ny:
        raise ValueError(f"need 0 <= d <= ny, got d={d}, ny={ny}")
    rng = XorShift64Star(seed)
    rows = []
    for _ in range(nx):
        perm = list(range(ny))
        r = 0
        for j in range(d):
            k = j + rng.below(ny - j)
            perm[j], perm[k] = perm[k], perm[j]
            r |= 1 << perm[j]
        rows.append(r)
    return FormalContext.from_rows(rows, ny, name=f"{nx}x{ny}-{d}")


def gen_density(nx: int, ny: int, density: float, seed: int = 0) -> FormalContext:
    """Bernoulli incidence with the given probability per cell (test corpora)."""
    rng = XorShift64Star(seed)
    threshold = int(density * (1 << 64))
    rows = []
    for _ in range(nx):
        r = 0
        for y in range(ny):
            if rng.next_u64() < threshold:
                r |= 1 << y
        rows.append(r)
    return FormalContext.from_rows(rows, ny, name=f"{nx}x{ny}-p{density:g}")


def parse_rows(spec: List[str], n_attributes: int) -> FormalContext:
    """Tiny helper: ``["XX..", "X.X."]`` style rows to a context."""
    rows = []
    for line in spec:
        r = 0
        for y, ch in enumerate(line):
            if ch in "Xx1":
                r |= 1 << y
        rows.append(r)
    return FormalContext.from_rows(rows, n_attributes)
