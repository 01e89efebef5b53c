"""Binarisation of many-valued tables into formal contexts.

Numeric features get ``k - 1`` equidistant cutpoints over their observed
range ``[lo, hi]``, ``c_j = lo + j * (hi - lo) / k``:

* ``nom``   -- k attributes, one per bin ``[c_{j-1}, c_j)`` (the last bin is closed)
* ``ord``   -- k - 1 attributes ``feature>=c_j``
* ``inter`` -- 2(k - 1) attributes ``feature<=c_j`` then ``feature>=c_j``

Categorical features always get one attribute ``feature=category`` per
distinct value, whatever the method.
"""

import csv
import io
import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union

from .context import FormalContext

log = logging.getLogger(__name__)

NUMERIC = "numeric"
CATEGORICAL = "categorical"
METHODS = ("nom", "ord", "inter")


@dataclass
class Column:
    name: str
    kind: str


@dataclass
class DataTable:
    columns: List[Column]
    rows: List[list]

    def __post_init__(self):
        width = len(self.columns)
        for i, r in enumerate(self.rows):
            if len(r) != width:
                raise ValueError(f"row {i} has {len(r)} cells, expected {width}")

    @property
    def n_rows(self) -> int:
        return len(self.rows)


@dataclass
class ScalingSpec:
    method: str = "nom"
    k: int = 5
    drop_missing: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown scaling method {self.method!r}; use one of {METHODS}")
        if self.k < 2:
            raise ValueError("k must be at least 2")


def _to_float(s: str) -> Optional[float]:
    try:
        v = float(s)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def read_csv(data: Union[bytes, str], header: bool = True,
             kinds: Union[None, Sequence[str], Dict[str, str]] = None,
             missing: str = "?") -> DataTable:
    """Parse CSV text into a :class:`DataTable`.

    ``kinds`` may name the kind of every column (sequence) or of some columns
    (dict by column name); the rest are inferred as numeric when every
    non-missing cell parses as a finite number.  Cells equal to ``missing``
    (or empty) become ``None``.
    """
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    records = [r for r in csv.reader(io.StringIO(text)) if r]
    if header:
        if not records:
            raise ValueError("CSV has no header row")
        names, records = [c.strip() for c in records[0]], records[1:]
    else:
        width = len(records[0]) if records else 0
        names = [f"f{i + 1}" for i in range(width)]
    width = len(names)
    for i, r in enumerate(records):
        if len(r) != width:
            raise ValueError(f"ragged CSV: record {i + 1} has {len(r)} fields, expected {width}")

    cells = [[None if c.strip() in (missing, "") else c.strip() for c in r] for r in records]

    if kinds is None:
        declared: List[Optional[str]] = [None] * width
    elif isinstance(kinds, dict):
        declared = [kinds.get(n) for n in names]
    else:
        declared = list(kinds)
        if len(declared) != width:
            raise ValueError("kinds must list one kind per column")

    columns = []
    for j, name in enumerate(names):
        kind = declared[j]
        values = [r[j] for r in cells if r[j] is not None]
        if kind is None:
            numeric = bool(values) and all(_to_float(v) is not None for v in values)
            kind = NUMERIC if numeric else CATEGORICAL
        elif kind not in (NUMERIC, CATEGORICAL):
            raise ValueError(f"column {name!r}: unknown kind {kind!r}")
        if kind == NUMERIC:
            for i, r in enumerate(cells):
                if r[j] is not None:
                    v = _to_float(r[j])
                    if v is None:
                        raise ValueError(f"column {name!r}, record {i + 1}: not a number: {r[j]!r}")
                    r[j] = v
        columns.append(Column(name, kind))
    return DataTable(columns, cells)


def compute_cutpoints(values: Sequence[float], k: int) -> List[float]:
    """Interior equidistant cutpoints of the observed range (empty if constant)."""
    lo, hi = min(values), max(values)
    if lo == hi:
        return []
    return [lo + j * (hi - lo) / k for j in range(1, k)]


def scaling_plan(table: DataTable, spec: ScalingSpec) -> Dict[str, dict]:
    """Per-feature cutpoints or categories, as dumped to the JSON sidecar."""
    rows = _kept_rows(table, spec, quiet=True)
    plan = {}
    for j, col in enumerate(table.columns):
        values = [r[j] for r in rows if r[j] is not None]
        if col.kind == NUMERIC:
            cuts = compute_cutpoints(values, spec.k) if values else []
            plan[col.name] = {"kind": NUMERIC, "cutpoints": cuts,
                              "range": [min(values), max(values)] if values else None}
        else:
            plan[col.name] = {"kind": CATEGORICAL, "categories": sorted(set(values))}
    return plan


def _kept_rows(table: DataTable, spec: ScalingSpec, quiet: bool = False) -> List[list]:
    if not spec.drop_missing:
        return table.rows
    kept = [r for r in table.rows if all(c is not None for c in r)]
    dropped = table.n_rows - len(kept)
    if dropped and not quiet:
        log.info("dropped %d rows with missing values", dropped)
    return kept


def scale(table: DataTable, spec: ScalingSpec, name: str = "") -> FormalContext:
    rows = _kept_rows(table, spec)
    if not rows:
        raise ValueError("nothing to scale: the table has no (complete) rows")
    plan = scaling_plan(table, spec)
    attr_names: List[str] = []
    obj_rows = [0] * len(rows)

    def new_attr(label: str) -> int:
        attr_names.append(label)
        return 1 << (len(attr_names) - 1)

    for j, col in enumerate(table.columns):
        info = plan[col.name]
        if col.kind == CATEGORICAL:
            bits = {cat: new_attr(f"{col.name}={cat}") for cat in info["categories"]}
            for x, r in enumerate(rows):
                if r[j] is not None:
                    obj_rows[x] |= bits[r[j]]
            continue
        cuts = info["cutpoints"]
        if not cuts:
            log.warning("feature %r is constant; %s", col.name,
                        "single bin" if spec.method == "nom" else "no attributes")
            if spec.method == "nom" and info["range"] is not None:
                bit = new_attr(f"{col.name}=bin1")
                for x, r in enumerate(rows):
                    if r[j] is not None:
                        obj_rows[x] |= bit
            continue
        c = lambda v: format(v, "g")  # noqa: E731
        if spec.method == "nom":
            bins = [new_attr(f"{col.name}=bin{b + 1}") for b in range(len(cuts) + 1)]
            for x, r in enumerate(rows):
                if r[j] is not None:
                    obj_rows[x] |= bins[bisect_right(cuts, r[j])]
        elif spec.method == "ord":
            ge = [new_attr(f"{col.name}>={c(t)}") for t in cuts]
            for x, r in enumerate(rows):
                if r[j] is not None:
                    for t, bit in zip(cuts, ge):
                        if r[j] >= t:
                            obj_rows[x] |= bit
        else:
            le = [new_attr(f"{col.name}<={c(t)}") for t in cuts]
            ge = [new_attr(f"{col.name}>={c(t)}") for t in cuts]
            for x, r in enumerate(rows):
                v = r[j]
                if v is not None:
                    for t, lb, gb in zip(cuts, le, ge):
                        if v <= t:
                            obj_rows[x] |= lb
                        if v >= t:
                            obj_rows[x] |= gb
    return FormalContext.from_rows(obj_rows, len(attr_names), attribute_names=attr_names, name=name)


def remove_full_columns(ctx: FormalContext) -> FormalContext:
    """Drop every attribute shared by all objects."""
    keep = [y for y in range(ctx.n_attributes) if ctx.columns[y] != ctx.all_objects]
    if len(keep) == ctx.n_attributes:
        return ctx
    rows = []
    for r in ctx.rows:
        nr = 0
        for k, y in enumerate(keep):
            if r >> y & 1:
                nr |= 1 << k
        rows.append(nr)
    return FormalContext.from_rows(rows, len(keep), ctx.object_names,
                                   [ctx.attribute_names[y] for y in keep], ctx.name)
