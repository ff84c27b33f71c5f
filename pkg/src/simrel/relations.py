"""Relation categories, labeled relation matrices, and agglomerative grouping.

Similarity values in [0, 1] map onto nine labeled categories whose intervals
partition the range; boundaries belong to the upper category. A relation
matrix holds pairwise values and their category codes over named objects,
with absent cells kept distinguishable from low similarity.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, Union

from . import corpus as corpus_mod
from .distances import similarity_from_counts
from .errors import MalformedInput, SimrelError

_THRESHOLDS = (0.11, 0.22, 0.33, 0.44, 0.56, 0.67, 0.78, 0.89)
_LABELS = (
    "unclose",
    "weakest",
    "weaker",
    "weak",
    "middle",
    "strong",
    "stronger",
    "strongest",
    "close",
)


@dataclass(frozen=True)
class RelationCategory:
    code: int
    label: str
    lower: float
    upper: float
    upper_inclusive: bool

    def contains(self, value: float) -> bool:
        if self.upper_inclusive:
            return self.lower <= value <= self.upper
        return self.lower <= value < self.upper

    def interval_text(self) -> str:
        close = "]" if self.upper_inclusive else ")"
        return f"[{self.lower:.2f}, {self.upper:.2f}{close}"


CATEGORIES: tuple[RelationCategory, ...] = tuple(
    RelationCategory(
        code=i + 1,
        label=_LABELS[i],
        lower=(0.0, *_THRESHOLDS)[i],
        upper=(*_THRESHOLDS, 1.0)[i],
        upper_inclusive=(i == 8),
    )
    for i in range(9)
)


def categorize(value: float) -> RelationCategory:
    """The unique category whose interval contains value; boundaries go up."""
    if not 0.0 <= value <= 1.0:
        raise MalformedInput(f"similarity {value!r} outside [0, 1] has no category")
    return CATEGORIES[bisect_right(_THRESHOLDS, value)]


def format_legend() -> str:
    return "".join(f"{c.code} {c.label} {c.interval_text()}\n" for c in CATEGORIES)


@dataclass(frozen=True)
class NamedObject:
    id: str
    display_name: str
    group: str = ""


def load_objects_csv(source: Union[str, Path]) -> list[NamedObject]:
    """Read an object list: CSV with header id,display_name,group."""
    p = Path(source)
    if not p.is_file():
        raise MalformedInput(f"objects file not found: {p}")
    reader = csv.reader(io.StringIO(p.read_text(encoding="utf-8")))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MalformedInput("objects file is empty") from None
    if header != ["id", "display_name", "group"]:
        raise MalformedInput("objects header must be id,display_name,group")
    objects = []
    seen = set()
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise MalformedInput(f"objects row needs 3 fields: {row!r}")
        obj = NamedObject(row[0].strip(), row[1].strip(), row[2].strip())
        if not obj.id:
            raise MalformedInput("object id must be nonempty")
        if obj.id in seen:
            raise MalformedInput(f"duplicate object id {obj.id!r}")
        seen.add(obj.id)
        objects.append(obj)
    return objects


@dataclass(frozen=True)
class Cell:
    value: float | None = None
    category_code: int | None = None
    reason: str | None = None
    provenance: str = ""

    @property
    def present(self) -> bool:
        return self.value is not None


class RelationMatrix:
    """Pairwise similarity values and category codes over named objects."""

    def __init__(
        self,
        row_objects: Sequence[NamedObject],
        col_objects: Sequence[NamedObject],
        cells: dict[tuple[str, str], Cell],
    ):
        self.row_objects = tuple(row_objects)
        self.col_objects = tuple(col_objects)
        self.cells = dict(cells)

    @property
    def is_square(self) -> bool:
        return [o.id for o in self.row_objects] == [o.id for o in self.col_objects]

    def cell(self, row_id: str, col_id: str) -> Cell:
        return self.cells.get((row_id, col_id), Cell(reason="not computed"))

    def value_at(self, row_id: str, col_id: str) -> float | None:
        return self.cell(row_id, col_id).value

    def category_at(self, row_id: str, col_id: str) -> int | None:
        return self.cell(row_id, col_id).category_code

    def defined_count(self) -> int:
        return sum(1 for c in self.cells.values() if c.present)


def _pair_cell(provider, kind, x_name: str, y_name: str, provider_label: str) -> Cell:
    try:
        h = corpus_mod.hit_counts(provider, x_name, y_name)
    except SimrelError as exc:
        return Cell(reason=str(exc), provenance=provider_label)
    provenance = f"{provider_label} f_x={h.f_x} f_y={h.f_y} f_xy={h.f_xy}"
    try:
        score = similarity_from_counts(kind, h)
    except SimrelError as exc:
        return Cell(reason=str(exc), provenance=provenance)
    value = score.value
    if 0.0 <= value <= 1.0:
        return Cell(value=value, category_code=categorize(value).code, provenance=provenance)
    return Cell(value=value, reason=f"value {value:.6f} outside [0, 1]", provenance=provenance)


def build_matrix(
    row_objects: Sequence[NamedObject],
    col_objects: Sequence[NamedObject] | None,
    provider,
    kind,
    *,
    provider_label: str = "",
) -> RelationMatrix:
    """Fill every off-diagonal pair with hit counts -> similarity -> category.

    Object names are queried as phrases (their pair as the conjunction of
    both). Lookup or similarity failures become absent cells with a reason;
    they never abort the matrix. Unordered pairs are computed once, so
    coincident row/column sets come out symmetric.
    """
    if col_objects is None:
        col_objects = row_objects
    if len(row_objects) < 2 and len(col_objects) < 2:
        raise MalformedInput("need >= 2 objects to build a relation matrix")
    by_pair: dict[frozenset[str], Cell] = {}
    cells: dict[tuple[str, str], Cell] = {}
    names = {o.id: o.display_name for o in (*row_objects, *col_objects)}
    for r in row_objects:
        for c in col_objects:
            if r.id == c.id:
                cells[(r.id, c.id)] = Cell(reason="diagonal", provenance=provider_label)
                continue
            key = frozenset((r.id, c.id))
            if key not in by_pair:
                by_pair[key] = _pair_cell(provider, kind, names[r.id], names[c.id], provider_label)
            cells[(r.id, c.id)] = by_pair[key]
    return RelationMatrix(row_objects, col_objects, cells)


def matrix_from_values(
    objects: Sequence[NamedObject],
    values: dict[tuple[str, str], float],
    *,
    assign_categories: bool = True,
) -> RelationMatrix:
    """Square symmetric matrix from explicit pairwise values (diagonal absent)."""
    cells: dict[tuple[str, str], Cell] = {}
    for a in objects:
        for b in objects:
            if a.id == b.id:
                cells[(a.id, b.id)] = Cell(reason="diagonal")
                continue
            v = values.get((a.id, b.id), values.get((b.id, a.id)))
            if v is None:
                cells[(a.id, b.id)] = Cell(reason="no value supplied")
            else:
                code = categorize(v).code if assign_categories and 0 <= v <= 1 else None
                cells[(a.id, b.id)] = Cell(value=v, category_code=code)
    return RelationMatrix(objects, objects, cells)


# --- TSV export / import --------------------------------------------------


def export_matrix(matrix: RelationMatrix, kind: str = "values") -> str:
    """TSV with row/col ids in declared order; absent cells are empty fields.

    values mode writes full-precision floats (they re-import exactly);
    categories mode writes the integer codes.
    """
    if kind not in ("values", "categories"):
        raise MalformedInput(f"export kind must be 'values' or 'categories', got {kind!r}")
    lines = ["\t".join(["", *(o.id for o in matrix.col_objects)])]
    for r in matrix.row_objects:
        fields = [r.id]
        for c in matrix.col_objects:
            cell = matrix.cell(r.id, c.id)
            if kind == "values":
                fields.append("" if cell.value is None else repr(cell.value))
            else:
                fields.append("" if cell.category_code is None else str(cell.category_code))
        lines.append("\t".join(fields))
    return "\n".join(lines) + "\n"


def import_matrix(values_text: str, categories_text: str | None = None) -> RelationMatrix:
    """Rebuild a matrix from exported TSV text (ids become display names)."""

    def parse(text: str) -> tuple[list[str], list[str], dict[tuple[str, str], str]]:
        rows = [line.split("\t") for line in text.splitlines() if line != ""]
        if not rows:
            raise MalformedInput("matrix TSV is empty")
        col_ids = rows[0][1:]
        row_ids = [r[0] for r in rows[1:]]
        grid = {}
        for r in rows[1:]:
            if len(r) != len(col_ids) + 1:
                raise MalformedInput(f"matrix TSV row {r[0]!r} has wrong field count")
            for cid, fieldtext in zip(col_ids, r[1:]):
                grid[(r[0], cid)] = fieldtext
        return row_ids, col_ids, grid

    row_ids, col_ids, values = parse(values_text)
    categories: dict[tuple[str, str], str] = {}
    if categories_text is not None:
        crow, ccol, categories = parse(categories_text)
        if crow != row_ids or ccol != col_ids:
            raise MalformedInput("values and categories TSVs disagree on object ids")
    cells = {}
    for key, text in values.items():
        value = float(text) if text else None
        code_text = categories.get(key, "")
        code = int(code_text) if code_text else None
        cells[key] = Cell(value=value, category_code=code) if value is not None else Cell()
    rows = [NamedObject(i, i) for i in row_ids]
    cols = [NamedObject(i, i) for i in col_ids]
    return RelationMatrix(rows, cols, cells)


def provenance_tsv(matrix: RelationMatrix) -> str:
    """Per-cell provenance log: status, value, reason, provider details."""
    lines = ["\t".join(["row", "col", "status", "value", "reason", "provenance"])]
    for r in matrix.row_objects:
        for c in matrix.col_objects:
            cell = matrix.cell(r.id, c.id)
            lines.append(
                "\t".join(
                    [
                        r.id,
                        c.id,
                        "ok" if cell.present else "absent",
                        "" if cell.value is None else repr(cell.value),
                        cell.reason or "",
                        cell.provenance,
                    ]
                )
            )
    return "\n".join(lines) + "\n"


# --- agglomerative grouping -------------------------------------------------


@dataclass(frozen=True)
class ClusteringResult:
    groups: tuple[tuple[str, ...], ...]
    merges: tuple[tuple[str, str, float], ...] = field(default=())


_LINKAGES = ("single", "average", "complete")


def cluster(
    matrix: RelationMatrix,
    linkage: str = "average",
    *,
    k: int | None = None,
    threshold: float | None = None,
) -> ClusteringResult:
    """Deterministic agglomerative grouping on 1 - similarity.

    Absent cells count as distance 1. Merges proceed while more than ``k``
    groups remain, or while the closest pair is within ``threshold``; ties
    break on the lexicographically smallest pair of group labels (a group is
    labeled by its smallest member id).
    """
    if linkage not in _LINKAGES:
        raise MalformedInput(f"linkage must be one of {_LINKAGES}, got {linkage!r}")
    if (k is None) == (threshold is None):
        raise MalformedInput("pass exactly one of k or threshold")
    if not matrix.is_square:
        raise MalformedInput("clustering needs a square matrix (same row and column objects)")
    ids = [o.id for o in matrix.row_objects]
    if len(ids) < 2:
        raise MalformedInput("need >= 2 objects to cluster")
    if k is not None and not 1 <= k <= len(ids):
        raise MalformedInput(f"k must be in [1, {len(ids)}]")

    def base_dist(a: str, b: str) -> float:
        v = matrix.value_at(a, b)
        if v is None:
            v = matrix.value_at(b, a)
        return 1.0 if v is None else 1.0 - v

    def group_dist(ga: tuple[str, ...], gb: tuple[str, ...]) -> float:
        dists = [base_dist(a, b) for a in ga for b in gb]
        if linkage == "single":
            return min(dists)
        if linkage == "complete":
            return max(dists)
        return sum(dists) / len(dists)

    groups: list[tuple[str, ...]] = [(i,) for i in ids]
    merges: list[tuple[str, str, float]] = []
    target = k if k is not None else 1
    while len(groups) > target:
        best: tuple[float, tuple[str, str], int, int] | None = None
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                d = group_dist(groups[i], groups[j])
                pair = tuple(sorted((min(groups[i]), min(groups[j]))))
                if best is None or (d, pair) < (best[0], best[1]):
                    best = (d, pair, i, j)
        assert best is not None
        d, pair, i, j = best
        if threshold is not None and d > threshold:
            break
        merged = tuple(sorted(groups[i] + groups[j]))
        groups = [g for idx, g in enumerate(groups) if idx not in (i, j)] + [merged]
        merges.append((pair[0], pair[1], d))

    order = {oid: pos for pos, oid in enumerate(ids)}
    final = [tuple(sorted(g, key=order.__getitem__)) for g in groups]
    final.sort(key=lambda g: order[g[0]])
    return ClusteringResult(groups=tuple(final), merges=tuple(merges))
