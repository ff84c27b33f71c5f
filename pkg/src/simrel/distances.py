"""Distance and similarity functionals over complexities and hit counts.

All log-based measures use natural logarithms internally; every result here
is a ratio of logs, so the base cancels.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Sequence

from . import compressor
from .errors import MalformedInput, UndefinedSimilarity


class SimilarityKind(str, Enum):
    NID = "nid"
    NCD = "ncd"
    NSD = "nsd"
    NGD = "ngd"
    METRIC_M = "metric-m"
    DICE = "dice"
    INFO_DIST = "info-dist"


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    kind: SimilarityKind

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class HitCounts:
    """Hit counts for a term pair: f(x), f(y), their co-occurrence, and index size N."""

    f_x: int
    f_y: int
    f_xy: int
    n_total: int | None = None

    def __post_init__(self) -> None:
        if min(self.f_x, self.f_y, self.f_xy) < 0:
            raise MalformedInput("hit counts must be non-negative")
        if self.n_total is not None and self.n_total <= 0:
            raise MalformedInput("index size N must be positive")

    def warn_if_inconsistent(self) -> None:
        # Live search engines really do return f(x,y) > min(f(x), f(y));
        # user-supplied tables are taken as given, with a warning.
        if self.f_xy > min(self.f_x, self.f_y):
            warnings.warn(
                f"f_xy={self.f_xy} exceeds min(f_x, f_y)={min(self.f_x, self.f_y)}; "
                "counts look inconsistent, proceeding anyway",
                stacklevel=3,
            )
        if self.n_total is not None and self.n_total < max(self.f_x, self.f_y):
            warnings.warn(
                f"N={self.n_total} is below max(f_x, f_y); proceeding anyway",
                stacklevel=3,
            )

    def validate_index_derived(self) -> "HitCounts":
        if self.f_xy > min(self.f_x, self.f_y):
            raise MalformedInput("index-derived counts must satisfy f_xy <= min(f_x, f_y)")
        if self.n_total is not None and self.n_total < max(self.f_x, self.f_y):
            raise MalformedInput("index-derived counts must satisfy N >= max(f_x, f_y)")
        return self


def information_distance(k_x, k_y, k_x_given_y) -> SimilarityScore:
    """Conditional complexity minus the smaller plain complexity, unclamped.

    The defining text calls this non-negative, but on real compressor output
    it can go below zero; the value is returned exactly as computed.
    """
    for v in (k_x, k_y, k_x_given_y):
        if not math.isfinite(float(v)):
            raise MalformedInput("complexities must be finite")
    return SimilarityScore(float(k_x_given_y - min(k_x, k_y)), SimilarityKind.INFO_DIST)


def nid(k_x, k_y, k_x_given_y) -> SimilarityScore:
    """Normalized information distance: (K(x|y) - min) / max."""
    hi = max(k_x, k_y)
    if hi <= 0:
        raise UndefinedSimilarity("nid needs max(K_x, K_y) > 0")
    return SimilarityScore(float((k_x_given_y - min(k_x, k_y)) / hi), SimilarityKind.NID)


def ncd(c_x, c_y, c_x_given_y) -> SimilarityScore:
    """Normalized compression distance over compressed lengths in bits.

    The numerator takes the conditional length |C(x|y)|, the form the worked
    reference arithmetic validates. For the textbook concatenation variant
    see :func:`ncd_from_strings`.
    """
    hi = max(c_x, c_y)
    if hi <= 0:
        raise UndefinedSimilarity("ncd needs max(c_x, c_y) > 0")
    return SimilarityScore(float((c_x_given_y - min(c_x, c_y)) / hi), SimilarityKind.NCD)


def ncd_from_strings(
    x: compressor.BitString,
    y: compressor.BitString,
    *,
    mode: str = "conditional",
    share_by: str = "value",
) -> SimilarityScore:
    """NCD computed directly from two bit strings with the nibble compressor.

    ``mode="conditional"`` uses |C(x|keys(y))| in the numerator (the default,
    matching the validated arithmetic); ``mode="concatenation"`` uses |C(xy)|
    (the textbook definition).
    """
    c_x = compressor.compress(x).length_bits
    c_y = compressor.compress(y).length_bits
    if mode == "conditional":
        top = compressor.compress_conditional(
            x, compressor.compress(y).emitted, share_by=share_by
        ).length_bits
    elif mode == "concatenation":
        top = compressor.compress(x + y).length_bits
    else:
        raise MalformedInput(f"mode must be 'conditional' or 'concatenation', got {mode!r}")
    return ncd(c_x, c_y, top)


def nsd(h: HitCounts) -> SimilarityScore:
    """Normalized search engine distance: (f_xy - min(f_x, f_y)) / max(f_x, f_y).

    The pair-sum normalizer cancels out of the ratio, leaving plain counts.
    """
    hi = max(h.f_x, h.f_y)
    if hi <= 0:
        raise UndefinedSimilarity("nsd needs at least one nonzero count")
    h.warn_if_inconsistent()
    return SimilarityScore((h.f_xy - min(h.f_x, h.f_y)) / hi, SimilarityKind.NSD)


def ngd(h: HitCounts) -> SimilarityScore:
    """Google distance: (max log f - log f_xy) / (log N - min log f)."""
    if h.n_total is None:
        raise UndefinedSimilarity("N required: ngd needs the index size")
    if min(h.f_x, h.f_y, h.f_xy) <= 0:
        raise UndefinedSimilarity("ngd needs all three counts positive")
    if h.n_total <= min(h.f_x, h.f_y):
        raise UndefinedSimilarity("ngd needs N greater than min(f_x, f_y)")
    h.warn_if_inconsistent()
    lx, ly, lxy = math.log(h.f_x), math.log(h.f_y), math.log(h.f_xy)
    value = (max(lx, ly) - lxy) / (math.log(h.n_total) - min(lx, ly))
    return SimilarityScore(value, SimilarityKind.NGD)


def dice_similarity(f_x: int, f_y: int, f_xy: int, c: float = 0.0) -> SimilarityScore:
    """Dice coefficient 2*f_xy / (f_x + f_y), plus an optional offset c.

    c defaults to 0; the offset printed in the derivation (c = 1) would push
    the value outside [0, 1], so it is left to the caller to request.
    """
    if f_x + f_y <= 0:
        raise UndefinedSimilarity("dice needs f_x + f_y > 0")
    return SimilarityScore(2 * f_xy / (f_x + f_y) + c, SimilarityKind.DICE)


def metric_m(h: HitCounts) -> SimilarityScore:
    """Similarity metric M: log(2 * f_xy) / log(f_x + f_y).

    Undefined at f_xy = 0 — that is an error, never silently 0, because a
    coerced 0 would land in the lowest relation category and corrupt it.
    """
    if h.f_xy < 1:
        raise UndefinedSimilarity("metric M is undefined at f_xy = 0")
    if h.f_x + h.f_y < 2:
        raise UndefinedSimilarity("metric M needs f_x + f_y >= 2")
    h.warn_if_inconsistent()
    return SimilarityScore(
        math.log(2 * h.f_xy) / math.log(h.f_x + h.f_y), SimilarityKind.METRIC_M
    )


def similarity_from_counts(kind: SimilarityKind | str, h: HitCounts) -> SimilarityScore:
    """Evaluate a similarity kind against hit counts.

    nid and ncd have no direct hit-count reading; for providers they are
    served by the count-based normalized form (f_xy - min)/max, which is how
    the compression distance rewrites for search-engine codes. The returned
    score keeps the requested kind label.
    """
    kind = SimilarityKind(kind)
    if kind == SimilarityKind.METRIC_M:
        return metric_m(h)
    if kind == SimilarityKind.DICE:
        return dice_similarity(h.f_x, h.f_y, h.f_xy)
    if kind == SimilarityKind.NGD:
        return ngd(h)
    if kind in (SimilarityKind.NSD, SimilarityKind.NCD, SimilarityKind.NID):
        return SimilarityScore(nsd(h).value, kind)
    raise MalformedInput(f"kind {kind.value!r} cannot be computed from hit counts")


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    counterexamples: tuple[tuple, ...]


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]
    undefined_pairs: tuple[tuple[Hashable, Hashable], ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def check_similarity_axioms(
    sim: Callable[[Hashable, Hashable], float],
    items: Sequence[Hashable],
    *,
    tol: float = 1e-9,
) -> AxiomReport:
    """Probe a similarity function for the axioms a proximity must satisfy.

    Evaluates ``sim`` over every ordered pair of ``items`` and records
    counterexamples for: non-negativity, symmetry, self-dominance
    s(x,y) <= s(x,x), and range within [0, 1]. Pairs where ``sim`` raises
    :class:`UndefinedSimilarity` are reported as undefined, not failed;
    failures are data for the caller, never exceptions.
    """
    if not items:
        raise MalformedInput("need at least one item to check axioms")
    n = len(items)
    values: dict[tuple[int, int], float] = {}
    undefined: list[tuple[Hashable, Hashable]] = []
    for i in range(n):
        for j in range(n):
            try:
                values[(i, j)] = float(sim(items[i], items[j]))
            except UndefinedSimilarity:
                undefined.append((items[i], items[j]))

    def pair(i: int, j: int) -> tuple[Hashable, Hashable]:
        return (items[i], items[j])

    nonneg = [(*pair(i, j), v) for (i, j), v in values.items() if v < 0]
    symmetry = [
        (*pair(i, j), values[(i, j)], values[(j, i)])
        for i in range(n)
        for j in range(i + 1, n)
        if (i, j) in values
        and (j, i) in values
        and abs(values[(i, j)] - values[(j, i)]) > tol
    ]
    dominance = [
        (*pair(i, j), v, values[(i, i)])
        for (i, j), v in values.items()
        if (i, i) in values and v > values[(i, i)] + tol
    ]
    out_of_range = [(*pair(i, j), v) for (i, j), v in values.items() if v < 0 or v > 1 + tol]

    checks = (
        AxiomCheck("non-negativity", not nonneg, tuple(nonneg)),
        AxiomCheck("symmetry", not symmetry, tuple(symmetry)),
        AxiomCheck("self-dominance", not dominance, tuple(dominance)),
        AxiomCheck("range-[0,1]", not out_of_range, tuple(out_of_range)),
    )
    return AxiomReport(checks=checks, undefined_pairs=tuple(undefined))
