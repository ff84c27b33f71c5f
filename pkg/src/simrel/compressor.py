"""Nibble-key dictionary compressor and compression-based complexity scores.

The scheme scans a bit string four bits at a time. Each distinct nibble gets a
single-symbol key; the compressed form is the key-symbol stream plus the key
table. Costs are fixed: 1 bit per stream symbol, 4 bits per emitted key table
entry, so |C(w)| = n_symbols + 4 * n_emitted_entries.

Conditional compression reuses keys already available for another string:
shared keys still appear in the stream but their table entries are not
emitted, which is what makes related strings compress shorter.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import MalformedInput

NIBBLE_BITS = 4
SYMBOL_COST_BITS = 1
ENTRY_COST_BITS = 4

_BITS_RE = re.compile(r"^[01]*$")


@dataclass(frozen=True)
class BitString:
    """An immutable sequence of binary digits, stored as a '0'/'1' text."""

    bits: str

    def __post_init__(self) -> None:
        if not _BITS_RE.match(self.bits):
            raise MalformedInput("bit string may contain only 0 and 1")

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        """Parse the text format: 0/1 characters with whitespace ignored."""
        return cls(re.sub(r"\s+", "", text))

    @classmethod
    def from_bytes(cls, raw: bytes) -> "BitString":
        """Interpret raw bytes as bits, most significant bit first."""
        return cls("".join(f"{b:08b}" for b in raw))

    @property
    def length(self) -> int:
        return len(self.bits)

    def nibbles(self) -> list[str]:
        if self.length % NIBBLE_BITS != 0:
            raise MalformedInput(
                f"bit string length {self.length} is not divisible by {NIBBLE_BITS}"
            )
        return [self.bits[i : i + NIBBLE_BITS] for i in range(0, self.length, NIBBLE_BITS)]

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(self.bits + other.bits)

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True)
class KeyEntry:
    """One key table row: a symbol naming a 4-bit nibble value."""

    symbol: str
    nibble: str

    def __post_init__(self) -> None:
        if not re.match(r"^[01]{4}$", self.nibble):
            raise MalformedInput(f"key {self.symbol!r}: nibble must be 4 binary digits")
        if not self.symbol or "=" in self.symbol or self.symbol.split() != [self.symbol]:
            raise MalformedInput(f"invalid key symbol {self.symbol!r}")


class KeyDictionary:
    """An ordered key table. Symbols are unique; nibble values may repeat.

    Repeated values are legal at the type level because published key tables
    sometimes contain them; the compressor decides how strictly to treat that.
    """

    def __init__(self, entries: Iterable[KeyEntry] = ()):
        self.entries: tuple[KeyEntry, ...] = tuple(entries)
        seen = set()
        for e in self.entries:
            if e.symbol in seen:
                raise MalformedInput(f"duplicate key symbol {e.symbol!r}")
            seen.add(e.symbol)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[KeyEntry]:
        return iter(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KeyDictionary) and self.entries == other.entries

    def __repr__(self) -> str:
        body = " ".join(f"{e.symbol}={e.nibble}" for e in self.entries)
        return f"KeyDictionary({body})"

    def symbols(self) -> set[str]:
        return {e.symbol for e in self.entries}

    def values(self) -> set[str]:
        return {e.nibble for e in self.entries}

    def has_duplicate_values(self) -> bool:
        return len(self.values()) < len(self.entries)

    def symbol_for(self, nibble: str) -> str | None:
        """First entry matching the nibble value, honouring table order."""
        for e in self.entries:
            if e.nibble == nibble:
                return e.symbol
        return None

    def nibble_for(self, symbol: str) -> str | None:
        for e in self.entries:
            if e.symbol == symbol:
                return e.nibble
        return None

    @classmethod
    def from_text(cls, text: str) -> "KeyDictionary":
        """Parse the line format ``<symbol>=<4 binary digits>``, order-significant."""
        entries = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise MalformedInput(f"key dictionary line {lineno}: expected symbol=bits")
            symbol, _, nibble = line.partition("=")
            entries.append(KeyEntry(symbol.strip(), nibble.strip()))
        return cls(entries)

    def to_text(self) -> str:
        return "".join(f"{e.symbol}={e.nibble}\n" for e in self.entries)


@dataclass(frozen=True)
class CompressedForm:
    """Result of one compression run.

    ``emitted`` holds the table entries that count toward the length;
    ``shared`` holds entries used by the stream but presumed already known.
    """

    symbols: tuple[str, ...]
    emitted: KeyDictionary
    shared: KeyDictionary = field(default_factory=KeyDictionary)
    source_bits: int = 0

    @property
    def length_bits(self) -> int:
        return len(self.symbols) * SYMBOL_COST_BITS + len(self.emitted) * ENTRY_COST_BITS

    def resolving_table(self) -> KeyDictionary:
        return KeyDictionary(tuple(self.emitted) + tuple(self.shared))


@dataclass(frozen=True)
class ComplexityScore:
    """Approximate complexity: compressed length over source length, plus overhead q."""

    value: Fraction
    q_overhead: Fraction = Fraction(0)

    def __float__(self) -> float:
        return float(self.value)


def _auto_symbol(taken: set[str], counter: int) -> tuple[str, int]:
    # Auto names are k1, k2, ... in order of first appearance, skipping any
    # symbol a preset already claimed.
    while True:
        counter += 1
        name = f"k{counter}"
        if name not in taken:
            return name, counter


def compress(w: BitString, preset: KeyDictionary | None = None) -> CompressedForm:
    """Compress ``w`` nibble by nibble.

    Without a preset, keys are auto-created on first appearance and the whole
    table is emitted. With a preset, the given table is adopted verbatim:
    every preset entry is emitted (used or not), nibbles resolve to the first
    matching entry, and nibbles the preset does not cover get auto-appended
    keys. The preset path exists to evaluate externally supplied key tables
    as-is, including ones whose values repeat.
    """
    nibs = w.nibbles()
    if preset is not None and preset.has_duplicate_values():
        warnings.warn(
            "preset key table maps one nibble value to several symbols; "
            "using first match per value",
            stacklevel=2,
        )
    entries: list[KeyEntry] = list(preset) if preset is not None else []
    taken = {e.symbol for e in entries}
    by_value: dict[str, str] = {}
    for e in entries:
        by_value.setdefault(e.nibble, e.symbol)
    stream: list[str] = []
    counter = 0
    for nib in nibs:
        sym = by_value.get(nib)
        if sym is None:
            sym, counter = _auto_symbol(taken, counter)
            taken.add(sym)
            by_value[nib] = sym
            entries.append(KeyEntry(sym, nib))
        stream.append(sym)
    return CompressedForm(
        symbols=tuple(stream), emitted=KeyDictionary(entries), source_bits=w.length
    )


def compress_conditional(
    x: BitString, y_keys: KeyDictionary, share_by: str = "value"
) -> CompressedForm:
    """Compress ``x`` reusing keys already developed for another string.

    The scan is the auto scan of :func:`compress`; keys found in ``y_keys``
    are used in the stream but excluded from the emitted table. Matching is
    by nibble value by default. ``share_by="symbol"`` matches on key NAMES
    instead, for key tables that number their symbols in a namespace shared
    with ``x``'s table (first string gets k1.., the next continues).
    """
    if share_by not in ("value", "symbol"):
        raise MalformedInput(f"share_by must be 'value' or 'symbol', got {share_by!r}")
    auto = compress(x)
    if share_by == "value":
        shared_pred = lambda e: e.nibble in y_keys.values()
    else:
        shared_pred = lambda e: e.symbol in y_keys.symbols()
    emitted = [e for e in auto.emitted if not shared_pred(e)]
    shared = [e for e in auto.emitted if shared_pred(e)]
    return CompressedForm(
        symbols=auto.symbols,
        emitted=KeyDictionary(emitted),
        shared=KeyDictionary(shared),
        source_bits=x.length,
    )


def decompress(form: CompressedForm) -> BitString:
    """Rebuild the source bits from the symbol stream and its key table.

    Exact for auto-built forms; conditional forms decompress through the
    union of emitted and shared entries.
    """
    table = {e.symbol: e.nibble for e in form.resolving_table()}
    try:
        return BitString("".join(table[s] for s in form.symbols))
    except KeyError as exc:
        raise MalformedInput(f"symbol {exc.args[0]!r} missing from key table") from exc


def approx_complexity(
    w: BitString,
    conditional_on: KeyDictionary | None = None,
    *,
    preset: KeyDictionary | None = None,
    q: Fraction | int = 0,
    share_by: str = "value",
) -> ComplexityScore:
    """Compressed length over source length, plus program-length overhead q.

    Ratios are exact rationals so worked values like 34/40 = 0.85 compare
    exactly. q defaults to 0, which is what the reference arithmetic uses.
    """
    if w.length == 0:
        raise MalformedInput("cannot score an empty bit string")
    if conditional_on is not None and preset is not None:
        raise MalformedInput("pass either conditional_on or preset, not both")
    if conditional_on is not None:
        form = compress_conditional(w, conditional_on, share_by=share_by)
    else:
        form = compress(w, preset)
    q = Fraction(q)
    return ComplexityScore(value=Fraction(form.length_bits, w.length) + q, q_overhead=q)


def shared_information(
    x: BitString,
    y: BitString | None = None,
    *,
    y_keys: KeyDictionary | None = None,
    share_by: str = "value",
) -> Fraction:
    """Information shared with x: complexity of x minus its conditional complexity.

    ``y_keys`` may stand in for ``y`` when only the key table is known.
    """
    if (y is None) == (y_keys is None):
        raise MalformedInput("pass exactly one of y or y_keys")
    if y_keys is None:
        y_keys = compress(y).emitted
    plain = approx_complexity(x)
    conditional = approx_complexity(x, conditional_on=y_keys, share_by=share_by)
    return plain.value - conditional.value
