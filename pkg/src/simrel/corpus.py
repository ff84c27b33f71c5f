"""Hit-count providers: an offline document index and static hit tables.

The index realizes the event model behind search-engine counts: a term's
singleton event is the set of documents containing it, a pair's doubleton
event is the set containing both. A HitTable is a frozen snapshot of counts
(for example, numbers once returned by a search engine) and is authoritative
as given — inconsistent rows are the caller's problem, not repaired here.
"""

from __future__ import annotations

import csv
import io
import json
import math
import unicodedata
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Literal, Union

from .distances import HitCounts
from .errors import MalformedInput, PairNotFound

INDEX_FORMAT = "simrel-index"
INDEX_VERSION = 1

OmegaMode = Literal["sum-unique", "vocabulary", "documents"]


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    strip_punctuation: bool = True

    def as_dict(self) -> dict:
        return {"lowercase": self.lowercase, "strip_punctuation": self.strip_punctuation}

    @classmethod
    def from_dict(cls, d: dict) -> "TokenizerConfig":
        return cls(bool(d.get("lowercase", True)), bool(d.get("strip_punctuation", True)))


def _strip_edge_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(text: str, config: TokenizerConfig = TokenizerConfig()) -> list[str]:
    """Whitespace split, optional case folding and edge punctuation stripping."""
    tokens = []
    for raw in text.split():
        t = raw.casefold() if config.lowercase else raw
        if config.strip_punctuation:
            t = _strip_edge_punct(t)
        if t:
            tokens.append(t)
    return tokens


@dataclass(frozen=True)
class Term:
    """A normalized query term: a single word or a multi-word phrase."""

    text: str
    kind: Literal["word", "phrase"] = "word"

    @classmethod
    def parse(cls, raw: str, config: TokenizerConfig = TokenizerConfig()) -> "Term":
        tokens = tokenize(raw, config)
        if not tokens:
            raise MalformedInput(f"term {raw!r} is empty after normalization")
        return cls(" ".join(tokens), "word" if len(tokens) == 1 else "phrase")

    def tokens(self) -> list[str]:
        return self.text.split(" ")


@dataclass(frozen=True)
class Document:
    doc_id: str
    tokens: tuple[str, ...]


def _contains_subsequence(tokens: tuple[str, ...], needle: list[str]) -> bool:
    n = len(needle)
    return any(list(tokens[i : i + n]) == needle for i in range(len(tokens) - n + 1))


class CorpusIndex:
    """Immutable inverted index with singleton/doubleton counts.

    omega_cardinality follows ``omega_mode``: the default "sum-unique" adds up
    each document's unique-term count; "vocabulary" and "documents" are the
    set-size and document-count readings, kept for sensitivity checks.
    psi is the sum of doubleton counts over all unordered term pairs.
    """

    def __init__(
        self,
        documents: Iterable[Document],
        tokenizer: TokenizerConfig = TokenizerConfig(),
        omega_mode: OmegaMode = "sum-unique",
    ):
        self.documents: tuple[Document, ...] = tuple(documents)
        if not self.documents:
            raise MalformedInput("corpus must contain at least one document")
        ids = [d.doc_id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise MalformedInput("duplicate document ids in corpus")
        if omega_mode not in ("sum-unique", "vocabulary", "documents"):
            raise MalformedInput(f"unknown omega mode {omega_mode!r}")
        self.tokenizer = tokenizer
        self.omega_mode: OmegaMode = omega_mode
        postings: dict[str, set[str]] = {}
        for doc in self.documents:
            for tok in set(doc.tokens):
                postings.setdefault(tok, set()).add(doc.doc_id)
        self.postings: dict[str, frozenset[str]] = {
            t: frozenset(ds) for t, ds in postings.items()
        }
        # Each document contributes one co-occurrence to every pair of its
        # unique terms, so psi collapses to a per-document combination count.
        self.psi: int = sum(math.comb(len(set(d.tokens)), 2) for d in self.documents)

    @property
    def omega_cardinality(self) -> int:
        if self.omega_mode == "sum-unique":
            return sum(len(set(d.tokens)) for d in self.documents)
        if self.omega_mode == "vocabulary":
            return len(self.postings)
        return len(self.documents)

    def vocabulary(self) -> list[str]:
        return sorted(self.postings)

    def _as_term(self, term: Union[Term, str]) -> Term:
        return term if isinstance(term, Term) else Term.parse(term, self.tokenizer)

    def _doc_set(self, term: Union[Term, str]) -> frozenset[str]:
        t = self._as_term(term)
        if t.kind == "word":
            return self.postings.get(t.text, frozenset())
        needle = t.tokens()
        return frozenset(
            d.doc_id for d in self.documents if _contains_subsequence(d.tokens, needle)
        )

    def singleton_count(self, x: Union[Term, str]) -> int:
        """Number of documents containing x; 0 for unknown terms."""
        return len(self._doc_set(x))

    def doubleton_count(self, x: Union[Term, str], y: Union[Term, str]) -> int:
        """Number of documents containing both x and y; symmetric in x, y."""
        return len(self._doc_set(x) & self._doc_set(y))

    def probability(self, event: Union[Term, str, tuple]) -> float:
        """Event count over omega_cardinality."""
        omega = self.omega_cardinality
        if omega <= 0:
            raise MalformedInput("probability undefined: omega cardinality is zero")
        if isinstance(event, tuple):
            x, y = event
            return self.doubleton_count(x, y) / omega
        return self.singleton_count(event) / omega

    def psi_normalized(self, x: Union[Term, str], y: Union[Term, str] | None = None) -> float:
        """Singleton or doubleton count over psi."""
        if self.psi <= 0:
            raise MalformedInput("psi-normalized count undefined: psi is zero")
        count = self.singleton_count(x) if y is None else self.doubleton_count(x, y)
        return count / self.psi

    def psi_brute_force(self) -> int:
        """Independent psi: explicit double loop over unordered vocabulary pairs."""
        return sum(
            self.doubleton_count(Term(a), Term(b))
            for a, b in combinations(self.vocabulary(), 2)
        )

    def stats(self) -> dict:
        omega = self.omega_cardinality
        return {
            "documents": len(self.documents),
            "vocabulary": len(self.postings),
            "omega_cardinality": omega,
            "psi": self.psi,
            "psi_ge_omega": self.psi >= omega,
        }

    # --- persistence -----------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "tokenizer": self.tokenizer.as_dict(),
            "omega_mode": self.omega_mode,
            "documents": [
                {"id": d.doc_id, "tokens": list(d.tokens)} for d in self.documents
            ],
            "vocabulary": self.vocabulary(),
            "postings": {t: sorted(ds) for t, ds in self.postings.items()},
            "omega_cardinality": self.omega_cardinality,
            "psi": self.psi,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_json(cls, text: str) -> "CorpusIndex":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"index file is not valid JSON: {exc}") from exc
        if not isinstance(payload, dict) or payload.get("format") != INDEX_FORMAT:
            raise MalformedInput("not a simrel index file (bad magic header)")
        if payload.get("version") != INDEX_VERSION:
            raise MalformedInput(f"unsupported index version {payload.get('version')!r}")
        docs = [Document(d["id"], tuple(d["tokens"])) for d in payload["documents"]]
        idx = cls(
            docs,
            tokenizer=TokenizerConfig.from_dict(payload.get("tokenizer", {})),
            omega_mode=payload.get("omega_mode", "sum-unique"),
        )
        if idx.psi != payload.get("psi") or idx.omega_cardinality != payload.get(
            "omega_cardinality"
        ):
            raise MalformedInput("index file is internally inconsistent")
        return idx

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CorpusIndex":
        p = Path(path)
        if not p.is_file():
            raise MalformedInput(f"index file not found: {p}")
        return cls.from_json(p.read_text(encoding="utf-8"))


def build_index(
    documents: Iterable[tuple[str, str]],
    tokenizer: TokenizerConfig = TokenizerConfig(),
    omega_mode: OmegaMode = "sum-unique",
) -> CorpusIndex:
    """Index raw (doc_id, text) pairs. Deterministic for a fixed input order."""
    docs = [Document(doc_id, tuple(tokenize(text, tokenizer))) for doc_id, text in documents]
    return CorpusIndex(docs, tokenizer=tokenizer, omega_mode=omega_mode)


def _normalize_table_term(raw: str) -> str:
    text = " ".join(raw.split()).casefold()
    if not text:
        raise MalformedInput("hit table term is empty")
    return text


class HitTable:
    """Static (term_x, term_y) -> counts snapshot with optional index size N.

    Rows are stored under the unordered pair; lookups swap f_x/f_y to match
    the queried order. Counts are taken as given, never repaired.
    """

    HEADER = ("term_x", "term_y", "f_x", "f_y", "f_xy")

    def __init__(self, n_total: int | None = None):
        self.n_total = n_total
        self._rows: dict[tuple[str, str], tuple[int, int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def add_row(self, term_x: str, term_y: str, f_x: int, f_y: int, f_xy: int) -> None:
        x, y = _normalize_table_term(term_x), _normalize_table_term(term_y)
        if min(f_x, f_y, f_xy) < 0:
            raise MalformedInput("hit counts must be non-negative")
        key = (x, y) if x <= y else (y, x)
        if key in self._rows:
            raise MalformedInput(f"duplicate pair ({x!r}, {y!r}) in hit table")
        counts = (f_x, f_y, f_xy) if x <= y else (f_y, f_x, f_xy)
        self._rows[key] = counts

    def lookup(self, x: str, y: str) -> HitCounts:
        xt, yt = _normalize_table_term(x), _normalize_table_term(y)
        key = (xt, yt) if xt <= yt else (yt, xt)
        if key not in self._rows:
            raise PairNotFound(f"pair ({xt!r}, {yt!r}) not in hit table")
        f_first, f_second, f_xy = self._rows[key]
        if xt == key[0]:
            return HitCounts(f_first, f_second, f_xy, self.n_total)
        return HitCounts(f_second, f_first, f_xy, self.n_total)

    @classmethod
    def from_text(cls, text: str) -> "HitTable":
        n_total = None
        data_lines = []
        for line in text.splitlines():
            stripped = line.strip()
            if stripped.startswith("#"):
                body = stripped[1:].strip()
                if body.upper().startswith("N="):
                    try:
                        n_total = int(body[2:])
                    except ValueError as exc:
                        raise MalformedInput(f"bad N metadata line: {stripped!r}") from exc
                continue
            if stripped:
                data_lines.append(line)
        if not data_lines:
            raise MalformedInput("hit table has no header row")
        reader = csv.reader(io.StringIO("\n".join(data_lines)))
        header = tuple(h.strip() for h in next(reader))
        if header != cls.HEADER:
            raise MalformedInput(
                f"hit table header must be {','.join(cls.HEADER)}, got {','.join(header)}"
            )
        table = cls(n_total=n_total)
        for row in reader:
            if not row:
                continue
            if len(row) != 5:
                raise MalformedInput(f"hit table row needs 5 fields: {row!r}")
            try:
                counts = [int(v) for v in row[2:]]
            except ValueError as exc:
                raise MalformedInput(f"non-integer count in row {row!r}") from exc
            table.add_row(row[0], row[1], *counts)
        return table

    @classmethod
    def load(cls, path: Union[str, Path]) -> "HitTable":
        p = Path(path)
        if not p.is_file():
            raise MalformedInput(f"hit table file not found: {p}")
        return cls.from_text(p.read_text(encoding="utf-8"))


Provider = Union[CorpusIndex, HitTable]


def hit_counts(provider: Provider, x: Union[Term, str], y: Union[Term, str]) -> HitCounts:
    """Bridge a provider to the distance functions.

    Index providers answer (singleton, singleton, doubleton, N=document
    count) and their counts are consistent by construction; table providers
    answer the stored row, warned but unrepaired if inconsistent.
    """
    if isinstance(provider, CorpusIndex):
        return HitCounts(
            provider.singleton_count(x),
            provider.singleton_count(y),
            provider.doubleton_count(x, y),
            len(provider.documents),
        ).validate_index_derived()
    if isinstance(provider, HitTable):
        x_text = x.text if isinstance(x, Term) else x
        y_text = y.text if isinstance(y, Term) else y
        return provider.lookup(x_text, y_text)
    raise MalformedInput(f"unknown provider type {type(provider).__name__}")
