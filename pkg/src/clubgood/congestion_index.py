"""Proximity co-occurrence counts over a dated text corpus.

A document is a hit when some term of group A starts within ``window`` tokens
of some term of group B (``|pA - pB| <= window``, first-token positions).
Tokens are lowercase runs of letters and digits; everything else separates,
so ``free-trade`` matches the phrase ``free trade``. No stemming.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

_TOKEN_RE = re.compile(r"[^\W_]+")

MIN_YEAR, MAX_YEAR = 1900, 2100
DEFAULT_WINDOW = 50


class CorpusError(ValueError):
    pass


class SeriesError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    year: int
    text: str
    source_tag: str | None = None

    def __post_init__(self):
        if not isinstance(self.doc_id, str) or not self.doc_id:
            raise CorpusError("doc_id must be a non-empty string")
        if isinstance(self.year, bool) or not isinstance(self.year, int):
            raise CorpusError(f"{self.doc_id}: year must be an integer")
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise CorpusError(f"{self.doc_id}: year {self.year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        if not isinstance(self.text, str):
            raise CorpusError(f"{self.doc_id}: text must be a string")


def _as_term(term) -> tuple[str, ...]:
    words = tokenize(term) if isinstance(term, str) else [w.lower() for w in term]
    if not words or any(not w for w in words):
        raise ValueError(f"empty term: {term!r}")
    return tuple(words)


@dataclass(frozen=True)
class ProximityQuery:
    group_a: tuple[tuple[str, ...], ...]
    group_b: tuple[tuple[str, ...], ...]
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        a = tuple(_as_term(t) for t in self.group_a)
        b = tuple(_as_term(t) for t in self.group_b)
        if not a or not b:
            raise ValueError("both term groups must be non-empty")
        if isinstance(self.window, bool) or not isinstance(self.window, int) or self.window < 1:
            raise ValueError("window must be a positive integer")
        object.__setattr__(self, "group_a", a)
        object.__setattr__(self, "group_b", b)

    @classmethod
    def from_json(cls, data: dict) -> "ProximityQuery":
        try:
            return cls(data["group_a"], data["group_b"], data.get("window", DEFAULT_WINDOW))
        except KeyError as exc:
            raise ValueError(f"query is missing field {exc.args[0]!r}") from None

    def to_json(self) -> dict:
        return {
            "group_a": [" ".join(t) for t in self.group_a],
            "group_b": [" ".join(t) for t in self.group_b],
            "window": self.window,
        }


def find_term_positions(tokens: Sequence[str], term: Sequence[str]) -> list[int]:
    """Start positions of every (possibly overlapping) occurrence of ``term``."""
    n = len(term)
    if n == 0:
        raise ValueError("term must be non-empty")
    first = term[0]
    term = list(term)
    return [
        i
        for i in range(len(tokens) - n + 1)
        if tokens[i] == first and (n == 1 or list(tokens[i : i + n]) == term)
    ]


def _positions_by_word(tokens: Sequence[str]) -> dict[str, list[int]]:
    where: dict[str, list[int]] = {}
    for i, tok in enumerate(tokens):
        where.setdefault(tok, []).append(i)
    return where


def _group_positions(tokens, terms, where=None) -> list[int]:
    if where is None:
        where = _positions_by_word(tokens)
    positions = set()
    for term in terms:
        n = len(term)
        for i in where.get(term[0], ()):
            if n == 1 or tuple(tokens[i : i + n]) == term:
                positions.add(i)
    return sorted(positions)


def _within(a: list[int], b: list[int], window: int) -> bool:
    # two-pointer sweep over sorted positions
    i = j = 0
    while i < len(a) and j < len(b):
        if abs(a[i] - b[j]) <= window:
            return True
        if a[i] < b[j]:
            i += 1
        else:
            j += 1
    return False


def tokens_hit(tokens: Sequence[str], query: ProximityQuery) -> bool:
    where = _positions_by_word(tokens)
    a = _group_positions(tokens, query.group_a, where)
    if not a:
        return False
    b = _group_positions(tokens, query.group_b, where)
    return _within(a, b, query.window)


def document_hit(doc: CorpusDocument, query: ProximityQuery) -> bool:
    return tokens_hit(tokenize(doc.text), query)


def occurrence_count(doc: CorpusDocument, query: ProximityQuery) -> int:
    """Group-A occurrences that have some group-B occurrence within the window."""
    tokens = tokenize(doc.text)
    where = _positions_by_word(tokens)
    a = _group_positions(tokens, query.group_a, where)
    b = _group_positions(tokens, query.group_b, where)
    if not a or not b:
        return 0
    count = 0
    for p in a:
        k = bisect.bisect_left(b, p - query.window)
        if k < len(b) and b[k] <= p + query.window:
            count += 1
    return count


@dataclass
class IndexSeries:
    label: str
    counts: dict[int, int] = field(default_factory=dict)
    totals: dict[int, int] = field(default_factory=dict)
    # "documents" (hits are documents) or "occurrences" (may exceed totals)
    unit: str = "documents"

    def __post_init__(self):
        if self.unit not in ("documents", "occurrences"):
            raise SeriesError(f"unknown unit {self.unit!r}")
        self.counts = {int(y): int(c) for y, c in sorted(self.counts.items())}
        self.totals = {int(y): int(t) for y, t in sorted(self.totals.items())}
        for y, c in self.counts.items():
            if c < 0:
                raise SeriesError(f"negative count for {y}")
            if self.unit == "documents" and y in self.totals and c > self.totals[y]:
                raise SeriesError(f"count exceeds total for {y}")

    @property
    def years(self) -> list[int]:
        return sorted(set(self.counts) | set(self.totals))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["year", "count" if self.unit == "documents" else "occurrences", "total"])
        for y in self.years:
            w.writerow([y, self.counts.get(y, 0), self.totals.get(y, "")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, label: str = "") -> "IndexSeries":
        reader = csv.DictReader(io.StringIO(text))
        names = set(reader.fieldnames or ())
        if "year" not in names or not names & {"count", "occurrences"}:
            raise SeriesError("index CSV needs 'year' and 'count' columns")
        key = "count" if "count" in names else "occurrences"
        counts, totals = {}, {}
        for row in reader:
            try:
                y = int(row["year"])
                counts[y] = int(row[key])
                if row.get("total") not in (None, ""):
                    totals[y] = int(row["total"])
            except ValueError as exc:
                raise SeriesError(f"bad index CSV row {row}: {exc}") from None
        return cls(label, counts, totals, "documents" if key == "count" else "occurrences")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "counts": {str(y): c for y, c in self.counts.items()},
            "totals": {str(y): t for y, t in self.totals.items()},
            "unit": self.unit,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IndexSeries":
        return cls(
            d["label"],
            {int(y): c for y, c in d["counts"].items()},
            {int(y): t for y, t in d["totals"].items()},
            d.get("unit", "documents"),
        )


def read_corpus(path: str | Path) -> Iterator[CorpusDocument]:
    """Stream documents from a newline-delimited JSON file."""
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                doc = CorpusDocument(
                    doc_id=obj["doc_id"],
                    year=obj["year"],
                    text=obj["text"],
                    source_tag=obj.get("source_tag"),
                )
            except (json.JSONDecodeError, KeyError, TypeError, CorpusError) as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from None
            if doc.doc_id in seen:
                raise CorpusError(f"{path}:{lineno}: duplicate doc_id {doc.doc_id!r}")
            seen.add(doc.doc_id)
            yield doc


def write_corpus(docs: Iterable[CorpusDocument], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for d in docs:
            obj = {"doc_id": d.doc_id, "year": d.year, "source_tag": d.source_tag, "text": d.text}
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _score_chunk(args) -> list[tuple[int, int]]:
    docs, query, per_occurrence = args
    score = occurrence_count if per_occurrence else (lambda d, q: int(document_hit(d, q)))
    return [(d.year, score(d, query)) for d in docs]


def _chunks(items: list, size: int):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def build_index(
    corpus: Iterable[CorpusDocument],
    query: ProximityQuery,
    source_filter: str | None = None,
    label: str = "",
    workers: int = 1,
    per_occurrence: bool = False,
) -> IndexSeries:
    """Yearly hit counts for ``query`` over ``corpus``.

    By default each document contributes at most one hit. With
    ``per_occurrence`` the count is the number of group-A occurrences with a
    group-B partner in range, which can exceed the document total.
    """
    docs = [d for d in corpus if source_filter is None or d.source_tag == source_filter]
    totals = Counter(d.year for d in docs)
    counts: Counter = Counter({y: 0 for y in totals})

    if workers > 1 and len(docs) > 1:
        size = max(1, -(-len(docs) // (4 * workers)))
        jobs = [(chunk, query, per_occurrence) for chunk in _chunks(docs, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            scored = pool.map(_score_chunk, jobs)
            for part in scored:
                for year, n in part:
                    counts[year] += n
    else:
        for year, n in _score_chunk((docs, query, per_occurrence)):
            counts[year] += n

    unit = "occurrences" if per_occurrence else "documents"
    return IndexSeries(label, dict(counts), dict(totals), unit)


def growth_ratio(series: IndexSeries, year_from: int, year_to: int) -> float:
    for y in (year_from, year_to):
        if y not in series.counts:
            raise SeriesError(f"year {y} missing from series {series.label!r}")
    base = series.counts[year_from]
    if base == 0:
        raise SeriesError(f"zero baseline count in {year_from}")
    return series.counts[year_to] / base


def placebo_compare(
    treatment: IndexSeries, control: IndexSeries, year_from: int, year_to: int
) -> tuple[float, float, float]:
    t = growth_ratio(treatment, year_from, year_to)
    c = growth_ratio(control, year_from, year_to)
    if c == 0:
        raise SeriesError("control series falls to zero; divergence undefined")
    return t, c, t / c
