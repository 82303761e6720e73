"""Synthetic corpora with known proximity hits, plus a brute-force oracle."""

import random

import numpy as np

from clubgood.congestion_index import CorpusDocument

GLOBAL_TERMS = ["globalization", "free trade", "immigration"]
DISORDER_TERMS = ["chaos", "crisis", "overwhelmed", "strain on", "polarization"]
QUERY_JSON = {"group_a": GLOBAL_TERMS, "group_b": DISORDER_TERMS, "window": 50}

FILLER = [
    "the", "a", "of", "market", "policy", "port", "court", "city", "budget", "tariff",
    "school", "road", "vote", "county", "wage", "factory", "senate", "border", "bridge",
    "housing", "agency", "report", "rail", "loan", "health", "said", "year", "new",
]
SEPARATORS = [" ", " ", " ", ", ", ". ", " - ", "\n", "; ", " (", ") ", "—", "' "]


def render(tokens, rng):
    """Join tokens with random punctuation and casing that tokenize() undoes."""
    out = []
    for i, tok in enumerate(tokens):
        if rng.random() < 0.1:
            tok = tok.upper() if rng.random() < 0.5 else tok.capitalize()
        out.append(tok)
        if i < len(tokens) - 1:
            out.append(rng.choice(SEPARATORS))
    return "".join(out)


def brute_force_hit(tokens, group_a, group_b, window):
    """Every start position of every term, then every (a, b) pair checked."""
    arr = np.array(tokens, dtype=str)
    n = len(arr)

    def starts(terms):
        found = np.zeros(n, dtype=bool)
        for term in terms:
            words = term.split()
            if len(words) > n:
                continue
            match = np.ones(n - len(words) + 1, dtype=bool)
            for k, w in enumerate(words):
                match &= arr[k : n - len(words) + 1 + k] == w
            found[: len(match)] |= match
        return np.flatnonzero(found)

    if n == 0:
        return False
    a, b = starts(group_a), starts(group_b)
    if not len(a) or not len(b):
        return False
    return bool((np.abs(a[:, None] - b[None, :]) <= window).any())


def random_document(rng, max_tokens=1000):
    """Random token list with query words sprinkled in at a random density."""
    n = rng.randint(0, max_tokens)
    tokens = rng.choices(FILLER, k=n)
    vocab_terms = [t.split() for t in GLOBAL_TERMS + DISORDER_TERMS]
    density = 10 ** rng.uniform(-3.5, -1)
    for _ in range(int(n * density * 2 * rng.random()) + rng.randint(0, 1)):
        term = rng.choice(vocab_terms)
        pos = rng.randint(0, max(n - len(term), 0))
        tokens[pos : pos + len(term)] = term
    return tokens[:n]


def planted_document(rng, doc_id, year, hit, window=50, source=None):
    """Document with exactly one A term and at most one B term.

    ``hit`` docs put the pair within ``window`` (boundary included); misses
    either drop one side or push the pair just beyond reach.
    """
    length = rng.randint(2 * window + 20, 3 * window + 200)
    tokens = [rng.choice(FILLER) for _ in range(length)]
    first = rng.choice(GLOBAL_TERMS).split()
    second = rng.choice(DISORDER_TERMS).split()
    if rng.random() < 0.5:
        first, second = second, first
    start = rng.randint(0, 10)
    if hit:
        gap = rng.choice([len(first), window, rng.randint(len(first), window)])
    elif rng.random() < 0.5:
        tokens[start : start + len(first)] = first
        return CorpusDocument(doc_id, year, render(tokens, rng), source)
    else:
        gap = rng.choice([window + 1, rng.randint(window + 1, 2 * window)])
    tokens[start : start + len(first)] = first
    tokens[start + gap : start + gap + len(second)] = second
    return CorpusDocument(doc_id, year, render(tokens, rng), source)


def planted_corpus(seed=0, years=range(2000, 2025), sources=("nyt", "ap", "congress")):
    """Corpus with a known number of hits per year (and per source)."""
    rng = random.Random(seed)
    docs, truth, totals, by_source = [], {}, {}, {}
    for year in years:
        n = rng.randint(5, 30)
        hits = rng.randint(0, n)
        flags = [True] * hits + [False] * (n - hits)
        rng.shuffle(flags)
        truth[year], totals[year] = hits, n
        for i, flag in enumerate(flags):
            src = rng.choice(sources)
            docs.append(planted_document(rng, f"{year}-{i:03d}", year, flag, source=src))
            key = (src, year)
            c, t = by_source.get(key, (0, 0))
            by_source[key] = (c + flag, t + 1)
    rng.shuffle(docs)
    return docs, truth, totals, by_source
