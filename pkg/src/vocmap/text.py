"""Tokenization, noun lemmatization, and lexical-overlap machinery.

Definitions and glosses are reduced to bags of distinct lowercase lemmas:
tokenize, drop stopwords, apply suffix-detachment rules against the store's
lemma inventory, de-duplicate, and remove the lemmas of the term being
defined.  Lexical overlap between two such bags is the size of their
intersection.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from typing import Iterable

_TOKEN_RE = re.compile(r"[a-z0-9-]+")

#: Suffix-detachment rules tried in order; the first candidate present in the
#: store's lemma index wins.
NOUN_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("ies", "y"),
    ("men", "man"),
)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    """The English stopword list shipped with the package."""
    text = resources.files("vocmap").joinpath("data/stopwords_en.txt") \
        .read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def tokenize(text: str) -> list[str]:
    """Lowercase maximal runs of letters, digits, and hyphens, in order."""
    tokens = []
    for match in _TOKEN_RE.findall(text.lower()):
        token = match.strip("-")
        if token:
            tokens.append(token)
    return tokens


def lemmatize_noun(token: str, store) -> str:
    """Reduce a token to a base noun form known to the store.

    The irregular-form map is consulted first, then the suffix rules in
    order; the token is returned unchanged when nothing matches.
    """
    base = store.exceptions.get(token)
    if base:
        return base
    for suffix, replacement in NOUN_SUFFIX_RULES:
        if token.endswith(suffix):
            candidate = token[: len(token) - len(suffix)] + replacement
            if candidate and store.has_lemma(candidate):
                return candidate
    return token


def normalize_definition(text: str, exclude: Iterable[str], store,
                         stopwords: frozenset[str]) -> frozenset[str]:
    """Reduce free text to its bag of distinct content lemmas.

    ``exclude`` carries the lemmas of the term the text defines; they never
    appear in the result.  Stopwords are filtered both before and after
    lemmatization so none can enter a bag.
    """
    bag: set[str] = set()
    for token in tokenize(text):
        if token in stopwords:
            continue
        lemma = lemmatize_noun(token, store)
        if lemma in stopwords:
            continue
        bag.add(lemma)
    return frozenset(bag - set(exclude))


def lexical_overlap(a: Iterable[str], b: Iterable[str]) -> int:
    """Number of distinct lemmas shared by two normalized bags."""
    return len(frozenset(a) & frozenset(b))


def compound_candidates(label: str) -> list[str]:
    """Lexical forms for a label: the full collocation first, then each
    constituent token as a fallback for labels with several words."""
    tokens = tokenize(label)
    if len(tokens) <= 1:
        return tokens
    return ["_".join(tokens)] + tokens


def extract_definition_terms(definition: str | None, store,
                             stopwords: frozenset[str],
                             exclude: Iterable[str] = ()) -> list[str]:
    """Terms worth mapping from a lexical definition, in first-occurrence
    order.

    Adjacent token pairs that form a collocation known to the store are kept
    whole and their parts dropped; remaining tokens survive if they are
    non-stopword lemmas with at least one noun sense.  ``exclude`` removes
    the defined term's own label forms.
    """
    excluded = frozenset(exclude)
    tokens = tokenize(definition or "")
    found: list[str] = []
    seen: set[str] = set()

    def _push(lemma: str) -> None:
        if lemma not in seen and lemma not in excluded:
            seen.add(lemma)
            found.append(lemma)

    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens):
            bigram = lemmatize_noun(tokens[i] + "_" + tokens[i + 1], store)
            if store.has_lemma(bigram):
                _push(bigram)
                i += 2
                continue
        token = tokens[i]
        if token not in stopwords:
            lemma = lemmatize_noun(token, store)
            if store.has_lemma(lemma):
                _push(lemma)
        i += 1
    return found
