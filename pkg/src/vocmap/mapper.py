"""Core mapping algorithm: candidate generation, salience scoring, selection.

For each vocabulary term, word senses whose lemma lexically matches one of
the term's label forms become candidates.  Three salience filters prune
them: a minimum sense usage frequency, a minimum lexical overlap between the
term's definition and the synset gloss, and (optionally) membership of a
salient taxonomy.  Survivors are scored by a normalized combination of the
frequency rank, the overlap rank, and the taxonomy flag; the best candidate
yields the mapping.  A second pass maps terms extracted from the lexical
definition, always with the 'related' relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from vocmap.text import (
    compound_candidates,
    default_stopwords,
    extract_definition_terms,
    lemmatize_noun,
    normalize_definition,
    tokenize,
)
from vocmap.vocab import Mapping, MappingRelation, MappingSet, Provenance, Term
from vocmap.wordnet import SynsetId, WordNetStore, WordSense


class MatchKind(Enum):
    PARTIAL = "partial"
    COMPLETE = "complete"


@dataclass(frozen=True)
class MapperConfig:
    """Mapping parameters.

    ``taxonomy`` of None means the salient taxonomy coincides with the whole
    store: nothing is filtered and every candidate gets the taxonomy point.
    ``seed`` only drives the random baseline.
    """

    ol_min: int = 0
    f_min: int = 0
    taxonomy: frozenset[SynsetId] | None = None
    use_alt_labels: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.ol_min < 0:
            raise ValueError("ol_min must be >= 0")
        if self.f_min < 0:
            raise ValueError("f_min must be >= 0")


@dataclass(frozen=True)
class Candidate:
    """A surviving (synset, word sense) pair with its indicator values."""

    synset: SynsetId
    word_sense: WordSense
    match_kind: MatchKind
    f: int
    ol: int
    theta: int


def lexical_match(lemma: str, label: str) -> MatchKind | None:
    """Match a word-sense lemma against a label.

    Complete when the lemma's token sequence equals the label's; partial
    when it occurs as a contiguous subsequence; None otherwise.
    """
    lemma_tokens = [t for t in lemma.split("_") if t]
    label_tokens = tokenize(label)
    if not lemma_tokens or not label_tokens:
        return None
    if lemma_tokens == label_tokens:
        return MatchKind.COMPLETE
    width = len(lemma_tokens)
    for i in range(len(label_tokens) - width + 1):
        if label_tokens[i:i + width] == lemma_tokens:
            return MatchKind.PARTIAL
    return None


def _matching_senses(label: str, store: WordNetStore):
    """All (sense, kind) pairs whose lemma lexically matches the label.

    Equivalent to testing every sense in the store with lexical_match, but
    driven by the lemma index: every contiguous token subsequence of the
    label is a potential lemma.
    """
    tokens = tokenize(label)
    matches: list[tuple[WordSense, MatchKind]] = []
    tried: set[str] = set()
    for i in range(len(tokens)):
        for j in range(i + 1, len(tokens) + 1):
            lemma = "_".join(tokens[i:j])
            if lemma in tried:
                continue
            tried.add(lemma)
            kind = MatchKind.COMPLETE if (i == 0 and j == len(tokens)) \
                else MatchKind.PARTIAL
            for ws in store.lookup_senses(lemma):
                matches.append((ws, kind))
    return matches


def find_candidates(term: Term, label: str, store: WordNetStore,
                    config: MapperConfig,
                    _gloss_bags: dict | None = None) -> list[Candidate]:
    """Candidates for one lexical form of a term, after all three filters."""
    stopwords = default_stopwords()
    exclude = {lemmatize_noun(t, store) for t in tokenize(term.pref_label)}
    term_bag = normalize_definition(term.definition or "", exclude, store,
                                    stopwords)
    gloss_bags = _gloss_bags if _gloss_bags is not None else {}

    candidates: list[Candidate] = []
    for ws, kind in _matching_senses(label, store):
        sid = ws.synset
        if config.taxonomy is not None and sid not in config.taxonomy:
            continue
        # survivors are always members: no taxonomy means the whole store
        # counts as salient, and an active one already filtered non-members
        theta = 1
        if ws.tag_frequency < config.f_min:
            continue
        if sid not in gloss_bags:
            gloss_bags[sid] = normalize_definition(store.gloss(sid), (),
                                                   store, stopwords)
        ol = len(term_bag & gloss_bags[sid])
        if ol < config.ol_min:
            continue
        candidates.append(Candidate(synset=sid, word_sense=ws,
                                    match_kind=kind, f=ws.tag_frequency,
                                    ol=ol, theta=theta))
    return candidates


def rank_desc(values: Sequence[float]) -> list[int]:
    """Descending competition ranks: 1 + the count of strictly greater
    values; ties share a rank."""
    return [1 + sum(1 for other in values if other > v) for v in values]


def salience(candidate: Candidate, candidates: Sequence[Candidate]) -> float:
    """Normalized salience of one candidate within its candidate set.

    With n candidates: (2n - rank(f) - rank(ol) + theta) / (2n - 1),
    which always lands in [0, 1].
    """
    n = len(candidates)
    rank_f = 1 + sum(1 for c in candidates if c.f > candidate.f)
    rank_ol = 1 + sum(1 for c in candidates if c.ol > candidate.ol)
    return (2 * n - rank_f - rank_ol + candidate.theta) / (2 * n - 1)


def select_best(candidates: Sequence[Candidate]) -> Candidate:
    """The candidate with maximum salience.

    Ties break deterministically: higher frequency, then lower synset
    offset, then lemma and sense number.
    """
    if not candidates:
        raise ValueError("cannot select from an empty candidate set")
    return min(
        candidates,
        key=lambda c: (-salience(c, candidates), -c.f, c.synset.offset,
                       c.word_sense.lemma, c.word_sense.sense_number),
    )


def assign_relation(best: Candidate,
                    candidates: Sequence[Candidate]) -> MappingRelation:
    """Close only for a complete match that also maximizes both overlap and
    frequency over the candidate set; related otherwise.  Never exact."""
    max_ol = max(c.ol for c in candidates)
    max_f = max(c.f for c in candidates)
    if (best.match_kind is MatchKind.COMPLETE
            and best.ol == max_ol and best.f == max_f):
        return MappingRelation.CLOSE
    return MappingRelation.RELATED


def find_semantic_mapping(term: Term, store: WordNetStore,
                          config: MapperConfig,
                          _gloss_bags: dict | None = None) -> Mapping | None:
    """Map one term to its best synset, or None when no form yields
    candidates.

    Label forms are tried in order: the full collocation of the preferred
    label, then its constituent tokens, then (when enabled) the same
    sequence for each alternative label.  The first form with a non-empty
    candidate set wins.
    """
    forms: list[str] = []
    labels = (term.pref_label,) + (term.alt_labels if config.use_alt_labels
                                   else ())
    for label in labels:
        for form in compound_candidates(label):
            if form not in forms:
                forms.append(form)
    for form in forms:
        candidates = find_candidates(term, form, store, config, _gloss_bags)
        if not candidates:
            continue
        best = select_best(candidates)
        return Mapping(
            term=term.uri,
            relation=assign_relation(best, candidates),
            synset=store.synset_name(best.synset),
            score=salience(best, candidates),
            provenance=Provenance.LABEL,
            source_word=form,
        )
    return None


def _definition_exclusions(term: Term, store: WordNetStore) -> set[str]:
    # the term's own label forms never become definition-derived targets
    exclude = set(compound_candidates(term.pref_label))
    exclude.update(lemmatize_noun(t, store) for t in tokenize(term.pref_label))
    return exclude


def map_vocabulary(vocabulary, store: WordNetStore,
                   config: MapperConfig) -> MappingSet:
    """Map every term of a vocabulary: a label-derived mapping where one
    exists, plus a related mapping for each term extracted from the lexical
    definition.  Terms are processed in lexicographic URI order."""
    stopwords = default_stopwords()
    gloss_bags: dict = {}
    mappings: list[Mapping] = []
    warnings: list[str] = []
    for uri in sorted(vocabulary.terms):
        term = vocabulary.terms[uri]
        label_mapping = find_semantic_mapping(term, store, config, gloss_bags)
        if label_mapping is not None:
            mappings.append(label_mapping)
        else:
            warnings.append(f"no label mapping for <{uri}>")
        for d in extract_definition_terms(term.definition, store, stopwords,
                                          exclude=_definition_exclusions(term, store)):
            # the extracted term inherits the source definition so its gloss
            # overlap is judged against the context it was found in
            d_term = Term(uri=uri, pref_label=d, definition=term.definition)
            d_mapping = find_semantic_mapping(d_term, store, config, gloss_bags)
            if d_mapping is None:
                continue
            mappings.append(Mapping(
                term=uri,
                relation=MappingRelation.RELATED,
                synset=d_mapping.synset,
                score=d_mapping.score,
                provenance=Provenance.DEFINITION,
                source_word=d,
            ))
    return MappingSet(mappings, config=config, warnings=warnings)


def random_baseline_mapping(vocabulary, store: WordNetStore,
                            seed: int = 0) -> MappingSet:
    """Disambiguation baseline: among the lexically matching senses of each
    term (no filters), pick one uniformly at random.

    Every emitted relation is 'related'.  Draws come from a per-term
    generator seeded with (seed, term URI), so results are reproducible and
    independent of vocabulary-wide ordering.
    """
    stopwords = default_stopwords()
    mappings: list[Mapping] = []

    def _pick(rng: random.Random, label: str) -> tuple[WordSense, str] | None:
        for form in compound_candidates(label):
            senses = sorted(
                {ws for ws, _ in _matching_senses(form, store)},
                key=lambda ws: (ws.synset.offset, ws.lemma, ws.sense_number),
            )
            if senses:
                return rng.choice(senses), form
        return None

    for uri in sorted(vocabulary.terms):
        term = vocabulary.terms[uri]
        rng = random.Random(f"{seed}:{uri}")
        picked = _pick(rng, term.pref_label)
        if picked is not None:
            ws, form = picked
            mappings.append(Mapping(
                term=uri, relation=MappingRelation.RELATED,
                synset=store.synset_name(ws.synset), score=0.0,
                provenance=Provenance.LABEL, source_word=form,
            ))
        for d in extract_definition_terms(term.definition, store, stopwords,
                                          exclude=_definition_exclusions(term, store)):
            picked = _pick(rng, d)
            if picked is None:
                continue
            ws, _ = picked
            mappings.append(Mapping(
                term=uri, relation=MappingRelation.RELATED,
                synset=store.synset_name(ws.synset), score=0.0,
                provenance=Provenance.DEFINITION, source_word=d,
            ))
    return MappingSet(mappings)
