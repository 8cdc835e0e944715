"""Evaluation measures, the parameter sweep, and string-similarity baselines.

A machine mapping is scored against a human gold standard by exact triple
identity: a mapping with the right synset but the wrong relation counts as
incorrect.  The F-measure defaults to beta = 0.5, weighting precision over
recall.  The sweep runs every grid point as an independent pure computation
over shared read-only inputs, so results never depend on worker count.
"""

from __future__ import annotations

import warnings as _warnings
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from time import perf_counter
from typing import Sequence

from vocmap.mapper import MapperConfig, map_vocabulary
from vocmap.vocab import Mapping, MappingRelation, MappingSet, Provenance
from vocmap.wordnet import SynsetId, WordNetStore


@dataclass(frozen=True)
class EvalResult:
    precision: float
    recall: float
    f_measure: float
    beta: float
    n_machine: int
    n_gold: int
    n_correct: int


def precision_recall(machine: MappingSet,
                     gold: MappingSet) -> tuple[float, float]:
    """Precision and recall of a machine mapping against a gold standard.

    Both are 0 by convention when their denominator set is empty.
    """
    m, g = machine.triples, gold.triples
    correct = len(m & g)
    precision = correct / len(m) if m else 0.0
    recall = correct / len(g) if g else 0.0
    return precision, recall


def f_measure(precision: float, recall: float, beta: float = 0.5) -> float:
    """Weighted harmonic mean of precision and recall; beta < 1 favors
    precision.  Zero when the denominator vanishes."""
    denominator = beta * beta * precision + recall
    if denominator == 0:
        return 0.0
    return (1 + beta * beta) * precision * recall / denominator


def evaluate(machine: MappingSet, gold: MappingSet,
             beta: float = 0.5) -> EvalResult:
    precision, recall = precision_recall(machine, gold)
    return EvalResult(
        precision=precision,
        recall=recall,
        f_measure=f_measure(precision, recall, beta),
        beta=beta,
        n_machine=len(machine.triples),
        n_gold=len(gold.triples),
        n_correct=len(machine.triples & gold.triples),
    )


# ---------------------------------------------------------------------------
# Parameter sweep

#: Default frequency thresholds: 0-5, then 10 to 100 in tens, plus 150 and
#: 200 to round the dimension out to 18 values.
DEFAULT_F_MIN_VALUES: tuple[int, ...] = (
    0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 150, 200)


@dataclass(frozen=True)
class SweepGrid:
    """The parameter grid: 2 taxonomy options x 11 overlap thresholds x 18
    frequency thresholds = 396 combinations by default."""

    taxonomy_options: tuple[bool, ...] = (False, True)
    ol_min_values: tuple[int, ...] = tuple(range(11))
    f_min_values: tuple[int, ...] = DEFAULT_F_MIN_VALUES

    def points(self) -> list[tuple[bool, int, int]]:
        """Grid points as (taxonomy_on, f_min, ol_min), in output order."""
        return [
            (taxonomy_on, f_min, ol_min)
            for taxonomy_on in sorted(set(self.taxonomy_options))
            for f_min in sorted(set(self.f_min_values))
            for ol_min in sorted(set(self.ol_min_values))
        ]

    def __len__(self) -> int:
        return len(self.points())


@dataclass(frozen=True)
class SweepRow:
    config: MapperConfig
    result: EvalResult
    n_mappings: int
    wall_ms: float = field(compare=False, default=0.0)

    @property
    def taxonomy_on(self) -> bool:
        return self.config.taxonomy is not None


def run_sweep(vocabulary, store: WordNetStore, gold: MappingSet,
              grid: SweepGrid | None = None,
              taxonomy: frozenset[SynsetId] | None = None,
              workers: int = 10) -> list[SweepRow]:
    """Evaluate every grid point; one row per point, in grid order.

    The salient-taxonomy closure must be precomputed and passed in when the
    grid includes the taxonomy-on option; it is shared across all points.
    """
    grid = grid if grid is not None else SweepGrid()
    points = grid.points()
    if taxonomy is None and any(on for on, _, _ in points):
        raise ValueError(
            "grid includes taxonomy=on but no taxonomy closure was provided")
    if gold.triples and not ({t for t, _, _ in gold.triples}
                             & set(vocabulary.terms)):
        _warnings.warn("gold standard shares no terms with the vocabulary")

    def _evaluate_point(point: tuple[bool, int, int]) -> SweepRow:
        taxonomy_on, f_min, ol_min = point
        config = MapperConfig(ol_min=ol_min, f_min=f_min,
                              taxonomy=taxonomy if taxonomy_on else None)
        started = perf_counter()
        mapping = map_vocabulary(vocabulary, store, config)
        result = evaluate(mapping, gold)
        return SweepRow(config=config, result=result,
                        n_mappings=len(mapping),
                        wall_ms=(perf_counter() - started) * 1000.0)

    if workers <= 1:
        return [_evaluate_point(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_point, points))


@dataclass(frozen=True)
class SummaryRow:
    parameter: str
    value: str
    mean_precision: float
    mean_recall: float
    mean_f_measure: float
    best_precision: bool = False
    best_recall: bool = False
    best_f_measure: bool = False


_PARAMETER_KEYS = {
    "taxonomy": lambda row: "on" if row.taxonomy_on else "off",
    "f_min": lambda row: row.config.f_min,
    "ol_min": lambda row: row.config.ol_min,
}


def summarize(rows: Sequence[SweepRow], parameter: str) -> list[SummaryRow]:
    """Mean precision/recall/F per value of one parameter, with the best
    value per column flagged."""
    try:
        key = _PARAMETER_KEYS[parameter]
    except KeyError:
        raise ValueError(f"unknown parameter: {parameter!r}") from None
    groups: dict = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row.result)
    means = []
    for value, results in groups.items():
        n = len(results)
        means.append((
            value,
            sum(r.precision for r in results) / n,
            sum(r.recall for r in results) / n,
            sum(r.f_measure for r in results) / n,
        ))
    means.sort(key=lambda item: str(item[0]) if parameter == "taxonomy"
               else item[0])
    best_p = max(m[1] for m in means)
    best_r = max(m[2] for m in means)
    best_f = max(m[3] for m in means)
    return [
        SummaryRow(parameter=parameter, value=str(value),
                   mean_precision=p, mean_recall=r, mean_f_measure=f,
                   best_precision=(p == best_p), best_recall=(r == best_r),
                   best_f_measure=(f == best_f))
        for value, p, r, f in means
    ]


def upper_bounds(rows: Sequence[SweepRow]) -> tuple[float, float, float]:
    """Per-column maxima over all sweep rows."""
    return (
        max(row.result.precision for row in rows),
        max(row.result.recall for row in rows),
        max(row.result.f_measure for row in rows),
    )


def sweep_tsv(rows: Sequence[SweepRow], include_timings: bool = False) -> bytes:
    """Sweep rows as TSV.  Timings are written as 0 unless requested, so the
    default output is byte-reproducible."""
    lines = ["taxonomy\tf_min\tol_min\tprecision\trecall\tf_measure"
             "\tn_mappings\twall_ms"]
    for row in rows:
        wall_ms = int(round(row.wall_ms)) if include_timings else 0
        lines.append(
            f"{'on' if row.taxonomy_on else 'off'}\t{row.config.f_min}"
            f"\t{row.config.ol_min}\t{row.result.precision:.4f}"
            f"\t{row.result.recall:.4f}\t{row.result.f_measure:.4f}"
            f"\t{row.n_mappings}\t{wall_ms}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def summary_tsv(rows: Sequence[SweepRow]) -> bytes:
    """Per-parameter mean table plus an upper-bounds row.  Best values per
    column carry a trailing asterisk."""
    def _cell(value: float, best: bool) -> str:
        return f"{value:.4f}*" if best else f"{value:.4f}"

    lines = ["parameter\tvalue\tmean_precision\tmean_recall\tmean_f_measure"]
    for parameter in ("taxonomy", "f_min", "ol_min"):
        for s in summarize(rows, parameter):
            lines.append(
                f"{s.parameter}\t{s.value}"
                f"\t{_cell(s.mean_precision, s.best_precision)}"
                f"\t{_cell(s.mean_recall, s.best_recall)}"
                f"\t{_cell(s.mean_f_measure, s.best_f_measure)}"
            )
    max_p, max_r, max_f = upper_bounds(rows)
    lines.append(f"upper_bound\t-\t{max_p:.4f}\t{max_r:.4f}\t{max_f:.4f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Trigram string-similarity baseline

_PAD_START = "\x02"
_PAD_END = "\x03"


def _trigrams(text: str) -> Counter:
    padded = _PAD_START * 2 + text + _PAD_END * 2
    return Counter(padded[i:i + 3] for i in range(len(padded) - 2))


def trigram_similarity(a: str, b: str) -> float:
    """Dice coefficient over boundary-padded character trigram multisets."""
    ta, tb = _trigrams(a), _trigrams(b)
    shared = sum((ta & tb).values())
    total = sum(ta.values()) + sum(tb.values())
    return 2.0 * shared / total if total else 0.0


def trigram_baseline_mapping(vocabulary, store: WordNetStore,
                             threshold: float,
                             strategy: str = "labels") -> MappingSet:
    """Fuzzy string-matching baseline.

    The 'labels' strategy compares term labels against word-sense lemmas;
    'definitions' compares term definitions against synset glosses.  Every
    pair at or above the threshold yields a related mapping, and all
    matching senses are kept: the baseline has no notion of sense salience.
    """
    if strategy not in ("labels", "definitions"):
        raise ValueError(f"unknown strategy: {strategy!r}")
    mappings: list[Mapping] = []
    for uri in sorted(vocabulary.terms):
        term = vocabulary.terms[uri]
        if strategy == "labels":
            label = " ".join(term.pref_label.lower().split())
            for lemma in sorted(store.lemma_index):
                similarity = trigram_similarity(label, lemma.replace("_", " "))
                if similarity < threshold:
                    continue
                for ws in store.lookup_senses(lemma):
                    mappings.append(Mapping(
                        term=uri, relation=MappingRelation.RELATED,
                        synset=store.synset_name(ws.synset),
                        score=min(similarity, 1.0),
                        provenance=Provenance.LABEL, source_word=lemma,
                    ))
        else:
            definition = (term.definition or "").lower()
            for sid in sorted(store.synsets, key=lambda s: s.offset):
                similarity = trigram_similarity(definition,
                                                store.gloss(sid).lower())
                if similarity < threshold:
                    continue
                mappings.append(Mapping(
                    term=uri, relation=MappingRelation.RELATED,
                    synset=store.synset_name(sid),
                    score=min(similarity, 1.0),
                    provenance=Provenance.DEFINITION,
                    source_word=store.synsets[sid].senses[0].lemma,
                ))
    return MappingSet(mappings)
