"""Topic x emotion cross-tables, proportional differences and skewness groups."""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .corpus import Corpus, sentence_tokens
from .emotions import EMOTIONS, NEGATIVE, POSITIVE, AnnotationError, AnnotationSet, EmotionLabel
from .lda import DEFAULT_BURN_IN, DEFAULT_FOLD_IN_ITERATIONS, LdaModel, infer_topics

logger = logging.getLogger(__name__)


class SkewnessGroup(str, enum.Enum):
    POLARIZED = "polarized"
    NEGATIVELY_SKEWED = "negatively skewed"
    NEUTRALLY_SKEWED = "neutrally skewed"
    POSITIVELY_SKEWED = "positively skewed"
    AVERAGE = "average"
    AVERAGE_POSI_SUBGROUP = "average (POSI)"

    @property
    def display_order(self) -> int:
        return _GROUP_ORDER[self]


_GROUP_ORDER = {g: i for i, g in enumerate(SkewnessGroup)}
_GROUP_ORDER[SkewnessGroup.AVERAGE_POSI_SUBGROUP] = _GROUP_ORDER[SkewnessGroup.AVERAGE]


# ---------------------------------------------------------------------------
# subcorpora

@dataclass(frozen=True)
class EmotionSubcorpus:
    label: EmotionLabel
    tokens: tuple[str, ...]
    n_sentences: int

    @property
    def empty(self) -> bool:
        return self.n_sentences == 0


class Subcorpora(Mapping[EmotionLabel, EmotionSubcorpus]):
    """Emotion subcorpora keyed by label, with the count of unlabeled sentences."""

    def __init__(self, by_label: dict, n_unlabeled: int = 0):
        self.by_label = dict(by_label)
        self.n_unlabeled = n_unlabeled

    def __getitem__(self, label) -> EmotionSubcorpus:
        return self.by_label[EmotionLabel(label)]

    def __iter__(self):
        return iter(self.by_label)

    def __len__(self) -> int:
        return len(self.by_label)

    @property
    def n_sentences(self) -> int:
        return sum(s.n_sentences for s in self.by_label.values())


def build_subcorpora(corpus: Corpus, annotations: AnnotationSet) -> Subcorpora:
    """Group sentence tokens by predicted label; unlabeled sentences are counted, not kept."""
    try:
        annotations.check_against(corpus)
    except AnnotationError as e:
        raise AnnotationError(f"dangling annotation: {e}") from None
    tokens: dict[EmotionLabel, list[str]] = {e: [] for e in EMOTIONS}
    counts = dict.fromkeys(EMOTIONS, 0)
    unlabeled = 0
    for sentence in corpus.sentences():
        pred = annotations.get((sentence.speech_id, sentence.index))
        if pred is None:
            unlabeled += 1
            continue
        tokens[pred.label].extend(sentence_tokens(sentence))
        counts[pred.label] += 1
    return Subcorpora(
        {e: EmotionSubcorpus(e, tuple(tokens[e]), counts[e]) for e in EMOTIONS},
        n_unlabeled=unlabeled,
    )


# ---------------------------------------------------------------------------
# cross-table

@dataclass
class CrossTable:
    """Topic prevalences per emotion subcorpus; rows are topics, columns follow EMOTIONS."""

    topics: list[str]
    prevalence: np.ndarray
    low_support: dict = field(default_factory=dict)

    def __post_init__(self):
        self.prevalence = np.asarray(self.prevalence, dtype=float)
        if self.prevalence.shape != (len(self.topics), len(EMOTIONS)):
            raise ValueError(f"prevalence must be {len(self.topics)} x {len(EMOTIONS)}")

    @property
    def averages(self) -> np.ndarray:
        return topic_averages(self)

    def column(self, label) -> np.ndarray:
        return self.prevalence[:, EMOTIONS.index(EmotionLabel(label))]

    def row(self, topic: str) -> np.ndarray:
        return self.prevalence[self.topics.index(topic)]


def _column_seed(base_seed: int, label: EmotionLabel) -> list[int]:
    return [int(base_seed), EMOTIONS.index(label)]


def topic_prevalences(
    model: LdaModel,
    subcorpora: Mapping[EmotionLabel, EmotionSubcorpus],
    seed: int = 0,
    fold_in_iterations: int = DEFAULT_FOLD_IN_ITERATIONS,
    burn_in: int = DEFAULT_BURN_IN,
    max_tokens: int | None = None,
    topic_labels: Mapping[int, str] | None = None,
) -> CrossTable:
    """Infer one topic distribution per emotion subcorpus, each treated as a single document."""
    if all(sub.n_sentences == 0 for sub in subcorpora.values()):
        raise ValueError("all emotion subcorpora are empty")
    cols = []
    low = {}
    for label in EMOTIONS:
        sub = subcorpora.get(label)
        toks = sub.tokens if sub is not None else ()
        inf = infer_topics(model, toks, fold_in_iterations=fold_in_iterations, burn_in=burn_in,
                           seed=_column_seed(seed, label), max_tokens=max_tokens)
        low[label] = inf.prior_fallback
        if inf.prior_fallback:
            logger.warning("%s subcorpus has no in-vocabulary tokens; using the prior", label.code)
        cols.append(inf.distribution)
    names = topic_labels or {}
    topics = [names.get(i, f"topic {i}") for i in range(model.k)]
    return CrossTable(topics, np.column_stack(cols), low)


def topic_averages(table: CrossTable) -> np.ndarray:
    """Unweighted mean of each topic over the nine emotion columns."""
    return table.prevalence.sum(axis=1) / len(EMOTIONS)


# ---------------------------------------------------------------------------
# proportional differences

@dataclass
class RelativeDifferenceTable:
    topics: list[str]
    values: np.ndarray
    averages: np.ndarray
    excluded: list[str] = field(default_factory=list)

    def rounded(self, decimals: int = 2) -> np.ndarray:
        return np.round(self.values, decimals)

    @property
    def bold_mask(self) -> np.ndarray:
        """Cells over +0.5 at two decimals (0.50 itself is not bold)."""
        return self.rounded(2) > 0.5

    @property
    def under_mask(self) -> np.ndarray:
        return self.rounded(2) <= -0.5

    def row(self, topic: str) -> np.ndarray:
        return self.values[self.topics.index(topic)]

    def cell(self, topic: str, label) -> float:
        return float(self.row(topic)[EMOTIONS.index(EmotionLabel(label))])


def relative_differences(table: CrossTable) -> RelativeDifferenceTable:
    """(prevalence - topic average) / topic average for every cell.

    Topics with a zero average are dropped with a warning.
    """
    avg = topic_averages(table)
    ok = avg > 0
    excluded = [t for t, keep in zip(table.topics, ok) if not keep]
    if excluded:
        warnings.warn(f"topics with zero average prevalence excluded: {excluded}", stacklevel=2)
    vals = (table.prevalence[ok] - avg[ok, None]) / avg[ok, None]
    topics = [t for t, keep in zip(table.topics, ok) if keep]
    return RelativeDifferenceTable(topics, vals, avg[ok], excluded)


# ---------------------------------------------------------------------------
# skewness groups

def _as_row(row) -> dict[EmotionLabel, float]:
    if isinstance(row, Mapping):
        out = {EmotionLabel(k): float(v) for k, v in row.items()}
    else:
        vals = list(row)
        if len(vals) != len(EMOTIONS):
            raise ValueError(f"expected {len(EMOTIONS)} values, got {len(vals)}")
        out = dict(zip(EMOTIONS, map(float, vals)))
    missing = set(EMOTIONS) - set(out)
    if missing:
        raise ValueError(f"row is missing labels {sorted(m.code for m in missing)}")
    return out


def skewness_detail(rel_diff_row, threshold: float = 0.5, decimals: int | None = 2,
                    exclude_posi: bool = True) -> tuple[SkewnessGroup, str]:
    """Skewness group of one topic together with the rule that decided it.

    Rules, on values rounded to ``decimals`` (None compares raw values):

    * ``"a"`` positive and negative over threshold, neutral not: polarized
    * ``"b"`` / ``"c"`` only negative / only positive over threshold
    * ``"d"`` only neutral over threshold
    * ``"e"`` neutral plus some polar category: the largest value decides
      (equal values go to neutral)
    * ``"f"`` nothing over threshold: average, or the POSI subgroup of
      average when POSI alone is over threshold and excluded
    """
    row = _as_row(rel_diff_row)
    if decimals is not None:
        row = {e: round(v, decimals) for e, v in row.items()}
    pos = [e for e in POSITIVE if not (exclude_posi and e is EmotionLabel.POSI)]
    over = {e for e, v in row.items() if v >= threshold}
    over_p = any(e in over for e in pos)
    over_n = any(e in over for e in NEGATIVE)
    over_0 = EmotionLabel.NEUT in over

    if over_0 and (over_p or over_n):
        candidates = [EmotionLabel.NEUT] + [e for e in pos + list(NEGATIVE) if e in over]
        best = max(candidates, key=lambda e: row[e])  # first maximum wins, NEUT listed first
        if best is EmotionLabel.NEUT:
            return SkewnessGroup.NEUTRALLY_SKEWED, "e"
        if best.polarity > 0:
            return SkewnessGroup.POSITIVELY_SKEWED, "e"
        return SkewnessGroup.NEGATIVELY_SKEWED, "e"
    if over_p and over_n:
        return SkewnessGroup.POLARIZED, "a"
    if over_n:
        return SkewnessGroup.NEGATIVELY_SKEWED, "b"
    if over_p:
        return SkewnessGroup.POSITIVELY_SKEWED, "c"
    if over_0:
        return SkewnessGroup.NEUTRALLY_SKEWED, "d"
    if exclude_posi and row[EmotionLabel.POSI] >= threshold:
        return SkewnessGroup.AVERAGE_POSI_SUBGROUP, "f"
    return SkewnessGroup.AVERAGE, "f"


def classify_skewness(rel_diff_row, threshold: float = 0.5, decimals: int | None = 2,
                      exclude_posi: bool = True) -> SkewnessGroup:
    return skewness_detail(rel_diff_row, threshold, decimals, exclude_posi)[0]


def classify_table(table: RelativeDifferenceTable, **kwargs) -> dict[str, SkewnessGroup]:
    return {t: classify_skewness(row, **kwargs) for t, row in zip(table.topics, table.values)}
