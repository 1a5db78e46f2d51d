"""Time-indexed analytics over monthly three-month windows."""

from __future__ import annotations

import datetime as dt
import logging
import math
import warnings
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Corpus, Speech, sentence_tokens
from .emotions import EMOTIONS, EmotionLabel
from .lda import DEFAULT_BURN_IN, DEFAULT_FOLD_IN_ITERATIONS, LdaModel, infer_topics
from .stats import ols_fit

logger = logging.getLogger(__name__)


class MissingPredictionError(KeyError):
    pass


def month_ordinal(year: int, month: int) -> int:
    return year * 12 + (month - 1)


def ordinal_month(ordinal: int) -> tuple[int, int]:
    return divmod(ordinal, 12)[0], ordinal % 12 + 1


@dataclass(frozen=True, order=True)
class TimeWindow:
    """``span`` consecutive calendar months located by an anchor month.

    Trailing windows end at the anchor; centered windows straddle it.
    """

    anchor: int  # month ordinal
    span: int = 3
    alignment: str = "trailing"

    @classmethod
    def at(cls, year: int, month: int, span: int = 3, alignment: str = "trailing") -> "TimeWindow":
        return cls(month_ordinal(year, month), span, alignment)

    @property
    def first_month(self) -> int:
        if self.alignment == "trailing":
            return self.anchor - self.span + 1
        if self.alignment == "centered":
            return self.anchor - (self.span - 1) // 2
        raise ValueError(f"unknown window alignment {self.alignment!r}")

    @property
    def last_month(self) -> int:
        return self.first_month + self.span - 1

    @property
    def months(self) -> range:
        return range(self.first_month, self.last_month + 1)

    @property
    def start(self) -> dt.date:
        y, m = ordinal_month(self.first_month)
        return dt.date(y, m, 1)

    @property
    def end(self) -> dt.date:
        y, m = ordinal_month(self.last_month + 1)
        return dt.date(y, m, 1) - dt.timedelta(days=1)

    @property
    def label(self) -> str:
        y, m = ordinal_month(self.last_month)
        return f"{y:04d}-{m:02d}"

    @property
    def center_date(self) -> dt.date:
        return self.start + (self.end - self.start) / 2

    def __contains__(self, date: dt.date) -> bool:
        return self.first_month <= month_ordinal(date.year, date.month) <= self.last_month


def monthly_windows(first: tuple[int, int], last: tuple[int, int], span: int = 3,
                    alignment: str = "trailing") -> list[TimeWindow]:
    """Windows advancing one month at a time, each lying wholly inside [first, last]."""
    lo = month_ordinal(*first)
    hi = month_ordinal(*last)
    out = []
    for anchor in range(lo, hi + 1):
        w = TimeWindow(anchor, span, alignment)
        if w.first_month >= lo and w.last_month <= hi:
            out.append(w)
    return out


def corpus_windows(corpus: Corpus, span: int = 3, alignment: str = "trailing") -> list[TimeWindow]:
    if not len(corpus):
        return []
    months = [s.month for s in corpus]
    return monthly_windows(min(months), max(months), span, alignment)


def _speeches_by_month(corpus: Corpus) -> dict[int, list[Speech]]:
    out: dict[int, list[Speech]] = defaultdict(list)
    for s in corpus:
        out[month_ordinal(*s.month)].append(s)
    return out


# ---------------------------------------------------------------------------
# weighted average sentiment

@dataclass(frozen=True)
class WasPoint:
    window: TimeWindow
    was: float
    n_speeches: int


@dataclass(frozen=True)
class YearlyWas:
    year: int
    was: float
    n_speeches: int


def speech_was(speech: Speech, annotations: Mapping, missing: str = "error") -> float:
    """Mean over sentences of polarity(label) * probability.

    ``missing="skip"`` averages over the annotated sentences only.
    """
    total = 0.0
    covered = 0
    for s in speech.sentences:
        pred = annotations.get((speech.id, s.index))
        if pred is None:
            if missing == "error":
                raise MissingPredictionError(f"speech {speech.id!r} sentence {s.index} has no prediction")
            continue
        total += pred.label.polarity * pred.probability
        covered += 1
    if covered == 0:
        raise MissingPredictionError(f"speech {speech.id!r} has no annotated sentences")
    if covered < len(speech.sentences):
        warnings.warn(f"speech {speech.id!r}: WAS over {covered}/{len(speech.sentences)} sentences",
                      stacklevel=2)
    return total / covered


def _was_by_month(corpus, annotations, missing) -> dict[int, list[float]]:
    out: dict[int, list[float]] = defaultdict(list)
    for speech in corpus:
        out[month_ordinal(*speech.month)].append(speech_was(speech, annotations, missing))
    return out


def rolling_was(corpus: Corpus, annotations: Mapping, windows: Sequence[TimeWindow],
                missing: str = "error") -> list[WasPoint]:
    """Unweighted mean speech WAS per window; windows without speeches are omitted."""
    by_month = _was_by_month(corpus, annotations, missing)
    points = []
    for w in windows:
        vals = [v for m in w.months for v in by_month.get(m, ())]
        if vals:
            points.append(WasPoint(w, math.fsum(vals) / len(vals), len(vals)))
    return points


def yearly_was(corpus: Corpus, annotations: Mapping, missing: str = "error") -> list[YearlyWas]:
    by_year: dict[int, list[float]] = defaultdict(list)
    for speech in corpus:
        by_year[speech.date.year].append(speech_was(speech, annotations, missing))
    return [YearlyWas(y, math.fsum(v) / len(v), len(v)) for y, v in sorted(by_year.items())]


# ---------------------------------------------------------------------------
# emotion shares

@dataclass(frozen=True)
class EmotionSharePoint:
    window: TimeWindow
    label: EmotionLabel
    share: float


def _prob_sums_by_month(corpus: Corpus, annotations: Mapping) -> dict[int, np.ndarray]:
    col = {e: i for i, e in enumerate(EMOTIONS)}
    out: dict[int, np.ndarray] = {}
    for speech in corpus:
        m = month_ordinal(*speech.month)
        acc = out.setdefault(m, np.zeros(len(EMOTIONS)))
        for s in speech.sentences:
            pred = annotations.get((speech.id, s.index))
            if pred is not None:
                acc[col[pred.label]] += pred.probability
    return out


def rolling_emotion_shares(corpus: Corpus, annotations: Mapping,
                           windows: Sequence[TimeWindow]) -> list[EmotionSharePoint]:
    """Per window: summed label probabilities over the window's total probability."""
    by_month = _prob_sums_by_month(corpus, annotations)
    points = []
    for w in windows:
        acc = np.zeros(len(EMOTIONS))
        for m in w.months:
            if m in by_month:
                acc += by_month[m]
        total = acc.sum()
        if total <= 0:
            continue
        points.extend(EmotionSharePoint(w, e, float(v)) for e, v in zip(EMOTIONS, acc / total))
    return points


# ---------------------------------------------------------------------------
# topic-emotion series

@dataclass
class TopicEmotionSeries:
    topic: int
    label: EmotionLabel
    windows: list[TimeWindow]
    values: np.ndarray  # NaN marks a gap

    @property
    def gaps(self) -> np.ndarray:
        return np.isnan(self.values)

    @property
    def n_points(self) -> int:
        return int((~self.gaps).sum())

    def points(self) -> list[tuple[TimeWindow, float]]:
        return [(w, float(v)) for w, v in zip(self.windows, self.values) if not math.isnan(v)]


def topic_emotion_series(
    model: LdaModel,
    corpus: Corpus,
    annotations: Mapping,
    windows: Sequence[TimeWindow],
    seed: int = 0,
    fold_in_iterations: int = DEFAULT_FOLD_IN_ITERATIONS,
    burn_in: int = DEFAULT_BURN_IN,
    max_tokens: int | None = None,
) -> dict[tuple[int, EmotionLabel], TopicEmotionSeries]:
    """Topic prevalences of each (window, label) document, split into one series per pair.

    A window's document for a label is every sentence with that label in the
    window. Empty cells become NaN gaps.
    """
    windows = list(windows)
    vocab = model.vocabulary
    cells: dict[tuple[int, EmotionLabel], list[np.ndarray]] = defaultdict(list)
    for speech in corpus:
        m = month_ordinal(*speech.month)
        for s in speech.sentences:
            pred = annotations.get((speech.id, s.index))
            if pred is not None:
                cells[(m, pred.label)].append(vocab.encode(sentence_tokens(s)))
    month_docs = {key: np.concatenate(parts) for key, parts in cells.items()}

    values = np.full((model.k, len(EMOTIONS), len(windows)), np.nan)
    for wi, w in enumerate(windows):
        for li, label in enumerate(EMOTIONS):
            parts = [month_docs[(m, label)] for m in w.months if (m, label) in month_docs]
            if not parts:
                continue
            doc = np.concatenate(parts)
            if doc.size == 0:
                continue
            inf = infer_topics(model, doc, fold_in_iterations=fold_in_iterations, burn_in=burn_in,
                               seed=[int(seed), w.anchor, li], max_tokens=max_tokens)
            values[:, li, wi] = inf.distribution
    return {
        (t, label): TopicEmotionSeries(t, label, windows, values[t, li].copy())
        for t in range(model.k)
        for li, label in enumerate(EMOTIONS)
    }


# ---------------------------------------------------------------------------
# trends

@dataclass(frozen=True)
class TrendResult:
    topic: int
    label: EmotionLabel
    slope: float
    intercept: float
    r_squared: float
    p_value: float
    meaningful: bool
    n_points: int
    insufficient_data: bool = False


def detect_trends(
    series: Mapping[tuple[int, EmotionLabel], TopicEmotionSeries] | Iterable[TopicEmotionSeries],
    r2_min: float = 0.3,
    alpha: float = 0.05,
    min_points: int = 12,
) -> list[TrendResult]:
    """OLS of prevalence on window position; meaningful iff R^2 > r2_min and p < alpha.

    The regressor is the window's month offset from the first window, so
    the slope is per window step and gaps keep their spacing.
    """
    items = series.values() if isinstance(series, Mapping) else series
    results = []
    for s in items:
        mask = ~s.gaps
        n = int(mask.sum())
        if n < max(min_points, 3):
            results.append(TrendResult(s.topic, s.label, math.nan, math.nan, math.nan, math.nan,
                                       False, n, insufficient_data=True))
            continue
        x = np.array([w.anchor for w in s.windows], dtype=float)[mask]
        x -= x[0]
        fit = ols_fit(x, s.values[mask])
        meaningful = fit.r_squared > r2_min and fit.p_value < alpha
        results.append(TrendResult(s.topic, s.label, fit.slope, fit.intercept, fit.r_squared,
                                   fit.p_value, meaningful, n))
    return results


@dataclass(frozen=True)
class ElectionCalendar:
    dates: tuple[dt.date, ...] = ()

    @classmethod
    def parse(cls, values: Iterable[str | dt.date]) -> "ElectionCalendar":
        return cls(tuple(sorted(v if isinstance(v, dt.date) else dt.date.fromisoformat(v) for v in values)))

    def within(self, start: dt.date, end: dt.date) -> list[dt.date]:
        return [d for d in self.dates if start <= d <= end]

    def check_range(self, start: dt.date, end: dt.date) -> None:
        outside = [d for d in self.dates if not start <= d <= end]
        if outside:
            warnings.warn(f"election dates outside the corpus range: {[d.isoformat() for d in outside]}",
                          stacklevel=2)
