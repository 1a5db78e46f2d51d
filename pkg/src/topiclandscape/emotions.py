"""Nine-category emotion taxonomy and per-sentence prediction handling."""

from __future__ import annotations

import enum
import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping

from .corpus import Corpus, sentence_tokens


class EmotionLabel(str, enum.Enum):
    JOY = "JOY-"
    HOPE = "HOPE"
    LOVE = "LOVE"
    POSI = "POSI"
    SADN = "SADN"
    FEAR = "FEAR"
    HATE = "HATE"
    NEGA = "NEGA"
    NEUT = "NEUT"

    @property
    def code(self) -> str:
        return self.value

    @property
    def polarity(self) -> int:
        return _POLARITY[self]

    @classmethod
    def parse(cls, code: str) -> "EmotionLabel":
        try:
            return cls(code)
        except ValueError:
            raise UnknownLabelError(f"unknown emotion label {code!r}") from None


_POLARITY = {
    EmotionLabel.JOY: 1, EmotionLabel.HOPE: 1, EmotionLabel.LOVE: 1, EmotionLabel.POSI: 1,
    EmotionLabel.SADN: -1, EmotionLabel.FEAR: -1, EmotionLabel.HATE: -1, EmotionLabel.NEGA: -1,
    EmotionLabel.NEUT: 0,
}

#: Fixed column order used everywhere (tables, CSVs, share vectors).
EMOTIONS: tuple[EmotionLabel, ...] = tuple(EmotionLabel)
POSITIVE = tuple(e for e in EMOTIONS if e.polarity > 0)
NEGATIVE = tuple(e for e in EMOTIONS if e.polarity < 0)
NEUTRAL = (EmotionLabel.NEUT,)


class AnnotationError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownLabelError(AnnotationError):
    pass


@dataclass(frozen=True)
class SentencePrediction:
    speech_id: str
    sentence_index: int
    label: EmotionLabel
    probability: float

    def __post_init__(self):
        if not (0.0 <= self.probability <= 1.0):
            raise AnnotationError(f"probability {self.probability!r} outside [0, 1]")
        if self.sentence_index < 0:
            raise AnnotationError(f"negative sentence index {self.sentence_index}")

    @property
    def key(self) -> tuple[str, int]:
        return (self.speech_id, self.sentence_index)


class AnnotationSet(Mapping[tuple[str, int], SentencePrediction]):
    """Read-only map (speech_id, sentence_index) -> prediction."""

    def __init__(self, predictions: Iterable[SentencePrediction] = ()):
        data: dict[tuple[str, int], SentencePrediction] = {}
        for p in predictions:
            if p.key in data:
                raise AnnotationError(f"duplicate prediction for {p.key}")
            data[p.key] = p
        self._data = data

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __repr__(self) -> str:
        return f"AnnotationSet({len(self)} predictions)"

    def predictions(self) -> Iterator[SentencePrediction]:
        return iter(self._data.values())

    def coverage(self, corpus: Corpus) -> dict:
        total = corpus.n_sentences
        covered = sum(1 for s in corpus.sentences() if (s.speech_id, s.index) in self._data)
        return {
            "sentences": total,
            "annotated": covered,
            "unannotated": total - covered,
            "fraction": covered / total if total else 0.0,
        }

    def check_against(self, corpus: Corpus) -> None:
        for sid, idx in self._data:
            speech = corpus.get(sid)
            if speech is None or idx >= len(speech.sentences):
                raise AnnotationError(f"prediction references missing sentence ({sid!r}, {idx})")


def ingest_predictions(source: IO[str] | Iterable[str], corpus: Corpus | None = None) -> AnnotationSet:
    """Read prediction records ``{"speech_id", "sentence_index", "label", "prob"}``."""
    preds = []
    seen: dict[tuple[str, int], int] = {}
    for lineno, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise AnnotationError(f"malformed JSON ({e.msg})", lineno) from None
        try:
            sid = rec["speech_id"]
            idx = rec["sentence_index"]
            code = rec["label"]
            prob = rec["prob"]
        except (KeyError, TypeError):
            raise AnnotationError("record needs speech_id, sentence_index, label, prob", lineno) from None
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise AnnotationError(f"sentence_index must be an integer, got {idx!r}", lineno)
        try:
            label = EmotionLabel.parse(code)
        except UnknownLabelError as e:
            raise UnknownLabelError(str(e), lineno) from None
        if not isinstance(prob, (int, float)) or isinstance(prob, bool) or math.isnan(prob):
            raise AnnotationError(f"prob must be a number, got {prob!r}", lineno)
        if not 0.0 <= prob <= 1.0:
            raise AnnotationError(f"prob {prob!r} outside [0, 1]", lineno)
        key = (str(sid), idx)
        if key in seen:
            raise AnnotationError(f"duplicate prediction for {key} (first on line {seen[key]})", lineno)
        if corpus is not None:
            speech = corpus.get(key[0])
            if speech is None or not 0 <= idx < len(speech.sentences):
                raise AnnotationError(f"dangling reference to sentence {key}", lineno)
        seen[key] = lineno
        preds.append(SentencePrediction(key[0], idx, label, float(prob)))
    return AnnotationSet(preds)


def emit_predictions(annotations: AnnotationSet, sink: IO[str]) -> None:
    for p in annotations.predictions():
        rec = {"speech_id": p.speech_id, "sentence_index": p.sentence_index,
               "label": p.label.code, "prob": p.probability}
        sink.write(json.dumps(rec) + "\n")


def annotate_with_lexicon(corpus: Corpus, lexicon: Mapping[str, EmotionLabel | str]) -> AnnotationSet:
    """Deterministic baseline annotator: majority lexicon label per sentence.

    Ties go to the earliest label in ``EMOTIONS`` order; sentences with no
    lexicon hit become NEUT with probability 1.
    """
    if not lexicon:
        raise ValueError("lexicon is empty")
    lex = {k.lower(): EmotionLabel(v) for k, v in lexicon.items()}
    rank = {e: i for i, e in enumerate(EMOTIONS)}
    preds = []
    for sentence in corpus.sentences():
        hits = Counter(lex[t] for t in sentence_tokens(sentence) if t in lex)
        total = sum(hits.values())
        if total == 0:
            label, prob = EmotionLabel.NEUT, 1.0
        else:
            label = min(hits, key=lambda e: (-hits[e], rank[e]))
            prob = hits[label] / total
        preds.append(SentencePrediction(sentence.speech_id, sentence.index, label, prob))
    return AnnotationSet(preds)


def emotion_distribution(annotations: Iterable[SentencePrediction] | AnnotationSet) -> dict[EmotionLabel, float]:
    """Share of sentences per label (label counts over total)."""
    preds = annotations.predictions() if isinstance(annotations, AnnotationSet) else annotations
    counts = Counter(p.label for p in preds)
    total = sum(counts.values())
    if total == 0:
        raise ValueError("annotation set is empty")
    return {e: counts.get(e, 0) / total for e in EMOTIONS}


def sentiment_rollup(distribution: Mapping[EmotionLabel, float]) -> dict[str, float]:
    out = {"positive": 0.0, "negative": 0.0, "neutral": 0.0}
    for label, share in distribution.items():
        pol = EmotionLabel(label).polarity
        out["positive" if pol > 0 else "negative" if pol < 0 else "neutral"] += share
    return out
