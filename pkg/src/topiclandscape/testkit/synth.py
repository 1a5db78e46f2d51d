"""Seeded synthetic speech corpora with planted topics, emotion mixtures and drifts."""

from __future__ import annotations

import datetime as dt
import calendar
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from ..corpus import Corpus, Sentence, SpeakerRole, Speech, emit_corpus
from ..emotions import EMOTIONS, AnnotationSet, EmotionLabel, SentencePrediction, emit_predictions


class SynthSpecError(ValueError):
    pass


@dataclass(frozen=True)
class Drift:
    topic: int
    label: str
    slope: float  # added to the label's probability per month


@dataclass
class SynthSpec:
    n_topics: int = 4
    words_per_topic: int = 12
    vocabularies: list[list[str]] | None = None
    mixtures: list[dict[str, float]] | None = None  # per topic, label code -> probability
    topic_weights: list[float] | None = None
    speeches_per_month: int = 20
    sentences_per_speech: tuple[int, int] = (5, 10)
    tokens_per_sentence: tuple[int, int] = (6, 12)
    start: str = "2000-01"
    n_months: int = 120
    drifts: list[Drift] = field(default_factory=list)
    prob_range: tuple[float, float] = (0.5, 1.0)
    speaker_fraction: float = 0.0  # share of speeches by the chair
    short_fraction: float = 0.0  # share of speeches with 1-4 sentences
    n_speakers: int = 50
    seed: int = 0

    @classmethod
    def from_dict(cls, d: Mapping) -> "SynthSpec":
        d = dict(d)
        d["drifts"] = [Drift(**x) if isinstance(x, Mapping) else x for x in d.get("drifts", [])]
        for key in ("sentences_per_speech", "tokens_per_sentence", "prob_range"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)

    def to_dict(self) -> dict:
        return asdict(self)

    def vocab(self) -> list[list[str]]:
        if self.vocabularies is not None:
            return [list(v) for v in self.vocabularies]
        return [[f"t{k}w{j}" for j in range(self.words_per_topic)] for k in range(self.n_topics)]

    def base_mixtures(self) -> np.ndarray:
        k = len(self.vocab())
        if self.mixtures is None:
            return np.full((k, len(EMOTIONS)), 1.0 / len(EMOTIONS))
        if len(self.mixtures) != k:
            raise SynthSpecError(f"need {k} mixtures, got {len(self.mixtures)}")
        out = np.zeros((k, len(EMOTIONS)))
        for t, mix in enumerate(self.mixtures):
            for code, p in mix.items():
                out[t, EMOTIONS.index(EmotionLabel(code))] = p
        if (out < 0).any() or not np.allclose(out.sum(axis=1), 1.0, atol=1e-9):
            raise SynthSpecError("every emotion mixture must be a probability vector")
        return out

    def month_mixtures(self) -> np.ndarray:
        """Realized mixtures, shape (n_months, topics, labels), after drift, clipping and renormalization."""
        base = self.base_mixtures()
        out = np.repeat(base[None], self.n_months, axis=0)
        months = np.arange(self.n_months)
        for d in self.drifts:
            if not 0 <= d.topic < base.shape[0]:
                raise SynthSpecError(f"drift topic {d.topic} out of range")
            j = EMOTIONS.index(EmotionLabel(d.label))
            raw = base[d.topic, j] + d.slope * months
            if d.slope != 0 and not ((raw > 0) & (raw < 1)).any():
                raise SynthSpecError(f"drift {d} leaves the simplex for the whole date range")
            out[:, d.topic, j] = np.clip(raw, 0.0, 1.0)
        sums = out.sum(axis=2, keepdims=True)
        if (sums <= 0).any():
            raise SynthSpecError("a drifted mixture has no mass left")
        return out / sums


def _months(start: str, n: int) -> list[tuple[int, int]]:
    y, m = (int(x) for x in start.split("-"))
    out = []
    for i in range(n):
        yy, mm = divmod((m - 1) + i, 12)
        out.append((y + yy, mm + 1))
    return out


def synthesize(spec: SynthSpec) -> tuple[Corpus, AnnotationSet, dict]:
    """Build the corpus, its predictions and the ground truth in memory."""
    if spec.n_months < 1:
        raise SynthSpecError("date range is empty")
    vocab = spec.vocab()
    k = len(vocab)
    mixtures = spec.month_mixtures()
    weights = np.asarray(spec.topic_weights if spec.topic_weights is not None else np.ones(k), float)
    weights = weights / weights.sum()
    rng = np.random.default_rng(spec.seed)
    lo_s, hi_s = spec.sentences_per_speech
    lo_t, hi_t = spec.tokens_per_sentence
    lo_p, hi_p = spec.prob_range

    speeches, preds, topics_of = [], [], {}
    serial = 0
    for mi, (year, month) in enumerate(_months(spec.start, spec.n_months)):
        ndays = calendar.monthrange(year, month)[1]
        for _ in range(spec.speeches_per_month):
            serial += 1
            sid = f"s{serial:07d}"
            topic = int(rng.choice(k, p=weights))
            role = SpeakerRole.MEMBER
            if rng.random() < spec.speaker_fraction:
                role = SpeakerRole.SPEAKER_OF_PARLIAMENT
            if rng.random() < spec.short_fraction:
                n_sent = int(rng.integers(1, 5))
            else:
                n_sent = int(rng.integers(lo_s, hi_s + 1))
            labels = rng.choice(len(EMOTIONS), size=n_sent, p=mixtures[mi, topic])
            sentences = []
            for i in range(n_sent):
                n_tok = int(rng.integers(lo_t, hi_t + 1))
                toks = [vocab[topic][j] for j in rng.integers(0, len(vocab[topic]), size=n_tok)]
                text = " ".join(toks).capitalize() + "."
                sentences.append(Sentence(sid, i, text, tuple(toks)))
                prob = round(float(rng.uniform(lo_p, hi_p)), 4)
                preds.append(SentencePrediction(sid, i, EMOTIONS[labels[i]], prob))
            speeches.append(Speech(
                id=sid,
                date=dt.date(year, month, int(rng.integers(1, ndays + 1))),
                speaker_id=f"mp{int(rng.integers(0, spec.n_speakers)):03d}",
                speaker_role=role,
                language_tag="fi",
                sentences=tuple(sentences),
            ))
            topics_of[sid] = topic

    truth = {
        "spec": spec.to_dict(),
        "vocabularies": vocab,
        "labels": [e.code for e in EMOTIONS],
        "months": [f"{y:04d}-{m:02d}" for y, m in _months(spec.start, spec.n_months)],
        "mixtures": np.round(mixtures, 12).tolist(),
        "speech_topics": topics_of,
    }
    return Corpus(speeches), AnnotationSet(preds), truth


def generate_synthetic(spec: SynthSpec, corpus_path, predictions_path, truth_path) -> None:
    """Write corpus, predictions and ground truth files; identical spec gives identical bytes."""
    corpus, annotations, truth = synthesize(spec)
    for p in (corpus_path, predictions_path, truth_path):
        Path(p).parent.mkdir(parents=True, exist_ok=True)
    with open(corpus_path, "w", encoding="utf-8", newline="\n") as fh:
        emit_corpus(corpus, fh)
    with open(predictions_path, "w", encoding="utf-8", newline="\n") as fh:
        emit_predictions(annotations, fh)
    with open(truth_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(truth, fh, indent=1, sort_keys=True)
        fh.write("\n")
