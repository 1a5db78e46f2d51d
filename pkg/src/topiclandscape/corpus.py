"""Speech corpus model, newline-delimited JSON ingestion and filtering."""

from __future__ import annotations

import datetime as dt
import enum
import json
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence


class CorpusFormatError(ValueError):
    """A corpus record could not be parsed or violates an invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SpeakerRole(str, enum.Enum):
    MEMBER = "member"
    SPEAKER_OF_PARLIAMENT = "speaker_of_parliament"
    MINISTER = "minister"
    OTHER = "other"


@dataclass(frozen=True)
class Sentence:
    speech_id: str
    index: int
    text: str
    tokens: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"empty sentence text in speech {self.speech_id!r} at {self.index}")
        if self.tokens is not None and any(not t for t in self.tokens):
            raise ValueError(f"empty token in speech {self.speech_id!r} sentence {self.index}")


@dataclass(frozen=True)
class Speech:
    id: str
    date: dt.date
    speaker_id: str
    speaker_role: SpeakerRole
    language_tag: str
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        if not self.id:
            raise ValueError("speech id must be nonempty")
        for i, s in enumerate(self.sentences):
            if s.index != i or s.speech_id != self.id:
                raise ValueError(f"speech {self.id!r}: sentences must be indexed contiguously from 0")

    @property
    def month(self) -> tuple[int, int]:
        return (self.date.year, self.date.month)


class Corpus(Sequence[Speech]):
    """Immutable ordered collection of speeches with unique ids."""

    def __init__(self, speeches: Iterable[Speech] = (), unknown_fields: int = 0):
        self._speeches = tuple(speeches)
        self._by_id: dict[str, Speech] = {}
        for s in self._speeches:
            if s.id in self._by_id:
                raise ValueError(f"duplicate speech id {s.id!r}")
            self._by_id[s.id] = s
        self.unknown_fields = unknown_fields

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Corpus(self._speeches[i])
        return self._speeches[i]

    def __len__(self) -> int:
        return len(self._speeches)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self._speeches == other._speeches

    def __hash__(self):
        return hash(self._speeches)

    def __repr__(self) -> str:
        return f"Corpus({len(self)} speeches, {self.n_sentences} sentences)"

    def get(self, speech_id: str) -> Speech | None:
        return self._by_id.get(speech_id)

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            return item in self._by_id
        return item in self._speeches

    @property
    def n_sentences(self) -> int:
        return sum(len(s.sentences) for s in self._speeches)

    def sentences(self) -> Iterator[Sentence]:
        for speech in self._speeches:
            yield from speech.sentences


# ---------------------------------------------------------------------------
# tokenization and sentence segmentation

_TOKEN_RE = re.compile(r"[^\W_]+(?:[#'’-][^\W_]+)*", re.UNICODE)
_BOUNDARY_RE = re.compile(r"[.!?]+[\"'”’)\]]*\s+")
_ABBREVIATIONS = frozenset(
    "mr mrs ms dr prof st jr sr vs etc e.g i.e no nro esim ns mm ym jne".split()
)


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens; '#' compound joints and inner hyphens are kept."""
    return _TOKEN_RE.findall(text.lower())


def sentence_tokens(sentence: Sentence) -> Sequence[str]:
    """Pre-lemmatized tokens when present, else a plain tokenization of the text."""
    if sentence.tokens is not None:
        return [t.lower() for t in sentence.tokens]
    return tokenize(sentence.text)


def segment_sentences(raw_text: str) -> list[str]:
    """Split text after . ! ? when the next word starts with an uppercase letter or digit.

    Known abbreviations ("Mr.", "Dr.", "esim.") never end a sentence.
    """
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(raw_text):
        nxt = raw_text[m.end():m.end() + 1]
        if not nxt or not (nxt.isupper() or nxt.isdigit()):
            continue
        words = raw_text[start:m.start() + 1].split()
        last = words[-1].rstrip(".!?").lower() if words else ""
        if raw_text[m.start()] == "." and last in _ABBREVIATIONS:
            continue
        pieces.append(raw_text[start:m.end()])
        start = m.end()
    pieces.append(raw_text[start:])
    return [p.strip() for p in pieces if p.strip()]


# ---------------------------------------------------------------------------
# ingestion

_KNOWN_FIELDS = {"id", "date", "speaker_id", "speaker_role", "language", "sentences", "text"}
_KNOWN_SENTENCE_FIELDS = {"text", "tokens"}


def parse_date(value) -> dt.date:
    if not isinstance(value, str):
        raise ValueError(f"date must be a string, got {value!r}")
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise ValueError(f"unparseable date {value!r}") from None


def _speech_from_record(rec: dict, lineno: int) -> tuple[Speech, int]:
    if not isinstance(rec, dict):
        raise CorpusFormatError("record is not a JSON object", lineno)
    unknown = sum(1 for k in rec if k not in _KNOWN_FIELDS)
    for key in ("id", "date", "speaker_id", "speaker_role"):
        if key not in rec:
            raise CorpusFormatError(f"missing field {key!r}", lineno)
    sid = rec["id"]
    if not isinstance(sid, str) or not sid:
        raise CorpusFormatError("id must be a nonempty string", lineno)
    try:
        date = parse_date(rec["date"])
    except ValueError as e:
        raise CorpusFormatError(str(e), lineno) from None
    try:
        role = SpeakerRole(rec["speaker_role"])
    except ValueError:
        raise CorpusFormatError(f"unknown speaker_role {rec['speaker_role']!r}", lineno) from None

    if "sentences" in rec:
        raw = rec["sentences"]
        if not isinstance(raw, list):
            raise CorpusFormatError("sentences must be a list", lineno)
    elif "text" in rec:
        # segmentation is only a fallback for unsegmented records
        raw = [{"text": t} for t in segment_sentences(rec["text"])]
    else:
        raise CorpusFormatError("record has neither 'sentences' nor 'text'", lineno)

    sentences = []
    for i, s in enumerate(raw):
        if not isinstance(s, dict) or not isinstance(s.get("text"), str):
            raise CorpusFormatError(f"sentence {i} must be an object with a 'text' string", lineno)
        unknown += sum(1 for k in s if k not in _KNOWN_SENTENCE_FIELDS)
        tokens = s.get("tokens")
        if tokens is not None:
            if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
                raise CorpusFormatError(f"sentence {i}: tokens must be a list of strings", lineno)
            tokens = tuple(tokens)
        try:
            sentences.append(Sentence(sid, i, s["text"], tokens))
        except ValueError as e:
            raise CorpusFormatError(str(e), lineno) from None
    speech = Speech(
        id=sid,
        date=date,
        speaker_id=str(rec["speaker_id"]),
        speaker_role=role,
        language_tag=str(rec.get("language", "")),
        sentences=tuple(sentences),
    )
    return speech, unknown


def ingest_corpus(source: IO[str] | Iterable[str]) -> Corpus:
    """Load a corpus from newline-delimited JSON speech records.

    Blank lines are skipped. Unknown fields are ignored and counted in
    ``Corpus.unknown_fields``.
    """
    speeches = []
    seen: dict[str, int] = {}
    unknown = 0
    for lineno, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(f"malformed JSON ({e.msg})", lineno) from None
        speech, n_unknown = _speech_from_record(rec, lineno)
        if speech.id in seen:
            raise CorpusFormatError(
                f"duplicate speech id {speech.id!r} (first seen on line {seen[speech.id]})", lineno
            )
        seen[speech.id] = lineno
        unknown += n_unknown
        speeches.append(speech)
    return Corpus(speeches, unknown_fields=unknown)


def speech_to_record(speech: Speech) -> dict:
    sentences = []
    for s in speech.sentences:
        item: dict = {"text": s.text}
        if s.tokens is not None:
            item["tokens"] = list(s.tokens)
        sentences.append(item)
    return {
        "id": speech.id,
        "date": speech.date.isoformat(),
        "speaker_id": speech.speaker_id,
        "speaker_role": speech.speaker_role.value,
        "language": speech.language_tag,
        "sentences": sentences,
    }


def emit_corpus(corpus: Iterable[Speech], sink: IO[str]) -> None:
    for speech in corpus:
        sink.write(json.dumps(speech_to_record(speech), ensure_ascii=False))
        sink.write("\n")


# ---------------------------------------------------------------------------
# filtering

@dataclass(frozen=True)
class FilterReport:
    speeches_in: int
    speeches_removed_role: int
    speeches_removed_short: int
    speeches_out: int
    sentences_out: int

    def __post_init__(self):
        assert self.speeches_out == (
            self.speeches_in - self.speeches_removed_role - self.speeches_removed_short
        )


def filter_corpus(
    corpus: Corpus,
    min_sentences: int = 5,
    excluded_roles: Iterable[SpeakerRole | str] = (SpeakerRole.SPEAKER_OF_PARLIAMENT,),
) -> tuple[Corpus, FilterReport]:
    """Drop procedural and short speeches.

    Role removal is applied first, so a speech that is both chaired and short
    is counted once under ``speeches_removed_role``.
    """
    roles = {SpeakerRole(r) for r in excluded_roles}
    kept = []
    removed_role = removed_short = 0
    for speech in corpus:
        if speech.speaker_role in roles:
            removed_role += 1
        elif len(speech.sentences) < min_sentences:
            removed_short += 1
        else:
            kept.append(speech)
    out = Corpus(kept, unknown_fields=corpus.unknown_fields)
    report = FilterReport(
        speeches_in=len(corpus),
        speeches_removed_role=removed_role,
        speeches_removed_short=removed_short,
        speeches_out=len(out),
        sentences_out=out.n_sentences,
    )
    return out, report
