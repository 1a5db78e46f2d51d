import datetime as dt

import pytest

from topiclandscape.corpus import Corpus, Sentence, SpeakerRole, Speech
from topiclandscape.emotions import AnnotationSet, EmotionLabel, SentencePrediction

_acceptance: dict[int, list[bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in getattr(report, "acceptance_ids", ()):
        _acceptance.setdefault(mark, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.acceptance_ids = [m.args[0] for m in item.iter_markers("acceptance")]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_acceptance):
        ok = all(_acceptance[cid])
        terminalreporter.write_line(f"criterion {cid:2d}: {'PASS' if ok else 'FAIL'}")


def make_speech(sid, date="2010-05-03", n=5, role=SpeakerRole.MEMBER, tokens=None, speaker="mp001"):
    if isinstance(date, str):
        date = dt.date.fromisoformat(date)
    sents = []
    for i in range(n):
        toks = tokens[i] if tokens is not None else ("word", f"w{i}")
        sents.append(Sentence(sid, i, " ".join(toks).capitalize() + ".", tuple(toks)))
    return Speech(sid, date, speaker, role, "fi", tuple(sents))


def annotate(speech, pairs):
    """Predictions for a speech from (label code, probability) pairs."""
    return [SentencePrediction(speech.id, i, EmotionLabel(code), p) for i, (code, p) in enumerate(pairs)]


@pytest.fixture
def small_corpus():
    speeches = [
        make_speech("a", "2010-01-10", 3),
        make_speech("b", "2010-02-10", 2),
        make_speech("c", "2010-03-10", 2),
    ]
    corpus = Corpus(speeches)
    ann = AnnotationSet(
        annotate(speeches[0], [("HOPE", 0.8), ("FEAR", 0.6), ("NEUT", 0.9)])
        + annotate(speeches[1], [("HOPE", 1.0), ("HOPE", 0.5)])
        + annotate(speeches[2], [("SADN", 1.0), ("NEUT", 0.7)])
    )
    return corpus, ann


def two_topic_documents(seed, n_docs=200, doc_len=50, words_per_topic=20):
    """Documents over two disjoint vocabularies, mixed per document by a Beta(0.3, 0.3) weight."""
    import numpy as np

    rng = np.random.default_rng(seed)
    vocab = [[f"a{j}" for j in range(words_per_topic)], [f"b{j}" for j in range(words_per_topic)]]
    docs = []
    for _ in range(n_docs):
        w = rng.beta(0.3, 0.3)
        topics = rng.random(doc_len) >= w
        docs.append([vocab[t][rng.integers(words_per_topic)] for t in topics.astype(int)])
    return docs, vocab


def topic_purity(model, vocab, n=10):
    """Fraction of learned topics whose top-n words all come from one planted vocabulary,
    counting each planted topic at most once."""
    from topiclandscape.lda import top_words

    claimed = set()
    pure = 0
    for t in range(model.k):
        words = {w for w, _ in top_words(model, t, n)}
        owners = {i for i, v in enumerate(vocab) if words & set(v)}
        if len(owners) == 1 and not owners & claimed:
            claimed |= owners
            pure += 1
    return pure / model.k


def constructed_corpus():
    """1000 speeches: 100 chaired (40 of them short), 150 short members, 750 kept."""
    speeches = []
    for i in range(1000):
        if i < 60:
            role, n = SpeakerRole.SPEAKER_OF_PARLIAMENT, 6
        elif i < 100:
            role, n = SpeakerRole.SPEAKER_OF_PARLIAMENT, 2
        elif i < 250:
            role, n = SpeakerRole.MEMBER, 1 + i % 4
        else:
            role, n = (SpeakerRole.MINISTER if i % 7 == 0 else SpeakerRole.MEMBER), 5 + i % 3
        speeches.append(make_speech(f"s{i:04d}", n=n, role=role))
    return Corpus(speeches)
