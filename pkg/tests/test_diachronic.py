import datetime as dt
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topiclandscape.corpus import Corpus
from topiclandscape.diachronic import (
    ElectionCalendar,
    MissingPredictionError,
    TimeWindow,
    TopicEmotionSeries,
    corpus_windows,
    detect_trends,
    month_ordinal,
    monthly_windows,
    ordinal_month,
    rolling_emotion_shares,
    rolling_was,
    speech_was,
    topic_emotion_series,
    yearly_was,
)
from topiclandscape.emotions import EMOTIONS, AnnotationSet, EmotionLabel, SentencePrediction
from topiclandscape.lda import LdaModel, Vocabulary

from conftest import annotate, make_speech

labels_st = st.sampled_from(EMOTIONS)
pairs_st = st.lists(st.tuples(labels_st, st.floats(0.0, 1.0)), min_size=1, max_size=30)
FLIP = {e: EMOTIONS[(i + 4) % 8] if i < 8 else e for i, e in enumerate(EMOTIONS)}


def was_of(pairs):
    s = make_speech("s", n=len(pairs))
    ann = AnnotationSet(SentencePrediction("s", i, e, p) for i, (e, p) in enumerate(pairs))
    return speech_was(s, ann)


class TestWindows:
    def test_month_round_trip(self):
        for y, m in [(1999, 12), (2000, 1), (2020, 6)]:
            assert ordinal_month(month_ordinal(y, m)) == (y, m)

    def test_trailing(self):
        w = TimeWindow.at(2010, 3)
        assert (w.start, w.end, w.label) == (dt.date(2010, 1, 1), dt.date(2010, 3, 31), "2010-03")
        assert dt.date(2010, 2, 28) in w and dt.date(2010, 4, 1) not in w

    def test_centered(self):
        w = TimeWindow.at(2010, 3, alignment="centered")
        assert (w.start, w.end) == (dt.date(2010, 2, 1), dt.date(2010, 4, 30))

    def test_complete_windows_only(self):
        wins = monthly_windows((2000, 1), (2000, 12))
        assert len(wins) == 10
        assert wins[0].label == "2000-03" and wins[-1].label == "2000-12"
        assert monthly_windows((2000, 1), (2000, 2)) == []

    def test_corpus_windows(self, small_corpus):
        corpus, _ = small_corpus
        assert [w.label for w in corpus_windows(corpus)] == ["2010-03"]
        assert corpus_windows(Corpus()) == []


class TestWas:
    def test_hand_case(self):
        assert was_of([(EmotionLabel.HOPE, 0.8), (EmotionLabel.FEAR, 0.6)]) == pytest.approx(0.1, abs=1e-15)

    @settings(max_examples=300, deadline=None)
    @given(pairs_st)
    def test_bounds_and_antisymmetry(self, pairs):
        w = was_of(pairs)
        assert -1.0 <= w <= 1.0
        assert was_of([(FLIP[e], p) for e, p in pairs]) == pytest.approx(-w, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=20))
    def test_neutral_is_zero(self, probs):
        assert was_of([(EmotionLabel.NEUT, p) for p in probs]) == 0.0

    def test_missing(self):
        s = make_speech("s", n=3)
        ann = AnnotationSet(annotate(s, [("HOPE", 1.0), ("HOPE", 0.5)]))
        with pytest.raises(MissingPredictionError):
            speech_was(s, ann)
        with pytest.warns(UserWarning, match="2/3"):
            assert speech_was(s, ann, missing="skip") == pytest.approx(0.75)

    def test_rolling_and_yearly(self, small_corpus):
        corpus, ann = small_corpus
        speech_vals = [(0.8 - 0.6 + 0) / 3, 0.75, -0.5]
        [pt] = rolling_was(corpus, ann, corpus_windows(corpus))
        assert pt.n_speeches == 3 and pt.was == pytest.approx(sum(speech_vals) / 3)
        [yr] = yearly_was(corpus, ann)
        assert (yr.year, yr.n_speeches) == (2010, 3)

    def test_empty_windows_omitted(self, small_corpus):
        corpus, ann = small_corpus
        far = TimeWindow.at(2012, 3)
        assert rolling_was(corpus, ann, [far]) == []


class TestShares:
    def test_hand_case(self):
        s = make_speech("s", "2011-05-05", n=2)
        ann = AnnotationSet(annotate(s, [("HOPE", 1.0), ("FEAR", 0.5)]))
        shares = {p.label: p.share for p in rolling_emotion_shares(Corpus([s]), ann, [TimeWindow.at(2011, 5)])}
        assert shares[EmotionLabel.HOPE] == 2 / 3 and shares[EmotionLabel.FEAR] == 1 / 3
        assert shares[EmotionLabel.NEUT] == 0.0

    @settings(max_examples=100, deadline=None)
    @given(st.lists(pairs_st, min_size=1, max_size=6), st.integers(1, 12))
    def test_probability_vector(self, speeches, month):
        corpus, preds = [], []
        for j, pairs in enumerate(speeches):
            s = make_speech(f"s{j}", f"2011-{month:02d}-01", n=len(pairs))
            corpus.append(s)
            preds += [SentencePrediction(s.id, i, e, p) for i, (e, p) in enumerate(pairs)]
        pts = rolling_emotion_shares(Corpus(corpus), AnnotationSet(preds), [TimeWindow.at(2011, month)])
        if pts:
            assert math.fsum(p.share for p in pts) == pytest.approx(1.0, abs=1e-9)
            assert all(p.share >= 0 for p in pts)
        else:
            assert all(p == 0 for pairs in speeches for _, p in pairs)


def two_word_model():
    return LdaModel(2, 0.5, 0.01, np.array([[0.99, 0.01], [0.01, 0.99]]), Vocabulary(["a", "b"]))


class TestTopicEmotionSeries:
    def test_gaps_and_values(self):
        speeches = [make_speech(f"s{m}", f"2010-{m:02d}-15", n=1, tokens=[("a", "a")]) for m in (1, 2, 3, 4, 5, 6)]
        ann = AnnotationSet(SentencePrediction(s.id, 0, EmotionLabel.HOPE if i < 3 else EmotionLabel.FEAR, 1.0)
                            for i, s in enumerate(speeches))
        wins = monthly_windows((2010, 1), (2010, 6))
        series = topic_emotion_series(two_word_model(), Corpus(speeches), ann, wins, fold_in_iterations=20, burn_in=5)
        hope = series[(0, EmotionLabel.HOPE)]
        assert hope.gaps.tolist() == [False, False, False, True]
        assert hope.n_points == 3
        assert series[(0, EmotionLabel.FEAR)].gaps.tolist() == [True, False, False, False]
        assert np.nanmin(hope.values) > 0.5
        assert series[(0, EmotionLabel.NEUT)].n_points == 0
        again = topic_emotion_series(two_word_model(), Corpus(speeches), ann, wins, fold_in_iterations=20, burn_in=5)
        np.testing.assert_array_equal(hope.values, again[(0, EmotionLabel.HOPE)].values)


def synthetic_series(values, start=(2000, 3)):
    wins = [TimeWindow(month_ordinal(*start) + i) for i in range(len(values))]
    return TopicEmotionSeries(0, EmotionLabel.HOPE, wins, np.asarray(values, float))


class TestTrends:
    def test_planted_line(self):
        [r] = detect_trends([synthetic_series(0.1 + 0.01 * np.arange(30))])
        assert r.meaningful and r.slope == pytest.approx(0.01) and r.intercept == pytest.approx(0.1)

    def test_flat_noise_not_flagged(self):
        rng = np.random.default_rng(5)
        [r] = detect_trends([synthetic_series(rng.normal(0.5, 0.01, 60))])
        assert not r.meaningful

    def test_gaps_keep_spacing(self):
        vals = 0.02 * np.arange(20)
        vals[5:9] = np.nan
        [r] = detect_trends([synthetic_series(vals)])
        assert r.n_points == 16 and r.slope == pytest.approx(0.02)

    def test_insufficient(self):
        [r] = detect_trends([synthetic_series(np.arange(5.0))])
        assert r.insufficient_data and not r.meaningful and math.isnan(r.slope)

    def test_thresholds(self):
        rng = np.random.default_rng(1)
        s = synthetic_series(0.002 * np.arange(100) + rng.normal(0, 0.1, 100))
        [r] = detect_trends([s])
        assert 0 < r.r_squared < 0.3 and r.p_value < 0.05 and not r.meaningful
        [r] = detect_trends([s], r2_min=0.0)
        assert r.meaningful


class TestElections:
    def test_parse_and_range(self):
        cal = ElectionCalendar.parse(["2011-04-17", dt.date(2007, 3, 18)])
        assert cal.dates == (dt.date(2007, 3, 18), dt.date(2011, 4, 17))
        assert cal.within(dt.date(2008, 1, 1), dt.date(2012, 1, 1)) == [dt.date(2011, 4, 17)]
        with pytest.warns(UserWarning, match="outside"):
            cal.check_range(dt.date(2008, 1, 1), dt.date(2012, 1, 1))
