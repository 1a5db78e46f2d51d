import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topiclandscape.corpus import Corpus
from topiclandscape.emotions import EMOTIONS, AnnotationError, AnnotationSet, EmotionLabel, SentencePrediction
from topiclandscape.lda import LdaModel, Vocabulary
from topiclandscape.synchronic import (
    CrossTable,
    SkewnessGroup,
    build_subcorpora,
    classify_skewness,
    classify_table,
    relative_differences,
    skewness_detail,
    topic_averages,
    topic_prevalences,
)
from topiclandscape.testkit import appendix_b_fixture

from conftest import annotate, make_speech

G = SkewnessGroup


def row(**cells):
    """A relative-difference row that is 0 except for the given label codes."""
    vals = dict.fromkeys((e.code for e in EMOTIONS), 0.0)
    vals.update({k.replace("JOY", "JOY-"): v for k, v in cells.items()})
    return vals


class TestSubcorpora:
    def test_grouping(self):
        s = make_speech("a", n=3, tokens=[("x", "y"), ("z",), ("w",)])
        ann = AnnotationSet(annotate(s, [("HOPE", 0.9), ("HOPE", 0.5)]))
        sub = build_subcorpora(Corpus([s]), ann)
        assert sub[EmotionLabel.HOPE].tokens == ("x", "y", "z")
        assert sub[EmotionLabel.HOPE].n_sentences == 2
        assert sub[EmotionLabel.FEAR].empty
        assert sub.n_unlabeled == 1 and sub.n_sentences == 2

    def test_dangling(self):
        s = make_speech("a", n=1)
        ann = AnnotationSet([SentencePrediction("a", 4, EmotionLabel.NEUT, 1.0)])
        with pytest.raises(AnnotationError, match="dangling"):
            build_subcorpora(Corpus([s]), ann)


class TestPrevalences:
    def test_columns_are_distributions_and_seeded(self):
        vocab = Vocabulary(["a", "b"])
        model = LdaModel(2, 0.5, 0.01, np.array([[0.99, 0.01], [0.01, 0.99]]), vocab)
        s = make_speech("s", n=3, tokens=[("a", "a", "a"), ("b", "b"), ("a", "b")])
        ann = AnnotationSet(annotate(s, [("HOPE", 1.0), ("FEAR", 1.0), ("NEUT", 1.0)]))
        sub = build_subcorpora(Corpus([s]), ann)
        kw = dict(seed=3, fold_in_iterations=30, burn_in=5)
        table = topic_prevalences(model, sub, topic_labels={0: "alpha"}, **kw)
        np.testing.assert_allclose(table.prevalence.sum(axis=0), 1.0)
        assert table.topics == ["alpha", "topic 1"]
        assert table.row("alpha")[EMOTIONS.index(EmotionLabel.HOPE)] > 0.6
        assert table.low_support[EmotionLabel.JOY] and not table.low_support[EmotionLabel.HOPE]
        again = topic_prevalences(model, sub, topic_labels={0: "alpha"}, **kw)
        np.testing.assert_array_equal(table.prevalence, again.prevalence)

    def test_all_empty(self):
        model = LdaModel(2, 0.5, 0.01, np.full((2, 1), 1.0), Vocabulary(["a"]))
        sub = build_subcorpora(Corpus([make_speech("s", n=1)]), AnnotationSet())
        with pytest.raises(ValueError):
            topic_prevalences(model, sub)


class TestRelativeDifferences:
    def test_definition(self):
        prev = np.array([[0.2] * 8 + [0.4], [0.1] * 9])
        rel = relative_differences(CrossTable(["x", "y"], prev))
        avg = 2.0 / 9 * 1.0
        np.testing.assert_allclose(rel.averages, [avg, 0.1])
        np.testing.assert_allclose(rel.values[0], (prev[0] - avg) / avg)
        np.testing.assert_allclose(rel.values[1], 0.0)

    def test_zero_average_excluded(self):
        prev = np.vstack([np.zeros(9), np.full(9, 0.1)])
        with pytest.warns(UserWarning, match="zero average"):
            rel = relative_differences(CrossTable(["dead", "live"], prev))
        assert rel.topics == ["live"] and rel.excluded == ["dead"]

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(1e-6, 1.0), min_size=9, max_size=9))
    def test_rows_sum_to_zero(self, values):
        rel = relative_differences(CrossTable(["t"], np.array([values])))
        assert abs(rel.values.sum()) < 1e-9
        assert rel.values.min() >= -1.0

    def test_masks(self):
        rel = relative_differences(CrossTable(["t"], np.array([[1.0] * 9])))
        rel.values = np.array([[0.5, 0.504, 0.506, -0.5, -0.494, 0, 0, 0, 0]])
        np.testing.assert_array_equal(rel.bold_mask[0, :3], [False, False, True])
        np.testing.assert_array_equal(rel.under_mask[0, 3:5], [True, False])


class TestSkewnessRules:
    @pytest.mark.parametrize("cells,group,rule", [
        (dict(HOPE=0.6, FEAR=0.7), G.POLARIZED, "a"),
        (dict(HATE=0.9, NEGA=0.51), G.NEGATIVELY_SKEWED, "b"),
        (dict(LOVE=0.5), G.POSITIVELY_SKEWED, "c"),
        (dict(NEUT=2.0), G.NEUTRALLY_SKEWED, "d"),
        (dict(NEUT=0.9, SADN=0.6), G.NEUTRALLY_SKEWED, "e"),
        (dict(NEUT=0.6, SADN=0.9), G.NEGATIVELY_SKEWED, "e"),
        (dict(NEUT=0.6, JOY=0.9, HATE=0.7), G.POSITIVELY_SKEWED, "e"),
        (dict(NEUT=0.7, HOPE=0.7), G.NEUTRALLY_SKEWED, "e"),
        (dict(POSI=3.0), G.AVERAGE_POSI_SUBGROUP, "f"),
        (dict(HOPE=0.49), G.AVERAGE, "f"),
        (dict(POSI=0.8, HOPE=0.6), G.POSITIVELY_SKEWED, "c"),
    ])
    def test_rules(self, cells, group, rule):
        assert skewness_detail(row(**cells)) == (group, rule)

    def test_rounding_matters(self):
        assert classify_skewness(row(FEAR=0.4951)) is G.NEGATIVELY_SKEWED
        assert classify_skewness(row(FEAR=0.4951), decimals=None) is G.AVERAGE

    def test_posi_can_be_included(self):
        assert classify_skewness(row(POSI=0.8), exclude_posi=False) is G.POSITIVELY_SKEWED

    def test_sequence_input_and_validation(self):
        assert classify_skewness([0.0] * 8 + [0.7]) is G.NEUTRALLY_SKEWED
        with pytest.raises(ValueError):
            classify_skewness([0.0] * 8)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.floats(-1.0, 5.0), min_size=9, max_size=9))
    def test_every_row_gets_one_group(self, values):
        group, rule = skewness_detail(values)
        assert rule in "abcdef"
        if max(values) < 0.49:
            assert group is G.AVERAGE


@pytest.fixture(scope="module")
def fx():
    return appendix_b_fixture()


class TestAppendixB:
    def test_shape(self, fx):
        assert len(fx.topics) == 26
        assert fx.prevalence_matrix.shape == (26, 9)
        assert not fx.prevalence_matrix.flags.writeable

    def test_transcribed_averages_close_to_recomputed(self, fx):
        np.testing.assert_allclose(topic_averages(fx.crosstable()), fx.transcribed_averages, atol=6e-5)

    def test_table_cells(self, fx):
        rel = relative_differences(fx.crosstable())
        np.testing.assert_array_equal(rel.rounded(2), fx.expected_reldiff)

    @pytest.mark.parametrize("topic,label,value", [
        ("Commerce", "HATE", 0.22),
        ("Energy", "HOPE", 1.20),
        ("Law proposals", "NEUT", 3.44),
        ("Employment", "POSI", -0.98),
        ("Crime", "SADN", 0.50),
    ])
    def test_anchor_cells(self, fx, topic, label, value):
        rel = relative_differences(fx.crosstable())
        assert round(rel.cell(topic, label), 2) == value
        assert fx.expected_cell(topic, label) == value

    def test_groups(self, fx):
        groups = classify_table(relative_differences(fx.crosstable()))
        assert groups == fx.expected_groups

    def test_crime_needs_rounding(self, fx):
        rel = relative_differences(fx.crosstable())
        assert rel.cell("Crime", "SADN") < 0.5
        assert skewness_detail(rel.row("Crime")) == (G.NEUTRALLY_SKEWED, "e")
        assert skewness_detail(rel.row("Crime"), decimals=None) == (G.NEUTRALLY_SKEWED, "d")
