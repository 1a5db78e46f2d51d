import numpy as np
import pytest

from topiclandscape.corpus import SpeakerRole
from topiclandscape.emotions import EMOTIONS, EmotionLabel
from topiclandscape.testkit import APPENDIX_A_LABELS, Drift, SynthSpec, SynthSpecError, generate_synthetic, synthesize


class TestSynth:
    def test_shapes_and_truth(self):
        spec = SynthSpec(n_topics=3, speeches_per_month=5, n_months=4, seed=2)
        corpus, ann, truth = synthesize(spec)
        assert len(corpus) == 20
        assert len(ann) == corpus.n_sentences
        assert truth["months"] == ["2000-01", "2000-02", "2000-03", "2000-04"]
        assert set(truth["speech_topics"].values()) <= {0, 1, 2}
        for speech in corpus:
            vocab = set(truth["vocabularies"][truth["speech_topics"][speech.id]])
            assert all(set(s.tokens) <= vocab for s in speech.sentences)

    def test_fractions(self):
        spec = SynthSpec(speeches_per_month=100, n_months=10, speaker_fraction=0.2, short_fraction=0.3, seed=1)
        corpus, _, _ = synthesize(spec)
        chaired = sum(s.speaker_role is SpeakerRole.SPEAKER_OF_PARLIAMENT for s in corpus) / len(corpus)
        short = sum(len(s.sentences) < 5 for s in corpus) / len(corpus)
        assert chaired == pytest.approx(0.2, abs=0.04)
        assert short == pytest.approx(0.3, abs=0.05)

    def test_drift_and_clipping(self):
        mix = [{"HOPE": 0.5, "NEUT": 0.5}, {"FEAR": 1.0}]
        spec = SynthSpec(n_topics=2, mixtures=mix, n_months=100, drifts=[Drift(0, "HOPE", 0.01)])
        m = spec.month_mixtures()
        np.testing.assert_allclose(m.sum(axis=2), 1.0)
        hope = EMOTIONS.index(EmotionLabel.HOPE)
        assert m[0, 0, hope] == 0.5 and m[-1, 0, hope] == 1.0 / 1.5  # clipped at 1, renormalized

    def test_label_frequencies_follow_mixture(self):
        spec = SynthSpec(n_topics=1, mixtures=[{"HOPE": 0.25, "NEUT": 0.75}], speeches_per_month=200, n_months=3)
        _, ann, _ = synthesize(spec)
        hope = sum(p.label is EmotionLabel.HOPE for p in ann.predictions()) / len(ann)
        assert hope == pytest.approx(0.25, abs=0.03)

    @pytest.mark.parametrize("kwargs", [
        dict(mixtures=[{"HOPE": 0.5}] * 4),
        dict(mixtures=[{"HOPE": 1.0}]),
        dict(drifts=[Drift(9, "HOPE", 0.1)]),
        dict(mixtures=[{"NEUT": 1.0}] * 4, drifts=[Drift(0, "HOPE", -0.1)]),
        dict(n_months=0),
    ])
    def test_invalid_specs(self, kwargs):
        with pytest.raises(SynthSpecError):
            synthesize(SynthSpec(**kwargs))

    def test_files_are_deterministic(self, tmp_path):
        spec = SynthSpec(n_months=3, speeches_per_month=4, seed=9)
        a = [tmp_path / "a" / n for n in ("c.jsonl", "p.jsonl", "t.json")]
        b = [tmp_path / "b" / n for n in ("c.jsonl", "p.jsonl", "t.json")]
        generate_synthetic(spec, *a)
        generate_synthetic(spec, *b)
        for x, y in zip(a, b):
            assert x.read_bytes() == y.read_bytes()

    def test_dict_round_trip(self):
        spec = SynthSpec(drifts=[Drift(1, "FEAR", 0.001)], sentences_per_speech=(2, 3))
        assert SynthSpec.from_dict(spec.to_dict()) == spec


def test_appendix_a_labels():
    assert len(APPENDIX_A_LABELS) == 26
    assert APPENDIX_A_LABELS[2] == "energy" and APPENDIX_A_LABELS[7] == "employment"
