"""Topic and emotion landscapes of parliamentary speech corpora."""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    CorpusFormatError,
    FilterReport,
    Sentence,
    SpeakerRole,
    Speech,
    emit_corpus,
    filter_corpus,
    ingest_corpus,
    segment_sentences,
    tokenize,
)
from .diachronic import (
    ElectionCalendar,
    TimeWindow,
    TopicEmotionSeries,
    TrendResult,
    corpus_windows,
    detect_trends,
    monthly_windows,
    rolling_emotion_shares,
    rolling_was,
    speech_was,
    topic_emotion_series,
    yearly_was,
)
from .emotions import (
    EMOTIONS,
    AnnotationError,
    AnnotationSet,
    EmotionLabel,
    SentencePrediction,
    UnknownLabelError,
    annotate_with_lexicon,
    emit_predictions,
    emotion_distribution,
    ingest_predictions,
    sentiment_rollup,
)
from .lda import (
    LdaModel,
    ModelChecksumError,
    ModelFileError,
    ModelVersionError,
    TopicLabelMap,
    Vocabulary,
    build_vocabulary,
    infer_topics,
    load_model,
    save_model,
    top_words,
    train_lda,
)
from .report import ChartSeries, ChartStyle, emit_crosstable_csv, emit_heat_table, emit_timeseries_chart
from .stats import OlsFit, ols_fit, regularized_incomplete_beta, student_t_two_sided_p
from .synchronic import (
    CrossTable,
    RelativeDifferenceTable,
    SkewnessGroup,
    build_subcorpora,
    classify_skewness,
    classify_table,
    relative_differences,
    skewness_detail,
    topic_averages,
    topic_prevalences,
)

__all__ = [
    "Corpus",
    "CorpusFormatError",
    "FilterReport",
    "Sentence",
    "SpeakerRole",
    "Speech",
    "emit_corpus",
    "filter_corpus",
    "ingest_corpus",
    "segment_sentences",
    "tokenize",
    "ElectionCalendar",
    "TimeWindow",
    "TopicEmotionSeries",
    "TrendResult",
    "corpus_windows",
    "detect_trends",
    "monthly_windows",
    "rolling_emotion_shares",
    "rolling_was",
    "speech_was",
    "topic_emotion_series",
    "yearly_was",
    "EMOTIONS",
    "AnnotationError",
    "AnnotationSet",
    "EmotionLabel",
    "SentencePrediction",
    "UnknownLabelError",
    "annotate_with_lexicon",
    "emit_predictions",
    "emotion_distribution",
    "ingest_predictions",
    "sentiment_rollup",
    "LdaModel",
    "ModelChecksumError",
    "ModelFileError",
    "ModelVersionError",
    "TopicLabelMap",
    "Vocabulary",
    "build_vocabulary",
    "infer_topics",
    "load_model",
    "save_model",
    "top_words",
    "train_lda",
    "ChartSeries",
    "ChartStyle",
    "emit_crosstable_csv",
    "emit_heat_table",
    "emit_timeseries_chart",
    "OlsFit",
    "ols_fit",
    "regularized_incomplete_beta",
    "student_t_two_sided_p",
    "CrossTable",
    "RelativeDifferenceTable",
    "SkewnessGroup",
    "build_subcorpora",
    "classify_skewness",
    "classify_table",
    "relative_differences",
    "skewness_detail",
    "topic_averages",
    "topic_prevalences",
]
