"""Command-line front end.

Every subcommand reads one JSON config and writes ``<stage>_<name>.<ext>``
files plus ``manifest.json`` into the output directory. Later stages reuse
``train-topics_model.json`` and ``timeseries_topic_emotion.csv`` from that
directory when present.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import hashlib
import json
import logging
import sys
import time
from functools import cached_property
from pathlib import Path

import numpy as np
from filelock import FileLock, Timeout

from . import __version__
from .config import ConfigError, RunConfig, load_config
from .corpus import CorpusFormatError, SpeakerRole, emit_corpus, filter_corpus, ingest_corpus, sentence_tokens
from .diachronic import (
    ElectionCalendar,
    TimeWindow,
    TopicEmotionSeries,
    corpus_windows,
    detect_trends,
    month_ordinal,
    rolling_emotion_shares,
    rolling_was,
    topic_emotion_series,
    yearly_was,
)
from .emotions import (
    EMOTIONS,
    AnnotationError,
    AnnotationSet,
    EmotionLabel,
    annotate_with_lexicon,
    emit_predictions,
    emotion_distribution,
    ingest_predictions,
    sentiment_rollup,
)
from .lda import ModelFileError, TopicLabelMap, infer_topics, load_model, save_model, top_words, train_lda
from .report import ChartSeries, ChartStyle, emit_crosstable_csv, emit_heat_table, emit_timeseries_chart
from .synchronic import build_subcorpora, relative_differences, skewness_detail, topic_prevalences
from .testkit import APPENDIX_A_LABELS, SynthSpec, SynthSpecError, appendix_b_fixture, generate_synthetic

log = logging.getLogger("topiclandscape")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

MODEL_FILE = "train-topics_model.json"
SERIES_FILE = "timeseries_topic_emotion.csv"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# pipeline state

def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _num(x: float) -> str:
    return repr(float(x))


class Pipeline:
    def __init__(self, cfg: RunConfig, out_dir: Path, fmt: str | None = None):
        self.cfg = cfg
        self.out = out_dir
        self.formats = [fmt] if fmt else list(cfg.formats)
        self.outputs: list[str] = []
        self.inputs: dict[str, str] = {}

    # -- inputs --------------------------------------------------------------
    def _path(self, attr: str, required: bool = True) -> Path | None:
        p = self.cfg.resolve(getattr(self.cfg, attr))
        if p is None:
            if required:
                raise DataError(f"config does not set {attr}")
            return None
        if not p.exists():
            raise DataError(f"{attr}: file not found: {p}")
        return p

    def check_inputs(self, *attrs: str) -> None:
        for a in attrs:
            p = self._path(a, required=False)
            if p is not None:
                self.inputs[a] = _sha256(p)

    @cached_property
    def raw_corpus(self):
        path = self._path("corpus_path")
        with open(path, encoding="utf-8") as fh:
            corpus = ingest_corpus(fh)
        if corpus.unknown_fields:
            log.warning("%s: ignored %d unknown field(s)", path, corpus.unknown_fields)
        log.info("ingested %d speeches from %s", len(corpus), path)
        return corpus

    @cached_property
    def filtered(self):
        f = self.cfg.filter
        return filter_corpus(self.raw_corpus, f.min_sentences, [SpeakerRole(r) for r in f.excluded_roles])

    @property
    def corpus(self):
        return self.filtered[0]

    @cached_property
    def raw_annotations(self) -> AnnotationSet:
        path = self._path("predictions_path")
        with open(path, encoding="utf-8") as fh:
            return ingest_predictions(fh, self.raw_corpus)

    @cached_property
    def annotations(self) -> AnnotationSet:
        corpus = self.corpus
        return AnnotationSet(p for p in self.raw_annotations.predictions() if p.speech_id in corpus)

    @cached_property
    def model(self):
        path = self._path("model_path", required=False)
        if path is None and (self.out / MODEL_FILE).exists():
            path = self.out / MODEL_FILE
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                model = load_model(fh)
            self.inputs.setdefault("model", _sha256(path))
            log.info("loaded topic model from %s", path)
            return model
        return self.train()

    def train(self):
        t = self.cfg.topics
        docs = [[tok for s in sp.sentences for tok in sentence_tokens(s)] for sp in self.corpus]
        log.info("training LDA: k=%d, %d documents, %d iterations", t.k, len(docs), t.iterations)
        model = train_lda(docs, k=t.k, alpha=t.alpha, beta=t.beta, iterations=t.iterations,
                          seed=self.cfg.seed, min_count=t.min_count, stopwords=t.stopwords)
        with self.open(MODEL_FILE) as fh:
            save_model(model, fh)
        return model

    @cached_property
    def topic_labels(self) -> TopicLabelMap:
        labels = self.cfg.topic_labels
        if labels == "appendix_a":
            mapping = dict(APPENDIX_A_LABELS)
        elif isinstance(labels, dict):
            mapping = {int(k): v for k, v in labels.items()}
        elif labels is None:
            mapping = {}
        else:
            raise ConfigError(f"topic_labels must be an object or 'appendix_a', got {labels!r}")
        return TopicLabelMap(mapping)

    def topic_names(self, k: int) -> list[str]:
        return [self.topic_labels.name(i) for i in range(k)]

    @cached_property
    def windows(self) -> list[TimeWindow]:
        w = self.cfg.windows
        return corpus_windows(self.corpus, w.span, w.alignment)

    @cached_property
    def series(self) -> dict:
        path = self.out / SERIES_FILE
        if path.exists():
            log.info("reusing %s", path)
            return self._read_series(path)
        return self._compute_series()

    def _compute_series(self) -> dict:
        inf = self.cfg.inference
        log.info("inferring topic distributions for %d windows x %d labels", len(self.windows), len(EMOTIONS))
        return topic_emotion_series(self.model, self.corpus, self.annotations, self.windows,
                                    seed=self.cfg.seed, fold_in_iterations=inf.fold_in_iterations,
                                    burn_in=inf.burn_in, max_tokens=inf.max_tokens)

    def _read_series(self, path: Path) -> dict:
        w = self.cfg.windows
        offset = 0 if w.alignment == "trailing" else (w.span - 1) - (w.span - 1) // 2
        rows: dict = {}
        anchors: set[int] = set()
        with open(path, encoding="utf-8", newline="") as fh:
            for r in csv.DictReader(fh):
                y, m = (int(x) for x in r["window_end"].split("-"))
                anchor = month_ordinal(y, m) - offset
                anchors.add(anchor)
                val = float(r["prevalence"]) if r["prevalence"] else np.nan
                rows[(r["topic_label"], EmotionLabel(r["emotion_code"]), anchor)] = val
        names = list(dict.fromkeys(k[0] for k in rows))
        windows = [TimeWindow(a, w.span, w.alignment) for a in sorted(anchors)]
        out = {}
        for t, name in enumerate(names):
            for label in EMOTIONS:
                vals = np.array([rows.get((name, label, win.anchor), np.nan) for win in windows])
                out[(t, label)] = TopicEmotionSeries(t, label, windows, vals)
        return out

    # -- outputs -------------------------------------------------------------
    def open(self, name: str):
        self.out.mkdir(parents=True, exist_ok=True)
        self.outputs.append(name)
        return open(self.out / name, "w", encoding="utf-8", newline="")

    def write_json(self, name: str, obj) -> None:
        with self.open(name) as fh:
            json.dump(obj, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def write_csv(self, name: str, header, rows) -> None:
        with self.open(name) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)


# ---------------------------------------------------------------------------
# stages

def stage_ingest(p: Pipeline) -> None:
    p.check_inputs("corpus_path", "predictions_path")
    corpus = p.raw_corpus
    summary = {"speeches": len(corpus), "sentences": corpus.n_sentences,
               "unknown_fields": corpus.unknown_fields}
    if p.cfg.predictions_path:
        summary["predictions"] = len(p.raw_annotations)
        summary["coverage"] = p.raw_annotations.coverage(corpus)
    p.write_json("ingest_summary.json", summary)


def stage_filter(p: Pipeline) -> None:
    p.check_inputs("corpus_path")
    corpus, report = p.filtered
    with p.open("filter_corpus.jsonl") as fh:
        emit_corpus(corpus, fh)
    p.write_json("filter_report.json", report.__dict__)
    log.info("kept %d of %d speeches", report.speeches_out, report.speeches_in)


def stage_train(p: Pipeline) -> None:
    p.check_inputs("corpus_path")
    model = p.train()
    names = p.topic_names(model.k)
    rows = [(t, names[t], rank + 1, tok, _num(prob))
            for t in range(model.k) for rank, (tok, prob) in enumerate(top_words(model, t, 10))]
    p.write_csv("train-topics_top_words.csv", ["topic", "topic_label", "rank", "token", "probability"], rows)
    if model.train_perplexity is not None:
        log.info("training perplexity %.3f", model.train_perplexity)


def stage_infer(p: Pipeline) -> None:
    p.check_inputs("corpus_path", "model_path")
    model = p.model
    inf = p.cfg.inference
    names = p.topic_names(model.k)
    rows = []
    for i, speech in enumerate(p.corpus):
        toks = [t for s in speech.sentences for t in sentence_tokens(s)]
        res = infer_topics(model, toks, inf.fold_in_iterations, inf.burn_in, seed=[p.cfg.seed, i],
                           max_tokens=inf.max_tokens)
        rows.append([speech.id, *(_num(v) for v in res.distribution), str(res.prior_fallback).lower()])
    p.write_csv("infer-topics_speech_topics.csv", ["speech_id", *names, "prior_fallback"], rows)


def stage_annotate(p: Pipeline) -> None:
    p.check_inputs("corpus_path", "lexicon_path")
    path = p._path("lexicon_path")
    lexicon = json.loads(path.read_text(encoding="utf-8"))
    try:
        lexicon = {k: EmotionLabel.parse(v) for k, v in lexicon.items()}
    except AnnotationError as e:
        raise DataError(f"{path}: {e}") from None
    annotations = annotate_with_lexicon(p.corpus, lexicon)
    with p.open("annotate_predictions.jsonl") as fh:
        emit_predictions(annotations, fh)


def _has_corpus(p: Pipeline) -> bool:
    return bool(p.cfg.corpus_path and p.cfg.predictions_path)


def stage_landscape(p: Pipeline) -> None:
    cfg = p.cfg
    if _has_corpus(p):
        p.check_inputs("corpus_path", "predictions_path")
        dist = emotion_distribution(p.annotations)
        p.write_csv("landscape_distribution.csv", ["emotion_code", "share"],
                    [(e.code, _num(v)) for e, v in dist.items()])
        roll = sentiment_rollup(dist)
        p.write_csv("landscape_sentiment.csv", ["polarity", "share"], [(k, _num(v)) for k, v in roll.items()])

    if cfg.crosstable == "appendix_b":
        table = appendix_b_fixture().crosstable()
    elif cfg.crosstable is not None:
        raise ConfigError(f"unknown crosstable source {cfg.crosstable!r}")
    else:
        if not _has_corpus(p):
            raise DataError("landscape needs corpus_path and predictions_path, or crosstable='appendix_b'")
        p.check_inputs("model_path")
        inf = cfg.inference
        subcorpora = build_subcorpora(p.corpus, p.annotations)
        table = topic_prevalences(p.model, subcorpora, seed=cfg.seed,
                                  fold_in_iterations=inf.fold_in_iterations, burn_in=inf.burn_in,
                                  max_tokens=inf.max_tokens, topic_labels=dict(p.topic_labels))
    with p.open("landscape_crosstable.csv") as fh:
        emit_crosstable_csv(table, fh)

    rel = relative_differences(table)
    sk = cfg.skewness
    details = {t: skewness_detail(row, sk.threshold, sk.decimals, sk.exclude_posi)
               for t, row in zip(rel.topics, rel.values)}
    groups = {t: g for t, (g, _) in details.items()}
    for fmt in ["csv"] + [f for f in p.formats if f != "csv"]:
        ext = {"csv": "csv", "markdown": "md", "html": "html"}[fmt]
        with p.open(f"landscape_reldiff.{ext}") as fh:
            emit_heat_table(rel, groups, fmt, fh)
    p.write_csv("landscape_groups.csv", ["topic", "group", "rule"],
                [(t, g.value, rule) for t, (g, rule) in details.items()])


def stage_timeseries(p: Pipeline) -> None:
    p.check_inputs("corpus_path", "predictions_path", "model_path")
    corpus, ann, wins = p.corpus, p.annotations, p.windows
    p.write_csv("timeseries_was.csv", ["window_end", "was", "n_speeches"],
                [(pt.window.label, _num(pt.was), pt.n_speeches) for pt in rolling_was(corpus, ann, wins)])
    p.write_csv("timeseries_was_yearly.csv", ["year", "was", "n_speeches"],
                [(y.year, _num(y.was), y.n_speeches) for y in yearly_was(corpus, ann)])
    p.write_csv("timeseries_emotion_shares.csv", ["window_end", "emotion_code", "share"],
                [(pt.window.label, pt.label.code, _num(pt.share))
                 for pt in rolling_emotion_shares(corpus, ann, wins)])
    series = p._compute_series()
    p.__dict__["series"] = series
    names = p.topic_names(p.model.k)
    rows = []
    for (t, label), s in sorted(series.items(), key=lambda kv: (kv[0][0], EMOTIONS.index(kv[0][1]))):
        for w, v in zip(s.windows, s.values):
            rows.append((w.label, names[t], label.code, "" if np.isnan(v) else _num(v)))
    p.write_csv(SERIES_FILE, ["window_end", "topic_label", "emotion_code", "prevalence"], rows)


def _trend_results(p: Pipeline):
    tr = p.cfg.trends
    return detect_trends(p.series, r2_min=tr.r2_min, alpha=tr.alpha, min_points=tr.min_points)


def stage_trends(p: Pipeline) -> None:
    if not (p.out / SERIES_FILE).exists():
        p.check_inputs("corpus_path", "predictions_path", "model_path")
    results = _trend_results(p)
    n_topics = max((r.topic for r in results), default=-1) + 1
    names = p.topic_names(n_topics)
    rows = [(names[r.topic], r.label.code, _num(r.slope), _num(r.intercept), _num(r.r_squared),
             _num(r.p_value), r.n_points, str(r.meaningful).lower()) for r in results]
    p.write_csv("trends_results.csv", ["topic_label", "emotion_code", "slope", "intercept",
                                       "r_squared", "p_value", "n_points", "meaningful"], rows)
    log.info("%d meaningful topic-emotion trend(s)", sum(r.meaningful for r in results))


def stage_report(p: Pipeline) -> None:
    cfg = p.cfg
    if cfg.crosstable or _has_corpus(p):
        stage_landscape(p)
    if not _has_corpus(p):
        return
    stage_timeseries(p)
    stage_trends(p)
    corpus, ann, wins = p.corpus, p.annotations, p.windows
    elections = ElectionCalendar.parse(cfg.elections)
    if len(corpus):
        dates = [s.date for s in corpus]
        elections.check_range(min(dates), max(dates))

    was = rolling_was(corpus, ann, wins)
    by_anchor = {pt.window.anchor: pt.was for pt in was}
    was_series = ChartSeries("3-month WAS", [(w.center_date, by_anchor.get(w.anchor)) for w in wins], "#000000")
    years = yearly_was(corpus, ann)
    year_series = ChartSeries("yearly WAS", [(dt.date(y.year, 7, 1), y.was) for y in years], "#d62728")
    with p.open("report_was.svg") as fh:
        emit_timeseries_chart([was_series, year_series], elections,
                              ChartStyle(title="Weighted average sentiment", y_label="WAS"), fh)

    shares = rolling_emotion_shares(corpus, ann, wins)
    table = {(pt.window.anchor, pt.label): pt.share for pt in shares}
    share_series = [ChartSeries(e.code, [(w.center_date, table.get((w.anchor, e))) for w in wins])
                    for e in EMOTIONS]
    with p.open("report_emotion_shares.svg") as fh:
        emit_timeseries_chart(share_series, elections,
                              ChartStyle(title="Emotion shares, 3-month windows", y_label="share"), fh)

    names = p.topic_names(p.model.k)
    flagged = [r for r in _trend_results(p) if r.meaningful]
    if flagged:
        chart = [ChartSeries.from_topic_emotion(p.series[(r.topic, r.label)], f"{names[r.topic]} / {r.label.code}")
                 for r in flagged]
        with p.open("report_trends.svg") as fh:
            emit_timeseries_chart(chart, elections,
                                  ChartStyle(title="Meaningful topic-emotion trends", y_label="prevalence"), fh)


def stage_synth(p: Pipeline, seed_override: int | None) -> None:
    if not p.cfg.synth:
        raise ConfigError("synth needs a 'synth' section in the config")
    spec_dict = dict(p.cfg.synth)
    if seed_override is not None or "seed" not in spec_dict:
        spec_dict["seed"] = p.cfg.seed
    try:
        spec = SynthSpec.from_dict(spec_dict)
    except TypeError as e:
        raise ConfigError(f"bad synth section: {e}") from None
    p.out.mkdir(parents=True, exist_ok=True)
    names = ["synth_corpus.jsonl", "synth_predictions.jsonl", "synth_truth.json"]
    generate_synthetic(spec, *(p.out / n for n in names))
    p.outputs.extend(names)


STAGES = {
    "ingest": (stage_ingest, "load and validate the corpus and predictions"),
    "filter": (stage_filter, "drop chair and short speeches"),
    "train-topics": (stage_train, "train the LDA topic model"),
    "infer-topics": (stage_infer, "per-speech topic distributions"),
    "annotate": (stage_annotate, "lexicon baseline emotion annotation"),
    "landscape": (stage_landscape, "emotion distribution, cross-table, differences, groups"),
    "timeseries": (stage_timeseries, "WAS, emotion shares and topic-emotion series"),
    "trends": (stage_trends, "OLS trend detection on topic-emotion series"),
    "report": (stage_report, "all tables and charts"),
    "synth": (stage_synth, "generate a synthetic test corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topiclandscape", description="Topic-emotion landscape analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_text) in STAGES.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, metavar="PATH", help="JSON run configuration")
        sp.add_argument("--seed", type=int, help="override the configured seed")
        sp.add_argument("--out", metavar="DIR", help="output directory (default from config)")
        sp.add_argument("--format", choices=["csv", "markdown", "html"], help="table format")
        sp.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    return parser


def _update_manifest(p: Pipeline, stage: str, started: float) -> None:
    path = p.out / "manifest.json"
    manifest = {"tool": "topiclandscape", "version": __version__, "runs": {}}
    if path.exists():
        try:
            manifest = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            log.warning("replacing unreadable %s", path)
    manifest["version"] = __version__
    manifest.setdefault("runs", {})[stage] = {
        "config": p.cfg.snapshot(),
        "input_sha256": p.inputs,
        "duration_seconds": round(time.perf_counter() - started, 3),
        "outputs": sorted(set(p.outputs)),
    }
    p.out.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run(args: argparse.Namespace) -> None:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    out = Path(args.out) if args.out else cfg.resolve(cfg.out_dir)
    cfg.out_dir = str(out)
    out.mkdir(parents=True, exist_ok=True)
    pipeline = Pipeline(cfg, out, args.format)
    started = time.perf_counter()
    try:
        with FileLock(str(out / ".lock"), timeout=0):
            if args.command == "synth":
                stage_synth(pipeline, args.seed)
            else:
                STAGES[args.command][0](pipeline)
            _update_manifest(pipeline, args.command, started)
    except Timeout:
        raise DataError(f"output directory {out} is locked by another run") from None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("topiclandscape: error: a subcommand is required")
    except UsageError as e:
        print(e, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)

    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)
    try:
        run(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ConfigError, CorpusFormatError, AnnotationError, ModelFileError,
            SynthSpecError, FileNotFoundError, IsADirectoryError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
