"""
Weighted average sentiment and emotion shares over time
=======================================================

A synthetic corpus whose HOPE share grows over ten years. Speech-level
sentiment is averaged over trailing three-month windows and plotted as SVG.
"""
from pathlib import Path

from topiclandscape import (
    ElectionCalendar,
    EmotionLabel,
    corpus_windows,
    filter_corpus,
    rolling_emotion_shares,
    rolling_was,
    speech_was,
    yearly_was,
)
from topiclandscape.report import ChartSeries, ChartStyle, emit_timeseries_chart
from topiclandscape.testkit import Drift, SynthSpec, synthesize

spec = SynthSpec(n_topics=1, speeches_per_month=30, n_months=120, start="2005-01",
                 mixtures=[{"HOPE": 0.1, "FEAR": 0.3, "NEUT": 0.6}],
                 drifts=[Drift(0, "HOPE", 0.004)], speaker_fraction=0.1, seed=3)
corpus, annotations, truth = synthesize(spec)
corpus, report = filter_corpus(corpus)
print(report)

#%%
# One speech: polarity (+1, 0, -1) times the label probability, averaged
# over its sentences.
first = corpus[0]
for s in first.sentences:
    p = annotations[(first.id, s.index)]
    print(f"  {p.label.code} {p.probability:.2f}")
print("WAS of", first.id, "=", round(speech_was(first, annotations), 4))

#%%
# Windows end on each month and cover it and the two before it. Only
# windows lying wholly inside the data are used.
windows = corpus_windows(corpus)
was = rolling_was(corpus, annotations, windows)
print(len(windows), "windows;", was[0].window.label, round(was[0].was, 3), "->",
      was[-1].window.label, round(was[-1].was, 3))
for y in yearly_was(corpus, annotations)[::3]:
    print(y.year, round(y.was, 3))

#%%
# Shares weight each hard label by its probability.
shares = rolling_emotion_shares(corpus, annotations, windows)
hope = [p for p in shares if p.label is EmotionLabel.HOPE]
print("HOPE share", round(hope[0].share, 3), "->", round(hope[-1].share, 3))

#%%
out = Path("demo_output")
out.mkdir(exist_ok=True)
elections = ElectionCalendar.parse(["2007-03-18", "2011-04-17"])
series = [ChartSeries("WAS", [(p.window.center_date, p.was) for p in was]),
          ChartSeries("HOPE share", [(p.window.center_date, p.share) for p in hope])]
with open(out / "sentiment.svg", "w") as fh:
    emit_timeseries_chart(series, elections, ChartStyle(title="Synthetic sentiment"), fh)
print("wrote", out / "sentiment.svg")
