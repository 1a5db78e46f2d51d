"""
End-to-end run of the command-line pipeline
===========================================

Generate a synthetic corpus with two planted emotion drifts, then run every
stage through the ``topiclandscape`` command and read back the flagged trends.
Takes about half a minute.
"""
import csv
import json
import shutil
import subprocess
import sys
from pathlib import Path

import topiclandscape

work = Path("demo_output/e2e")
work.mkdir(parents=True, exist_ok=True)
cfg = work / "config.json"
shutil.copy(Path(topiclandscape.__file__).parent / "data" / "synthetic_drift_scenario.json", cfg)
config = json.loads(cfg.read_text())
print("drifts:", config["synth"]["drifts"])

#%%
for stage in ["synth", "filter", "train-topics", "landscape", "timeseries", "trends", "report"]:
    subprocess.run([sys.executable, "-m", "topiclandscape", stage, "--config", str(cfg), "--quiet"], check=True)
    print("done:", stage)

#%%
# Learned topic numbers are arbitrary; the top word "t{k}w{j}" names the
# planted topic k behind each one.
out = work / "out"
with open(out / "train-topics_top_words.csv", newline="") as fh:
    planted_of = {r["topic_label"]: r["token"].split("w")[0] for r in csv.DictReader(fh) if r["rank"] == "1"}
with open(out / "trends_results.csv", newline="") as fh:
    for r in csv.DictReader(fh):
        if r["meaningful"] == "true":
            print(f"{r['topic_label']} (planted {planted_of[r['topic_label']]}) {r['emotion_code']}: "
                  f"slope {float(r['slope']):.2e} R^2 {float(r['r_squared']):.2f}")

#%%
print(sorted(p.name for p in out.iterdir()))
