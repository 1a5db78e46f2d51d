"""
Flagging topic-emotion trends
=============================

A trend counts as meaningful when the OLS fit of prevalence on time has
R^2 above 0.3 and a two-sided slope p-value below 0.05. Here we check how
often that rule fires on planted trends and on noise.
"""
import math

import numpy as np

from topiclandscape import EmotionLabel, TimeWindow, TopicEmotionSeries, detect_trends, ols_fit

n = 120
windows = [TimeWindow.at(2005, 3)]
windows += [TimeWindow(windows[0].anchor + i) for i in range(1, n)]
x = np.arange(n)

#%%
# Noise is scaled so that the planted line explains about 60% of the variance.
slope = 0.001
sigma = math.sqrt(slope**2 * (n * n - 1) / 12 * 0.4 / 0.6)
rng = np.random.default_rng(11)
y = 0.05 + slope * x + rng.normal(0, sigma, n)
fit = ols_fit(x, y)
print(f"slope {fit.slope:.5f}  R^2 {fit.r_squared:.3f}  p {fit.p_value:.2e}")

#%%
# 100 replications each of a planted trend and of pure noise.
hits = {"planted": 0, "noise": 0}
for rep in range(100):
    r = np.random.default_rng([11, rep])
    series = [
        TopicEmotionSeries(0, EmotionLabel.HOPE, windows, 0.05 + slope * x + r.normal(0, sigma, n)),
        TopicEmotionSeries(1, EmotionLabel.HOPE, windows, 0.05 + r.normal(0, sigma, n)),
    ]
    planted, noise = detect_trends(series)
    hits["planted"] += planted.meaningful
    hits["noise"] += noise.meaningful
print(hits)

#%%
# Gaps (windows where the label never occurs) are skipped, not filled, and
# the remaining points keep their time positions.
y_gappy = 0.05 + slope * x + rng.normal(0, sigma, n)
y_gappy[30:50] = np.nan
[res] = detect_trends([TopicEmotionSeries(0, EmotionLabel.FEAR, windows, y_gappy)])
print(res.n_points, "points, meaningful:", res.meaningful)

#%%
# A short series is reported as insufficient instead of being fitted.
[short] = detect_trends([TopicEmotionSeries(0, EmotionLabel.FEAR, windows[:8], y[:8])])
print("insufficient data:", short.insufficient_data)
