"""Reference topic prevalences per emotion subcorpus, with expected differences and groups.

Covers 26 topics of a Finnish parliamentary corpus and 9 emotion
categories. The first block holds prevalence rows plus a transcribed
average column. The second holds the expected two-decimal proportional
differences and topic groups. Values are constants and are never
recomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..emotions import EMOTIONS, EmotionLabel
from ..synchronic import CrossTable, SkewnessGroup

_SOURCE_COLUMNS = tuple(EmotionLabel(c) for c in
                       ("HATE", "SADN", "FEAR", "NEGA", "NEUT", "LOVE", "HOPE", "JOY-", "POSI"))

# topic, HATE, SADN, FEAR, NEGA, NEUT, LOVE, HOPE, JOY-, POSI, average
_PREVALENCE = [
    ('Commerce', 0.01439, 0.01136, 0.01622, 0.00669, 0.01368, 0.00498, 0.0163, 0.01032, 0.01242, 0.01182),
    ('Social benefits', 0.01869, 0.04944, 0.04896, 0.01518, 0.03038, 0.02167, 0.05126, 0.02925, 0.04597, 0.03453),
    ('Energy', 0.01588, 0.01227, 0.03356, 0.01181, 0.01376, 0.0099, 0.03941, 0.01307, 0.01175, 0.01793),
    ('Regionality', 0.00689, 0.00988, 0.01005, 0.00677, 0.00752, 0.00735, 0.01046, 0.01018, 0.01553, 0.00940),
    ('Education', 0.01067, 0.01555, 0.01255, 0.00947, 0.0184, 0.01625, 0.0221, 0.0217, 0.03537, 0.01801),
    ('Pensions', 0.01188, 0.01435, 0.01448, 0.00822, 0.02674, 0.02104, 0.00849, 0.0115, 0.00666, 0.01371),
    ('Crime', 0.01586, 0.02257, 0.01728, 0.01108, 0.02596, 0.01367, 0.00941, 0.01189, 0.00789, 0.01507),
    ('Employment', 0.02238, 0.03262, 0.0361, 0.01708, 0.01934, 0.01349, 0.03583, 0.02384, 0.00048, 0.02235),
    ('Legislation', 0.07341, 0.06934, 0.06834, 0.06341, 0.17301, 0.06456, 0.04936, 0.04961, 0.04845, 0.07328),
    ('Traffic and transport', 0.00629, 0.0099, 0.00866, 0.00492, 0.01878, 0.00721, 0.0102, 0.01018, 0.00388, 0.00889),
    ('Question time', 0.00348, 0.00284, 0.00212, 0.00426, 0.0083, 0.00729, 0.00159, 0.00424, 0.0021, 0.00402),
    ('Administration', 0.0504, 0.05112, 0.04714, 0.04954, 0.06556, 0.05352, 0.0459, 0.05317, 0.07704, 0.05482),
    ('Public sector', 0.10974, 0.16549, 0.22017, 0.092, 0.16327, 0.15286, 0.32037, 0.24064, 0.04972, 0.16825),
    ('Foreign and security policy', 0.02038, 0.01955, 0.02648, 0.01733, 0.03176, 0.02961, 0.04234, 0.03796, 0.02242, 0.02754),
    ('Parliamentary factions', 0.11898, 0.0989, 0.0517, 0.15614, 0.02831, 0.07898, 0.03814, 0.06553, 0.05912, 0.07731),
    ('Voting', 0.003, 0.00319, 0.00202, 0.00357, 0.00477, 0.00466, 0.00189, 0.00313, 0.00507, 0.00348),
    ('Law proposals', 0.00765, 0.00372, 0.00321, 0.00717, 0.03198, 0.00434, 0.00259, 0.00395, 0.00027, 0.00721),
    ('Democracy', 0.03946, 0.02587, 0.02016, 0.03601, 0.04099, 0.04251, 0.02481, 0.03193, 0.01776, 0.03106),
    ('Development cooperation', 0.007, 0.00736, 0.00666, 0.00578, 0.0106, 0.01478, 0.0101, 0.01733, 0.0161, 0.01063),
    ('Agriculture', 0.00458, 0.00714, 0.00779, 0.00387, 0.00568, 0.00519, 0.00871, 0.00627, 0.00244, 0.00574),
    ('Social and health care', 0.01252, 0.0131, 0.01264, 0.00834, 0.02111, 0.01006, 0.01258, 0.00998, 0.00549, 0.01176),
    ('Taxation', 0.02635, 0.02216, 0.02327, 0.01499, 0.02217, 0.00684, 0.01369, 0.01202, 0.00803, 0.01661),
    ('GENERAL', 0.3346, 0.25891, 0.21304, 0.40053, 0.16432, 0.3745, 0.16431, 0.25676, 0.43914, 0.28957),
    ('Housing', 0.02962, 0.02564, 0.03004, 0.01849, 0.0188, 0.01283, 0.02035, 0.0211, 0.05523, 0.02579),
    ('Social problems', 0.01207, 0.01267, 0.01309, 0.01045, 0.00899, 0.0104, 0.00752, 0.00889, 0.04012, 0.01380),
    ('Budget', 0.0238, 0.03505, 0.0543, 0.01689, 0.02583, 0.01151, 0.03231, 0.03556, 0.01152, 0.02742),
]

# topic, group, HATE, SADN, FEAR, NEGA, NEUT, LOVE, HOPE, JOY-, POSI
_TABLE_1 = [
    ('Employment', 'polarized', 0.00, 0.46, 0.62, -0.24, -0.13, -0.40, 0.60, 0.07, -0.98),
    ('Energy', 'polarized', -0.11, -0.32, 0.87, -0.34, -0.23, -0.45, 1.20, -0.27, -0.34),
    ('Parliamentary factions', 'negatively skewed', 0.54, 0.28, -0.33, 1.02, -0.63, 0.02, -0.51, -0.15, -0.24),
    ('Budget', 'negatively skewed', -0.13, 0.28, 0.98, -0.38, -0.06, -0.58, 0.18, 0.30, -0.58),
    ('Taxation', 'negatively skewed', 0.59, 0.33, 0.40, -0.10, 0.33, -0.59, -0.18, -0.28, -0.52),
    ('Crime', 'neutrally skewed', 0.05, 0.50, 0.15, -0.26, 0.72, -0.09, -0.38, -0.21, -0.48),
    ('Law proposals', 'neutrally skewed', 0.06, -0.48, -0.55, -0.01, 3.44, -0.40, -0.64, -0.45, -0.96),
    ('Legislation', 'neutrally skewed', 0.00, -0.05, -0.07, -0.13, 1.36, -0.12, -0.33, -0.32, -0.34),
    ('Traffic and transport', 'neutrally skewed', -0.29, 0.11, -0.03, -0.45, 1.11, -0.19, 0.15, 0.14, -0.56),
    ('Social and health care', 'neutrally skewed', 0.06, 0.11, 0.08, -0.29, 0.80, -0.14, 0.07, -0.15, -0.53),
    ('Question time', 'neutrally skewed', -0.14, -0.29, -0.47, 0.06, 1.06, 0.81, -0.60, 0.05, -0.48),
    ('Pensions', 'neutrally skewed', -0.13, 0.05, 0.06, -0.40, 0.95, 0.54, -0.38, -0.16, -0.51),
    ('Foreign and security policy', 'positively skewed', -0.26, -0.29, -0.04, -0.37, 0.15, 0.08, 0.54, 0.38, -0.19),
    ('Public sector', 'positively skewed', -0.35, -0.02, 0.31, -0.45, -0.03, -0.09, 0.90, 0.43, -0.70),
    ('Agriculture', 'positively skewed', -0.20, 0.24, 0.36, -0.33, -0.01, -0.10, 0.52, 0.09, -0.57),
    ('Development cooperation', 'positively skewed', -0.34, -0.31, -0.37, -0.46, 0.00, 0.39, -0.05, 0.63, 0.51),
    ('Social problems', 'average', -0.13, -0.08, -0.05, -0.24, -0.35, -0.25, -0.46, -0.36, 1.91),
    ('Education', 'average', -0.41, -0.14, -0.30, -0.47, 0.02, -0.10, 0.23, 0.21, 0.96),
    ('Housing', 'average', 0.15, -0.01, 0.16, -0.28, -0.27, -0.50, -0.21, -0.18, 1.14),
    ('Regionality', 'average', -0.27, 0.05, 0.07, -0.28, -0.20, -0.22, 0.11, 0.08, 0.65),
    ('GENERAL', 'average', 0.16, -0.11, -0.26, 0.38, -0.43, 0.29, -0.43, -0.11, 0.52),
    ('Administration', 'average', -0.08, -0.07, -0.14, -0.10, 0.20, -0.02, -0.16, -0.03, 0.41),
    ('Commerce', 'average', 0.22, -0.04, 0.37, -0.43, 0.16, -0.58, 0.38, -0.13, 0.05),
    ('Democracy', 'average', 0.27, -0.17, -0.35, 0.16, 0.32, 0.37, -0.20, 0.03, -0.43),
    ('Social benefits', 'average', -0.46, 0.43, 0.42, -0.56, -0.12, -0.37, 0.48, -0.15, 0.33),
    ('Voting', 'average', -0.14, -0.08, -0.42, 0.03, 0.37, 0.34, -0.46, -0.10, 0.46),
]

#: topic index -> interpretation, in topic-model order
APPENDIX_A_LABELS = {
    0: "commerce", 1: "social benefits", 2: "energy", 3: "regionality", 4: "education",
    5: "pensions", 6: "crime", 7: "employment", 8: "legislation", 9: "traffic and transport",
    10: "question time", 11: "administration", 12: "public sector",
    13: "foreign and security policy", 14: "parliamentary factions", 15: "voting",
    16: "law proposals", 17: "democracy", 18: "development cooperation", 19: "agriculture",
    20: "social and health care", 21: "taxation", 22: "GENERAL", 23: "housing",
    24: "social problems", 25: "budget",
}

# topics of the "average" group that are over threshold in POSI only
_POSI_SUBGROUP = ("Social problems", "Education", "Housing", "Regionality", "GENERAL")

_GROUP_NAMES = {
    "polarized": SkewnessGroup.POLARIZED,
    "negatively skewed": SkewnessGroup.NEGATIVELY_SKEWED,
    "neutrally skewed": SkewnessGroup.NEUTRALLY_SKEWED,
    "positively skewed": SkewnessGroup.POSITIVELY_SKEWED,
    "average": SkewnessGroup.AVERAGE,
}


def _to_emotion_order(values) -> np.ndarray:
    by_label = dict(zip(_SOURCE_COLUMNS, values))
    return np.array([by_label[e] for e in EMOTIONS], dtype=float)


@dataclass(frozen=True)
class AppendixBFixture:
    topics: tuple[str, ...]
    prevalence_matrix: np.ndarray = field(repr=False)  # topics x EMOTIONS
    transcribed_averages: np.ndarray = field(repr=False)
    expected_reldiff: np.ndarray = field(repr=False)  # topics x EMOTIONS, 2 dp
    expected_groups: dict = field(repr=False)

    def _row(self, topic: str) -> int:
        return self.topics.index(topic)

    def prevalence(self, topic: str, label) -> float:
        return float(self.prevalence_matrix[self._row(topic), EMOTIONS.index(EmotionLabel(label))])

    def average(self, topic: str) -> float:
        return float(self.transcribed_averages[self._row(topic)])

    def expected_group(self, topic: str) -> SkewnessGroup:
        return self.expected_groups[topic]

    def expected_cell(self, topic: str, label) -> float:
        return float(self.expected_reldiff[self._row(topic), EMOTIONS.index(EmotionLabel(label))])

    def crosstable(self) -> CrossTable:
        return CrossTable(list(self.topics), self.prevalence_matrix.copy())


def appendix_b_fixture() -> AppendixBFixture:
    topics = tuple(r[0] for r in _PREVALENCE)
    prev = np.array([_to_emotion_order(r[1:10]) for r in _PREVALENCE])
    avgs = np.array([r[10] for r in _PREVALENCE], dtype=float)
    table1 = {r[0]: r for r in _TABLE_1}
    reldiff = np.array([_to_emotion_order(table1[t][2:]) for t in topics])
    groups = {}
    for t in topics:
        g = _GROUP_NAMES[table1[t][1]]
        if t in _POSI_SUBGROUP:
            g = SkewnessGroup.AVERAGE_POSI_SUBGROUP
        groups[t] = g
    for arr in (prev, avgs, reldiff):
        arr.setflags(write=False)
    return AppendixBFixture(topics, prev, avgs, reldiff, groups)
