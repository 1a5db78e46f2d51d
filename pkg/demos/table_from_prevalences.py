"""
Emotion-skewed topics from a prevalence table
=============================================

Starting from the bundled 26-topic prevalence table, compute how much each
topic is over- or underrepresented in every emotion subcorpus and sort the
topics into skewness groups.
"""
import sys

import numpy as np

from topiclandscape import EMOTIONS, classify_table, emit_heat_table, relative_differences, skewness_detail
from topiclandscape.testkit import appendix_b_fixture

fixture = appendix_b_fixture()
table = fixture.crosstable()
print(table.prevalence.shape, "topics x emotion columns")

#%%
# Each cell becomes (prevalence - topic average) / topic average. The
# average is the plain mean over the nine emotion columns.
rel = relative_differences(table)
print("range:", rel.rounded(2).min(), "to", rel.rounded(2).max())
energy = rel.rounded(2)[rel.topics.index("Energy")]
print("Energy:", {e.code: float(v) for e, v in zip(EMOTIONS, energy)})

#%%
# Groups are decided on the two-decimal values. Crime sits exactly on the
# 0.50 line for SADN, so it only becomes neutrally skewed once rounded.
print("Crime, rounded:", skewness_detail(rel.row("Crime")))
print("Crime, raw:    ", skewness_detail(rel.row("Crime"), decimals=None))

#%%
# The heat table groups rows and marks cells above +0.5 in bold.
groups = classify_table(rel)
emit_heat_table(rel, groups, "markdown", sys.stdout)

#%%
# Every cell agrees with the reference values at two decimals.
assert np.array_equal(rel.rounded(2), fixture.expected_reldiff)
assert groups == fixture.expected_groups
