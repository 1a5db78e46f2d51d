"""
Recovering planted topics with collapsed Gibbs LDA
==================================================

Two topics with disjoint vocabularies are mixed per document. The sampler
should separate them, and fold-in inference should place new documents
on the right topic.
"""
import numpy as np

from topiclandscape import infer_topics, top_words, train_lda

rng = np.random.default_rng(0)
vocab = [[f"energy{j}" for j in range(20)], [f"school{j}" for j in range(20)]]
docs = []
for _ in range(200):
    weight = rng.beta(0.3, 0.3)
    picks = (rng.random(50) >= weight).astype(int)
    docs.append([vocab[k][rng.integers(20)] for k in picks])

#%%
# alpha defaults to 50 / K, beta to 0.01. Runs are reproducible from the seed.
model = train_lda(docs, k=2, iterations=500, seed=0)
print("training perplexity %.2f" % model.train_perplexity)
for k in range(model.k):
    print(k, [w for w, _ in top_words(model, k, 10)])

#%%
# Fold-in keeps phi fixed and samples topic assignments for the new tokens only.
new_doc = ["energy1", "energy4", "energy4", "school2", "energy9"] * 10
result = infer_topics(model, new_doc, fold_in_iterations=100, burn_in=20, seed=1)
print("new document:", np.round(result.distribution, 3))

#%%
# With alpha = 25 the prior weighs as much as 25 tokens per topic, so a
# 50-token document that is 80% energy lands near (40 + 25) / (50 + 50).
# A model with a small alpha gives a sharper answer.
sharp = train_lda(docs, k=2, alpha=0.1, iterations=500, seed=0)
print("alpha=0.1:", np.round(infer_topics(sharp, new_doc, 100, 20, seed=1).distribution, 3))

#%%
# An empty or fully out-of-vocabulary document falls back to the prior.
print(infer_topics(model, ["unseen", "words"]))
