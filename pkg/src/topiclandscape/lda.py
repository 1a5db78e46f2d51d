"""Latent Dirichlet allocation by collapsed Gibbs sampling, plus fold-in inference.

Randomness comes from a seeded ``numpy.random.Generator``; the sampler
kernels receive pre-drawn uniforms, so a (documents, seed) pair fully
determines the result.
"""

from __future__ import annotations

import hashlib
import json
import logging
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

import numpy as np
from numba import njit

logger = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1
DEFAULT_K = 26
DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 1000
DEFAULT_FOLD_IN_ITERATIONS = 200
DEFAULT_BURN_IN = 50


class ModelFileError(ValueError):
    pass


class ModelVersionError(ModelFileError):
    pass


class ModelChecksumError(ModelFileError):
    pass


# ---------------------------------------------------------------------------
# vocabulary

class Vocabulary:
    """Frozen token <-> id map with dense ids in [0, V)."""

    def __init__(self, tokens: Sequence[str], doc_freq: Sequence[int] | None = None,
                 min_count: int = 1, stopwords: Iterable[str] = ()):
        self.tokens: tuple[str, ...] = tuple(str(t) for t in tokens)
        self.index: dict[str, int] = {t: i for i, t in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise ValueError("vocabulary tokens must be unique")
        self.doc_freq = tuple(doc_freq) if doc_freq is not None else None
        self.min_count = min_count
        self.stopwords = frozenset(stopwords)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    def __repr__(self) -> str:
        return f"Vocabulary({len(self)} tokens)"

    def encode(self, tokens: Iterable[str]) -> np.ndarray:
        """Token ids of in-vocabulary tokens; the rest are dropped."""
        idx = self.index
        return np.fromiter((idx[t] for t in tokens if t in idx), dtype=np.int64)


def build_vocabulary(documents: Sequence[Sequence[str]], min_count: int = 1,
                     stopwords: Iterable[str] = ()) -> Vocabulary:
    """Vocabulary of tokens with corpus frequency >= min_count, ids by first occurrence."""
    if not documents:
        raise ValueError("no documents")
    stop = frozenset(stopwords)
    counts: Counter = Counter()
    dfs: Counter = Counter()
    order: dict[str, None] = {}
    for doc in documents:
        counts.update(doc)
        dfs.update(set(doc))
        for t in doc:
            order.setdefault(t, None)
    kept = [t for t in order if counts[t] >= min_count and t not in stop]
    if not kept:
        raise ValueError("every token was filtered out of the vocabulary")
    return Vocabulary(kept, [dfs[t] for t in kept], min_count=min_count, stopwords=stop)


# ---------------------------------------------------------------------------
# sampler kernels

@njit(cache=True)
def _draw(weights, total, u):
    r = u * total
    acc = 0.0
    last = weights.shape[0] - 1
    for k in range(last):
        acc += weights[k]
        if r < acc:
            return k
    return last


@njit(cache=True)
def _gibbs_sweep(words, docs, z, ndk, nkw, nk, alpha, beta, vbeta, uniforms, weights):
    n_topics = nk.shape[0]
    for i in range(words.shape[0]):
        w = words[i]
        d = docs[i]
        k = z[i]
        ndk[d, k] -= 1
        nkw[k, w] -= 1
        nk[k] -= 1
        total = 0.0
        for t in range(n_topics):
            p = (ndk[d, t] + alpha) * (nkw[t, w] + beta) / (nk[t] + vbeta)
            weights[t] = p
            total += p
        k = _draw(weights, total, uniforms[i])
        z[i] = k
        ndk[d, k] += 1
        nkw[k, w] += 1
        nk[k] += 1


@njit(cache=True)
def _fold_in_sweep(words, z, counts, phi, alpha, uniforms, weights):
    n_topics = counts.shape[0]
    for i in range(words.shape[0]):
        w = words[i]
        counts[z[i]] -= 1
        total = 0.0
        for t in range(n_topics):
            p = (counts[t] + alpha) * phi[t, w]
            weights[t] = p
            total += p
        k = _draw(weights, total, uniforms[i])
        z[i] = k
        counts[k] += 1


@njit(cache=True)
def _log_likelihood(words, docs, ndk, nd, phi, alpha):
    n_topics = phi.shape[0]
    ll = 0.0
    for i in range(words.shape[0]):
        d = docs[i]
        w = words[i]
        p = 0.0
        denom = nd[d] + n_topics * alpha
        for t in range(n_topics):
            p += (ndk[d, t] + alpha) / denom * phi[t, w]
        ll += np.log(p)
    return ll


# ---------------------------------------------------------------------------
# model

@dataclass
class TopicInference:
    distribution: np.ndarray
    n_tokens: int
    prior_fallback: bool = False


@dataclass(eq=False)
class LdaModel:
    k: int
    alpha: float
    beta: float
    phi: np.ndarray
    vocabulary: Vocabulary
    seed: int = 0
    iterations: int = 0
    train_perplexity: float | None = field(default=None, compare=False)

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=float)
        if self.k < 2:
            raise ValueError("need at least 2 topics")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")
        if self.phi.shape != (self.k, len(self.vocabulary)):
            raise ValueError(f"phi has shape {self.phi.shape}, expected ({self.k}, {len(self.vocabulary)})")
        self.phi.setflags(write=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LdaModel):
            return NotImplemented
        return (self.k == other.k and self.alpha == other.alpha and self.beta == other.beta
                and self.seed == other.seed and self.vocabulary == other.vocabulary
                and np.array_equal(self.phi, other.phi))

    @property
    def n_terms(self) -> int:
        return len(self.vocabulary)

    def top_words(self, topic: int, n: int = 10) -> list[tuple[str, float]]:
        return top_words(self, topic, n)

    def infer(self, tokens: Sequence[str], **kwargs) -> TopicInference:
        return infer_topics(self, tokens, **kwargs)


def _as_token_lists(documents) -> list[list[str]]:
    return [list(doc) for doc in documents]


def train_lda(
    documents: Sequence[Sequence[str]],
    k: int = DEFAULT_K,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    vocabulary: Vocabulary | None = None,
    min_count: int = 1,
    stopwords: Iterable[str] = (),
) -> LdaModel:
    """Fit LDA with collapsed Gibbs sampling.

    ``alpha`` defaults to 50/k. phi is estimated from the final sampler
    state as (n_kw + beta) / (n_k + V*beta).
    """
    if k < 2:
        raise ValueError("need at least 2 topics")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    alpha = 50.0 / k if alpha is None else float(alpha)
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    docs = _as_token_lists(documents)
    vocab = vocabulary or build_vocabulary(docs, min_count=min_count, stopwords=stopwords)
    encoded = [vocab.encode(d) for d in docs]
    encoded = [e for e in encoded if e.size]
    if len(encoded) < 2:
        raise ValueError("need at least 2 documents with in-vocabulary tokens")
    words = np.concatenate(encoded)
    doc_ids = np.concatenate([np.full(e.size, i, dtype=np.int64) for i, e in enumerate(encoded)])
    n_tokens = words.size
    if k > n_tokens:
        warnings.warn(f"k={k} exceeds the number of tokens ({n_tokens})", stacklevel=2)

    V = len(vocab)
    rng = np.random.default_rng(seed)
    z = rng.integers(0, k, size=n_tokens).astype(np.int64)
    ndk = np.zeros((len(encoded), k), dtype=np.int64)
    nkw = np.zeros((k, V), dtype=np.int64)
    np.add.at(ndk, (doc_ids, z), 1)
    np.add.at(nkw, (z, words), 1)
    nk = nkw.sum(axis=1)
    weights = np.empty(k)
    for it in range(iterations):
        _gibbs_sweep(words, doc_ids, z, ndk, nkw, nk, alpha, beta, V * beta,
                     rng.random(n_tokens), weights)
        if logger.isEnabledFor(logging.DEBUG) and (it + 1) % 100 == 0:
            logger.debug("gibbs iteration %d/%d", it + 1, iterations)

    phi = (nkw + beta) / (nk[:, None] + V * beta)
    nd = ndk.sum(axis=1)
    ll = _log_likelihood(words, doc_ids, ndk, nd, phi, alpha)
    perplexity = float(np.exp(-ll / n_tokens))
    return LdaModel(k=k, alpha=alpha, beta=beta, phi=phi, vocabulary=vocab, seed=seed,
                    iterations=iterations, train_perplexity=perplexity)


def infer_topics(
    model: LdaModel,
    document_tokens: Sequence[str] | np.ndarray,
    fold_in_iterations: int = DEFAULT_FOLD_IN_ITERATIONS,
    burn_in: int = DEFAULT_BURN_IN,
    seed: int | Sequence[int] = 0,
    max_tokens: int | None = None,
) -> TopicInference:
    """Topic mixture of an unseen document with phi held fixed.

    The estimate averages (n_k + alpha) / (N + K*alpha) over the sweeps
    after ``burn_in``. Out-of-vocabulary tokens are skipped; an empty
    document returns the symmetric prior with ``prior_fallback`` set.
    ``max_tokens`` caps very long documents by seeded uniform subsampling.
    """
    if fold_in_iterations <= burn_in:
        raise ValueError("fold_in_iterations must exceed burn_in")
    rng = np.random.default_rng(seed)
    if isinstance(document_tokens, np.ndarray) and document_tokens.dtype.kind == "i":
        words = document_tokens.astype(np.int64)
    else:
        words = model.vocabulary.encode(document_tokens)
    k = model.k
    if words.size == 0:
        return TopicInference(np.full(k, 1.0 / k), 0, prior_fallback=True)
    if max_tokens is not None and words.size > max_tokens:
        words = words[np.sort(rng.choice(words.size, size=max_tokens, replace=False))]
    return _fold_in(model, words, fold_in_iterations, burn_in, rng)


def _fold_in(model, words, iterations, burn_in, rng) -> TopicInference:
    k = model.k
    n = words.size
    z = rng.integers(0, k, size=n).astype(np.int64)
    counts = np.bincount(z, minlength=k).astype(np.int64)
    weights = np.empty(k)
    acc = np.zeros(k)
    phi = np.ascontiguousarray(model.phi)
    for it in range(iterations):
        _fold_in_sweep(words, z, counts, phi, model.alpha, rng.random(n), weights)
        if it >= burn_in:
            acc += counts
    kept = iterations - burn_in
    dist = (acc / kept + model.alpha) / (n + k * model.alpha)
    dist /= dist.sum()
    return TopicInference(dist, int(n))


def top_words(model: LdaModel, topic: int, n: int = 10) -> list[tuple[str, float]]:
    """The n highest-probability words of a topic; equal probabilities keep id order."""
    if not 0 <= topic < model.k:
        raise IndexError(f"topic {topic} out of range [0, {model.k})")
    if n <= 0:
        return []
    row = model.phi[topic]
    order = np.lexsort((np.arange(row.size), -row))[:n]
    return [(model.vocabulary.tokens[i], float(row[i])) for i in order]


# ---------------------------------------------------------------------------
# persistence

def _canonical_payload(model: LdaModel) -> dict:
    return {
        "version": MODEL_FORMAT_VERSION,
        "k": model.k,
        "alpha": model.alpha,
        "beta": model.beta,
        "seed": model.seed,
        "iterations": model.iterations,
        "vocab": list(model.vocabulary.tokens),
        "phi": [[float(x) for x in row] for row in model.phi],
    }


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def save_model(model: LdaModel, sink: IO[str]) -> None:
    """Write the model as one JSON document with a sha256 checksum over its canonical form."""
    payload = _canonical_payload(model)
    payload["checksum"] = _checksum(payload)
    json.dump(payload, sink, sort_keys=True, ensure_ascii=False)
    sink.write("\n")


def load_model(source: IO[str]) -> LdaModel:
    text = source.read()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelChecksumError(f"model file is truncated or corrupt ({e.msg})") from None
    if not isinstance(payload, dict):
        raise ModelChecksumError("model file is not a JSON object")
    version = payload.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(f"unsupported model format version {version!r}")
    stored = payload.pop("checksum", None)
    if stored != _checksum(payload):
        raise ModelChecksumError("model checksum mismatch")
    return LdaModel(
        k=payload["k"],
        alpha=payload["alpha"],
        beta=payload["beta"],
        phi=np.array(payload["phi"], dtype=float),
        vocabulary=Vocabulary(payload["vocab"]),
        seed=payload["seed"],
        iterations=payload.get("iterations", 0),
    )


class TopicLabelMap(Mapping[int, str]):
    """Human-readable names for topic indices."""

    def __init__(self, labels: Mapping[int, str], k: int | None = None):
        self._labels = dict(sorted(labels.items()))
        if len(set(self._labels.values())) != len(self._labels):
            raise ValueError("topic labels must be unique")
        if k is not None and any(not 0 <= i < k for i in self._labels):
            raise ValueError(f"topic index out of range [0, {k})")

    def __getitem__(self, i: int) -> str:
        return self._labels[i]

    def __iter__(self):
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def name(self, i: int) -> str:
        return self._labels.get(i, f"topic {i}")
