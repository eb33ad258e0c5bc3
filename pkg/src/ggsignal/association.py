"""Association statistics between word sets: two-target tests, their
single-category variant, and one-sided permutation p-values.

Conventions pinned here and relied on by every caller:

* "std-dev" in the effect-size denominator is the POPULATION standard
  deviation (divide by n). Sample std-dev would shift the effect size by a
  visible factor on small sets.
* The p-value counts permuted statistics STRICTLY greater than the observed
  one; in exact mode the denominator is the number of all equal-size
  partitions, identity partition included.
* Exact enumeration runs while the partition count is at most
  `exact_limit`; beyond that a seeded Monte Carlo estimate with
  ``p = (count + 1) / (samples + 1)`` is used and recorded as such.

All functions are pure over immutable inputs. Monte Carlo sampling is
vectorized and consumes a single seeded stream, so results do not depend on
thread counts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable

import numpy as np

from .embeddings import EmbeddingTable
from .errors import (DataError, MissingWordsError, NumericError,
                     UndersizedSetError, ZeroVectorError)
from .lexicon import MIN_SET_WORDS, StimulusSet
from .seeding import rng_for

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PermutationConfig:
    exact_limit: int = 200_000
    samples: int = 100_000
    seed: int = 0


@dataclass(frozen=True)
class PValueMethod:
    kind: str  # "exact" or "monte-carlo"
    partitions: int | None = None
    samples: int | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        if self.kind == "exact":
            return {"kind": "exact", "partitions": self.partitions}
        return {"kind": "monte-carlo", "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class AssociationResult:
    effect_size: float
    statistic: float
    p_value: float
    p_method: PValueMethod
    set_sizes: tuple[int, int, int, int]

    def to_json(self) -> dict:
        return {
            "effect_size": self.effect_size,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "p_method": self.p_method.to_json(),
            "set_sizes": list(self.set_sizes),
        }


def _unit_rows(matrix: np.ndarray, words: list[str], context: str,
               on_missing: str) -> tuple[np.ndarray, list[str]]:
    """Normalize rows to unit length, handling zero-norm rows by policy."""
    norms = np.linalg.norm(matrix, axis=1)
    zero = norms == 0.0
    if np.any(zero):
        bad = [w for w, z in zip(words, zero) if z]
        if on_missing == "drop":
            log.warning("%s: dropping zero-norm vectors (annihilated words): %s",
                        context, ", ".join(bad))
            matrix = matrix[~zero]
            words = [w for w, z in zip(words, zero) if not z]
            norms = norms[~zero]
        else:
            raise ZeroVectorError(f"{context}: zero-norm vectors for: {', '.join(bad)}")
    return matrix / norms[:, None], words


def _resolve_set(table: EmbeddingTable, stimulus: StimulusSet, *, on_missing: str,
                 min_words: int) -> tuple[np.ndarray, list[str]]:
    """Gather unit vectors for a stimulus set under the missing-word policy.

    Default policy aborts on any unresolvable word, naming it; "drop" removes
    missing and zero-norm words with a warning. Either way a set below
    `min_words` is rejected: too few words cannot represent a concept.
    """
    if on_missing not in ("error", "drop"):
        raise ValueError(f"unknown on_missing policy {on_missing!r}")
    absent = table.missing(stimulus.words)
    words = list(stimulus.words)
    if absent:
        if on_missing == "drop":
            log.warning("set %s: dropping %d missing words: %s", stimulus.name,
                        len(absent), ", ".join(absent))
            words = [w for w in words if w not in set(absent)]
        else:
            raise MissingWordsError(f"set {stimulus.name}", absent)
    if not words:
        raise UndersizedSetError(f"set {stimulus.name}: no resolvable words")
    unit, words = _unit_rows(table.rows(words), words, f"set {stimulus.name}", on_missing)
    if len(words) < min_words:
        raise UndersizedSetError(
            f"set {stimulus.name} has {len(words)} usable words, minimum is {min_words}")
    return unit, words


def s_word(w, attr_a, attr_b) -> float:
    """Differential association of one vector with two attribute matrices:
    mean cosine to the first minus mean cosine to the second."""
    w = np.asarray(w, dtype=np.float64)
    a = np.asarray(attr_a, dtype=np.float64)
    b = np.asarray(attr_b, dtype=np.float64)
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise DataError("attribute sets must be non-empty")
    wn = float(np.linalg.norm(w))
    an = np.linalg.norm(a, axis=1)
    bn = np.linalg.norm(b, axis=1)
    if wn == 0.0 or np.any(an == 0.0) or np.any(bn == 0.0):
        raise ZeroVectorError("zero-norm vector in differential association")
    return float(np.mean((a @ w) / (an * wn)) - np.mean((b @ w) / (bn * wn)))


def sc_effect_sizes(target_matrix: np.ndarray, attr_a: np.ndarray,
                    attr_b: np.ndarray) -> np.ndarray:
    """Single-category effect size for each row of `target_matrix`.

    All inputs must already be unit rows. Per row: the mean-cosine difference
    to the two attribute blocks over the population std-dev of the cosines to
    the pooled attributes.
    """
    cos_a = target_matrix @ attr_a.T
    cos_b = target_matrix @ attr_b.T
    pooled = np.hstack([cos_a, cos_b])
    spread = pooled.std(axis=1)
    if np.any(spread == 0.0):
        raise NumericError("zero variance of attribute cosines; effect size undefined")
    return (cos_a.mean(axis=1) - cos_b.mean(axis=1)) / spread


@lru_cache(maxsize=4)
def _exact_index_matrix(n_items: int, group_size: int) -> np.ndarray:
    flat = np.fromiter((i for c in combinations(range(n_items), group_size) for i in c),
                       dtype=np.intp)
    matrix = flat.reshape(-1, group_size)
    matrix.setflags(write=False)
    return matrix


def permutation_p(statistic_fn: Callable[[np.ndarray], np.ndarray], observed: float,
                  n_items: int, group_size: int,
                  config: PermutationConfig = PermutationConfig()) -> tuple[float, PValueMethod]:
    """One-sided p-value over equal-size two-set partitions of `n_items`.

    `statistic_fn` receives an (m, group_size) matrix of first-set index rows
    and returns the m permuted statistics. Exact mode enumerates every
    partition when their count is at most `config.exact_limit`; otherwise a
    seeded Monte Carlo estimate is drawn.
    """
    if n_items <= 0 or group_size <= 0 or group_size >= n_items:
        raise DataError(f"empty partition space (n={n_items}, group={group_size})")
    total = comb(n_items, group_size)
    if total <= config.exact_limit:
        idx = _exact_index_matrix(n_items, group_size)
        count = 0
        for start in range(0, total, 65536):
            stats = statistic_fn(idx[start:start + 65536])
            count += int(np.sum(stats > observed))
        return count / total, PValueMethod("exact", partitions=total)
    rng = rng_for(config.seed, "permutation")
    count = 0
    remaining = config.samples
    while remaining > 0:
        batch = min(remaining, 4096)
        keys = rng.random((batch, n_items))
        idx = np.argpartition(keys, group_size - 1, axis=1)[:, :group_size]
        stats = statistic_fn(idx)
        count += int(np.sum(stats > observed))
        remaining -= batch
    p = (count + 1) / (config.samples + 1)
    return p, PValueMethod("monte-carlo", samples=config.samples, seed=config.seed)


def _equalize_targets(x_words: list[str], y_words: list[str], x_mat: np.ndarray,
                      y_mat: np.ndarray, trim_to_equal: bool, seed: int,
                      min_words: int):
    """Enforce equal target sizes; optionally trim the larger set at random."""
    if len(x_words) == len(y_words):
        return x_words, y_words, x_mat, y_mat
    if not trim_to_equal:
        raise DataError(
            f"target sets must be the same size for the permutation test "
            f"({len(x_words)} vs {len(y_words)}); pass trim_to_equal to trim")
    size = min(len(x_words), len(y_words))
    if size < min_words:
        raise UndersizedSetError(f"trimming would leave {size} words, minimum is {min_words}")
    rng = rng_for(seed, "trim-to-equal")
    if len(x_words) > size:
        keep = np.sort(rng.choice(len(x_words), size, replace=False))
        x_words = [x_words[i] for i in keep]
        x_mat = x_mat[keep]
    else:
        keep = np.sort(rng.choice(len(y_words), size, replace=False))
        y_words = [y_words[i] for i in keep]
        y_mat = y_mat[keep]
    log.warning("trimmed larger target set to %d words (seeded)", size)
    return x_words, y_words, x_mat, y_mat


def weat(targets_x: StimulusSet, targets_y: StimulusSet, attributes_a: StimulusSet,
         attributes_b: StimulusSet, table: EmbeddingTable,
         p_config: PermutationConfig = PermutationConfig(), *,
         on_missing: str = "error", min_words: int = MIN_SET_WORDS,
         trim_to_equal: bool = False) -> AssociationResult:
    """Two-target association test.

    Effect size: difference of the mean per-word differential associations of
    the two target sets, over the population std-dev across the pooled
    targets. Test statistic: the corresponding difference of sums. The
    p-value permutes equal-size partitions of the pooled targets, attributes
    fixed.
    """
    x_mat, x_words = _resolve_set(table, targets_x, on_missing=on_missing, min_words=min_words)
    y_mat, y_words = _resolve_set(table, targets_y, on_missing=on_missing, min_words=min_words)
    a_mat, _ = _resolve_set(table, attributes_a, on_missing=on_missing, min_words=min_words)
    b_mat, _ = _resolve_set(table, attributes_b, on_missing=on_missing, min_words=min_words)

    overlap = set(x_words) & set(y_words)
    if overlap:
        raise DataError(f"target sets overlap: {', '.join(sorted(overlap))}")
    x_words, y_words, x_mat, y_mat = _equalize_targets(
        x_words, y_words, x_mat, y_mat, trim_to_equal, p_config.seed, min_words)

    s_x = (x_mat @ a_mat.T).mean(axis=1) - (x_mat @ b_mat.T).mean(axis=1)
    s_y = (y_mat @ a_mat.T).mean(axis=1) - (y_mat @ b_mat.T).mean(axis=1)
    pooled = np.concatenate([s_x, s_y])
    spread = float(pooled.std())
    if spread == 0.0:
        raise NumericError("zero variance of differential associations")
    effect = float((s_x.mean() - s_y.mean()) / spread)
    statistic = float(s_x.sum() - s_y.sum())

    total = float(pooled.sum())
    group = len(pooled) // 2

    def permuted(idx: np.ndarray) -> np.ndarray:
        return 2.0 * pooled[idx].sum(axis=1) - total

    # Count against the identity partition evaluated through the same code
    # path, so it is bitwise equal to the observed value and the strict ">"
    # excludes it regardless of float summation order.
    observed = float(permuted(np.arange(group)[None, :])[0])
    p, method = permutation_p(permuted, observed, len(pooled), group, p_config)
    return AssociationResult(effect, statistic, p, method,
                             (len(x_words), len(y_words), a_mat.shape[0], b_mat.shape[0]))


def sc_weat(word: str, attributes_a: StimulusSet, attributes_b: StimulusSet,
            table: EmbeddingTable, p_config: PermutationConfig = PermutationConfig(), *,
            on_missing: str = "error", min_words: int = MIN_SET_WORDS,
            trim_to_equal: bool = False) -> AssociationResult:
    """Single-category association of one word with two attribute sets.

    Effect size: mean-cosine difference over the population std-dev of the
    cosines to the pooled attributes. The p-value permutes the attribute
    partition, the word fixed.
    """
    w = table.vector(word)
    if not np.any(w):
        raise ZeroVectorError(f"word {word!r} has a zero-norm vector")
    a_mat, a_words = _resolve_set(table, attributes_a, on_missing=on_missing, min_words=min_words)
    b_mat, b_words = _resolve_set(table, attributes_b, on_missing=on_missing, min_words=min_words)
    a_words, b_words, a_mat, b_mat = _equalize_targets(
        a_words, b_words, a_mat, b_mat, trim_to_equal, p_config.seed, min_words)

    unit_w = w / np.linalg.norm(w)
    cos_a = a_mat @ unit_w
    cos_b = b_mat @ unit_w
    pooled = np.concatenate([cos_a, cos_b])
    spread = float(pooled.std())
    if spread == 0.0:
        raise NumericError("zero variance of attribute cosines")
    effect = float((cos_a.mean() - cos_b.mean()) / spread)
    statistic = float(cos_a.mean() - cos_b.mean())

    total = float(pooled.sum())
    group = len(pooled) // 2

    def permuted(idx: np.ndarray) -> np.ndarray:
        first = pooled[idx].sum(axis=1)
        return first / group - (total - first) / (len(pooled) - group)

    observed = float(permuted(np.arange(group)[None, :])[0])
    p, method = permutation_p(permuted, observed, len(pooled), group, p_config)
    return AssociationResult(effect, statistic, p, method,
                             (1, 1, len(a_words), len(b_words)))
