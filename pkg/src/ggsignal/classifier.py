"""Binary linear max-margin classifier trained by seeded stochastic
subgradient descent on the L2-regularized hinge loss (Pegasos schedule).

The learned hyperplane direction is the object of interest downstream:
`decision_direction` returns the unit normal, oriented so the positive side
is the class passed as `positives` (the feminine class in the pipeline).

Inputs are preconditioned by a single dataset-wide scale constant (the root
mean squared vector norm) that is folded back into the reported weights.
This makes the learned direction invariant to uniform rescaling of the
input vectors while leaving their geometry untouched; the regularization
strength is therefore expressed per unit of mean squared norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericError
from .seeding import rng_for


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one training run.

    The step size follows the inverse-t Pegasos schedule
    ``eta_t = 1 / (regularization_strength * t)``; it has no independent
    knob because the schedule is fully determined by the regularization.
    """

    regularization_strength: float = 1e-4
    epochs: int = 20
    holdout_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.regularization_strength <= 0:
            raise ValueError("regularization_strength must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be a positive integer")
        if not 0.0 < self.holdout_fraction < 1.0:
            raise ValueError("holdout_fraction must be in (0, 1)")


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float
    train_accuracy: float
    holdout_accuracy: float
    # Hinge+L2 objective at each epoch end, in preconditioned coordinates;
    # kept for the non-increase diagnostic and run reports.
    epoch_objectives: tuple[float, ...] = ()


def _as_matrix(vectors, name: str) -> np.ndarray:
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise DataError(f"{name}: need a non-empty 2-d array of vectors")
    return matrix


def _stratified_split(n: int, fraction: float, rng: np.random.Generator):
    hold = max(1, round(n * fraction))
    if hold >= n:
        raise DataError(f"holdout split leaves no training samples (n={n})")
    order = rng.permutation(n)
    return order[hold:], order[:hold]


def train(positives, negatives, config: TrainConfig = TrainConfig()) -> LinearModel:
    """Train on labeled vectors; positives get label +1.

    Deterministic for a fixed seed and input order: the holdout split and
    every epoch shuffle come from generators derived from `config.seed`.
    Training is single-threaded by construction.
    """
    pos = _as_matrix(positives, "positives")
    neg = _as_matrix(negatives, "negatives")
    if pos.shape[1] != neg.shape[1]:
        raise DataError(f"dimension mismatch: {pos.shape[1]} vs {neg.shape[1]}")
    if pos.shape[0] < 2 or neg.shape[0] < 2:
        raise DataError("need at least 2 samples per class for a holdout split")

    scale = float(np.sqrt(np.mean(np.concatenate([
        np.einsum("ij,ij->i", pos, pos),
        np.einsum("ij,ij->i", neg, neg),
    ]))))
    if scale == 0.0:
        raise NumericError("all training vectors are zero")

    rng_split = rng_for(config.seed, "holdout")
    pos_train_idx, pos_hold_idx = _stratified_split(pos.shape[0], config.holdout_fraction, rng_split)
    neg_train_idx, neg_hold_idx = _stratified_split(neg.shape[0], config.holdout_fraction, rng_split)

    def augmented(matrix: np.ndarray) -> np.ndarray:
        scaled = matrix / scale
        return np.hstack([scaled, np.ones((matrix.shape[0], 1))])

    x_train = np.ascontiguousarray(np.vstack([augmented(pos[pos_train_idx]),
                                              augmented(neg[neg_train_idx])]))
    y_train = np.concatenate([np.ones(len(pos_train_idx)), -np.ones(len(neg_train_idx))])

    lam = config.regularization_strength
    n_train, dim_aug = x_train.shape
    # With the inverse-t schedule the Pegasos iterate has the closed form
    # w_t = u / (lam * (t - 1)) where u accumulates y*x over margin
    # violations; tracking u avoids per-step vector shrinkage.
    u = np.zeros(dim_aug)
    t = 0
    rng_epochs = rng_for(config.seed, "epochs")
    objectives: list[float] = []
    for _ in range(config.epochs):
        for i in rng_epochs.permutation(n_train):
            t += 1
            if t == 1:
                margin = 0.0
            else:
                margin = y_train[i] * float(u @ x_train[i]) / (lam * (t - 1))
            if margin < 1.0:
                u += y_train[i] * x_train[i]
        w_epoch = u / (lam * t)
        hinge = np.maximum(0.0, 1.0 - y_train * (x_train @ w_epoch))
        objectives.append(float(0.5 * lam * (w_epoch @ w_epoch) + hinge.mean()))

    w_aug = u / (lam * t)
    weights = w_aug[:-1] / scale
    bias = float(w_aug[-1])
    if not np.any(weights):
        raise NumericError("training produced a zero weight vector")

    model = LinearModel(weights=weights, bias=bias, train_accuracy=0.0,
                        holdout_accuracy=0.0, epoch_objectives=tuple(objectives))
    train_vecs = np.vstack([pos[pos_train_idx], neg[neg_train_idx]])
    hold_vecs = np.vstack([pos[pos_hold_idx], neg[neg_hold_idx]])
    hold_labels = np.concatenate([np.ones(len(pos_hold_idx)), -np.ones(len(neg_hold_idx))])
    train_acc = accuracy(model, train_vecs, y_train)
    hold_acc = accuracy(model, hold_vecs, hold_labels)
    return LinearModel(weights=weights, bias=bias, train_accuracy=train_acc,
                       holdout_accuracy=hold_acc, epoch_objectives=tuple(objectives))


def accuracy(model: LinearModel, vectors, labels) -> float:
    """Fraction of correct sign(w.x + b) predictions.

    A score of exactly 0 counts as the negative class, deterministically.
    """
    matrix = _as_matrix(vectors, "samples")
    y = np.asarray(labels, dtype=np.float64)
    if matrix.shape[0] != y.shape[0]:
        raise DataError("sample and label counts disagree")
    if matrix.shape[1] != model.weights.shape[0]:
        raise DataError(f"dimension mismatch: {matrix.shape[1]} vs {model.weights.shape[0]}")
    scores = matrix @ model.weights + model.bias
    predictions = np.where(scores > 0.0, 1.0, -1.0)
    return float(np.mean(predictions == y))


def decision_direction(model: LinearModel) -> np.ndarray:
    """Unit-norm hyperplane normal; positive side is the positives class."""
    norm = float(np.linalg.norm(model.weights))
    if norm == 0.0:
        raise NumericError("zero weight vector has no direction")
    return model.weights / norm
