"""Instance-based classifiers: PL-kNN, the two centroid-radius baselines
(smallest/largest radius), and plain k-NN with validation-driven k selection.

All classifiers share the fit/predict idiom.  Fitted state is immutable and
prediction is a pure function of (model, query), so models can be shared
freely across workers.

Tie-break rules, fixed for determinism:

- argmax over class scores and argmin over centroid distances resolve ties
  toward the lowest class index;
- k-NN distance ties resolve by training-set order;
- k-NN vote ties resolve toward the lowest class index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Dataset

# Additive floor inside every reciprocal, so exact-distance-zero matches
# dominate without producing infinities.
EPS = 1e-12

METHODS = ("plknn", "smknn", "lmknn", "knn")


@dataclass(frozen=True)
class Prediction:
    """Decided label plus normalized per-class scores.

    ``scores`` sums to 1 when any neighbor contributed; otherwise it is
    all-zero and ``fallback_used`` is set (the label then comes from the
    nearest class centroid).
    """

    label: int
    scores: np.ndarray
    fallback_used: bool


@dataclass(frozen=True)
class BatchPrediction:
    labels: np.ndarray    # (m,)  int64
    scores: np.ndarray    # (m, n_classes)  float64
    fallback: np.ndarray  # (m,)  bool

    def __len__(self):
        return self.labels.shape[0]

    def __getitem__(self, i) -> Prediction:
        return Prediction(
            label=int(self.labels[i]),
            scores=self.scores[i],
            fallback_used=bool(self.fallback[i]),
        )


def _check_fitted(clf):
    if getattr(clf, "X_", None) is None:
        raise ValueError(f"{type(clf).__name__} is not fitted")


def _check_query_dim(clf, q):
    if q.shape[-1] != clf.X_.shape[1]:
        raise ValueError(
            f"query has {q.shape[-1]} features, model expects {clf.X_.shape[1]}"
        )


def _as_query_matrix(clf, X):
    q = np.ascontiguousarray(X, dtype=np.float64)
    if q.ndim == 1:
        q = q[None, :]
    if q.ndim != 2:
        raise ValueError(f"queries must be a vector or matrix, got shape {q.shape}")
    _check_query_dim(clf, q)
    return q


def _require_all_classes(train: Dataset):
    missing = train.missing_classes()
    if missing:
        raise ValueError(
            f"cannot fit: class {missing[0]} has no training samples"
        )


def class_centroid_median(samples) -> np.ndarray:
    """Component-wise median of a non-empty set of row vectors.

    For even counts each feature is the mean of the two middle values, so
    the result is generally not an actual training instance.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("median centroid requires at least one sample")
    return np.median(arr, axis=0)


def training_weight(x, c) -> float:
    """Inverse Euclidean distance from a training sample to its centroid."""
    from .core import euclidean_distance

    return 1.0 / (euclidean_distance(x, c) + EPS)


def _inverse_distance_weights(X, centroids, y):
    d = kernels.euclidean_pairwise(X, centroids)
    return 1.0 / (d[np.arange(X.shape[0]), y] + EPS)


class _RadiusVotingClassifier:
    """Shared fit/score machinery for PL-kNN and the centroid-radius baselines.

    Subclasses fix the centroid statistic and the neighbor-selection rule.
    Scoring is identical everywhere: each selected neighbor t of class i
    contributes 1/(D_M(t, s) + eps) times its stored training weight to the
    raw score of class i, and raw scores are normalized to sum to 1.
    """

    def __init__(self):
        self.X_ = None
        self.y_ = None
        self.n_classes_ = None
        self.centroids_ = None
        self.weights_ = None

    def _centroid(self, rows):
        raise NotImplementedError

    def fit(self, train: Dataset):
        _require_all_classes(train)
        self.X_ = train.X.copy()
        self.y_ = train.y.copy()
        self.n_classes_ = train.class_count
        self.centroids_ = np.stack(
            [self._centroid(train.X[train.y == i]) for i in range(train.class_count)]
        )
        self.weights_ = _inverse_distance_weights(self.X_, self.centroids_, self.y_)
        return self

    # -- neighbor selection -------------------------------------------------

    def _radius(self, dist_to_centroids):
        """(cstar index, selection radius) per query row."""
        raise NotImplementedError

    def _neighbor_mask(self, Q, dist_q_train, cstar, radius):
        raise NotImplementedError

    def nearest_centroid(self, s) -> tuple[int, float]:
        """Index of the Manhattan-nearest class centroid and its distance."""
        _check_fitted(self)
        q = _as_query_matrix(self, s)
        d = kernels.manhattan_pairwise(q, self.centroids_)[0]
        i = int(np.argmin(d))
        return i, float(d[i])

    # -- scoring ------------------------------------------------------------

    def _raw_scores(self, q_row, dist_row, mask_row):
        contrib = np.where(mask_row, (1.0 / (dist_row + EPS)) * self.weights_, 0.0)
        raw = np.zeros(self.n_classes_, dtype=np.float64)
        np.add.at(raw, self.y_, contrib)
        return raw

    def predict_full(self, X) -> BatchPrediction:
        _check_fitted(self)
        Q = _as_query_matrix(self, X)
        dc = kernels.manhattan_pairwise(Q, self.centroids_)
        cstar, radius = self._radius(dc)
        dx = kernels.manhattan_pairwise(Q, self.X_)
        mask = self._neighbor_mask(Q, dx, cstar, radius)

        contrib = mask * (1.0 / (dx + EPS)) * self.weights_[None, :]
        onehot = np.equal.outer(self.y_, np.arange(self.n_classes_)).astype(np.float64)
        raw = contrib @ onehot

        sums = raw.sum(axis=1)
        fallback = sums == 0.0
        scores = raw / np.where(fallback, 1.0, sums)[:, None]
        labels = np.argmax(scores, axis=1).astype(np.int64)
        nearest = np.argmin(dc, axis=1).astype(np.int64)
        labels[fallback] = nearest[fallback]
        return BatchPrediction(labels=labels, scores=scores, fallback=fallback)

    def predict_one(self, s) -> Prediction:
        return self.predict_full(s)[0]

    def predict(self, X) -> np.ndarray:
        return self.predict_full(X).labels


class PLkNNClassifier(_RadiusVotingClassifier):
    """Nearest-neighbor classifier with an adaptive, geometry-driven
    neighbor count.

    Fitting stores one component-wise *median* centroid per class plus one
    inverse-Euclidean-distance weight per training sample.  Predicting a
    query s selects every training sample that lies within Manhattan
    distance of the nearest centroid (the selection radius) AND on the
    centroid's side of the query - the closed half-space where the angle at
    s between the sample and the centroid is within +/-90 degrees.  The
    selected samples vote with inverse-distance weighting; an empty
    selection falls back to the nearest-centroid class.
    """

    def _centroid(self, rows):
        return class_centroid_median(rows)

    def _radius(self, dc):
        cstar = np.argmin(dc, axis=1)
        return cstar, dc[np.arange(dc.shape[0]), cstar]

    def _neighbor_mask(self, Q, dx, cstar, radius):
        g = self.centroids_[cstar] - Q
        dots = g @ self.X_.T - (g * Q).sum(axis=1)[:, None]
        return (dx <= radius[:, None]) & (dots >= 0.0)

    def select_semicircle(self, s, cstar_index, radius) -> np.ndarray:
        """Indices of training samples inside the semicircle of ``s``.

        ``(cstar_index, radius)`` must come from ``nearest_centroid`` for
        this same query.  Membership is evaluated over all training samples
        regardless of their class; the result may be empty.
        """
        _check_fitted(self)
        q = _as_query_matrix(self, s)
        dx = kernels.manhattan_pairwise(q, self.X_)
        mask = self._neighbor_mask(
            q, dx, np.array([cstar_index]), np.array([float(radius)])
        )
        return np.flatnonzero(mask[0])

    def class_scores(self, s, neighbor_indices) -> np.ndarray:
        """Normalized per-class scores given a selected neighbor set.

        Returns the all-zero vector when the neighbor set is empty, which
        is the signal for the nearest-centroid fallback.
        """
        _check_fitted(self)
        q = _as_query_matrix(self, s)
        idx = np.asarray(neighbor_indices, dtype=np.int64)
        raw = np.zeros(self.n_classes_, dtype=np.float64)
        if idx.size:
            d = kernels.manhattan_pairwise(q, self.X_[idx])[0]
            np.add.at(raw, self.y_[idx], (1.0 / (d + EPS)) * self.weights_[idx])
        total = raw.sum()
        if total == 0.0:
            return raw
        return raw / total


class MKNNClassifier(_RadiusVotingClassifier):
    """Centroid-radius baseline with arithmetic-mean centroids.

    ``variant="smallest"`` selects every training sample within the
    *minimum* Manhattan distance from the query to any class centroid;
    ``variant="largest"`` uses the maximum instead.  The full circle is
    used - no half-space restriction - and scoring matches PL-kNN.
    """

    VARIANTS = ("smallest", "largest")

    def __init__(self, variant: str):
        super().__init__()
        if variant not in self.VARIANTS:
            raise ValueError(f"variant must be one of {self.VARIANTS}, got {variant!r}")
        self.variant = variant

    def _centroid(self, rows):
        return rows.mean(axis=0)

    def _radius(self, dc):
        cstar = np.argmin(dc, axis=1)
        if self.variant == "smallest":
            radius = dc[np.arange(dc.shape[0]), cstar]
        else:
            radius = dc.max(axis=1)
        return cstar, radius

    def _neighbor_mask(self, Q, dx, cstar, radius):
        return dx <= radius[:, None]

    def select_circle(self, s) -> np.ndarray:
        """Indices of training samples inside the selection circle of ``s``."""
        _check_fitted(self)
        q = _as_query_matrix(self, s)
        dc = kernels.manhattan_pairwise(q, self.centroids_)
        _, radius = self._radius(dc)
        dx = kernels.manhattan_pairwise(q, self.X_)
        return np.flatnonzero(dx[0] <= radius[0])


class KNNClassifier:
    """Plain k-nearest-neighbors with Euclidean distance and majority vote."""

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.k = int(k)
        self.X_ = None
        self.y_ = None
        self.n_classes_ = None

    def fit(self, train: Dataset):
        if self.k > train.n_samples:
            raise ValueError(
                f"k={self.k} exceeds training-set size {train.n_samples}"
            )
        _require_all_classes(train)
        self.X_ = train.X.copy()
        self.y_ = train.y.copy()
        self.n_classes_ = train.class_count
        return self

    def predict_full(self, X) -> BatchPrediction:
        _check_fitted(self)
        Q = _as_query_matrix(self, X)
        d = kernels.euclidean_pairwise(Q, self.X_)
        # stable sort so equal distances keep training-set order
        order = np.argsort(d, axis=1, kind="stable")[:, : self.k]
        top = self.y_[order]
        counts = np.zeros((Q.shape[0], self.n_classes_), dtype=np.int64)
        rows = np.repeat(np.arange(Q.shape[0]), self.k)
        np.add.at(counts, (rows, top.ravel()), 1)
        labels = np.argmax(counts, axis=1).astype(np.int64)
        scores = counts / float(self.k)
        return BatchPrediction(
            labels=labels,
            scores=scores,
            fallback=np.zeros(Q.shape[0], dtype=bool),
        )

    def predict_one(self, s) -> Prediction:
        return self.predict_full(s)[0]

    def predict(self, X) -> np.ndarray:
        return self.predict_full(X).labels


def tune_k(train: Dataset, val: Dataset, k_max: int = 50) -> int:
    """Best k in [1, min(k_max, |train|)] by validation accuracy.

    Ties resolve toward the smallest k.
    """
    if val.n_samples == 0:
        raise ValueError("validation set is empty")
    if train.n_samples == 0:
        raise ValueError("training set is empty")
    k_cap = min(int(k_max), train.n_samples)
    d = kernels.euclidean_pairwise(val.X, train.X)
    order = np.argsort(d, axis=1, kind="stable")[:, :k_cap]
    preds = kernels.prefix_majority(train.y[order], train.class_count)
    acc = (preds == val.y[:, None]).mean(axis=0)
    return int(np.argmax(acc)) + 1


def make_classifier(method: str, k: int | None = None):
    """Instantiate a classifier by its CLI method name."""
    if method == "plknn":
        return PLkNNClassifier()
    if method == "smknn":
        return MKNNClassifier("smallest")
    if method == "lmknn":
        return MKNNClassifier("largest")
    if method == "knn":
        return KNNClassifier(k if k is not None else 5)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
