"""Distance primitives and the dataset container shared by all classifiers.

Feature vectors are plain 1-D float64 arrays and class labels are integers
in ``[0, class_count)``; nothing here wraps them in dedicated types.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_vector(v, name):
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {arr.shape}")
    return arr


def _check_same_dim(a, b, names):
    if a.shape[0] != b.shape[0]:
        raise ValueError(
            f"dimension mismatch: {names[0]} has length {a.shape[0]}, "
            f"{names[1]} has length {b.shape[0]}"
        )


def euclidean_distance(a, b) -> float:
    """sqrt(sum((a_k - b_k)^2)); raises ValueError on dimension mismatch."""
    a = _as_vector(a, "a")
    b = _as_vector(b, "b")
    _check_same_dim(a, b, ("a", "b"))
    d = a - b
    return float(np.sqrt(np.dot(d, d)))


def manhattan_distance(a, b) -> float:
    """sum(|a_k - b_k|); raises ValueError on dimension mismatch."""
    a = _as_vector(a, "a")
    b = _as_vector(b, "b")
    _check_same_dim(a, b, ("a", "b"))
    return float(np.abs(a - b).sum())


def halfspace_side(s, cstar, t) -> float:
    """Inner product <cstar - s, t - s>.

    Nonnegative exactly when the angle at ``s`` between ``t`` and ``cstar``
    lies in the closed interval [-90, +90] degrees.  Implemented as a sign
    test on the inner product rather than via arccos, so the 90-degree
    boundary is exact and degenerate directions (t == s) land on the
    included side with a product of 0.
    """
    s = _as_vector(s, "s")
    cstar = _as_vector(cstar, "cstar")
    t = _as_vector(t, "t")
    _check_same_dim(s, cstar, ("s", "cstar"))
    _check_same_dim(s, t, ("s", "t"))
    return float(np.dot(cstar - s, t - s))


@dataclass(frozen=True)
class Dataset:
    """An in-memory classification dataset.

    ``X`` is an (m, d) float64 matrix of finite values, ``y`` an (m,) int64
    array of class indices in ``[0, class_count)``.  ``positive_class`` is
    the index scored as positive by binary F1, when configured.
    """

    name: str
    X: np.ndarray
    y: np.ndarray
    class_count: int
    feature_names: tuple[str, ...] | None = None
    positive_class: int | None = None

    def __post_init__(self):
        X = np.ascontiguousarray(self.X, dtype=np.float64)
        y = np.ascontiguousarray(self.y, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] < 1:
            raise ValueError(f"X must be a 2-D matrix with >= 1 feature, got {X.shape}")
        if y.shape != (X.shape[0],):
            raise ValueError(
                f"labels must be 1-D with one entry per sample, got {y.shape} for {X.shape[0]} samples"
            )
        if X.shape[0] < 1:
            raise ValueError("dataset must contain at least one sample")
        if not np.isfinite(X).all():
            bad = np.argwhere(~np.isfinite(X))[0]
            raise ValueError(
                f"non-finite feature value at sample {bad[0]}, feature {bad[1]}"
            )
        if self.class_count < 2:
            raise ValueError(f"class_count must be >= 2, got {self.class_count}")
        if y.size and (y.min() < 0 or y.max() >= self.class_count):
            raise ValueError(
                f"labels must lie in [0, {self.class_count}), got range "
                f"[{y.min()}, {y.max()}]"
            )
        if self.feature_names is not None and len(self.feature_names) != X.shape[1]:
            raise ValueError("feature_names length does not match feature dimension")
        if self.positive_class is not None and not (
            0 <= self.positive_class < self.class_count
        ):
            raise ValueError(f"positive_class {self.positive_class} out of range")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.y, minlength=self.class_count)

    def missing_classes(self) -> list[int]:
        """Class indices with no samples (partitions may legitimately have some)."""
        return [int(i) for i in np.flatnonzero(self.class_sizes() == 0)]

    def replace(self, **kwargs) -> "Dataset":
        fields = dict(
            name=self.name,
            X=self.X,
            y=self.y,
            class_count=self.class_count,
            feature_names=self.feature_names,
            positive_class=self.positive_class,
        )
        fields.update(kwargs)
        return Dataset(**fields)

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return self.replace(X=self.X[idx], y=self.y[idx])
