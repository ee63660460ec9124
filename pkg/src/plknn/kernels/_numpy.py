"""Pure-numpy implementations of the hot numeric kernels.

Pairwise distance matrices are computed in row chunks so the broadcast
intermediate stays below ~16 MB regardless of input size.
"""

import numpy as np

_CHUNK_FLOATS = 2_000_000  # floats per broadcast intermediate


def _chunk_rows(n_rows, n_cols, dim):
    rows = max(1, _CHUNK_FLOATS // max(1, n_cols * dim))
    return range(0, n_rows, rows), rows


def manhattan_pairwise(a, b):
    """Manhattan distance matrix, shape (len(a), len(b))."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    out = np.empty((a.shape[0], b.shape[0]), dtype=np.float64)
    starts, step = _chunk_rows(a.shape[0], b.shape[0], a.shape[1])
    for i in starts:
        out[i : i + step] = np.abs(a[i : i + step, None, :] - b[None, :, :]).sum(axis=2)
    return out


def euclidean_pairwise(a, b):
    """Euclidean distance matrix, shape (len(a), len(b))."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    out = np.empty((a.shape[0], b.shape[0]), dtype=np.float64)
    starts, step = _chunk_rows(a.shape[0], b.shape[0], a.shape[1])
    for i in starts:
        d = a[i : i + step, None, :] - b[None, :, :]
        out[i : i + step] = np.sqrt((d * d).sum(axis=2))
    return out


def prefix_majority(sorted_labels, n_classes):
    """Majority label of every prefix of each row of neighbor labels.

    sorted_labels has shape (n_queries, k_max), row q holding the labels of
    q's neighbors from nearest to farthest.  Returns an int64 array of the
    same shape whose [q, j] entry is the majority vote among the first j+1
    neighbors, lowest class index winning ties.
    """
    sorted_labels = np.asarray(sorted_labels, dtype=np.int64)
    n_q, k_max = sorted_labels.shape
    counts = np.zeros((n_q, n_classes), dtype=np.int64)
    out = np.empty((n_q, k_max), dtype=np.int64)
    rows = np.arange(n_q)
    best = np.zeros(n_q, dtype=np.int64)
    best_count = np.zeros(n_q, dtype=np.int64)
    for j in range(k_max):
        lab = sorted_labels[:, j]
        counts[rows, lab] += 1
        c = counts[rows, lab]
        take = (c > best_count) | ((c == best_count) & (lab < best))
        best = np.where(take, lab, best)
        best_count = np.where(take, c, best_count)
        out[:, j] = best
    return out
