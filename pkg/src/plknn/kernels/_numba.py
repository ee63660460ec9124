"""Numba-compiled twins of the hot numeric kernels."""

import numpy as np
from numba import njit


@njit(cache=True)
def manhattan_pairwise(a, b):
    n_a, dim = a.shape
    n_b = b.shape[0]
    out = np.empty((n_a, n_b), dtype=np.float64)
    for i in range(n_a):
        for j in range(n_b):
            acc = 0.0
            for k in range(dim):
                acc += abs(a[i, k] - b[j, k])
            out[i, j] = acc
    return out


@njit(cache=True)
def euclidean_pairwise(a, b):
    n_a, dim = a.shape
    n_b = b.shape[0]
    out = np.empty((n_a, n_b), dtype=np.float64)
    for i in range(n_a):
        for j in range(n_b):
            acc = 0.0
            for k in range(dim):
                d = a[i, k] - b[j, k]
                acc += d * d
            out[i, j] = np.sqrt(acc)
    return out


@njit(cache=True)
def prefix_majority(sorted_labels, n_classes):
    n_q, k_max = sorted_labels.shape
    out = np.empty((n_q, k_max), dtype=np.int64)
    for q in range(n_q):
        counts = np.zeros(n_classes, dtype=np.int64)
        best = 0
        best_count = 0
        for j in range(k_max):
            lab = sorted_labels[q, j]
            counts[lab] += 1
            c = counts[lab]
            if c > best_count or (c == best_count and lab < best):
                best = lab
                best_count = c
            out[q, j] = best
    return out
