"""Levenshtein distance over arbitrary symbol sequences."""

from __future__ import annotations

import numpy as np

_VECTOR_THRESHOLD = 32


def levenshtein(a, b) -> int:
    """Minimum number of substitutions, insertions and deletions turning
    sequence ``a`` into sequence ``b``.

    Shared prefixes and suffixes never participate in an optimal edit
    script, so they are stripped first. Long inputs use a vectorized row
    update; the insertion dependency c[j] = min(c[j-1]+1, ...) becomes a
    prefix minimum over (candidate[j] - j).
    """
    start = 0
    end_a, end_b = len(a), len(b)
    while start < end_a and start < end_b and a[start] == b[start]:
        start += 1
    while end_a > start and end_b > start and a[end_a - 1] == b[end_b - 1]:
        end_a -= 1
        end_b -= 1
    a = a[start:end_a]
    b = b[start:end_b]
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    if len(b) >= _VECTOR_THRESHOLD:
        return _levenshtein_rows_vectorized(a, b)
    previous = list(range(len(b) + 1))
    for i, sym_a in enumerate(a, start=1):
        current = [i]
        append = current.append
        for j, sym_b in enumerate(b, start=1):
            cost = 0 if sym_a == sym_b else 1
            append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
            )
        previous = current
    return previous[len(b)]


def _levenshtein_rows_vectorized(a, b) -> int:
    b_arr = np.asarray(list(b))
    offsets = np.arange(len(b) + 1, dtype=np.int64)
    previous = offsets.copy()
    for i, sym_a in enumerate(a, start=1):
        candidate = np.minimum(previous[1:] + 1, previous[:-1] + (b_arr != sym_a))
        seed = np.empty(len(b) + 1, dtype=np.int64)
        seed[0] = i
        seed[1:] = candidate
        previous = offsets + np.minimum.accumulate(seed - offsets)
    return int(previous[-1])
