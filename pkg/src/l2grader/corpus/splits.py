"""Speaker-disjoint train/eval partitioning."""

from __future__ import annotations

import random

from ..errors import EmptyCorpus


def split_by_speaker(corpus, train_fraction: float, seed: int):
    """Partition utterances so no speaker appears on both sides.

    The number of training speakers is the count whose ratio to the total
    is closest to ``train_fraction`` (ties resolved toward fewer training
    speakers). Deterministic for a given seed.
    """
    if not corpus:
        raise EmptyCorpus("cannot split an empty corpus")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0,1), got {train_fraction}")
    speakers = sorted({u.speaker_id for u in corpus})
    n = len(speakers)
    n_train = min(range(n + 1), key=lambda k: abs(k / n - train_fraction))
    rng = random.Random(seed)
    rng.shuffle(speakers)
    train_speakers = set(speakers[:n_train])
    train = [u for u in corpus if u.speaker_id in train_speakers]
    evaluation = [u for u in corpus if u.speaker_id not in train_speakers]
    return train, evaluation
