"""Evaluation metrics: correct classification, linear weighted kappa,
Pearson correlation and word accuracy."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

from .editdist import levenshtein
from .errors import (
    ConstantSequence,
    DegenerateMarginals,
    EmptyMatrix,
    EmptyReference,
    LengthMismatch,
)

log = logging.getLogger(__name__)

N_CLASSES = 3


@dataclass
class ConfusionMatrix:
    """3x3 counts; rows are reference scores, columns predicted scores."""

    counts: list = field(
        default_factory=lambda: [[0] * N_CLASSES for _ in range(N_CLASSES)]
    )

    @classmethod
    def from_pairs(cls, refs, hyps) -> "ConfusionMatrix":
        if len(refs) != len(hyps):
            raise LengthMismatch(f"{len(refs)} references vs {len(hyps)} hypotheses")
        matrix = cls()
        for ref, hyp in zip(refs, hyps):
            matrix.counts[ref][hyp] += 1
        return matrix

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def add(self, other: "ConfusionMatrix") -> None:
        for i in range(N_CLASSES):
            for j in range(N_CLASSES):
                self.counts[i][j] += other.counts[i][j]


def correct_classification(matrix: ConfusionMatrix) -> float:
    """Fraction of counts on the diagonal."""
    total = matrix.total
    if total == 0:
        raise EmptyMatrix("confusion matrix has no counts")
    return sum(matrix.counts[i][i] for i in range(N_CLASSES)) / total


def weighted_kappa(matrix: ConfusionMatrix) -> float:
    """Linear weighted kappa.

    1 - sum(d_ij * O_ij) / sum(d_ij * E_ij) with disagreement weights
    d_ij = |i-j| / (N-1), observed proportions O and chance-expected
    proportions E from the marginals. A diagonal matrix gives 1.0; if the
    expected disagreement degenerates to zero with observed disagreement
    present, the value is defined as 0 and reported.
    """
    total = matrix.total
    if total == 0:
        raise EmptyMatrix("confusion matrix has no counts")
    row_sums = [sum(row) for row in matrix.counts]
    col_sums = [sum(matrix.counts[i][j] for i in range(N_CLASSES)) for j in range(N_CLASSES)]
    observed = 0.0
    expected = 0.0
    for i in range(N_CLASSES):
        for j in range(N_CLASSES):
            weight = abs(i - j) / (N_CLASSES - 1)
            observed += weight * matrix.counts[i][j] / total
            expected += weight * row_sums[i] * col_sums[j] / (total * total)
    if expected == 0.0:
        if observed == 0.0:
            return 1.0
        warnings.warn(
            "expected disagreement is zero with observed disagreement present",
            DegenerateMarginals,
        )
        return 0.0
    return 1.0 - observed / expected


def pearson(refs, hyps) -> float:
    """Product-moment correlation between two equal-length sequences."""
    if len(refs) != len(hyps):
        raise LengthMismatch(f"{len(refs)} references vs {len(hyps)} hypotheses")
    n = len(refs)
    if n < 2:
        raise LengthMismatch("need at least two pairs")
    mean_r = sum(refs) / n
    mean_h = sum(hyps) / n
    dev_r = [r - mean_r for r in refs]
    dev_h = [h - mean_h for h in hyps]
    var_r = sum(d * d for d in dev_r)
    var_h = sum(d * d for d in dev_h)
    if var_r == 0.0 or var_h == 0.0:
        raise ConstantSequence("correlation undefined for a constant sequence")
    return sum(dr * dh for dr, dh in zip(dev_r, dev_h)) / math.sqrt(var_r * var_h)


def word_accuracy(ref_tokens, hyp_tokens):
    """(word accuracy, reference length, word edit errors).

    Errors are the Levenshtein word edit distance; accuracy is
    1 - errors / reference length and may go negative when insertions
    outnumber matches.
    """
    if not ref_tokens:
        raise EmptyReference("reference token sequence is empty")
    n_err = levenshtein(ref_tokens, hyp_tokens)
    n_ref = len(ref_tokens)
    return 1.0 - n_err / n_ref, n_ref, n_err


@dataclass
class EvalReport:
    """Metrics for one (group, indicator) model on its evaluation split."""

    cc: float
    wk: float
    corr: float
    matrix: ConfusionMatrix
    n: int

    @classmethod
    def from_pairs(cls, refs, hyps) -> "EvalReport":
        matrix = ConfusionMatrix.from_pairs(refs, hyps)
        try:
            corr = pearson(refs, hyps)
        except ConstantSequence:
            corr = float("nan")
        return cls(
            cc=correct_classification(matrix),
            wk=weighted_kappa(matrix),
            corr=corr,
            matrix=matrix,
            n=matrix.total,
        )
