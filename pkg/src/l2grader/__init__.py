"""Automatic proficiency grading of spoken L2 answers.

Annotated transcriptions and phone-alignment files go in; per-indicator
score predictions and CC / WK / Corr evaluation reports come out.
"""

from . import corpus, features, lm, metrics, mlp, pipeline
from .editdist import levenshtein

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "corpus",
    "features",
    "levenshtein",
    "lm",
    "metrics",
    "mlp",
    "pipeline",
]
