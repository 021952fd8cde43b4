from .config import NnConfig, PipelineConfig, load_config
from .reports import PAPER_REPORTED, PAPER_REPORTED_NOTE, render_report_text
from .stages import (
    agreement,
    assert_no_leakage,
    evaluate,
    extract,
    ingest,
    run_pipeline,
    score,
    train_lms,
    train_models,
)
from .synth import SyntheticSpec, generate_synthetic

__all__ = [
    "PAPER_REPORTED",
    "PAPER_REPORTED_NOTE",
    "NnConfig",
    "PipelineConfig",
    "SyntheticSpec",
    "agreement",
    "assert_no_leakage",
    "evaluate",
    "extract",
    "generate_synthetic",
    "ingest",
    "load_config",
    "render_report_text",
    "run_pipeline",
    "score",
    "train_lms",
    "train_models",
]
