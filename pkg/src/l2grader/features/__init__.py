from .bow import DEFAULT_BOW_K, BowSet, build_bow_set
from .extract import (
    FEATURE_NAMES,
    N_FEATURES,
    N_LM_FEATURES,
    N_PRONUNCIATION_FEATURES,
    N_TRANSCRIPTION_FEATURES,
    FeatureVector,
    assemble_vector,
    lm_feature_block,
    pronunciation_features,
    transcription_features,
)
from .lexicons import (
    Lexicons,
    default_stopwords,
    load_lexicons,
    read_correction_table,
    read_word_list,
)
from .spelling import edit_distance_1, spell_correct

__all__ = [
    "DEFAULT_BOW_K",
    "FEATURE_NAMES",
    "N_FEATURES",
    "N_LM_FEATURES",
    "N_PRONUNCIATION_FEATURES",
    "N_TRANSCRIPTION_FEATURES",
    "BowSet",
    "FeatureVector",
    "Lexicons",
    "assemble_vector",
    "build_bow_set",
    "default_stopwords",
    "edit_distance_1",
    "lm_feature_block",
    "load_lexicons",
    "pronunciation_features",
    "read_correction_table",
    "read_word_list",
    "spell_correct",
    "transcription_features",
]
