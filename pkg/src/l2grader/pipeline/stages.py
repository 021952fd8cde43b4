"""Pipeline stages: ingest -> train-lms -> extract -> train -> score ->
evaluate, each a checkpoint reading and writing the artifact directory.

Within a stage, work is ordered by sorted keys so every output byte is a
function of (config, inputs). The run manifest additionally records
timings and is therefore the one artifact that differs between reruns.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import re
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .. import lm as ngram_lm
from ..corpus.io import read_alignments, read_corpus, read_text_lines
from ..corpus.lm_sets import (
    SET_NAMES,
    assemble_sets,
    best_answer_pool,
    clean_for_lm,
    select_best_utterances,
)
from ..corpus.parser import parse_transcription, tokenize_plain
from ..corpus.splits import split_by_speaker
from ..corpus.types import INDICATOR_NAMES, AlignmentSystem, Language
from ..editdist import levenshtein
from ..errors import (
    DataError,
    EmptyAlignment,
    EmptyCorpus,
    GraderError,
    IdMismatch,
    MissingOutOfDomainText,
)
from ..features.bow import BowSet, build_bow_set
from ..features.extract import (
    FEATURE_NAMES,
    N_FEATURES,
    assemble_vector,
    lm_feature_block,
    pronunciation_features,
    transcription_features,
)
from ..features.lexicons import load_lexicons
from ..metrics import EvalReport
from ..mlp import Mlp
from .config import PipelineConfig
from .reports import write_report

log = logging.getLogger(__name__)

_LM_TIER_OF_SET = {
    "out_of_domain": "ood",
    "in_domain": "all",
    "level": "level",
    "session": "session",
    "question": "question",
}
_LOOKUP_CHAIN = {
    "ood": ("ood",),
    "all": ("all",),
    "level": ("level", "all"),
    "session": ("session", "level", "all"),
    "question": ("question", "session", "level", "all"),
}


def _safe_name(value: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_.-]", "_", value)
    if cleaned != value:
        cleaned += "_" + hashlib.sha1(value.encode("utf-8")).hexdigest()[:8]
    return cleaned


def _language_name(language: Language) -> str:
    return "english" if language is Language.ENGLISH else "german"


def _native_system(language: Language) -> AlignmentSystem:
    return (
        AlignmentSystem.NATIVE_EN
        if language is Language.ENGLISH
        else AlignmentSystem.NATIVE_DE
    )


def _sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _update_manifest(config: PipelineConfig, stage: str, seconds: float, **extra) -> None:
    path = Path(config.output_dir) / "manifest.json"
    manifest = {}
    if path.exists():
        manifest = json.loads(path.read_text(encoding="utf-8"))
    manifest.setdefault("config_digest", config.digest())
    manifest.setdefault("seed", config.seed)
    manifest.setdefault("stages", {})
    manifest["stages"][stage] = {
        "seconds": round(seconds, 3),
        "finished_utc": datetime.now(timezone.utc).isoformat(),
        **extra,
    }
    path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _write_fingerprint(config, artifact_rel: str, utterance_ids, content_digest: str) -> None:
    directory = Path(config.output_dir) / "fingerprints"
    directory.mkdir(parents=True, exist_ok=True)
    payload = {
        "artifact": artifact_rel,
        "utterance_ids": sorted(utterance_ids),
        "content_sha256": content_digest,
    }
    name = artifact_rel.replace("/", "__") + ".json"
    (directory / name).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _parse_all(corpus) -> None:
    """Parse every transcription, attaching utterance context to failures."""
    for utt in corpus:
        try:
            parse_transcription(utt.raw_text, utt.question.language)
        except GraderError as exc:
            raise DataError(f"utterance {utt.utterance_id!r}: {exc}") from exc


def _load_split(config: PipelineConfig):
    corpus = read_corpus(config.utterances)
    by_id = {u.utterance_id: u for u in corpus}
    splits_dir = Path(config.output_dir) / "splits"
    try:
        train_ids = (splits_dir / "train_ids.txt").read_text(encoding="utf-8").split()
        eval_ids = (splits_dir / "eval_ids.txt").read_text(encoding="utf-8").split()
    except FileNotFoundError as exc:
        raise DataError("split files missing; run the ingest stage first") from exc
    missing = (set(train_ids) | set(eval_ids)) - set(by_id)
    if missing:
        raise DataError(f"split references unknown utterances: {sorted(missing)[:5]}")
    train = [by_id[i] for i in sorted(train_ids)]
    evaluation = [by_id[i] for i in sorted(eval_ids)]
    return train, evaluation


# -- ingest ------------------------------------------------------------------


def ingest(config: PipelineConfig):
    """Validate inputs, build the speaker-disjoint split, write id lists."""
    started = time.perf_counter()
    corpus = read_corpus(config.utterances)
    if not corpus:
        raise EmptyCorpus(f"{config.utterances} contains no utterances")
    _parse_all(corpus)
    if config.alignments is not None:
        read_alignments(config.alignments)
    train, evaluation = split_by_speaker(corpus, config.split_fraction, config.seed)
    splits_dir = Path(config.output_dir) / "splits"
    splits_dir.mkdir(parents=True, exist_ok=True)
    for name, subset in (("train_ids.txt", train), ("eval_ids.txt", evaluation)):
        ids = sorted(u.utterance_id for u in subset)
        (splits_dir / name).write_text("\n".join(ids) + "\n", encoding="utf-8")
    _update_manifest(
        config,
        "ingest",
        time.perf_counter() - started,
        inputs={str(p): _sha256_file(p) for p in config.input_paths()},
        n_utterances=len(corpus),
        n_train=len(train),
        n_eval=len(evaluation),
        n_speakers=len({u.speaker_id for u in corpus}),
    )
    return train, evaluation


# -- train-lms ---------------------------------------------------------------


def _subkey(key, tier: str) -> tuple:
    if tier in ("ood", "all"):
        return ()
    if tier == "level":
        return (key.level.value,)
    if tier == "session":
        return (key.level.value, key.session.value)
    return (key.level.value, key.session.value, key.question_id)


def _lm_index_entry(language: Language, tier: str, subkey: tuple, order: int) -> str:
    return "|".join([language.value, tier, *subkey, str(order)])


def train_lms(config: PipelineConfig) -> int:
    """Train the per-context Witten-Bell models over the five text sets.

    Models shared between questions (the out-of-domain, all-in-domain,
    level and session sets) are trained once; an index file maps every
    (context, order) to its model file.
    """
    started = time.perf_counter()
    train, _ = _load_split(config)
    entries_by_language: dict = {}
    for utt in best_answer_pool(train):
        tokens = clean_for_lm(utt)
        if tokens:
            entries_by_language.setdefault(utt.question.language, []).append(
                (utt.utterance_id, utt.question, tokens)
            )
    if not entries_by_language:
        raise DataError("train split has no scored nonempty transcripts")
    ood_sentences = {}
    for language in entries_by_language:
        path = config.out_of_domain.get(language.value)
        if path is None:
            raise MissingOutOfDomainText(
                f"no out-of-domain text configured for {language.value}"
            )
        ood_sentences[language] = [
            tokenize_plain(line) for line in read_text_lines(path)
        ]
    jobs: dict = {}
    for language in sorted(entries_by_language, key=lambda lang: lang.value):
        keys = sorted({q for _, q, _ in entries_by_language[language]})
        for key in keys:
            sets = assemble_sets(
                entries_by_language[language], key, ood_sentences[language]
            )
            for set_name in SET_NAMES:
                if set_name in sets.fallbacks:
                    continue  # resolved through the lookup chain at extraction
                tier = _LM_TIER_OF_SET[set_name]
                job_key = (language, tier, _subkey(key, tier))
                if job_key not in jobs:
                    jobs[job_key] = (sets.texts[set_name], sets.utterance_ids[set_name])

    out_root = Path(config.output_dir)
    index = {}
    n_models = 0
    for language, tier, subkey in sorted(jobs, key=lambda j: (j[0].value, j[1], j[2])):
        texts, ids = jobs[(language, tier, subkey)]
        base = "-".join([tier, *(_safe_name(part) for part in subkey)])
        for order in config.lm_orders:
            rel = f"lms/{language.value}/{base}_o{order}.lm"
            path = out_root / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            model = ngram_lm.train(texts, order)
            model.save(path)
            _write_fingerprint(config, rel, ids, _sha256_file(path))
            index[_lm_index_entry(language, tier, subkey, order)] = rel
            n_models += 1
    (out_root / "lms" / "index.json").write_text(
        json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    _update_manifest(config, "train-lms", time.perf_counter() - started, n_models=n_models)
    return n_models


def _load_lm_models(config: PipelineConfig) -> dict:
    index_path = Path(config.output_dir) / "lms" / "index.json"
    if not index_path.is_file():
        raise DataError("no trained LMs found; run the train-lms stage first")
    index = json.loads(index_path.read_text(encoding="utf-8"))
    return {
        entry: ngram_lm.NgramModel.load(Path(config.output_dir) / rel)
        for entry, rel in sorted(index.items())
    }


def _lm_for(models: dict, key, set_name: str, order: int):
    for tier in _LOOKUP_CHAIN[_LM_TIER_OF_SET[set_name]]:
        entry = _lm_index_entry(key.language, tier, _subkey(key, tier), order)
        model = models.get(entry)
        if model is not None:
            return model
    raise DataError(
        f"no language model for {key.language.value} set {set_name!r} order {order}"
    )


# -- extract -------------------------------------------------------------


def _bow_rel_path(key, depth: int) -> str:
    parts = [key.language.value, key.level.value, key.session.value]
    if depth == 4:
        parts.append(_safe_name(key.question_id))
    return "bow/" + "_".join(parts) + ".json"


def _build_bow_sets(config: PipelineConfig, train, lexicons) -> dict:
    """One BoW set per train question plus a session-level fallback."""
    keys = sorted({u.question for u in train})
    jobs = [(key, 4) for key in keys]
    seen_sessions = set()
    for key in keys:
        if key.prefix(3) not in seen_sessions:
            seen_sessions.add(key.prefix(3))
            jobs.append((key, 3))
    bow_sets = {}
    out_root = Path(config.output_dir)
    for key, depth in jobs:
        best = select_best_utterances(train, key, depth=depth)
        texts = [t for t in (clean_for_lm(u) for u in best) if t]
        bow = build_bow_set(texts, lexicons, _language_name(key.language), k=config.bow_k)
        rel = _bow_rel_path(key, depth)
        path = out_root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps({"k": bow.k, "words": bow.words}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        _write_fingerprint(config, rel, [u.utterance_id for u in best], _sha256_file(path))
        bow_sets[key.prefix(depth)] = bow
    return bow_sets


def _bow_for(bow_sets: dict, key) -> BowSet:
    bow = bow_sets.get(key.prefix(4))
    if bow is None:
        bow = bow_sets.get(key.prefix(3))
    if bow is None:
        bow = BowSet(words={}, k=0)
    return bow


def _load_lexicons(config: PipelineConfig):
    return load_lexicons(
        word_paths=dict(config.lexicons),
        reference_path=config.reference_lexicon,
        corrections_path=config.corrections,
        stopword_paths=config.stopwords or None,
    )


def extract(config: PipelineConfig) -> int:
    """Compute the 116-entry vector for every train and eval utterance."""
    started = time.perf_counter()
    train, evaluation = _load_split(config)
    lexicons = _load_lexicons(config)
    models = _load_lm_models(config)
    bow_sets = _build_bow_sets(config, train, lexicons)
    alignments = None
    if config.alignments is not None:
        alignments = read_alignments(config.alignments)
    else:
        log.warning("no alignment file configured; pronunciation blocks zeroed")

    split_of = {u.utterance_id: "train" for u in train}
    split_of.update({u.utterance_id: "eval" for u in evaluation})
    rows = []
    for utt in sorted(train + evaluation, key=lambda u: u.utterance_id):
        try:
            vector = _extract_one(config, utt, lexicons, models, bow_sets, alignments)
        except GraderError as exc:
            raise DataError(f"utterance {utt.utterance_id!r}: {exc}") from exc
        rows.append((utt, vector))

    features_dir = Path(config.output_dir) / "features"
    features_dir.mkdir(parents=True, exist_ok=True)
    with open(features_dir / "features.jsonl", "w", encoding="utf-8") as handle:
        for utt, vector in rows:
            record = {
                "utterance_id": utt.utterance_id,
                "question": {
                    "language": utt.question.language.value,
                    "level": utt.question.level.value,
                    "session": utt.question.session.value,
                    "question_id": utt.question.question_id,
                },
                "split": split_of[utt.utterance_id],
                "features": vector.as_array().tolist(),
                "scores": list(utt.scores.as_tuple()) if utt.scores else None,
            }
            handle.write(json.dumps(record, sort_keys=True) + "\n")
    with open(features_dir / "features.txt", "w", encoding="utf-8") as handle:
        for utt, vector in rows:
            values = " ".join(repr(v) for v in vector.as_array().tolist())
            handle.write(f"{utt.utterance_id} {values}\n")
    (features_dir / "columns.txt").write_text(
        "\n".join(FEATURE_NAMES) + "\n", encoding="utf-8"
    )
    _update_manifest(config, "extract", time.perf_counter() - started, n_vectors=len(rows))
    return len(rows)


def _extract_one(config, utt, lexicons, models, bow_sets, alignments):
    transcript = parse_transcription(utt.raw_text, utt.question.language)
    tokens = transcript.surfaces(include_hesitations=config.count_hesitations)
    blocks = []
    for set_name in SET_NAMES:
        for order in config.lm_orders:
            model = _lm_for(models, utt.question, set_name, order)
            sentence = model.score_sentence(tokens)
            blocks.append(lm_feature_block(sentence, config.oov_free_diff_minus_one))
    transcription = transcription_features(
        transcript,
        lexicons,
        _bow_for(bow_sets, utt.question),
        utt.question.language,
        count_hesitations=config.count_hesitations,
    )
    if alignments is None:
        return assemble_vector(blocks, transcription, [0.0] * 5)
    best = alignments.get((utt.utterance_id, AlignmentSystem.NON_NATIVE_BEST))
    native = alignments.get((utt.utterance_id, _native_system(utt.question.language)))
    pronunciation = None
    if best is None or native is None:
        log.warning(
            "utterance %s: missing phone alignment(s); pronunciation block zeroed",
            utt.utterance_id,
        )
    else:
        try:
            pronunciation = pronunciation_features(best, native)
        except EmptyAlignment as exc:
            log.warning("utterance %s: %s; pronunciation block zeroed", utt.utterance_id, exc)
    return assemble_vector(blocks, transcription, pronunciation)


# -- train / score ---------------------------------------------------------


def _read_feature_rows(config: PipelineConfig) -> list:
    path = Path(config.output_dir) / "features" / "features.jsonl"
    if not path.is_file():
        raise DataError("no feature dump found; run the extract stage first")
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                rows.append(json.loads(line))
    return rows


def _group_name(question: dict) -> str:
    return f"{question['language']}_{question['level']}_{question['session']}"


def train_models(config: PipelineConfig) -> int:
    """Fit six per-indicator classifiers for every (language, level,
    session) group on the scored train-split features."""
    started = time.perf_counter()
    rows = _read_feature_rows(config)
    grouped: dict = {}
    for row in rows:
        if row["split"] == "train" and row["scores"] is not None:
            grouped.setdefault(_group_name(row["question"]), []).append(row)
    if not grouped:
        raise DataError("no scored training utterances; cannot train any classifier")
    out_root = Path(config.output_dir)
    n_models = 0
    for group in sorted(grouped):
        group_rows = grouped[group]
        ids = [r["utterance_id"] for r in group_rows]
        features = np.array([r["features"] for r in group_rows], dtype=np.float64)
        data_digest = hashlib.sha256(
            json.dumps(
                [[r["utterance_id"], r["features"], r["scores"]] for r in group_rows],
                sort_keys=True,
            ).encode("utf-8")
        ).hexdigest()
        model_dir = out_root / "models" / _safe_name(group)
        model_dir.mkdir(parents=True, exist_ok=True)
        losses = {}
        for index, indicator in enumerate(INDICATOR_NAMES):
            labels = np.array([r["scores"][index] for r in group_rows], dtype=np.int64)
            model = Mlp.init(
                seed=config.nn.seed,
                input_dim=N_FEATURES,
                learning_rate=config.nn.learning_rate,
            )
            curve = model.train(
                features, labels, epochs=config.nn.epochs, batch_size=config.nn.batch_size
            )
            model.fingerprint = {"n": len(ids), "data_sha256": data_digest}
            rel = f"models/{_safe_name(group)}/indicator_{index + 1}_{indicator}.json"
            model.save(out_root / rel)
            _write_fingerprint(config, rel, ids, _sha256_file(out_root / rel))
            losses[indicator] = {"first_epoch": curve[0], "last_epoch": curve[-1]}
            n_models += 1
        (model_dir / "training_losses.json").write_text(
            json.dumps(losses, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    _update_manifest(config, "train", time.perf_counter() - started, n_models=n_models)
    return n_models


def _load_classifiers(config: PipelineConfig) -> dict:
    root = Path(config.output_dir) / "models"
    if not root.is_dir():
        raise DataError("no classifiers found; run the train stage first")
    classifiers: dict = {}
    for path in sorted(root.glob("*/indicator_*.json")):
        index = int(path.stem.split("_")[1]) - 1
        classifiers.setdefault(path.parent.name, {})[index] = Mlp.load(
            path, expected_input_dim=N_FEATURES
        )
    return classifiers


def score(config: PipelineConfig) -> int:
    """Predict the six indicators for every eval utterance."""
    started = time.perf_counter()
    rows = _read_feature_rows(config)
    classifiers = _load_classifiers(config)
    predictions_dir = Path(config.output_dir) / "predictions"
    predictions_dir.mkdir(parents=True, exist_ok=True)
    n_scored = 0
    skipped_groups = set()
    with open(predictions_dir / "predictions.jsonl", "w", encoding="utf-8") as handle:
        for row in rows:
            if row["split"] != "eval":
                continue
            group = _safe_name(_group_name(row["question"]))
            group_models = classifiers.get(group)
            if not group_models or len(group_models) != len(INDICATOR_NAMES):
                skipped_groups.add(group)
                continue
            features = np.array(row["features"], dtype=np.float64)
            predicted = [
                int(group_models[i].predict(features))
                for i in range(len(INDICATOR_NAMES))
            ]
            record = {
                "utterance_id": row["utterance_id"],
                "question": row["question"],
                "predicted": predicted,
                "reference": row["scores"],
            }
            handle.write(json.dumps(record, sort_keys=True) + "\n")
            n_scored += 1
    for group in sorted(skipped_groups):
        log.warning("no trained models for group %s; eval utterances skipped", group)
    _update_manifest(config, "score", time.perf_counter() - started, n_scored=n_scored)
    return n_scored


# -- evaluate ---------------------------------------------------------------


def assert_no_leakage(config: PipelineConfig) -> None:
    """Every training fingerprint must be disjoint from the eval split."""
    eval_path = Path(config.output_dir) / "splits" / "eval_ids.txt"
    if not eval_path.is_file():
        raise DataError("split files missing; run the ingest stage first")
    eval_ids = set(eval_path.read_text(encoding="utf-8").split())
    fingerprints = sorted((Path(config.output_dir) / "fingerprints").glob("*.json"))
    if not fingerprints:
        raise DataError("no training fingerprints found")
    for path in fingerprints:
        payload = json.loads(path.read_text(encoding="utf-8"))
        leaked = eval_ids.intersection(payload["utterance_ids"])
        if leaked:
            raise DataError(
                f"eval utterances leaked into {payload['artifact']}: {sorted(leaked)[:5]}"
            )


def evaluate(config: PipelineConfig) -> dict:
    """Confusion-matrix metrics per (group, indicator) plus weighted
    per-language averages; checks the leakage guard first."""
    started = time.perf_counter()
    assert_no_leakage(config)
    predictions_path = Path(config.output_dir) / "predictions" / "predictions.jsonl"
    if not predictions_path.is_file():
        raise DataError("no predictions found; run the score stage first")
    per_group: dict = {}
    with open(predictions_path, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            record = json.loads(line)
            if record["reference"] is not None:
                per_group.setdefault(_group_name(record["question"]), []).append(record)

    report = {"groups": {}, "languages": {}}
    by_language: dict = {}
    for group in sorted(per_group):
        records = per_group[group]
        language = records[0]["question"]["language"]
        entry = {"n": len(records), "indicators": {}}
        for index, indicator in enumerate(INDICATOR_NAMES):
            refs = [r["reference"][index] for r in records]
            hyps = [r["predicted"][index] for r in records]
            evaluation = EvalReport.from_pairs(refs, hyps)
            entry["indicators"][indicator] = {
                "cc": evaluation.cc,
                "wk": evaluation.wk,
                "corr": evaluation.corr,
                "n": evaluation.n,
                "matrix": evaluation.matrix.counts,
            }
            by_language.setdefault(language, {}).setdefault(indicator, []).append(
                (evaluation, evaluation.n)
            )
        report["groups"][group] = entry

    for language in sorted(by_language):
        indicators = {}
        all_pairs = []
        for indicator in INDICATOR_NAMES:
            pairs = by_language[language].get(indicator, [])
            indicators[indicator] = _weighted_summary(pairs)
            all_pairs.extend(pairs)
        report["languages"][language] = {
            "indicators": indicators,
            "overall": _weighted_summary(all_pairs),
        }

    reports_dir = Path(config.output_dir) / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    write_report(report, reports_dir / "report.json", reports_dir / "report.txt")
    _update_manifest(config, "evaluate", time.perf_counter() - started)
    return report


def _weighted_summary(pairs) -> dict:
    total = sum(n for _, n in pairs)
    if total == 0:
        return {"cc": None, "wk": None, "corr": None, "n": 0}

    def _avg(getter):
        values = [
            (getter(rep), n)
            for rep, n in pairs
            if getter(rep) is not None and not math.isnan(getter(rep))
        ]
        weight = sum(n for _, n in values)
        if weight == 0:
            return float("nan")
        return sum(v * n for v, n in values) / weight

    return {
        "cc": _avg(lambda r: r.cc),
        "wk": _avg(lambda r: r.wk),
        "corr": _avg(lambda r: r.corr),
        "n": total,
    }


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage in order and return the evaluation report."""
    ingest(config)
    train_lms(config)
    extract(config)
    train_models(config)
    score(config)
    return evaluate(config)


# -- agreement ---------------------------------------------------------------


def agreement(file_a, file_b) -> dict:
    """Inter-annotator word accuracy between two transcription files.

    Both files are corpus JSONL keyed by utterance_id; hesitations and
    noise labels are stripped before comparison. Returns per-utterance
    counts and the pooled word accuracy.
    """
    corpus_a = {u.utterance_id: u for u in read_corpus(file_a)}
    corpus_b = {u.utterance_id: u for u in read_corpus(file_b)}
    if set(corpus_a) != set(corpus_b):
        only_a = sorted(set(corpus_a) - set(corpus_b))[:5]
        only_b = sorted(set(corpus_b) - set(corpus_a))[:5]
        raise IdMismatch(
            f"utterance ids differ between files (only in first: {only_a}, "
            f"only in second: {only_b})"
        )
    per_utterance = []
    total_ref = 0
    total_err = 0
    for utt_id in sorted(corpus_a):
        ref_utt = corpus_a[utt_id]
        hyp_utt = corpus_b[utt_id]
        ref = parse_transcription(ref_utt.raw_text, ref_utt.question.language).surfaces(
            include_hesitations=False
        )
        hyp = parse_transcription(hyp_utt.raw_text, hyp_utt.question.language).surfaces(
            include_hesitations=False
        )
        n_err = levenshtein(ref, hyp)
        total_ref += len(ref)
        total_err += n_err
        per_utterance.append(
            {
                "utterance_id": utt_id,
                "n_ref": len(ref),
                "n_err": n_err,
                "wa": 1.0 - n_err / len(ref) if ref else None,
            }
        )
    if total_ref == 0:
        raise DataError("reference file contains no words after cleaning")
    return {
        "per_utterance": per_utterance,
        "pooled": {
            "n_ref": total_ref,
            "n_err": total_err,
            "wa": 1.0 - total_err / total_ref,
        },
    }
