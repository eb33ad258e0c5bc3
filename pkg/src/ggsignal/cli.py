"""Command-line entry point.

Every subcommand loads its inputs, computes a result payload, writes any
side outputs (tables, stacks, CSV files), and finally writes a JSON report
that echoes the full configuration, the seed, and a digest of every input
file, so any run can be reproduced from its own report. The report goes to
--report when given, to stdout otherwise; exit status is 0 exactly when the
full report was written.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
Relative input paths are also tried under $GGSIGNAL_DATA when they do not
exist in the working directory.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from . import __version__
from .association import PermutationConfig, sc_weat, weat
from .classifier import TrainConfig
from .disentangler import DisentangleConfig, run as run_disentangle, save_stack
from .embeddings import EmbeddingTable, load_table, save_table
from .errors import DataError, NumericError, PipelineError
from .evaluations import (GgWeatSpec, build_gg_targets, gg_weat, analogy_accuracy,
                          pairwise_gap, principal_coordinates, sc_gg_sweep, valnorm)
from .lexicon import (balanced_sample, load_analogies, load_gender_lexicon,
                      load_similarity_pairs, load_stimuli, load_valence_norms,
                      require_sets)
from .seeding import derive_seed
from .synthetic import SynthConfig, generate

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

ENV_DATA_DIR = "GGSIGNAL_DATA"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    if not p.exists() and not p.is_absolute():
        base = os.environ.get(ENV_DATA_DIR)
        if base and (Path(base) / p).exists():
            return Path(base) / p
    return p


def _digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            h.update(block)
    return "sha256:" + h.hexdigest()


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_report(args, argv: list[str], results: dict, inputs: list[Path]) -> None:
    config = {k: (str(v) if isinstance(v, Path) else v)
              for k, v in vars(args).items() if k not in ("handler",)}
    report = {
        "command": args.command,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "argv": argv,
        "config": config,
        "inputs": {str(p): _digest(p) for p in inputs},
        "results": results,
    }
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.report is None:
        sys.stdout.write(text)
    else:
        _atomic_write_text(Path(args.report), text)
        log.info("report written to %s", args.report)


def _default_stimuli_path() -> Path:
    return Path(str(resources.files("ggsignal").joinpath("data/stimuli_weat.txt")))


def _load_embeddings(path: Path, vocab_limit: int | None,
                     required: list[str]) -> EmbeddingTable:
    # With a vocabulary cutoff, words the command is about to test must stay
    # loadable even when ranked below the cutoff.
    return load_table(path, vocab_limit=vocab_limit,
                      required_words=required if vocab_limit else None)


def _perm_config(args) -> PermutationConfig:
    return PermutationConfig(exact_limit=args.exact_limit, samples=args.p_samples,
                             seed=args.seed)


def _add_table_args(parser: _Parser, paired: bool = True) -> None:
    parser.add_argument("--embeddings", help="single table to evaluate")
    if paired:
        parser.add_argument("--before", help="table before disentanglement")
        parser.add_argument("--after", help="table after disentanglement")
    parser.add_argument("--vocab-limit", type=int, default=None,
                        help="keep only the first N vocabulary entries (test words "
                             "are force-loaded); recorded in the report")


def _add_perm_args(parser: _Parser) -> None:
    parser.add_argument("--p-samples", type=int, default=100_000,
                        help="Monte Carlo sample count when enumeration is infeasible")
    parser.add_argument("--exact-limit", type=int, default=200_000,
                        help="max partition count for exact enumeration")
    parser.add_argument("--min-set-size", type=int, default=8,
                        help="minimum usable words per set (default 8)")
    parser.add_argument("--on-missing", choices=("error", "drop"), default="error",
                        help="abort on unresolvable stimulus words (default) or drop them")
    parser.add_argument("--trim-to-equal", action="store_true",
                        help="randomly trim the larger target set instead of erroring")


def _table_conditions(args, required: list[str]) -> dict[str, EmbeddingTable]:
    """Map of condition name -> table, from --embeddings or --before/--after."""
    have_single = args.embeddings is not None
    have_pair = getattr(args, "before", None) is not None or getattr(args, "after", None) is not None
    if have_single == have_pair:
        raise UsageError("give either --embeddings or both --before and --after")
    if have_single:
        return {"table": _load_embeddings(_resolve(args.embeddings), args.vocab_limit, required)}
    if args.before is None or args.after is None:
        raise UsageError("--before and --after must be given together")
    return {
        "before": _load_embeddings(_resolve(args.before), args.vocab_limit, required),
        "after": _load_embeddings(_resolve(args.after), args.vocab_limit, required),
    }


def _condition_paths(args) -> list[Path]:
    paths = []
    for name in ("embeddings", "before", "after"):
        value = getattr(args, name, None)
        if value is not None:
            paths.append(_resolve(value))
    return paths


def _with_delta(per_condition: dict[str, dict], key: str = "effect_size") -> dict:
    results = dict(per_condition)
    if "before" in per_condition and "after" in per_condition:
        results["delta"] = {key: per_condition["after"][key] - per_condition["before"][key]}
    return results


# ---------------------------------------------------------------- disentangle

def _cmd_disentangle(args, argv: list[str]) -> None:
    lexicon_path = _resolve(args.lexicon)
    animacy_path = _resolve(args.animacy)
    lexicon = load_gender_lexicon(lexicon_path, animacy_path, language=args.language)
    table_path = _resolve(args.embeddings)
    table = _load_embeddings(table_path, args.vocab_limit,
                             list(lexicon.feminine + lexicon.masculine))
    config = DisentangleConfig(
        max_iterations=args.iterations,
        stop_accuracy=args.stop_accuracy,
        per_class=args.per_class,
        classifier=TrainConfig(regularization_strength=args.regularization,
                               epochs=args.epochs, holdout_fraction=args.holdout,
                               seed=derive_seed(args.seed, "classifier")),
        seed=args.seed,
        resample=not args.fixed_sample,
    )
    transformed, stack = run_disentangle(table, lexicon, config)

    missing_lexicon = [w for w in (*lexicon.feminine, *lexicon.masculine) if w not in table]
    results = {
        "iterations": len(stack),
        "accuracy_trace": list(stack.accuracy_trace),
        "final_accuracy": stack.final_accuracy,
        "per_class": args.per_class,
        "model_weight_norms": list(stack.model_weight_norms),
        "consecutive_direction_cosines": list(stack.consecutive_cosines),
        "annihilated_words": transformed.zero_norm_words(),
        "lexicon_words": {"feminine": len(lexicon.feminine),
                          "masculine": len(lexicon.masculine)},
        "missing_lexicon_words": len(missing_lexicon),
        "table_words": len(table),
        "dimension": table.dimension,
    }
    if args.out_embeddings:
        save_table(transformed, args.out_embeddings)
        results["out_embeddings"] = args.out_embeddings
    if args.out_stack:
        save_stack(stack, args.out_stack)
        results["out_stack"] = args.out_stack
    inputs = [table_path, lexicon_path] + ([animacy_path] if animacy_path else [])
    _write_report(args, argv, results, inputs)


# ------------------------------------------------------------- measurements

def _stimuli_path(args) -> Path:
    return _resolve(args.stimuli) if args.stimuli else _default_stimuli_path()


def _cmd_weat(args, argv: list[str]) -> None:
    stimuli_path = _stimuli_path(args)
    stimuli = load_stimuli(stimuli_path)
    x_set, y_set, a_set, b_set = require_sets(
        stimuli, args.targets_x, args.targets_y, args.attributes_a, args.attributes_b)
    required = [*x_set.words, *y_set.words, *a_set.words, *b_set.words]
    tables = _table_conditions(args, required)
    per_condition = {}
    for name, table in tables.items():
        result = weat(x_set, y_set, a_set, b_set, table, _perm_config(args),
                      on_missing=args.on_missing, min_words=args.min_set_size,
                      trim_to_equal=args.trim_to_equal)
        per_condition[name] = result.to_json()
    results = {
        "sets": {"targets_x": args.targets_x, "targets_y": args.targets_y,
                 "attributes_a": args.attributes_a, "attributes_b": args.attributes_b},
        **_with_delta(per_condition),
    }
    _write_report(args, argv, results, [stimuli_path] + _condition_paths(args))


def _cmd_sc_weat(args, argv: list[str]) -> None:
    stimuli_path = _stimuli_path(args)
    stimuli = load_stimuli(stimuli_path)
    a_set, b_set = require_sets(stimuli, args.attributes_a, args.attributes_b)
    required = [args.word, *a_set.words, *b_set.words]
    tables = _table_conditions(args, required)
    per_condition = {}
    for name, table in tables.items():
        result = sc_weat(args.word, a_set, b_set, table, _perm_config(args),
                         on_missing=args.on_missing, min_words=args.min_set_size,
                         trim_to_equal=args.trim_to_equal)
        per_condition[name] = result.to_json()
    results = {
        "word": args.word,
        "sets": {"attributes_a": args.attributes_a, "attributes_b": args.attributes_b},
        **_with_delta(per_condition),
    }
    _write_report(args, argv, results, [stimuli_path] + _condition_paths(args))


def _cmd_gg_weat(args, argv: list[str]) -> None:
    pairs_path = _resolve(args.pairs)
    lexicon_path = _resolve(args.lexicon)
    animacy_path = _resolve(args.animacy)
    stimuli_path = _stimuli_path(args)
    pairs = load_similarity_pairs(pairs_path)
    lexicon = load_gender_lexicon(lexicon_path, animacy_path, language=args.language)
    stimuli = load_stimuli(stimuli_path)
    a_set, b_set = require_sets(stimuli, args.attributes_a, args.attributes_b)
    fem_targets, masc_targets = build_gg_targets(pairs, lexicon, args.min_score,
                                                 args.max_per_set)
    spec = GgWeatSpec(fem_targets, masc_targets, a_set, b_set)
    required = [*fem_targets.words, *masc_targets.words, *a_set.words, *b_set.words]
    tables = _table_conditions(args, required)
    per_condition = {}
    for name, table in tables.items():
        result = gg_weat(spec, table, _perm_config(args), on_missing=args.on_missing,
                         min_words=args.min_set_size, trim_to_equal=args.trim_to_equal)
        per_condition[name] = result.to_json()
    results = {
        "min_score": args.min_score,
        "feminine_targets": list(fem_targets.words),
        "masculine_targets": list(masc_targets.words),
        "attributes": {"feminine": args.attributes_a, "masculine": args.attributes_b},
        **_with_delta(per_condition),
    }
    inputs = [pairs_path, lexicon_path, stimuli_path] + \
        ([animacy_path] if animacy_path else []) + _condition_paths(args)
    _write_report(args, argv, results, inputs)


def _cmd_valnorm(args, argv: list[str]) -> None:
    norms_path = _resolve(args.norms)
    stimuli_path = _stimuli_path(args)
    norms = load_valence_norms(norms_path)
    stimuli = load_stimuli(stimuli_path)
    pleasant, unpleasant = require_sets(stimuli, args.pleasant, args.unpleasant)
    required = [n.word for n in norms] + [*pleasant.words, *unpleasant.words]
    tables = _table_conditions(args, required)
    per_condition = {}
    for name, table in tables.items():
        r, n_used = valnorm(norms, pleasant, unpleasant, table,
                            on_missing=args.on_missing, min_words=args.min_set_size)
        per_condition[name] = {"pearson_r": r, "n_used": n_used}
    results = {
        "sets": {"pleasant": args.pleasant, "unpleasant": args.unpleasant},
        "n_norm_words": len(norms),
        **_with_delta(per_condition, key="pearson_r"),
    }
    _write_report(args, argv, results, [norms_path, stimuli_path] + _condition_paths(args))


def _cmd_analogy(args, argv: list[str]) -> None:
    questions_path = _resolve(args.questions)
    questions = load_analogies(questions_path)
    sections = set(args.sections.split(",")) if args.sections else None
    pool = [q for q in questions if sections is None or q.section in sections]
    required = sorted({w for q in pool for w in (q.a, q.b, q.c, q.d)})
    tables = _table_conditions(args, required)
    per_condition = {}
    for name, table in tables.items():
        acc, n = analogy_accuracy(questions, table, sections)
        per_condition[name] = {"accuracy": acc, "n_attempted": n,
                               "n_questions": len(pool)}
    results = {
        "sections": sorted(sections) if sections else None,
        **_with_delta(per_condition, key="accuracy"),
    }
    _write_report(args, argv, results, [questions_path] + _condition_paths(args))


def _cmd_pairdist(args, argv: list[str]) -> None:
    gendered_path = _resolve(args.pairs_gendered)
    english_path = _resolve(args.pairs_english)
    lexicon_path = _resolve(args.lexicon)
    animacy_path = _resolve(args.animacy)
    pairs_gendered = load_similarity_pairs(gendered_path)
    pairs_english = load_similarity_pairs(english_path)
    lexicon = load_gender_lexicon(lexicon_path, animacy_path, language=args.language)
    gendered_words = [w for p in pairs_gendered for w in (p.word_a, p.word_b)]
    english_words = [w for p in pairs_english for w in (p.word_a, p.word_b)]
    raw_path, dis_path, en_path = (_resolve(args.raw), _resolve(args.disentangled),
                                   _resolve(args.english))
    table_raw = _load_embeddings(raw_path, args.vocab_limit, gendered_words)
    table_dis = _load_embeddings(dis_path, args.vocab_limit, gendered_words)
    table_en = _load_embeddings(en_path, args.vocab_limit, english_words)
    gap = pairwise_gap(pairs_gendered, pairs_english, lexicon,
                       table_raw, table_dis, table_en)
    inputs = [gendered_path, english_path, lexicon_path, raw_path, dis_path, en_path]
    if animacy_path:
        inputs.append(animacy_path)
    _write_report(args, argv, gap.to_json(), inputs)


def _cmd_sweep(args, argv: list[str]) -> None:
    lexicon_path = _resolve(args.lexicon)
    animacy_path = _resolve(args.animacy)
    stimuli_path = _stimuli_path(args)
    lexicon = load_gender_lexicon(lexicon_path, animacy_path, language=args.language)
    stimuli = load_stimuli(stimuli_path)
    fem_attrs, masc_attrs = require_sets(stimuli, args.attributes_f, args.attributes_m)
    required = list(lexicon.feminine + lexicon.masculine) + \
        [*fem_attrs.words, *masc_attrs.words]
    before_path, after_path = _resolve(args.before), _resolve(args.after)
    table_before = _load_embeddings(before_path, args.vocab_limit, required)
    table_after = _load_embeddings(after_path, args.vocab_limit, required)

    shared = set(table_before.words) & set(table_after.words)
    usable = lexicon.restricted_to(shared)
    per_gender = min(args.per_gender, len(usable.feminine), len(usable.masculine))
    if per_gender < 1:
        raise DataError("no lexicon words shared by both tables")
    if per_gender < args.per_gender:
        log.warning("per-gender sample reduced to %d by lexicon coverage", per_gender)
    fem_words, masc_words = balanced_sample(usable, per_gender,
                                            derive_seed(args.seed, "sweep-sample"))
    sweep = sc_gg_sweep(fem_words, masc_words, fem_attrs, masc_attrs,
                        table_before, table_after, on_missing=args.on_missing,
                        min_words=args.min_set_size)
    results = {"per_gender": per_gender,
               "attributes": {"feminine": args.attributes_f, "masculine": args.attributes_m},
               **sweep.to_json()}
    if args.out_csv:
        lines = ["word,gender,d_before,d_after,weakened,weakened_loose"]
        for r in sweep.records:
            lines.append(f"{r.word},{r.gender},{r.d_before!r},{r.d_after!r},"
                         f"{int(r.weakened)},{int(r.weakened_loose)}")
        _atomic_write_text(Path(args.out_csv), "\n".join(lines) + "\n")
        results["out_csv"] = args.out_csv
    inputs = [lexicon_path, stimuli_path, before_path, after_path] + \
        ([animacy_path] if animacy_path else [])
    _write_report(args, argv, results, inputs)


def _cmd_synth(args, argv: list[str]) -> None:
    config = SynthConfig(dimension=args.dimension, per_class=args.per_class,
                         signal_strength=args.signal, noise_scale=args.noise,
                         class_imbalance=args.imbalance,
                         second_direction_strength=args.second_signal,
                         seed=args.seed)
    table, lexicon, direction, base_table = generate(config)
    save_table(table, args.out_embeddings)
    results = {
        "words": len(table),
        "dimension": table.dimension,
        "out_embeddings": args.out_embeddings,
    }
    if args.out_base:
        save_table(base_table, args.out_base)
        results["out_base"] = args.out_base
    if args.out_lexicon:
        lines = [f"{w}\tF" for w in lexicon.feminine] + \
                [f"{w}\tM" for w in lexicon.masculine]
        _atomic_write_text(Path(args.out_lexicon), "\n".join(lines) + "\n")
        results["out_lexicon"] = args.out_lexicon
    if args.out_direction:
        header = f"1 {table.dimension}\n"
        row = " ".join("%.17g" % v for v in direction)
        _atomic_write_text(Path(args.out_direction), header + row + "\n")
        results["out_direction"] = args.out_direction
    _write_report(args, argv, results, [])


def _cmd_pca_coords(args, argv: list[str]) -> None:
    lexicon_path = _resolve(args.lexicon)
    animacy_path = _resolve(args.animacy)
    lexicon = load_gender_lexicon(lexicon_path, animacy_path, language=args.language)
    table_path = _resolve(args.embeddings)
    table = _load_embeddings(table_path, args.vocab_limit,
                             list(lexicon.feminine + lexicon.masculine))
    usable = lexicon.restricted_to(table.words)
    per_gender = min(args.per_gender, len(usable.feminine), len(usable.masculine))
    fem_words, masc_words = balanced_sample(usable, per_gender,
                                            derive_seed(args.seed, "pca-sample"))
    words = fem_words + masc_words
    genders = ["F"] * len(fem_words) + ["M"] * len(masc_words)
    coords = principal_coordinates(table.rows(words), n_components=2)
    lines = ["word,gender,pc1,pc2"]
    for word, gender, (pc1, pc2) in zip(words, genders, coords):
        lines.append(f"{word},{gender},{float(pc1)!r},{float(pc2)!r}")
    _atomic_write_text(Path(args.out_csv), "\n".join(lines) + "\n")
    results = {"n_words": len(words), "per_gender": per_gender, "out_csv": args.out_csv}
    inputs = [table_path, lexicon_path] + ([animacy_path] if animacy_path else [])
    _write_report(args, argv, results, inputs)


# ------------------------------------------------------------------- parser

def build_parser() -> _Parser:
    parser = _Parser(prog="ggsignal",
                     description="Disentangle grammatical-gender signals from word "
                                 "embeddings and measure gender associations")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: _Parser) -> None:
        p.add_argument("--seed", type=int, default=0, help="base seed for all randomness")
        p.add_argument("--report", help="write the JSON report here (stdout if omitted)")
        p.add_argument("--language", default="", help="language code recorded in reports")

    p = sub.add_parser("disentangle", help="iteratively remove the gender hyperplane")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--lexicon", required=True, help="gendered-noun TSV (word<TAB>F|M)")
    p.add_argument("--animacy", help="animate words to exclude, one per line")
    p.add_argument("--vocab-limit", type=int, default=None)
    p.add_argument("--iterations", type=int, default=15, help="projection cap (0 = measure only)")
    p.add_argument("--stop-accuracy", type=float, default=0.52)
    p.add_argument("--per-class", type=int, default=3000)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--regularization", type=float, default=1e-4)
    p.add_argument("--holdout", type=float, default=0.1)
    p.add_argument("--fixed-sample", action="store_true",
                   help="reuse the round-0 noun sample instead of resampling")
    p.add_argument("--out-embeddings", help="write the transformed table here")
    p.add_argument("--out-stack", help="write the extracted directions here")
    common(p)
    p.set_defaults(handler=_cmd_disentangle)

    p = sub.add_parser("weat", help="two-target association test")
    p.add_argument("--stimuli", help="stimulus file (packaged default)")
    p.add_argument("--targets-x", required=True)
    p.add_argument("--targets-y", required=True)
    p.add_argument("--attributes-a", required=True)
    p.add_argument("--attributes-b", required=True)
    _add_table_args(p)
    _add_perm_args(p)
    common(p)
    p.set_defaults(handler=_cmd_weat)

    p = sub.add_parser("sc-weat", help="single-word association test")
    p.add_argument("--stimuli")
    p.add_argument("--word", required=True)
    p.add_argument("--attributes-a", required=True)
    p.add_argument("--attributes-b", required=True)
    _add_table_args(p)
    _add_perm_args(p)
    common(p)
    p.set_defaults(handler=_cmd_sc_weat)

    p = sub.add_parser("gg-weat", help="grammatical-gender association test with "
                                       "targets built from similarity pairs")
    p.add_argument("--pairs", required=True, help="similarity pair TSV with genders")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--animacy")
    p.add_argument("--stimuli")
    p.add_argument("--attributes-a", required=True, help="semantically feminine set key")
    p.add_argument("--attributes-b", required=True, help="semantically masculine set key")
    p.add_argument("--min-score", type=float, default=6.0,
                   help="similarity threshold for target pairs")
    p.add_argument("--max-per-set", type=int, default=None)
    _add_table_args(p)
    _add_perm_args(p)
    common(p)
    p.set_defaults(handler=_cmd_gg_weat)

    p = sub.add_parser("valnorm", help="valence-norm correlation")
    p.add_argument("--norms", required=True, help="valence TSV (word<TAB>score)")
    p.add_argument("--stimuli")
    p.add_argument("--pleasant", required=True)
    p.add_argument("--unpleasant", required=True)
    _add_table_args(p)
    _add_perm_args(p)
    common(p)
    p.set_defaults(handler=_cmd_valnorm)

    p = sub.add_parser("analogy", help="offset-analogy accuracy")
    p.add_argument("--questions", required=True)
    p.add_argument("--sections", help="comma-separated section filter")
    _add_table_args(p)
    common(p)
    p.set_defaults(handler=_cmd_analogy)

    p = sub.add_parser("pairdist", help="pairwise-distance gap reduction")
    p.add_argument("--pairs-gendered", required=True)
    p.add_argument("--pairs-english", required=True, help="index-aligned translations")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--animacy")
    p.add_argument("--raw", required=True)
    p.add_argument("--disentangled", required=True)
    p.add_argument("--english", required=True)
    p.add_argument("--vocab-limit", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_pairdist)

    p = sub.add_parser("sweep", help="per-word association sweep before/after")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--animacy")
    p.add_argument("--stimuli")
    p.add_argument("--attributes-f", required=True, help="semantically feminine set key")
    p.add_argument("--attributes-m", required=True, help="semantically masculine set key")
    p.add_argument("--per-gender", type=int, default=2000)
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    p.add_argument("--vocab-limit", type=int, default=None)
    p.add_argument("--out-csv")
    _add_perm_args(p)
    common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("synth", help="generate a synthetic oracle fixture")
    p.add_argument("--dimension", type=int, default=300)
    p.add_argument("--per-class", type=int, default=3000)
    p.add_argument("--signal", type=float, default=5.0)
    p.add_argument("--noise", type=float, default=0.5)
    p.add_argument("--imbalance", type=float, default=1.0)
    p.add_argument("--second-signal", type=float, default=0.0)
    p.add_argument("--out-embeddings", required=True)
    p.add_argument("--out-base")
    p.add_argument("--out-lexicon")
    p.add_argument("--out-direction")
    common(p)
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("pca-coords", help="two-component coordinates of gendered nouns")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--animacy")
    p.add_argument("--vocab-limit", type=int, default=None)
    p.add_argument("--per-gender", type=int, default=500)
    p.add_argument("--out-csv", required=True)
    common(p)
    p.set_defaults(handler=_cmd_pca_coords)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        args.handler(args, argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, PipelineError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
