"""End-to-end experiment orchestration.

Stages: load -> stratified split -> min-max scaling fitted on the training
split -> per-classifier evaluation without feature selection and, when an
optimizer is configured, with wrapper feature selection (the optimizer searches
masks scored by cross-validated accuracy on the training split only), followed
by report emission as JSON or CSV.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .classifiers import (
    ClassifierConfig,
    ClassifierError,
    ClassifierKind,
    predict,
    train_classifier,
)
from .data import (
    DataError,
    Dataset,
    FeatureMask,
    apply_mask,
    fit_scaler,
    load_dataset,
    stratified_split,
    transform,
)
from .evaluation import EvaluationError, MetricsReport, full_metrics, k_fold_cv
from .metaheuristics import (
    BaConfig,
    IcaConfig,
    OptimizeResult,
    ba_optimize,
    binarize_position,
    ica_optimize,
)

EMPTY_MASK_COST = 2.0  # strictly worse than any feasible mask (costs live in [0, 1])

CSV_HEADER = (
    "classifier,mode,accuracy,sensitivity,specificity,precision,f_score,"
    "kappa,mae,rmse,rae,n_selected,selected_features"
)

ALL_CLASSIFIERS: tuple[ClassifierKind, ...] = tuple(ClassifierKind)


class ConfigError(ValueError):
    """Contradictory or malformed experiment configuration."""


class ExperimentIOError(OSError):
    """Unreadable data file or unwritable output path."""


def stable_seed(*parts: object) -> int:
    """Platform-stable 64-bit seed derived from the string forms of `parts`."""
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


@dataclass(frozen=True)
class ExperimentConfig:
    data_path: str
    optimizer: str = "ba"  # "ica" | "ba" | "none"
    classifiers: tuple[ClassifierKind, ...] = ALL_CLASSIFIERS
    split_fraction: float = 0.6
    cv_k: int = 4
    seed: int = 0
    ica: IcaConfig = field(default_factory=IcaConfig)
    ba: BaConfig = field(default_factory=BaConfig)
    classifier_overrides: Mapping[ClassifierKind, Mapping[str, float]] = field(
        default_factory=dict
    )
    fitness_feature_penalty: float = 0.0
    output_path: str = ""
    output_format: str = "json"

    def validate(self) -> None:
        if self.optimizer not in ("ica", "ba", "none"):
            raise ConfigError(f"optimizer must be ica, ba, or none, got {self.optimizer!r}")
        if not self.classifiers:
            raise ConfigError("at least one classifier is required")
        if not 0.0 < self.split_fraction < 1.0:
            raise ConfigError(
                f"split_fraction must be in (0, 1), got {self.split_fraction}"
            )
        if self.cv_k < 2:
            raise ConfigError(f"cv_k must be >= 2, got {self.cv_k}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output_format must be json or csv, got {self.output_format!r}")
        if self.fitness_feature_penalty < 0:
            raise ConfigError("fitness_feature_penalty must be >= 0")
        self.ica.validate()
        self.ba.validate()


@dataclass(frozen=True)
class ExperimentRow:
    classifier: ClassifierKind
    mode: str  # "with_fs" | "without_fs"
    metrics: Optional[MetricsReport]
    mask: FeatureMask
    selected_features: tuple[str, ...]
    fitness_history: tuple[tuple[int, float], ...] = ()
    wall_seconds: float = 0.0
    error: Optional[str] = None

    @property
    def n_selected(self) -> int:
        return self.mask.n_selected


@dataclass(frozen=True)
class ExperimentReport:
    metadata: Mapping[str, object]
    rows: tuple[ExperimentRow, ...]


def fs_fitness(
    mask: FeatureMask,
    cfg: ClassifierConfig,
    train: Dataset,
    cv_k: int,
    seed: int,
    feature_penalty: float = 0.0,
) -> float:
    """Search cost of a mask: 1 - cross-validated accuracy on the masked
    training data. Empty masks get a constant penalty instead of an error."""
    if mask.n_selected == 0:
        return EMPTY_MASK_COST
    fold_seed = stable_seed(seed, cfg.kind.value, mask.key())
    cv = k_fold_cv(cfg, apply_mask(train, mask), cv_k, fold_seed)
    cost = 1.0 - cv.ocv_accuracy
    if feature_penalty:
        cost += feature_penalty * mask.n_selected / len(mask)
    return cost


def run_wrapper_fs(
    opt: str,
    clf_cfg: ClassifierConfig,
    train: Dataset,
    exp_cfg: ExperimentConfig,
) -> OptimizeResult:
    """Search feature masks with the configured optimizer, scoring each mask by
    `fs_fitness`. Results are cached per mask; exact cost ties prefer fewer
    features."""
    d = train.n_features
    cache: dict[str, float] = {}

    def cost_fn(position: np.ndarray) -> float:
        mask = binarize_position(position)
        key = mask.key()
        if key not in cache:
            cache[key] = fs_fitness(
                mask,
                clf_cfg,
                train,
                exp_cfg.cv_k,
                exp_cfg.seed,
                exp_cfg.fitness_feature_penalty,
            )
        return cache[key]

    def tie_break(position: np.ndarray) -> float:
        return float(binarize_position(position).n_selected)

    if opt == "ica":
        opt_cfg = dataclasses.replace(
            exp_cfg.ica, seed=stable_seed(exp_cfg.seed, "ica", clf_cfg.kind.value)
        )
        result = ica_optimize(cost_fn, d, opt_cfg, tie_break)
    elif opt == "ba":
        opt_cfg = dataclasses.replace(
            exp_cfg.ba, seed=stable_seed(exp_cfg.seed, "ba", clf_cfg.kind.value)
        )
        result = ba_optimize(cost_fn, d, opt_cfg, tie_break)
    else:
        raise ConfigError(f"optimizer must be ica or ba, got {opt!r}")

    if result.best_mask.n_selected == 0:
        # Every evaluated mask was empty; repair to the strongest coordinate.
        repaired = FeatureMask.from_indices([int(np.argmax(result.best_position))], d)
        position = result.best_position.copy()
        position[int(np.argmax(result.best_position))] = 1.0
        result = dataclasses.replace(
            result,
            best_position=position,
            best_mask=repaired,
            best_cost=cost_fn(position),
        )
    return result


def classifier_config_for(
    exp_cfg: ExperimentConfig, kind: ClassifierKind
) -> ClassifierConfig:
    overrides = dict(exp_cfg.classifier_overrides.get(kind, {}))
    return ClassifierConfig(
        kind=kind,
        hyperparams=overrides,
        seed=stable_seed(exp_cfg.seed, "clf", kind.value),
    )


def prepare_experiment_data(cfg: ExperimentConfig) -> tuple[Dataset, Dataset]:
    """Load, split, and scale: the scaler sees only the training split."""
    try:
        ds = load_dataset(cfg.data_path)
    except OSError as exc:
        raise ExperimentIOError(f"cannot read {cfg.data_path}: {exc}") from exc
    train, test = stratified_split(ds, cfg.split_fraction, stable_seed(cfg.seed, "split"))
    scaler = fit_scaler(train)
    return transform(train, scaler), transform(test, scaler)


def _evaluate_on_test(
    clf_cfg: ClassifierConfig, train: Dataset, test: Dataset
) -> MetricsReport:
    model = train_classifier(clf_cfg, train)
    return full_metrics(test.labels, predict(model, test.features))


def run_experiment(
    cfg: ExperimentConfig, progress: Optional[Callable[[str], None]] = None
) -> ExperimentReport:
    """Execute the full pipeline; per-classifier failures are recorded in their
    rows without aborting the remaining rows."""
    cfg.validate()
    say = progress or (lambda _msg: None)
    train, test = prepare_experiment_data(cfg)
    all_ones = FeatureMask.all_ones(train.n_features)
    neg, pos = train.class_counts()
    test_neg, test_pos = test.class_counts()

    rows: list[ExperimentRow] = []
    for kind in cfg.classifiers:
        clf_cfg = classifier_config_for(cfg, kind)

        start = time.perf_counter()
        try:
            metrics = _evaluate_on_test(clf_cfg, train, test)
            rows.append(
                ExperimentRow(
                    classifier=kind,
                    mode="without_fs",
                    metrics=metrics,
                    mask=all_ones,
                    selected_features=train.feature_names,
                    wall_seconds=time.perf_counter() - start,
                )
            )
            say(f"{kind.value} without_fs: accuracy={metrics.accuracy:.4f}")
        except (ClassifierError, DataError, EvaluationError) as exc:
            rows.append(
                ExperimentRow(
                    classifier=kind,
                    mode="without_fs",
                    metrics=None,
                    mask=all_ones,
                    selected_features=(),
                    wall_seconds=time.perf_counter() - start,
                    error=str(exc),
                )
            )
            say(f"{kind.value} without_fs: FAILED ({exc})")

        if cfg.optimizer == "none":
            continue

        start = time.perf_counter()
        try:
            search = run_wrapper_fs(cfg.optimizer, clf_cfg, train, cfg)
            mask = search.best_mask
            masked_train = apply_mask(train, mask)
            masked_test = apply_mask(test, mask)
            metrics = _evaluate_on_test(clf_cfg, masked_train, masked_test)
            rows.append(
                ExperimentRow(
                    classifier=kind,
                    mode="with_fs",
                    metrics=metrics,
                    mask=mask,
                    selected_features=masked_train.feature_names,
                    fitness_history=search.history,
                    wall_seconds=time.perf_counter() - start,
                )
            )
            say(
                f"{kind.value} with_fs: accuracy={metrics.accuracy:.4f} "
                f"n_selected={mask.n_selected}"
            )
        except (ClassifierError, DataError, EvaluationError) as exc:
            rows.append(
                ExperimentRow(
                    classifier=kind,
                    mode="with_fs",
                    metrics=None,
                    mask=all_ones,
                    selected_features=(),
                    wall_seconds=time.perf_counter() - start,
                    error=str(exc),
                )
            )
            say(f"{kind.value} with_fs: FAILED ({exc})")

    metadata = {
        "seed": cfg.seed,
        "data_path": cfg.data_path,
        "optimizer": cfg.optimizer,
        "split_fraction": cfg.split_fraction,
        "cv_k": cfg.cv_k,
        "metrics_source": "test_split",
        "n_train": train.n_samples,
        "n_test": test.n_samples,
        "n_features": train.n_features,
        "train_class_counts": {"negative": neg, "positive": pos},
        "test_class_counts": {"negative": test_neg, "positive": test_pos},
        "fitness_feature_penalty": cfg.fitness_feature_penalty,
        "ica": _public_fields(cfg.ica),
        "ba": _public_fields(cfg.ba),
        "classifier_overrides": {
            kind.value: dict(params) for kind, params in cfg.classifier_overrides.items()
        },
    }
    return ExperimentReport(metadata=metadata, rows=tuple(rows))


def _public_fields(cfg_obj) -> dict[str, object]:
    fields = dataclasses.asdict(cfg_obj)
    fields.pop("seed", None)  # per-run seeds are derived; the experiment seed rules
    return fields


def _round6(x: float) -> float:
    return round(float(x), 6)


def _metrics_dict(m: MetricsReport) -> dict[str, object]:
    return {
        "accuracy": _round6(m.accuracy),
        "sensitivity": _round6(m.sensitivity),
        "specificity": _round6(m.specificity),
        "precision": _round6(m.precision),
        "f_score": _round6(m.f_score),
        "kappa": _round6(m.kappa),
        "mae": _round6(m.mae),
        "rmse": _round6(m.rmse),
        "rae": _round6(m.rae),
        "degenerate": m.degenerate,
    }


def report_to_json(report: ExperimentReport) -> str:
    """Deterministic JSON rendering; timing is deliberately omitted so reruns
    with identical configuration produce byte-identical files."""
    rows = []
    for row in report.rows:
        rows.append(
            {
                "classifier": row.classifier.value,
                "mode": row.mode,
                "metrics": None if row.metrics is None else _metrics_dict(row.metrics),
                "mask": row.mask.key(),
                "n_selected": row.n_selected,
                "selected_features": list(row.selected_features),
                "fitness_history": [[it, _round6(c)] for it, c in row.fitness_history],
                "error": row.error,
            }
        )
    return json.dumps({"metadata": report.metadata, "rows": rows}, indent=2) + "\n"


def report_to_csv(report: ExperimentReport) -> str:
    lines = [CSV_HEADER]
    for row in report.rows:
        if row.metrics is None:
            metric_cells = [""] * 9
        else:
            m = row.metrics
            metric_cells = [
                f"{v:.6f}"
                for v in (
                    m.accuracy,
                    m.sensitivity,
                    m.specificity,
                    m.precision,
                    m.f_score,
                    m.kappa,
                    m.mae,
                    m.rmse,
                    m.rae,
                )
            ]
        cells = [
            row.classifier.value,
            row.mode,
            *metric_cells,
            str(row.n_selected),
            ";".join(row.selected_features),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_report(report: ExperimentReport, format: str, path: str) -> None:
    """Write the report file; byte-stable given a fixed report."""
    if format == "json":
        text = report_to_json(report)
    elif format == "csv":
        text = report_to_csv(report)
    else:
        raise ConfigError(f"format must be json or csv, got {format!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExperimentIOError(f"cannot write {path}: {exc}") from exc
