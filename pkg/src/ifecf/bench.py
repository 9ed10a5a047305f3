"""Benchmark harness: sweep train fraction x learning rate, with and without
feature reduction, recording accuracy and wall-clock timing per cell."""

from __future__ import annotations

import hashlib
import platform
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, SplitSpec, apply_normalizer, fit_normalizer, split
from .lvq import LVQConfig, evaluate, init_codebook
from .lvq import train as lvq_train
from .select import SelectionConfig, SelectionError, apply_selection, ife_cf

DEFAULT_FRACTIONS = tuple(round(0.1 * i, 1) for i in range(1, 10))
DEFAULT_ALPHAS = (0.1, 0.2, 0.3, 0.4, 0.5)


class BenchError(ValueError):
    """Raised on invalid sweep configuration or a failing cell."""


@dataclass(frozen=True)
class SweepConfig:
    fractions: tuple = DEFAULT_FRACTIONS
    alphas: tuple = DEFAULT_ALPHAS
    repeats: int = 5
    seed: int = 42
    selection: SelectionConfig | None = None
    eval_target: str = "test"  # test | train | whole
    epochs: int = 20
    normalize: bool = True
    stratified: bool = True

    def __post_init__(self):
        if not all(0.0 < f < 1.0 for f in self.fractions):
            raise BenchError("fractions must lie in (0,1)")
        if not all(0.0 < a < 1.0 for a in self.alphas):
            raise BenchError("alphas must lie in (0,1)")
        if self.repeats < 1:
            raise BenchError("repeats must be >= 1")
        if self.eval_target not in ("test", "train", "whole"):
            raise BenchError(f"unknown eval_target {self.eval_target!r}")


@dataclass
class CellRecord:
    fraction: float
    alpha: float
    variant: str  # original | reduced
    accuracy: float  # percent, on eval_target
    paper_efficiency: float  # percent, whole-dataset correct over test count
    correct: int
    total: int
    train_ms: float
    classify_ms: float
    train_ms_repeats: list[float] = field(default_factory=list)
    classify_ms_repeats: list[float] = field(default_factory=list)
    selection: dict | None = None

    def to_dict(self) -> dict:
        return {
            "fraction": self.fraction,
            "alpha": self.alpha,
            "variant": self.variant,
            "accuracy": self.accuracy,
            "paper_efficiency": self.paper_efficiency,
            "correct": self.correct,
            "total": self.total,
            "train_ms": self.train_ms,
            "classify_ms": self.classify_ms,
            "train_ms_repeats": self.train_ms_repeats,
            "classify_ms_repeats": self.classify_ms_repeats,
            "selection": self.selection,
        }


@dataclass
class SweepReport:
    config: SweepConfig
    records: list[CellRecord]
    environment: str = ""

    def variant_view(self, variant: str) -> "SweepReport":
        return SweepReport(
            self.config,
            [r for r in self.records if r.variant == variant],
            self.environment,
        )

    def to_dict(self) -> dict:
        return {
            "fractions": list(self.config.fractions),
            "alphas": list(self.config.alphas),
            "repeats": self.config.repeats,
            "seed": self.config.seed,
            "eval_target": self.config.eval_target,
            "environment": self.environment,
            "records": [r.to_dict() for r in self.records],
        }

    def accuracy_table(self, variant: str) -> list[list]:
        """Rows: one per fraction; columns: split label then accuracy per alpha."""
        rows = []
        for f in self.config.fractions:
            label = f"{round(f * 100)}-{round((1 - f) * 100)}"
            row = [label]
            for a in self.config.alphas:
                cell = self._cell(f, a, variant)
                row.append(f"{cell.accuracy:.2f}")
            rows.append(row)
        return rows

    def _cell(self, fraction, alpha, variant) -> CellRecord:
        for r in self.records:
            if r.fraction == fraction and r.alpha == alpha and r.variant == variant:
                return r
        raise BenchError(f"no record for cell ({fraction}, {alpha}, {variant})")


def cell_seed(master: int, fraction_index: int, alpha_index: int) -> int:
    """Stable per-cell seed; adding grid rows never perturbs existing cells."""
    digest = hashlib.blake2b(
        f"{master}:{fraction_index}:{alpha_index}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def paper_efficiency(correct_whole: int, test_total: int) -> float:
    """Whole-dataset correct count over test-partition size, as a percent.

    Can exceed 100; reported alongside standard accuracy, never instead.
    """
    if test_total < 1:
        raise BenchError("test_total must be >= 1")
    return 100.0 * correct_whole / test_total


def _median_ms(samples: list[float]) -> float:
    return statistics.median(samples)


def _run_cell(d: Dataset, cfg: SweepConfig, fraction: float, alpha: float,
              fi: int, ai: int, variant: str) -> CellRecord:
    seed = cell_seed(cfg.seed, fi, ai)
    try:
        train_d, test_d = split(d, SplitSpec(fraction, seed=seed, stratified=cfg.stratified))
    except ValueError as exc:
        raise BenchError(f"cell ({fraction}, {alpha}, {variant}): {exc}") from exc

    selection_summary = None
    if variant == "reduced":
        assert cfg.selection is not None
        try:
            sel = ife_cf(train_d, cfg.selection)
        except SelectionError as exc:
            raise BenchError(
                f"cell ({fraction}, {alpha}, reduced): selection failed: {exc}"
            ) from exc
        train_d = apply_selection(train_d, sel)
        test_d = apply_selection(test_d, sel)
        selection_summary = {
            "kept_count": len(sel.kept),
            "kept": sel.kept,
            "eliminated_count": len(sel.eliminated),
        }

    if cfg.normalize:
        norm = fit_normalizer(train_d)
        train_d = apply_normalizer(train_d, norm)
        test_d = apply_normalizer(test_d, norm)

    lvq_cfg = LVQConfig(alpha=alpha, epochs=cfg.epochs, seed=seed)
    model0 = init_codebook(train_d, lvq_cfg)

    train_times = []
    model = None
    for _ in range(cfg.repeats):
        t0 = time.perf_counter()
        model = lvq_train(model0, train_d, lvq_cfg)
        train_times.append((time.perf_counter() - t0) * 1e3)
    assert model is not None

    target = {"test": test_d, "train": train_d}.get(cfg.eval_target)
    classify_times = []
    res = None
    for _ in range(cfg.repeats):
        t0 = time.perf_counter()
        if target is not None:
            res = evaluate(model, target)
        else:  # whole dataset
            res_tr = evaluate(model, train_d)
            res_te = evaluate(model, test_d)
        classify_times.append((time.perf_counter() - t0) * 1e3)
    if target is None:
        correct = res_tr.correct + res_te.correct
        total = res_tr.total + res_te.total
    else:
        correct, total = res.correct, res.total

    whole_correct = (
        evaluate(model, train_d).correct + evaluate(model, test_d).correct
    )
    return CellRecord(
        fraction=fraction,
        alpha=alpha,
        variant=variant,
        accuracy=100.0 * correct / total,
        paper_efficiency=paper_efficiency(whole_correct, test_d.n_instances),
        correct=correct,
        total=total,
        train_ms=_median_ms(train_times),
        classify_ms=_median_ms(classify_times),
        train_ms_repeats=train_times,
        classify_ms_repeats=classify_times,
        selection=selection_summary,
    )


def run_sweep(d: Dataset, cfg: SweepConfig) -> SweepReport:
    """Evaluate every (fraction, alpha) cell for the original dataset and,
    when a selection config is present, the reduced variant.

    Accuracy fields are a pure function of (dataset, config); timing fields
    come from a monotonic clock and vary run to run.
    """
    variants = ["original"] + (["reduced"] if cfg.selection is not None else [])
    records = []
    for fi, fraction in enumerate(cfg.fractions):
        for ai, alpha in enumerate(cfg.alphas):
            for variant in variants:
                records.append(_run_cell(d, cfg, fraction, alpha, fi, ai, variant))
    env = f"{platform.platform()} python {platform.python_version()} numpy {np.__version__}"
    return SweepReport(cfg, records, environment=env)


def compare_reports(a: SweepReport, b: SweepReport) -> dict:
    """Per-cell accuracy and classify-time deltas (b minus a).

    Reports must share grid axes; use ``variant_view`` to compare the
    original variant against the reduced one.
    """
    if (
        tuple(a.config.fractions) != tuple(b.config.fractions)
        or tuple(a.config.alphas) != tuple(b.config.alphas)
    ):
        raise BenchError("reports have different grid axes")
    cells = []
    faster_or_equal = 0
    for ra in a.records:
        rb = next(
            (
                r
                for r in b.records
                if r.fraction == ra.fraction and r.alpha == ra.alpha
            ),
            None,
        )
        if rb is None:
            raise BenchError(f"no matching cell for ({ra.fraction}, {ra.alpha})")
        if rb.classify_ms <= ra.classify_ms:
            faster_or_equal += 1
        cells.append(
            {
                "fraction": ra.fraction,
                "alpha": ra.alpha,
                "accuracy_delta": rb.accuracy - ra.accuracy,
                "classify_ms_delta": rb.classify_ms - ra.classify_ms,
            }
        )
    return {
        "cells": cells,
        "fraction_faster_or_equal": faster_or_equal / len(cells) if cells else 0.0,
    }


def timing_stability(report: SweepReport, flag_ratio: float = 3.0) -> dict:
    """Inter-repeat spread per cell; cells beyond the ratio are flagged as
    load artifacts."""
    if report.config.repeats < 3:
        raise BenchError("timing_stability needs repeats >= 3")
    cells = []
    flagged = []
    for r in report.records:
        lo = min(r.classify_ms_repeats)
        ratio = max(r.classify_ms_repeats) / lo if lo > 0 else float("inf")
        entry = {
            "fraction": r.fraction,
            "alpha": r.alpha,
            "variant": r.variant,
            "spread_ratio": ratio,
        }
        cells.append(entry)
        if ratio > flag_ratio:
            flagged.append(entry)
    return {"cells": cells, "flagged": flagged}
