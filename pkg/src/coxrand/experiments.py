"""Monte Carlo sweeps of graph properties across n.

Trial ``t`` at size ``n`` analyses ``sample(n, schedule, trial_seed(seed, n, t))``,
so every cell is reproducible on its own and results do not depend on how
trials are spread over worker processes.  Trials whose analysis exceeds a
search budget are excluded from the estimate and reported separately.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import count_embeddings, expected_count_exact, resolve_pattern
from .errors import BudgetExceeded, ConfigError
from .graph import ProbabilitySchedule, sample
from .nerve import DEFAULT_FACE_BUDGET, betti_numbers, build_nerve
from .properties import (DEFAULT_CLIQUE_BUDGET, DEFAULT_SEARCH_BUDGET, find_zk, is_fc_type,
                         is_hyperbolic, nerve_dimension)
from .rng import trial_seed

Z95 = 1.959963984540054

_PROPERTY = re.compile(r"^([a-z_]+)(?:\((.*)\))?$")
_SIMPLE = {"fc_type", "hyperbolic"}
_INT_ARG = {"nerve_dim_ge", "betti_nonzero", "contains_zk", "contains_zk_no_common_neighbor"}


def parse_property(spec: str) -> tuple[str, object]:
    m = _PROPERTY.match(spec.replace(" ", ""))
    if not m:
        raise ConfigError(f"bad property {spec!r}")
    name, arg = m.group(1), m.group(2)
    if name in _SIMPLE and arg is None:
        return name, None
    if name in _INT_ARG and arg is not None and arg.isdigit():
        return name, int(arg)
    if name == "pattern_count" and arg:
        return name, resolve_pattern(arg)
    raise ConfigError(
        f"unknown property {spec!r}; expected fc_type, hyperbolic, nerve_dim_ge(k), "
        "betti_nonzero(k), contains_zk(k), contains_zk_no_common_neighbor(k) or pattern_count(<pattern>)")


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        return 0.0, 1.0
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    # the exact endpoints at 0 and n are 0 and 1; keep rounding from moving them
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


@dataclass
class ExperimentConfig:
    schedule: ProbabilitySchedule
    n_values: list[int]
    trials: int
    seed: int = 0
    properties: list[str] = field(default_factory=lambda: ["fc_type"])
    face_budget: int = DEFAULT_FACE_BUDGET
    clique_budget: int = DEFAULT_CLIQUE_BUDGET
    search_budget: int = DEFAULT_SEARCH_BUDGET
    name: str = "custom"
    description: str = ""

    def __post_init__(self):
        self.n_values = [int(n) for n in self.n_values]
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.n_values or any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ConfigError("n_values must be non-empty and strictly increasing")
        if self.n_values[0] < 2:
            raise ConfigError("n_values must be >= 2")
        for p in self.properties:
            parse_property(p)
        for n in self.n_values:
            self.schedule.probabilities(n)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "schedule": self.schedule.to_json(),
            "n_values": list(self.n_values),
            "trials": self.trials,
            "seed": self.seed,
            "properties": list(self.properties),
            "budgets": {"faces": self.face_budget, "cliques": self.clique_budget,
                        "search": self.search_budget},
        }

    @classmethod
    def from_json(cls, data) -> "ExperimentConfig":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            budgets = data.get("budgets", {})
            return cls(
                schedule=ProbabilitySchedule.from_json(data["schedule"]),
                n_values=list(data["n_values"]),
                trials=int(data["trials"]),
                seed=int(data.get("seed", 0)),
                properties=list(data.get("properties", ["fc_type"])),
                face_budget=int(budgets.get("faces", DEFAULT_FACE_BUDGET)),
                clique_budget=int(budgets.get("cliques", DEFAULT_CLIQUE_BUDGET)),
                search_budget=int(budgets.get("search", DEFAULT_SEARCH_BUDGET)),
                name=data.get("name", "custom"),
                description=data.get("description", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"malformed experiment config: {exc}") from exc


# ---------------------------------------------------------------------------
# one trial
# ---------------------------------------------------------------------------

def evaluate_trial(config: ExperimentConfig, parsed, n: int, t: int) -> list:
    """Per property: ``True``/``False``, ``None`` when excluded, or an int count for patterns."""
    g = sample(n, config.schedule, trial_seed(config.seed, n, t))
    nerve_cache: dict = {}
    zk_cache: dict = {}
    out = []
    for name, arg in parsed:
        try:
            if name == "fc_type":
                out.append(is_fc_type(g, config.clique_budget).fc_type)
            elif name == "hyperbolic":
                out.append(is_hyperbolic(g, budget=config.search_budget).hyperbolic)
            elif name == "nerve_dim_ge":
                out.append(nerve_dimension(g, config.clique_budget) >= arg)
            elif name == "betti_nonzero":
                if arg not in nerve_cache:
                    cx = build_nerve(g, max_dim=arg + 1, budget=config.face_budget)
                    prof = betti_numbers(cx, max_dim=arg)
                    nerve_cache[arg] = len(prof.betti) > arg and prof.betti[arg] > 0
                out.append(nerve_cache[arg])
            elif name in ("contains_zk", "contains_zk_no_common_neighbor"):
                strict = name.endswith("neighbor")
                key = (arg, strict)
                if key not in zk_cache:
                    zk_cache[key] = find_zk(g, arg, strict) is not None
                out.append(zk_cache[key])
            elif name == "pattern_count":
                out.append(count_embeddings(g, arg))
        except BudgetExceeded:
            out.append(None)
    return out


_WORKER_STATE: dict = {}


def _worker_init(config_json):
    config = ExperimentConfig.from_json(config_json)
    _WORKER_STATE["config"] = config
    _WORKER_STATE["parsed"] = [parse_property(p) for p in config.properties]


def _worker_cell(cell):
    n, t = cell
    return evaluate_trial(_WORKER_STATE["config"], _WORKER_STATE["parsed"], n, t)


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------

@dataclass
class Cell:
    n: int
    property: str
    successes: int
    trials: int
    excluded: int

    @property
    def used(self) -> int:
        return self.trials - self.excluded

    @property
    def failures(self) -> int:
        return self.used - self.successes

    @property
    def estimate(self) -> float:
        return self.successes / self.used if self.used else math.nan

    @property
    def interval(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.used)


@dataclass
class PatternStat:
    n: int
    property: str
    mean: float
    variance: float
    samples: int
    expected: Fraction


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    cells: list[Cell]
    patterns: list[PatternStat]
    wall_time: float = 0.0

    def cell(self, n: int, prop: str) -> Cell:
        for c in self.cells:
            if c.n == n and c.property == prop:
                return c
        raise KeyError((n, prop))

    def series(self, prop: str) -> list[Cell]:
        return [c for c in self.cells if c.property == prop]

    def to_json(self) -> dict:
        cells = []
        for c in self.cells:
            lo, hi = c.interval
            cells.append({"n": c.n, "property": c.property, "successes": c.successes,
                          "trials": c.trials, "excluded": c.excluded,
                          "estimate": _fmt(c.estimate), "ci_lo": _fmt(lo), "ci_hi": _fmt(hi)})
        pats = [{"n": p.n, "property": p.property, "mean": _fmt(p.mean),
                 "variance": _fmt(p.variance), "samples": p.samples,
                 "expected": str(p.expected), "expected_float": _fmt(float(p.expected))}
                for p in self.patterns]
        return {"config": self.config.to_json(), "cells": cells, "patterns": pats}


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("COXRAND_THREADS", "1")))
    except ValueError:
        return 1


def run(config: ExperimentConfig, threads: int | None = None) -> ExperimentResult:
    """Run every (n, trial) cell and aggregate in trial order."""
    threads = default_threads() if threads is None else max(1, threads)
    parsed = [parse_property(p) for p in config.properties]
    cells = [(n, t) for n in config.n_values for t in range(config.trials)]
    start = time.perf_counter()
    if threads == 1:
        rows = [evaluate_trial(config, parsed, n, t) for n, t in cells]
    else:
        chunk = max(1, len(cells) // (threads * 8))
        with ProcessPoolExecutor(threads, initializer=_worker_init,
                                 initargs=(json.dumps(config.to_json()),)) as pool:
            rows = list(pool.map(_worker_cell, cells, chunksize=chunk))
    wall = time.perf_counter() - start
    return aggregate(config, parsed, cells, rows, wall)


def aggregate(config, parsed, cells, rows, wall=0.0) -> ExperimentResult:
    out_cells, out_pats = [], []
    for n in config.n_values:
        idx = [i for i, (m, _) in enumerate(cells) if m == n]
        for j, (spec, (name, arg)) in enumerate(zip(config.properties, parsed)):
            vals = [rows[i][j] for i in idx]
            valid = [v for v in vals if v is not None]
            excluded = len(vals) - len(valid)
            if name == "pattern_count":
                succ = sum(1 for v in valid if v >= 1)
                k = len(valid)
                mean = math.fsum(valid) / k if k else math.nan
                var = math.fsum((v - mean) ** 2 for v in valid) / (k - 1) if k > 1 else math.nan
                out_pats.append(PatternStat(n, spec, mean, var, k,
                                            expected_count_exact(arg, config.schedule, n)))
            else:
                succ = sum(1 for v in valid if v)
            out_cells.append(Cell(n, spec, succ, len(vals), excluded))
    return ExperimentResult(config, out_cells, out_pats, wall)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

CSV_COLUMNS = ["n", "property", "estimate", "ci_lo", "ci_hi", "trials", "excluded"]


def _fmt(x: float) -> str:
    return "nan" if x != x else f"{x:.10g}"


def csv_text(result: ExperimentResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in result.cells:
        lo, hi = c.interval
        w.writerow([c.n, c.property, _fmt(c.estimate), _fmt(lo), _fmt(hi), c.trials, c.excluded])
    return buf.getvalue()


def emit_csv(result: ExperimentResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(result))


def svg_text(result: ExperimentResult) -> str:
    from .svgplot import line_chart

    series = [(prop, [(c.n, c.estimate, *c.interval) for c in result.series(prop)])
              for prop in result.config.properties]
    return line_chart(series, title=result.config.name, xlabel="n", ylabel="estimate")


def emit_svg(result: ExperimentResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg_text(result))


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _power(**curves) -> ProbabilitySchedule:
    return ProbabilitySchedule.power({int(k[1:]): v for k, v in curves.items()})


def _presets() -> dict:
    return {
        "fc-negative-triangle": dict(
            schedule=_power(p3=(8.0, -1.0)),
            n_values=[50, 100, 200, 400, 800], trials=500, properties=["fc_type"],
            description="p_3 = 8/n: 3-labelled triangles (affine ~A2 cliques) abound, so not FC"),
        "fc-positive": dict(
            schedule=_power(p2=(1.0, -1.1), p3=(1.0, -1.5), p4=(1.0, -1.5)),
            n_values=[100, 400, 1600], trials=500, properties=["fc_type"],
            description="n p_B -> 0, n p_2 bounded, n p_3 -> 0 (B class realised by label 4): FC a.a.s."),
        "hyp-negative-square": dict(
            schedule=_power(p2=(0.6, 0.0)),
            n_values=[10, 20, 40], trials=200, properties=["hyperbolic"],
            description="n^4 p_2^4 p_inf^2 -> inf: an empty square appears, not hyperbolic"),
        "hyp-negative-triangle": dict(
            schedule=_power(p3=(1.0, -0.5)),
            n_values=[25, 50, 100, 200], trials=200, properties=["hyperbolic"],
            description="n p_3 -> inf: a 3-labelled triangle appears, not hyperbolic"),
        "hyp-positive": dict(
            schedule=_power(p2=(1.0, -1.2), p3=(1.0, -1.2)),
            n_values=[50, 100, 200, 400, 800], trials=200, properties=["hyperbolic"],
            description="n p_3 -> 0, n p_2 -> 0, p_4 = p_6 = 0: hyperbolic a.a.s."),
        "nerve-dim": dict(
            schedule=_power(p2=(1.0, -0.6)),
            n_values=[50, 100, 200, 400], trials=200,
            properties=["nerve_dim_ge(3)", "nerve_dim_ge(4)"],
            description="p_2 = n^-0.6 lies between the 4- and 5-clique thresholds: nerve dimension 3"),
        "zk-homology": dict(
            schedule=_power(p2=(1.0, -0.75), p3=(3.0, -1.0)),
            n_values=[50, 100, 200, 400], trials=200,
            properties=["contains_zk(1)", "contains_zk_no_common_neighbor(1)", "betti_nonzero(1)"],
            description="n p_3 constant and n (1 - p_inf)^2 -> 0 (k = 1): nontrivial H_1 expected"),
        "zk-homology-ratio": dict(
            schedule=_power(p2=(1.0, -0.6), p3=(1.0, -0.6)),
            n_values=[50, 100, 200, 400], trials=200,
            properties=["contains_zk(1)", "contains_zk_no_common_neighbor(1)", "betti_nonzero(1)"],
            description="p_3 / p_2 bounded away from 0 and n (1 - p_inf)^2 -> 0 (k = 1)"),
    }


PRESET_NAMES = tuple(sorted(_presets()))


def preset(name: str, **overrides) -> ExperimentConfig:
    table = _presets()
    if name not in table:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    kwargs = dict(table[name])
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(name=name, **kwargs)
