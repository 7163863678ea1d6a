"""Strict scenario configuration: parsing, validation, normalization.

One JSON object drives every run.  Unknown fields are a hard error so a
misspelled weight name cannot silently change preference semantics, and
every violation is reported with its field path so the CLI and the
service can surface machine-readable lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .ces import CesParams, EconomicProblem, Prices
from .pareto import DEFAULT_GRID_CAP, GridSpec, SweepSpec
from .quanta import PreferencePair

__all__ = [
    "ConfigError",
    "Violation",
    "OutputSpec",
    "ScenarioConfig",
    "parse_scenario",
    "load_config",
    "normalized_dict",
]


@dataclass(frozen=True)
class Violation:
    field: str
    message: str

    def to_dict(self) -> dict:
        return {"field": self.field, "message": self.message}


class ConfigError(ValueError):
    """A configuration failed structural or invariant validation."""

    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(f"{v.field}: {v.message}" for v in violations))
        self.violations = violations


@dataclass(frozen=True)
class OutputSpec:
    dir: str = "out"
    format: str = "csv"


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one run needs; mirrors the config file one-to-one."""

    problem: EconomicProblem
    pair: PreferencePair
    grid: GridSpec
    sweep: SweepSpec
    output: OutputSpec


class _Reader:
    """Walks one section of the config dict, collecting violations."""

    def __init__(self, section: str, data: dict, violations: list[Violation]):
        self.section = section
        self.data = data
        self.violations = violations
        self.seen: set[str] = set()

    def fail(self, name: str, message: str) -> None:
        self.violations.append(Violation(field=f"{self.section}.{name}", message=message))

    def number(self, name: str, *, required: bool = True) -> float | None:
        self.seen.add(name)
        if name not in self.data:
            if required:
                self.fail(name, "missing required field")
            return None
        value = self.data[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(name, f"must be a number, got {type(value).__name__}")
            return None
        value = float(value)
        if value != value or value in (float("inf"), float("-inf")):
            self.fail(name, "must be finite")
            return None
        return value

    def integer(self, name: str) -> int | None:
        self.seen.add(name)
        if name not in self.data:
            self.fail(name, "missing required field")
            return None
        value = self.data[name]
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(name, f"must be an integer, got {type(value).__name__}")
            return None
        return value

    def string(self, name: str, allowed: tuple[str, ...] | None = None) -> str | None:
        self.seen.add(name)
        if name not in self.data:
            self.fail(name, "missing required field")
            return None
        value = self.data[name]
        if not isinstance(value, str):
            self.fail(name, f"must be a string, got {type(value).__name__}")
            return None
        if allowed is not None and value not in allowed:
            self.fail(name, f"must be one of {list(allowed)}, got {value!r}")
            return None
        return value

    def reject_unknown(self) -> None:
        for key in self.data:
            if key not in self.seen:
                self.fail(key, "unknown field")


def _section(
    root: dict, name: str, violations: list[Violation], *, required: bool = True
) -> dict | None:
    if name not in root:
        if required:
            violations.append(Violation(field=name, message="missing required section"))
        return None
    value = root[name]
    if not isinstance(value, dict):
        violations.append(Violation(field=name, message="must be an object"))
        return None
    return value


def parse_scenario(data, *, with_output: bool = True) -> ScenarioConfig:
    """Validate a raw config object and build the scenario.

    ``with_output`` controls whether the output section is allowed (the
    service request format omits it).  Raises :class:`ConfigError` with
    the full violation list on any failure.
    """
    violations: list[Violation] = []
    if not isinstance(data, dict):
        raise ConfigError([Violation(field="", message="config root must be an object")])

    known_sections = {"ces", "prices", "quantum1", "quantum2", "grid", "sweep"}
    if with_output:
        known_sections.add("output")
    for key in data:
        if key not in known_sections:
            violations.append(Violation(field=key, message="unknown field"))

    params = prices = None
    ces_data = _section(data, "ces", violations)
    if ces_data is not None:
        r = _Reader("ces", ces_data, violations)
        F, a, rr = r.number("F"), r.number("a"), r.number("r")
        r.reject_unknown()
        if F is not None and not F > 0.0:
            r.fail("F", "must be strictly positive")
        if a is not None and not 0.0 < a < 1.0:
            r.fail("a", "must lie strictly between 0 and 1")
        if rr is not None and not rr > -1.0:
            r.fail("r", "must be greater than -1")
        if rr == 0.0:
            r.fail("r", "must be nonzero; the reduction pipeline evaluates the CES form directly")
        if F is not None and a is not None and rr is not None:
            params = CesParams(F=F, a=a, r=rr)

    prices_data = _section(data, "prices", violations)
    if prices_data is not None:
        r = _Reader("prices", prices_data, violations)
        pk, pl, pq = r.number("pK"), r.number("pL"), r.number("pQ")
        r.reject_unknown()
        for name, value in (("pK", pk), ("pL", pl), ("pQ", pq)):
            if value is not None and not value > 0.0:
                r.fail(name, "must be strictly positive")
        if pk is not None and pl is not None and pq is not None:
            prices = Prices(pK=pk, pL=pl, pQ=pq)

    def read_quantum(section: str) -> tuple[tuple[float, float, float] | None, float | None]:
        qdata = _section(data, section, violations)
        if qdata is None:
            return None, None
        r = _Reader(section, qdata, violations)
        w1, w2, w3 = r.number("w1"), r.number("w2"), r.number("w3")
        mu = r.number("mu", required=False)
        r.reject_unknown()
        for name, value in (("w1", w1), ("w2", w2), ("w3", w3)):
            if value is not None and not value > 0.0:
                r.fail(name, "must be strictly positive")
        if mu is not None and not 0.0 <= mu <= 1.0:
            r.fail("mu", "must lie in [0, 1]")
        if w1 is None or w2 is None or w3 is None:
            return None, mu
        if any(not w > 0.0 for w in (w1, w2, w3)):
            return None, mu
        return (w1, w2, w3), mu

    weights1, mu1 = read_quantum("quantum1")
    weights2, mu2 = read_quantum("quantum2")

    grid = None
    grid_data = _section(data, "grid", violations)
    if grid_data is not None:
        r = _Reader("grid", grid_data, violations)
        k_min, k_max = r.number("kMin"), r.number("kMax")
        l_min, l_max = r.number("lMin"), r.number("lMax")
        n_k, n_l = r.integer("nK"), r.integer("nL")
        scale = r.string("scale", allowed=("linear", "log"))
        r.reject_unknown()
        if None not in (k_min, k_max, l_min, l_max, n_k, n_l, scale):
            try:
                grid = GridSpec(
                    k_min=k_min, k_max=k_max, l_min=l_min, l_max=l_max,
                    n_k=n_k, n_l=n_l, scale=scale, cap=DEFAULT_GRID_CAP,
                )
            except ValueError as exc:
                violations.append(Violation(field="grid", message=str(exc)))

    sweep = None
    sweep_data = _section(data, "sweep", violations)
    if sweep_data is not None:
        r = _Reader("sweep", sweep_data, violations)
        samples, seed = r.integer("samples"), r.integer("seed")
        r.reject_unknown()
        if samples is not None and samples < 10:
            r.fail("samples", "must be at least 10")
        if seed is not None and not 0 <= seed < 2**64:
            r.fail("seed", "must fit an unsigned 64-bit integer")
        if samples is not None and seed is not None and samples >= 10 and 0 <= seed < 2**64:
            sweep = SweepSpec(samples=samples, seed=seed)

    output = OutputSpec()
    if with_output:
        out_data = _section(data, "output", violations, required=False)
        if out_data is not None:
            r = _Reader("output", out_data, violations)
            out_dir = r.string("dir")
            fmt = r.string("format", allowed=("csv", "jsonl"))
            r.reject_unknown()
            if out_dir is not None and fmt is not None:
                output = OutputSpec(dir=out_dir, format=fmt)

    if violations:
        raise ConfigError(violations)

    pair = PreferencePair.from_weights(weights1, weights2, mu1=mu1, mu2=mu2)
    return ScenarioConfig(
        problem=EconomicProblem(params=params, prices=prices),
        pair=pair,
        grid=grid,
        sweep=sweep,
        output=output,
    )


def parse_evaluate_request(data) -> tuple[EconomicProblem, PreferencePair, float, float]:
    """Validate a problem-plus-bundle request: the ces, prices and quantum
    sections of the config alongside scalar fields ``k`` and ``l``."""
    violations: list[Violation] = []
    if not isinstance(data, dict):
        raise ConfigError([Violation(field="", message="request root must be an object")])
    scenario_part = {
        key: value
        for key, value in data.items()
        if key in ("ces", "prices", "quantum1", "quantum2")
    }
    extra = {key: value for key, value in data.items() if key not in scenario_part}
    bundle: dict[str, float] = {}
    for name in ("k", "l"):
        if name not in extra:
            violations.append(Violation(field=name, message="missing required field"))
            continue
        value = extra.pop(name)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            violations.append(Violation(field=name, message="must be a number"))
        elif not value > 0.0:
            violations.append(Violation(field=name, message="must be strictly positive"))
        else:
            bundle[name] = float(value)
    for key in extra:
        violations.append(Violation(field=key, message="unknown field"))
    # reuse the scenario machinery with a placeholder grid and sweep
    scenario_part["grid"] = {
        "kMin": 0.1, "kMax": 10.0, "lMin": 0.1, "lMax": 10.0,
        "nK": 2, "nL": 2, "scale": "log",
    }
    scenario_part["sweep"] = {"samples": 10, "seed": 0}
    try:
        config = parse_scenario(scenario_part, with_output=False)
    except ConfigError as exc:
        violations.extend(exc.violations)
        raise ConfigError(violations) from exc
    if violations:
        raise ConfigError(violations)
    return config.problem, config.pair, bundle["k"], bundle["l"]


def load_config(path: str | Path, *, with_output: bool = True) -> ScenarioConfig:
    """Read and parse a config file; JSON errors become violations."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([Violation(field="", message=f"invalid JSON: {exc}")]) from exc
    return parse_scenario(data, with_output=with_output)


def normalized_dict(config: ScenarioConfig) -> dict:
    """Canonical dict form of a scenario; reparsing it reproduces the config."""
    pair = config.pair
    quantum1: dict = {
        "w1": pair.weights1[0], "w2": pair.weights1[1], "w3": pair.weights1[2],
    }
    if pair.p1.confidence is not None:
        quantum1["mu"] = pair.p1.confidence
    quantum2: dict = {
        "w1": pair.weights2[0], "w2": pair.weights2[1], "w3": pair.weights2[2],
    }
    if pair.p2.confidence is not None:
        quantum2["mu"] = pair.p2.confidence
    return {
        "ces": {
            "F": config.problem.params.F,
            "a": config.problem.params.a,
            "r": config.problem.params.r,
        },
        "prices": {
            "pK": config.problem.prices.pK,
            "pL": config.problem.prices.pL,
            "pQ": config.problem.prices.pQ,
        },
        "quantum1": quantum1,
        "quantum2": quantum2,
        "grid": {
            "kMin": config.grid.k_min,
            "kMax": config.grid.k_max,
            "lMin": config.grid.l_min,
            "lMax": config.grid.l_max,
            "nK": config.grid.n_k,
            "nL": config.grid.n_l,
            "scale": config.grid.scale,
        },
        "sweep": {"samples": config.sweep.samples, "seed": config.sweep.seed},
        "output": {"dir": config.output.dir, "format": config.output.format},
    }
