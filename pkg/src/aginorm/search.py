"""Seeded verification campaigns and hill-climbing gap search over the catalog.

Trial ``i`` of a campaign draws its instance from ``default_rng(seed ^ i)``,
where ``i`` runs over all dimensions in order, so records do not depend on
thread scheduling.  Checker errors never abort a campaign; they become
skipped records carrying the exception text.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .calculus import ExponentQuad, FunctionPair, ScalarFunction
from .catalog import Evaluation, InequalityCase, SamplingSettings, Variant, parse_id
from .errors import AginormError, InvalidParam, IoFailure
from .linalg import MAX_DIM, make_rng, sample_ginibre, trial_seed
from .norms import HS, OP, NormSpec, battery

SKIP_LIMIT = 0.10
CSV_COLUMNS = ("trial", "dim", "p", "exponents", "lhs", "rhs", "relative_gap", "satisfied",
               "skipped_reason")
# Open p-domains are clipped this far inside during search jitter.
OPEN_MARGIN = 1e-6


class Mode(str, Enum):
    TIGHTEN = "tighten"
    VIOLATE = "violate"


@dataclass(frozen=True)
class CampaignConfig:
    """Everything that determines a campaign or a search run.

    ``norm`` is ``None`` (checker default), ``"all"`` (the full battery for
    each dimension) or a norm string such as ``"kyfan:2"``.  Hilbert-Schmidt
    checkers always use ``hs``.  ``fixed_m`` / ``fixed_s`` pin one free
    exponent of the sampled quad.
    """

    ineq: str
    dims: tuple[int, int] = (2, 4)
    trials: int = 100
    seed: int = 0
    p_range: tuple[float, float] | None = None
    exponent_range: tuple[float, float] | None = None
    min_eig: float = 0.1
    scale: float | None = None
    norm: str | None = None
    fixed_m: float | None = None
    fixed_s: float | None = None
    workers: int = 1
    restart_every: int = 200
    step_initial: float = 0.5
    step_decay: float = 0.9

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        for name in ("p_range", "exponent_range"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(float(v) for v in value))
        case, _ = parse_id(self.ineq)
        lo, hi = self.dims
        if not 1 <= lo <= hi <= MAX_DIM:
            raise InvalidParam(f"dimension range {lo}..{hi} must lie within 1..{MAX_DIM}")
        if self.trials < 1:
            raise InvalidParam("trials must be >= 1")
        if self.workers < 1 or self.restart_every < 1:
            raise InvalidParam("workers and restart_every must be >= 1")
        if not (0 < self.step_initial and 0 < self.step_decay < 1):
            raise InvalidParam("step_initial must be positive and step_decay in (0, 1)")
        if self.p_range is not None:
            if case.p_domain is None:
                raise InvalidParam(f"{case.id} takes no p")
            case.p_interval(self.settings)
        if self.exponent_range is not None and self.exponent_range[0] > self.exponent_range[1]:
            raise InvalidParam(f"empty exponent range {self.exponent_range}")
        if (self.fixed_m is not None or self.fixed_s is not None) and not case.quad_targets:
            raise InvalidParam(f"{case.id} has no exponent quad to pin")
        for n in range(lo, hi + 1):
            self.norms_for(n)

    @property
    def case(self) -> InequalityCase:
        return parse_id(self.ineq)[0]

    @property
    def variant(self) -> Variant:
        return parse_id(self.ineq)[1]

    @property
    def settings(self) -> SamplingSettings:
        return SamplingSettings(self.p_range, self.exponent_range, self.min_eig, self.scale)

    def norms_for(self, n: int) -> tuple[NormSpec, ...]:
        case = self.case
        text = None if self.norm is None else self.norm.strip().lower()
        if case.hs_only:
            return (HS,)
        if case.op_only:
            if text not in (None, "all", "op"):
                raise InvalidParam(f"{case.id} is an operator-norm inequality")
            return (OP,)
        if text is None:
            return (OP,)
        if text == "all":
            return tuple(battery(n))
        spec = NormSpec.parse(text)
        spec.check_dim(n)
        return (spec,)

    def dimension_of(self, index: int) -> int:
        return self.dims[0] + index // self.trials

    @property
    def total_trials(self) -> int:
        return (self.dims[1] - self.dims[0] + 1) * self.trials

    def to_dict(self) -> dict:
        out = asdict(self)
        for key, value in out.items():
            if isinstance(value, tuple):
                out[key] = list(value)
        return out


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    dim: int
    p: float | None
    exponents: str
    norm: str
    lhs: float | None
    rhs: float | None
    relative_gap: float | None
    satisfied: bool | None
    skipped_reason: str = ""

    @property
    def skipped(self) -> bool:
        return bool(self.skipped_reason)

    def csv_row(self) -> list:
        row = asdict(self)
        return ["" if row[c] is None else row[c] for c in CSV_COLUMNS]


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list[TrialRecord]
    argmin_instance: dict | None = field(default=None, repr=False)

    @property
    def violations(self) -> int:
        return sum(1 for r in self.records if r.satisfied is False)

    @property
    def skips(self) -> int:
        return sum(1 for r in self.records if r.skipped)

    @property
    def summary(self) -> dict:
        return summarize(self.records, self.argmin_instance)

    def to_dict(self) -> dict:
        return {"config": self.config.to_dict(), "summary": self.summary,
                "records": [asdict(r) for r in self.records]}


def summarize(records: list[TrialRecord], argmin_instance: dict | None = None) -> dict:
    """Summary block of a report; every field except the instance comes from ``records``."""
    done = [r for r in records if not r.skipped]
    gaps = [r.relative_gap for r in done]
    skips = len(records) - len(done)
    argmin = None
    if done:
        best = min(done, key=lambda r: (r.relative_gap, r.trial))
        argmin = {"trial": best.trial, "seed": best.seed, "dim": best.dim, "norm": best.norm,
                  "relative_gap": best.relative_gap, "instance": argmin_instance}
    return {
        "trials": len(records),
        "violations": sum(1 for r in done if not r.satisfied),
        "skips": skips,
        "min_relative_gap": min(gaps) if gaps else None,
        "median_relative_gap": statistics.median(gaps) if gaps else None,
        "argmin": argmin,
        "valid": bool(records) and skips <= SKIP_LIMIT * len(records),
    }


# ---------------------------------------------------------------- instances

def _matrix_to_json(m: np.ndarray) -> dict:
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def serialize_instance(inst: dict) -> dict:
    out = {}
    for key, value in inst.items():
        if isinstance(value, np.ndarray):
            out[key] = _matrix_to_json(value)
        elif isinstance(value, ExponentQuad):
            out[key] = {"m": value.m, "n": value.n, "s": value.s, "t": value.t, "target": value.target}
        elif isinstance(value, FunctionPair):
            out[key] = {"first": [value.first.kind, value.first.param],
                        "second": [value.second.kind, value.second.param],
                        "product_power": value.product_power}
        else:
            out[key] = float(value)
    return out


def deserialize_instance(data: dict) -> dict:
    out = {}
    for key, value in data.items():
        if key in ("A", "B", "X"):
            out[key] = np.asarray(value["re"], dtype=float) + 1j * np.asarray(value["im"], dtype=float)
        elif key == "quad":
            out[key] = ExponentQuad(value["m"], value["n"], value["s"], value["t"], value["target"])
        elif key in ("fpair", "gpair"):
            out[key] = FunctionPair(ScalarFunction(*value["first"]), ScalarFunction(*value["second"]),
                                    value["product_power"])
        else:
            out[key] = float(value)
    return out


def _exponent_text(inst: dict) -> str:
    if "quad" in inst:
        return ",".join(repr(x) for x in inst["quad"].as_list())
    pairs = [str(inst[k]) for k in ("fpair", "gpair") if k in inst]
    return ";".join(pairs)


def _pin(config: CampaignConfig, inst: dict) -> dict:
    quad = inst.get("quad")
    if quad is not None and (config.fixed_m is not None or config.fixed_s is not None):
        m = quad.m if config.fixed_m is None else config.fixed_m
        s = quad.s if config.fixed_s is None else config.fixed_s
        inst["quad"] = ExponentQuad.from_free(m, s, quad.target)
    return inst


def draw_instance(config: CampaignConfig, rng: np.random.Generator, n: int) -> dict:
    return _pin(config, config.case.sample(rng, n, config.settings, config.norms_for(n)))


def evaluate_instance(config: CampaignConfig, inst: dict, n: int) -> tuple[Evaluation, NormSpec]:
    """Worst evaluation (smallest relative gap) over the configured norms."""
    results = [(config.case.run(inst, spec, config.variant), spec) for spec in config.norms_for(n)]
    return min(results, key=lambda item: (item[0].satisfied, item[0].relative_gap))


# ---------------------------------------------------------------- campaigns

def run_trial(config: CampaignConfig, index: int) -> TrialRecord:
    seed = trial_seed(config.seed, index)
    n = config.dimension_of(index)
    p, exponents = None, ""
    try:
        inst = draw_instance(config, make_rng(seed), n)
        p, exponents = inst.get("p"), _exponent_text(inst)
        ev, spec = evaluate_instance(config, inst, n)
    except AginormError as exc:
        reason = f"{type(exc).__name__}: {exc}"
        return TrialRecord(index, seed, n, p, exponents, "", None, None, None, None, reason)
    return TrialRecord(index, seed, n, p, exponents, str(spec), ev.lhs, ev.rhs,
                       ev.relative_gap, ev.satisfied)


def run_campaign(config: CampaignConfig) -> CampaignReport:
    indices = range(config.total_trials)
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            records = list(pool.map(lambda i: run_trial(config, i), indices))
    else:
        records = [run_trial(config, i) for i in indices]
    records.sort(key=lambda r: r.trial)
    report = CampaignReport(config, records)
    argmin = report.summary["argmin"]
    if argmin is not None:
        # Re-drawing from the trial seed reproduces the instance exactly.
        inst = draw_instance(config, make_rng(argmin["seed"]), argmin["dim"])
        report.argmin_instance = serialize_instance(inst)
    return report


# ---------------------------------------------------------------- search

@dataclass
class SearchResult:
    mode: Mode
    config: CampaignConfig
    objective: float | None
    instance: dict | None
    dim: int | None
    evaluation: Evaluation | None
    norm: str = ""
    iterations: int = 0
    restarts: int = 0
    skips: int = 0

    def to_dict(self) -> dict:
        ev = None if self.evaluation is None else {
            "lhs": self.evaluation.lhs, "rhs": self.evaluation.rhs,
            "relative_gap": self.evaluation.relative_gap, "satisfied": self.evaluation.satisfied}
        return {
            "config": self.config.to_dict(),
            "mode": self.mode.value,
            "objective": self.objective,
            "dim": self.dim,
            "norm": self.norm,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "skips": self.skips,
            "evaluation": ev,
            "instance": None if self.instance is None else serialize_instance(self.instance),
        }


def objective(mode: Mode, ev: Evaluation) -> float:
    """TIGHTEN minimises the relative gap; VIOLATE maximises ``lhs - rhs``."""
    return ev.relative_gap if Mode(mode) is Mode.TIGHTEN else ev.lhs - ev.rhs


def _better(mode: Mode, a: float, b: float | None) -> bool:
    if b is None:
        return True
    return a < b if mode is Mode.TIGHTEN else a > b


def _project_psd(m: np.ndarray, min_eig: float) -> np.ndarray:
    h = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(h)
    return (v * np.maximum(w, min_eig)) @ v.conj().T


def _jitter_function(f: ScalarFunction, rng, step: float) -> ScalarFunction:
    if f.kind == "clip":
        return ScalarFunction.clip(f.param * math.exp(step * rng.normal()))
    if f.kind == "clipc":
        return ScalarFunction.clip_complement(f.param * math.exp(step * rng.normal()))
    return f


def _jitter_pair(pair: FunctionPair, rng, step: float, lo: float, hi: float) -> FunctionPair:
    if pair.is_power:
        t = pair.product_power
        a = float(np.clip(pair.first.param + step * (hi - lo) * t * rng.normal(), lo * t, hi * t))
        return FunctionPair.powers(a, t - a, t)
    if pair.first.kind == "clip" and pair.second.kind == "clipc":
        c = pair.first.param * math.exp(step * rng.normal())
        return FunctionPair.clip_split(c)
    return FunctionPair(_jitter_function(pair.first, rng, step),
                        _jitter_function(pair.second, rng, step), pair.product_power)


def perturb(config: CampaignConfig, inst: dict, rng: np.random.Generator, step: float) -> dict:
    """Gaussian step on every matrix (size ``step * ||M||_HS``) plus parameter jitter."""
    case = config.case
    out = dict(inst)
    for key in ("A", "B", "X"):
        if key in inst:
            m = inst[key]
            n = m.shape[0]
            size = step * float(np.linalg.norm(m))
            moved = m + size * sample_ginibre(rng, n, 1.0 / n)
            if case.psd_inputs and key in ("A", "B"):
                moved = _project_psd(moved, config.min_eig)
            out[key] = moved
    if "p" in inst:
        lo, hi = case.p_interval(config.settings)
        if case.p_domain == "open":
            lo, hi = max(lo, OPEN_MARGIN), min(hi, 1.0 - OPEN_MARGIN)
        out["p"] = float(np.clip(inst["p"] + 0.5 * step * rng.normal(), lo, hi))
    lo, hi = config.exponent_range or case.exponent_range
    if "quad" in inst:
        quad = inst["quad"]
        t = quad.target
        m, s = quad.m, quad.s
        if config.fixed_m is None:
            m = float(np.clip(m + step * (hi - lo) * t * rng.normal(), lo * t, hi * t))
        if config.fixed_s is None:
            s = float(np.clip(s + step * (hi - lo) * t * rng.normal(), lo * t, hi * t))
        out["quad"] = ExponentQuad.from_free(m, s, t)
    for key in ("fpair", "gpair"):
        if key in inst:
            out[key] = _jitter_pair(inst[key], rng, step, lo, hi)
    return out


def search_gap(config: CampaignConfig, mode: Mode | str, budget: int) -> SearchResult:
    """Random-restart hill climbing on the gap of one checker.

    The incumbent moves only when the objective strictly improves; the step
    factor starts at ``step_initial`` and shrinks by ``step_decay`` after
    each rejected move.  Every ``restart_every`` evaluations the climb
    restarts from a fresh sample, with the best instance overall retained.
    """
    mode = Mode(mode)
    if budget < 1:
        raise InvalidParam("budget must be >= 1")
    rng = make_rng(config.seed)
    lo, hi = config.dims
    result = SearchResult(mode, config, None, None, None, None)
    incumbent = inc_value = None
    n = lo
    step = config.step_initial
    for it in range(budget):
        if it % config.restart_every == 0:
            n = int(rng.integers(lo, hi + 1))
            candidate = draw_instance(config, rng, n)
            incumbent = inc_value = None
            step = config.step_initial
            result.restarts += 1
        elif incumbent is None:
            candidate = draw_instance(config, rng, n)
        else:
            candidate = perturb(config, incumbent, rng, step)
        result.iterations += 1
        try:
            ev, spec = evaluate_instance(config, candidate, n)
        except AginormError:
            result.skips += 1
            step *= config.step_decay
            continue
        value = objective(mode, ev)
        if _better(mode, value, inc_value):
            incumbent, inc_value = candidate, value
        else:
            step *= config.step_decay
        if _better(mode, value, result.objective):
            result.objective, result.instance, result.dim = value, candidate, n
            result.evaluation, result.norm = ev, str(spec)
    return result


# ---------------------------------------------------------------- reports

def report_json(report: CampaignReport | SearchResult) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def report_csv(report: CampaignReport | SearchResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    if isinstance(report, CampaignReport):
        for record in report.records:
            writer.writerow(record.csv_row())
    elif report.evaluation is not None:
        inst = report.instance
        ev = report.evaluation
        writer.writerow([0, report.dim, inst.get("p", ""), _exponent_text(inst), ev.lhs, ev.rhs,
                         ev.relative_gap, ev.satisfied, ""])
    return buf.getvalue()


def emit_report(report: CampaignReport | SearchResult, fmt: str, path) -> None:
    """Write ``report`` as ``json`` or ``csv``; any OS error becomes :class:`IoFailure`."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise InvalidParam(f"unknown report format {fmt!r}")
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write report to {path}: {exc}") from exc


def load_report(path, fmt: str | None = None):
    """Parse a report back: a dict for JSON, a list of row dicts for CSV."""
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read report {path}: {exc}") from exc
    if fmt == "json":
        return json.loads(text)
    if fmt == "csv":
        return list(csv.DictReader(io.StringIO(text)))
    raise InvalidParam(f"unknown report format {fmt!r}")

