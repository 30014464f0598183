"""Parameter sweeps, curve reduction, and derivative-free design search."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .config import Config, config_digest, get_preset, set_path
from .model import (
    STATUS_OK,
    STATUS_SUB_THRESHOLD,
    OperatingPoint,
    evaluate_operating_point,
)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# statuses whose operating point carries usable numbers
_EVALUATED = (STATUS_OK, STATUS_SUB_THRESHOLD)


class OptimizationError(Exception):
    """No stable operating point found in the search region."""


@dataclass(frozen=True)
class Axis:
    """One swept parameter: dotted path, inclusive range, grid resolution."""

    path: str
    lo: float
    hi: float
    count: int = 121
    spacing: str = "linear"

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.path}: need lo < hi")
        if self.count < 2:
            raise ValueError(f"axis {self.path}: need count >= 2")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"axis {self.path}: unknown spacing {self.spacing}")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError(f"axis {self.path}: log spacing needs lo > 0")

    def values(self) -> list[float]:
        n = self.count
        if self.spacing == "log":
            la, lb = math.log(self.lo), math.log(self.hi)
            return [math.exp(la + (lb - la) * i / (n - 1)) for i in range(n)]
        return [self.lo + (self.hi - self.lo) * i / (n - 1) for i in range(n)]


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: scenario preset, one or two axes, fixed overrides."""

    scenario: str
    axis1: Axis
    axis2: Axis | None = None
    overrides: tuple[tuple[str, float], ...] = ()

    def resolved_config(self) -> Config:
        cfg = get_preset(self.scenario)
        for path, value in self.overrides:
            set_path(cfg, path, value)
        return cfg


@dataclass
class SweepResult:
    """Evaluated grid.  Points are stored axis1-major: point (i, j) of a
    2-axis sweep sits at index i * len(axis2) + j."""

    spec: SweepSpec
    config: Config
    axis1_values: list[float]
    axis2_values: list[float] | None
    points: list[OperatingPoint]

    @property
    def digest(self) -> str:
        return config_digest(self.config)

    def point(self, i: int, j: int = 0) -> OperatingPoint:
        if self.axis2_values is None:
            return self.points[i]
        return self.points[i * len(self.axis2_values) + j]

    def statuses(self) -> list[str]:
        return [p.status for p in self.points]


@dataclass
class Curve:
    """Reduced 1-D result.  y entries are None where the slice had no
    stable point (gap)."""

    x_path: str
    quantity: str
    x: list[float]
    y: list[float | None]
    statuses: list[str] = field(default_factory=list)


def run_sweep(spec: SweepSpec, workers: int = 0,
              evaluate_fn=evaluate_operating_point) -> SweepResult:
    """Evaluate the model at every grid point.

    Output ordering is by grid index regardless of evaluation order;
    `workers > 0` evaluates points concurrently (the model is pure).
    """
    base = spec.resolved_config()
    a1 = spec.axis1.values()
    a2 = spec.axis2.values() if spec.axis2 is not None else None

    def cell(values):
        import copy
        cfg = copy.deepcopy(base)
        v1, v2 = values
        set_path(cfg, spec.axis1.path, v1)
        if v2 is not None:
            set_path(cfg, spec.axis2.path, v2)
        return evaluate_fn(cfg)

    cells = [(v1, v2) for v1 in a1 for v2 in (a2 or [None])]
    if workers > 0:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(cell, cells))
    else:
        points = [cell(c) for c in cells]
    return SweepResult(spec=spec, config=base, axis1_values=a1,
                       axis2_values=a2, points=points)


def reduce_max(result: SweepResult, quantity: str, over_axis: int) -> Curve:
    """Collapse a 2-axis sweep: for each value of the remaining axis, the
    maximum of `quantity` over the reduced axis among stable points.

    Slices with no stable point yield a None gap marker.
    """
    if result.axis2_values is None:
        raise ValueError("reduce_max needs a 2-axis sweep")
    if over_axis not in (1, 2):
        raise ValueError("over_axis must be 1 or 2")
    if over_axis == 2:
        keep_vals, keep_path = result.axis1_values, result.spec.axis1.path
        slices = [[result.point(i, j) for j in range(len(result.axis2_values))]
                  for i in range(len(result.axis1_values))]
    else:
        keep_vals, keep_path = result.axis2_values, result.spec.axis2.path
        slices = [[result.point(i, j) for i in range(len(result.axis1_values))]
                  for j in range(len(result.axis2_values))]
    ys: list[float | None] = []
    statuses = []
    for sl in slices:
        vals = [getattr(p, quantity) for p in sl
                if p.status in _EVALUATED and getattr(p, quantity) is not None]
        if vals:
            ys.append(max(vals))
            statuses.append(STATUS_OK)
        else:
            ys.append(None)
            statuses.append("gap")
    return Curve(x_path=keep_path, quantity=quantity, x=keep_vals, y=ys,
                 statuses=statuses)


def find_optimum(spec: SweepSpec, objective: str, sense: str = "max",
                 tol: float = 1e-6,
                 evaluate_fn=evaluate_operating_point) -> tuple[dict, float]:
    """Grid search over the axis, then golden-section refinement along the
    axis when the sweep is one-dimensional.

    Returns ({path: value, ...}, objective value).  Ties break toward the
    lower parameter value (the grid is scanned in increasing order and only
    strict improvements move the incumbent).
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    sign = 1.0 if sense == "max" else -1.0
    result = run_sweep(spec, evaluate_fn=evaluate_fn)

    def score(p: OperatingPoint) -> float:
        if p.status not in _EVALUATED or getattr(p, objective) is None:
            return -math.inf
        return sign * getattr(p, objective)

    best_idx, best = None, -math.inf
    for idx, p in enumerate(result.points):
        s = score(p)
        if s > best:
            best_idx, best = idx, s
    if best_idx is None or best == -math.inf:
        raise OptimizationError(
            f"no stable point for objective {objective!r} in sweep "
            f"{spec.scenario}/{spec.axis1.path}")

    a1 = result.axis1_values
    if spec.axis2 is not None:
        n2 = len(result.axis2_values)
        i, j = divmod(best_idx, n2)
        params = {spec.axis1.path: a1[i],
                  spec.axis2.path: result.axis2_values[j]}
        return params, sign * best

    base = spec.resolved_config()

    def f(x: float) -> float:
        import copy
        cfg = copy.deepcopy(base)
        set_path(cfg, spec.axis1.path, x)
        return score(evaluate_fn(cfg))

    lo = a1[max(best_idx - 1, 0)]
    hi = a1[min(best_idx + 1, len(a1) - 1)]
    x_opt, s_opt = _golden_section(f, lo, hi, tol)
    # keep the grid winner if refinement landed on a worse or unstable point
    if s_opt < best:
        x_opt, s_opt = a1[best_idx], best
    return {spec.axis1.path: x_opt}, sign * s_opt


def _golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Maximize a unimodal f on [a, b] to parameter tolerance tol."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)
