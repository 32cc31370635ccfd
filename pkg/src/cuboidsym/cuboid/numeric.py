"""Floating-point spot checks of factor equations on real cuboids.

Edges are drawn uniformly from ``[0.1, 10]`` with numpy's Philox generator (a
counter-based bit generator, so a seed gives the same stream on every
platform); diagonals follow from Pythagoras.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import UsageError
from ..poly import eval_float, eval_terms
from .catalog import FactorEquation, factor_catalog
from .system import DISPLAY_ORDER, cuboid_elementaries

LOW, HIGH = 0.1, 10.0
DEFAULT_TOLERANCE = 1e-9


def cuboid_point(x1: float, x2: float, x3: float) -> dict[str, float]:
    """Matrix entries, ``L`` and the nine E-values for the box with edges ``x``."""
    point = {
        "x1": x1,
        "x2": x2,
        "x3": x3,
        "d1": math.sqrt(x2 * x2 + x3 * x3),
        "d2": math.sqrt(x3 * x3 + x1 * x1),
        "d3": math.sqrt(x1 * x1 + x2 * x2),
        "L": math.sqrt(x1 * x1 + x2 * x2 + x3 * x3),
    }
    for e in cuboid_elementaries():
        point[e.e_variable] = eval_float(e.polynomial, point)
    return point


def relative_residual(f: FactorEquation, point: dict[str, float]) -> float:
    terms = eval_terms(f.lhs, point, DISPLAY_ORDER)
    return abs(math.fsum(terms)) / (1.0 + math.fsum(abs(t) for t in terms))


def sample_edges(sample_count: int, seed: int) -> np.ndarray:
    if sample_count < 1:
        raise UsageError("sample_count must be at least 1")
    rng = np.random.Generator(np.random.Philox(seed))
    return rng.uniform(LOW, HIGH, size=(sample_count, 3))


@dataclass
class NumericReport:
    seed: int
    samples: int
    max_residual: dict[str, float] = field(default_factory=dict)
    worst_sample: dict[str, int] = field(default_factory=dict)

    def passes(self, tolerance: float = DEFAULT_TOLERANCE) -> dict[str, bool]:
        return {k: v < tolerance for k, v in self.max_residual.items()}

    def all_pass(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return all(self.passes(tolerance).values())


def numeric_residual(
    sample_count: int,
    seed: int,
    equations: Sequence[FactorEquation] | None = None,
) -> NumericReport:
    """Largest ``|lhs| / (1 + sum |term|)`` per equation over random real cuboids."""
    equations = list(equations) if equations is not None else factor_catalog()
    edges = sample_edges(sample_count, seed)
    report = NumericReport(seed, sample_count)
    for f in equations:
        report.max_residual[f.id] = 0.0
        report.worst_sample[f.id] = 0
    for k, (x1, x2, x3) in enumerate(edges):
        point = cuboid_point(float(x1), float(x2), float(x3))
        for f in equations:
            r = relative_residual(f, point)
            if r > report.max_residual[f.id]:
                report.max_residual[f.id] = r
                report.worst_sample[f.id] = k
    return report
