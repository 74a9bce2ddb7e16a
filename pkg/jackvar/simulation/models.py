import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from jackvar.errors import InvalidParams
from jackvar.simulation.sampling import PopulationModel
from jackvar.statistics.functionals import Functional
from jackvar.statistics.models import EstimatorKind

# Asymptotic 1% critical value of the Kolmogorov-Smirnov statistic, scaled by sqrt(R)
KS_CRITICAL_CONSTANT = 1.63


class Summary(Enum):
    MEDIAN = "median"
    MEAN = "mean"
    Q90 = "q90"

    def apply(self, values: np.ndarray) -> float:
        if self == Summary.MEAN:
            return float(np.mean(values))
        if self == Summary.Q90:
            return float(np.quantile(values, 0.9))
        return float(np.median(values))


class Contrast(Enum):
    JACK_VS_IJACK = "jack_vs_ijack"
    JACK_VS_BOOT = "jack_vs_boot"

    @property
    def needs_bootstrap(self) -> bool:
        return self == Contrast.JACK_VS_BOOT


@dataclass(frozen=True)
class RateStudyConfig:
    spec: Functional
    model: PopulationModel
    n_grid: Tuple[int, ...]
    replicates: int = 200
    master_seed: int = 20011
    summary: Summary = Summary.MEDIAN
    contrast: Contrast = Contrast.JACK_VS_IJACK
    bootstrap_b: Optional[int] = 500

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        object.__setattr__(self, 'n_grid', grid)
        if not grid:
            raise InvalidParams("n_grid is empty")
        if grid[0] < 4:
            raise InvalidParams(f"Every sample size in n_grid must be at least 4, got {grid[0]}")
        if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
            raise InvalidParams(f"n_grid must be strictly increasing, got {list(grid)}")
        if self.replicates < 20:
            raise InvalidParams(f"Rate studies need at least 20 replicates, got {self.replicates}")
        if self.contrast.needs_bootstrap and (self.bootstrap_b is None or self.bootstrap_b < 2):
            raise InvalidParams(f"{self.contrast.value} needs bootstrap_b >= 2, got {self.bootstrap_b}")


@dataclass
class RateFit:
    """Least squares line through (log n, log summary) points"""
    points: List[Tuple[float, float]]
    slope: float
    intercept: float
    slope_stderr: float


@dataclass
class RateRow:
    n: int
    summary_abs_diff: float
    replicates_used: int
    excluded: int = 0


@dataclass
class RateStudyResult:
    config: RateStudyConfig
    contrast: Contrast
    rows: List[RateRow]
    fit: RateFit

    @property
    def excluded(self) -> int:
        return sum(row.excluded for row in self.rows)


@dataclass
class EstimatorNormality:
    estimator: EstimatorKind
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    ks_distance: float
    degenerate: bool = False


@dataclass
class NormalityReport:
    spec_name: str
    model_name: str
    n: int
    replicates: int
    estimators: List[EstimatorNormality] = field(default_factory=list)
    excluded: int = 0

    @property
    def ks_critical_value(self) -> float:
        return KS_CRITICAL_CONSTANT / math.sqrt(self.replicates)

    def get(self, kind: EstimatorKind) -> Optional[EstimatorNormality]:
        for item in self.estimators:
            if item.estimator == kind:
                return item
        return None


@dataclass
class ConsistencyRow:
    estimator: EstimatorKind
    mean_estimate: float
    median_relative_error: float


@dataclass
class ConsistencyReport:
    spec_name: str
    model_name: str
    n: int
    replicates: int
    truth: float
    rows: List[ConsistencyRow] = field(default_factory=list)
    excluded: int = 0

    def get(self, kind: EstimatorKind) -> Optional[ConsistencyRow]:
        for row in self.rows:
            if row.estimator == kind:
                return row
        return None
