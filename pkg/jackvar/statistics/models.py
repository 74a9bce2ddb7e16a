from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class EmpiricalSample:
    """
    Sorted observations of a sample, each carrying mass 1/n.
    Use :func:`jackvar.statistics.empirical.from_samples` to construct a validated instance.
    """
    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def variance(self) -> float:
        """Plug-in second central moment (divisor n)"""
        return float(np.mean((self.values - self.mean) ** 2))

    def is_constant(self) -> bool:
        return bool(self.values[0] == self.values[-1])

    def order_statistic(self, i: int) -> float:
        return float(self.values[i - 1])


@dataclass(frozen=True, eq=False)
class LeaveOneOutSample:
    parent: EmpiricalSample
    omitted_index: int

    @property
    def n(self) -> int:
        return self.parent.n - 1

    @property
    def values(self) -> np.ndarray:
        return np.delete(self.parent.values, self.omitted_index - 1)

    @property
    def omitted_value(self) -> float:
        return float(self.parent.values[self.omitted_index - 1])

    @property
    def mean(self) -> float:
        n = self.parent.n
        return (n * self.parent.mean - self.omitted_value) / (n - 1)

    def cdf(self, t: float) -> float:
        count = np.searchsorted(self.parent.values, t, side="right")
        if self.omitted_value <= t:
            count -= 1
        return float(count) / self.n


@dataclass(frozen=True, eq=False)
class PseudovalueSet:
    values: np.ndarray
    base_estimate: float

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))


class EstimatorKind(Enum):
    JACKKNIFE = "jackknife"
    INFINITESIMAL_JACKKNIFE = "infinitesimal_jackknife"
    BOOTSTRAP = "bootstrap"


@dataclass(frozen=True)
class BootstrapInfo:
    b: Optional[int]
    seed: Optional[int]
    exact: bool = False


@dataclass(frozen=True)
class VarianceEstimate:
    value: float
    kind: EstimatorKind
    n: int
    bootstrap: Optional[BootstrapInfo] = None

    @property
    def standard_error(self) -> float:
        """Standard error of T_n implied by the estimate of Var(sqrt(n) T_n)"""
        return float(np.sqrt(self.value / self.n))


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    delta: np.ndarray
    term1: float
    term2: float
    term3: float
    term4: float

    @property
    def reconstructed(self) -> float:
        return self.term1 + self.term2 + self.term3 + self.term4


@dataclass
class Estimates:
    statistic: float
    n: int
    jackknife: VarianceEstimate
    infinitesimal_jackknife: VarianceEstimate
    bootstrap: Optional[VarianceEstimate] = None
