import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Tuple, Union

import numpy as np

from jackvar.errors import NonFiniteResult, TooFewSamples, InvalidParams
from jackvar.statistics.empirical import leave_one_out_means, cdf_grid
from jackvar.statistics.models import EmpiricalSample
from jackvar.statistics.weights import WeightFunction, cell_integrals

ArrayLike = Union[float, np.ndarray]
RealFunction = Callable[[ArrayLike], ArrayLike]

log = logging.getLogger(__name__)


def _finite(value: ArrayLike, what: str) -> ArrayLike:
    if not np.all(np.isfinite(value)):
        raise NonFiniteResult(f"{what} is not finite")
    return value


def _scalar_or_array(value: np.ndarray) -> ArrayLike:
    if np.ndim(value) == 0:
        return float(value)
    return value


class Functional(ABC):
    """
    A statistical functional T, evaluated by plug-in on empirical samples.
    Implementations are immutable and pure.
    """
    name: str

    @property
    def holder_order(self) -> float:
        return 1.0

    @abstractmethod
    def evaluate(self, sample: EmpiricalSample) -> float:
        pass

    @abstractmethod
    def influence(self, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
        """Empirical influence function phi_{eps_n}(x)"""
        pass

    @abstractmethod
    def leave_one_out_values(self, sample: EmpiricalSample) -> np.ndarray:
        """T(eps_ni) for every deleted order statistic i = 1..n"""
        pass

    @abstractmethod
    def resample_values(self, sample: EmpiricalSample, indices: np.ndarray) -> np.ndarray:
        """T on each row of a (B, n) array of indices into the sorted sample"""
        pass

    @abstractmethod
    def influence_variance(self, sample: EmpiricalSample) -> float:
        """Closed form of E_{eps_n} phi_{eps_n}^2"""
        pass


@dataclass(frozen=True)
class SmoothFunctionOfMean(Functional):
    """T(m) = g(mean of m); g_prime must be the derivative of g, both accepting numpy arrays"""
    name: str
    g: RealFunction = field(repr=False, compare=False)
    g_prime: RealFunction = field(repr=False, compare=False)
    holder_order: float = 1.0
    holder_constant: Optional[float] = None
    kinks: Tuple[float, ...] = ()

    def evaluate(self, sample: EmpiricalSample) -> float:
        return eval_function_of_mean(self, sample)

    def influence(self, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
        return influence_function_of_mean(self, sample, x)

    def leave_one_out_values(self, sample: EmpiricalSample) -> np.ndarray:
        values = np.asarray(self.g(leave_one_out_means(sample)), dtype=float)
        return _finite(values, f"{self.name} on a leave-one-out sample")

    def resample_values(self, sample: EmpiricalSample, indices: np.ndarray) -> np.ndarray:
        means = np.mean(sample.values[indices], axis=1)
        return _finite(np.asarray(self.g(means), dtype=float), f"{self.name} on a bootstrap resample")

    def influence_variance(self, sample: EmpiricalSample) -> float:
        slope = float(self.g_prime(sample.mean))
        return float(_finite(slope ** 2 * sample.variance, f"Influence variance of {self.name}"))


@dataclass(frozen=True)
class TrimmedLStatistic(Functional):
    weight: WeightFunction

    @property
    def name(self) -> str:
        return self.weight.name

    @property
    def holder_order(self) -> float:
        return self.weight.holder_order

    def evaluate(self, sample: EmpiricalSample) -> float:
        return eval_l_statistic(self.weight, sample)

    def influence(self, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
        return influence_l_statistic(self.weight, sample, x)

    def leave_one_out_values(self, sample: EmpiricalSample) -> np.ndarray:
        n = sample.n
        if n < 2:
            raise TooFewSamples(n)
        x = sample.values
        reduced = l_weights(self.weight, n - 1)

        # Deleting x_(i) shifts every later order statistic one rank down
        left = np.concatenate(([0.0], np.cumsum(x[:-1] * reduced)))
        right = np.concatenate((np.cumsum((x[1:] * reduced)[::-1])[::-1], [0.0]))
        return left + right

    def resample_values(self, sample: EmpiricalSample, indices: np.ndarray) -> np.ndarray:
        ordered = sample.values[np.sort(indices, axis=1)]
        return ordered @ l_weights(self.weight, sample.n)

    def influence_variance(self, sample: EmpiricalSample) -> float:
        return l_ijack_double_sum(self.weight, sample)


@dataclass(frozen=True)
class ConstantFunctional(Functional):
    value: float = 0.0

    @property
    def name(self) -> str:
        return f"constant({self.value:g})"

    def evaluate(self, sample: EmpiricalSample) -> float:
        return float(self.value)

    def influence(self, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
        return _scalar_or_array(np.zeros_like(np.asarray(x, dtype=float)))

    def leave_one_out_values(self, sample: EmpiricalSample) -> np.ndarray:
        if sample.n < 2:
            raise TooFewSamples(sample.n)
        return np.full(sample.n, float(self.value))

    def resample_values(self, sample: EmpiricalSample, indices: np.ndarray) -> np.ndarray:
        return np.full(indices.shape[0], float(self.value))

    def influence_variance(self, sample: EmpiricalSample) -> float:
        return 0.0


FunctionalSpec = Functional


def eval_function_of_mean(spec: SmoothFunctionOfMean, sample: EmpiricalSample) -> float:
    return float(_finite(spec.g(sample.mean), f"{spec.name} at the sample mean"))


def influence_function_of_mean(spec: SmoothFunctionOfMean, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
    mean = sample.mean
    slope = float(_finite(spec.g_prime(mean), f"Derivative of {spec.name} at the sample mean"))
    return _scalar_or_array(_finite(slope * (np.asarray(x, dtype=float) - mean), f"Influence of {spec.name}"))


def l_weights(w: WeightFunction, n: int) -> np.ndarray:
    """Coefficients w_i = int_{(i-1)/n}^{i/n} l(s) ds of the order statistics"""
    return cell_integrals(w, n)


def eval_l_statistic(w: WeightFunction, sample: EmpiricalSample) -> float:
    return float(sample.values @ l_weights(w, sample.n))


def l_variant_weights(w: WeightFunction, sample: EmpiricalSample) -> np.ndarray:
    """
    Coefficients a_i = l(P_n(x_(i))) * (x_(i+1) - x_(i)), i = 1..n-1, of the variant functional
    int x l(P(x)) p(dx) integrated by parts. Zero gaps (ties) give zero coefficients.
    """
    if sample.n < 2:
        raise TooFewSamples(sample.n)
    x = sample.values
    levels = np.searchsorted(x, x[:-1], side="right") / sample.n
    return w(levels) * np.diff(x)


def influence_l_statistic(w: WeightFunction, sample: EmpiricalSample, x: ArrayLike) -> ArrayLike:
    """
    phi(x) = -sum_j (1{x <= x_(j)} - j/n) l(j/n) (x_(j+1) - x_(j)), evaluated with suffix sums.
    """
    n = sample.n
    if n < 2:
        raise TooFewSamples(n)
    a = l_variant_weights(w, sample)
    levels = cdf_grid(n)[:-1]
    suffix = np.concatenate((np.cumsum(a[::-1])[::-1], [0.0]))
    first_above = np.searchsorted(sample.values[:-1], np.asarray(x, dtype=float), side="left")
    return _scalar_or_array(float(levels @ a) - suffix[first_above])


def l_ijack_double_sum(w: WeightFunction, sample: EmpiricalSample) -> float:
    """
    Exact value of int int l(P_n(y)) [P_n(y ^ z) - P_n(y) P_n(z)] l(P_n(z)) dy dz on the step cdf, i.e.
    sum_{i,j} a_i a_j (min(i, j)/n - ij/n^2). For i <= j the kernel is p_i (1 - p_j), so the sum is
    accumulated from nonnegative suffix sums.
    """
    n = sample.n
    if n < 2:
        raise TooFewSamples(n)
    a = l_variant_weights(w, sample)
    p = cdf_grid(n)[:-1]
    b = a * (1.0 - p)
    later = np.concatenate((np.cumsum(b[::-1])[::-1][1:], [0.0]))
    return float(np.sum(a * p * (b + 2.0 * later)))


def validate_derivative(spec: SmoothFunctionOfMean, probes: Iterable[float], step: float = 1e-5,
                        tolerance: float = 1e-6) -> None:
    """
    Check g_prime against central differences of g, skipping probes within one step of a declared kink.
    :raises InvalidParams: naming the first probe that disagrees
    """
    for x in probes:
        if any(abs(x - k) <= step for k in spec.kinks):
            continue
        numeric = (float(spec.g(x + step)) - float(spec.g(x - step))) / (2.0 * step)
        declared = float(spec.g_prime(x))
        if abs(numeric - declared) > tolerance * max(1.0, abs(declared)):
            raise InvalidParams(f"g_prime of {spec.name} disagrees with g at {x}: {declared} vs {numeric}")
    log.debug(f"Derivative of {spec.name} validated")


def _identity(x: ArrayLike) -> ArrayLike:
    return np.asarray(x, dtype=float) * 1.0


def _one(x: ArrayLike) -> ArrayLike:
    return np.ones_like(np.asarray(x, dtype=float))


def _square(x: ArrayLike) -> ArrayLike:
    return np.asarray(x, dtype=float) ** 2


def _twice(x: ArrayLike) -> ArrayLike:
    return 2.0 * np.asarray(x, dtype=float)


def _signed_square_gap(x: ArrayLike) -> ArrayLike:
    # g(x) = x - sgn(x) x^2 with sgn(0) = 0
    x = np.asarray(x, dtype=float)
    return x - np.sign(x) * x ** 2


def _signed_square_gap_prime(x: ArrayLike) -> ArrayLike:
    return 1.0 - 2.0 * np.abs(np.asarray(x, dtype=float))


def identity() -> SmoothFunctionOfMean:
    return SmoothFunctionOfMean("identity", _identity, _one)


def square() -> SmoothFunctionOfMean:
    return SmoothFunctionOfMean("square", _square, _twice, 1.0, 2.0)


def paper_sgn() -> SmoothFunctionOfMean:
    """g' = 1 - 2|x| is Lipschitz, g'' does not exist at 0"""
    return SmoothFunctionOfMean("paper_sgn", _signed_square_gap, _signed_square_gap_prime, 1.0, 2.0, (0.0,))


def trimmed(w: WeightFunction) -> TrimmedLStatistic:
    return TrimmedLStatistic(w)
