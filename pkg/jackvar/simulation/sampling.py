import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
import scipy.stats
from scipy import integrate

from jackvar.errors import InvalidParams, InsufficientMoments
from jackvar.metrics import QUADRATURE_TIME
from jackvar.statistics.empirical import from_samples
from jackvar.statistics.functionals import Functional, SmoothFunctionOfMean, TrimmedLStatistic, \
    ConstantFunctional
from jackvar.statistics.models import EmpiricalSample
from jackvar.utils import format_call

log = logging.getLogger(__name__)

TRUTH_TOLERANCE = 1e-8


class ModelKind(Enum):
    NORMAL = "normal"
    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    STUDENT_T = "student_t"
    TWO_POINT = "two_point"


PARAMETER_COUNT = {
    ModelKind.NORMAL: 2,
    ModelKind.UNIFORM: 2,
    ModelKind.EXPONENTIAL: 1,
    ModelKind.STUDENT_T: 1,
    ModelKind.TWO_POINT: 3,
}


@dataclass(frozen=True)
class PopulationModel:
    """
    Samplable population p. Parameters per kind:
    normal(mu, sigma) with sigma the standard deviation, uniform(a, b), exponential(rate),
    student_t(nu), two_point(x0, x1, q) putting mass q on x1 and 1 - q on x0.
    """
    kind: ModelKind
    params: Tuple[float, ...]

    def __post_init__(self):
        expected = PARAMETER_COUNT[self.kind]
        if len(self.params) != expected:
            raise InvalidParams(f"{self.kind.value} takes {expected} parameters, got {len(self.params)}")
        if not all(math.isfinite(p) for p in self.params):
            raise InvalidParams(f"{self.name} has non-finite parameters")

        if self.kind == ModelKind.NORMAL and not self.params[1] > 0:
            raise InvalidParams(f"normal needs sigma > 0, got {self.params[1]}")
        elif self.kind == ModelKind.UNIFORM and not self.params[0] < self.params[1]:
            raise InvalidParams(f"uniform needs a < b, got {self.params}")
        elif self.kind == ModelKind.EXPONENTIAL and not self.params[0] > 0:
            raise InvalidParams(f"exponential needs rate > 0, got {self.params[0]}")
        elif self.kind == ModelKind.STUDENT_T and not self.params[0] > 0:
            raise InvalidParams(f"student_t needs nu > 0, got {self.params[0]}")
        elif self.kind == ModelKind.TWO_POINT and not 0 < self.params[2] < 1:
            raise InvalidParams(f"two_point needs 0 < q < 1, got {self.params[2]}")

    @property
    def name(self) -> str:
        return format_call(self.kind.value, self.params)

    @property
    def moment_order(self) -> float:
        """Absolute moments of every order strictly below this value are finite"""
        if self.kind == ModelKind.STUDENT_T:
            return self.params[0]
        return math.inf

    @property
    def is_continuous(self) -> bool:
        return self.kind != ModelKind.TWO_POINT

    def has_moment(self, order: float) -> bool:
        return order < self.moment_order

    def distribution(self):
        """Frozen scipy.stats distribution; None for two_point"""
        if self.kind == ModelKind.NORMAL:
            return scipy.stats.norm(loc=self.params[0], scale=self.params[1])
        if self.kind == ModelKind.UNIFORM:
            return scipy.stats.uniform(loc=self.params[0], scale=self.params[1] - self.params[0])
        if self.kind == ModelKind.EXPONENTIAL:
            return scipy.stats.expon(scale=1.0 / self.params[0])
        if self.kind == ModelKind.STUDENT_T:
            return scipy.stats.t(df=self.params[0])
        return None

    def mean(self) -> float:
        if not self.has_moment(1):
            raise InsufficientMoments(f"{self.name} has no finite mean")
        if self.kind == ModelKind.TWO_POINT:
            x0, x1, q = self.params
            return (1 - q) * x0 + q * x1
        return float(self.distribution().mean())

    def variance(self) -> float:
        if not self.has_moment(2):
            raise InsufficientMoments(f"{self.name} has no finite variance")
        if self.kind == ModelKind.TWO_POINT:
            x0, x1, q = self.params
            return q * (1 - q) * (x1 - x0) ** 2
        return float(self.distribution().var())

    def cdf(self, x: float) -> float:
        if self.kind == ModelKind.TWO_POINT:
            x0, x1, q = self.params
            return float((x >= x0) * (1 - q) + (x >= x1) * q)
        return float(self.distribution().cdf(x))

    def ppf(self, s: float) -> float:
        if self.kind == ModelKind.TWO_POINT:
            x0, x1, q = self.params
            low, high = (x0, x1) if x0 <= x1 else (x1, x0)
            low_mass = 1 - q if x0 <= x1 else q
            return low if s <= low_mass else high
        return float(self.distribution().ppf(s))


def derive_seed(master_seed: int, n: int, replicate: int, stream: int = 0) -> int:
    """
    Seed for one replicate, mixed from (master_seed, n, replicate, stream) by numpy's SeedSequence hash.
    Independent of the order in which replicates run. Stream 0 draws the sample, stream 1 drives the
    bootstrap of the same replicate.
    """
    sequence = np.random.SeedSequence([int(master_seed), int(n), int(replicate), int(stream)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def draw(model: PopulationModel, n: int, seed: int) -> EmpiricalSample:
    if n < 1:
        raise InvalidParams(f"Sample size must be positive, got {n}")
    rng = np.random.default_rng(seed)
    if model.kind == ModelKind.TWO_POINT:
        x0, x1, q = model.params
        values = np.where(rng.random(n) < q, x1, x0)
    else:
        values = model.distribution().rvs(size=n, random_state=rng)
    return from_samples(values)


def true_sigma_squared(model: PopulationModel, spec: Functional) -> Optional[float]:
    """
    Asymptotic variance of sqrt(n) (T_n - T(p)), or None when no truth is implemented for the pair.
    """
    if isinstance(spec, ConstantFunctional):
        return 0.0

    if isinstance(spec, SmoothFunctionOfMean):
        if not model.has_moment(2):
            raise InsufficientMoments(f"{spec.name} needs a finite second moment, {model.name} has moments "
                                      f"only below order {model.moment_order:g}")
        slope = float(spec.g_prime(model.mean()))
        return slope ** 2 * model.variance()

    if isinstance(spec, TrimmedLStatistic):
        if not model.is_continuous:
            log.warning(f"No truth value for {spec.name} under {model.name}: the cdf has jumps")
            return None
        return _l_statistic_truth(model, spec)

    log.warning(f"No truth value implemented for {spec.name}")
    return None


@QUADRATURE_TIME.time()
def _l_statistic_truth(model: PopulationModel, spec: TrimmedLStatistic) -> float:
    # For y <= z the kernel P(y ^ z) - P(y)P(z) is P(y)(1 - P(z)); integrate one triangle and double it
    w = spec.weight
    dist = model.distribution()
    lower, upper = float(dist.ppf(w.alpha)), float(dist.ppf(1.0 - w.alpha))

    def integrand(y: float, z: float) -> float:
        py, pz = float(dist.cdf(y)), float(dist.cdf(z))
        return w(py) * py * (1.0 - pz) * w(pz)

    value, error = integrate.dblquad(integrand, lower, upper, lambda z: lower, lambda z: z,
                                     epsabs=TRUTH_TOLERANCE, epsrel=TRUTH_TOLERANCE)
    log.debug(f"Truth for {spec.name} under {model.name}: {2 * value} (+- {2 * error:g})")
    return 2.0 * value


def monte_carlo_sigma_squared(model: PopulationModel, spec: Functional, n: int, replicates: int,
                              master_seed: int) -> float:
    """n times the variance of T_n across seeded replicates; an oracle for truth values"""
    if replicates < 2:
        raise InvalidParams(f"Need at least 2 replicates, got {replicates}")
    statistics = np.array([spec.evaluate(draw(model, n, derive_seed(master_seed, n, r)))
                           for r in range(replicates)])
    return n * float(np.var(statistics, ddof=1))
