import logging
from typing import Optional

import numpy as np

from jackvar.errors import TooFewSamples, InvalidB, InvalidParams, NonFiniteResult
from jackvar.metrics import ESTIMATOR_TIME, BOOTSTRAP_RESAMPLES
from jackvar.statistics.functionals import Functional
from jackvar.statistics.models import EmpiricalSample, PseudovalueSet, VarianceEstimate, EstimatorKind, \
    DecompositionReport, BootstrapInfo, Estimates

log = logging.getLogger(__name__)

# Rows of bootstrap indices drawn per block; fixed so the stream is identical for any B
BOOTSTRAP_BLOCK = 64
EXACT_BOOTSTRAP_MAX_N = 7


def _require_pairs(sample: EmpiricalSample) -> None:
    if sample.n < 2:
        raise TooFewSamples(sample.n)


def pseudovalues(spec: Functional, sample: EmpiricalSample) -> PseudovalueSet:
    """Q_i = n T(eps_n) - (n - 1) T(eps_ni), indexed by the sorted observations"""
    _require_pairs(sample)
    n = sample.n
    base = spec.evaluate(sample)
    if sample.is_constant():
        # every leave-one-out measure equals eps_n
        return PseudovalueSet(np.full(n, base), base)

    values = n * base - (n - 1) * spec.leave_one_out_values(sample)
    if not np.all(np.isfinite(values)):
        raise NonFiniteResult(f"Pseudovalues of {spec.name} are not finite")
    return PseudovalueSet(values, base)


def _pseudovalue_spread(pseudo: PseudovalueSet) -> float:
    q = pseudo.values
    if np.all(q == q[0]):
        return 0.0
    return float(np.sum((q - np.mean(q)) ** 2) / (pseudo.n - 1))


@ESTIMATOR_TIME.labels(kind=EstimatorKind.JACKKNIFE.value).time()
def jackknife_variance(spec: Functional, sample: EmpiricalSample) -> VarianceEstimate:
    value = _pseudovalue_spread(pseudovalues(spec, sample))
    return VarianceEstimate(value, EstimatorKind.JACKKNIFE, sample.n)


@ESTIMATOR_TIME.labels(kind=EstimatorKind.INFINITESIMAL_JACKKNIFE.value).time()
def infinitesimal_jackknife_variance(spec: Functional, sample: EmpiricalSample) -> VarianceEstimate:
    _require_pairs(sample)
    value = 0.0 if sample.is_constant() else max(0.0, spec.influence_variance(sample))
    return VarianceEstimate(value, EstimatorKind.INFINITESIMAL_JACKKNIFE, sample.n)


@ESTIMATOR_TIME.labels(kind=EstimatorKind.BOOTSTRAP.value).time()
def bootstrap_variance(spec: Functional, sample: EmpiricalSample, b: int, seed: int) -> VarianceEstimate:
    """
    n times the sample variance (divisor B - 1) of T over B seeded resamples with replacement,
    so the result estimates Var(sqrt(n) T_n) like the jackknife estimators.
    """
    _require_pairs(sample)
    if b < 2:
        raise InvalidB(b)
    info = BootstrapInfo(b, seed)
    if sample.is_constant():
        return VarianceEstimate(0.0, EstimatorKind.BOOTSTRAP, sample.n, info)

    n = sample.n
    rng = np.random.default_rng(seed)
    statistics = np.empty(b)
    for start in range(0, b, BOOTSTRAP_BLOCK):
        rows = min(BOOTSTRAP_BLOCK, b - start)
        indices = rng.integers(0, n, size=(rows, n))
        statistics[start:start + rows] = spec.resample_values(sample, indices)
    BOOTSTRAP_RESAMPLES.inc(b)

    value = 0.0 if np.all(statistics == statistics[0]) else n * float(np.var(statistics, ddof=1))
    log.debug(f"Bootstrap of {spec.name} with n={n}, B={b}, seed={seed}: {value}")
    return VarianceEstimate(value, EstimatorKind.BOOTSTRAP, n, info)


def exact_bootstrap_variance(spec: Functional, sample: EmpiricalSample) -> VarianceEstimate:
    """
    The bootstrap without Monte Carlo error: all n^n equally likely resamples are enumerated.
    Only feasible for tiny samples.
    """
    _require_pairs(sample)
    n = sample.n
    if n > EXACT_BOOTSTRAP_MAX_N:
        raise InvalidParams(f"Exact bootstrap enumerates n^n resamples, n={n} exceeds {EXACT_BOOTSTRAP_MAX_N}")
    info = BootstrapInfo(None, None, exact=True)
    if sample.is_constant():
        return VarianceEstimate(0.0, EstimatorKind.BOOTSTRAP, n, info)

    indices = np.indices((n,) * n).reshape(n, -1).T
    statistics = spec.resample_values(sample, indices)
    return VarianceEstimate(n * float(np.var(statistics)), EstimatorKind.BOOTSTRAP, n, info)


def decomposition(spec: Functional, sample: EmpiricalSample) -> DecompositionReport:
    """
    Splits v_jack into E phi^2, E phi^2 / (n - 1), the cross term and the remainder, where
    Delta_i = (Q_i - mean Q) - phi_{eps_n}(x_i).
    """
    pseudo = pseudovalues(spec, sample)
    n = sample.n
    phi = np.asarray(spec.influence(sample, sample.values), dtype=float)
    delta = (pseudo.values - pseudo.mean) - phi

    term1 = float(np.mean(phi ** 2))
    return DecompositionReport(
        delta=delta,
        term1=term1,
        term2=term1 / (n - 1),
        term3=2.0 / (n - 1) * float(phi @ delta),
        term4=float(delta @ delta) / (n - 1),
    )


def estimate_all(spec: Functional, sample: EmpiricalSample, b: Optional[int] = None,
                 seed: Optional[int] = None) -> Estimates:
    """T_n with v_jack and v_ijack, plus v_boot when B is given"""
    boot = None
    if b is not None:
        boot = bootstrap_variance(spec, sample, b, 0 if seed is None else seed)
    return Estimates(statistic=spec.evaluate(sample), n=sample.n,
                     jackknife=jackknife_variance(spec, sample),
                     infinitesimal_jackknife=infinitesimal_jackknife_variance(spec, sample),
                     bootstrap=boot)
