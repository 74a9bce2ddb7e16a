import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.stats

from jackvar.errors import TooFewPoints, NonFiniteResult, InvalidParams
from jackvar.metrics import REPLICATE_COUNT, EXCLUDED_REPLICATE_COUNT, STUDY_TIME
from jackvar.simulation.models import RateStudyConfig, RateFit, RateRow, RateStudyResult, Contrast, \
    NormalityReport, EstimatorNormality, ConsistencyReport, ConsistencyRow
from jackvar.simulation.sampling import PopulationModel, draw, derive_seed, true_sigma_squared
from jackvar.statistics.estimators import jackknife_variance, infinitesimal_jackknife_variance, \
    bootstrap_variance
from jackvar.statistics.functionals import Functional
from jackvar.statistics.models import EstimatorKind, EmpiricalSample

log = logging.getLogger(__name__)

SAMPLE_STREAM = 0
BOOTSTRAP_STREAM = 1


def loglog_fit(points: Sequence[Tuple[float, float]]) -> RateFit:
    """
    Ordinary least squares of y on x. The slope standard error is the usual
    sqrt(SSE / (m - 2) / Sxx); it is 0 for two points or when the residuals vanish.
    """
    pts = [(float(x), float(y)) for x, y in points]
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if len(np.unique(xs)) < 2:
        raise TooFewPoints(f"A line fit needs at least 2 distinct x values, got {len(pts)} points")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise NonFiniteResult(f"Cannot fit non-finite points {pts}")

    x_mean, y_mean = float(np.mean(xs)), float(np.mean(ys))
    sxx = float(np.sum((xs - x_mean) ** 2))
    slope = float(np.sum((xs - x_mean) * (ys - y_mean))) / sxx
    intercept = y_mean - slope * x_mean

    m = len(pts)
    residuals = ys - (intercept + slope * xs)
    scale = max(1.0, float(np.max(np.abs(ys))))
    if m == 2 or np.allclose(residuals, 0.0, rtol=0.0, atol=1e-12 * scale):
        stderr = 0.0
    else:
        stderr = math.sqrt(float(np.sum(residuals ** 2)) / (m - 2) / sxx)
    return RateFit(points=pts, slope=slope, intercept=intercept, slope_stderr=stderr)


def _replicate_sample(model: PopulationModel, n: int, replicate: int, master_seed: int) -> EmpiricalSample:
    return draw(model, n, derive_seed(master_seed, n, replicate, SAMPLE_STREAM))


def _differences(cfg: RateStudyConfig, sample: EmpiricalSample, replicate: int,
                 contrasts: Iterable[Contrast]) -> Dict[Contrast, float]:
    jack = jackknife_variance(cfg.spec, sample).value
    result = {}
    for contrast in contrasts:
        if contrast == Contrast.JACK_VS_IJACK:
            other = infinitesimal_jackknife_variance(cfg.spec, sample).value
        else:
            seed = derive_seed(cfg.master_seed, sample.n, replicate, BOOTSTRAP_STREAM)
            other = bootstrap_variance(cfg.spec, sample, cfg.bootstrap_b, seed).value
        result[contrast] = abs(jack - other)
    return result


def _run_contrasts(cfg: RateStudyConfig, contrasts: List[Contrast], study: str) -> List[RateStudyResult]:
    log.info(f"Starting {study} for {cfg.spec.name} under {cfg.model.name}: n_grid={list(cfg.n_grid)}, "
             f"R={cfg.replicates}, seed={cfg.master_seed}, summary={cfg.summary.value}")
    rows: Dict[Contrast, List[RateRow]] = {c: [] for c in contrasts}

    for n in cfg.n_grid:
        diffs: Dict[Contrast, List[float]] = {c: [] for c in contrasts}
        excluded = 0
        for r in range(cfg.replicates):
            sample = _replicate_sample(cfg.model, n, r, cfg.master_seed)
            try:
                values = _differences(cfg, sample, r, contrasts)
            except NonFiniteResult as e:
                log.warning(f"Excluding replicate {r} at n={n}: {e}")
                excluded += 1
                continue
            if not all(math.isfinite(v) for v in values.values()):
                log.warning(f"Excluding replicate {r} at n={n}: non-finite difference")
                excluded += 1
                continue
            for contrast, value in values.items():
                diffs[contrast].append(value)
            log.debug(f"n={n} replicate {r}: {values}")

        REPLICATE_COUNT.labels(study=study).inc(cfg.replicates)
        if excluded:
            EXCLUDED_REPLICATE_COUNT.labels(study=study).inc(excluded)
        used = cfg.replicates - excluded
        if used == 0:
            raise NonFiniteResult(f"Every replicate at n={n} produced non-finite estimates")

        for contrast in contrasts:
            summary = cfg.summary.apply(np.array(diffs[contrast]))
            rows[contrast].append(RateRow(n, summary, used, excluded))
            log.info(f"{contrast.value} n={n}: {cfg.summary.value} |difference| = {summary:.6g} "
                     f"({used} replicates, {excluded} excluded)")

    results = []
    for contrast in contrasts:
        contrast_rows = rows[contrast]
        if any(row.summary_abs_diff <= 0 for row in contrast_rows):
            raise NonFiniteResult(f"{contrast.value} summary is zero for some n, its logarithm is undefined")
        fit = loglog_fit([(math.log(row.n), math.log(row.summary_abs_diff)) for row in contrast_rows])
        log.info(f"{contrast.value} slope {fit.slope:.4f} +- {fit.slope_stderr:.4f}")
        results.append(RateStudyResult(cfg, contrast, contrast_rows, fit))
    return results


@STUDY_TIME.labels(study="rate").time()
def run_rate_study(cfg: RateStudyConfig) -> RateStudyResult:
    return _run_contrasts(cfg, [cfg.contrast], "rate")[0]


def rate_study(cfg: RateStudyConfig) -> RateFit:
    """
    Median (or the configured summary) of |v_jack - other| per n, fitted against n on log scales.
    The fitted slope approximates -h under the Hoelder hypotheses.
    """
    return run_rate_study(cfg).fit


@STUDY_TIME.labels(study="compare_boot").time()
def run_compare_boot(cfg: RateStudyConfig) -> Tuple[RateStudyResult, RateStudyResult]:
    if cfg.bootstrap_b is None or cfg.bootstrap_b < 2:
        raise InvalidParams(f"compare-boot needs bootstrap_b >= 2, got {cfg.bootstrap_b}")
    # Both contrasts are computed from the same replicate sample
    ijack, boot = _run_contrasts(cfg, [Contrast.JACK_VS_IJACK, Contrast.JACK_VS_BOOT], "compare_boot")
    return ijack, boot


def compare_boot(cfg: RateStudyConfig) -> Tuple[RateFit, RateFit]:
    """Fits for (jack_vs_ijack, jack_vs_boot) on identical per-replicate samples"""
    ijack, boot = run_compare_boot(cfg)
    return ijack.fit, boot.fit


def _replicate_estimates(spec: Functional, model: PopulationModel, n: int, replicates: int, master_seed: int,
                         study: str, bootstrap_b: Optional[int] = None) -> Tuple[Dict[EstimatorKind, np.ndarray], int]:
    kinds = [EstimatorKind.JACKKNIFE, EstimatorKind.INFINITESIMAL_JACKKNIFE]
    if bootstrap_b is not None:
        kinds.append(EstimatorKind.BOOTSTRAP)
    values: Dict[EstimatorKind, List[float]] = {k: [] for k in kinds}
    excluded = 0

    for r in range(replicates):
        sample = _replicate_sample(model, n, r, master_seed)
        try:
            row = {EstimatorKind.JACKKNIFE: jackknife_variance(spec, sample).value,
                   EstimatorKind.INFINITESIMAL_JACKKNIFE: infinitesimal_jackknife_variance(spec, sample).value}
            if bootstrap_b is not None:
                seed = derive_seed(master_seed, n, r, BOOTSTRAP_STREAM)
                row[EstimatorKind.BOOTSTRAP] = bootstrap_variance(spec, sample, bootstrap_b, seed).value
        except NonFiniteResult as e:
            log.warning(f"Excluding replicate {r}: {e}")
            excluded += 1
            continue
        for kind, value in row.items():
            values[kind].append(value)

    REPLICATE_COUNT.labels(study=study).inc(replicates)
    if excluded:
        EXCLUDED_REPLICATE_COUNT.labels(study=study).inc(excluded)
    if excluded == replicates:
        raise NonFiniteResult(f"Every replicate of {spec.name} under {model.name} was excluded")
    return {k: np.array(v) for k, v in values.items()}, excluded


def describe_distribution(kind: EstimatorKind, values: np.ndarray) -> EstimatorNormality:
    """
    Moments of the replicate values and the Kolmogorov-Smirnov distance between the values,
    standardized by their own mean and standard deviation, and the standard normal.
    """
    mean = float(np.mean(values))
    variance = float(np.var(values, ddof=1))
    if np.all(values == values[0]) or not variance > 0:
        return EstimatorNormality(kind, mean, 0.0, math.nan, math.nan, math.nan, degenerate=True)

    standardized = (values - mean) / math.sqrt(variance)
    return EstimatorNormality(
        estimator=kind,
        mean=mean,
        variance=variance,
        skewness=float(scipy.stats.skew(values)),
        excess_kurtosis=float(scipy.stats.kurtosis(values, fisher=True)),
        ks_distance=float(scipy.stats.kstest(standardized, "norm").statistic),
    )


@STUDY_TIME.labels(study="normality").time()
def normality_study(spec: Functional, model: PopulationModel, n: int, replicates: int,
                    master_seed: int) -> NormalityReport:
    if replicates < 100:
        raise InvalidParams(f"Normality studies need at least 100 replicates, got {replicates}")
    if n < 2:
        raise InvalidParams(f"Sample size must be at least 2, got {n}")
    log.info(f"Starting normality study for {spec.name} under {model.name}: n={n}, R={replicates}, "
             f"seed={master_seed}")

    values, excluded = _replicate_estimates(spec, model, n, replicates, master_seed, "normality")
    report = NormalityReport(spec.name, model.name, n, replicates, excluded=excluded)
    for kind, column in values.items():
        item = describe_distribution(kind, column)
        if item.degenerate:
            log.warning(f"{kind.value} of {spec.name} is degenerate under {model.name}")
        else:
            log.info(f"{kind.value}: skewness {item.skewness:.4f}, excess kurtosis {item.excess_kurtosis:.4f}, "
                     f"KS distance {item.ks_distance:.4f} (1% critical value {report.ks_critical_value:.4f})")
        report.estimators.append(item)
    return report


@STUDY_TIME.labels(study="consistency").time()
def consistency_study(spec: Functional, model: PopulationModel, n: int, replicates: int, master_seed: int,
                      bootstrap_b: Optional[int] = None) -> ConsistencyReport:
    """Median relative error |v - sigma^2| / sigma^2 of each estimator against the truth value"""
    if replicates < 1:
        raise InvalidParams(f"Need at least one replicate, got {replicates}")
    truth = true_sigma_squared(model, spec)
    if truth is None or not truth > 0:
        raise InvalidParams(f"Consistency needs a positive truth value for {spec.name} under {model.name}, "
                            f"got {truth}")
    log.info(f"Starting consistency study for {spec.name} under {model.name}: n={n}, R={replicates}, "
             f"truth={truth:.6g}")

    values, excluded = _replicate_estimates(spec, model, n, replicates, master_seed, "consistency", bootstrap_b)
    report = ConsistencyReport(spec.name, model.name, n, replicates, truth, excluded=excluded)
    for kind, column in values.items():
        error = float(np.median(np.abs(column - truth) / truth))
        report.rows.append(ConsistencyRow(kind, float(np.mean(column)), error))
        log.info(f"{kind.value}: median relative error {error:.4f}")
    return report
