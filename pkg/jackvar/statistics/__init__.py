from jackvar.statistics.empirical import from_samples, cdf, quantile, leave_one_out, leave_one_out_means, \
    load_samples, parse_samples
from jackvar.statistics.estimators import pseudovalues, jackknife_variance, infinitesimal_jackknife_variance, \
    bootstrap_variance, exact_bootstrap_variance, decomposition, estimate_all
from jackvar.statistics.functionals import Functional, FunctionalSpec, SmoothFunctionOfMean, TrimmedLStatistic, \
    ConstantFunctional
from jackvar.statistics.models import EmpiricalSample, LeaveOneOutSample, PseudovalueSet, VarianceEstimate, \
    EstimatorKind, DecompositionReport, Estimates
from jackvar.statistics.weights import WeightFunction, WeightKind
