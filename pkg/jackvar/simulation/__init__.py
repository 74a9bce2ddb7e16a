from jackvar.simulation.experiments import loglog_fit, rate_study, run_rate_study, compare_boot, run_compare_boot, \
    normality_study, consistency_study
from jackvar.simulation.models import RateStudyConfig, RateFit, RateStudyResult, NormalityReport, \
    ConsistencyReport, Summary, Contrast
from jackvar.simulation.sampling import PopulationModel, ModelKind, draw, derive_seed, true_sigma_squared, \
    monte_carlo_sigma_squared
