import logging

import prometheus_client
from prometheus_client import Info
from prometheus_client.metrics import Counter, Summary

# Estimators
ESTIMATOR_TIME = Summary('jackvar_estimator_seconds', 'Time spent computing a variance estimate', ['kind'])
BOOTSTRAP_RESAMPLES = Counter('jackvar_bootstrap_resamples', 'Bootstrap resamples drawn')

# Experiments
REPLICATE_COUNT = Counter('jackvar_replicates', 'Monte Carlo replicates run', ['study'])
EXCLUDED_REPLICATE_COUNT = Counter('jackvar_excluded_replicates',
                                   'Replicates excluded for non-finite estimates', ['study'])
STUDY_TIME = Summary('jackvar_study_seconds', 'Duration of Monte Carlo studies', ['study'])

# Truth values
QUADRATURE_TIME = Summary('jackvar_truth_quadrature_seconds', 'Time used for truth value quadrature')


def start_metrics_endpoint(port: int, command: str) -> bool:
    if port <= 0:
        return False
    try:
        prometheus_client.start_http_server(port, '0.0.0.0')
    except OSError as e:
        logging.error("Error while starting Prometheus Endpoint", exc_info=e)
        return False
    i = Info('jackvar_run', 'Experiment run')
    i.info({'command': command})
    return True
