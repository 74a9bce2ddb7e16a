import logging
import re
from typing import Iterable, List

import numpy as np

from jackvar.errors import EmptySample, NonFiniteValue, OutOfRange, TooFewSamples, IndexOutOfRange, \
    InvalidParams
from jackvar.statistics.models import EmpiricalSample, LeaveOneOutSample

log = logging.getLogger(__name__)

comment_pattern = re.compile(r"^\s*(#.*)?$")


def from_samples(values: Iterable[float]) -> EmpiricalSample:
    if not isinstance(values, np.ndarray):
        values = list(values)
    data = np.array(values, dtype=float).ravel()
    if data.size == 0:
        raise EmptySample()

    if not np.all(np.isfinite(data)):
        bad = data[~np.isfinite(data)][0]
        raise NonFiniteValue(f"Sample contains a non-finite value: {bad}")

    data = np.sort(data, kind="mergesort")
    data.setflags(write=False)
    return EmpiricalSample(data)


def cdf(sample: EmpiricalSample, x: float) -> float:
    """P_n(x) = #{x_i <= x} / n, a right-continuous step function"""
    return float(np.searchsorted(sample.values, x, side="right")) / sample.n


def cdf_grid(n: int) -> np.ndarray:
    """Levels i/n for i = 1..n, computed by correctly rounded division"""
    return np.arange(1, n + 1, dtype=float) / n


def quantile(sample: EmpiricalSample, s: float) -> float:
    """
    Generalized inverse min{x : P_n(x) >= s}, no interpolation.
    :param s: level in (0, 1]
    """
    if not 0 < s <= 1:
        raise OutOfRange(f"Quantile level must be in (0, 1], got {s}")
    k = int(np.searchsorted(cdf_grid(sample.n), s, side="left"))
    return float(sample.values[min(k, sample.n - 1)])


def leave_one_out(sample: EmpiricalSample, i: int) -> LeaveOneOutSample:
    """
    Empirical measure with the i-th order statistic removed.
    :param i: 1-based index into the sorted values
    """
    if sample.n < 2:
        raise TooFewSamples(sample.n)
    if not 1 <= i <= sample.n:
        raise IndexOutOfRange(f"Index {i} is not in 1..{sample.n}")
    return LeaveOneOutSample(sample, i)


def leave_one_out_means(sample: EmpiricalSample) -> np.ndarray:
    """All n leave-one-out means via the running-sum identity, in sorted order"""
    if sample.n < 2:
        raise TooFewSamples(sample.n)
    total = float(np.sum(sample.values))
    return (total - sample.values) / (sample.n - 1)


def parse_samples(text: str) -> EmpiricalSample:
    values: List[float] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if comment_pattern.match(line):
            continue
        try:
            values.append(float(line.strip()))
        except ValueError:
            raise InvalidParams(f"Line {number} is not a number: {line.strip()!r}")
    return from_samples(values)


def load_samples(path: str) -> EmpiricalSample:
    log.debug(f"Reading observations from {path}")
    try:
        with open(path, "r", encoding="utf-8") as file:
            text = file.read()
    except UnicodeDecodeError as e:
        raise InvalidParams(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}")
    sample = parse_samples(text)
    log.info(f"Read {sample.n} observations from {path}")
    return sample
