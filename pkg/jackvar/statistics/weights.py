import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np

from jackvar.errors import InvalidParams
from jackvar.statistics.quadrature import adaptive_simpson
from jackvar.utils import format_call

log = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class WeightKind(Enum):
    BOX = "box"
    MESA = "mesa"
    HOLDER_CUSP = "holder_cusp"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeightFunction:
    """
    Bounded weight function l on (0, 1), supported on [alpha, 1 - alpha] with inclusive endpoints.

    Built-in families carry a closed-form antiderivative F(s) = int_0^s l, so cell weights are exact.
    Custom functions are integrated numerically, split at ``breakpoints``.
    """
    kind: WeightKind
    alpha: float
    evaluator: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    holder_order: float = 1.0
    params: Tuple[float, ...] = ()
    antiderivative: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False,
                                                                           compare=False)
    breakpoints: Tuple[float, ...] = ()
    vectorized: bool = True

    @property
    def name(self) -> str:
        if self.kind == WeightKind.HOLDER_CUSP:
            return format_call(self.kind.value, (self.holder_order, self.alpha))
        return format_call(self.kind.value, self.params)

    @property
    def is_exact(self) -> bool:
        return self.antiderivative is not None

    def __call__(self, s: ArrayLike) -> ArrayLike:
        s = np.asarray(s, dtype=float)
        if self.vectorized:
            values = np.asarray(self.evaluator(s), dtype=float)
        else:
            values = np.vectorize(self.evaluator, otypes=[float])(s)
        inside = (s >= self.alpha) & (s <= 1.0 - self.alpha)
        values = np.where(inside, values, 0.0)
        if values.ndim == 0:
            return float(values)
        return values

    def integral(self) -> float:
        return float(cell_integrals(self, 1)[0])

    @staticmethod
    def box(alpha: float) -> 'WeightFunction':
        # alpha = 0 gives l = 1, the untrimmed mean
        if not 0 <= alpha < 0.5:
            raise InvalidParams(f"box trimming level must be in [0, 1/2), got {alpha}")

        def evaluator(s: np.ndarray) -> np.ndarray:
            return np.ones_like(s)

        def antiderivative(s: np.ndarray) -> np.ndarray:
            return np.clip(s, alpha, 1.0 - alpha) - alpha

        return WeightFunction(WeightKind.BOX, alpha, evaluator, 1.0, (alpha,), antiderivative,
                              (alpha, 1.0 - alpha))

    @staticmethod
    def mesa(a: float, b: float, c: float, d: float) -> 'WeightFunction':
        """Trapezoid of height 1: rises on [a, b], flat on [b, c], falls on [c, d]"""
        if not 0 < a <= b <= c <= d < 1:
            raise InvalidParams(f"mesa needs 0 < a <= b <= c <= d < 1, got {(a, b, c, d)}")
        alpha = min(a, 1.0 - d)
        if not alpha < 0.5:
            raise InvalidParams(f"mesa support [{a}, {d}] is too narrow")

        f_b = (b - a) / 2.0
        f_c = f_b + (c - b)
        f_d = f_c + (d - c) / 2.0

        def evaluator(s: np.ndarray) -> np.ndarray:
            return np.piecewise(s, [s < a, (s >= a) & (s < b), (s >= b) & (s <= c), (s > c) & (s <= d), s > d],
                                [0.0, lambda t: (t - a) / (b - a), 1.0, lambda t: (d - t) / (d - c), 0.0])

        def antiderivative(s: np.ndarray) -> np.ndarray:
            return np.piecewise(s, [s <= a, (s > a) & (s <= b), (s > b) & (s <= c), (s > c) & (s <= d), s > d],
                                [0.0,
                                 lambda t: (t - a) ** 2 / (2.0 * (b - a)),
                                 lambda t: f_b + (t - b),
                                 lambda t: f_d - (d - t) ** 2 / (2.0 * (d - c)),
                                 f_d])

        return WeightFunction(WeightKind.MESA, alpha, evaluator, 1.0, (a, b, c, d), antiderivative,
                              (a, b, c, d))

    @staticmethod
    def holder_cusp(h: float, alpha: float) -> 'WeightFunction':
        """l(s) = max(0, 1 - |2s - 1|^h) on [alpha, 1 - alpha]: a Hoelder-h cusp at s = 1/2"""
        if not 0 < h <= 1:
            raise InvalidParams(f"Hoelder order must be in (0, 1], got {h}")
        if not 0 < alpha < 0.5:
            raise InvalidParams(f"Trimming level must be in (0, 1/2), got {alpha}")

        def evaluator(s: np.ndarray) -> np.ndarray:
            return np.maximum(0.0, 1.0 - np.abs(2.0 * s - 1.0) ** h)

        def primitive(t: np.ndarray) -> np.ndarray:
            u = 2.0 * t - 1.0
            return t - np.sign(u) * np.abs(u) ** (h + 1.0) / (2.0 * (h + 1.0))

        def antiderivative(s: np.ndarray) -> np.ndarray:
            return primitive(np.clip(s, alpha, 1.0 - alpha)) - primitive(np.asarray(alpha))

        return WeightFunction(WeightKind.HOLDER_CUSP, alpha, evaluator, h, (h, alpha), antiderivative,
                              (alpha, 0.5, 1.0 - alpha))

    @staticmethod
    def custom(evaluator: Callable[[float], float], alpha: float, holder_order: float = 1.0,
               breakpoints: Tuple[float, ...] = (), vectorized: bool = False) -> 'WeightFunction':
        """
        User-supplied weight function. The evaluator must be pure; it is zeroed outside [alpha, 1 - alpha].
        Declare kinks and jumps in ``breakpoints`` so the quadrature never straddles them.
        """
        if not 0 < alpha < 0.5:
            raise InvalidParams(f"Trimming level must be in (0, 1/2), got {alpha}")
        points = tuple(sorted({alpha, 1.0 - alpha, *breakpoints}))
        return WeightFunction(WeightKind.CUSTOM, alpha, evaluator, holder_order, (alpha,), None, points,
                              vectorized)


def cell_integrals(w: WeightFunction, n: int) -> np.ndarray:
    """
    Integrals of l over the cells ((i-1)/n, i/n], i = 1..n.
    """
    if n < 1:
        raise InvalidParams(f"Number of cells must be positive, got {n}")
    grid = np.arange(0, n + 1, dtype=float) / n

    if w.antiderivative is not None:
        return np.diff(w.antiderivative(grid))

    lower, upper = w.alpha, 1.0 - w.alpha
    result = np.zeros(n)
    for i in range(n):
        left, right = grid[i], grid[i + 1]
        if right < lower or left > upper:
            continue
        cuts = [left] + [p for p in w.breakpoints if left < p < right] + [right]
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            value, _ = adaptive_simpson(w, a, b)
            total += value
        result[i] = total
    log.debug(f"Integrated custom weight function over {n} cells")
    return result
