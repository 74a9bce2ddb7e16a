from typing import Callable, Tuple

from jackvar.errors import QuadratureFailure

ABSOLUTE_TOLERANCE = 1e-10
MAX_DEPTH = 30


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = ABSOLUTE_TOLERANCE,
                     max_depth: int = MAX_DEPTH) -> Tuple[float, float]:
    """
    Integrate f over [a, b] by recursive Simpson bisection with Richardson correction.

    :param tol: absolute error target for the whole interval, halved per bisection
    :param max_depth: bisection limit; reaching it without meeting tol raises QuadratureFailure
    :return: (integral, error estimate)
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    whole = _simpson(fa, fm, fb, b - a)
    return _adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _adaptive(f: Callable[[float], float], a: float, b: float, fa: float, fm: float, fb: float,
              whole: float, tol: float, depth: int) -> Tuple[float, float]:
    m = (a + b) / 2.0
    lm, rm = (a + m) / 2.0, (m + b) / 2.0
    flm, frm = f(lm), f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    error = (left + right - whole) / 15.0

    if abs(error) <= tol:
        return left + right + error, abs(error)
    if depth <= 0:
        raise QuadratureFailure(f"Adaptive Simpson did not reach tolerance {tol:g} on [{a}, {b}]")

    left_value, left_error = _adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
    right_value, right_error = _adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    return left_value + right_value, left_error + right_error
