import re
from typing import Iterable, List, Optional, Tuple

call_pattern = re.compile(r"^\s*([A-Za-z_][\w\-]*)\s*(?:\(\s*([^()]*?)\s*\))?\s*$")
range_pattern = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


def format_float(number: Optional[float]) -> str:
    # 17 significant digits round-trip every double
    if number is None:
        return ""
    return "{0:.17g}".format(float(number))


def format_param(number: float) -> str:
    return "{0:g}".format(float(number))


def format_call(name: str, args: Iterable[float]) -> str:
    args = list(args)
    if not args:
        return name
    return f"{name}({','.join(format_param(a) for a in args)})"


def parse_call(text: str) -> Tuple[str, List[float]]:
    """
    Split a registry expression like ``mesa(0.1, 0.25, 0.75, 0.9)`` into name and numeric arguments.
    :raises ValueError: if the expression or one of its arguments is malformed
    """
    match = call_pattern.match(text)
    if not match:
        raise ValueError(f"Malformed expression: {text!r}")
    name, arg_str = match.group(1), match.group(2)
    args: List[float] = []
    if arg_str:
        for part in arg_str.split(","):
            args.append(float(part.strip()))
    return name.lower(), args


def geometric_grid(start: int, stop: int, factor: int = 2) -> List[int]:
    if start < 1 or factor < 2:
        raise ValueError(f"Geometric grid needs start >= 1 and factor >= 2, got {start}, {factor}")
    grid = []
    value = start
    while value <= stop:
        grid.append(value)
        value *= factor
    return grid


def parse_grid(text: str) -> List[int]:
    """Either ``64..4096`` (doubling) or an explicit comma list"""
    match = range_pattern.match(text)
    if match:
        return geometric_grid(int(match.group(1)), int(match.group(2)))
    return [int(part.strip()) for part in text.split(",") if part.strip()]


def format_grid(grid: Iterable[int]) -> str:
    return ",".join(str(n) for n in grid)
