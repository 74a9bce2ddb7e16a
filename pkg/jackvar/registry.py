import logging
from typing import Callable, Dict, List, Tuple

from jackvar.errors import UnknownName, InvalidParams
from jackvar.simulation.sampling import PopulationModel, ModelKind, PARAMETER_COUNT
from jackvar.statistics import functionals
from jackvar.statistics.functionals import Functional
from jackvar.statistics.weights import WeightFunction
from jackvar.utils import parse_call

log = logging.getLogger(__name__)

def _box(alpha: float) -> Functional:
    # box(0) is the untrimmed mean, kept for tests only
    if not 0 < alpha < 0.5:
        raise InvalidParams(f"box trimming level must be in (0, 1/2), got {alpha:g}")
    return functionals.trimmed(WeightFunction.box(alpha))


FUNCTIONALS: Dict[str, Callable[..., Functional]] = {
    "identity": functionals.identity,
    "square": functionals.square,
    "paper_sgn": functionals.paper_sgn,
    "box": _box,
    "mesa": lambda a, b, c, d: functionals.trimmed(WeightFunction.mesa(a, b, c, d)),
    "holder_cusp": lambda h, alpha: functionals.trimmed(WeightFunction.holder_cusp(h, alpha)),
}

FUNCTIONAL_ARITY = {
    "identity": 0,
    "square": 0,
    "paper_sgn": 0,
    "box": 1,
    "mesa": 4,
    "holder_cusp": 2,
}


def _split(text: str, what: str) -> Tuple[str, List[float]]:
    try:
        return parse_call(text)
    except ValueError as e:
        raise InvalidParams(f"Malformed {what} {text!r}: {e}")


def functional_names() -> List[str]:
    return list(FUNCTIONALS.keys())


def model_names() -> List[str]:
    return [kind.value for kind in ModelKind]


def resolve_functional(text: str) -> Functional:
    """
    Look up a built-in functional, e.g. ``square`` or ``mesa(0.1, 0.25, 0.75, 0.9)``.
    :raises UnknownName: if no functional of that name exists
    :raises InvalidParams: if the arguments do not fit the functional
    """
    name, args = _split(text, "functional")
    if name not in FUNCTIONALS:
        raise UnknownName(f"Unknown functional {name!r}, expected one of {', '.join(functional_names())}")
    if len(args) != FUNCTIONAL_ARITY[name]:
        raise InvalidParams(f"{name} takes {FUNCTIONAL_ARITY[name]} parameters, got {len(args)}")
    spec = FUNCTIONALS[name](*args)
    log.debug(f"Resolved functional {text!r} to {spec.name}")
    return spec


def resolve_model(text: str) -> PopulationModel:
    """Look up a population model, e.g. ``normal(0,1)`` or ``student_t(1.5)``"""
    name, args = _split(text, "model")
    try:
        kind = ModelKind(name)
    except ValueError:
        raise UnknownName(f"Unknown model {name!r}, expected one of {', '.join(model_names())}")
    if len(args) != PARAMETER_COUNT[kind]:
        raise InvalidParams(f"{name} takes {PARAMETER_COUNT[kind]} parameters, got {len(args)}")
    return PopulationModel(kind, tuple(args))
