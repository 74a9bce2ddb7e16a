from typing import Optional


class JackvarError(ValueError):
    pass


class EmptySample(JackvarError):
    def __init__(self, message: str = "Sample contains no observations"):
        super().__init__(message)


class NonFiniteValue(JackvarError):
    pass


class OutOfRange(JackvarError):
    pass


class TooFewSamples(JackvarError):
    def __init__(self, n: int, required: int = 2):
        self.n = n
        self.required = required
        super().__init__(f"Need at least {required} observations, got {n}")


class IndexOutOfRange(JackvarError):
    pass


class NonFiniteResult(JackvarError):
    pass


class QuadratureFailure(JackvarError):
    pass


class InvalidB(JackvarError):
    def __init__(self, b: int):
        self.b = b
        super().__init__(f"Bootstrap needs at least 2 resamples, got B={b}")


class InvalidParams(JackvarError):
    pass


class InsufficientMoments(JackvarError):
    pass


class TooFewPoints(JackvarError):
    pass


class UnknownName(JackvarError):
    pass


class ConfigError(JackvarError):
    key: Optional[str]

    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(message)


class UnknownKey(ConfigError):
    def __init__(self, key: str):
        super().__init__(f"Unknown config key: {key}", key)


class MissingRequired(ConfigError):
    def __init__(self, key: str):
        super().__init__(f"Missing required config key: {key}", key)


class TypeMismatch(ConfigError):
    def __init__(self, key: str, value: str, expected: str):
        self.value = value
        super().__init__(f"Config key {key}: expected {expected}, got {value!r}", key)
