"""Exception types raised across the package.

Every error carries the offending values as attributes so callers (and the
CLI) can report them without parsing the message.
"""


class FFBenchError(ValueError):
    """Base class for all package errors."""


class DimensionMismatchError(FFBenchError):
    def __init__(self, what: str, expected: int, actual: int):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected length {expected}, got {actual}")


class NonFiniteValueError(FFBenchError):
    def __init__(self, what: str, index):
        self.what = what
        self.index = index
        super().__init__(f"{what}: non-finite value at index {index}")


class InvalidCountError(FFBenchError):
    def __init__(self, name: str, value, constraint: str):
        self.name = name
        self.value = value
        self.constraint = constraint
        super().__init__(f"{name}={value!r} violates {constraint}")


class PlanMismatchError(FFBenchError):
    def __init__(self, plan_neurons: int, layer_neurons: int):
        self.plan_neurons = plan_neurons
        self.layer_neurons = layer_neurons
        super().__init__(
            f"partition plan covers {plan_neurons} neurons but layer has {layer_neurons}"
        )


class WorkerSpawnError(FFBenchError):
    """A worker thread could not be started; no partial result is returned."""


class EmptyInputError(FFBenchError):
    pass


class SpeedupDomainError(FFBenchError):
    """Ratio or Amdahl argument outside its admissible band."""

    def __init__(self, message: str, value):
        self.value = value
        super().__init__(message)


class OperationSetMismatchError(FFBenchError):
    def __init__(self, only_serial, only_parallel):
        self.only_serial = sorted(only_serial)
        self.only_parallel = sorted(only_parallel)
        sym = sorted(set(only_serial) | set(only_parallel))
        super().__init__(
            f"serial and parallel rows cover different operation counts; "
            f"symmetric difference: {sym}"
        )


class CsvSchemaError(FFBenchError):
    """CSV text does not match one of the known headers or has malformed fields."""
