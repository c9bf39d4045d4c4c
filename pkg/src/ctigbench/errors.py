"""Semantic exception hierarchy.

Errors are split by contract kind: bad arguments (`ParameterError`),
violated caller contracts (`ContractViolationError`), and quantities that
are undefined for the given data rather than wrong (`*UndefinedError`,
`EstimationError`).
"""


class CtigBenchError(Exception):
    """Base class for all package errors."""


class ParameterError(CtigBenchError, ValueError):
    """An argument is outside its documented domain."""


class ContractViolationError(CtigBenchError, RuntimeError):
    """A caller-side contract was violated (e.g. a missing history flag)."""


class DistanceUndefinedError(CtigBenchError, RuntimeError):
    """Distance is undefined because every trigger stream is empty."""


class MetricUndefinedError(CtigBenchError, RuntimeError):
    """Metric is undefined for the given labels (e.g. a single class)."""


class ProbabilityUndefinedError(CtigBenchError, RuntimeError):
    """A conditional probability has an empty conditioning set."""


class SamplingError(CtigBenchError, RuntimeError):
    """Negative sampling is impossible under the requested mode."""


class EstimationError(CtigBenchError, RuntimeError):
    """An estimator has an empty or degenerate conditioning cell."""


class CapacityError(CtigBenchError, RuntimeError):
    """An exhaustive check exceeds its configured enumeration cap."""


class ConfigError(CtigBenchError, ValueError):
    """Configuration file failed validation.

    Carries the full list of schema errors, one per offending key.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class DatasetFormatError(CtigBenchError, ValueError):
    """A dataset or scores file does not follow the documented format."""
