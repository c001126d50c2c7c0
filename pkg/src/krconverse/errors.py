class PreconditionError(ValueError):
    """Bad input: invalid type, non-dominant weight, improper Levi subset, ..."""


class ConditionFailure(ValueError):
    """A mathematical condition on the input does not hold (e.g. y outside the rhs set)."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConsistencyError(RuntimeError):
    """An internal check failed. At desk scale this would contradict a proved statement."""

    def __init__(self, message, check=None, witness=None):
        super().__init__(message)
        self.check = check
        self.witness = witness


class CutoffViolation(ConditionFailure):
    """Some positive coroot pairs to <= -2 with the weight; ``coroot`` is the first such one."""

    def __init__(self, message, coroot, value):
        super().__init__(message, condition="cutoff")
        self.coroot = coroot
        self.value = value
