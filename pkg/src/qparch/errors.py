"""Exception types shared across the package."""


class InfeasibleInputError(ValueError):
    """A model input that is syntactically valid but has no feasible solution."""


class UnreachableTargetError(InfeasibleInputError):
    """No finite code distance can reach the requested logical error rate."""


class NoFactoryCapacityError(InfeasibleInputError):
    """The machine has no logical qubits left over for distillation factories."""
