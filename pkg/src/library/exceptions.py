"""Defines exceptions used in other modules."""

from string import Template
from typing import Iterable, Union


class DimensionMismatchError(Exception):
    """Two objects live on spaces of different dimension."""

    def __init__(self, expected: int, given: int, what: str = "form"):
        self.expected = expected
        self.given = given
        self.what = what
        self.msg = f"Dimension mismatch for {self.what}: expected {self.expected}, got {self.given}."
        super().__init__(self.msg)


class ArgTypeError(Exception):
    """The argument isn't of the expected type."""

    def __init__(
        self, var_name: str, type_given: type, type_expected: Union[type, str]
    ):
        self.var_name = var_name
        self.type_given = type_given
        self.type_expected = type_expected
        tml = Template("variable '$v' type is not valid.\ntype: $g\nexpected type: $e")
        msg = tml.substitute(v=self.var_name, g=self.type_given, e=self.type_expected)
        super().__init__(msg)


class ParametricEvaluationError(Exception):
    """A rank computation was requested on an algebra that still has free parameters."""

    def __init__(self, symbols: Iterable[str], operation: str):
        self.symbols = sorted(str(s) for s in symbols)
        self.operation = operation
        self.msg = (
            f"'{self.operation}' needs an evaluation point; free parameters: {', '.join(self.symbols)}"
        )
        super().__init__(self.msg)


class DegenerateMetricError(Exception):
    """The metric is not positive definite (or the fundamental form is degenerate) at the point."""

    def __init__(self, reason: str):
        self.reason = reason
        self.msg = f"Degenerate metric: {self.reason}"
        super().__init__(self.msg)


class NotSolvableError(Exception):
    """The solvable filtration stabilised before reaching the whole dual space."""

    def __init__(self, name: str, reached: int, dim: int):
        self.name = name
        self.reached = reached
        self.dim = dim
        self.msg = f'Algebra "{self.name}" is not solvable: filtration stops at dimension {self.reached} < {self.dim}.'
        super().__init__(self.msg)


class NotAnIdealError(Exception):
    """A subspace passed as an ideal is not stable under brackets."""

    def __init__(self, name: str):
        self.name = name
        self.msg = f'Subspace is not an ideal of "{self.name}".'
        super().__init__(self.msg)


class UnrecognizedAlgebraError(Exception):
    """The algebra is outside the identifiable list."""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        self.msg = f'Cannot identify "{self.name}": {self.reason}'
        super().__init__(self.msg)


class AmbiguousIdentificationError(Exception):
    """Identification depends on parameter values that were not fixed."""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        self.msg = f'Identification of "{self.name}" is ambiguous: {self.reason}'
        super().__init__(self.msg)


class NotationSyntaxError(Exception):
    """Error while parsing compact structural notation."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        pointer = " " * position + "^"
        self.msg = f"Syntax error at position {self.position}: {self.reason}\n{self.text}\n{pointer}"
        super().__init__(self.msg)


class UnprintableCoefficientError(Exception):
    """A coefficient has no representation in compact notation."""

    def __init__(self, coefficient: object):
        self.coefficient = coefficient
        self.msg = f'Coefficient "{self.coefficient}" cannot be written in compact notation.'
        super().__init__(self.msg)


class IncompatibleStructureError(Exception):
    """J and g do not form an almost Hermitian structure."""

    def __init__(self, reason: str):
        self.reason = reason
        self.msg = f"Invalid Hermitian structure: {self.reason}"
        super().__init__(self.msg)


class NotAdInvariantError(Exception):
    """The metric is not ad-invariant."""

    def __init__(self, name: str, residual: object):
        self.name = name
        self.residual = residual
        self.msg = f'Metric is not ad-invariant on "{self.name}" (first residual: {self.residual}).'
        super().__init__(self.msg)


class InadmissibleParametersError(Exception):
    """Family parameters violate the admissible range."""

    def __init__(self, family: str, reason: str):
        self.family = family
        self.reason = reason
        self.msg = f'Inadmissible parameters for family "{self.family}": {self.reason}'
        super().__init__(self.msg)
