"""
Error hierarchy shared by every cosmotoy app.

Numerical routines raise these; checks that the models are expected to fail
under some inputs (theorem chains, causal-set axioms, brane validity) are
returned as report content instead.
"""

from typing import Any, Dict, List, Optional


class CosmologyError(Exception):
    """Base class for every cosmotoy computation failure."""

    code = 'cosmology_error'

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def as_dict(self) -> Dict[str, Any]:
        return {
            'success': False,
            'error': self.code,
            'message': self.message,
            'context': self.context,
        }


class DomainError(CosmologyError, ValueError):
    """An input lies outside the domain of the formula."""

    code = 'domain_error'

    def __init__(self, parameter: str, value: Any, requirement: str):
        super().__init__(
            f"{parameter}={value!r} violates {requirement}",
            parameter=parameter,
            value=value,
            requirement=requirement,
        )
        self.parameter = parameter


class SingularityError(CosmologyError, ZeroDivisionError):
    code = 'singularity'


class IntegrationError(CosmologyError):
    """A stepping or ODE scheme stopped before reaching its end point."""

    code = 'integration_error'


class StiffnessError(IntegrationError):
    code = 'stiffness'


class QuadratureError(CosmologyError):
    """Adaptive quadrature did not reach the requested tolerance."""

    code = 'quadrature_error'


class ResolutionError(CosmologyError):
    code = 'resolution_error'


class InputError(CosmologyError, ValueError):
    code = 'input_error'


class ConfigError(CosmologyError):
    """
    Run configuration could not be loaded.

    Args:
        message: Human readable summary
        errors: Mapping of dotted field path to error messages
        line: 1-based line of a syntax error, if any
        column: 1-based column of a syntax error, if any
    """

    code = 'config_error'

    def __init__(self, message: str, errors: Optional[Dict[str, List[str]]] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message, errors=errors or {}, line=line, column=column)
        self.errors = errors or {}
        self.line = line
        self.column = column
