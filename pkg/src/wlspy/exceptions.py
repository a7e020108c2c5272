from __future__ import absolute_import, division, print_function, unicode_literals

"""
Exceptions raised by wlspy.

Plain precondition violations raise the builtin ValueError or TypeError.
The classes below mark the failures the command line interface maps to
its own exit codes.
"""

__all__ = ["InadmissibleParametersError", "ConsistencyError",
           "ConvergenceError", "QuadratureAccuracyError"]


class InadmissibleParametersError(ValueError):
    """
    The parameters lie outside the admissible range, or a derived quantity
    is degenerate for them.
    """
    exit_code = 2


class QuadratureAccuracyError(ValueError):
    """
    A quadrature rule is too small to reach the requested accuracy.
    """
    exit_code = 2


class ConsistencyError(RuntimeError):
    """
    Two independent evaluations of the same quantity disagree, or a scheme
    invariant is broken.
    """
    exit_code = 3


class ConvergenceError(RuntimeError):
    """
    A refinement, extrapolation or iterative solve did not converge.
    """
    exit_code = 4
