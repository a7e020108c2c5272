from __future__ import absolute_import, division, print_function, unicode_literals

"""
Search for candidates with negative scale invariant deficit.

Every candidate is compared with the radial optimizer g* at the constant
K*. The deficit is homogeneous of degree two, so dividing it by the squared
norm is the same as projecting the candidate onto the unit sphere first.
"""

from collections import namedtuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize, minimize_scalar
from tqdm import tqdm

from .constants import lambda1
from .functionals import (Candidate, deficit, implied_constant, optimizer_profile,
                          spherical_harmonic)
from .parameters import require_admissible
from .quadrature import RadialField, radial_rule, sphere_rule, integrate, tail_radius
from .utils.logger import setup_module_logger, get_logger

__all__ = ["Ansatz", "SearchResult", "Certificate", "DeficitSearch", "ansatz_candidate",
           "FAMILIES", "CERTIFIED_BREAKING", "NO_IMPROVEMENT"]


RADIAL_SPLINE = "radial_spline"
GAUSSIAN_TIMES_POLY = "gaussian_times_poly"
EIGENMODE_PERTURBATION = "eigenmode_perturbation"

FAMILIES = (RADIAL_SPLINE, GAUSSIAN_TIMES_POLY, EIGENMODE_PERTURBATION)

CERTIFIED_BREAKING = "certified_breaking"
NO_IMPROVEMENT = "no_improvement"

# Gauss-Legendre order of the panels the spline knots are aligned with
_PANEL_ORDER = 16

SearchResult = namedtuple("SearchResult", ["best_deficit", "best_k_lower", "ansatz", "iterations",
                                           "converged", "history"])

Certificate = namedtuple("Certificate", ["status", "epsilon", "deficit"])


class Ansatz(object):
    """
    Member of a parametric candidate family.

    Parameters
    ----------
    kind : {"radial_spline", "gaussian_times_poly", "eigenmode_perturbation"}
        The family. "radial_spline" multiplies g* by exp(h) with h the
        natural cubic spline through the coefficients at knots
        S (j/m)^2, j = 0, ..., m, and h = 0 at the last knot.
        "gaussian_times_poly" multiplies g* by 1 + sum_k c_k s^{2k}.
        "eigenmode_perturbation" adds epsilon times the normalized
        ell = 1 instability mode to the "gaussian_times_poly" candidate.
    coefficients : array_like
        Finite coefficient vector.
    epsilon : float, optional
        Amplitude of the ell = 1 channel. Only used by
        "eigenmode_perturbation". Default is 0.
    """
    def __init__(self, kind, coefficients, epsilon=0.):
        if kind not in FAMILIES:
            raise ValueError("Unknown family: {}. Valid families are {}".format(kind, FAMILIES))

        coefficients = np.array(coefficients, dtype=float).ravel()
        if not np.all(np.isfinite(coefficients)) or not np.isfinite(epsilon):
            raise ValueError("Ansatz coefficients must be finite")

        if kind == RADIAL_SPLINE and len(coefficients) < 1:
            raise ValueError("radial_spline needs at least one coefficient")

        self.kind = kind
        self.coefficients = coefficients
        self.epsilon = float(epsilon) if kind == EIGENMODE_PERTURBATION else 0.


    @classmethod
    def from_vector(cls, kind, vector):
        """
        Inverse of `vector`.
        """
        vector = np.asarray(vector, dtype=float)
        if kind == EIGENMODE_PERTURBATION:
            return cls(kind, vector[1:], epsilon=vector[0])
        return cls(kind, vector)


    def vector(self):
        """
        The optimization variables: epsilon first for eigenmode
        perturbations, then the coefficients.
        """
        if self.kind == EIGENMODE_PERTURBATION:
            return np.concatenate(([self.epsilon], self.coefficients))
        return self.coefficients.copy()


    def __repr__(self):
        return "Ansatz(kind={}, coefficients={}, epsilon={})".format(
            self.kind, list(self.coefficients), self.epsilon)



def _family_rule(kind, dp, size, count):
    if kind == RADIAL_SPLINE:
        panels = size*max(1, int(np.ceil(count/float(_PANEL_ORDER*size))))
        return radial_rule(dp.n, panels*_PANEL_ORDER, kind="adaptive_panel")
    return radial_rule(dp.n, count)


def _mode_amplitude(rule, dp, sphere_count=64):
    """
    s^{1+delta} e^{-s^2/4}, normalized so that the ell = 1 function has
    unit norm.
    """
    delta = lambda1(dp.d, dp.n, dp.alpha)/dp.alpha**2
    s = rule.nodes
    values = s**(1 + delta)*np.exp(-0.25*s**2)

    sphere = sphere_rule(dp.d, sphere_count)
    norm_sq = (integrate(spherical_harmonic(1, dp.d, sphere.theta)**2, sphere)
               *integrate(values**2, rule, measure=True))

    values = values/np.sqrt(norm_sq)
    return RadialField(rule, values, ((1 + delta)/s - 0.5*s)*values)


def _polynomial_factor(coefficients, s):
    powers = 2*np.arange(1, len(coefficients) + 1)
    factor = 1 + np.sum(coefficients[:, np.newaxis]*s**powers[:, np.newaxis], axis=0)
    derivative = np.sum((powers*coefficients)[:, np.newaxis]*s**(powers - 1)[:, np.newaxis], axis=0)
    return factor, derivative


def ansatz_candidate(ansatz, dp, rule=None, count=128, mode=None):
    """
    Build the candidate of `ansatz`.

    Parameters
    ----------
    ansatz : Ansatz
        Family member.
    dp : DerivedParams
        Derived parameters.
    rule : RadialRule, None, optional
        Rule to sample on. For "radial_spline" its nodes must cover the
        knots. Default is None, which builds the family rule.
    count : int, optional
        Number of radial nodes when `rule` is None. Default is 128.
    mode : RadialField, None, optional
        Normalized ell = 1 amplitude on `rule`. Default is None.

    Returns
    -------
    candidate : Candidate
        The candidate function.
    """
    if rule is None:
        rule = _family_rule(ansatz.kind, dp, len(ansatz.coefficients), count)

    g_star = optimizer_profile(rule, dp)
    s = rule.nodes

    if ansatz.kind == RADIAL_SPLINE:
        size = len(ansatz.coefficients)
        knots = tail_radius(dp.n)*(np.arange(size + 1)/float(size))**2
        spline = CubicSpline(knots, np.append(ansatz.coefficients, 0.), bc_type="natural")

        exponential = np.exp(spline(s))
        values = g_star.values*exponential
        derivative = (g_star.derivative + g_star.values*spline(s, 1))*exponential
        return Candidate(RadialField(rule, values, derivative))

    factor, factor_derivative = _polynomial_factor(ansatz.coefficients, s)
    radial = RadialField(rule, g_star.values*factor,
                         g_star.derivative*factor + g_star.values*factor_derivative)

    if ansatz.kind == GAUSSIAN_TIMES_POLY:
        return Candidate(radial)

    if mode is None:
        mode = _mode_amplitude(rule, dp)
    return Candidate(radial, angular_mode=(1, ansatz.epsilon*mode))



class DeficitSearch(object):
    """
    Minimization of the scale invariant deficit over candidate families.

    Parameters
    ----------
    seed : int, None, optional
        Seed of the restarts. Default is None.
    count : int, optional
        Number of radial quadrature nodes. Default is 128.
    sphere_count : int, optional
        Number of angular quadrature nodes. Default is 64.
    progress_bar : bool, optional
        Show a tqdm progress bar over the restarts. Default is False.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less
        severe than this level is ignored. If None, no logging is performed.
        Default logger level is "info".
    """
    def __init__(self, seed=None, count=128, sphere_count=64, progress_bar=False,
                 logger_level="info"):
        self.seed = seed
        self.count = count
        self.sphere_count = sphere_count
        self.progress_bar = progress_bar

        setup_module_logger(class_instance=self, level=logger_level)


    def _objective(self, kind, dp, rule, mode):
        def evaluate(vector):
            ansatz = Ansatz.from_vector(kind, vector)
            try:
                candidate = ansatz_candidate(ansatz, dp, rule=rule, mode=mode)
                report = deficit(candidate, dp, sphere_count=self.sphere_count)
            except (ValueError, FloatingPointError, OverflowError):
                return np.inf, None

            value = report.deficit/report.norm_sq
            if not np.isfinite(value):
                return np.inf, None
            return value, report

        return evaluate


    def minimize_deficit(self, params, family, budget=400, size=4, restarts=3,
                         spread=0.1, initial=None):
        """
        Minimize the scale invariant deficit at K* over one family.

        Parameters
        ----------
        params : ProblemParams
            Admissible raw parameters.
        family : {"radial_spline", "gaussian_times_poly", "eigenmode_perturbation"}
            The candidate family.
        budget : int, optional
            Total number of deficit evaluations, at least 100. Default is 400.
        size : int, optional
            Number of coefficients of the family. Default is 4.
        restarts : int, optional
            Number of Nelder-Mead runs sharing the budget. Each run after
            the first starts from the best point, perturbed with normal
            noise of standard deviation `spread`. Default is 3.
        spread : float, optional
            Size of the restart perturbation. Default is 0.1.
        initial : Ansatz, None, optional
            Starting point. Default is None, which starts at g* (all
            coefficients zero, epsilon = 0.01 for eigenmode perturbations).

        Returns
        -------
        result : SearchResult
            best_deficit is the smallest deficit per unit norm found,
            best_k_lower the constant K[g] the best candidate implies (a lower
            bound on the optimal constant, above K* exactly when the
            deficit is negative), ansatz the best family member, iterations
            the number of evaluations, converged whether the last run met
            its tolerances and history the best value after each
            evaluation.

        Raises
        ------
        ValueError
            If `budget` < 100, the family is unknown, or no evaluation is
            finite.
        """
        logger = get_logger(self)

        if budget < 100:
            raise ValueError("budget must be at least 100 evaluations, got {}".format(budget))
        if family not in FAMILIES:
            raise ValueError("Unknown family: {}. Valid families are {}".format(family, FAMILIES))

        minimum_dimension = 2 if family == EIGENMODE_PERTURBATION else 1
        dp = require_admissible(params, minimum_dimension=minimum_dimension)

        rule = _family_rule(family, dp, size, self.count)
        mode = _mode_amplitude(rule, dp, self.sphere_count) if family == EIGENMODE_PERTURBATION else None
        evaluate = self._objective(family, dp, rule, mode)

        if initial is None:
            epsilon = 0.01 if family == EIGENMODE_PERTURBATION else 0.
            initial = Ansatz(family, np.zeros(size), epsilon=epsilon)

        random_state = np.random.RandomState(self.seed)

        state = {"best": np.inf, "vector": initial.vector(), "report": None, "calls": 0}
        history = []

        def objective(vector):
            value, report = evaluate(vector)
            state["calls"] += 1
            if value < state["best"]:
                state["best"] = value
                state["vector"] = np.array(vector, dtype=float)
                state["report"] = report
            history.append(state["best"])
            return value

        logger.info("Minimizing the deficit over {} with {} evaluations".format(family, budget))

        per_run = max(budget//restarts, 1)
        converged = False
        start = initial.vector()

        for run in tqdm(range(restarts), desc="Searching", disable=not self.progress_bar):
            remaining = budget - state["calls"]
            if remaining <= 0:
                break

            result = minimize(objective, start, method="Nelder-Mead",
                              options={"maxfev": min(per_run, remaining),
                                       "xatol": 1e-8, "fatol": 1e-12})
            converged = bool(result.success)
            logger.debug("Run {}: deficit {!r} after {} evaluations".format(run, state["best"], result.nfev))

            start = state["vector"] + spread*random_state.normal(size=len(state["vector"]))

        if not np.isfinite(state["best"]):
            raise ValueError("Degenerate family: no finite deficit among {} evaluations".format(state["calls"]))

        best = Ansatz.from_vector(family, state["vector"])
        best_k_lower = implied_constant(state["report"], dp)

        logger.info("Best deficit {!r}, implied constant {!r}".format(state["best"], best_k_lower))

        return SearchResult(best_deficit=state["best"], best_k_lower=best_k_lower, ansatz=best,
                            iterations=state["calls"], converged=converged,
                            history=np.array(history))


    def sb_certificate(self, params, threshold=1e-8, grid=None):
        """
        Line search along g* + epsilon phi with phi the normalized ell = 1
        instability mode.

        Parameters
        ----------
        params : ProblemParams
            Admissible raw parameters with d >= 2.
        threshold : float, optional
            Breaking is certified when the deficit per unit norm is below
            -threshold. Default is 1e-8.
        grid : array_like, None, optional
            Amplitudes scanned before the bounded refinement. Default is None,
            which uses 41 log spaced values from 1e-4 to 1.

        Returns
        -------
        certificate : Certificate
            "certified_breaking" or "no_improvement", the best amplitude and
            its deficit per unit norm.
        """
        logger = get_logger(self)

        dp = require_admissible(params, minimum_dimension=2)
        rule = _family_rule(EIGENMODE_PERTURBATION, dp, 0, self.count)
        mode = _mode_amplitude(rule, dp, self.sphere_count)
        evaluate = self._objective(EIGENMODE_PERTURBATION, dp, rule, mode)

        line = lambda epsilon: evaluate([epsilon])[0]

        if grid is None:
            grid = np.geomspace(1e-4, 1, 41)

        grid = np.asarray(grid, dtype=float)
        values = np.array([line(epsilon) for epsilon in grid])
        index = int(np.argmin(values))
        best_epsilon, best_value = grid[index], values[index]

        lower = grid[max(index - 1, 0)]
        upper = grid[min(index + 1, len(grid) - 1)]
        if upper > lower:
            refined = minimize_scalar(line, bounds=(lower, upper), method="bounded",
                                      options={"xatol": 1e-10*upper})
            if refined.fun < best_value:
                best_epsilon, best_value = refined.x, refined.fun

        status = CERTIFIED_BREAKING if best_value < -threshold else NO_IMPROVEMENT
        logger.info("{}: epsilon {!r}, deficit {!r}".format(status, best_epsilon, best_value))

        return Certificate(status=status, epsilon=float(best_epsilon), deficit=float(best_value))
