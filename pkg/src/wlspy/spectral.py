from __future__ import absolute_import, division, print_function, unicode_literals

"""
Linear stability of the radial optimizer.

The second variation of the scale invariant deficit at g* in the first
nonradial mode reduces to the radial operator

    H a = -alpha^2 (a'' + (n - 1) a'/s) + (d - 1) a/s^2 + (alpha^2/4) s^2 a

on L^2(s^{n-1} ds). Its ground state is s^{1+delta} e^{-s^2/4} with
eigenvalue Lambda = lambda1 + alpha^2 (1 + n/2), delta = lambda1/alpha^2.
"""

from collections import namedtuple

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded, LinAlgError
from scipy.special import expit

from .constants import lambda1
from .exceptions import ConsistencyError, ConvergenceError
from .functionals import Candidate, spherical_harmonic
from .parameters import require_admissible
from .quadrature import (RadialField, RadialRule, radial_rule, sphere_rule,
                         integrate, tail_radius)

__all__ = ["EigenResult", "instability_mode", "hessian_form", "radial_eigensolve",
           "instability_certificate", "STABLE", "UNSTABLE", "MARGINAL"]


STABLE = "stable"
UNSTABLE = "unstable"
MARGINAL = "marginal"

EigenResult = namedtuple("EigenResult", ["lambda_numeric", "lambda_formula", "mode", "shift",
                                         "error_estimate", "mode_quotient"])


def instability_mode(dp, count=128):
    """
    The closed-form ground state s^{1+delta} e^{-s^2/4} Y_1 as a candidate.

    The rule carries the extra power s^{2 delta}, so that every integral of
    the second variation is computed exactly by Gauss quadrature.

    Parameters
    ----------
    dp : DerivedParams
        Derived parameters, d >= 2.
    count : int, optional
        Number of radial nodes. Default is 128.

    Returns
    -------
    candidate : Candidate
        Candidate with zero radial part and the mode as ell = 1 amplitude.
    """
    delta = lambda1(dp.d, dp.n, dp.alpha)/dp.alpha**2
    rule = radial_rule(dp.n, count, shift=2*delta)

    s = rule.nodes
    values = s**(1 + delta)*np.exp(-0.25*s**2)
    amplitude = RadialField(rule, values, ((1 + delta)/s - 0.5*s)*values)

    radial = RadialField(rule, np.zeros_like(s), np.zeros_like(s))
    return Candidate(radial, angular_mode=(1, amplitude))


def hessian_form(phi, dp, tol=1e-12, sphere_count=64):
    """
    Second variation of the scale invariant deficit at g* in the direction
    of an ell = 1 perturbation,

        ||D_alpha phi||^2 - alpha^2 (1 + n/2) ||phi||^2 + (alpha^2/4) int |phi|^2 s^2,

    all integrals against s^{n-1} ds d omega.

    Parameters
    ----------
    phi : Candidate
        Perturbation with an ell = 1 mode and no radial part.
    dp : DerivedParams
        Derived parameters.
    tol : float, optional
        Largest accepted radial component relative to the mode amplitude.
        Default is 1e-12.
    sphere_count : int, optional
        Number of angular nodes. Default is 64.

    Returns
    -------
    float
        The value of the quadratic form.

    Raises
    ------
    ValueError
        If phi has no ell = 1 mode or a radial component above `tol`.
    """
    if phi.is_radial or phi.angular_mode[0] != 1:
        raise ValueError("hessian_form requires a perturbation in the ell = 1 mode")

    ell, amplitude = phi.angular_mode
    radial = np.max(np.abs(phi.radial_profile.values))
    scale = max(1., np.max(np.abs(amplitude.values)))
    if radial > tol*scale:
        raise ValueError("The perturbation has a radial component of size {}".format(radial))

    rule = phi.rule
    s = rule.nodes
    a = amplitude.values
    da = amplitude.derivative

    sphere = sphere_rule(dp.d, sphere_count)
    harmonic_sq = integrate(spherical_harmonic(ell, dp.d, sphere.theta)**2, sphere)

    energy = integrate(dp.alpha**2*da**2 + (dp.d - 1)*a**2/s**2, rule, measure=True)
    norm = integrate(a**2, rule, measure=True)
    moment = integrate(a**2*s**2, rule, measure=True)

    return harmonic_sq*(energy - dp.alpha**2*(1 + 0.5*dp.n)*norm + 0.25*dp.alpha**2*moment)



class _RadialOperator(object):
    """
    Conservative three point discretization of H on a uniform grid in x,
    with s = log(1 + e^x), Dirichlet conditions at both ends.

    Stored in the symmetric form B^{-1/2} K B^{-1/2} with every coefficient
    assembled from logarithms.
    """
    def __init__(self, dp, interior, x_min, x_max):
        self.dp = dp
        h = (x_max - x_min)/(interior + 1.)
        self.h = h

        x = x_min + h*np.arange(1, interior + 1)
        x_half = x_min + h*(np.arange(interior + 1) + 0.5)

        self.s = np.logaddexp(0, x)
        self.s_x = expit(x)
        s_half = np.logaddexp(0, x_half)

        n, alpha = dp.n, dp.alpha
        self.log_p = (2*np.log(alpha) + (n - 1)*np.log(s_half)
                      - np.log(expit(x_half)) - 2*np.log(h))
        self.log_b = (n - 1)*np.log(self.s) + np.log(self.s_x)
        self.potential = (dp.d - 1)/self.s**2 + 0.25*alpha**2*self.s**2

        self.diagonal = (np.exp(self.log_p[:-1] - self.log_b)
                         + np.exp(self.log_p[1:] - self.log_b) + self.potential)
        self.off_diagonal = -np.exp(self.log_p[1:-1] - 0.5*(self.log_b[:-1] + self.log_b[1:]))


    def rayleigh_quotient(self, w):
        """
        Discrete energy over discrete norm of nodal values `w`, summed as
        positive terms.
        """
        padded = np.concatenate(([0.], w, [0.]))
        b = np.exp(self.log_b)

        energy = np.sum(np.exp(self.log_p)*np.diff(padded)**2) + np.sum(self.potential*b*w**2)
        return energy/np.sum(b*w**2)


    def ground_state(self, iterations=4):
        """
        Smallest eigenvalue by bisection, refined by Rayleigh quotient
        iteration. Returns the eigenvalue and nodal values of the
        eigenfunction.
        """
        _, vectors = eigh_tridiagonal(self.diagonal, self.off_diagonal,
                                      select="i", select_range=(0, 0), tol=1e-12)
        v = vectors[:, 0]
        scaling = np.exp(-0.5*self.log_b)
        value = self.rayleigh_quotient(v*scaling)

        banded = np.zeros((3, len(v)))
        banded[0, 1:] = self.off_diagonal
        banded[2, :-1] = self.off_diagonal

        for _ in range(iterations):
            banded[1] = self.diagonal - value
            try:
                v_new = solve_banded((1, 1), banded, v)
            except (LinAlgError, ValueError):
                break

            if not np.all(np.isfinite(v_new)):
                break

            v = v_new/np.linalg.norm(v_new)
            new_value = self.rayleigh_quotient(v*scaling)
            converged = abs(new_value - value) <= 1e-15*abs(new_value)
            value = new_value
            if converged:
                break

        w = v*scaling
        if np.sum(w) < 0:
            w = -w

        return value, w



def _domain(d, dp):
    mu = np.sqrt(0.25*(dp.n - 2)**2 + (d - 1)/dp.alpha**2)
    x_min = -12./mu
    x_max = tail_radius(dp.n)
    return x_min, x_max


def radial_eigensolve(d, dp, grid_size=2048, max_error=1e-2):
    """
    Ground state eigenvalue of H in the first nonradial mode.

    H is discretized on x with s = log(1 + e^x), which grades the grid
    geometrically towards the origin. The grid runs from s_0 = e^{-12/mu},
    mu = sqrt((n - 2)^2/4 + (d - 1)/alpha^2), where the ground state is
    below s_0^{2 mu} of its size, to the tail radius. The eigenvalue is
    computed on `grid_size` and 2 `grid_size` + 1 interior points and
    extrapolated with one Richardson step.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 2.
    dp : DerivedParams
        Derived parameters.
    grid_size : int, optional
        Number of interior points of the coarse grid. Default is 2048.
    max_error : float, optional
        Largest accepted difference between the two grids, relative to
        max(1, |Lambda|). Default is 1e-2.

    Returns
    -------
    result : EigenResult
        lambda_numeric = Lambda - alpha^2 (1 + n/2), lambda_formula from
        ``lambda1``, the normalized ground state on the fine grid, the
        shift alpha^2 (1 + n/2), the error estimate |Lambda_2 - Lambda_1|/3
        and the extrapolated Rayleigh quotient of the closed-form mode on
        the discrete operators, shifted like lambda_numeric.

    Raises
    ------
    ConvergenceError
        If the two grids disagree by more than `max_error`.
    ConsistencyError
        If the computed ground state changes sign.
    """
    if d < 2:
        raise ValueError("radial_eigensolve requires d >= 2, got d={}".format(d))
    if d != dp.d:
        raise ValueError("d={} does not match the derived parameters (d={})".format(d, dp.d))
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16, got {}".format(grid_size))

    x_min, x_max = _domain(d, dp)
    formula = lambda1(d, dp.n, dp.alpha)
    delta = formula/dp.alpha**2

    values = []
    quotients = []
    for interior in (grid_size, 2*grid_size + 1):
        operator = _RadialOperator(dp, interior, x_min, x_max)
        value, w = operator.ground_state()
        values.append(value)

        exact = operator.s**(1 + delta)*np.exp(-0.25*operator.s**2)
        quotients.append(operator.rayleigh_quotient(exact))

    coarse, fine = values
    if abs(fine - coarse) > max_error*max(1., abs(fine)):
        raise ConvergenceError(
            "Grid too coarse: eigenvalues {} and {} on {} and {} points".format(
                coarse, fine, grid_size, 2*grid_size + 1)
        )

    significant = np.abs(w) > 1e-8*np.max(np.abs(w))
    if np.any(w[significant] < 0):
        raise ConsistencyError("The computed ground state is not nodeless")

    extrapolated = fine + (fine - coarse)/3.
    mode_quotient = quotients[1] + (quotients[1] - quotients[0])/3.
    shift = dp.alpha**2*(1 + 0.5*dp.n)

    log_weights = np.log(operator.h*operator.s_x) + (dp.n - 1)*np.log(operator.s)
    rule = RadialRule(dp.n, operator.s, log_weights, "mapped_grid", scale=np.inf)
    norm = np.sqrt(integrate(w**2, rule, measure=True))
    mode = RadialField(rule, w/norm)

    return EigenResult(lambda_numeric=extrapolated - shift,
                       lambda_formula=formula,
                       mode=mode,
                       shift=shift,
                       error_estimate=abs(fine - coarse)/3.,
                       mode_quotient=mode_quotient - shift)


def instability_certificate(params, tol=1e-8, count=128):
    """
    Decide linear stability of the radial optimizer from two independent
    criteria, the closed form lambda1 and the quadratic form on the
    explicit mode.

    Parameters
    ----------
    params : ProblemParams
        Admissible parameters with d >= 2.
    tol : float, optional
        Values within `tol` of zero are marginal. Default is 1e-8.
    count : int, optional
        Number of radial nodes of the quadrature. Default is 128.

    Returns
    -------
    status : str
        "unstable", "stable" or "marginal".

    Raises
    ------
    InadmissibleParametersError
        If `params` is not admissible or d < 2.
    ConsistencyError
        If the two criteria disagree beyond `tol`.
    """
    dp = require_admissible(params, minimum_dimension=2)

    formula = lambda1(dp.d, dp.n, dp.alpha)
    mode = instability_mode(dp, count=count)

    sphere = sphere_rule(dp.d)
    amplitude = mode.angular_mode[1]
    norm = (integrate(spherical_harmonic(1, dp.d, sphere.theta)**2, sphere)
            *integrate(amplitude.values**2, mode.rule, measure=True))
    quotient = hessian_form(mode, dp)/norm

    if abs(formula) <= tol and abs(quotient) <= tol:
        return MARGINAL

    if abs(formula - quotient) > tol*max(1., abs(formula)) and np.sign(formula) != np.sign(quotient):
        raise ConsistencyError(
            "lambda1={} and the quadratic form quotient {} disagree in sign".format(formula, quotient)
        )

    if abs(formula) <= tol:
        return MARGINAL

    return UNSTABLE if formula < 0 else STABLE
