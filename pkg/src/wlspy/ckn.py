from __future__ import absolute_import, division, print_function, unicode_literals

"""
Subcritical Caffarelli-Kohn-Nirenberg constants and their p -> 1 limit.

For 1 < p <= p_star the optimal constant of the interpolation inequality
in the symmetry range is reached by (1 + |x|^{2+beta-gamma})^{-1/(p-1)} and
has a closed form. Rescaled as 4(C_p - 1)/(p - 1), it tends to the
logarithmic Sobolev constant C* as p -> 1.
"""

from collections import namedtuple

import numpy as np
from scipy.special import gammaln

from .constants import log_sphere_volume
from .exceptions import ConsistencyError, ConvergenceError
from .parameters import classify, require_admissible

__all__ = ["CknPoint", "theta", "zeta_definition", "zeta_reduced", "b_of_p",
           "ckn_constants", "log_ckn_constant", "limit_probe", "limit_estimates",
           "aubin_talenti_eval", "aubin_talenti_limit_profile", "GAMMA_ASYMPTOTIC"]


GAMMA_ASYMPTOTIC = 1e6

CknPoint = namedtuple("CknPoint", ["p", "theta", "zeta", "b", "c_star_p", "k_star_p", "region"])


def theta(params, p):
    """
    Scaling exponent (d - gamma)(p - 1)/(p((d + 2 + beta - 2 gamma) - p(d - 2 - beta))).
    """
    d, beta, gamma = params
    return (d - gamma)*(p - 1)/(p*((d + 2 + beta - 2*gamma) - p*(d - 2 - beta)))


def zeta_definition(theta_value, p):
    """
    theta/2 + (1 - theta)/(p + 1) - 1/(2p).
    """
    return 0.5*theta_value + (1 - theta_value)/(p + 1) - 0.5/p


def b_of_p(n, p):
    return n + 2 - p*(n - 2)


def zeta_reduced(n, p):
    """
    (p - 1)/(p b(p)), equal to `zeta_definition` on the admissible set.
    """
    return (p - 1)/(p*b_of_p(n, p))


def _log_gamma_ratio(x, shift):
    # log Gamma(x - shift) - log Gamma(x)
    if x > GAMMA_ASYMPTOTIC:
        return -shift*np.log(x)
    return gammaln(x - shift) - gammaln(x)


def _check_exponent(dp, p):
    if not p > 1:
        raise ValueError("p must be > 1, got {}".format(p))
    if p > dp.p_star*(1 + 1e-14):
        raise ValueError("p must not exceed p_star = {}, got {}".format(dp.p_star, p))


def _log_inverse_k(dp, theta_value, zeta, p):
    n = dp.n
    b = b_of_p(n, p)
    x = 2*p/(p - 1)

    if b <= 0 or x <= 0.5*n:
        raise ValueError("The closed form is undefined at p={} for n={}".format(p, n))

    return (theta_value*np.log(dp.alpha)
            + 0.5*theta_value*np.log(4*n/(b*(p - 1)))
            + (1 - theta_value)/(p + 1)*np.log(2*(p + 1)/b)
            + zeta*(log_sphere_volume(dp.d) - np.log(2) + gammaln(0.5*n)
                    + _log_gamma_ratio(x, 0.5*n)))


def ckn_constants(params, p):
    """
    Exponents and optimal constants of the interpolation inequality.

    Parameters
    ----------
    params : ProblemParams
        Admissible raw parameters.
    p : float
        Exponent, 1 < p <= p_star.

    Returns
    -------
    point : CknPoint
        p, theta, zeta, b(p), c_star_p = alpha^zeta k_star_p, k_star_p and
        the region tag of `params`. The constants are optimal only in the
        symmetry range.

    Raises
    ------
    ValueError
        If p is outside (1, p_star].
    """
    dp = require_admissible(params)
    _check_exponent(dp, p)

    theta_value = theta(params, p)
    zeta = zeta_reduced(dp.n, p)
    log_k = -_log_inverse_k(dp, theta_value, zeta, p)

    return CknPoint(p=p, theta=theta_value, zeta=zeta, b=b_of_p(dp.n, p),
                    c_star_p=np.exp(zeta*np.log(dp.alpha) + log_k),
                    k_star_p=np.exp(log_k),
                    region=classify(params))


def log_ckn_constant(params, p):
    """
    log c_star_p, accurate for p close to 1.
    """
    dp = require_admissible(params)
    _check_exponent(dp, p)

    zeta = zeta_reduced(dp.n, p)
    return zeta*np.log(dp.alpha) - _log_inverse_k(dp, theta(params, p), zeta, p)


def _extrapolate(steps, values):
    """
    Diagonal of the Neville table extrapolating `values` to step 0.
    """
    steps = np.asarray(steps, dtype=float)
    table = list(np.asarray(values, dtype=float))
    diagonal = [table[0]]

    for i in range(1, len(steps)):
        row = [values[i]]
        for j in range(1, i + 1):
            previous = table[j - 1]
            row.append(row[j - 1] + (row[j - 1] - previous)*steps[i]/(steps[i - j] - steps[i]))
        table = row
        diagonal.append(row[-1])

    return np.array(diagonal)


def _default_sequence():
    return 1 + 2.**-np.arange(6, 17)


def limit_estimates(params, p_seq=None):
    """
    Extrapolated estimates of lim 4(c_star_p - 1)/(p - 1).

    Parameters
    ----------
    params : ProblemParams
        Admissible raw parameters.
    p_seq : array_like, None, optional
        Strictly decreasing exponents above 1. Default is None, which uses
        p = 1 + 2^-k, k = 6, ..., 16.

    Returns
    -------
    linear, logarithmic : numpy.array
        Diagonals of the extrapolation of 4(c_star_p - 1)/(p - 1) and of
        4 log(c_star_p)/(p - 1).
    """
    p_seq = _default_sequence() if p_seq is None else np.asarray(p_seq, dtype=float)

    if len(p_seq) < 3:
        raise ValueError("At least three exponents are required, got {}".format(len(p_seq)))
    if np.any(p_seq <= 1) or np.any(np.diff(p_seq) >= 0):
        raise ValueError("p_seq must be strictly decreasing towards 1")

    steps = p_seq - 1
    logs = np.array([log_ckn_constant(params, p) for p in p_seq])

    linear = _extrapolate(steps, 4*np.expm1(logs)/steps)
    logarithmic = _extrapolate(steps, 4*logs/steps)

    return linear, logarithmic


def limit_probe(params, p_seq=None, tol=1e-6):
    """
    Limit of 4(c_star_p - 1)/(p - 1) as p -> 1.

    Parameters
    ----------
    params : ProblemParams
        Raw parameters in the symmetry range.
    p_seq : array_like, None, optional
        Strictly decreasing exponents above 1. Default is None, which uses
        p = 1 + 2^-k, k = 6, ..., 16.
    tol : float, optional
        Largest accepted difference between the last two extrapolated
        estimates. Default is 1e-6.

    Returns
    -------
    float
        The extrapolated limit, to be compared with ``constants.c_star``.

    Raises
    ------
    ConvergenceError
        If the last two estimates differ by more than `tol`.
    ConsistencyError
        If the limits of the quotient and of its logarithmic variant
        disagree.
    """
    linear, logarithmic = limit_estimates(params, p_seq)

    change = abs(linear[-1] - linear[-2])
    if not change <= tol:
        raise ConvergenceError("Extrapolation did not converge, last estimates differ by {:g}".format(change))

    if abs(linear[-1] - logarithmic[-1]) > 10*tol*max(1., abs(linear[-1])):
        raise ConsistencyError("Limits of the quotient ({!r}) and its logarithm ({!r}) disagree".format(
            linear[-1], logarithmic[-1]))

    return float(linear[-1])


def aubin_talenti_eval(params, p, x_abs):
    """
    The optimal profile (1 + |x|^{2+beta-gamma})^{-1/(p-1)}.
    """
    dp = require_admissible(params)
    _check_exponent(dp, p)

    d, beta, gamma = params
    x_abs = np.asarray(x_abs, dtype=float)
    return np.exp(-np.log1p(x_abs**(2 + beta - gamma))/(p - 1))


def aubin_talenti_limit_profile(p, s):
    """
    (1 + ((p - 1)/2) s^2)^{1/(1 - p)}, the optimal profile in
    alpha-coordinates after rescaling. Tends to exp(-s^2/2) as p -> 1.
    """
    if not p > 1:
        raise ValueError("p must be > 1, got {}".format(p))

    s = np.asarray(s, dtype=float)
    return np.exp(np.log1p(0.5*(p - 1)*s**2)/(1 - p))
