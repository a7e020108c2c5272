from __future__ import absolute_import, division, print_function, unicode_literals

"""
Closed-form constants.

Everything is evaluated in log form through ``scipy.special.gammaln``
since n/2 can be large and the constants mix huge and tiny factors.
"""

from collections import namedtuple

import numpy as np
from scipy.special import gammaln

from .exceptions import InadmissibleParametersError

__all__ = ["ConstantsReport", "HyperSchedule", "log_sphere_volume", "log_c_nd",
           "c_star", "c_star_alternative", "evaluate_constants", "lambda1",
           "delta_coefficient", "circle_delta_coefficient", "hyper_schedule",
           "exponent_schedule", "classical_lsi_constant"]


ConstantsReport = namedtuple("ConstantsReport",
                             ["c_nd", "c_star", "k_star", "y_star", "sigma_d"])

HyperSchedule = namedtuple("HyperSchedule", ["sigma", "t_star", "h_const"])


def log_sphere_volume(d):
    """
    Logarithm of |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
    """
    return np.log(2) + 0.5*d*np.log(np.pi) - gammaln(0.5*d)


def log_c_nd(d, n):
    """
    Logarithm of the squared normalization of the radial optimizer,
    log c_{n,d}^2 = log Gamma(d/2) - (n/2) log 2 - (d/2) log pi - log Gamma(n/2).
    """
    return gammaln(0.5*d) - 0.5*n*np.log(2) - 0.5*d*np.log(np.pi) - gammaln(0.5*n)


def c_star(d, n, alpha):
    """
    The constant C* of the symmetric range.

    Parameters
    ----------
    d : int
        Euclidean dimension.
    n : float
        Artificial dimension.
    alpha : float
        Anisotropy exponent.

    Returns
    -------
    float
        (n/2) log(2/(n e)) - (n - 1) log alpha - (d/2) log pi
        + log Gamma(d/2) - log Gamma(n/2).
    """
    return (0.5*n*np.log(2/(n*np.e)) - (n - 1)*np.log(alpha)
            - 0.5*d*np.log(np.pi) + gammaln(0.5*d) - gammaln(0.5*n))


def c_star_alternative(d, n, alpha):
    """
    C* written as -log((sigma_d/2) alpha^{n-1} (n e/2)^{n/2} Gamma(n/2)),
    the value reached by the p -> 1 limit of the interpolation constants.
    """
    return -(log_sphere_volume(d) - np.log(2) + (n - 1)*np.log(alpha)
             + 0.5*n*np.log(0.5*n*np.e) + gammaln(0.5*n))


def classical_lsi_constant(d):
    """
    (d/2) log(2/(pi e d)), the unweighted Euclidean constant.
    """
    return 0.5*d*np.log(2/(np.pi*np.e*d))


def evaluate_constants(dp, d=None):
    """
    Evaluate the closed-form constants for derived parameters `dp`.

    Parameters
    ----------
    dp : DerivedParams
        Derived parameters.
    d : int, None, optional
        Euclidean dimension. Must agree with ``dp.d`` if given.

    Returns
    -------
    report : ConstantsReport
        c_nd (normalization of the radial optimizer), c_star, k_star
        (c_star - log alpha), y_star (2 log c_nd - n/2, the entropy of the
        squared optimizer) and sigma_d (area of the unit sphere).

    Raises
    ------
    InadmissibleParametersError
        If n <= 0 or alpha <= 0.
    """
    if d is None:
        d = dp.d
    elif d != dp.d:
        raise ValueError("d={} does not match the derived parameters (d={})".format(d, dp.d))

    if dp.n <= 0:
        raise InadmissibleParametersError("n must be positive, got {}".format(dp.n))
    if dp.alpha <= 0:
        raise InadmissibleParametersError("alpha must be positive, got {}".format(dp.alpha))

    log_c2 = log_c_nd(d, dp.n)
    constant = c_star(d, dp.n, dp.alpha)

    return ConstantsReport(c_nd=np.exp(0.5*log_c2),
                           c_star=constant,
                           k_star=constant - np.log(dp.alpha),
                           y_star=log_c2 - 0.5*dp.n,
                           sigma_d=np.exp(log_sphere_volume(d)))


def lambda1(d, n, alpha):
    """
    Lowest eigenvalue of the second variation in the first nonradial mode,
    (alpha/2)(sqrt(4(d - 1) + alpha^2 (n - 2)^2) - alpha n).

    Negative exactly when alpha > alpha_fs.
    """
    if d < 2:
        raise ValueError("lambda1 requires d >= 2, got d={}".format(d))
    if n <= 1:
        raise ValueError("lambda1 requires n > 1, got n={}".format(n))
    if alpha <= 0:
        raise ValueError("lambda1 requires alpha > 0, got alpha={}".format(alpha))

    return 0.5*alpha*(np.sqrt(4*(d - 1) + alpha**2*(n - 2)**2) - alpha*n)


def delta_coefficient(d, n):
    """
    Coefficient of the quartic term in the integral estimate on the sphere.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 2.
    n : float
        Artificial dimension, n >= d.

    Returns
    -------
    float
        (n - d)(4(d + 1)(d - 2) + (4d - 5)(n - d)) / (4(n - 1)(n - 2)(d + 1)^2)
        for d >= 3 and 1/12 for d = 2.

    See also
    --------
    circle_delta_coefficient
    """
    if d < 2:
        raise ValueError("delta_coefficient requires d >= 2, got d={}".format(d))
    if n < d:
        raise ValueError("delta_coefficient requires n >= d, got n={}, d={}".format(n, d))

    if d == 2:
        return 1/12.

    return ((n - d)*(4*(d + 1)*(d - 2) + (4*d - 5)*(n - d))
            / (4*(n - 1)*(n - 2)*(d + 1)**2))


def circle_delta_coefficient(n):
    """
    Quartic coefficient (n - 2)/(12 (n - 1)) obtained on the circle.

    This is the d >= 3 expression evaluated at d = 2. It is the value the
    circle argument supports for every n > 2 and tends to 1/12 as n grows.
    """
    if n <= 2:
        raise ValueError("circle_delta_coefficient requires n > 2, got n={}".format(n))

    return (n - 2)/(12.*(n - 1))


def hyper_schedule(n, c, q, r):
    """
    Waiting time and constant of the hypercontractive estimate.

    Parameters
    ----------
    n : float
        Artificial dimension.
    c : float
        Logarithmic Sobolev constant to use.
    q, r : float
        Exponents, 1 < q < r.

    Returns
    -------
    schedule : HyperSchedule
        sigma = (2/n) e^{1 - 2c/n}, t_star = log((r - 1)/(q - 1)) / (4 sigma)
        and h_const = t_star^{(n/2)(r - q)/(q r)}.

    Raises
    ------
    ValueError
        If r <= q, q <= 1 or n <= 0.
    """
    if r <= q:
        raise ValueError("hyper_schedule requires r > q, got q={}, r={}".format(q, r))
    if q <= 1:
        raise ValueError("hyper_schedule requires q > 1, got q={}".format(q))
    if n <= 0:
        raise ValueError("hyper_schedule requires n > 0, got n={}".format(n))

    sigma = 2./n*np.exp(1 - 2.*c/n)
    t_star = np.log((r - 1.)/(q - 1.))/(4*sigma)
    h_const = t_star**(0.5*n*(r - q)/(q*r))

    return HyperSchedule(sigma=sigma, t_star=t_star, h_const=h_const)


def exponent_schedule(sigma, q, s):
    """
    Exponent 1 + (q - 1) e^{4 sigma s} followed along the flow, so that the
    schedule of ``hyper_schedule`` reaches r at t_star.
    """
    return 1 + (q - 1)*np.exp(4*sigma*np.asarray(s))
