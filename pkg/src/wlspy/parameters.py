from __future__ import absolute_import, division, print_function, unicode_literals

"""
The (beta, gamma) parameter plane.

Raw parameters, every scalar derived from them, and the split of the
admissible set into the symmetry and symmetry breaking regions.
"""

from collections import namedtuple

import numpy as np
import chaospy as cp

from .exceptions import InadmissibleParametersError

__all__ = ["ProblemParams", "DerivedParams", "Region", "derive", "classify",
           "is_admissible", "from_artificial", "sample_admissible",
           "require_admissible"]


class ProblemParams(namedtuple("ProblemParams", ["d", "beta", "gamma"])):
    """
    Raw parameters of the weighted inequality.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 1.
    beta : float
        Exponent of the weight |x|^-beta in the gradient term.
    gamma : float
        Exponent of the weight |x|^-gamma in the entropy term.
    """
    __slots__ = ()

    def __new__(cls, d, beta, gamma):
        if int(d) != d or d < 1:
            raise ValueError("d must be an integer >= 1, got {}".format(d))

        return super(ProblemParams, cls).__new__(cls, int(d), float(beta), float(gamma))



class DerivedParams(namedtuple("DerivedParams",
                               ["d", "n", "alpha", "nu", "p_star", "alpha_fs", "beta_fs"])):
    """
    Scalars derived from a ProblemParams.

    Attributes
    ----------
    d : int
        Euclidean dimension.
    n : float
        Artificial dimension 2(d - gamma)/(beta + 2 - gamma).
    alpha : float
        1 + (beta - gamma)/2.
    nu : float
        d - n, the exponent of the common weight in alpha-coordinates.
    p_star : float
        (d - gamma)/(d - 2 - beta), infinite when the denominator vanishes.
    alpha_fs : float
        sqrt((d - 1)/(n - 1)), nan when n <= 1.
    beta_fs : float or None
        The Felli-Schneider value d - 2 - sqrt((d - gamma)^2 - 4(d - 1)),
        None when the square root is not real.
    """
    __slots__ = ()



class Region(object):
    """
    Region tags returned by ``classify``.
    """
    INADMISSIBLE = "Inadmissible"
    SYMMETRY = "Symmetry"
    SYMMETRY_BREAKING = "SymmetryBreaking"
    FS_BOUNDARY = "FSBoundary"

    tags = (INADMISSIBLE, SYMMETRY, SYMMETRY_BREAKING, FS_BOUNDARY)



def derive(params):
    """
    Compute every derived scalar of `params`.

    Admissibility is not checked.

    Parameters
    ----------
    params : ProblemParams
        Raw parameters.

    Returns
    -------
    dp : DerivedParams
        The derived parameters.

    Raises
    ------
    InadmissibleParametersError
        If beta + 2 - gamma = 0, where n is undefined.
    """
    d, beta, gamma = params

    denominator = beta + 2 - gamma
    if denominator == 0:
        raise InadmissibleParametersError(
            "beta + 2 - gamma = 0 for beta={}, gamma={}: n is undefined".format(beta, gamma)
        )

    n = 2*(d - gamma)/denominator
    alpha = 1 + (beta - gamma)/2.

    if d - 2 - beta == 0:
        p_star = np.inf
    else:
        p_star = (d - gamma)/(d - 2 - beta)

    if n > 1:
        alpha_fs = np.sqrt((d - 1)/(n - 1))
    else:
        alpha_fs = np.nan

    discriminant = (d - gamma)**2 - 4*(d - 1)
    if discriminant >= 0:
        beta_fs = d - 2 - np.sqrt(discriminant)
    else:
        beta_fs = None

    return DerivedParams(d=d, n=n, alpha=alpha, nu=d - n, p_star=p_star,
                         alpha_fs=alpha_fs, beta_fs=beta_fs)


def is_admissible(params):
    """
    Check gamma - 2 < beta < (d - 2) gamma / d, gamma < d and
    (beta, gamma) != (0, 0).

    Parameters
    ----------
    params : ProblemParams
        Raw parameters.

    Returns
    -------
    bool
        True if `params` is admissible.
    """
    d, beta, gamma = params

    if beta == 0 and gamma == 0:
        return False

    return gamma < d and gamma - 2 < beta < (d - 2)*gamma/d


def require_admissible(params, minimum_dimension=1):
    """
    Derive `params`, raising if they are not admissible.

    Parameters
    ----------
    params : ProblemParams
        Raw parameters.
    minimum_dimension : int, optional
        Smallest dimension accepted by the caller. Default is 1.

    Returns
    -------
    dp : DerivedParams
        The derived parameters.

    Raises
    ------
    InadmissibleParametersError
        If `params` is not admissible or d < `minimum_dimension`.
    """
    if not is_admissible(params):
        raise InadmissibleParametersError(
            "(d={}, beta={}, gamma={}) is not admissible".format(*params)
        )

    if params.d < minimum_dimension:
        raise InadmissibleParametersError(
            "d={} is not supported here, d >= {} required".format(params.d, minimum_dimension)
        )

    return derive(params)


def classify(params, tol=1e-12):
    """
    Place `params` in the parameter plane.

    Parameters
    ----------
    params : ProblemParams
        Raw parameters.
    tol : float, optional
        Relative tolerance for membership of the Felli-Schneider curve.
        Default is 1e-12.

    Returns
    -------
    tag : str
        One of the tags of ``Region``.
    """
    if not is_admissible(params):
        return Region.INADMISSIBLE

    if params.d == 1:
        return Region.SYMMETRY

    dp = derive(params)
    if params.gamma >= 0 or dp.beta_fs is None:
        return Region.SYMMETRY

    if abs(params.beta - dp.beta_fs) <= tol*max(1., abs(dp.beta_fs)):
        return Region.FS_BOUNDARY

    if params.beta > dp.beta_fs:
        return Region.SYMMETRY_BREAKING

    return Region.SYMMETRY


def from_artificial(d, n, alpha):
    """
    Raw parameters with artificial dimension `n` and anisotropy `alpha`.

    Inverts n = 2(d - gamma)/(beta + 2 - gamma) and
    alpha = 1 + (beta - gamma)/2.

    Parameters
    ----------
    d : int
        Euclidean dimension.
    n : float
        Artificial dimension.
    alpha : float
        Anisotropy exponent, alpha > 0.

    Returns
    -------
    params : ProblemParams
        The raw parameters.
    """
    if alpha <= 0:
        raise InadmissibleParametersError("alpha must be positive, got {}".format(alpha))
    if n <= 0:
        raise InadmissibleParametersError("n must be positive, got {}".format(n))

    gamma = d - n*alpha
    beta = gamma + 2*alpha - 2

    return ProblemParams(d, beta, gamma)


def sample_admissible(d, size, gamma_range=(-6., None), margin=1e-3, rule="M", seed=None):
    """
    Draw admissible parameter pairs.

    gamma is drawn uniformly in `gamma_range` and beta uniformly in the
    admissible interval (gamma - 2, (d - 2) gamma / d) for that gamma,
    shrunk by `margin` times its width at both ends.

    Parameters
    ----------
    d : int
        Euclidean dimension.
    size : int
        Number of samples.
    gamma_range : tuple, optional
        Lower and upper bound for gamma. An upper bound of None means d.
        Default is (-6, None).
    margin : float, optional
        Relative margin to the ends of the beta interval. Default is 1e-3.
    rule : str, optional
        chaospy sampling rule. Default is "M" (Hammersley).
    seed : int, None, optional
        Seed for the random number generator. Default is None.

    Returns
    -------
    samples : list of ProblemParams
        Admissible parameters.
    """
    if seed is not None:
        np.random.seed(seed)

    low, high = gamma_range
    if high is None:
        high = d

    if not low < high <= d:
        raise ValueError("gamma_range must satisfy low < high <= d, got {}".format(gamma_range))

    distribution = cp.J(cp.Uniform(low, high), cp.Uniform(margin, 1 - margin))
    nodes = np.atleast_2d(distribution.sample(size, rule))

    samples = []
    for gamma, u in nodes.T:
        beta_low = gamma - 2
        beta_high = (d - 2)*gamma/d
        params = ProblemParams(d, beta_low + u*(beta_high - beta_low), gamma)
        if is_admissible(params):
            samples.append(params)

    return samples
