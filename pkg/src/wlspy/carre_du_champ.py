from __future__ import absolute_import, division, print_function, unicode_literals

"""
Operators and curvature functionals of the entropy method.

Pressures are azimuthal functions p(r, theta) given with analytic partial
derivatives up to third order on a tensor grid. All operators act on the
supplied derivatives, nothing is differentiated numerically.
"""

from collections import namedtuple

import numpy as np

from .constants import delta_coefficient
from .quadrature import integrate

__all__ = ["PressureField", "AngularProfile", "IdentityReport", "OPERATORS",
           "pressure_from_terms", "random_pressure_terms", "apply_operator",
           "k_bulk", "k_sphere", "sphere_inequality_margin",
           "fisher_dissipation_identity"]


OPERATORS = ("D_alpha", "L_alpha", "laplace_beltrami")

IdentityReport = namedtuple("IdentityReport",
                            ["max_residual", "hessian_term", "mixed_term", "k_term", "direct"])

_ORDERS = [(i, j) for i in range(4) for j in range(4) if i + j <= 3]



class PressureField(object):
    """
    Azimuthal pressure p(r, theta) sampled with its partial derivatives.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 2.
    r : array_like
        Positive radial nodes.
    theta : array_like
        Polar angles. For d >= 3 they must avoid the poles.
    derivatives : dict
        Maps (i, j) to the samples of d^{i+j} p / dr^i dtheta^j, arrays of
        shape (len(r), len(theta)).
    radial_weights, angular_weights : array_like, None, optional
        Quadrature weights for r^{n-1} dr and the sphere measure, used by
        integral checks. Default is None.
    evaluator : callable, None, optional
        ``evaluator(i, j, r, theta)`` returning the exact partial
        derivative on arbitrary 2-D arrays, used for finite difference
        spot checks. Default is None.
    """
    def __init__(self, d, r, theta, derivatives, radial_weights=None,
                 angular_weights=None, evaluator=None):
        if d < 2:
            raise ValueError("PressureField requires d >= 2, got d={}".format(d))

        self.d = d
        self.r = np.asarray(r, dtype=float)
        self.theta = np.asarray(theta, dtype=float)

        if np.any(self.r <= 0):
            raise ValueError("Radial nodes must be positive")

        shape = (len(self.r), len(self.theta))
        self.derivatives = {}
        for order, values in derivatives.items():
            values = np.asarray(values, dtype=float)
            if values.shape != shape:
                raise ValueError("Derivative {} has shape {}, the grid has shape {}".format(order, values.shape, shape))
            self.derivatives[order] = values

        self.radial_weights = radial_weights
        self.angular_weights = angular_weights
        self.evaluator = evaluator

        self.r_grid, self.theta_grid = np.meshgrid(self.r, self.theta, indexing="ij")


    def partial(self, i, j):
        """
        The samples of d^{i+j} p / dr^i dtheta^j.

        Raises
        ------
        ValueError
            If the derivative was not supplied.
        """
        try:
            return self.derivatives[(i, j)]
        except KeyError:
            raise ValueError("Missing derivative order (r: {}, theta: {})".format(i, j))


    def finite_difference_check(self, step=1e-4):
        """
        Largest mismatch between the supplied derivatives and central
        differences of the next lower order, relative to the largest
        derivative magnitude.

        Raises
        ------
        ValueError
            If the field has no evaluator.
        """
        if self.evaluator is None:
            raise ValueError("A finite difference check requires an evaluator")

        r, theta = self.r_grid, self.theta_grid
        mismatch = 0.
        scale = 0.
        for (i, j), values in self.derivatives.items():
            scale = max(scale, np.max(np.abs(values)))
            if i > 0:
                difference = (self.evaluator(i - 1, j, r + step, theta)
                              - self.evaluator(i - 1, j, r - step, theta))/(2*step)
                mismatch = max(mismatch, np.max(np.abs(difference - values)))
            if j > 0:
                difference = (self.evaluator(i, j - 1, r, theta + step)
                              - self.evaluator(i, j - 1, r, theta - step))/(2*step)
                mismatch = max(mismatch, np.max(np.abs(difference - values)))

        return mismatch/max(scale, np.finfo(float).tiny)



def _power_gaussian_derivatives(k, a, r):
    """
    r^k e^{-a r^2} and its first three derivatives.
    """
    e = [np.exp(-a*r**2)]
    e.append(-2*a*r*e[0])
    e.append((4*a**2*r**2 - 2*a)*e[0])
    e.append((-8*a**3*r**3 + 12*a**2*r)*e[0])

    powers = [r**k, k*r**(k - 1), k*(k - 1)*r**(k - 2), k*(k - 1)*(k - 2)*r**(k - 3)]

    binomial = [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1]]
    return [sum(binomial[m][i]*powers[i]*e[m - i] for i in range(m + 1)) for m in range(4)]


def _cosine_derivatives(m, theta):
    return [np.cos(m*theta), -m*np.sin(m*theta), -m**2*np.cos(m*theta), m**3*np.sin(m*theta)]


def _term_partial(terms, i, j, r, theta):
    total = np.zeros(np.broadcast(r, theta).shape)
    for c, k, a, m in terms:
        total = total + c*_power_gaussian_derivatives(k, a, r)[i]*_cosine_derivatives(m, theta)[j]
    return total


def pressure_from_terms(terms, d, r=None, theta=None, rule=None, sphere=None):
    """
    Pressure given as a sum of separable terms c r^k e^{-a r^2} cos(m theta).

    Parameters
    ----------
    terms : list of tuple
        ``(c, k, a, m)`` for every term, with integer m >= 0.
    d : int
        Euclidean dimension.
    r, theta : array_like, None, optional
        Grid nodes. Ignored when `rule`, respectively `sphere`, is given.
    rule : RadialRule, None, optional
        Radial rule providing nodes and the weights of r^{n-1} dr.
    sphere : SphereRule, None, optional
        Angular rule providing nodes and weights.

    Returns
    -------
    field : PressureField
        The pressure with every derivative up to third order.
    """
    terms = [tuple(term) for term in terms]
    radial_weights = None
    angular_weights = None

    if rule is not None:
        r = rule.nodes
        radial_weights = rule.measure_weights
    if sphere is not None:
        theta = sphere.theta
        angular_weights = sphere.weights

    if r is None or theta is None:
        raise ValueError("Both radial and angular nodes are required")

    r_grid, theta_grid = np.meshgrid(np.asarray(r, dtype=float), np.asarray(theta, dtype=float), indexing="ij")

    def evaluator(i, j, r_values, theta_values):
        return _term_partial(terms, i, j, r_values, theta_values)

    derivatives = {}
    for i, j in _ORDERS:
        derivatives[(i, j)] = evaluator(i, j, r_grid, theta_grid)

    return PressureField(d, r, theta, derivatives, radial_weights=radial_weights,
                         angular_weights=angular_weights, evaluator=evaluator)


def random_pressure_terms(count=3, seed=None, max_power=3, max_frequency=3):
    """
    Random separable terms for ``pressure_from_terms``: polynomial times
    Gaussian times cosine, with integer powers and frequencies.
    """
    random = np.random.RandomState(seed)

    terms = []
    for _ in range(count):
        terms.append((random.uniform(-1, 1),
                      int(random.randint(0, max_power + 1)),
                      random.uniform(0, 0.5),
                      int(random.randint(0, max_frequency + 1))))

    return terms


def _laplace_beltrami(d, theta, f_theta, f_thetatheta):
    if d == 2:
        return f_thetatheta
    return f_thetatheta + (d - 2)*np.cos(theta)/np.sin(theta)*f_theta


def apply_operator(which, field, dp):
    """
    Apply D_alpha, L_alpha or the Laplace-Beltrami operator to `field`.

    Parameters
    ----------
    which : {"D_alpha", "L_alpha", "laplace_beltrami"}
        The operator.
    field : PressureField
        The function, with the derivatives the operator needs.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    result : numpy.array or tuple
        For D_alpha the radial and angular components
        (alpha p_r, p_theta / r). L_alpha p = alpha^2 (p_rr + (n - 1) p_r / r)
        + Delta_omega p / r^2 and Delta_omega p = p_thetatheta
        + (d - 2) cot(theta) p_theta.

    Raises
    ------
    ValueError
        If `which` is unknown or a derivative is missing.
    """
    r = field.r_grid

    if which == "D_alpha":
        return dp.alpha*field.partial(1, 0), field.partial(0, 1)/r

    if which == "laplace_beltrami":
        return _laplace_beltrami(field.d, field.theta_grid, field.partial(0, 1), field.partial(0, 2))

    if which == "L_alpha":
        angular = _laplace_beltrami(field.d, field.theta_grid, field.partial(0, 1), field.partial(0, 2))
        return (dp.alpha**2*(field.partial(2, 0) + (dp.n - 1)*field.partial(1, 0)/r)
                + angular/r**2)

    raise ValueError("Unknown operator: {}. Valid operators are {}".format(which, OPERATORS))


def k_sphere(d, n, alpha, theta, p_theta, p_thetatheta):
    """
    The spherical curvature term for an azimuthal pressure,

        k[p] = p_thetatheta^2 + (d - 2) p_theta^2 / sin^2(theta)
               - (Delta_omega p)^2 / (n - 1) - (n - 2) alpha^2 p_theta^2.

    For d = 2 this is (n - 2)(alpha_fs^2 p_thetatheta^2 - alpha^2 p_theta^2).
    """
    laplacian = _laplace_beltrami(d, theta, p_theta, p_thetatheta)
    curvature = p_thetatheta**2
    if d > 2:
        curvature = curvature + (d - 2)*p_theta**2/np.sin(theta)**2

    return curvature - laplacian**2/(n - 1.) - (n - 2)*alpha**2*p_theta**2


def k_bulk(p, dp):
    """
    Evaluate K[D_alpha p] directly and through its decomposition.

    The direct form is
    K = (1/2) L_alpha |D_alpha p|^2 - D_alpha p . D_alpha L_alpha p - (L_alpha p)^2 / n
    and the decomposition is

        alpha^4 (1 - 1/n) (p_rr - p_r/r - Delta_omega p / (alpha^2 (n - 1) r^2))^2
        + (2 alpha^2 / r^2) (p_rtheta - p_theta / r)^2 + k[p] / r^4.

    Parameters
    ----------
    p : PressureField
        Pressure with every derivative up to third order.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    report : IdentityReport
        The largest pointwise difference relative to the largest term
        magnitude, the three terms of the decomposition and the direct
        value.
    """
    d, n, alpha = p.d, dp.n, dp.alpha
    r = p.r_grid
    theta = p.theta_grid

    pr, pt = p.partial(1, 0), p.partial(0, 1)
    prr, prt, ptt = p.partial(2, 0), p.partial(1, 1), p.partial(0, 2)
    prrr, prrt, prtt, pttt = p.partial(3, 0), p.partial(2, 1), p.partial(1, 2), p.partial(0, 3)

    if d == 2:
        cot = np.zeros_like(theta)
        csc_sq = np.zeros_like(theta)
    else:
        cot = np.cos(theta)/np.sin(theta)
        csc_sq = 1./np.sin(theta)**2

    laplacian = ptt + (d - 2)*cot*pt
    lp = alpha**2*(prr + (n - 1)*pr/r) + laplacian/r**2

    lp_r = (alpha**2*(prrr + (n - 1)*prr/r - (n - 1)*pr/r**2)
            + (prtt + (d - 2)*cot*prt)/r**2 - 2*laplacian/r**3)
    lp_t = (alpha**2*(prrt + (n - 1)*prt/r)
            + (pttt + (d - 2)*(cot*ptt - csc_sq*pt))/r**2)

    q_r = 2*alpha**2*pr*prr + 2*pt*prt/r**2 - 2*pt**2/r**3
    q_rr = (2*alpha**2*(prr**2 + pr*prrr) + 2*(prt**2 + pt*prrt)/r**2
            - 8*pt*prt/r**3 + 6*pt**2/r**4)
    q_t = 2*alpha**2*pr*prt + 2*pt*ptt/r**2
    q_tt = 2*alpha**2*(prt**2 + pr*prtt) + 2*(ptt**2 + pt*pttt)/r**2

    lq = alpha**2*(q_rr + (n - 1)*q_r/r) + (q_tt + (d - 2)*cot*q_t)/r**2

    half_lq = 0.5*lq
    transport = alpha**2*pr*lp_r + pt*lp_t/r**2
    square = lp**2/n
    direct = half_lq - transport - square

    hessian_term = alpha**4*(1 - 1./n)*(prr - pr/r - laplacian/(alpha**2*(n - 1)*r**2))**2
    mixed_term = 2*alpha**2*(prt - pt/r)**2/r**2
    k_term = k_sphere(d, n, alpha, theta, pt, ptt)/r**4

    residual = np.abs(direct - hessian_term - mixed_term - k_term)
    scale = max(np.max(np.abs(half_lq)), np.max(np.abs(transport)), np.max(square),
                np.max(hessian_term), np.max(mixed_term), np.max(np.abs(k_term)),
                np.finfo(float).tiny)

    return IdentityReport(max_residual=np.max(residual)/scale,
                          hessian_term=hessian_term,
                          mixed_term=mixed_term,
                          k_term=k_term,
                          direct=direct)



class AngularProfile(object):
    """
    Positive azimuthal function u on the sphere, with the first two
    derivatives of its logarithm.

    Parameters
    ----------
    sphere : SphereRule
        Angular nodes and weights.
    u : array_like
        Values of u at the nodes.
    p_theta, p_thetatheta : array_like
        First and second theta derivatives of log(u).

    Raises
    ------
    ValueError
        If u is not strictly positive.
    """
    def __init__(self, sphere, u, p_theta, p_thetatheta):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0) or not np.all(np.isfinite(u)):
            raise ValueError("The sphere profile must be positive and finite")

        self.sphere = sphere
        self.u = u
        self.p_theta = np.asarray(p_theta, dtype=float)
        self.p_thetatheta = np.asarray(p_thetatheta, dtype=float)


    @classmethod
    def from_log_coefficients(cls, sphere, coefficients):
        """
        u = exp(sum_k a_k cos(k theta)).
        """
        theta = sphere.theta
        log_u = np.zeros_like(theta)
        p_theta = np.zeros_like(theta)
        p_thetatheta = np.zeros_like(theta)

        for k, a in enumerate(coefficients):
            log_u += a*np.cos(k*theta)
            p_theta -= k*a*np.sin(k*theta)
            p_thetatheta -= k**2*a*np.cos(k*theta)

        return cls(sphere, np.exp(log_u), p_theta, p_thetatheta)


    @classmethod
    def from_values(cls, sphere, u, u_theta, u_thetatheta):
        """
        Profile from u and its first two theta derivatives at the nodes.
        """
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0):
            raise ValueError("The sphere profile must be positive")

        p_theta = np.asarray(u_theta)/u
        p_thetatheta = np.asarray(u_thetatheta)/u - p_theta**2

        return cls(sphere, u, p_theta, p_thetatheta)



def sphere_inequality_margin(u, dp, delta=None):
    """
    Margin of the integral estimate on the sphere,

        int k[p] u - (n - 2)(alpha_fs^2 - alpha^2) int |grad p|^2 u - delta int |grad p|^4 u,

    with grad p = grad log u and the unnormalized sphere measure. The margin
    is nonnegative for alpha <= alpha_fs.

    Parameters
    ----------
    u : AngularProfile
        Positive azimuthal profile.
    dp : DerivedParams
        Derived parameters, d >= 2.
    delta : float, None, optional
        Quartic coefficient. Default is ``delta_coefficient(d, n)``.

    Returns
    -------
    float
        The margin.
    """
    d, n, alpha = dp.d, dp.n, dp.alpha
    if d < 2:
        raise ValueError("sphere_inequality_margin requires d >= 2, got d={}".format(d))
    if u.sphere.d != d:
        raise ValueError("The profile lives on S^{}, expected S^{}".format(u.sphere.d - 1, d - 1))

    if delta is None:
        delta = delta_coefficient(d, n)

    sphere = u.sphere
    gradient_sq = u.p_theta**2

    curvature = integrate(k_sphere(d, n, alpha, sphere.theta, u.p_theta, u.p_thetatheta)*u.u, sphere)
    dissipation = (n - 2)*(dp.alpha_fs**2 - alpha**2)*integrate(gradient_sq*u.u, sphere)
    quartic = delta*integrate(gradient_sq**2*u.u, sphere)

    return curvature - dissipation - quartic


def fisher_dissipation_identity(p, dp, u=None):
    """
    Both sides of

        int u x.D_alpha |F|^2 - 2 int u F.D_alpha (F.x) = -2 alpha int u |F|^2,

    with F = D_alpha p, integrated against r^{n-1} dr d omega.

    Parameters
    ----------
    p : PressureField
        Pressure with derivatives up to second order and quadrature weights.
    dp : DerivedParams
        Derived parameters.
    u : array_like, None, optional
        Density on the grid. Default is exp(p - r^2/(2 alpha)), the density
        whose relative pressure is p.

    Returns
    -------
    lhs, rhs : float
        The two sides.
    """
    if p.radial_weights is None or p.angular_weights is None:
        raise ValueError("The pressure field needs quadrature weights")

    alpha = dp.alpha
    r = p.r_grid
    pr, pt = p.partial(1, 0), p.partial(0, 1)
    prr, prt = p.partial(2, 0), p.partial(1, 1)

    if u is None:
        u = np.exp(p.partial(0, 0) - r**2/(2*alpha))

    flux_sq = alpha**2*pr**2 + pt**2/r**2
    flux_sq_r = 2*alpha**2*pr*prr + 2*pt*prt/r**2 - 2*pt**2/r**3
    flux_transport = alpha**3*pr*(pr + r*prr) + alpha*pt*prt/r

    weights = np.outer(p.radial_weights, p.angular_weights)
    lhs = np.sum(weights*u*(alpha*r*flux_sq_r - 2*flux_transport))
    rhs = -2*alpha*np.sum(weights*u*flux_sq)

    return lhs, rhs
