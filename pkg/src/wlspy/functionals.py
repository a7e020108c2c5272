from __future__ import absolute_import, division, print_function, unicode_literals

"""
Norms, entropy and deficit functionals of candidate functions.

All functionals are evaluated in alpha-coordinates s = r^alpha, where the
inequality carries the single weight |x|^{-nu} and the anisotropic gradient
D_alpha = (alpha d/ds, grad_omega/s). A candidate is a radial profile plus
at most one spherical harmonic mode,

    g(s, omega) = g0(s) + g1(s) Y_l(omega).
"""

from collections import namedtuple

import numpy as np
from scipy.special import eval_gegenbauer

from .constants import evaluate_constants, log_sphere_volume
from .quadrature import RadialField, sphere_rule, integrate, xlogx

__all__ = ["Candidate", "Norms", "DeficitReport", "FNorms", "spherical_harmonic",
           "optimizer_profile", "sigma_optimizer_profile", "f_star",
           "norms_and_entropy", "deficit", "implied_constant", "log_holder_gap",
           "potential", "potential_min_radius", "el_residual",
           "schrodinger_energy", "to_f_variables", "FORMS"]


FORMS = ("scale_invariant", "sigma_form", "gaussian_form")

Norms = namedtuple("Norms", ["norm_sq", "grad_sq", "entropy", "entropy_raw"])

DeficitReport = namedtuple("DeficitReport",
                           ["norm_sq", "grad_sq", "entropy", "deficit", "form", "parameter"])

FNorms = namedtuple("FNorms", ["norm_sq", "grad_sq", "entropy"])


def spherical_harmonic(ell, d, theta):
    """
    Azimuthal spherical harmonic of degree `ell` on S^{d-1}, normalized to
    one at the north pole.

    cos(ell theta) for d = 2 and the Gegenbauer polynomial
    C_ell^{(d-2)/2}(cos theta) / C_ell^{(d-2)/2}(1) for d >= 3. The
    Laplace-Beltrami eigenvalue is ell (ell + d - 2).
    """
    theta = np.asarray(theta, dtype=float)

    if d == 2:
        return np.cos(ell*theta)

    order = 0.5*(d - 2)
    return eval_gegenbauer(ell, order, np.cos(theta))/eval_gegenbauer(ell, order, 1.)



class Candidate(object):
    """
    Candidate function g0(s) + g1(s) Y_ell(omega) in alpha-coordinates.

    Parameters
    ----------
    radial_profile : RadialField
        The radial part g0, with its first derivative.
    angular_mode : tuple, None, optional
        ``(ell, amplitude)`` with ell >= 1 and amplitude a RadialField g1 on
        the same rule, with its first derivative. Default is None.

    Raises
    ------
    ValueError
        If derivatives are missing, the rules differ or ell < 1.
    """
    def __init__(self, radial_profile, angular_mode=None):
        self.radial_profile = radial_profile

        if angular_mode is not None:
            ell, amplitude = angular_mode
            if int(ell) != ell or ell < 1:
                raise ValueError("The angular mode must have an integer degree >= 1, got {}".format(ell))
            if amplitude.rule is not radial_profile.rule:
                raise ValueError("The angular amplitude must live on the rule of the radial profile")

            angular_mode = (int(ell), amplitude)

        self.angular_mode = angular_mode


    @property
    def rule(self):
        return self.radial_profile.rule


    @property
    def is_radial(self):
        return self.angular_mode is None


    def grid_values(self, sphere):
        """
        Values on the tensor grid of the radial rule and `sphere`.
        """
        values = np.repeat(self.radial_profile.values[:, np.newaxis], len(sphere), axis=1)

        if self.angular_mode is not None:
            ell, amplitude = self.angular_mode
            harmonic = spherical_harmonic(ell, sphere.d, sphere.theta)
            values = values + np.outer(amplitude.values, harmonic)

        return values


    def scaled(self, factor):
        """
        The candidate multiplied by `factor`.
        """
        angular_mode = None
        if self.angular_mode is not None:
            angular_mode = (self.angular_mode[0], factor*self.angular_mode[1])

        return Candidate(factor*self.radial_profile, angular_mode)



def optimizer_profile(rule, dp):
    """
    The radial optimizer g*(s) = c_{n,d} exp(-s^2/4), normalized in the
    weighted L^2 norm, with first and second derivatives.

    Parameters
    ----------
    rule : RadialRule
        The rule to sample on.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    profile : RadialField
        The sampled optimizer.
    """
    return sigma_optimizer_profile(rule, dp, sigma=0.5*dp.alpha**2)


def sigma_optimizer_profile(rule, dp, sigma):
    """
    Optimizer of the non scale invariant form with parameter `sigma`,
    lambda^{n/2} g*(lambda s) with lambda = sqrt(2 sigma)/alpha.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive, got {}".format(sigma))

    c_nd = evaluate_constants(dp).c_nd
    scale = np.sqrt(2*sigma)/dp.alpha
    amplitude = c_nd*scale**(0.5*dp.n)
    a = 0.25*scale**2

    s = rule.nodes
    values = amplitude*np.exp(-a*s**2)

    return RadialField(rule, values, -2*a*s*values, (4*a**2*s**2 - 2*a)*values)


def f_star(dp, r):
    """
    The normalized radial optimizer in the original variables,
    sqrt(alpha) c_{n,d} exp(-r^{2 alpha}/4).
    """
    r = np.asarray(r, dtype=float)
    return np.sqrt(dp.alpha)*evaluate_constants(dp).c_nd*np.exp(-0.25*r**(2*dp.alpha))


def _require_derivative(field, name):
    if field.derivative is None:
        raise ValueError("The {} needs its first derivative".format(name))


def _mode_integrals(candidate, alpha, sphere, density=None):
    """
    Angular factor and radial integrals of the mode part of the norm and of
    the gradient.
    """
    ell, amplitude = candidate.angular_mode
    rule = candidate.rule
    s = rule.nodes

    if density is None:
        density = 1.

    harmonic_sq = integrate(spherical_harmonic(ell, sphere.d, sphere.theta)**2, sphere)
    eigenvalue = ell*(ell + sphere.d - 2)

    norm = integrate(density*amplitude.values**2, rule, measure=True)
    energy = integrate(density*(alpha**2*amplitude.derivative**2
                                + eigenvalue*amplitude.values**2/s**2), rule, measure=True)

    return harmonic_sq*norm, harmonic_sq*energy


def _weighted_norms(candidate, dp, sphere_count, density=None):
    """
    Norm, gradient and raw entropy integrals of `candidate` against
    density * s^{n-1} ds d omega.
    """
    if dp.d < 2 and not candidate.is_radial:
        raise ValueError("Angular modes require d >= 2")

    _require_derivative(candidate.radial_profile, "radial profile")

    rule = candidate.rule
    g0 = candidate.radial_profile
    weight = 1. if density is None else density
    sigma_d = np.exp(log_sphere_volume(dp.d))

    norm_sq = sigma_d*integrate(weight*g0.values**2, rule, measure=True)
    grad_sq = sigma_d*integrate(weight*dp.alpha**2*g0.derivative**2, rule, measure=True)

    if candidate.is_radial:
        entropy_raw = sigma_d*integrate(weight*xlogx(g0.values**2), rule, measure=True)
        power_values = None
    else:
        _require_derivative(candidate.angular_mode[1], "angular amplitude")

        sphere = sphere_rule(dp.d, sphere_count)
        mode_norm, mode_energy = _mode_integrals(candidate, dp.alpha, sphere, density)
        norm_sq += mode_norm
        grad_sq += mode_energy

        values = candidate.grid_values(sphere)
        if density is not None:
            weight = density[:, np.newaxis]
        entropy_raw = integrate(weight*xlogx(values**2), rule, sphere=sphere, measure=True)
        power_values = (values, sphere)

    return norm_sq, grad_sq, entropy_raw, power_values


def norms_and_entropy(candidate, dp, sphere_count=64):
    """
    Weighted L^2 norm, anisotropic Dirichlet energy and entropy.

    Parameters
    ----------
    candidate : Candidate
        The candidate function.
    dp : DerivedParams
        Derived parameters.
    sphere_count : int, optional
        Number of angular nodes used when the candidate has an angular mode.
        Default is 64.

    Returns
    -------
    norms : Norms
        norm_sq = int g^2 |x|^{-nu}, grad_sq = int |D_alpha g|^2 |x|^{-nu},
        entropy = int g^2 log(g^2/norm_sq) |x|^{-nu} and
        entropy_raw = int g^2 log(g^2) |x|^{-nu}.

    Raises
    ------
    ValueError
        If an integral is not finite.
    """
    norm_sq, grad_sq, entropy_raw, _ = _weighted_norms(candidate, dp, sphere_count)

    if not np.all(np.isfinite([norm_sq, grad_sq, entropy_raw])):
        raise ValueError("Non-finite integrals for the candidate: norm_sq={}, grad_sq={}, entropy_raw={}".format(
            norm_sq, grad_sq, entropy_raw))

    entropy = entropy_raw - norm_sq*np.log(norm_sq) if norm_sq > 0 else 0.

    return Norms(norm_sq=norm_sq, grad_sq=grad_sq, entropy=entropy, entropy_raw=entropy_raw)


def deficit(candidate, dp, form="scale_invariant", k_or_sigma=None, k=None, sphere_count=64):
    """
    Left-hand side minus right-hand side of an inequality form.

    Parameters
    ----------
    candidate : Candidate
        The candidate function, g for the first two forms and v for the
        Gaussian form.
    dp : DerivedParams
        Derived parameters.
    form : {"scale_invariant", "sigma_form", "gaussian_form"}, optional
        The inequality form. Default is "scale_invariant".
    k_or_sigma : float, None, optional
        The constant K for the scale invariant form, sigma for the other
        two. Defaults to K* and to sigma = 1/2 respectively.
    k : float, None, optional
        The constant K of the sigma and Gaussian forms. Default is K*.
    sphere_count : int, optional
        Number of angular nodes. Default is 64.

    Returns
    -------
    report : DeficitReport
        The integrals and the deficit. For the scale invariant form
        ``deficit = grad_sq - exp(-2K/n) norm_sq^{1-2/n} exp((2/n) entropy_raw/norm_sq)``.
        For the sigma form
        ``deficit = grad_sq - sigma entropy - sigma((n/2) log(2e/(n sigma)) - K) norm_sq``.
        The Gaussian form evaluates v against
        d nu_sigma = c_{n,d}^2 (2 sigma/alpha^2)^{n/2} exp(-sigma s^2/alpha^2) s^{n-1} ds d omega,
        ``deficit = int |D_alpha v|^2 d nu_sigma - sigma Ent_nu + sigma(K - K*) N_nu``;
        for that form the reported norm, gradient and entropy are those
        against nu_sigma.

    Raises
    ------
    ValueError
        If the norm vanishes or `form` is unknown.
    """
    if form not in FORMS:
        raise ValueError("Unknown form: {}. Valid forms are {}".format(form, FORMS))

    k_star = evaluate_constants(dp).k_star
    n = dp.n

    if form == "scale_invariant":
        constant = k_star if k_or_sigma is None else k_or_sigma
        norms = norms_and_entropy(candidate, dp, sphere_count)
        if norms.norm_sq <= 0:
            raise ValueError("The candidate has zero norm")

        log_rhs = (-2.*constant/n + (1 - 2./n)*np.log(norms.norm_sq)
                   + 2./n*norms.entropy_raw/norms.norm_sq)
        value = norms.grad_sq - np.exp(log_rhs)

        return DeficitReport(norm_sq=norms.norm_sq, grad_sq=norms.grad_sq, entropy=norms.entropy,
                             deficit=value, form=form, parameter=constant)

    sigma = 0.5 if k_or_sigma is None else k_or_sigma
    if sigma <= 0:
        raise ValueError("sigma must be positive, got {}".format(sigma))
    constant = k_star if k is None else k

    if form == "sigma_form":
        norms = norms_and_entropy(candidate, dp, sphere_count)
        if norms.norm_sq <= 0:
            raise ValueError("The candidate has zero norm")

        value = (norms.grad_sq - sigma*norms.entropy
                 - sigma*(0.5*n*np.log(2*np.e/(n*sigma)) - constant)*norms.norm_sq)

        return DeficitReport(norm_sq=norms.norm_sq, grad_sq=norms.grad_sq, entropy=norms.entropy,
                             deficit=value, form=form, parameter=sigma)

    density = sigma_optimizer_profile(candidate.rule, dp, sigma).values**2
    norm_sq, grad_sq, entropy_raw, _ = _weighted_norms(candidate, dp, sphere_count, density=density)
    if norm_sq <= 0:
        raise ValueError("The candidate has zero norm")

    entropy = entropy_raw - norm_sq*np.log(norm_sq)
    value = grad_sq - sigma*entropy + sigma*(constant - k_star)*norm_sq

    return DeficitReport(norm_sq=norm_sq, grad_sq=grad_sq, entropy=entropy,
                         deficit=value, form=form, parameter=sigma)


def implied_constant(norms, dp):
    """
    The constant K[g] = entropy/norm_sq - (n/2) log(grad_sq/norm_sq) of a
    candidate.

    The scale invariant inequality holds with constant K for g exactly when
    K >= K[g], so every candidate gives a lower bound on the optimal
    constant. The radial optimizer gives K*.

    Parameters
    ----------
    norms : Norms, DeficitReport
        Integrals of the candidate in the scale invariant setting.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    float
        K[g].
    """
    return norms.entropy/norms.norm_sq - 0.5*dp.n*np.log(norms.grad_sq/norms.norm_sq)


def log_holder_gap(candidate, dp, p, sphere_count=64):
    """
    Gap in the logarithmic Holder inequality,

        (p/(p - 2)) N log(||g||_p^2 / N) - int g^2 log(g^2/N) |x|^{-nu} >= 0,

    with N = ||g||_2^2 and all norms weighted by |x|^{-nu}.

    Raises
    ------
    ValueError
        If p <= 2.
    """
    if p <= 2:
        raise ValueError("log_holder_gap requires p > 2, got p={}".format(p))

    norm_sq, _, entropy_raw, grid = _weighted_norms(candidate, dp, sphere_count)
    entropy = entropy_raw - norm_sq*np.log(norm_sq)

    rule = candidate.rule
    if grid is None:
        power = np.exp(log_sphere_volume(dp.d))*integrate(np.abs(candidate.radial_profile.values)**p,
                                                           rule, measure=True)
    else:
        values, sphere = grid
        power = integrate(np.abs(values)**p, rule, sphere=sphere, measure=True)

    norm_p_sq = power**(2./p)

    return p/(p - 2.)*norm_sq*np.log(norm_p_sq/norm_sq) - entropy


def potential(dp, sigma, x_abs):
    """
    Potential of the Schrodinger form,
    V(x) = -(alpha^2 nu (2(d - 2) - nu)/4) / x^2 - sigma nu log(x).

    Raises
    ------
    ValueError
        If x_abs <= 0 or sigma <= 0.
    """
    x_abs = np.asarray(x_abs, dtype=float)
    if np.any(x_abs <= 0):
        raise ValueError("The potential is defined for |x| > 0")
    if sigma <= 0:
        raise ValueError("sigma must be positive, got {}".format(sigma))

    coefficient = 0.25*dp.alpha**2*dp.nu*(2*(dp.d - 2) - dp.nu)
    return -coefficient/x_abs**2 - sigma*dp.nu*np.log(x_abs)


def potential_min_radius(dp, sigma):
    """
    Radius alpha sqrt((2(d - 2) - nu)/(2 sigma)) of the sphere on which the
    potential is minimal.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive, got {}".format(sigma))

    numerator = 2*(dp.d - 2) - dp.nu
    if numerator <= 0:
        raise ValueError("The potential has no minimum for d={}, nu={}".format(dp.d, dp.nu))

    return dp.alpha*np.sqrt(numerator/(2.*sigma))


def el_residual(candidate, dp):
    """
    Residual of the radial Euler-Lagrange equation
    -L_alpha g + g - g log(g^2) = 0, with
    L_alpha g = alpha^2 (g'' + (n - 1) g'/s).

    Derivatives are fourth order central differences, so the candidate
    must live on equally spaced nodes (a "uniform" rule). The residual is
    evaluated on the interior nodes with a full stencil only. There are no
    one-sided stencils, so the two nodes at each end are never checked.

    Returns
    -------
    float
        max |residual| / max |g| over the interior nodes.

    Raises
    ------
    ValueError
        If the candidate is not radial, not positive, or the nodes are not
        equally spaced.
    """
    if not candidate.is_radial:
        raise ValueError("el_residual requires a radial candidate")

    s = candidate.rule.nodes
    g = candidate.radial_profile.values

    if len(s) < 5:
        raise ValueError("el_residual needs at least 5 nodes")

    steps = np.diff(s)
    h = steps[0]
    if not np.allclose(steps, h, rtol=1e-10, atol=0):
        raise ValueError("el_residual requires equally spaced nodes")

    if np.any(g <= 0):
        raise ValueError("el_residual requires a strictly positive candidate")

    first = (-g[4:] + 8*g[3:-1] - 8*g[1:-3] + g[:-4])/(12*h)
    second = (-g[4:] + 16*g[3:-1] - 30*g[2:-2] + 16*g[1:-3] - g[:-4])/(12*h**2)

    interior = g[2:-2]
    s_interior = s[2:-2]
    laplacian = dp.alpha**2*(second + (dp.n - 1)*first/s_interior)
    residual = -laplacian + interior - 2*interior*np.log(interior)

    return np.max(np.abs(residual))/np.max(np.abs(g))


def schrodinger_energy(candidate, dp):
    """
    Energy terms of h = s^{-nu/2} g for a radial candidate g.

    With the unweighted d-dimensional measure,

        ||D_alpha g||^2_{2,nu} = ||D_alpha h||^2_2 - (alpha^2 nu (2(d - 2) - nu)/4) int h^2/|x|^2,

    where h' = s^{-nu/2} (g' - (nu/2) g/s).

    Returns
    -------
    h_energy : float
        ||D_alpha h||^2_2.
    potential_term : float
        (alpha^2 nu (2(d - 2) - nu)/4) int h^2/|x|^2.
    """
    if not candidate.is_radial:
        raise ValueError("schrodinger_energy requires a radial candidate")

    _require_derivative(candidate.radial_profile, "radial profile")

    rule = candidate.rule
    s = rule.nodes
    g = candidate.radial_profile.values
    dg = candidate.radial_profile.derivative
    sigma_d = np.exp(log_sphere_volume(dp.d))

    # h^2 s^{d-1} = g^2 s^{n-1}, so every integral runs against s^{n-1} ds
    h_energy = sigma_d*integrate(dp.alpha**2*(dg - 0.5*dp.nu*g/s)**2, rule, measure=True)
    coefficient = 0.25*dp.alpha**2*dp.nu*(2*(dp.d - 2) - dp.nu)
    potential_term = coefficient*sigma_d*integrate(g**2/s**2, rule, measure=True)

    return h_energy, potential_term


def to_f_variables(norms, dp):
    """
    Integrals in the original variables, ||f||^2_{2,gamma} = ||g||^2_{2,nu}/alpha,
    ||grad f||^2_{2,beta} = ||D_alpha g||^2_{2,nu}/alpha and the same factor
    for the entropy.
    """
    return FNorms(norm_sq=norms.norm_sq/dp.alpha,
                  grad_sq=norms.grad_sq/dp.alpha,
                  entropy=norms.entropy/dp.alpha)
