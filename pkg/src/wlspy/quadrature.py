from __future__ import absolute_import, division, print_function, unicode_literals

"""
Quadrature against the radial measure s^{n-1} ds with real n, optionally
with a Gaussian factor, and against azimuthal measures on the sphere.
"""

import math

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln, roots_jacobi

from .exceptions import QuadratureAccuracyError

__all__ = ["RadialRule", "SphereRule", "RadialField", "radial_rule", "sphere_rule",
           "integrate", "self_convergence", "tail_radius", "MINIMUM_COUNT",
           "ENTROPY_CUTOFF", "xlogx"]


MINIMUM_COUNT = 8
ENTROPY_CUTOFF = 1e-300

# Smallest log weight kept; exp underflows below it.
_LOG_WEIGHT_FLOOR = -700.


def tail_radius(n, scale=1.):
    """
    Radius beyond which the Gaussian weighted tail of s^{n-1} e^{-s^2/2}
    carries less than 1e-16 of the total mass, sqrt(2(n + 80 log 10)).
    """
    return scale*np.sqrt(2*(n + 80*np.log(10)))


def xlogx(values):
    """
    values * log(values) with 0 log 0 = 0. Values are clamped to
    ENTROPY_CUTOFF before the logarithm.
    """
    values = np.asarray(values, dtype=float)
    return values*np.log(np.maximum(values, ENTROPY_CUTOFF))


def _read_only(array):
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array



class RadialRule(object):
    """
    Quadrature rule for integrals over (0, infinity).

    ``sum(weights*f(nodes))`` approximates
    ``int f(s) s^exponent exp(-s^2/(2 scale^2)) ds`` with
    ``exponent = n - 1 + shift``.

    Parameters
    ----------
    n : float
        Dimension of the measure s^{n-1} ds.
    nodes : array_like
        Strictly increasing positive nodes.
    log_weights : array_like
        Logarithms of the weights.
    kind : str
        Kind of rule, "gauss_transformed", "adaptive_panel" or "uniform".
    scale : float, optional
        Width of the Gaussian factor. Default is 1.
    shift : float, optional
        Extra power of s carried by the weights. Default is 0.

    Attributes
    ----------
    nodes : numpy.array
        The nodes.
    weights : numpy.array
        Weights including the factor s^exponent exp(-s^2/(2 scale^2)).
    measure_weights : numpy.array
        Weights for plain integrals against s^{n-1} ds, the Gaussian factor
        and the extra power divided out.
    exponent : float
        n - 1 + shift.
    """
    def __init__(self, n, nodes, log_weights, kind, scale=1., shift=0.):
        nodes = np.asarray(nodes, dtype=float)
        log_weights = np.asarray(log_weights, dtype=float)

        if nodes.shape != log_weights.shape:
            raise ValueError("nodes and weights differ in length: {} != {}".format(len(nodes), len(log_weights)))

        if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0):
            raise ValueError("Radial nodes must be positive and strictly increasing")

        self.n = float(n)
        self.kind = kind
        self.scale = float(scale)
        self.shift = float(shift)
        self.exponent = self.n - 1 + self.shift

        self.nodes = _read_only(nodes)
        self.log_weights = _read_only(log_weights)
        self.weights = _read_only(np.exp(log_weights))

        log_measure = log_weights + nodes**2/(2*self.scale**2) - self.shift*np.log(nodes)
        self.measure_weights = _read_only(np.exp(log_measure))


    def __len__(self):
        return len(self.nodes)


    def __repr__(self):
        return "RadialRule(n={}, count={}, kind={}, scale={}, shift={})".format(
            self.n, len(self), self.kind, self.scale, self.shift)


    def gaussian(self):
        """
        The Gaussian factor exp(-s^2/(2 scale^2)) at the nodes.
        """
        return np.exp(-self.nodes**2/(2*self.scale**2))



class SphereRule(object):
    """
    Quadrature rule on S^{d-1} for azimuthal functions of the polar angle.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 2.
    theta : array_like
        Polar angles, in (0, pi) for d >= 3 and [0, 2 pi) for d = 2.
    weights : array_like
        Weights for the measure sin^{d-2}(theta) d theta times the area of
        S^{d-2}, or their normalized version.
    normalized : bool
        True if the weights sum to one.
    """
    def __init__(self, d, theta, weights, normalized):
        self.d = d
        self.theta = _read_only(theta)
        self.weights = _read_only(weights)
        self.normalized = normalized


    def __len__(self):
        return len(self.theta)


    @property
    def total(self):
        return math.fsum(self.weights)



class RadialField(object):
    """
    A function of the radial variable sampled at the nodes of a rule.

    Parameters
    ----------
    rule : RadialRule
        The rule the samples are aligned with.
    values : array_like
        Function values at the nodes.
    derivative : array_like, None, optional
        First derivative at the nodes. Default is None.
    second_derivative : array_like, None, optional
        Second derivative at the nodes. Default is None.

    Raises
    ------
    ValueError
        If any sample is not finite or the lengths differ from the rule.
    """
    def __init__(self, rule, values, derivative=None, second_derivative=None):
        self.rule = rule
        self.values = self._check(values, "values")
        self.derivative = self._check(derivative, "derivative")
        self.second_derivative = self._check(second_derivative, "second_derivative")


    def _check(self, array, name):
        if array is None:
            return None

        array = np.asarray(array, dtype=float)
        if array.shape != self.rule.nodes.shape:
            raise ValueError("{} has shape {}, the rule has {} nodes".format(name, array.shape, len(self.rule)))

        if not np.all(np.isfinite(array)):
            raise ValueError("{} of a RadialField must be finite".format(name))

        return array


    @classmethod
    def from_function(cls, rule, function, derivative=None, second_derivative=None):
        """
        Sample `function` and optionally its derivatives at the rule nodes.

        Parameters
        ----------
        rule : RadialRule
            The rule to sample on.
        function : callable
            ``function(s)`` evaluated on an array of nodes.
        derivative, second_derivative : callable, None, optional
            Derivatives of `function`. Default is None.

        Returns
        -------
        field : RadialField
            The sampled field.
        """
        s = rule.nodes
        return cls(rule, function(s),
                   None if derivative is None else derivative(s),
                   None if second_derivative is None else second_derivative(s))


    def __mul__(self, factor):
        return RadialField(self.rule, factor*self.values,
                           None if self.derivative is None else factor*self.derivative,
                           None if self.second_derivative is None else factor*self.second_derivative)

    __rmul__ = __mul__



def _golub_welsch_laguerre(count, a):
    """
    Nodes and log weights of the generalized Gauss-Laguerre rule for
    t^a e^{-t} on (0, infinity), from the eigen decomposition of the Jacobi
    matrix of the three-term recurrence.
    """
    k = np.arange(count, dtype=float)
    diagonal = 2*k + a + 1
    off_diagonal = np.sqrt(k[1:]*(k[1:] + a))

    nodes, vectors = eigh_tridiagonal(diagonal, off_diagonal)

    with np.errstate(divide="ignore"):
        log_weights = gammaln(a + 1) + 2*np.log(np.abs(vectors[0]))

    return nodes, log_weights


def _gauss_transformed(n, count, scale, shift):
    exponent = n - 1 + shift
    a = 0.5*(exponent - 1)
    if a <= -1:
        raise ValueError("n + shift must be positive, got n={}, shift={}".format(n, shift))

    t, log_weights = _golub_welsch_laguerre(count, a)

    nodes = scale*np.sqrt(2*t)
    log_weights = log_weights + (exponent + 1)*np.log(scale) + 0.5*(exponent - 1)*np.log(2)

    keep = log_weights > _LOG_WEIGHT_FLOOR
    return nodes[keep], log_weights[keep]


def _adaptive_panel(n, count, scale, shift, order=16):
    panels = max(count//order, 1)
    s_max = tail_radius(n, scale)

    edges = s_max*(np.arange(panels + 1)/float(panels))**2
    x, w = np.polynomial.legendre.leggauss(order)

    nodes = []
    weights = []
    for left, right in zip(edges[:-1], edges[1:]):
        half = 0.5*(right - left)
        nodes.append(left + half*(x + 1))
        weights.append(half*w)

    nodes = np.concatenate(nodes)
    weights = np.concatenate(weights)

    exponent = n - 1 + shift
    log_weights = np.log(weights) + exponent*np.log(nodes) - nodes**2/(2*scale**2)
    return nodes, log_weights


def _uniform(n, count, scale, shift):
    s_max = tail_radius(n, scale)
    h = s_max/count

    nodes = h*np.arange(1, count + 1)
    weights = np.full(count, h)
    weights[-1] = 0.5*h

    exponent = n - 1 + shift
    log_weights = np.log(weights) + exponent*np.log(nodes) - nodes**2/(2*scale**2)
    return nodes, log_weights


_BUILDERS = {"gauss_transformed": _gauss_transformed,
             "adaptive_panel": _adaptive_panel,
             "uniform": _uniform}


def radial_rule(n, count, kind="gauss_transformed", scale=1., shift=0.):
    """
    Build a quadrature rule for ``int f(s) s^{n-1+shift} e^{-s^2/(2 scale^2)} ds``.

    Parameters
    ----------
    n : float
        Dimension of the measure, n > 0 and not necessarily an integer.
    count : int
        Number of nodes, at least 8.
    kind : {"gauss_transformed", "adaptive_panel", "uniform"}, optional
        "gauss_transformed" substitutes t = s^2/(2 scale^2) and uses the
        generalized Gauss-Laguerre rule with exponent (n + shift)/2 - 1.
        Nodes whose weights underflow are dropped. "adaptive_panel" uses
        per-panel Gauss-Legendre on panels graded towards the origin.
        "uniform" is the trapezoidal rule on equally spaced nodes, meant
        for finite differences. The last two cover (0, S_max] with
        S_max from ``tail_radius``. Default is "gauss_transformed".
    scale : float, optional
        Width of the Gaussian factor. Default is 1.
    shift : float, optional
        Extra power of s absorbed in the weights, for integrands behaving
        like a non-integer power of s at the origin. Default is 0.

    Returns
    -------
    rule : RadialRule
        The quadrature rule.

    Raises
    ------
    QuadratureAccuracyError
        If `count` is below 8.
    ValueError
        If `n` is not positive or `kind` is unknown.
    """
    if n <= 0:
        raise ValueError("n must be positive, got {}".format(n))

    if count < MINIMUM_COUNT:
        raise QuadratureAccuracyError(
            "count={} is too small, at least {} nodes are required".format(count, MINIMUM_COUNT)
        )

    if kind not in _BUILDERS:
        raise ValueError("Unknown rule kind: {}. Valid kinds are {}".format(kind, sorted(_BUILDERS)))

    nodes, log_weights = _BUILDERS[kind](n, count, scale, shift)

    return RadialRule(n, nodes, log_weights, kind, scale=scale, shift=shift)


def sphere_rule(d, count=64, normalized=False):
    """
    Quadrature rule for azimuthal functions on S^{d-1}.

    Parameters
    ----------
    d : int
        Euclidean dimension, d >= 2.
    count : int, optional
        Number of nodes. Default is 64.
    normalized : bool, optional
        If True the weights sum to one, otherwise to |S^{d-1}|.
        Default is False.

    Returns
    -------
    rule : SphereRule
        Trapezoidal rule on [0, 2 pi) for d = 2, Gauss-Jacobi nodes in
        cos(theta) for the weight sin^{d-2}(theta) for d >= 3.
    """
    if d < 2:
        raise ValueError("sphere_rule requires d >= 2, got d={}".format(d))
    if count < 1:
        raise ValueError("count must be positive, got {}".format(count))

    if d == 2:
        theta = 2*np.pi*np.arange(count)/count
        weights = np.full(count, 2*np.pi/count)
    else:
        a = 0.5*(d - 3)
        x, w = roots_jacobi(count, a, a)
        theta = np.arccos(x)[::-1]
        log_area = np.log(2) + 0.5*(d - 1)*np.log(np.pi) - gammaln(0.5*(d - 1))
        weights = w[::-1]*np.exp(log_area)

    if normalized:
        weights = weights/math.fsum(weights)

    return SphereRule(d, theta, weights, normalized)


def integrate(values, rule, sphere=None, measure=False):
    """
    Weighted sum of samples, accumulated with compensated summation in a
    fixed order.

    Parameters
    ----------
    values : array_like, RadialField
        Samples aligned with the nodes of `rule`. A 2-D array is read as
        samples on the tensor grid of `rule` and `sphere`.
    rule : RadialRule, SphereRule
        The rule the samples are aligned with.
    sphere : SphereRule, None, optional
        Angular rule. With 1-D radial samples the result is multiplied by
        the total angular weight. Default is None.
    measure : bool, optional
        Use ``rule.measure_weights`` instead of ``rule.weights``, i.e.
        integrate against s^{n-1} ds without the Gaussian factor.
        Default is False.

    Returns
    -------
    float
        The integral.

    Raises
    ------
    ValueError
        If the samples do not match the rule.
    """
    if isinstance(values, RadialField):
        values = values.values

    values = np.asarray(values, dtype=float)

    if measure:
        weights = rule.measure_weights
    else:
        weights = rule.weights

    if values.ndim == 2:
        if sphere is None:
            raise ValueError("2-D samples require a sphere rule")
        expected = (len(weights), len(sphere.weights))
        if values.shape != expected:
            raise ValueError("Samples have shape {}, the tensor grid has shape {}".format(values.shape, expected))

        return math.fsum((values*np.outer(weights, sphere.weights)).ravel())

    if len(values) != len(weights):
        raise ValueError("Samples have length {}, the rule has {} nodes".format(len(values), len(weights)))

    result = math.fsum(values*weights)
    if sphere is not None:
        result *= sphere.total

    return result


def self_convergence(function, n, count, kind="gauss_transformed", scale=1., shift=0.):
    """
    Relative change of ``integrate(function(s), rule)`` when the number of
    nodes is doubled.

    Parameters
    ----------
    function : callable
        Integrand without the weight, evaluated on arrays of nodes.
    n : float
        Dimension of the measure.
    count : int
        Number of nodes of the coarse rule.
    kind, scale, shift
        Passed on to ``radial_rule``.

    Returns
    -------
    float
        |I(2 count) - I(count)| / |I(2 count)|, or the absolute change if
        the fine integral vanishes.
    """
    coarse_rule = radial_rule(n, count, kind=kind, scale=scale, shift=shift)
    fine_rule = radial_rule(n, 2*count, kind=kind, scale=scale, shift=shift)

    coarse = integrate(function(coarse_rule.nodes), coarse_rule)
    fine = integrate(function(fine_rule.nodes), fine_rule)

    if fine == 0:
        return abs(fine - coarse)

    return abs(fine - coarse)/abs(fine)
