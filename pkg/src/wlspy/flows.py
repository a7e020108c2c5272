from __future__ import absolute_import, division, print_function, unicode_literals

"""
Radial weighted heat, Fokker-Planck and Ornstein-Uhlenbeck flows.

All flows are evolved in alpha-coordinates s = r^alpha, where the weighted
heat flow reads

    u_t = alpha^2 (u'' + (n - 1) u'/s).

The self-similar change of variables R(t) = (r0^{2 alpha} + 2 alpha t)^{1/(2 alpha)},
tau = log R turns it into a Fokker-Planck equation with stationary profile
exp(-s^2/(2 alpha)), and the ratio w = v/v_infinity solves

    w_tau = alpha^2 (w'' + (n - 1) w'/s) - alpha s w'.

The discretization is a cell centered finite volume scheme in symmetric
form, M dw/dt = -K w, with zero flux through both ends of (0, S_max], so
that the discrete invariant sum(M w) is conserved up to round off.
"""

from collections import namedtuple, OrderedDict
import math

import numpy as np
from scipy.linalg import solve_banded
from scipy.special import gammaln, gammainc, gammaincc
from tqdm import tqdm

from .constants import hyper_schedule, exponent_schedule, log_sphere_volume
from .exceptions import ConsistencyError
from .quadrature import RadialField, RadialRule, tail_radius, ENTROPY_CUTOFF, MINIMUM_COUNT
from .utils.logger import setup_module_logger, get_logger

__all__ = ["FlowConfig", "FlowTrace", "FlowSimulator", "DecayReport", "HyperReport",
           "VARIANTS", "SCHEMES", "ENTROPY_FLOOR", "self_similar_map", "fp_time",
           "to_fp", "from_fp", "heat_self_similar", "stationary_profile", "lq_norm",
           "relative_l1_distance", "decay_diagnostics", "hyper_experiment", "fit_rate"]


HEAT = "heat"
FOKKER_PLANCK = "fokker_planck"
ORNSTEIN_UHLENBECK = "ornstein_uhlenbeck"

VARIANTS = (HEAT, FOKKER_PLANCK, ORNSTEIN_UHLENBECK)
SCHEMES = ("crank_nicolson",)

ENTROPY_FLOOR = 1e-14
NEGATIVITY_TOLERANCE = 1e-12
ENTROPY_INCREASE_TOLERANCE = 1e-10
MASS_TOLERANCE = 1e-8


DecayReport = namedtuple("DecayReport", ["entropy_rate", "fisher_rate", "deviation_rate",
                                         "cia_bound_ok", "cia_half_ok"])

HyperReport = namedtuple("HyperReport", ["schedule", "times", "norms", "bounds", "norm_initial",
                                         "norm_at_t_star", "t_star_ok", "bound_ok",
                                         "exponent_at_t_star"])


def self_similar_map(t, r0, dp):
    """
    Scale of the self-similar change of variables.

    Parameters
    ----------
    t : float
        Time, t >= 0.
    r0 : float
        Initial scale, r0 >= 0. r0 = 0 gives the Green function branch.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    R : float
        (r0^{2 alpha} + 2 alpha t)^{1/(2 alpha)}.
    """
    if t < 0:
        raise ValueError("t must be >= 0, got {}".format(t))
    if r0 < 0:
        raise ValueError("r0 must be >= 0, got {}".format(r0))

    alpha = dp.alpha
    return (r0**(2*alpha) + 2*alpha*t)**(1/(2*alpha))


def fp_time(t, r0, dp):
    """
    Fokker-Planck time tau = log R(t).
    """
    return np.log(self_similar_map(t, r0, dp))


def to_fp(u, t, r0, dp):
    """
    Transport a heat flow profile at time `t` to the Fokker-Planck frame.

    Parameters
    ----------
    u : callable
        ``u(x)`` for radii ``x`` in the original variables at time `t`.
    t, r0 : float
        Time and initial scale.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    v : callable
        ``v(y) = R^{d - gamma} u(R y)``, the profile at tau = log R.
    """
    R = self_similar_map(t, r0, dp)
    if R == 0:
        raise ValueError("The self-similar frame is undefined at R = 0")

    factor = R**(dp.alpha*dp.n)
    return lambda y: factor*u(R*np.asarray(y, dtype=float))


def from_fp(v, t, r0, dp):
    """
    Inverse of `to_fp`: ``u(x) = R^{gamma - d} v(x/R)``.
    """
    R = self_similar_map(t, r0, dp)
    if R == 0:
        raise ValueError("The self-similar frame is undefined at R = 0")

    factor = R**(-dp.alpha*dp.n)
    return lambda x: factor*v(np.asarray(x, dtype=float)/R)


def _log_gaussian_mass(n, alpha):
    # log of int_0^inf s^{n-1} exp(-s^2/(2 alpha)) ds
    return 0.5*n*np.log(2*alpha) - np.log(2) + gammaln(0.5*n)


def stationary_profile(dp, s, mass=1.):
    """
    Stationary Fokker-Planck profile in alpha-coordinates, normalized to
    ``mass`` against s^{n-1} ds.
    """
    s = np.asarray(s, dtype=float)
    return mass*np.exp(-s**2/(2*dp.alpha) - _log_gaussian_mass(dp.n, dp.alpha))


def heat_self_similar(dp, r0, t, s, mass=1.):
    """
    Self-similar solution of the heat flow in alpha-coordinates.

    Parameters
    ----------
    dp : DerivedParams
        Derived parameters.
    r0 : float
        Initial scale, r0 > 0 unless t > 0.
    t : float
        Time.
    s : array_like
        Radii in alpha-coordinates.
    mass : float, optional
        Mass against s^{n-1} ds. Default is 1.

    Returns
    -------
    u : numpy.array
        S^{-n} V(s/S) with S^2 = r0^{2 alpha} + 2 alpha t and V the
        stationary profile.
    """
    return np.exp(np.log(mass) + _log_heat_self_similar(dp, r0, t, s))


def _log_heat_self_similar(dp, r0, t, s):
    alpha = dp.alpha
    S2 = r0**(2*alpha) + 2*alpha*t
    if S2 <= 0:
        raise ValueError("The self-similar solution is singular at r0 = 0, t = 0")

    s = np.asarray(s, dtype=float)
    return -0.5*dp.n*np.log(S2) - s**2/(2*alpha*S2) - _log_gaussian_mass(dp.n, alpha)


def _f_factor(dp):
    return np.exp(log_sphere_volume(dp.d))/dp.alpha


def lq_norm(field, q, dp):
    """
    Weighted L^q norm in the original variables.

    Parameters
    ----------
    field : RadialField
        Radial function in alpha-coordinates.
    q : float
        Exponent, q >= 1.
    dp : DerivedParams
        Derived parameters.

    Returns
    -------
    float
        ((|S^{d-1}|/alpha) int |u|^q s^{n-1} ds)^{1/q}, the norm of
        L^q(|x|^{-gamma} dx).
    """
    if q < 1:
        raise ValueError("q must be >= 1, got {}".format(q))

    total = math.fsum(field.rule.measure_weights*np.abs(field.values)**q)
    return (_f_factor(dp)*total)**(1./q)


def relative_l1_distance(field, dp, r0, t):
    """
    Distance in L^1(|x|^{-gamma} dx) between `field` and the self-similar
    solution at time `t` carrying the same mass.
    """
    weights = field.rule.measure_weights
    mass = math.fsum(weights*field.values)
    reference = heat_self_similar(dp, r0, t, field.rule.nodes)
    reference *= mass/math.fsum(weights*reference)

    return _f_factor(dp)*math.fsum(weights*np.abs(field.values - reference))


def fit_rate(times, values, floor=ENTROPY_FLOOR):
    """
    Least squares slope of log(values) over the last half of the samples.

    Returns None when fewer than three of those samples lie above `floor`.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)

    half = len(times)//2
    times = times[half:]
    values = values[half:]

    keep = values > floor
    if np.count_nonzero(keep) < 3:
        return None

    return np.polyfit(times[keep], np.log(values[keep]), 1)[0]



class FlowConfig(object):
    """
    Discretization of one radial flow.

    Parameters
    ----------
    dp : DerivedParams
        Derived parameters, n > 0 and alpha > 0.
    faces : int, optional
        Number of cells. Default is 1024.
    dt : float, optional
        Time step. Default is 1e-3.
    variant : {"heat", "fokker_planck", "ornstein_uhlenbeck"}, optional
        Which flow to evolve. Default is "ornstein_uhlenbeck".
    scheme : {"crank_nicolson"}, optional
        Time stepping scheme. Default is "crank_nicolson".
    s_max : float, None, optional
        Outer radius. If None, the quadrature tail radius of the relevant
        Gaussian is used. Default is None.
    grading : float, optional
        Faces are placed at ``s_max*(k/faces)**grading``. Default is 1.
    r0 : float, optional
        Initial scale of the self-similar reference of the heat flow.
        Default is 1.
    horizon : float, optional
        Largest time the heat flow is expected to run to, used for the
        default outer radius. Default is 10.
    angular_degree : int, optional
        Spherical harmonic degree of a decoupled linear channel. 0 evolves
        the radial flow itself. Default is 0.
    samples : int, optional
        Number of equally spaced trace samples. Default is 201.
    rannacher_steps : int, optional
        Number of initial steps replaced by two implicit Euler half steps.
        Default is 4.
    lq_exponents : sequence of float, optional
        Exponents q of the norms recorded along the trace. Default is ().
    """
    def __init__(self,
                 dp,
                 faces=1024,
                 dt=1e-3,
                 variant=ORNSTEIN_UHLENBECK,
                 scheme="crank_nicolson",
                 s_max=None,
                 grading=1.,
                 r0=1.,
                 horizon=10.,
                 angular_degree=0,
                 samples=201,
                 rannacher_steps=4,
                 lq_exponents=()):

        if variant not in VARIANTS:
            raise ValueError("variant must be one of {}, got {}".format(VARIANTS, variant))
        if scheme not in SCHEMES:
            raise ValueError("scheme must be one of {}, got {}".format(SCHEMES, scheme))
        if dp.n <= 0 or dp.alpha <= 0:
            raise ValueError("Flows require n > 0 and alpha > 0, got n={}, alpha={}".format(dp.n, dp.alpha))
        if faces < MINIMUM_COUNT:
            raise ValueError("At least {} cells are required, got {}".format(MINIMUM_COUNT, faces))
        if dt <= 0:
            raise ValueError("dt must be positive, got {}".format(dt))
        if grading < 1:
            raise ValueError("grading must be >= 1, got {}".format(grading))
        if r0 <= 0:
            raise ValueError("r0 must be positive, got {}".format(r0))
        if samples < 2:
            raise ValueError("At least two samples are required, got {}".format(samples))
        if int(angular_degree) != angular_degree or angular_degree < 0:
            raise ValueError("angular_degree must be a non-negative integer, got {}".format(angular_degree))

        self.dp = dp
        self.faces = int(faces)
        self.dt = float(dt)
        self.variant = variant
        self.scheme = scheme
        self.grading = float(grading)
        self.r0 = float(r0)
        self.horizon = float(horizon)
        self.angular_degree = int(angular_degree)
        self.samples = int(samples)
        self.rannacher_steps = int(rannacher_steps)
        self.lq_exponents = tuple(float(q) for q in lq_exponents)

        if s_max is None:
            if variant == HEAT:
                width = np.sqrt(dp.alpha*(self.r0**(2*dp.alpha) + 2*dp.alpha*self.horizon))
            else:
                width = np.sqrt(dp.alpha)
            s_max = tail_radius(dp.n, width)

        self.s_max = float(s_max)


    @property
    def linear_channel(self):
        return self.angular_degree > 0


    def face_radii(self):
        return self.s_max*(np.arange(self.faces + 1)/self.faces)**self.grading


    def log_density(self, s):
        """
        Logarithm of the density of the reference measure of the variant.
        """
        with np.errstate(divide="ignore"):
            log_rho = (self.dp.n - 1)*np.log(s)

        if self.variant != HEAT:
            log_rho = log_rho - s**2/(2*self.dp.alpha)
        return log_rho


    def cell_masses(self, faces):
        """
        Exact integrals of the reference density over the cells.
        """
        n = self.dp.n

        if self.variant == HEAT:
            with np.errstate(divide="ignore"):
                log_faces = np.log(faces)
            ratio = n*(log_faces[:-1] - log_faces[1:])
            return np.exp(n*log_faces[1:] - np.log(n))*(-np.expm1(ratio))

        a = 0.5*n
        x = faces**2/(2*self.dp.alpha)
        lower = gammainc(a, x)
        upper = gammaincc(a, x)
        fraction = np.where(x[:-1] > a, upper[:-1] - upper[1:], lower[1:] - lower[:-1])
        masses = np.exp(_log_gaussian_mass(n, self.dp.alpha))*fraction

        return np.maximum(masses, np.finfo(float).tiny)


    def rule(self):
        """
        The cells as a RadialRule whose weights are the cell masses of the
        reference measure.
        """
        faces = self.face_radii()
        centers = 0.5*(faces[:-1] + faces[1:])
        scale = np.inf if self.variant == HEAT else np.sqrt(self.dp.alpha)

        return RadialRule(self.dp.n, centers, np.log(self.cell_masses(faces)),
                          kind="finite_volume", scale=scale)


    def transmissibilities(self, faces, centers):
        """
        alpha^2 rho(f_k)/(c_k - c_{k-1}) on the interior faces.
        """
        interior = faces[1:-1]
        return self.dp.alpha**2*np.exp(self.log_density(interior))/np.diff(centers)


    def __repr__(self):
        return "FlowConfig(variant={}, faces={}, dt={}, s_max={})".format(
            self.variant, self.faces, self.dt, self.s_max)



class FlowTrace(object):
    """
    Sampled history of a simulation.

    Attributes
    ----------
    times : numpy.array
        Sample times. Fokker-Planck traces use the time tau.
    mass : numpy.array
        Discrete conserved quantity: the mass against s^{n-1} ds for the
        heat and Fokker-Planck flows, int w dmu for the Ornstein-Uhlenbeck
        flow.
    entropy : numpy.array
        Relative entropy with respect to the reference state of the same
        mass. The Ornstein-Uhlenbeck measure is normalized to one. For a
        linear channel this is the quadratic energy instead.
    fisher : numpy.array
        Relative Fisher information, or the Dirichlet energy of a linear
        channel.
    deviation : numpy.array
        Relative L^2 distance to the reference state.
    lq_norms : OrderedDict
        q -> array of weighted L^q norms in the original variables.
    l1_distance : numpy.array, None
        L^1 distance to the self-similar solution of the same mass,
        heat flow only.
    final : RadialField
        State at the last sample.
    """
    columns = ["t", "mass", "entropy", "fisher"]

    def __init__(self, variant, dp, r0, times, mass, entropy, fisher, deviation,
                 lq_norms=None, l1_distance=None, final=None):
        self.variant = variant
        self.dp = dp
        self.r0 = r0
        self.times = np.asarray(times, dtype=float)
        self.mass = np.asarray(mass, dtype=float)
        self.entropy = np.asarray(entropy, dtype=float)
        self.fisher = np.asarray(fisher, dtype=float)
        self.deviation = np.asarray(deviation, dtype=float)
        self.l1_distance = None if l1_distance is None else np.asarray(l1_distance, dtype=float)
        self.final = final

        self.lq_norms = OrderedDict()
        if lq_norms is not None:
            for q in lq_norms:
                self.lq_norms[float(q)] = np.asarray(lq_norms[q], dtype=float)


    def __len__(self):
        return len(self.times)


    def header(self):
        """
        CSV header: t, mass, entropy, fisher, then one lq_<q> per norm.
        """
        return self.columns + ["lq_{:g}".format(q) for q in self.lq_norms]


    def rows(self):
        """
        Iterate over the samples as lists of floats, in `header` order.
        """
        for i in range(len(self)):
            row = [self.times[i], self.mass[i], self.entropy[i], self.fisher[i]]
            row.extend(self.lq_norms[q][i] for q in self.lq_norms)
            yield row


    def __repr__(self):
        return "FlowTrace(variant={}, samples={})".format(self.variant, len(self))



class _Discretization(object):
    """
    Assembled finite volume operators of one FlowConfig.
    """
    def __init__(self, config):
        self.config = config
        dp = config.dp

        faces = config.face_radii()
        self.rule = config.rule()
        self.centers = np.asarray(self.rule.nodes)
        self.masses = np.asarray(self.rule.weights)
        self.transmissibility = config.transmissibilities(faces, self.centers)

        ell = config.angular_degree
        self.reaction = self.masses*ell*(ell + dp.d - 2)/self.centers**2


    def apply(self, w):
        """
        K w.
        """
        flux = np.zeros(len(w) + 1)
        flux[1:-1] = self.transmissibility*np.diff(w)
        return -np.diff(flux) + self.reaction*w


    def banded(self, factor):
        """
        M + factor K in the layout of ``scipy.linalg.solve_banded``.
        """
        count = len(self.masses)
        ab = np.zeros((3, count))

        diagonal = self.masses + factor*self.reaction
        diagonal[:-1] += factor*self.transmissibility
        diagonal[1:] += factor*self.transmissibility

        ab[0, 1:] = -factor*self.transmissibility
        ab[1] = diagonal
        ab[2, :-1] = -factor*self.transmissibility
        return ab


    def step(self, w, dt, implicit_fraction):
        rhs = self.masses*w
        if implicit_fraction < 1:
            rhs = rhs - (1 - implicit_fraction)*dt*self.apply(w)

        return solve_banded((1, 1), self.banded(implicit_fraction*dt), rhs)



class FlowSimulator(object):
    """
    Crank-Nicolson simulation of the radial flows.

    Parameters
    ----------
    progress_bar : bool, optional
        Show a tqdm progress bar over the time steps. Default is True.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less
        severe than this level is ignored. If None, no logging is performed.
        Default logger level is "info".
    """
    def __init__(self, progress_bar=True, logger_level="info"):
        self.progress_bar = progress_bar

        setup_module_logger(class_instance=self, level=logger_level)


    def field(self, config, function):
        """
        Sample `function` on the cells of `config`.
        """
        return RadialField.from_function(config.rule(), function)


    def _initial_state(self, config, disc, u0):
        if callable(u0):
            values = np.asarray(u0(disc.centers), dtype=float)
        else:
            values = np.asarray(u0.values, dtype=float)
            if not np.allclose(u0.rule.nodes, disc.centers, rtol=1e-14, atol=0):
                raise ValueError("u0 does not live on the cells of the flow, build it with FlowSimulator.field")

        if values.shape != disc.centers.shape or not np.all(np.isfinite(values)):
            raise ValueError("u0 must be finite on all {} cells".format(len(disc.centers)))

        if not config.linear_channel and np.any(values < 0):
            raise ValueError("u0 must be non-negative")

        if config.variant == FOKKER_PLANCK:
            values = values*np.exp(disc.centers**2/(2*config.dp.alpha))

        return values


    def _sample(self, config, disc, w, t):
        """
        Diagnostics of the state `w` at time `t`.
        """
        masses = disc.masses
        mass = math.fsum(masses*w)

        if config.linear_channel:
            total = math.fsum(masses)
            energy = 0.5*math.fsum(masses*w**2)/total
            dirichlet = (math.fsum(disc.transmissibility*np.diff(w)**2)
                         + math.fsum(disc.reaction*w**2))/total
            return mass, energy, dirichlet, np.sqrt(2*energy), None

        if config.variant == HEAT:
            return self._heat_sample(config, disc, w, t, mass)

        total = math.fsum(masses)
        mean = mass/total
        if mean <= 0:
            return mass, 0., 0., 0., None

        normalization = total if config.variant == ORNSTEIN_UHLENBECK else 1.

        delta = w/mean - 1
        with np.errstate(invalid="ignore", divide="ignore"):
            density = np.where(delta > -1, (1 + delta)*np.log1p(delta) - delta, 1.)
            face = 0.5*(w[:-1] + w[1:])
            local = np.where(face > ENTROPY_CUTOFF, np.diff(w)**2/face, 0.)

        entropy = mean*math.fsum(masses*density)/normalization
        fisher = math.fsum(disc.transmissibility*local)/normalization
        deviation = np.sqrt(math.fsum(masses*delta**2)/total)

        return mass, entropy, fisher, deviation, None


    def _heat_sample(self, config, disc, u, t, mass):
        masses = disc.masses
        if mass <= 0:
            return mass, 0., 0., 0., 0.

        log_reference = _log_heat_self_similar(config.dp, config.r0, t, disc.centers)
        reference = np.exp(log_reference)

        # reference of the same mass
        log_mean = np.log(mass) - np.log(math.fsum(masses*reference))
        reference = np.exp(log_reference + log_mean)

        positive = u > 0
        with np.errstate(invalid="ignore", divide="ignore"):
            log_u = np.log(np.where(positive, u, 1.))
            log_ratio = log_u - log_reference - log_mean
            entropy = math.fsum(np.where(positive, masses*u*log_ratio, 0.))

            face = 0.5*(u[:-1] + u[1:])
            local = np.where(positive[:-1] & positive[1:], face*np.diff(log_ratio)**2, 0.)
        fisher = math.fsum(disc.transmissibility*local)

        l1 = math.fsum(masses*np.abs(u - reference))
        return mass, entropy, fisher, l1/mass, l1


    def _targets(self, config, t_end, sample_times):
        if sample_times is None:
            return np.linspace(0, t_end, config.samples)

        targets = np.unique(np.concatenate(([0.], np.asarray(sample_times, dtype=float), [t_end])))
        if targets[0] < 0 or targets[-1] > t_end:
            raise ValueError("Sample times must lie in [0, t_end]")
        return targets


    def simulate(self, config, u0, t_end, sample_times=None):
        """
        Evolve `u0` to `t_end`.

        Parameters
        ----------
        config : FlowConfig
            Discretization and variant.
        u0 : RadialField, callable
            Initial state on the cells of `config` (see `field`), or a
            function of s. The heat flow takes the density u, the
            Fokker-Planck flow the density v and the Ornstein-Uhlenbeck flow
            the ratio w with int w dmu = 1.
        t_end : float
            Final time.
        sample_times : array_like, None, optional
            Times at which the trace is sampled in addition to 0 and t_end.
            If None, `config.samples` equally spaced times are used.
            Default is None.

        Returns
        -------
        trace : FlowTrace
            The sampled trace.

        Raises
        ------
        ConsistencyError
            If a value drops below -1e-12 relative to the initial maximum,
            the conserved quantity drifts by more than 1e-8, or the entropy
            of the Fokker-Planck or Ornstein-Uhlenbeck flow increases.
        """
        logger = get_logger(self)

        if t_end <= 0:
            raise ValueError("t_end must be positive, got {}".format(t_end))

        disc = _Discretization(config)
        w = self._initial_state(config, disc, u0)
        targets = self._targets(config, t_end, sample_times)

        segments = [max(1, int(np.ceil((b - a)/config.dt - 1e-9))) for a, b in zip(targets[:-1], targets[1:])]
        logger.info("Simulating the {} flow to t = {:g} with {} steps on {} cells".format(
            config.variant, t_end, sum(segments), config.faces))

        scale = np.max(np.abs(w))
        records = [self._sample(config, disc, w, targets[0])]
        lq_records = [self._norms(config, disc, w)]

        remaining_startup = config.rannacher_steps
        progress = tqdm(total=sum(segments), desc="Simulating {}".format(config.variant),
                        disable=not self.progress_bar)

        for index, count in enumerate(segments):
            dt = (targets[index + 1] - targets[index])/count
            logger.debug("Segment {} with dt = {:g}".format(index, dt))

            for _ in range(count):
                if remaining_startup > 0:
                    w = disc.step(w, 0.5*dt, 1.)
                    w = disc.step(w, 0.5*dt, 1.)
                    remaining_startup -= 1
                else:
                    w = disc.step(w, dt, 0.5)

                if not config.linear_channel and np.min(w) < -NEGATIVITY_TOLERANCE*scale:
                    progress.close()
                    raise ConsistencyError("Stability failure: value {:g} after a step".format(np.min(w)))

                progress.update(1)

            records.append(self._sample(config, disc, w, targets[index + 1]))
            lq_records.append(self._norms(config, disc, w))
            self._check(config, records)

        progress.close()

        mass, entropy, fisher, deviation, l1 = zip(*records)
        lq_norms = OrderedDict((q, [record[q] for record in lq_records]) for q in config.lq_exponents)

        final = RadialField(disc.rule, self._physical(config, disc, w))

        return FlowTrace(config.variant, config.dp, config.r0, targets, mass, entropy, fisher,
                         deviation, lq_norms=lq_norms,
                         l1_distance=l1 if config.variant == HEAT and not config.linear_channel else None,
                         final=final)


    def _physical(self, config, disc, w):
        """
        The evolved variable in the frame `u0` was given in.
        """
        if config.variant == FOKKER_PLANCK:
            return w*np.exp(-disc.centers**2/(2*config.dp.alpha))
        return np.array(w, dtype=float)


    def _norms(self, config, disc, w):
        field = RadialField(disc.rule, self._physical(config, disc, w))
        return {q: lq_norm(field, q, config.dp) for q in config.lq_exponents}


    def _check(self, config, records):
        if config.linear_channel:
            return

        initial = records[0][0]
        current = records[-1][0]
        if abs(current - initial) > MASS_TOLERANCE*abs(initial):
            raise ConsistencyError("Conserved quantity drifted from {!r} to {!r}".format(initial, current))

        if config.variant == HEAT or len(records) < 3:
            return

        previous = records[-2][1]
        entropy = records[-1][1]
        if entropy > previous + ENTROPY_INCREASE_TOLERANCE*records[0][1] + ENTROPY_FLOOR:
            raise ConsistencyError("Entropy increased from {!r} to {!r}".format(previous, entropy))



def decay_diagnostics(trace, dp, floor=ENTROPY_FLOOR):
    """
    Decay rates and the convergence check of a trace.

    Parameters
    ----------
    trace : FlowTrace
        Ornstein-Uhlenbeck or Fokker-Planck trace for the rates, heat trace
        for the convergence to the self-similar solution.
    dp : DerivedParams
        Derived parameters.
    floor : float, optional
        Samples with entropy below `floor` are not used for the fits.
        Default is 1e-14.

    Returns
    -------
    report : DecayReport
        entropy_rate, fisher_rate and deviation_rate are the least squares
        slopes of the logarithms over the last half of the trace, None when
        not identifiable. cia_bound_ok checks
        ||u(t) - u*(t)||_1 <= sqrt(2 M Ent_0) (r0^{2 alpha}/(r0^{2 alpha} + 2 alpha t))
        along a heat trace, cia_half_ok the same with the constant
        sqrt(Ent_0)/2 in the original variables. Both are None for other
        variants. The constant sqrt(Ent_0)/2 is smaller than the
        Csiszar-Kullback constant and cia_half_ok is False on the heat traces
        computed so far.

    Raises
    ------
    ValueError
        If the trace has fewer than 4 samples.
    """
    if len(trace) < 4:
        raise ValueError("At least 4 samples are required for a fit, got {}".format(len(trace)))

    if trace.variant == HEAT:
        if trace.l1_distance is None:
            return DecayReport(None, None, None, None, None)

        alpha = dp.alpha
        start = trace.r0**(2*alpha)
        decay = start/(start + 2*alpha*trace.times)
        slack = 1 + 1e-9

        bound = np.sqrt(2*trace.mass[0]*trace.entropy[0])*decay
        cia_bound_ok = bool(np.all(trace.l1_distance <= bound*slack + floor))

        factor = _f_factor(dp)
        half_bound = 0.5*np.sqrt(factor*trace.entropy[0])*decay
        cia_half_ok = bool(np.all(factor*trace.l1_distance <= half_bound*slack + floor))

        return DecayReport(None, None, None, cia_bound_ok, cia_half_ok)

    keep = trace.entropy > floor
    entropy_rate = fit_rate(trace.times, trace.entropy, floor)
    fisher_rate = fit_rate(trace.times[keep], trace.fisher[keep], 0.) if np.any(keep) else None
    deviation_rate = fit_rate(trace.times[keep], trace.deviation[keep], 0.) if np.any(keep) else None

    return DecayReport(entropy_rate, fisher_rate, deviation_rate, None, None)



def hyper_experiment(dp, c, q, r, u0, faces=1024, dt=1e-3, tol=1e-3, count=20,
                     t_range=None, s_max=None, simulator=None):
    """
    Check the hypercontractive estimate along the heat flow.

    Parameters
    ----------
    dp : DerivedParams
        Derived parameters in the symmetry range.
    c : float
        Logarithmic Sobolev constant used for the schedule, usually C*.
    q, r : float
        Exponents, 1 < q <= r. q = r checks that the norm does not expand.
    u0 : callable
        Non-negative initial density as a function of s.
    faces : int, optional
        Number of cells. Default is 1024.
    dt : float, optional
        Time step. Default is 1e-3.
    tol : float, optional
        Relative tolerance of the comparisons. Default is 1e-3.
    count : int, optional
        Number of log spaced sample times. Default is 20.
    t_range : tuple, None, optional
        First and last sample time. If None, (t_star/10, 10 t_star), or
        (1e-2/alpha, 1/alpha) when q = r. Default is None.
    s_max : float, None, optional
        Outer radius of the grid. Default is None.
    simulator : FlowSimulator, None, optional
        Simulator to use. Default is None, which creates a quiet one.

    Returns
    -------
    report : HyperReport
        The schedule, the sample times, ||u(t)||_r, the bounds
        H ||u0||_q t^{-(n/2)(r - q)/(q r)}, ||u0||_q, ||u(t_star)||_r, the
        two checks and the exponent schedule evaluated at t_star.

    Raises
    ------
    ValueError
        If r < q or q <= 1.
    """
    if r < q:
        raise ValueError("hyper_experiment requires r >= q, got q={}, r={}".format(q, r))
    if q <= 1:
        raise ValueError("hyper_experiment requires q > 1, got q={}".format(q))

    if simulator is None:
        simulator = FlowSimulator(progress_bar=False, logger_level=None)

    if r == q:
        schedule = None
        t_star = 0.
        exponent = q
        first, last = t_range if t_range is not None else (1e-2/dp.alpha, 1./dp.alpha)
    else:
        schedule = hyper_schedule(dp.n, c, q, r)
        t_star = schedule.t_star
        exponent = exponent_schedule(schedule.sigma, q, t_star)
        first, last = t_range if t_range is not None else (0.1*t_star, 10*t_star)

    times = np.geomspace(first, last, count)
    sample_times = np.unique(np.concatenate((times, [t_star]))) if t_star > 0 else times

    config = FlowConfig(dp, faces=faces, dt=dt, variant=HEAT, s_max=s_max,
                        horizon=last, lq_exponents=(q, r), samples=2)
    trace = simulator.simulate(config, u0, last, sample_times=sample_times)

    norm_initial = trace.lq_norms[q][0]
    norms_r = trace.lq_norms[r]

    lookup = dict(zip(trace.times, norms_r))
    norms = np.array([lookup[t] for t in times])

    if r == q:
        bounds = np.full(len(times), norm_initial)
        norm_at_t_star = norm_initial
    else:
        power = 0.5*dp.n*(r - q)/(q*r)
        bounds = schedule.h_const*norm_initial*times**(-power)
        norm_at_t_star = lookup[t_star]

    t_star_ok = bool(norm_at_t_star <= norm_initial*(1 + tol))
    bound_ok = bool(np.all(norms <= bounds*(1 + tol)))

    return HyperReport(schedule=schedule, times=times, norms=norms, bounds=bounds,
                       norm_initial=norm_initial, norm_at_t_star=norm_at_t_star,
                       t_star_ok=t_star_ok, bound_ok=bound_ok, exponent_at_t_star=exponent)
