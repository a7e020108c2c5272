import unittest

import numpy as np
from scipy.special import gamma as gamma_function

from wlspy.parameters import ProblemParams, derive
from wlspy.constants import evaluate_constants
from wlspy.quadrature import RadialField, radial_rule, tail_radius
from wlspy.flows import FlowConfig, FlowTrace, FlowSimulator, DecayReport, HyperReport
from wlspy.flows import self_similar_map, fp_time, to_fp, from_fp, heat_self_similar
from wlspy.flows import stationary_profile, lq_norm, relative_l1_distance, fit_rate
from wlspy.flows import decay_diagnostics, hyper_experiment
from wlspy.exceptions import ConsistencyError


def eigenmode(dp, epsilon):
    """First radial Ornstein-Uhlenbeck eigenfunction, decaying like exp(-2 alpha t)."""
    return lambda s: 1 + epsilon*(s**2 - dp.n*dp.alpha)


class TestSelfSimilarMap(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -1, -1))


    def test_self_similar_map(self):
        self.assertAlmostEqual(self_similar_map(1.5, 1., self.dp), 2)
        self.assertAlmostEqual(self_similar_map(0, 3., self.dp), 3)
        self.assertAlmostEqual(fp_time(1.5, 1., self.dp), np.log(2))


    def test_green_function_branch(self):
        dp = derive(ProblemParams(3, -2.5, -1))

        self.assertAlmostEqual(self_similar_map(2., 0., dp), 1.)
        self.assertEqual(self_similar_map(0., 0., dp), 0)


    def test_invalid(self):
        with self.assertRaises(ValueError):
            self_similar_map(-1, 1., self.dp)

        with self.assertRaises(ValueError):
            self_similar_map(1, -1., self.dp)

        with self.assertRaises(ValueError):
            to_fp(np.exp, 0, 0, self.dp)


    def test_round_trip(self):
        u = lambda x: np.exp(-x**2)*(1 + x)
        x = np.linspace(0, 4, 9)

        back = from_fp(to_fp(u, 0.7, 1., self.dp), 0.7, 1., self.dp)

        np.testing.assert_allclose(back(x), u(x), rtol=1e-14)


    def test_to_fp_scaling(self):
        u = lambda x: np.ones_like(x)
        v = to_fp(u, 1.5, 1., self.dp)

        self.assertAlmostEqual(v(np.array([0.5]))[0], 2**(self.dp.alpha*self.dp.n))


    def test_heat_self_similar_mass(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, -2.5, -1)]:
            dp = derive(params)
            rule = radial_rule(dp.n, 64, scale=np.sqrt(dp.alpha))

            field = RadialField.from_function(rule, lambda s: heat_self_similar(dp, 1., 0., s, mass=2.))
            self.assertAlmostEqual(np.sum(rule.measure_weights*field.values), 2, places=10)


    def test_heat_self_similar_is_stationary_at_unit_scale(self):
        s = np.linspace(0, 5, 11)

        np.testing.assert_allclose(heat_self_similar(self.dp, 1., 0., s), stationary_profile(self.dp, s))


    def test_heat_self_similar_singular(self):
        with self.assertRaises(ValueError):
            heat_self_similar(self.dp, 0., 0., 1.)


    def test_lq_norm(self):
        rule = radial_rule(self.dp.n, 64, scale=np.sqrt(self.dp.alpha))
        field = RadialField.from_function(rule, lambda s: stationary_profile(self.dp, s))

        self.assertAlmostEqual(lq_norm(field, 1, self.dp), 4*np.pi, places=10)

        with self.assertRaises(ValueError):
            lq_norm(field, 0.5, self.dp)


    def test_relative_l1_distance(self):
        rule = radial_rule(self.dp.n, 64, scale=np.sqrt(self.dp.alpha*2))
        field = RadialField.from_function(rule, lambda s: heat_self_similar(self.dp, 1., 0.5, s, mass=3.))

        self.assertAlmostEqual(relative_l1_distance(field, self.dp, 1., 0.5), 0, places=12)


    def test_fit_rate(self):
        times = np.linspace(0, 2, 21)

        self.assertAlmostEqual(fit_rate(times, 5*np.exp(-3*times)), -3)
        self.assertIsNone(fit_rate(times, 1e-20*np.ones(21)))



class TestFlowConfig(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -1, -1))


    def test_defaults(self):
        config = FlowConfig(self.dp)

        self.assertEqual(config.variant, "ornstein_uhlenbeck")
        self.assertEqual(config.faces, 1024)
        self.assertFalse(config.linear_channel)
        self.assertAlmostEqual(config.s_max, tail_radius(self.dp.n, np.sqrt(self.dp.alpha)))
        self.assertIn("ornstein_uhlenbeck", repr(config))


    def test_heat_radius(self):
        config = FlowConfig(self.dp, variant="heat", horizon=1.5)

        self.assertAlmostEqual(config.s_max, tail_radius(self.dp.n, 2.))


    def test_gaussian_cell_masses(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        config = FlowConfig(dp, faces=256)
        rule = config.rule()

        total = (2*dp.alpha)**(0.5*dp.n)*gamma_function(0.5*dp.n)/2
        self.assertEqual(rule.kind, "finite_volume")
        self.assertEqual(len(rule), 256)
        self.assertAlmostEqual(np.sum(rule.weights)/total, 1, places=12)


    def test_heat_cell_masses(self):
        config = FlowConfig(self.dp, faces=128, variant="heat", s_max=5.)
        rule = config.rule()

        self.assertAlmostEqual(np.sum(rule.weights)/(5.**self.dp.n/self.dp.n), 1, places=12)
        np.testing.assert_allclose(rule.measure_weights, rule.weights)


    def test_grading(self):
        config = FlowConfig(self.dp, faces=16, grading=2., s_max=4.)
        faces = config.face_radii()

        self.assertEqual(len(faces), 17)
        self.assertAlmostEqual(faces[1], 4./256)
        self.assertAlmostEqual(faces[-1], 4.)


    def test_invalid(self):
        with self.assertRaises(ValueError):
            FlowConfig(self.dp, variant="porous_medium")

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, scheme="euler")

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, faces=4)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, dt=0)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, grading=0.5)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, r0=0)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, samples=1)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, angular_degree=-1)

        with self.assertRaises(ValueError):
            FlowConfig(self.dp, angular_degree=1.5)



class TestFlowSimulator(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -1, -1))
        self.simulator = FlowSimulator(progress_bar=False, logger_level="error")


    def test_ou_stationary(self):
        config = FlowConfig(self.dp, faces=128, dt=0.01, samples=11)
        trace = self.simulator.simulate(config, lambda s: np.ones_like(s), 1.)

        self.assertIsInstance(trace, FlowTrace)
        self.assertEqual(len(trace), 11)
        np.testing.assert_allclose(trace.final.values, 1, atol=1e-10)
        self.assertTrue(np.all(trace.entropy < 1e-12))


    def test_ou_rates(self):
        config = FlowConfig(self.dp, faces=512, dt=0.01, samples=31)
        trace = self.simulator.simulate(config, eigenmode(self.dp, 1e-3), 3.)

        report = decay_diagnostics(trace, self.dp)

        self.assertIsInstance(report, DecayReport)
        self.assertAlmostEqual(report.entropy_rate/(-4*self.dp.alpha), 1, delta=0.02)
        self.assertAlmostEqual(report.fisher_rate/(-4*self.dp.alpha), 1, delta=0.02)
        self.assertAlmostEqual(report.deviation_rate/(-2*self.dp.alpha), 1, delta=0.01)
        self.assertIsNone(report.cia_bound_ok)


    def test_ou_rates_generic_data(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        config = FlowConfig(dp, faces=256, dt=0.05, samples=25)

        for u0 in [lambda s: np.exp(-0.5*s**2),
                   lambda s: 1/(1 + s**2),
                   lambda s: 1 + 0.5*np.cos(3*s),
                   lambda s: 2 + np.tanh(s - 1)]:
            trace = self.simulator.simulate(config, u0, 24.)
            report = decay_diagnostics(trace, dp)

            self.assertLessEqual(report.entropy_rate, -4*dp.alpha*0.98)
            self.assertLessEqual(report.fisher_rate, -2*dp.alpha*0.98)


    def test_ou_entropy_decreasing(self):
        config = FlowConfig(self.dp, faces=256, dt=0.01, samples=21)
        trace = self.simulator.simulate(config, lambda s: np.exp(-0.1*s**2), 1.)

        self.assertTrue(np.all(np.diff(trace.entropy) < 0))
        self.assertLess(trace.entropy[-1], 0.2*trace.entropy[0])


    def test_fokker_planck(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        config = FlowConfig(dp, faces=512, dt=0.04, variant="fokker_planck", samples=31)
        stationary = lambda s: stationary_profile(dp, s)
        mode = eigenmode(dp, 1e-3)

        trace = self.simulator.simulate(config, lambda s: stationary(s)*mode(s), 12.)
        report = decay_diagnostics(trace, dp)

        self.assertAlmostEqual(report.entropy_rate/(-4*dp.alpha), 1, delta=0.02)

        reference = stationary(trace.final.rule.nodes)
        self.assertLess(np.max(np.abs(trace.final.values - reference)), 1e-3*np.max(reference))


    def test_heat_self_similar(self):
        config = FlowConfig(self.dp, faces=1024, dt=1e-3, variant="heat", s_max=12., samples=3)

        trace = self.simulator.simulate(config, lambda s: heat_self_similar(self.dp, 1., 0., s), 1.)

        exact = heat_self_similar(self.dp, 1., 1., trace.final.rule.nodes)
        self.assertLess(np.max(np.abs(trace.final.values - exact)), 2e-3*np.max(exact))
        np.testing.assert_allclose(trace.mass, trace.mass[0], rtol=1e-10)


    def test_heat_convergence_check(self):
        config = FlowConfig(self.dp, faces=1024, dt=0.01, variant="heat", s_max=15., samples=21)
        stationary = lambda s: heat_self_similar(self.dp, 1., 0., s)
        mode = eigenmode(self.dp, 1e-2)

        trace = self.simulator.simulate(config, lambda s: stationary(s)*mode(s), 2.)

        self.assertIsNotNone(trace.l1_distance)
        self.assertTrue(np.all(np.diff(trace.l1_distance) < 0))

        report = decay_diagnostics(trace, self.dp)
        self.assertTrue(report.cia_bound_ok)
        self.assertFalse(report.cia_half_ok)
        self.assertIsNone(report.entropy_rate)


    def test_lq_norms(self):
        config = FlowConfig(self.dp, faces=128, dt=0.01, variant="heat", horizon=1., samples=5,
                            lq_exponents=(2,))
        trace = self.simulator.simulate(config, lambda s: heat_self_similar(self.dp, 1., 0., s), 1.)

        self.assertEqual(trace.header(), ["t", "mass", "entropy", "fisher", "lq_2"])
        rows = list(trace.rows())
        self.assertEqual(len(rows), 5)
        self.assertEqual(len(rows[0]), 5)
        self.assertTrue(np.all(np.diff(trace.lq_norms[2.]) < 0))


    def test_linear_channel(self):
        config = FlowConfig(self.dp, faces=128, dt=0.01, angular_degree=1, samples=11)
        trace = self.simulator.simulate(config, lambda s: s - 1, 1.)

        self.assertTrue(config.linear_channel)
        self.assertTrue(np.all(np.diff(trace.entropy) <= 0))


    def test_sample_times(self):
        config = FlowConfig(self.dp, faces=64, dt=0.01)
        trace = self.simulator.simulate(config, lambda s: np.ones_like(s), 1., sample_times=[0.25, 0.5])

        np.testing.assert_allclose(trace.times, [0, 0.25, 0.5, 1])

        with self.assertRaises(ValueError):
            self.simulator.simulate(config, lambda s: np.ones_like(s), 1., sample_times=[2.])


    def test_field(self):
        config = FlowConfig(self.dp, faces=64, dt=0.01)
        u0 = self.simulator.field(config, lambda s: np.ones_like(s))

        trace = self.simulator.simulate(config, u0, 0.1)
        np.testing.assert_allclose(trace.final.values, 1, atol=1e-12)

        other = RadialField.from_function(radial_rule(self.dp.n, 64), lambda s: np.ones_like(s))
        with self.assertRaises(ValueError):
            self.simulator.simulate(config, other, 0.1)


    def test_invalid(self):
        config = FlowConfig(self.dp, faces=64, dt=0.01)

        with self.assertRaises(ValueError):
            self.simulator.simulate(config, lambda s: s - 1, 0.1)

        with self.assertRaises(ValueError):
            self.simulator.simulate(config, lambda s: np.ones_like(s), 0)

        with self.assertRaises(ValueError):
            self.simulator.simulate(config, lambda s: np.nan*s, 0.1)


    def test_consistency_error_is_runtime_error(self):
        self.assertTrue(issubclass(ConsistencyError, RuntimeError))



class TestDecayDiagnostics(unittest.TestCase):
    def test_too_few_samples(self):
        dp = derive(ProblemParams(3, -1, -1))
        trace = FlowTrace("ornstein_uhlenbeck", dp, 1., [0, 1, 2], [1]*3, [1, 0.5, 0.25],
                          [1]*3, [1]*3)

        with self.assertRaises(ValueError):
            decay_diagnostics(trace, dp)


    def test_synthetic(self):
        dp = derive(ProblemParams(3, -1, -1))
        times = np.linspace(0, 4, 41)
        trace = FlowTrace("ornstein_uhlenbeck", dp, 1., times, np.ones(41), np.exp(-4*times),
                          3*np.exp(-4*times), np.exp(-2*times))

        report = decay_diagnostics(trace, dp)

        self.assertAlmostEqual(report.entropy_rate, -4)
        self.assertAlmostEqual(report.fisher_rate, -4)
        self.assertAlmostEqual(report.deviation_rate, -2)


    def test_heat_without_distance(self):
        dp = derive(ProblemParams(3, -1, -1))
        times = np.linspace(0, 1, 5)
        trace = FlowTrace("heat", dp, 1., times, np.ones(5), np.ones(5), np.ones(5), np.ones(5))

        self.assertEqual(decay_diagnostics(trace, dp), (None, None, None, None, None))



class TestHyperExperiment(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -2.5, -1))
        self.c = evaluate_constants(self.dp).c_star
        self.u0 = lambda s: heat_self_similar(self.dp, 1., 0., s)


    def test_hyper_experiment(self):
        report = hyper_experiment(self.dp, self.c, 2, 4, self.u0)

        self.assertIsInstance(report, HyperReport)
        self.assertEqual(len(report.times), 20)
        self.assertTrue(report.t_star_ok)
        self.assertTrue(report.bound_ok)
        self.assertAlmostEqual(report.exponent_at_t_star, 4, places=10)
        self.assertLess(report.norm_at_t_star, report.norm_initial)


    def test_hyper_experiment_initial_data(self):
        gaussian = lambda s: heat_self_similar(self.dp, 1., 0., s)

        for u0 in [lambda s: heat_self_similar(self.dp, 0.8, 0., s),
                   lambda s: heat_self_similar(self.dp, 1.25, 0., s),
                   lambda s: gaussian(s)*(1 + 0.3*np.cos(4*s)),
                   lambda s: gaussian(s)*(1 + s**2),
                   lambda s: gaussian(s)*(2 + np.tanh(s - 0.5))]:
            report = hyper_experiment(self.dp, self.c, 2, 4, u0)

            self.assertTrue(report.t_star_ok)
            self.assertTrue(report.bound_ok)


    def test_degenerate(self):
        report = hyper_experiment(self.dp, self.c, 2, 2, self.u0, faces=256, dt=1e-2)

        self.assertIsNone(report.schedule)
        self.assertTrue(report.bound_ok)
        self.assertTrue(np.all(np.diff(report.norms) <= 0))


    def test_invalid(self):
        with self.assertRaises(ValueError):
            hyper_experiment(self.dp, self.c, 4, 2, self.u0)

        with self.assertRaises(ValueError):
            hyper_experiment(self.dp, self.c, 1, 2, self.u0)


if __name__ == "__main__":
    unittest.main()
