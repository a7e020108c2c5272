import unittest

import numpy as np

from wlspy.parameters import ProblemParams, derive, sample_admissible
from wlspy.constants import evaluate_constants
from wlspy.quadrature import RadialField, radial_rule
from wlspy.functionals import Candidate, spherical_harmonic, optimizer_profile, sigma_optimizer_profile
from wlspy.functionals import f_star, norms_and_entropy, deficit, implied_constant, log_holder_gap
from wlspy.functionals import potential, potential_min_radius, el_residual, schrodinger_energy
from wlspy.functionals import to_f_variables, DeficitReport


def polynomial_candidate(rule, dp, coefficient=0.1):
    g_star = optimizer_profile(rule, dp)
    s = rule.nodes
    factor = 1 + coefficient*s**2

    return Candidate(RadialField(rule, g_star.values*factor,
                                 g_star.derivative*factor + 2*coefficient*s*g_star.values))


class TestCandidate(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -1, -1))
        self.rule = radial_rule(self.dp.n, 64)
        self.g_star = optimizer_profile(self.rule, self.dp)


    def test_radial(self):
        candidate = Candidate(self.g_star)

        self.assertTrue(candidate.is_radial)
        self.assertIs(candidate.rule, self.rule)


    def test_angular_mode(self):
        candidate = Candidate(self.g_star, angular_mode=(1, 0.5*self.g_star))

        self.assertFalse(candidate.is_radial)
        self.assertEqual(candidate.angular_mode[0], 1)


    def test_angular_mode_invalid(self):
        with self.assertRaises(ValueError):
            Candidate(self.g_star, angular_mode=(0, self.g_star))

        other = optimizer_profile(radial_rule(self.dp.n, 64), self.dp)
        with self.assertRaises(ValueError):
            Candidate(self.g_star, angular_mode=(1, other))


    def test_grid_values(self):
        from wlspy.quadrature import sphere_rule

        sphere = sphere_rule(3, 8)
        candidate = Candidate(self.g_star, angular_mode=(1, self.g_star))
        values = candidate.grid_values(sphere)

        self.assertEqual(values.shape, (len(self.rule), 8))
        np.testing.assert_allclose(values[:, 0], self.g_star.values*(1 + np.cos(sphere.theta[0])))


    def test_scaled(self):
        candidate = Candidate(self.g_star, angular_mode=(1, self.g_star)).scaled(2.)

        np.testing.assert_allclose(candidate.radial_profile.values, 2*self.g_star.values)
        np.testing.assert_allclose(candidate.angular_mode[1].values, 2*self.g_star.values)


    def test_spherical_harmonic(self):
        theta = np.linspace(0.1, 3, 7)

        np.testing.assert_allclose(spherical_harmonic(1, 3, theta), np.cos(theta))
        np.testing.assert_allclose(spherical_harmonic(2, 2, theta), np.cos(2*theta))
        np.testing.assert_allclose(spherical_harmonic(2, 3, theta), 0.5*(3*np.cos(theta)**2 - 1))
        self.assertAlmostEqual(spherical_harmonic(3, 5, 0.), 1)


    def test_f_star(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        c_nd = evaluate_constants(dp).c_nd

        self.assertAlmostEqual(f_star(dp, 0.), np.sqrt(0.25)*c_nd)
        self.assertAlmostEqual(f_star(dp, 1.), np.sqrt(0.25)*c_nd*np.exp(-0.25))



class TestDeficit(unittest.TestCase):
    def setUp(self):
        self.dp = derive(ProblemParams(3, -1, -1))
        self.rule = radial_rule(self.dp.n, 128)
        self.g_star = Candidate(optimizer_profile(self.rule, self.dp))


    def test_optimizer_normalized(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, -2.5, -1), ProblemParams(2, -0.5, -1)]:
            dp = derive(params)
            rule = radial_rule(dp.n, 128)
            norms = norms_and_entropy(Candidate(optimizer_profile(rule, dp)), dp)

            self.assertAlmostEqual(norms.norm_sq, 1, places=10)
            self.assertAlmostEqual(norms.grad_sq, 0.25*dp.alpha**2*dp.n, places=10)
            self.assertAlmostEqual(norms.entropy, evaluate_constants(dp).y_star, places=9)


    def test_optimizer_sampled(self):
        samples = []
        for d in [2, 3, 4, 5]:
            samples.extend(sample_admissible(d, 5, margin=0.05, seed=d))

        self.assertEqual(len(samples), 20)

        for params in samples:
            dp = derive(params)
            rule = radial_rule(dp.n, 256)
            g_star = Candidate(optimizer_profile(rule, dp))
            norms = norms_and_entropy(g_star, dp)
            y_star = evaluate_constants(dp).y_star
            grad_sq = 0.25*dp.alpha**2*dp.n

            message = "{}".format(params)
            self.assertLessEqual(abs(norms.norm_sq - 1), 1e-8, msg=message)
            self.assertLessEqual(abs(norms.grad_sq - grad_sq), 1e-8*max(1., grad_sq), msg=message)
            self.assertLessEqual(abs(norms.entropy - y_star), 1e-8*max(1., abs(y_star)), msg=message)
            self.assertLessEqual(abs(deficit(g_star, dp).deficit), 1e-8*max(1., abs(y_star)), msg=message)


    def test_optimizer_zero_deficit(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, -2.5, -1), ProblemParams(1, -1.5, -1)]:
            dp = derive(params)
            rule = radial_rule(dp.n, 128)
            report = deficit(Candidate(optimizer_profile(rule, dp)), dp)

            self.assertIsInstance(report, DeficitReport)
            self.assertEqual(report.form, "scale_invariant")
            self.assertAlmostEqual(report.deficit, 0, places=9)


    def test_implied_constant(self):
        norms = norms_and_entropy(self.g_star, self.dp)

        self.assertAlmostEqual(implied_constant(norms, self.dp), evaluate_constants(self.dp).k_star, places=9)


    def test_radial_perturbation_positive(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, -2.5, -1)]:
            dp = derive(params)
            rule = radial_rule(dp.n, 128)
            report = deficit(polynomial_candidate(rule, dp), dp)

            self.assertGreater(report.deficit, 1e-6)


    def test_scaling(self):
        candidate = polynomial_candidate(self.rule, self.dp)

        report = deficit(candidate, self.dp)
        scaled = deficit(candidate.scaled(3.), self.dp)

        self.assertAlmostEqual(scaled.deficit/report.deficit, 9, places=8)


    def test_larger_constant(self):
        k_star = evaluate_constants(self.dp).k_star
        report = deficit(self.g_star, self.dp, k_or_sigma=k_star + 0.1)

        self.assertGreater(report.deficit, 0)
        self.assertEqual(report.parameter, k_star + 0.1)


    def test_sigma_form(self):
        for sigma in [0.5, 2.]:
            candidate = Candidate(sigma_optimizer_profile(self.rule, self.dp, sigma))
            report = deficit(candidate, self.dp, form="sigma_form", k_or_sigma=sigma)

            self.assertEqual(report.parameter, sigma)
            self.assertAlmostEqual(report.deficit, 0, places=9)


    def test_gaussian_form(self):
        ones = np.ones(len(self.rule))
        candidate = Candidate(RadialField(self.rule, ones, 0*ones))

        report = deficit(candidate, self.dp, form="gaussian_form")

        self.assertAlmostEqual(report.norm_sq, 1, places=10)
        self.assertAlmostEqual(report.deficit, 0, places=10)


    def test_angular_norm(self):
        g_star = self.g_star.radial_profile
        candidate = Candidate(g_star, angular_mode=(1, g_star))

        norms = norms_and_entropy(candidate, self.dp)

        self.assertAlmostEqual(norms.norm_sq, 1 + 1/3., places=10)


    def test_angular_mode_one_dimension(self):
        dp = derive(ProblemParams(1, -1.5, -1))
        rule = radial_rule(dp.n, 64)
        g_star = optimizer_profile(rule, dp)

        with self.assertRaises(ValueError):
            norms_and_entropy(Candidate(g_star, angular_mode=(1, g_star)), dp)


    def test_invalid(self):
        with self.assertRaises(ValueError):
            deficit(self.g_star, self.dp, form="unknown")

        zeros = np.zeros(len(self.rule))
        with self.assertRaises(ValueError):
            deficit(Candidate(RadialField(self.rule, zeros, zeros)), self.dp)

        with self.assertRaises(ValueError):
            deficit(self.g_star, self.dp, form="sigma_form", k_or_sigma=-1)

        with self.assertRaises(ValueError):
            deficit(Candidate(RadialField(self.rule, self.g_star.radial_profile.values)), self.dp)


    def test_log_holder_gap(self):
        for p in [2.5, 3, 6]:
            self.assertGreater(log_holder_gap(self.g_star, self.dp, p), 0)

        with self.assertRaises(ValueError):
            log_holder_gap(self.g_star, self.dp, 2)


    def test_to_f_variables(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        rule = radial_rule(dp.n, 128)
        norms = norms_and_entropy(Candidate(optimizer_profile(rule, dp)), dp)

        f_norms = to_f_variables(norms, dp)
        self.assertAlmostEqual(f_norms.norm_sq, 4*norms.norm_sq)
        self.assertAlmostEqual(f_norms.grad_sq, 4*norms.grad_sq)



class TestPotential(unittest.TestCase):
    def test_min_radius(self):
        dp = derive(ProblemParams(3, -1, -1))

        self.assertAlmostEqual(potential_min_radius(dp, 0.5), np.sqrt(3))


    def test_minimum(self):
        dp = derive(ProblemParams(3, -1, -1))
        radius = potential_min_radius(dp, 0.5)

        values = potential(dp, 0.5, radius*np.array([0.9, 1, 1.1]))
        self.assertLess(values[1], values[0])
        self.assertLess(values[1], values[2])


    def test_invalid(self):
        dp = derive(ProblemParams(3, -1, -1))

        with self.assertRaises(ValueError):
            potential(dp, 0.5, 0.)

        with self.assertRaises(ValueError):
            potential_min_radius(dp, 0)

        from wlspy.parameters import from_artificial
        with self.assertRaises(ValueError):
            potential_min_radius(derive(from_artificial(2, 1.5, 1)), 0.5)


    def test_schrodinger_energy(self):
        dp = derive(ProblemParams(3, -1, -1))
        rule = radial_rule(dp.n, 128, shift=-2)
        candidate = Candidate(optimizer_profile(rule, dp))

        h_energy, potential_term = schrodinger_energy(candidate, dp)
        norms = norms_and_entropy(candidate, dp)

        self.assertAlmostEqual(h_energy - potential_term, norms.grad_sq, places=9)



class TestEulerLagrange(unittest.TestCase):
    def test_closed_solution(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(2, -1, -0.5), ProblemParams(4, -1, -0.5),
                       ProblemParams(3, -1.5, -1), ProblemParams(5, -1, -1)]:
            dp = derive(params)
            rule = radial_rule(dp.n, 2048, kind="uniform")
            alpha = dp.alpha
            field = RadialField.from_function(rule, lambda s: np.exp(0.5*(dp.n + 1) - s**2/(2*alpha**2)))

            self.assertLess(el_residual(Candidate(field), dp), 1e-6)


    def test_optimizer_is_not_solution(self):
        dp = derive(ProblemParams(3, -1, -1))
        rule = radial_rule(dp.n, 2048, kind="uniform")

        self.assertGreater(el_residual(Candidate(optimizer_profile(rule, dp)), dp), 1e-3)


    def test_invalid(self):
        dp = derive(ProblemParams(3, -1, -1))
        rule = radial_rule(dp.n, 64)

        with self.assertRaises(ValueError):
            el_residual(Candidate(optimizer_profile(rule, dp)), dp)

        uniform = radial_rule(dp.n, 64, kind="uniform")
        g_star = optimizer_profile(uniform, dp)
        with self.assertRaises(ValueError):
            el_residual(Candidate(g_star, angular_mode=(1, g_star)), dp)


if __name__ == "__main__":
    unittest.main()
