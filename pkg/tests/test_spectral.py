import unittest

import numpy as np

from wlspy.parameters import ProblemParams, derive, from_artificial
from wlspy.constants import lambda1
from wlspy.functionals import Candidate, optimizer_profile, spherical_harmonic
from wlspy.quadrature import radial_rule, sphere_rule, integrate
from wlspy.spectral import instability_mode, hessian_form, radial_eigensolve, instability_certificate
from wlspy.spectral import EigenResult, STABLE, UNSTABLE, MARGINAL
from wlspy.exceptions import InadmissibleParametersError, ConvergenceError


def mode_quotient(dp):
    mode = instability_mode(dp)
    amplitude = mode.angular_mode[1]
    sphere = sphere_rule(dp.d)

    norm = (integrate(spherical_harmonic(1, dp.d, sphere.theta)**2, sphere)
            *integrate(amplitude.values**2, mode.rule, measure=True))
    return hessian_form(mode, dp)/norm


class TestInstabilityMode(unittest.TestCase):
    def test_instability_mode(self):
        dp = derive(ProblemParams(3, -1, -1))
        mode = instability_mode(dp, count=64)

        self.assertFalse(mode.is_radial)
        self.assertEqual(mode.angular_mode[0], 1)
        self.assertTrue(np.all(mode.radial_profile.values == 0))

        delta = lambda1(3, dp.n, dp.alpha)/dp.alpha**2
        self.assertAlmostEqual(mode.rule.shift, 2*delta)


    def test_rayleigh_quotient(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, -2.5, -1), ProblemParams(2, -1, -0.5),
                       ProblemParams(4, -1.5, -2)]:
            dp = derive(params)

            self.assertAlmostEqual(mode_quotient(dp), lambda1(dp.d, dp.n, dp.alpha), places=9)


    def test_hessian_form_radial(self):
        dp = derive(ProblemParams(3, -1, -1))
        rule = radial_rule(dp.n, 64)

        with self.assertRaises(ValueError):
            hessian_form(Candidate(optimizer_profile(rule, dp)), dp)


    def test_hessian_form_radial_component(self):
        dp = derive(ProblemParams(3, -1, -1))
        rule = radial_rule(dp.n, 64)
        g_star = optimizer_profile(rule, dp)

        with self.assertRaises(ValueError):
            hessian_form(Candidate(g_star, angular_mode=(1, g_star)), dp)


    def test_certificate(self):
        self.assertEqual(instability_certificate(ProblemParams(3, -1, -1)), UNSTABLE)
        self.assertEqual(instability_certificate(ProblemParams(3, -2.5, -1)), STABLE)
        self.assertEqual(instability_certificate(from_artificial(3, 4, np.sqrt(2/3.))), MARGINAL)


    def test_certificate_invalid(self):
        with self.assertRaises(InadmissibleParametersError):
            instability_certificate(ProblemParams(1, -1.5, -1))

        with self.assertRaises(InadmissibleParametersError):
            instability_certificate(ProblemParams(3, 0, 0))



class TestRadialEigensolve(unittest.TestCase):
    def test_isotropic(self):
        dp = derive(ProblemParams(3, -1, -1))
        result = radial_eigensolve(3, dp)

        self.assertIsInstance(result, EigenResult)
        self.assertAlmostEqual(result.lambda_formula, np.sqrt(3) - 2, places=12)
        self.assertAlmostEqual(result.lambda_numeric, np.sqrt(3) - 2, delta=1e-5)
        self.assertAlmostEqual(result.mode_quotient, np.sqrt(3) - 2, delta=1e-5)
        self.assertAlmostEqual(result.shift, 3)
        self.assertLess(result.error_estimate, 1e-2)


    def test_anisotropic(self):
        dp = derive(ProblemParams(3, -2.5, -1))
        result = radial_eigensolve(3, dp)

        self.assertAlmostEqual(result.lambda_numeric, 0.0625, delta=1e-5)


    def test_fine_grid(self):
        dp = derive(ProblemParams(3, -1, -1))
        result = radial_eigensolve(3, dp, grid_size=4096)

        self.assertAlmostEqual(result.lambda_numeric, np.sqrt(3) - 2, delta=1e-7)

        x = np.log(np.expm1(result.mode.rule.nodes))
        np.testing.assert_allclose(np.diff(x), x[1] - x[0], rtol=1e-6)


    def test_mode(self):
        dp = derive(ProblemParams(3, -1, -1))
        result = radial_eigensolve(3, dp, grid_size=256, max_error=1.)

        self.assertEqual(result.mode.rule.kind, "mapped_grid")
        self.assertAlmostEqual(integrate(result.mode.values**2, result.mode.rule, measure=True), 1)
        self.assertTrue(np.all(result.mode.values > -1e-6))


    def test_not_converged(self):
        dp = derive(ProblemParams(3, -1, -1))

        with self.assertRaises(ConvergenceError):
            radial_eigensolve(3, dp, grid_size=16, max_error=1e-12)


    def test_invalid(self):
        dp = derive(ProblemParams(3, -1, -1))

        with self.assertRaises(ValueError):
            radial_eigensolve(2, dp)

        with self.assertRaises(ValueError):
            radial_eigensolve(3, dp, grid_size=8)

        with self.assertRaises(ValueError):
            radial_eigensolve(1, derive(ProblemParams(1, -1.5, -1)))


if __name__ == "__main__":
    unittest.main()
