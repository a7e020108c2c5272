import unittest

import numpy as np

from wlspy.parameters import ProblemParams, DerivedParams, Region
from wlspy.parameters import derive, is_admissible, require_admissible, classify
from wlspy.parameters import from_artificial, sample_admissible
from wlspy.exceptions import InadmissibleParametersError


class TestProblemParams(unittest.TestCase):
    def test_init(self):
        params = ProblemParams(3, -1, -1)

        self.assertEqual(params.d, 3)
        self.assertIsInstance(params.beta, float)
        self.assertIsInstance(params.gamma, float)


    def test_unpack(self):
        d, beta, gamma = ProblemParams(2, -0.5, -1)

        self.assertEqual((d, beta, gamma), (2, -0.5, -1.))


    def test_invalid_dimension(self):
        with self.assertRaises(ValueError):
            ProblemParams(0, -1, -1)

        with self.assertRaises(ValueError):
            ProblemParams(2.5, -1, -1)



class TestDerive(unittest.TestCase):
    def test_derive(self):
        dp = derive(ProblemParams(3, -1, -1))

        self.assertIsInstance(dp, DerivedParams)
        self.assertAlmostEqual(dp.n, 4)
        self.assertAlmostEqual(dp.alpha, 1)
        self.assertAlmostEqual(dp.nu, -1)
        self.assertAlmostEqual(dp.p_star, 2)
        self.assertAlmostEqual(dp.alpha_fs, 0.8164966, places=7)
        self.assertAlmostEqual(dp.beta_fs, -1.8284271, places=7)


    def test_derive_anisotropic(self):
        dp = derive(ProblemParams(3, -2.5, -1))

        self.assertAlmostEqual(dp.n, 16)
        self.assertAlmostEqual(dp.alpha, 0.25)
        self.assertAlmostEqual(dp.nu, -13)
        self.assertAlmostEqual(dp.alpha_fs, 0.3651484, places=7)


    def test_derive_infinite_p_star(self):
        dp = derive(ProblemParams(3, 1, 2))

        self.assertTrue(np.isinf(dp.p_star))


    def test_derive_no_beta_fs(self):
        dp = derive(ProblemParams(3, -0.5, 1))

        self.assertIsNone(dp.beta_fs)


    def test_derive_undefined(self):
        with self.assertRaises(InadmissibleParametersError):
            derive(ProblemParams(3, -3, -1))


    def test_is_admissible(self):
        self.assertTrue(is_admissible(ProblemParams(3, -1, -1)))
        self.assertFalse(is_admissible(ProblemParams(3, 0, 0)))
        self.assertFalse(is_admissible(ProblemParams(3, 0.5, 0)))
        self.assertFalse(is_admissible(ProblemParams(3, -3.5, -1)))
        self.assertFalse(is_admissible(ProblemParams(3, 0, 3)))


    def test_require_admissible(self):
        dp = require_admissible(ProblemParams(3, -1, -1), minimum_dimension=2)
        self.assertAlmostEqual(dp.n, 4)

        with self.assertRaises(InadmissibleParametersError):
            require_admissible(ProblemParams(3, 0, 0))

        with self.assertRaises(InadmissibleParametersError):
            require_admissible(ProblemParams(1, -1, -1), minimum_dimension=2)


    def test_inadmissible_is_value_error(self):
        with self.assertRaises(ValueError):
            require_admissible(ProblemParams(3, 0, 0))


    def test_from_artificial(self):
        params = from_artificial(3, 4, 1)

        self.assertAlmostEqual(params.beta, -1)
        self.assertAlmostEqual(params.gamma, -1)

        dp = derive(from_artificial(3, 16, 0.25))
        self.assertAlmostEqual(dp.n, 16)
        self.assertAlmostEqual(dp.alpha, 0.25)


    def test_from_artificial_invalid(self):
        with self.assertRaises(InadmissibleParametersError):
            from_artificial(3, 4, 0)

        with self.assertRaises(InadmissibleParametersError):
            from_artificial(3, -1, 1)



class TestClassify(unittest.TestCase):
    def test_symmetry_breaking(self):
        self.assertEqual(classify(ProblemParams(3, -1, -1)), Region.SYMMETRY_BREAKING)


    def test_symmetry(self):
        self.assertEqual(classify(ProblemParams(3, -2.5, -1)), Region.SYMMETRY)
        self.assertEqual(classify(ProblemParams(2, -1, 0)), Region.SYMMETRY)


    def test_one_dimension(self):
        self.assertEqual(classify(ProblemParams(1, -1.5, -1)), Region.SYMMETRY)


    def test_inadmissible(self):
        self.assertEqual(classify(ProblemParams(3, 0, 0)), Region.INADMISSIBLE)


    def test_boundary(self):
        beta_fs = derive(ProblemParams(3, -1, -1)).beta_fs

        self.assertEqual(classify(ProblemParams(3, beta_fs, -1)), Region.FS_BOUNDARY)
        self.assertEqual(classify(ProblemParams(3, beta_fs + 1e-6, -1)), Region.SYMMETRY_BREAKING)
        self.assertEqual(classify(ProblemParams(3, beta_fs - 1e-6, -1)), Region.SYMMETRY)


    def test_tags(self):
        for params in [ProblemParams(3, -1, -1), ProblemParams(3, 0, 0), ProblemParams(2, -1, 0)]:
            self.assertIn(classify(params), Region.tags)



class TestSampleAdmissible(unittest.TestCase):
    def test_sample_admissible(self):
        samples = sample_admissible(3, 20, seed=10)

        self.assertGreater(len(samples), 0)
        self.assertLessEqual(len(samples), 20)

        for params in samples:
            self.assertTrue(is_admissible(params))
            self.assertGreaterEqual(params.gamma, -6)


    def test_sample_admissible_range(self):
        samples = sample_admissible(2, 10, gamma_range=(-2, -1), seed=10)

        for params in samples:
            self.assertTrue(-2 <= params.gamma <= -1)


    def test_sample_admissible_invalid_range(self):
        with self.assertRaises(ValueError):
            sample_admissible(3, 10, gamma_range=(1, 4))


if __name__ == "__main__":
    unittest.main()
