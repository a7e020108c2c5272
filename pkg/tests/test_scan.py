import unittest
from unittest import mock

import numpy as np

from wlspy.scan import Scan, ScanSpec, scan_point, SCAN_COLUMNS
from wlspy.parameters import Region
from wlspy.trace import Table


class TestScan(unittest.TestCase):
    def setUp(self):
        self.spec = ScanSpec(3, (-3, -1, 3), (-2, 0, 3))


    def test_points(self):
        points = self.spec.points()

        self.assertEqual(len(self.spec), 9)
        self.assertEqual(points[0], (3, -3, -2))
        self.assertEqual(points[1], (3, -2, -2))
        self.assertEqual(points[3], (3, -3, -1))
        self.assertEqual(points[-1], (3, -1, 0))


    def test_run(self):
        table = Scan(logger_level="error").run(self.spec)

        self.assertIsInstance(table, Table)
        self.assertEqual(len(table), 9)
        self.assertEqual(table.header, SCAN_COLUMNS)
        self.assertEqual(table.meta["beta_steps"], 3)
        self.assertEqual(table.meta["gamma_steps"], 3)

        np.testing.assert_allclose(table.column("beta"), [-3, -2, -1]*3)
        np.testing.assert_allclose(table.column("gamma"), [-2]*3 + [-1]*3 + [0]*3)

        admissible = [row[3] for row in table.rows]
        self.assertEqual(admissible, [True, True, True, False, True, True, False, False, True])


    def test_inadmissible_rows(self):
        table = Scan(logger_level="error").run(self.spec)
        row = table.records()[3]

        self.assertEqual(row["region"], Region.INADMISSIBLE)
        for column in SCAN_COLUMNS[5:]:
            self.assertIsNone(row[column])


    def test_values(self):
        table = Scan(logger_level="error").run(self.spec)
        row = table.records()[5]

        self.assertEqual(row["region"], Region.SYMMETRY_BREAKING)
        self.assertAlmostEqual(row["n"], 4)
        self.assertAlmostEqual(row["alpha"], 1)
        self.assertAlmostEqual(row["c_star"], -5.2241714, places=6)
        self.assertAlmostEqual(row["lambda1"], -0.2679492, places=7)


    def test_parallel(self):
        serial = Scan(logger_level="error").run(self.spec)
        parallel = Scan(processes=2, logger_level="error").run(self.spec)

        self.assertEqual(serial.rows, parallel.rows)


    def test_parallel_workers_stopped(self):
        import multiprocess as mp

        Scan(processes=2, logger_level="error").run(self.spec)
        self.assertEqual(mp.active_children(), [])

        with mock.patch("wlspy.scan.tqdm", side_effect=RuntimeError("interrupted")):
            with self.assertRaises(RuntimeError):
                Scan(processes=2, logger_level="error").run(self.spec)

        self.assertEqual(mp.active_children(), [])


    def test_outputs(self):
        spec = ScanSpec(3, (-3, -1, 3), (-2, 0, 3), outputs=["lambda1", "d"])
        table = Scan(logger_level="error").run(spec)

        self.assertEqual(table.header, ["d", "lambda1"])
        self.assertEqual(len(table.rows[0]), 2)


    def test_single_value(self):
        spec = ScanSpec(3, (-1, -1, 1), (-1, -1, 1))

        self.assertEqual(spec.points(), [(3, -1, -1)])


    def test_scan_point(self):
        row = scan_point((1, -1.5, -1))

        self.assertEqual(len(row), len(SCAN_COLUMNS))
        self.assertIsNone(row[-1])


    def test_invalid(self):
        with self.assertRaises(ValueError):
            ScanSpec(3, (-3, -1, 1), (-2, 0, 3))

        with self.assertRaises(ValueError):
            ScanSpec(3, (-np.inf, -1, 3), (-2, 0, 3))

        with self.assertRaises(ValueError):
            ScanSpec(3, (-3, -1, 3), (-2, 0, 3), outputs=["deficit"])


if __name__ == "__main__":
    unittest.main()
