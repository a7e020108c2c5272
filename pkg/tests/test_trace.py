import os
import shutil
import unittest

import numpy as np

from wlspy.parameters import ProblemParams, derive
from wlspy.flows import FlowConfig, FlowSimulator
from wlspy.scan import Scan, ScanSpec
from wlspy.trace import Table, TraceStore


class TestTable(unittest.TestCase):
    def setUp(self):
        self.table = Table(["a", "b", "c"], [[1, "x", None], [2., "y", 3.]], meta={"d": 3})


    def test_table(self):
        self.assertEqual(len(self.table), 2)
        self.assertEqual(self.table.meta, {"d": 3})

        np.testing.assert_array_equal(self.table.column("a"), [1, 2])
        self.assertTrue(np.isnan(self.table.column("c")[0]))


    def test_records(self):
        records = self.table.records()

        self.assertEqual(records[0], {"a": 1, "b": "x", "c": None})
        self.assertEqual(records[1]["c"], 3.)


    def test_invalid(self):
        with self.assertRaises(ValueError):
            Table(["a", "b"], [[1, 2, 3]])

        with self.assertRaises(ValueError):
            self.table.column("e")



class TestTraceStore(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)

        self.dp = derive(ProblemParams(3, -1, -1))
        config = FlowConfig(self.dp, faces=64, dt=0.05, samples=5, lq_exponents=(2, 4))
        simulator = FlowSimulator(progress_bar=False, logger_level="error")

        self.trace = simulator.simulate(config, lambda s: 1 + 0.01*(s**2 - 4), 0.5)
        self.store = TraceStore(logger_level="error")


    def tearDown(self):
        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def test_save_load(self):
        filename = os.path.join(self.output_test_dir, "trace.h5")

        self.store.save(self.trace, filename)
        loaded = self.store.load(filename)

        self.assertEqual(loaded.variant, "ornstein_uhlenbeck")
        self.assertEqual(loaded.dp.d, 3)
        self.assertEqual(loaded.dp.n, self.dp.n)
        self.assertEqual(loaded.r0, self.trace.r0)

        for name in ["times", "mass", "entropy", "fisher", "deviation"]:
            np.testing.assert_array_equal(getattr(loaded, name), getattr(self.trace, name))

        self.assertEqual(list(loaded.lq_norms), [2., 4.])
        np.testing.assert_array_equal(loaded.lq_norms[4.], self.trace.lq_norms[4.])
        self.assertIsNone(loaded.l1_distance)

        np.testing.assert_array_equal(loaded.final.values, self.trace.final.values)
        np.testing.assert_array_equal(loaded.final.rule.nodes, self.trace.final.rule.nodes)
        self.assertEqual(loaded.final.rule.kind, "finite_volume")
        self.assertEqual(loaded.header(), self.trace.header())


    def test_unknown_extension(self):
        filename = os.path.join(self.output_test_dir, "trace.dat")

        self.store.save(self.trace, filename)
        loaded = self.store.load(filename)

        np.testing.assert_array_equal(loaded.entropy, self.trace.entropy)


    def test_table(self):
        filename = os.path.join(self.output_test_dir, "scan.h5")
        table = Scan(logger_level="error").run(ScanSpec(3, (-3, -1, 3), (-2, 0, 3)))

        self.store.save_table(table, filename)
        loaded = self.store.load_table(filename)

        self.assertEqual(loaded.header, table.header)
        self.assertEqual(len(loaded), 9)
        self.assertEqual(loaded.meta["beta_steps"], 3)

        self.assertEqual(loaded.records()[5]["region"], table.records()[5]["region"])
        self.assertIsNone(loaded.records()[3]["c_star"])
        self.assertAlmostEqual(loaded.records()[5]["lambda1"], table.records()[5]["lambda1"])


    def test_load_wrong_kind_closes_file(self):
        filename = os.path.join(self.output_test_dir, "scan.h5")
        table = Scan(logger_level="error").run(ScanSpec(3, (-3, -1, 3), (-2, 0, 3)))
        self.store.save_table(table, filename)

        with self.assertRaises(KeyError):
            self.store.load(filename)

        self.store.save(self.trace, filename)
        loaded = self.store.load(filename)

        np.testing.assert_array_equal(loaded.entropy, self.trace.entropy)


    def test_invalid_backend(self):
        with self.assertRaises(ValueError):
            TraceStore(backend="csv")


if __name__ == "__main__":
    unittest.main()
