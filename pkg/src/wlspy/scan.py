from __future__ import absolute_import, division, print_function, unicode_literals

try:
    from itertools import imap
except ImportError:
    imap = map

import numpy as np
from tqdm import tqdm

from ._version import __version__
from .constants import evaluate_constants, lambda1
from .parameters import ProblemParams, classify, derive, is_admissible
from .trace import Table
from .utils.logger import setup_module_logger, get_logger

__all__ = ["ScanSpec", "Scan", "scan_point", "SCAN_COLUMNS"]


SCAN_COLUMNS = ["d", "beta", "gamma", "admissible", "region", "n", "alpha", "nu",
                "alpha_fs", "beta_fs", "c_star", "k_star", "lambda1"]


class ScanSpec(object):
    """
    A rectangular grid in the (beta, gamma) plane.

    Parameters
    ----------
    d : int
        Euclidean dimension.
    beta_range, gamma_range : tuple
        ``(min, max, steps)`` with finite bounds and steps >= 2, or
        ``(value, value, 1)`` for a single value.
    outputs : list of str, None, optional
        Columns to keep, in ``SCAN_COLUMNS`` order. Default is None, which
        keeps all.
    """
    def __init__(self, d, beta_range, gamma_range, outputs=None):
        self.d = int(d)
        self.beta_range = self._check_range(beta_range, "beta")
        self.gamma_range = self._check_range(gamma_range, "gamma")

        if outputs is None:
            outputs = SCAN_COLUMNS
        unknown = [column for column in outputs if column not in SCAN_COLUMNS]
        if unknown:
            raise ValueError("Unknown scan columns: {}. Valid columns are {}".format(unknown, SCAN_COLUMNS))
        self.outputs = [column for column in SCAN_COLUMNS if column in outputs]


    @staticmethod
    def _check_range(value_range, name):
        low, high, steps = value_range
        steps = int(steps)

        if not (np.isfinite(low) and np.isfinite(high)):
            raise ValueError("The {} range must be finite, got {}".format(name, value_range))

        if steps < 2 and not (steps == 1 and low == high):
            raise ValueError("The {} range needs at least 2 steps, got {}".format(name, steps))

        return float(low), float(high), steps


    def points(self):
        """
        Grid points with gamma in the outer and beta in the inner loop.
        """
        betas = np.linspace(*self.beta_range)
        gammas = np.linspace(*self.gamma_range)
        return [(self.d, beta, gamma) for gamma in gammas for beta in betas]


    def __len__(self):
        return self.beta_range[2]*self.gamma_range[2]



def scan_point(point):
    """
    One row of a scan for ``point = (d, beta, gamma)``.

    Inadmissible points get None in every derived column. lambda1 is None
    for d < 2.
    """
    d, beta, gamma = point
    params = ProblemParams(d, beta, gamma)

    admissible = is_admissible(params)
    row = [d, beta, gamma, admissible, classify(params)]

    if not admissible:
        return row + [None]*(len(SCAN_COLUMNS) - len(row))

    dp = derive(params)
    constants = evaluate_constants(dp)
    alpha_fs = None if np.isnan(dp.alpha_fs) else dp.alpha_fs
    value = lambda1(d, dp.n, dp.alpha) if d >= 2 and dp.n > 1 else None

    return row + [dp.n, dp.alpha, dp.nu, alpha_fs, dp.beta_fs,
                  constants.c_star, constants.k_star, value]



class Scan(object):
    """
    Evaluate the closed-form quantities on a parameter grid.

    Parameters
    ----------
    processes : {int, "max", None}, optional
        Number of worker processes. None evaluates the grid serially and
        "max" uses every core. Default is None.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less
        severe than this level is ignored. If None, no logging is performed.
        Default logger level is "info".
    """
    def __init__(self, processes=None, logger_level="info"):
        if processes == "max":
            import multiprocess as mp
            processes = mp.cpu_count()

        self.processes = processes

        setup_module_logger(class_instance=self, level=logger_level)


    def run(self, spec):
        """
        Evaluate every grid point of `spec`.

        Parameters
        ----------
        spec : ScanSpec
            The grid.

        Returns
        -------
        table : Table
            One row per grid point in grid order, restricted to
            ``spec.outputs``, with the grid sizes in ``table.meta``.
        """
        logger = get_logger(self)

        points = spec.points()
        logger.info("Scanning {} points for d = {}".format(len(points), spec.d))

        rows = []
        if self.processes:
            import multiprocess as mp

            pool = mp.Pool(processes=self.processes)
            try:
                # imap keeps the grid order
                for row in tqdm(pool.imap(scan_point, points, 1),
                                desc="Scanning",
                                total=len(points)):
                    rows.append(row)

                pool.close()
            except BaseException:
                pool.terminate()
                raise
            finally:
                pool.join()

        else:
            for row in tqdm(imap(scan_point, points),
                            desc="Scanning",
                            total=len(points)):
                rows.append(row)

        indices = [SCAN_COLUMNS.index(column) for column in spec.outputs]
        rows = [[row[i] for i in indices] for row in rows]

        meta = {"version": __version__, "d": spec.d,
                "beta_steps": spec.beta_range[2], "gamma_steps": spec.gamma_range[2]}

        return Table(spec.outputs, rows, meta=meta)
