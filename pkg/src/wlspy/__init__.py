"""
wlspy is a python toolbox for numerical checks of weighted Euclidean
logarithmic Sobolev inequalities.

The weights are powers of the radius, |x|^{-beta} on the gradient and
|x|^{-gamma} on the entropy. wlspy computes the admissible parameter set, the
closed-form optimal constant of the radial optimizer and the boundary where
symmetry breaks. It evaluates the inequality on arbitrary candidate
functions with radial and spherical quadratures, solves the linearized
eigenvalue problem, verifies the curvature identities behind the symmetry
proof and simulates the weighted heat, Fokker-Planck and
Ornstein-Uhlenbeck flows. It also connects the constants to the p -> 1 limit
of the Caffarelli-Kohn-Nirenberg interpolation inequalities and searches
for candidates with negative deficit in the symmetry breaking range.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

from .parameters import ProblemParams, DerivedParams, Region
from .parameters import derive, is_admissible, require_admissible, classify, from_artificial
from .constants import evaluate_constants, lambda1, delta_coefficient, hyper_schedule
from .quadrature import RadialRule, SphereRule, RadialField, radial_rule, sphere_rule, integrate
from .functionals import Candidate, deficit, norms_and_entropy, optimizer_profile, implied_constant
from .spectral import radial_eigensolve, instability_certificate
from .carre_du_champ import k_bulk, sphere_inequality_margin, fisher_dissipation_identity
from .flows import FlowConfig, FlowSimulator, FlowTrace, decay_diagnostics, hyper_experiment
from .ckn import ckn_constants, limit_probe
from .deficit_search import Ansatz, DeficitSearch
from .scan import Scan, ScanSpec
from .trace import Table, TraceStore
from .exceptions import (InadmissibleParametersError, QuadratureAccuracyError,
                         ConsistencyError, ConvergenceError)
from ._version import __version__
