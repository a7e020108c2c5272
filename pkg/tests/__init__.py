from .test_logger import TestLogger
from .test_parameters import TestProblemParams, TestDerive, TestClassify, TestSampleAdmissible
from .test_constants import TestConstants, TestHyperSchedule
from .test_quadrature import TestRadialRule, TestSphereRule, TestIntegrate
from .test_functionals import TestCandidate, TestDeficit, TestPotential, TestEulerLagrange
from .test_spectral import TestInstabilityMode, TestRadialEigensolve
from .test_carre_du_champ import TestPressureField, TestKBulk, TestSphereMargin, TestFisherIdentity
from .test_flows import TestSelfSimilarMap, TestFlowConfig, TestFlowSimulator
from .test_flows import TestDecayDiagnostics, TestHyperExperiment
from .test_ckn import TestCknConstants, TestLimitProbe
from .test_deficit_search import TestAnsatz, TestDeficitSearch
from .test_scan import TestScan
from .test_trace import TestTable, TestTraceStore
from .test_cli import TestCli
