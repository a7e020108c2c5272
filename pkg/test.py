import unittest
import sys
import click

from tests import *


verbose = 1


def to_iterable(iterable):
    if not isinstance(iterable, (list, tuple)):
        iterable = [iterable]
    return iterable


def create_test_suite(test_classes_to_run=[]):
    loader = unittest.TestLoader()

    test_classes_to_run = to_iterable(test_classes_to_run)

    suites_list = []
    for test_class in test_classes_to_run:
        suite = loader.loadTestsFromTestCase(test_class)
        suites_list.append(suite)

    big_suite = unittest.TestSuite(suites_list)
    return big_suite


def run(test_cases=[]):
    suite = create_test_suite(test_cases)

    runner = unittest.TextTestRunner(verbosity=verbose)
    results = runner.run(suite)

    errors = len(results.errors)
    failures = len(results.failures)
    run = results.testsRun
    print("------------------------------------------------------")
    print("Test: run={} errors={} failures={}".format(run, errors, failures))

    if not results.wasSuccessful():
        sys.exit(1)



testing_parameters = [TestProblemParams, TestDerive, TestClassify, TestSampleAdmissible]

testing_constants = [TestConstants, TestHyperSchedule]

testing_quadrature = [TestRadialRule, TestSphereRule, TestIntegrate]

testing_functionals = [TestCandidate, TestDeficit, TestPotential, TestEulerLagrange]

testing_spectral = [TestInstabilityMode, TestRadialEigensolve]

testing_carre_du_champ = [TestPressureField, TestKBulk, TestSphereMargin, TestFisherIdentity]

testing_flows = [TestSelfSimilarMap, TestFlowConfig, TestFlowSimulator, TestDecayDiagnostics,
                 TestHyperExperiment]

testing_ckn = [TestCknConstants, TestLimitProbe]

testing_deficit_search = [TestAnsatz, TestDeficitSearch]

testing_utils = [TestLogger, TestTable, TestTraceStore]

testing_fast = testing_parameters + testing_constants + testing_quadrature + testing_functionals\
               + testing_carre_du_champ + testing_ckn + testing_utils + [TestScan, TestCli]

testing_all = testing_fast + testing_spectral + testing_flows + testing_deficit_search


@click.group()
@click.option('--verbosity', default=1, help="Verbosity of test runner.")
def cli(verbosity):
    global verbose
    verbose = verbosity


@cli.command()
def parameters():
    run(testing_parameters)


@cli.command()
def constants():
    run(testing_constants)


@cli.command()
def quadrature():
    run(testing_quadrature)


@cli.command()
def functionals():
    run(testing_functionals)


@cli.command()
def spectral():
    run(testing_spectral)


@cli.command()
def carre_du_champ():
    run(testing_carre_du_champ)


@cli.command()
def flows():
    run(testing_flows)


@cli.command()
def ckn():
    run(testing_ckn)


@cli.command()
def deficit_search():
    run(testing_deficit_search)


@cli.command()
def scan():
    run(TestScan)


@cli.command()
def command_line():
    run(TestCli)


@cli.command()
def logger():
    run(TestLogger)


@cli.command()
def utilities():
    run(testing_utils)


@cli.command()
def fast():
    run(testing_fast)


@cli.command()
def all():
    run(testing_all)


if __name__ == '__main__':
    cli()
