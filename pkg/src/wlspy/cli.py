from __future__ import absolute_import, division, print_function, unicode_literals

"""
Command line interface.

Every subcommand writes one table as CSV or JSON to standard output or
``--out``. Failures exit with 2 for invalid or inadmissible parameters,
3 for broken internal consistency and 4 for numerical non-convergence.
"""

import csv
import functools
import io
import json
import sys

import click
import numpy as np

from ._version import __version__
from .carre_du_champ import (AngularProfile, fisher_dissipation_identity, k_bulk,
                             pressure_from_terms, random_pressure_terms,
                             sphere_inequality_margin)
from .ckn import limit_estimates, limit_probe
from .constants import c_star_alternative, evaluate_constants, lambda1
from .deficit_search import FAMILIES, DeficitSearch, Ansatz, ansatz_candidate
from .exceptions import ConsistencyError, ConvergenceError
from .flows import (VARIANTS, HEAT, FOKKER_PLANCK, FlowConfig, FlowSimulator, decay_diagnostics,
                    heat_self_similar, hyper_experiment, stationary_profile)
from .functionals import FORMS, deficit, implied_constant
from .parameters import ProblemParams, classify, from_artificial, is_admissible, require_admissible
from .quadrature import radial_rule, sphere_rule
from .scan import Scan, ScanSpec
from .spectral import instability_certificate, radial_eigensolve
from .trace import Table, TraceStore
from .utils.logger import add_file_handler

__all__ = ["cli", "format_value", "write_table"]


def format_value(value):
    """
    Text form of a table cell: 17 significant digits for floats, true or
    false for flags, empty for missing values.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return ""
        return "{:.17g}".format(float(value))
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return None if not np.isfinite(value) else float(value)
    if isinstance(value, np.ndarray):
        return [_json_value(item) for item in value]
    return value


def write_table(table, out=None, output_format="csv"):
    """
    Write `table` as CSV or as JSON with a meta object.

    Parameters
    ----------
    table : Table
        The table.
    out : str, None, optional
        Output path. Default is None, which writes to standard output.
    output_format : {"csv", "json"}, optional
        Output format. Default is "csv".
    """
    buffer = io.StringIO()

    if output_format == "csv":
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([format_value(value) for value in row])
    else:
        document = {"meta": {key: _json_value(value) for key, value in table.meta.items()},
                    "rows": [{key: _json_value(value) for key, value in record.items()}
                             for record in table.records()]}
        buffer.write(json.dumps(document, indent=2, sort_keys=False))
        buffer.write("\n")

    text = buffer.getvalue()

    if out is None:
        click.echo(text, nl=False)
    else:
        try:
            with io.open(out, "w", encoding="utf8") as f:
                f.write(text)
        except (IOError, OSError) as error:
            raise click.FileError(out, hint=str(error))


def handle_errors(function):
    """
    Map the exceptions of wlspy to exit codes.
    """
    @functools.wraps(function)
    def wrapper(*args, **kwargs):
        try:
            return function(*args, **kwargs)
        except ConsistencyError as error:
            click.echo("Consistency failure: {}".format(error), err=True)
            sys.exit(ConsistencyError.exit_code)
        except ConvergenceError as error:
            click.echo("Convergence failure: {}".format(error), err=True)
            sys.exit(ConvergenceError.exit_code)
        except ValueError as error:
            click.echo("Invalid parameters: {}".format(error), err=True)
            sys.exit(2)

    return wrapper


def common_options(function):
    """
    Output, tolerance, seed and logging options shared by every subcommand.
    """
    options = [
        click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Output file, standard output by default."),
        click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default="csv",
                     show_default=True, help="Output format."),
        click.option("--tol", type=float, default=1e-8, show_default=True, help="Tolerance."),
        click.option("--seed", type=int, default=None, help="Random seed."),
        click.option("--log-level", type=click.Choice(["debug", "info", "warning", "error", "critical"]),
                     default="warning", show_default=True, help="Logging threshold."),
        click.option("--log-file", type=click.Path(dir_okay=False), default=None,
                     help="Also log to this file."),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def parameter_options(function):
    """
    ``--d`` with either ``--beta --gamma`` or ``--n --alpha``.
    """
    options = [
        click.option("--d", type=int, required=True, help="Euclidean dimension."),
        click.option("--beta", type=float, default=None, help="Gradient weight exponent."),
        click.option("--gamma", type=float, default=None, help="Entropy weight exponent."),
        click.option("--n", "n", type=float, default=None, help="Artificial dimension."),
        click.option("--alpha", type=float, default=None, help="Anisotropy exponent."),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def resolve_parameters(d, beta, gamma, n, alpha):
    """
    ProblemParams from one of the two mutually exclusive option groups.
    """
    raw = beta is not None or gamma is not None
    artificial = n is not None or alpha is not None

    if raw and artificial:
        raise click.UsageError("--beta/--gamma and --n/--alpha are mutually exclusive")

    if artificial:
        if n is None or alpha is None:
            raise click.UsageError("--n and --alpha must be given together")
        return from_artificial(d, n, alpha)

    if beta is None or gamma is None:
        raise click.UsageError("Give either --beta and --gamma or --n and --alpha")

    return ProblemParams(d, beta, gamma)


def _setup(log_file):
    if log_file is not None:
        add_file_handler(filename=log_file)


def _meta(tol, **extra):
    meta = {"version": __version__, "tol": tol}
    meta.update(extra)
    return meta


@click.group()
@click.version_option(__version__, prog_name="wlspy")
def cli():
    """
    Numerical checks of weighted logarithmic Sobolev inequalities.
    """
    pass


@cli.command("classify")
@parameter_options
@click.option("--boundary-tol", type=float, default=None,
              help="Relative distance to beta_FS reported as FSBoundary. Default is 1e-12.")
@common_options
@handle_errors
def classify_command(d, beta, gamma, n, alpha, boundary_tol, out, output_format, tol, seed, log_level,
                     log_file):
    """
    Region of a parameter point.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)

    region = classify(params) if boundary_tol is None else classify(params, tol=boundary_tol)
    row = [params.d, params.beta, params.gamma, is_admissible(params), region]
    table = Table(["d", "beta", "gamma", "admissible", "region"], [row],
                  meta=_meta(tol, boundary_tol=boundary_tol))
    write_table(table, out, output_format)


@cli.command()
@parameter_options
@common_options
@handle_errors
def constants(d, beta, gamma, n, alpha, out, output_format, tol, seed, log_level, log_file):
    """
    Closed-form constants.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params)
    report = evaluate_constants(dp)

    alternative = c_star_alternative(dp.d, dp.n, dp.alpha)
    if abs(alternative - report.c_star) > 1e-10*max(1., abs(report.c_star)):
        raise ConsistencyError("The two closed forms of C* disagree: {!r} and {!r}".format(
            report.c_star, alternative))

    header = ["d", "beta", "gamma", "n", "alpha", "nu", "p_star", "alpha_fs", "beta_fs",
              "c_nd", "c_star", "k_star", "y_star", "sigma_d", "lambda1"]
    value = lambda1(dp.d, dp.n, dp.alpha) if dp.d >= 2 and dp.n > 1 else None
    row = [params.d, params.beta, params.gamma, dp.n, dp.alpha, dp.nu, dp.p_star, dp.alpha_fs,
           dp.beta_fs, report.c_nd, report.c_star, report.k_star, report.y_star, report.sigma_d, value]

    write_table(Table(header, [row], meta=_meta(tol)), out, output_format)


@cli.command()
@click.option("--d", type=int, required=True, help="Euclidean dimension.")
@click.option("--beta-range", type=(float, float, int), required=True, help="min max steps")
@click.option("--gamma-range", type=(float, float, int), required=True, help="min max steps")
@click.option("--columns", default=None, help="Comma separated subset of the columns.")
@click.option("--processes", type=int, default=None, help="Number of worker processes.")
@common_options
@handle_errors
def scan(d, beta_range, gamma_range, columns, processes, out, output_format, tol, seed,
         log_level, log_file):
    """
    Closed-form quantities on a (beta, gamma) grid.
    """
    _setup(log_file)
    outputs = None if columns is None else [column.strip() for column in columns.split(",")]
    spec = ScanSpec(d, beta_range, gamma_range, outputs=outputs)

    table = Scan(processes=processes, logger_level=log_level).run(spec)
    table.meta["tol"] = tol
    write_table(table, out, output_format)


@cli.command()
@parameter_options
@click.option("--grid-size", type=int, default=2048, show_default=True, help="Coarse grid size.")
@common_options
@handle_errors
def eigen(d, beta, gamma, n, alpha, grid_size, out, output_format, tol, seed, log_level, log_file):
    """
    Lowest eigenvalue in the first nonradial mode.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params, minimum_dimension=2)

    result = radial_eigensolve(dp.d, dp, grid_size=grid_size)
    status = instability_certificate(params, tol=tol)

    header = ["d", "beta", "gamma", "lambda_numeric", "lambda_formula", "error_estimate",
              "mode_quotient", "status"]
    row = [params.d, params.beta, params.gamma, result.lambda_numeric, result.lambda_formula,
           result.error_estimate, result.mode_quotient, status]
    write_table(Table(header, [row], meta=_meta(tol, grid_size=grid_size)), out, output_format)


@cli.command("deficit")
@parameter_options
@click.option("--epsilon", type=float, default=0., show_default=True,
              help="Amplitude of the instability mode added to g*.")
@click.option("--form", type=click.Choice(FORMS), default="scale_invariant", show_default=True)
@click.option("--count", type=int, default=128, show_default=True, help="Radial nodes.")
@common_options
@handle_errors
def deficit_command(d, beta, gamma, n, alpha, epsilon, form, count, out, output_format, tol, seed,
                    log_level, log_file):
    """
    Deficit of g* perturbed by the instability mode.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)

    family = "eigenmode_perturbation" if epsilon != 0 else "gaussian_times_poly"
    dp = require_admissible(params, minimum_dimension=2 if epsilon != 0 else 1)

    rule = radial_rule(dp.n, count)
    candidate = ansatz_candidate(Ansatz(family, [], epsilon=epsilon), dp, rule=rule)
    report = deficit(candidate, dp, form=form)

    header = ["d", "beta", "gamma", "epsilon", "form", "norm_sq", "grad_sq", "entropy", "deficit",
              "implied_k"]
    implied = implied_constant(report, dp) if form == "scale_invariant" else None
    row = [params.d, params.beta, params.gamma, epsilon, form, report.norm_sq, report.grad_sq,
           report.entropy, report.deficit, implied]
    write_table(Table(header, [row], meta=_meta(tol, count=count)), out, output_format)


@cli.command()
@parameter_options
@click.option("--terms", type=int, default=3, show_default=True, help="Random pressure terms.")
@click.option("--count", type=int, default=256, show_default=True, help="Radial nodes.")
@common_options
@handle_errors
def identity(d, beta, gamma, n, alpha, terms, count, out, output_format, tol, seed, log_level, log_file):
    """
    Pointwise curvature identity, Fisher dissipation identity and the
    integral estimate on the sphere for random data.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params, minimum_dimension=2)

    pressure_terms = random_pressure_terms(count=terms, seed=seed)
    rule = radial_rule(dp.n, count, kind="adaptive_panel")
    sphere = sphere_rule(dp.d, 64)
    pressure = pressure_from_terms(pressure_terms, dp.d, rule=rule, sphere=sphere)

    report = k_bulk(pressure, dp)
    lhs, rhs = fisher_dissipation_identity(pressure, dp)

    random = np.random.RandomState(seed)
    profile = AngularProfile.from_log_coefficients(sphere, random.uniform(-0.5, 0.5, size=4))
    margin = sphere_inequality_margin(profile, dp)

    fisher_residual = abs(lhs - rhs)/max(abs(lhs), abs(rhs), np.finfo(float).tiny)
    if report.max_residual > max(tol, 1e-10):
        raise ConsistencyError("Pointwise identity residual {:g} exceeds {:g}".format(
            report.max_residual, max(tol, 1e-10)))

    header = ["d", "beta", "gamma", "bulk_residual", "fisher_lhs", "fisher_rhs", "fisher_residual",
              "sphere_margin"]
    row = [params.d, params.beta, params.gamma, report.max_residual, lhs, rhs, fisher_residual, margin]
    write_table(Table(header, [row], meta=_meta(tol, count=count, terms=terms)), out, output_format)


def _perturbed_initial_data(variant, dp, r0, epsilon):
    mode = lambda s, width: 1 + epsilon*(s**2/width - dp.n*dp.alpha)

    if variant == HEAT:
        start = r0**(2*dp.alpha)
        return lambda s: heat_self_similar(dp, r0, 0., s)*mode(s, start)
    if variant == FOKKER_PLANCK:
        return lambda s: stationary_profile(dp, s)*mode(s, 1.)
    return lambda s: mode(s, 1.)


@cli.command()
@parameter_options
@click.option("--variant", type=click.Choice(VARIANTS), default="ornstein_uhlenbeck", show_default=True)
@click.option("--t-end", type=float, default=None, help="Final time, 10/alpha by default.")
@click.option("--dt", type=float, default=1e-3, show_default=True)
@click.option("--faces", type=int, default=1024, show_default=True, help="Number of cells.")
@click.option("--samples", type=int, default=201, show_default=True)
@click.option("--epsilon", type=float, default=1e-3, show_default=True,
              help="Size of the radial perturbation of the equilibrium.")
@click.option("--r0", type=float, default=1., show_default=True)
@click.option("--q", "exponents", type=float, multiple=True, help="Record L^q norms.")
@click.option("--trace-file", type=click.Path(dir_okay=False), default=None,
              help="Also save the trace as HDF5 or Exdir.")
@click.option("--backend", type=click.Choice(["auto", "hdf5", "exdir"]), default="auto", show_default=True)
@common_options
@handle_errors
def flow(d, beta, gamma, n, alpha, variant, t_end, dt, faces, samples, epsilon, r0, exponents,
         trace_file, backend, out, output_format, tol, seed, log_level, log_file):
    """
    Simulate a radial flow from a perturbed equilibrium.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params)

    if t_end is None:
        t_end = 10./dp.alpha

    config = FlowConfig(dp, faces=faces, dt=dt, variant=variant, r0=r0, horizon=t_end,
                        samples=samples, lq_exponents=exponents)
    simulator = FlowSimulator(progress_bar=False, logger_level=log_level)
    trace = simulator.simulate(config, _perturbed_initial_data(variant, dp, r0, epsilon), t_end)

    if trace_file is not None:
        TraceStore(backend=backend, logger_level=log_level).save(trace, trace_file)

    report = decay_diagnostics(trace, dp)
    meta = _meta(tol, variant=variant, faces=faces, dt=dt, t_end=t_end,
                 entropy_rate=report.entropy_rate, fisher_rate=report.fisher_rate,
                 cia_bound_ok=report.cia_bound_ok, cia_half_ok=report.cia_half_ok)

    write_table(Table(trace.header(), list(trace.rows()), meta=meta), out, output_format)


@cli.command()
@parameter_options
@click.option("--q", type=float, default=2., show_default=True)
@click.option("--r", type=float, default=4., show_default=True)
@click.option("--faces", type=int, default=1024, show_default=True)
@click.option("--dt", type=float, default=1e-3, show_default=True)
@common_options
@handle_errors
def hyper(d, beta, gamma, n, alpha, q, r, faces, dt, out, output_format, tol, seed, log_level, log_file):
    """
    Hypercontractive estimate along the heat flow from the self-similar profile.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params)
    constant = evaluate_constants(dp).c_star

    report = hyper_experiment(dp, constant, q, r, lambda s: heat_self_similar(dp, 1., 0., s),
                              faces=faces, dt=dt, tol=max(tol, 1e-3),
                              simulator=FlowSimulator(progress_bar=False, logger_level=log_level))

    meta = _meta(tol, q=q, r=r, faces=faces, dt=dt, norm_initial=report.norm_initial,
                 norm_at_t_star=report.norm_at_t_star, t_star_ok=report.t_star_ok,
                 bound_ok=report.bound_ok)
    if report.schedule is not None:
        meta.update(sigma=report.schedule.sigma, t_star=report.schedule.t_star,
                    h_const=report.schedule.h_const)

    rows = [[t, norm, bound] for t, norm, bound in zip(report.times, report.norms, report.bounds)]
    write_table(Table(["t", "norm_r", "bound"], rows, meta=meta), out, output_format)


@cli.command("ckn-limit")
@parameter_options
@click.option("--k-min", type=int, default=6, show_default=True, help="Largest p is 1 + 2^-k_min.")
@click.option("--k-max", type=int, default=16, show_default=True, help="Smallest p is 1 + 2^-k_max.")
@common_options
@handle_errors
def ckn_limit(d, beta, gamma, n, alpha, k_min, k_max, out, output_format, tol, seed, log_level, log_file):
    """
    Limit of the rescaled interpolation constants as p -> 1.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params)

    p_seq = 1 + 2.**-np.arange(k_min, k_max + 1)
    limit = limit_probe(params, p_seq, tol=max(tol, 1e-6))
    linear, _ = limit_estimates(params, p_seq)
    constant = evaluate_constants(dp).c_star

    rows = [[p, estimate] for p, estimate in zip(p_seq, linear)]
    meta = _meta(tol, limit=limit, c_star=constant, difference=limit - constant)
    write_table(Table(["p", "estimate"], rows, meta=meta), out, output_format)


@cli.command()
@parameter_options
@click.option("--family", type=click.Choice(FAMILIES), default="eigenmode_perturbation", show_default=True)
@click.option("--budget", type=int, default=400, show_default=True, help="Deficit evaluations.")
@click.option("--size", type=int, default=4, show_default=True, help="Number of coefficients.")
@click.option("--certificate", is_flag=True, help="Only run the line search along the instability mode.")
@common_options
@handle_errors
def search(d, beta, gamma, n, alpha, family, budget, size, certificate, out, output_format, tol, seed,
           log_level, log_file):
    """
    Search for candidates beating the radial optimizer.
    """
    _setup(log_file)
    params = resolve_parameters(d, beta, gamma, n, alpha)
    dp = require_admissible(params)
    searcher = DeficitSearch(seed=seed, logger_level=log_level)

    if certificate:
        result = searcher.sb_certificate(params, threshold=tol)
        header = ["d", "beta", "gamma", "status", "epsilon", "deficit"]
        row = [params.d, params.beta, params.gamma, result.status, result.epsilon, result.deficit]
        write_table(Table(header, [row], meta=_meta(tol)), out, output_format)
        return

    result = searcher.minimize_deficit(params, family, budget=budget, size=size)
    header = ["d", "beta", "gamma", "family", "best_deficit", "best_k_lower", "k_star", "iterations",
              "converged", "epsilon"]
    row = [params.d, params.beta, params.gamma, family, result.best_deficit, result.best_k_lower,
           evaluate_constants(dp).k_star, result.iterations, result.converged, result.ansatz.epsilon]
    meta = _meta(tol, budget=budget, size=size, seed=seed,
                 coefficients=list(result.ansatz.coefficients))
    write_table(Table(header, [row], meta=meta), out, output_format)


def main():
    cli()
