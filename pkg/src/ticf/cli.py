"""Command line interface ``ticf``.

Exit codes: 0 ok, 1 self-test failure, 2 usage or invalid geometry,
3 evaluation point inside E, 4 numerical failure. Errors are reported on
stderr as a single line ``ticf: error[CODE]: message``.
"""

from __future__ import annotations

import csv
import functools
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import click

from . import selftest as selftest_mod
from .capacity import cap_general, cap_normalized
from .errors import AccuracyError, ConvergenceError, FitError, OriginInsideError, SolverError, TicfError
from .factor import kappa_bounds, kappa_exact, xi_optimal
from .geometry import IntervalPair, NormalizedProblem, normalize, uniformize, uniformize_pair
from .oracle import QuadratureConfig, ResidualConfig, kappa_oracle, kappa_polynomial
from .selftest import FACTOR_SWEEP_PAIRS, CAPACITY_SWEEP_ALPHAS

EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_INSIDE = 3
EXIT_NUMERIC = 4

FACTOR_COLUMNS = ["alpha", "beta", "xi", "kappa_exact", "kappa_lower", "kappa_upper"]
CAPACITY_COLUMNS = ["alpha", "beta", "cap_exact", "cap_lower", "cap_upper"]


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, OriginInsideError):
        return EXIT_INSIDE
    if isinstance(exc, (AccuracyError, ConvergenceError, SolverError, FitError)):
        return EXIT_NUMERIC
    return EXIT_USAGE


def reports_errors(fn):
    """Translate library errors into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TicfError as exc:
            click.echo(f"ticf: error[{exc.code}]: {exc}", err=True)
            sys.exit(_exit_code(exc))

    return wrapper


def _parse_endpoints(text: str) -> IntervalPair:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise click.BadParameter("expected four comma-separated numbers", param_hint="--endpoints")
    if len(values) != 4:
        raise click.BadParameter("expected four comma-separated numbers", param_hint="--endpoints")
    return IntervalPair(*values)


def _require(**opts):
    missing = [f"--{k.replace('_', '-')}" for k, v in opts.items() if v is None]
    if missing:
        raise click.UsageError(f"missing option(s): {', '.join(missing)}")


def _problem(alpha, beta, xi, endpoints) -> tuple[NormalizedProblem, IntervalPair]:
    if endpoints is not None:
        if alpha is not None or beta is not None or xi is not None:
            raise click.UsageError("--endpoints cannot be combined with --alpha/--beta/--xi")
        e = _parse_endpoints(endpoints)
        return normalize(e), e
    _require(alpha=alpha, beta=beta, xi=xi)
    p = NormalizedProblem(alpha, beta, xi)
    # shifted copy of the normalized set whose origin is the point xi
    return p, IntervalPair(-1.0 - xi, alpha - xi, beta - xi, 1.0 - xi)


def _emit(record: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(record))
        return
    width = max(len(k) for k in record)
    for key, value in record.items():
        text = f"{value:.12g}" if isinstance(value, float) else str(value)
        click.echo(f"{key.ljust(width)}  {text}")


geometry_options = [
    click.option("--alpha", type=float, help="Right end of [-1, alpha]."),
    click.option("--beta", type=float, help="Left end of [beta, 1]."),
]


def _add(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return deco


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Convergence factor and capacity of two real intervals."""


@cli.command()
@_add(geometry_options)
@click.option("--xi", type=float, help="Evaluation point on the normalized axis.")
@click.option("--endpoints", help="a1,a2,a3,a4 of E; the evaluation point is the origin.")
@click.option("--json", "as_json", is_flag=True, help="Emit one flat JSON object.")
@reports_errors
def factor(alpha, beta, xi, endpoints, as_json):
    """Exact kappa with its lower and upper bounds."""
    p, _ = _problem(alpha, beta, xi, endpoints)
    unif = uniformize(p)
    est = kappa_bounds(p, unif)
    _emit(
        {
            "alpha": p.alpha,
            "beta": p.beta,
            "xi": p.xi,
            "region": p.region.value,
            "kappa_lower": est.lower,
            "kappa_exact": est.exact,
            "kappa_upper": est.upper,
            "a1": est.A1,
            "a2": est.A2,
            "b": est.B,
            "k": unif.m.k,
            "k_prime": unif.m.k_prime,
            "q": unif.m.q,
        },
        as_json,
    )


@cli.command()
@_add(geometry_options)
@click.option("--endpoints", help="a1,a2,a3,a4 of E.")
@click.option("--json", "as_json", is_flag=True)
@reports_errors
def capacity(alpha, beta, endpoints, as_json):
    """Logarithmic capacity with its lower and upper bounds."""
    if endpoints is not None:
        if alpha is not None or beta is not None:
            raise click.UsageError("--endpoints cannot be combined with --alpha/--beta")
        e = _parse_endpoints(endpoints)
        est = cap_general(e)
        alpha, beta = e.to_unit(e.a2), e.to_unit(e.a3)
    else:
        _require(alpha=alpha, beta=beta)
        est = cap_normalized(alpha, beta)
    _emit(
        {
            "alpha": alpha,
            "beta": beta,
            "cap_lower": est.lower,
            "cap_exact": est.exact,
            "cap_upper": est.upper,
            "scale": est.scale,
        },
        as_json,
    )


@cli.command("optimal-xi")
@_add(geometry_options)
@click.option("--json", "as_json", is_flag=True)
@reports_errors
def optimal_xi(alpha, beta, as_json):
    """Gap point minimizing kappa."""
    _require(alpha=alpha, beta=beta)
    xs = xi_optimal(alpha, beta)
    k = kappa_exact(NormalizedProblem(alpha, beta, xs))
    _emit({"alpha": alpha, "beta": beta, "xi_star": xs, "kappa_exact": k}, as_json)


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    return [lo + (hi - lo) * j / (n - 1) if j < n - 1 else hi for j in range(n)]


def _factor_rows(args):
    alpha, beta, xis = args
    unif = uniformize_pair(alpha, beta)
    rows = []
    for x in xis:
        est = kappa_bounds(NormalizedProblem(alpha, beta, x), unif)
        rows.append([alpha, beta, x, est.exact, est.lower, est.upper])
    return rows


def _capacity_rows(args):
    alpha, betas = args
    rows = []
    for b in betas:
        est = cap_normalized(alpha, b)
        rows.append([alpha, b, est.exact, est.lower, est.upper])
    return rows


def _compute_rows(fn, head, values, jobs):
    chunk = max(1, len(values) // (4 * jobs))
    tasks = [(*head, values[i : i + chunk]) for i in range(0, len(values), chunk)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(fn, tasks))
    else:
        parts = [fn(t) for t in tasks]
    return [row for part in parts for row in part]


def write_csv(path: str, columns: list[str], rows) -> None:
    """Write atomically; a failed run leaves no partial file behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ticf-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for row in rows:
                w.writerow([f"{v:.17g}" for v in row])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def factor_sweep(alpha, beta, points, xi_min=None, xi_max=None, jobs=1):
    xi_min = alpha if xi_min is None else xi_min
    xi_max = beta if xi_max is None else xi_max
    return _compute_rows(_factor_rows, (alpha, beta), _linspace(xi_min, xi_max, points), jobs)


def capacity_sweep(alpha, points, beta_min=None, beta_max=None, jobs=1):
    beta_min = alpha + 1e-3 if beta_min is None else beta_min
    beta_max = 1.0 - 1e-3 if beta_max is None else beta_max
    return _compute_rows(_capacity_rows, (alpha,), _linspace(beta_min, beta_max, points), jobs)


@cli.command()
@click.option("--mode", type=click.Choice(["factor", "capacity"]), help="kappa over xi, or capacity over beta.")
@_add(geometry_options)
@click.option("--points", type=int, default=None, help="Number of rows (>= 2).")
@click.option("--xi-min", type=float, help="Factor mode: first xi (default alpha).")
@click.option("--xi-max", type=float, help="Factor mode: last xi (default beta).")
@click.option("--beta-min", type=float, help="Capacity mode: first beta (default alpha + 1e-3).")
@click.option("--beta-max", type=float, help="Capacity mode: last beta (default 1 - 1e-3).")
@click.option("--figure", type=click.Choice(["1", "2"]), help="Write every curve of a figure into --output (a directory).")
@click.option("--output", "-o", required=True, type=click.Path(), help="CSV file, or directory with --figure.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, help="Worker processes.")
@reports_errors
def sweep(mode, alpha, beta, points, xi_min, xi_max, beta_min, beta_max, figure, output, jobs):
    """Tabulate kappa or the capacity with their bounds as CSV."""
    if figure is not None:
        os.makedirs(output, exist_ok=True)
        if figure == "1":
            n = points or 1000
            _check_points(n)
            for a, b in FACTOR_SWEEP_PAIRS:
                path = os.path.join(output, f"figure1_alpha{a:+.1f}_beta{b:+.1f}.csv")
                write_csv(path, FACTOR_COLUMNS, factor_sweep(a, b, n, jobs=jobs))
                click.echo(path)
        else:
            n = points or 500
            _check_points(n)
            for a in CAPACITY_SWEEP_ALPHAS:
                path = os.path.join(output, f"figure2_alpha{a:+.1f}.csv")
                write_csv(path, CAPACITY_COLUMNS, capacity_sweep(a, n, jobs=jobs))
                click.echo(path)
        return
    if mode is None:
        raise click.UsageError("either --mode or --figure is required")
    n = points or 1000
    _check_points(n)
    if mode == "factor":
        _require(alpha=alpha, beta=beta)
        rows = factor_sweep(alpha, beta, n, xi_min, xi_max, jobs)
        write_csv(output, FACTOR_COLUMNS, rows)
    else:
        _require(alpha=alpha)
        rows = capacity_sweep(alpha, n, beta_min, beta_max, jobs)
        write_csv(output, CAPACITY_COLUMNS, rows)
    click.echo(f"{len(rows)} rows -> {output}")


def _check_points(n):
    if n < 2:
        raise click.BadParameter("must be at least 2", param_hint="--points")


def _parse_degrees(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise click.BadParameter("expected LOW:HIGH", param_hint="--degrees")
    if not 0 <= lo <= hi:
        raise click.BadParameter("expected 0 <= LOW <= HIGH", param_hint="--degrees")
    return range(lo, hi + 1)


@cli.command()
@_add(geometry_options)
@click.option("--xi", type=float)
@click.option("--endpoints", help="a1,a2,a3,a4 of E; the evaluation point is the origin.")
@click.option("--method", type=click.Choice(["quadrature", "polynomial"]), default="quadrature")
@click.option("--degrees", default="10:40", help="Polynomial method: inclusive degree range LOW:HIGH.")
@click.option("--grid-size", type=click.IntRange(min=101), default=4001, help="Polynomial method: points per interval.")
@click.option("--json", "as_json", is_flag=True)
@reports_errors
def oracle(alpha, beta, xi, endpoints, method, degrees, grid_size, as_json):
    """Compare the exact kappa with an independent numerical oracle."""
    degree_range = _parse_degrees(degrees)
    p, e = _problem(alpha, beta, xi, endpoints)
    exact = kappa_exact(p)
    record = {"alpha": p.alpha, "beta": p.beta, "xi": p.xi, "method": method, "kappa_exact": exact}
    if method == "quadrature":
        value = kappa_oracle(e, 0.0, QuadratureConfig())
    else:
        fit = kappa_polynomial(e, ResidualConfig(grid_size=grid_size, degrees=degree_range))
        value = fit.kappa
        record["fit_residual"] = float(fit.residual)
    record["kappa_oracle"] = value
    record["abs_dev"] = abs(value - exact)
    record["rel_dev"] = abs(value - exact) / exact
    _emit(record, as_json)


@cli.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(sorted(selftest_mod.SUITES)), help="Run only these suites.")
@reports_errors
def selftest(suites):
    """Run the built-in verification suites."""
    checks = selftest_mod.run(suites or None)
    failed = 0
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        failed += not c.passed
        click.echo(f"{status}  {c.suite}/{c.name}  {c.detail}".rstrip())
    click.echo(f"{len(checks) - failed}/{len(checks)} checks passed")
    if failed:
        sys.exit(EXIT_SELFTEST)


def main(argv=None):
    cli.main(args=argv, prog_name="ticf")


if __name__ == "__main__":
    main()
