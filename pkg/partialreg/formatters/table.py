"""Human-readable rendering with rich tables.

Numbers are shown with 6 significant digits. Narrative is printed before any
table, matching the JSON key order.
"""

from collections.abc import Sequence

from pydantic import BaseModel
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from partialreg.models.report import (
    BiasReport,
    ConvergenceStudy,
    FitReport,
    FitSummary,
    LedgerReport,
    PearsonDemoReport,
    SimulationReport,
)


def fmt(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.6g}"


def _print_narrative(console: Console, narrative: Sequence[str]) -> None:
    for line in narrative:
        console.print(escape(line), soft_wrap=True)
    console.print()


def _summary_table(summary: FitSummary) -> Table:
    table = Table(title="Fit summary", show_header=True, header_style="bold")
    table.add_column("R2", justify="right")
    table.add_column("n", justify="right")
    table.add_column("k", justify="right")
    table.add_column("Condition", justify="right")
    table.add_column("Response mean", justify="right")
    table.add_column("Implied intercept", justify="right")
    table.add_row(
        fmt(summary.r_squared),
        str(summary.n),
        str(summary.k),
        fmt(summary.condition_estimate),
        fmt(summary.response_mean),
        fmt(summary.implied_intercept),
    )
    return table


def _ledger_table(report: LedgerReport) -> Table:
    table = Table(title=f"Decomposition ledger for {escape(report.response)}", show_header=True, header_style="bold")
    table.add_column("Regressor", style="cyan")
    table.add_column("Allowed for")
    for header in ("beta", "v1", "v2", "semi-partial R2", "partial R2", "partial corr", "V(x)", "V(delta)"):
        table.add_column(header, justify="right")
    for row in report.rows:
        table.add_row(
            escape(row.focus),
            escape(", ".join(row.controls)) or "-",
            fmt(row.beta_multivariate),
            fmt(row.beta_prt_v1),
            fmt(row.beta_prt_v2),
            fmt(row.semi_partial_r2),
            fmt(row.partial_r2),
            fmt(row.partial_correlation),
            fmt(row.focus_variance),
            fmt(row.delta_variance),
        )
    return table


def render_fit(report: FitReport, console: Console) -> None:
    _print_narrative(console, report.narrative)
    table = Table(title=f"Coefficients of {escape(report.response)}", show_header=True, header_style="bold")
    table.add_column("Regressor", style="cyan")
    table.add_column("beta", justify="right")
    table.add_column("Mean", justify="right")
    for row in report.coefficients:
        table.add_row(escape(row.name), fmt(row.beta), fmt(row.mean))
    console.print(table)
    console.print(_summary_table(report.fit_summary))


def render_ledger(report: LedgerReport, console: Console, *, with_narrative: bool = True) -> None:
    if with_narrative:
        _print_narrative(console, report.narrative)
    console.print(_ledger_table(report))
    console.print(_summary_table(report.fit_summary))


def render_pearson_demo(report: PearsonDemoReport, console: Console) -> None:
    _print_narrative(console, report.narrative)
    s = report.scenario
    scenario = Table(title="Scenario", show_header=True, header_style="bold")
    for header in ("beta_y_x1", "beta_y_x2", "beta_x2_x1", "beta_x1_x2", "rho^2", "beta1", "beta2"):
        scenario.add_column(header, justify="right")
    scenario.add_row(
        fmt(s.beta_y_x1),
        fmt(s.beta_y_x2),
        fmt(s.beta_x2_x1),
        fmt(s.beta_x1_x2),
        fmt(s.rho_sq),
        fmt(report.beta1),
        fmt(report.beta2),
    )
    console.print(scenario)

    checks = Table(title="Closed form against fit", show_header=True, header_style="bold")
    checks.add_column("Coefficient", style="cyan")
    checks.add_column("Closed form", justify="right")
    checks.add_column("Fitted", justify="right")
    checks.add_column("Agrees")
    for check in report.checks:
        checks.add_row(check.name, fmt(check.closed_form), fmt(check.fitted), "yes" if check.agrees else "NO")
    console.print(checks)

    if report.amplification is not None:
        a = report.amplification
        amplification = Table(title="Amplification and variance", show_header=True, header_style="bold")
        amplification.add_column("Quantity", style="cyan")
        amplification.add_column("Simple", justify="right")
        amplification.add_column("Joint", justify="right")
        amplification.add_row("beta on x1", fmt(a.simple_beta), fmt(a.amplified_beta))
        amplification.add_row("variance of regressor", fmt(a.var_x1), fmt(a.delta_variance))
        amplification.add_row("explained variance", fmt(a.simple_fitted_variance), fmt(a.fitted_variance))
        amplification.add_row("covariance with y", fmt(a.cov_y_x1), fmt(a.cov_y_delta))
        console.print(amplification)

    if report.ledger is not None:
        render_ledger(report.ledger, console, with_narrative=False)


def _bias_table(bias: BiasReport) -> Table:
    table = Table(title="Best fit against structure", show_header=True, header_style="bold")
    table.add_column("Regressor", style="cyan")
    for header in ("gamma_hat", "gamma", "beta", "gamma_hat - gamma", "gamma_hat - beta", "MC SE"):
        table.add_column(header, justify="right")
    for j, name in enumerate(bias.regressors):
        table.add_row(
            escape(name),
            fmt(bias.gamma_hat[j]),
            fmt(bias.gamma_population[j]),
            fmt(bias.beta_structural[j]),
            fmt(bias.gap_to_population[j]),
            fmt(bias.gap_to_structural[j]),
            fmt(bias.monte_carlo_se[j]),
        )
    return table


def _convergence_table(study: ConvergenceStudy) -> Table:
    table = Table(title=f"Convergence ({study.seeds} seeds, slope {fmt(study.slope)})", show_header=True)
    table.add_column("n", justify="right")
    table.add_column("mean |gamma_hat - gamma|", justify="right")
    for point in study.points:
        table.add_row(str(point.n), fmt(point.mean_abs_error))
    return table


def render_simulation(report: SimulationReport, console: Console) -> None:
    _print_narrative(console, report.narrative)
    console.print(_bias_table(report.bias))
    console.print(f"R2 = {fmt(report.bias.r_squared)}, n = {report.bias.n}")
    if report.convergence is not None:
        console.print(_convergence_table(report.convergence))


def render_table(report: BaseModel, console: Console) -> None:
    """Dispatch on the report type."""
    if isinstance(report, LedgerReport):
        render_ledger(report, console)
    elif isinstance(report, FitReport):
        render_fit(report, console)
    elif isinstance(report, PearsonDemoReport):
        render_pearson_demo(report, console)
    elif isinstance(report, SimulationReport):
        render_simulation(report, console)
    else:
        raise TypeError(f"No table renderer for {type(report).__name__}")
