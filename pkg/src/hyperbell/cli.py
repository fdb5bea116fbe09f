"""Command-line front end.

Subcommands: table, stirling, enumerate, verify, egf, asymptotic.
Stdout carries data; stderr carries diagnostics.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 enumeration budget refusal.

A persistent triangle cache can be enabled with --cache PATH or the
HYPERBELL_CACHE environment variable; cached triangles are validated
against freshly computed Bell numbers before being trusted.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click

from . import __version__, egf, enumerator, triangles
from .cache import CACHE_ENV_VAR, cache_load, cache_store
from .output import OutputDocument, decimal_string, render
from .triangles import Fault, IdentityReport, _Tables

TRIANGLE_IDENTITIES = triangles.IDENTITIES
LAW_IDENTITIES = ("egf-agreement", "egf-composition", "egf-stacking", "enum-census")
ALL_IDENTITIES = TRIANGLE_IDENTITIES + LAW_IDENTITIES

format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json", "plain"]), default="plain",
    show_default=True, help="Output rendering.",
)
cache_option = click.option(
    "--cache", "cache_path", envvar=CACHE_ENV_VAR, default=None,
    help=f"Triangle cache file (default from ${CACHE_ENV_VAR}).",
)
precision_option = click.option(
    "--precision", default=6, show_default=True,
    help="Significant digits for decimal renderings of exact rationals.",
)


def _get_triangle(n_max: int, m: int, cache_path: str | None) -> triangles.Triangle:
    if cache_path:
        cached = cache_load(cache_path, n_max, m)
        if cached is not None:
            return cached
    tri = triangles.higher_stirling(n_max, m)
    if cache_path:
        cache_store(cache_path, tri)
    return tri


@click.group()
@click.version_option(__version__, prog_name="hyperbell")
def main():
    """Exact iterated-partition counting: tables, identities, enumeration."""


@main.command("table")
@click.option("--n-max", default=8, show_default=True, help="Largest set size.")
@click.option("--m-max", default=5, show_default=True, help="Largest partition order.")
@format_option
@cache_option
def table_command(n_max, m_max, fmt, cache_path):
    """Grid of higher-order Bell numbers, orders 1..m-max by n = 1..n-max."""
    if n_max < 1 or m_max < 1:
        raise click.UsageError("--n-max and --m-max must be >= 1")
    doc = cmd_table("bell", n_max=n_max, m_max=m_max, cache_path=cache_path)
    click.echo(render(doc, fmt), nl=False)


@main.command("stirling")
@click.option("--m", required=True, type=int, help="Partition order.")
@click.option("--n-max", type=int, default=None, help="Emit rows 1..n-max.")
@click.option("--n", type=int, default=None, help="Emit the single row n.")
@format_option
@cache_option
def stirling_command(m, n_max, n, fmt, cache_path):
    """Higher-order Stirling rows for one order, with the Bell row-sum column."""
    if (n_max is None) == (n is None):
        raise click.UsageError("give exactly one of --n-max or --n")
    size = n_max if n_max is not None else n
    if size is None or size < 1 or m < 1:
        raise click.UsageError("--m and the row range must be >= 1")
    doc = cmd_table("stirling", n_max=size, m=m, single_row=n, cache_path=cache_path)
    click.echo(render(doc, fmt), nl=False)


def cmd_table(kind, n_max, m_max=None, m=None, single_row=None, cache_path=None):
    """Build the bell-table or stirling-table document."""
    if kind == "bell":
        columns = ["m"] + [str(n) for n in range(1, n_max + 1)]
        rows = []
        by_m = {}
        for order in range(1, m_max + 1):
            tri = _get_triangle(n_max, order, cache_path)
            values = [str(tri.row_sum(n)) for n in range(1, n_max + 1)]
            rows.append([str(order)] + values)
            by_m[str(order)] = dict(zip(columns[1:], values))
        return OutputDocument.build(
            "bell-table", columns, rows,
            {"n_max": n_max, "m_max": m_max}, __version__, {"by_m": by_m},
        )
    tri = _get_triangle(n_max, m, cache_path)
    columns = ["n"] + [f"k={k}" for k in range(1, n_max + 1)] + ["bell"]
    wanted = range(1, n_max + 1) if single_row is None else (single_row,)
    rows = []
    by_n = {}
    for n in wanted:
        entries = [str(v) for v in tri.row(n)]
        rows.append([str(n)] + entries + [""] * (n_max - n) + [str(tri.row_sum(n))])
        by_n[str(n)] = {
            "counts": dict(zip((str(k) for k in range(1, n + 1)), entries)),
            "bell": str(tri.row_sum(n)),
        }
    return OutputDocument.build(
        "stirling-table", columns, rows,
        {"n_max": n_max, "m": m, "n": single_row}, __version__,
        {"m": str(m), "by_n": by_n},
    )


@main.command("enumerate")
@click.option("--n", required=True, type=int, help="Set size.")
@click.option("--m", required=True, type=int, help="Partition order.")
@click.option("--list", "list_mode", is_flag=True, help="Stream canonical forms, one per line.")
@click.option("--budget", default=enumerator.DEFAULT_BUDGET, show_default=True,
              help="Refuse enumerations predicted to exceed this many elements.")
@format_option
def enumerate_command(n, m, list_mode, budget, fmt):
    """Enumerate the order-m partition set of an n-set: census or listing."""
    if n < 1 or m < 1:
        raise click.UsageError("--n and --m must be >= 1")
    try:
        if list_mode:
            for element in enumerator.iterate_partitions(n, m, budget):
                click.echo(enumerator.canonical_serialize(element).decode("ascii"))
            return
        doc = cmd_enumerate_census(n, m, budget)
    except enumerator.EnumerationBudgetError as err:
        click.echo(f"refused: {err}", err=True)
        sys.exit(3)
    click.echo(render(doc, fmt), nl=False)


def cmd_enumerate_census(n, m, budget):
    result = enumerator.census(n, m, budget)
    columns = ["k", "count"]
    rows = [[str(k), str(v)] for k, v in result.counts.items()]
    rows.append(["total", str(result.total)])
    return OutputDocument.build(
        "census", columns, rows, {"n": n, "m": m}, __version__,
        {"counts": {str(k): str(v) for k, v in result.counts.items()},
         "total": str(result.total)},
    )


@main.command("verify")
@click.option("--identities", default="all", show_default=True,
              help="Comma-separated identity names, or 'all'.")
@click.option("--n-max", default=6, show_default=True)
@click.option("--m-max", default=4, show_default=True)
@click.option("--r", type=int, default=None,
              help="Restrict the split parameter of staged identities.")
@click.option("--inject-fault", default=None, metavar="M,N,K",
              help="Test hook: corrupt triangle entry (n=N, k=K) at order M.")
@click.option("--budget", default=enumerator.DEFAULT_BUDGET, show_default=True)
@format_option
def verify_command(identities, n_max, m_max, r, inject_fault, budget, fmt):
    """Check identities cell by cell; exit 0 only if every cell passes."""
    if n_max < 1 or m_max < 1:
        raise click.UsageError("--n-max and --m-max must be >= 1")
    if r is not None and not 0 <= r <= m_max:
        raise click.UsageError(f"--r must lie in 0..{m_max}")
    names = _parse_identities(identities)
    fault = _parse_fault(inject_fault, n_max, m_max)
    report = run_verification(names, n_max, m_max, r=r, fault=fault, budget=budget)
    doc = _verify_document(report, names, n_max, m_max, r)
    click.echo(render(doc, fmt), nl=False)
    click.echo(report.summary(), err=True)
    if not report.passed:
        sys.exit(1)


def _parse_identities(text: str) -> tuple[str, ...]:
    if text.strip() == "all":
        return ALL_IDENTITIES
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise click.UsageError("no identities given")
    unknown = [name for name in names if name not in ALL_IDENTITIES]
    if unknown:
        raise click.UsageError(
            f"unknown identities {unknown}; choose from {', '.join(ALL_IDENTITIES)}"
        )
    return names


def _parse_fault(text: str | None, n_max: int, m_max: int) -> Fault | None:
    if text is None:
        return None
    try:
        order, n, k = (int(part) for part in text.split(","))
    except ValueError:
        raise click.UsageError("--inject-fault expects three integers M,N,K")
    if not (1 <= order <= m_max and 1 <= k <= n <= n_max):
        raise click.UsageError("--inject-fault cell outside the sweep range")
    return Fault(order=order, n=n, k=k)


def run_verification(names, n_max, m_max, r=None, fault=None,
                     budget=enumerator.DEFAULT_BUDGET) -> IdentityReport:
    """Aggregate triangle identities with generating-function and census laws."""
    report = IdentityReport()
    for name in names:
        if name in TRIANGLE_IDENTITIES:
            report.extend(triangles.verify_identity(name, n_max, m_max, r=r, fault=fault))
        elif name == "egf-agreement":
            report.extend(_check_egf_agreement(n_max, m_max, fault))
        elif name == "egf-composition":
            report.extend(_check_egf_composition(m_max))
        elif name == "egf-stacking":
            report.extend(_check_egf_stacking(m_max))
        elif name == "enum-census":
            report.extend(_check_enum_census(n_max, m_max, fault, budget))
        else:
            raise ValueError(f"unknown identity {name!r}")
    return report


def _cell(report, identity, params, lhs, rhs):
    ok = lhs == rhs
    report.checks.append(
        triangles.CellCheck(identity, params, ok, None if ok else lhs, None if ok else rhs)
    )


def _check_egf_agreement(n_max, m_max, fault) -> IdentityReport:
    # generating-function extraction against the recurrence triangles
    report = IdentityReport()
    t = _Tables(n_max, fault)
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            _cell(report, "egf-agreement", (("n", n), ("m", m)),
                  t.b(n, m), egf.bell_from_egf(n, m, n_max))
            for k in range(1, n + 1):
                _cell(report, "egf-agreement", (("n", n), ("m", m), ("k", k)),
                      t.s(m, n, k), egf.stirling_from_egf(n, k, m, n_max))
    return report


def _check_egf_composition(m_max, order=8) -> IdentityReport:
    # substituting (e^x - 1) into one order must give the next
    report = IdentityReport()
    inner = egf.exp_x(order) - 1
    for m in range(m_max):
        lhs = egf.series_compose(egf.bell_egf(m, order) - 1, inner)
        rhs = egf.bell_egf(m + 1, order) - 1
        mismatch = next(
            (i for i in range(order + 1) if lhs.coeffs[i] != rhs.coeffs[i]), None
        )
        if mismatch is None:
            _cell(report, "egf-composition", (("m", m),), 0, 0)
        else:
            _cell(report, "egf-composition", (("m", m), ("n", mismatch)),
                  lhs.coeffs[mismatch], rhs.coeffs[mismatch])
    return report


def _check_egf_stacking(m_max, order=8) -> IdentityReport:
    # column series stack to the whole: sum_k F_k = E - 1
    report = IdentityReport()
    for m in range(1, min(m_max, 3) + 1):
        total = egf.zero_series(order)
        for k in range(1, order + 1):
            total = total + egf.stirling_egf(k, m, order)
        expected = egf.bell_egf(m, order) - 1
        mismatch = next(
            (i for i in range(order + 1) if total.coeffs[i] != expected.coeffs[i]), None
        )
        if mismatch is None:
            _cell(report, "egf-stacking", (("m", m),), 0, 0)
        else:
            _cell(report, "egf-stacking", (("m", m), ("n", mismatch)),
                  total.coeffs[mismatch], expected.coeffs[mismatch])
    return report


def _check_enum_census(n_max, m_max, fault, budget) -> IdentityReport:
    # literal enumeration against the triangles, on the desk-scale range
    report = IdentityReport()
    cases = [
        (n, m)
        for n in range(1, min(n_max, 5) + 1)
        for m in range(1, min(m_max, 3) + 1)
    ]
    if n_max >= 6 and m_max >= 2:
        cases.append((6, 2))
    t = _Tables(max(n for n, _ in cases), fault)
    for n, m in cases:
        counted = enumerator.census(n, m, budget)
        for k in range(1, n + 1):
            _cell(report, "enum-census", (("n", n), ("m", m), ("k", k)),
                  t.s(m, n, k), counted.count(k))
        _cell(report, "enum-census", (("n", n), ("m", m)), t.b(n, m), counted.total)
    return report


def _verify_document(report, names, n_max, m_max, r):
    columns = ["identity", "n", "m", "k", "r", "status", "lhs", "rhs"]
    rows = []
    for check in report.checks:
        params = dict(check.params)
        rows.append([
            check.identity,
            str(params.get("n", "")),
            str(params.get("m", "")),
            str(params.get("k", "")),
            str(params.get("r", "")),
            "pass" if check.ok else "FAIL",
            "" if check.lhs is None else str(check.lhs),
            "" if check.rhs is None else str(check.rhs),
        ])
    return OutputDocument.build(
        "verify-report", columns, rows,
        {"identities": ",".join(names), "n_max": n_max, "m_max": m_max, "r": r},
        __version__,
        {"passed": report.passed, "cells": str(len(report.checks)),
         "failures": str(len(report.failures))},
    )


@main.command("egf")
@click.option("--m", required=True, type=int, help="Partition order.")
@click.option("--order", "order_", default=8, show_default=True,
              help="Truncation order of the series.")
@click.option("--k", type=int, default=None,
              help="Dump the k-column Stirling series instead of the Bell series.")
@format_option
@precision_option
def egf_command(m, order_, k, fmt, precision):
    """Dump exact series coefficients and the counts they encode."""
    if m < 0 or order_ < 1:
        raise click.UsageError("--m must be >= 0 and --order >= 1")
    if k is not None and not 1 <= k <= order_:
        raise click.UsageError("--k must lie in 1..order")
    doc = cmd_egf(m, order_, k, precision)
    click.echo(render(doc, fmt), nl=False)


def cmd_egf(m, order, k, precision):
    if k is None:
        series = egf.bell_egf(m, order)
        kind_params = {"m": m, "order": order}
    else:
        if m < 1:
            raise click.UsageError("column series need --m >= 1")
        series = egf.stirling_egf(k, m, order)
        kind_params = {"m": m, "order": order, "k": k}
    columns = ["n", "coefficient", "decimal", "count"]
    rows = []
    for n in range(order + 1):
        c = series.coefficient(n)
        rows.append([
            str(n),
            f"{c.numerator}/{c.denominator}",
            decimal_string(c, precision),
            str(series.integer_coefficient(n)),
        ])
    return OutputDocument.build("egf-dump", columns, rows, kind_params, __version__)


@main.command("asymptotic")
@click.option("--n", required=True, type=int, help="Set size.")
@click.option("--m-list", required=True, help="Comma-separated partition orders.")
@format_option
@precision_option
@cache_option
def asymptotic_command(n, m_list, fmt, precision, cache_path):
    """Consecutive-order ratios, mean outer cardinality, first-column share."""
    try:
        orders = [int(part) for part in m_list.split(",") if part.strip()]
    except ValueError:
        raise click.UsageError("--m-list expects comma-separated integers")
    if n < 1 or not orders or any(m < 1 for m in orders):
        raise click.UsageError("--n and every order in --m-list must be >= 1")
    trend, differences = cmd_asymptotic(n, orders, precision, cache_path)
    click.echo(render(trend, fmt), nl=False)
    if differences is not None:
        click.echo("")
        click.echo(render(differences, fmt), nl=False)


def cmd_asymptotic(n, orders, precision=6, cache_path=None):
    columns = [
        "m", "bell", "ratio", "ratio_decimal",
        "average", "average_decimal", "share_k1", "share_decimal",
    ]
    rows = []
    for m in orders:
        tri = _get_triangle(n, m, cache_path)
        total = tri.row_sum(n)
        ratio = Fraction(total, triangles.bell(n, m - 1))
        average = Fraction(tri.weighted_row_sum(n), total)
        share = Fraction(tri.entry(n, 1), total)
        rows.append([
            str(m), str(total),
            f"{ratio.numerator}/{ratio.denominator}", decimal_string(ratio, precision),
            f"{average.numerator}/{average.denominator}", decimal_string(average, precision),
            f"{share.numerator}/{share.denominator}", decimal_string(share, precision),
        ])
    trend = OutputDocument.build(
        "asymptotic-report", columns, rows,
        {"n": n, "m_list": ",".join(str(m) for m in orders)}, __version__,
    )
    if n < 2:
        return trend, None
    check = triangles.finite_difference_check(n)
    diff_doc = OutputDocument.build(
        "asymptotic-report", ["n", "differences", "constant", "predicted"],
        [[str(n), ";".join(str(d) for d in check.differences),
          "true" if check.constant else "false", str(check.predicted)]],
        {"n": n}, __version__,
    )
    return trend, diff_doc


if __name__ == "__main__":
    main()
