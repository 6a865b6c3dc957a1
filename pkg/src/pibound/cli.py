"""Command-line front end: verify, table, threshold, chain.

Exit codes: 0 all asserted bounds hold, 1 an asserted violation (or a
failed chain link), 2 usage error. CSV output is byte-identical across
runs: UTF-8, LF endings, shortest round-trip float formatting. Setting
PIBOUND_CACHE_DIR enables the on-disk prime table cache.
"""

from __future__ import annotations

import math
import os
import sys
from pathlib import Path

import click
import numpy as np

from .bounds import KINDS, BoundKind, domain_mask
from .counting import counting_chain, verify_proof_chain
from .errors import CacheFormatError, DomainError, PiboundError
from .integrals import li_at, li_int_prefix, pi_integral_at
from .scan import build_grid, evaluate_columns, scan_bound, threshold_scan
from .sieve import MAX_LIMIT, build_table, load_table, save_table

DEFAULT_LIMIT = 1_000_000
_TAG_CHOICE = click.Choice(tuple(KINDS))


def _get_table(limit: int):
    if limit < 2 or limit > MAX_LIMIT:
        raise click.UsageError(f"--limit must be in [2, {MAX_LIMIT}], got {limit}")
    cache_dir = os.environ.get("PIBOUND_CACHE_DIR")
    if not cache_dir:
        return build_table(limit)
    path = Path(cache_dir) / f"pibound-{limit}.pibt"
    if path.exists():
        try:
            return load_table(path)
        except CacheFormatError as exc:
            click.echo(f"cache rejected ({exc}); rebuilding", err=True)
    table = build_table(limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_table(table, path)
    return table


def _kind(tag: str, j_max: int | None, c1: float | None) -> BoundKind:
    kw = {}
    if j_max is not None:
        kw["j_max"] = j_max
    if c1 is not None:
        kw["c1"] = c1
    try:
        return BoundKind(tag, **kw)
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None


def _write_csv(stream, xs, pis, thetas, cols) -> None:
    tags = [kind.tag for kind, _, _ in cols]
    stream.write(",".join(["x", "pi", "theta", *tags,
                           *[t + "_margin" for t in tags]]) + "\n")
    for i in range(xs.size):
        row = [repr(float(xs[i])), str(int(pis[i])), repr(float(thetas[i]))]
        row += [repr(float(values[i])) for _, values, _ in cols]
        row += [repr(float(margins[i])) for _, _, margins in cols]
        stream.write(",".join(row) + "\n")


def _export_csv(path: str, xs, table, kinds) -> None:
    pis, thetas, cols = evaluate_columns(xs, table, kinds)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, xs, pis, thetas, cols)


@click.group()
def main() -> None:
    """Prime-counting bound toolkit: scans, tables, thresholds, counting replay."""


@main.command()
@click.option("--bound", "tag", type=_TAG_CHOICE, default="theorem1_ceiling",
              show_default=True, help="Bound kind to scan.")
@click.option("--limit", type=int, default=DEFAULT_LIMIT, show_default=True,
              help="Sieve limit.")
@click.option("--from", "lo", type=float, default=2.0, show_default=True)
@click.option("--to", "hi", type=float, default=None, help="Defaults to the sieve limit.")
@click.option("--grid", default="integers", show_default=True,
              help="Comma-combinable: integers, log:N, prime-adjacent.")
@click.option("--j-max", type=int, default=None, help="Geometric partial-sum order.")
@click.option("--c1", type=float, default=None, help="Chebyshev constant.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also export the scanned points as CSV.")
def verify(tag, limit, lo, hi, grid, j_max, c1, csv_path) -> None:
    """Scan one bound over a range; exit 1 on an asserted violation."""
    kind = _kind(tag, j_max, c1)
    table = _get_table(limit)
    hi = float(table.limit if hi is None else hi)
    try:
        result = scan_bound(kind, lo, hi, table, grid=grid)
    except PiboundError as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(f"bound={kind.tag} grid={grid} range=[{lo!r}, {hi!r}] "
               f"points={result.points_evaluated}")
    click.echo(f"min margin {result.min_margin!r} at x={result.argmin_x!r}")
    if result.near_ties:
        shown = ", ".join(repr(t) for t in result.near_ties[:20])
        click.echo(f"near ties: {len(result.near_ties)} ({shown})")
    if result.violations:
        click.echo(f"violations: {len(result.violations)} "
                   f"({len(result.asserted_violations)} within the asserted range)")
        for x, m in result.violations[:20]:
            click.echo(f"  x={x!r} margin={m!r}")
    else:
        click.echo("violations: 0")
    if csv_path is not None:
        xs = build_grid(lo, hi, grid, table)
        xs = xs[domain_mask(kind, xs)]
        _export_csv(csv_path, xs, table, (kind,))
    if not result.ok:
        click.echo("result: FAIL")
        sys.exit(1)
    click.echo("result: OK")


@main.command()
@click.option("--limit", type=int, default=DEFAULT_LIMIT, show_default=True)
@click.option("--from", "lo", type=float, default=2.0, show_default=True)
@click.option("--to", "hi", type=float, default=None, help="Defaults to the sieve limit.")
@click.option("--step", type=float, default=1.0, show_default=True)
@click.option("--bound", "tags", type=_TAG_CHOICE, multiple=True,
              help="Repeatable; default is every kind.")
@click.option("--j-max", type=int, default=None)
@click.option("--c1", type=float, default=None)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Write here instead of stdout.")
def table(limit, lo, hi, step, tags, j_max, c1, csv_path) -> None:
    """Emit CSV rows: x, pi, theta, each bound value, each margin."""
    if step <= 0:
        raise click.UsageError(f"--step must be positive, got {step}")
    tbl = _get_table(limit)
    hi = float(tbl.limit if hi is None else hi)
    if not (2 <= lo <= hi <= tbl.limit):
        raise click.UsageError(f"need 2 <= from <= to <= limit, got [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    xs = lo + step * np.arange(count)
    chosen = tags if tags else tuple(KINDS)
    kinds = []
    for t in chosen:
        kinds.append(_kind(t, j_max if t == "geometric" else None,
                           c1 if t.startswith("chebyshev") else None))
    pis, thetas, cols = evaluate_columns(xs, tbl, kinds)
    if csv_path is None:
        _write_csv(click.get_text_stream("stdout"), xs, pis, thetas, cols)
    else:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, xs, pis, thetas, cols)


@main.command()
@click.option("--bound", "tag", type=_TAG_CHOICE, default="theorem1_ceiling",
              show_default=True)
@click.option("--limit", type=int, default=DEFAULT_LIMIT, show_default=True)
@click.option("--from", "lo", type=float, default=2.0, show_default=True)
@click.option("--to", "hi", type=float, default=None, help="Defaults to the sieve limit.")
@click.option("--grid", default="integers", show_default=True)
@click.option("--j-max", type=int, default=None)
@click.option("--c1", type=float, default=None)
def threshold(tag, limit, lo, hi, grid, j_max, c1) -> None:
    """Report the smallest x0 from which the bound held on the grid."""
    kind = _kind(tag, j_max, c1)
    tbl = _get_table(limit)
    hi = float(tbl.limit if hi is None else hi)
    try:
        res = threshold_scan(kind, tbl, lo, hi, grid=grid)
    except PiboundError as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(f"bound={kind.tag} grid={grid} range=[{lo!r}, {hi!r}] "
               f"points={res.scan.points_evaluated}")
    if res.x0 is None:
        click.echo("empirical x0: none (the last scanned point still violates)")
    else:
        click.echo(f"empirical x0 = {res.x0!r} (holds at every scanned x >= x0)")
    if res.stated_from is not None:
        click.echo(f"stated threshold: x >= {res.stated_from!r}")
    else:
        click.echo("stated threshold: none (bound is checked empirically only)")
    if kind.tag == "li_gap":
        top = int(math.floor(hi))
        xs = np.arange(3, top + 1, dtype=np.float64)
        lis = li_at(xs, li_int_prefix(top))
        pints, _ = pi_integral_at(xs, tbl)
        bad = np.flatnonzero(pints - lis < 0)
        if not bad.size:
            cx = 3
        elif bad[-1] + 1 < xs.size:
            cx = int(xs[bad[-1] + 1])
        else:
            cx = None
        if cx is None:
            click.echo("Li(x) <= integral of pi(t)/t: no crossover in range")
        else:
            click.echo("Li(x) <= integral of pi(t)/t crossover (informational): "
                       f"x >= {cx}")


@main.command()
@click.argument("x", type=int)
@click.option("--limit", type=int, default=None,
              help="Sieve limit; defaults to x itself.")
def chain(x, limit) -> None:
    """Replay the even-integer counting argument at odd X."""
    limit = x if limit is None else limit
    tbl = _get_table(max(2, limit))
    try:
        c = counting_chain(x, tbl)
        links = verify_proof_chain(x, tbl)
    except PiboundError as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(f"x = {c.x}")
    click.echo(f"even integers below x: {c.evens_available}")
    click.echo(f"prime-doubling count s = {c.s_exact} "
               f"(variant counting 2,4,8,... as its own sequence: {c.s_pow2_variant})")
    click.echo(f"value sum = {c.value_sum!r}")
    click.echo(f"fractional-part sum = {c.frac_sum!r}")
    failed = False
    for link in links:
        status = "holds" if link.holds else "FAILS"
        click.echo(f"{link.name}: {link.lhs!r} {link.relation} {link.rhs!r} -> {status}")
        failed = failed or not link.holds
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
