"""Command-line interface.

Usage:
    fermat-prank prank --p 5 --m 4 --n 4
    fermat-prank prank --p 3 --curve dn --n 4 --format json
    fermat-prank table --table 3 --p 3 --r 1..2
    fermat-prank verify --suite oracle --max-genus 50
    fermat-prank sweep --p-list 5 --m-range 2..4 --n-range 2..4 --format csv
    fermat-prank classify --p-list 2 --m-range 3 --n-range 2..6

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from .counting import prank_curve_C, prank_general
from .curves import CurveSpec, is_supersingular, make_context, supersingular_special
from .errors import InvariantViolation, LimitExceededError, NotApplicableError, PRankError
from .families import (
    FAMILY_IDS,
    FamilyId,
    closed_form,
    family_curve,
    match_dn_families,
    match_families,
)
from .formats import FORMATS, render
from .oracle import ORACLE_GENUS_CAP, prank_oracle
from .tables import TABLE_COLUMNS, build_table
from .verify import SUITES, run_suite

__all__ = ["main"]

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

RECORD_KEYS = (
    "request",
    "gamma",
    "genus",
    "method",
    "supersingular",
    "agreement",
    "status",
    "elapsed_ms",
)
SWEEP_COLUMNS = ("p", "m", "n", "genus", "gamma")
CLASSIFY_COLUMNS = ("p", "m", "n", "genus", "gamma", "supersingular", "witness", "special_rule")


class IntRange(click.ParamType):
    """``a..b`` (inclusive), ``a,b,c`` or a single integer."""

    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, range):
            return value
        text = str(value).strip()
        try:
            if ".." in text:
                lo, hi = text.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    self.fail(f"empty range {text!r}", param, ctx)
                return list(range(lo, hi + 1))
            return [int(x) for x in text.split(",") if x.strip()]
        except ValueError:
            self.fail(f"{text!r} is not an integer range", param, ctx)


RANGE = IntRange()
FORMAT_OPT = click.option("--format", "fmt", type=click.Choice(FORMATS), default="md",
                          show_default=True)


def _emit(text: str, output=None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _guard(fn):
    """Map library exceptions onto the exit-code contract."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvariantViolation as exc:
            _fail(EXIT_INTERNAL, f"internal invariant violated: {exc}")
        except (NotApplicableError, LimitExceededError, PRankError, ValueError) as exc:
            _fail(EXIT_USAGE, str(exc))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- prank -----------------------------------------------------------------------


def _flat(record: dict) -> dict:
    out = dict(record)
    out["request"] = " ".join(f"{k}={v}" for k, v in record["request"].items())
    if record["agreement"] is not None:
        out["agreement"] = "; ".join(f"{k}={v}" for k, v in record["agreement"].items())
    return out


def _render_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return render([record], RECORD_KEYS, fmt)
    return render([_flat(record)], RECORD_KEYS, fmt)


def _closed_values(p: int, fams) -> dict[str, int]:
    return {f"closed_form:{f}": closed_form(p, f).gamma for f in fams}


def _prank_fermat(p, m, n, method):
    ctx = make_context(p, m, n)
    values: dict[str, int] = {}
    if method in ("naive", "dp"):
        rep = prank_general(ctx, method)
        values[rep.method] = rep.gamma
    elif method == "oracle":
        values["oracle"] = prank_oracle(ctx).gamma
    elif method == "closed":
        fams = match_families(p, m, n)
        if not fams:
            raise NotApplicableError("no closed-form family applies to this curve")
        values.update(_closed_values(p, fams))
    else:
        rep = prank_general(ctx)
        values[f"counter:{rep.method}"] = rep.gamma
        if 1 <= ctx.genus <= ORACLE_GENUS_CAP:
            values["oracle"] = prank_oracle(ctx).gamma
        values.update(_closed_values(p, match_families(p, m, n)))
    ss = is_supersingular(ctx)[0] if ctx.genus else None
    return values, ctx.genus, ss


def _c_gamma(p: int, n: int, method: str) -> int:
    if method == "oracle":
        if n <= 2:
            return 0
        return prank_oracle(make_context(p, 2, n)).gamma
    return prank_curve_C(p, n, "auto" if method in ("auto", "closed") else method)


def _prank_dn(p, n, method):
    spec = CurveSpec("dn", p, n=n)
    values: dict[str, int] = {}
    if method in ("auto", "closed"):
        values.update(_closed_values(p, match_dn_families(p, n)))
    if method != "closed":
        if n % 2:
            bridge = _c_gamma(p, n, method)
        else:
            bridge = _c_gamma(p, 2 * n, method) - _c_gamma(p, n, method)
        values[f"bridge:{method}"] = bridge
    return values, spec.n // 2, None


def _prank_cover(kind, p, h, method):
    CurveSpec(kind, p, h=h)
    fam = FamilyId(kind.upper(), {"h": h})
    values = {f"closed_form:{fam}": closed_form(p, fam).gamma}
    if method not in ("auto", "closed"):
        raise NotApplicableError(f"method {method!r} is not available for {kind} curves")
    if method == "auto":
        q = p**h
        if kind == "dgz":
            gF = prank_general(make_context(p, q - 1, q - 1)).gamma if q - 1 >= 2 else 0
            values["components"] = 2 * q**4 + (gF - 4) * q**3 + q + 1
        else:
            values["components"] = (prank_curve_C(p, 2 * (q - 1)) + 1) * q - 1
    return values, None, None


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """p-ranks of y^m = x^n + 1 and related curves."""


@cli.command()
@click.option("--p", "p", type=int, required=True, help="Characteristic (prime).")
@click.option("--m", "m", type=int, help="Exponent of y.")
@click.option("--n", "n", type=int, help="Exponent of x.")
@click.option("--h", "h", type=int, help="Exponent for the dgz/bks covers.")
@click.option("--curve", type=click.Choice(["fermat", "dn", "dgz", "bks"]), default="fermat",
              show_default=True)
@click.option("--method", type=click.Choice(["auto", "naive", "dp", "oracle", "closed"]),
              default="auto", show_default=True)
@click.option("--family", "family", type=click.Choice(FAMILY_IDS), help="Evaluate one family.")
@click.option("--param", "params", multiple=True, metavar="KEY=VALUE",
              help="Family parameter (repeatable).")
@FORMAT_OPT
@_guard
def prank(p, m, n, h, curve, method, family, params, fmt):
    """p-rank of a single curve, cross-checked across methods."""
    start = time.perf_counter()
    if family:
        fam = FamilyId(family, _parse_params(params))
        rep = closed_form(p, fam)
        request = {"p": p, "family": str(fam)}
        values = {rep.method: rep.gamma}
        genus, ss = rep.genus, None
        spec = family_curve(p, fam)
        if spec.kind == "fermat" and method != "closed":
            ctx = make_context(p, spec.m, spec.n)
            values["counter"] = prank_general(ctx).gamma
    elif curve == "fermat":
        if m is None or n is None:
            raise click.UsageError("--m and --n are required for fermat curves")
        request = {"p": p, "curve": curve, "m": m, "n": n}
        values, genus, ss = _prank_fermat(p, m, n, method)
    elif curve == "dn":
        if n is None:
            raise click.UsageError("--n is required for dn curves")
        request = {"p": p, "curve": curve, "n": n}
        values, genus, ss = _prank_dn(p, n, method)
    else:
        if h is None:
            raise click.UsageError(f"--h is required for {curve} curves")
        request = {"p": p, "curve": curve, "h": h}
        values, genus, ss = _prank_cover(curve, p, h, method)
    request["method"] = method
    distinct = set(values.values())
    gamma = next(iter(values.values()))
    record = {
        "request": request,
        "gamma": str(gamma),
        "genus": None if genus is None else str(genus),
        "method": next(iter(values)),
        "supersingular": ss,
        "agreement": {k: str(v) for k, v in values.items()} if len(values) > 1 else None,
        "status": "ok" if len(distinct) == 1 else "MISMATCH",
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
    click.echo(_render_record(record, fmt), nl=False)
    if record["status"] != "ok":
        sys.exit(EXIT_INTERNAL)


def _parse_params(items) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise click.UsageError(f"--param expects KEY=VALUE, got {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            out[key] = val
    return out


# -- table -----------------------------------------------------------------------


@cli.command()
@click.option("--table", "table", type=click.IntRange(1, 5), required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--r", "r", type=RANGE, default="1..2", show_default=True)
@click.option("--h", "h", type=RANGE, default="1..2", show_default=True)
@click.option("--u", "u", type=RANGE, default="1..2", show_default=True)
@click.option("--v", "v", type=RANGE, default="1..2", show_default=True)
@click.option("--alpha-cases", type=click.Choice(["all", "i", "ii", "iii", "iv", "v"]),
              default="all", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file.")
@FORMAT_OPT
@_guard
def table(table, p, r, h, u, v, alpha_cases, output, fmt):
    """Rows of a summary table at the prime P, each checked independently."""
    rows = build_table(table, p, r=r, h=h, u=u, v=v, alpha_cases=alpha_cases)
    _emit(render((row.as_dict() for row in rows), TABLE_COLUMNS, fmt), output)
    if any(row.flag == "MISMATCH" for row in rows):
        sys.exit(EXIT_MISMATCH)


# -- verify ----------------------------------------------------------------------


@cli.command()
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@click.option("--max-genus", type=int, help="Genus bound for sweeps (suite default if unset).")
@click.option("--max-p", type=int, default=13, show_default=True)
@click.option("--jobs", type=int, default=os.cpu_count() or 1, show_default="cpu count")
@FORMAT_OPT
@_guard
def verify(suite, max_genus, max_p, jobs, fmt):
    """Run verification suites; exit 1 on any mismatch."""
    names = SUITES if suite == "all" else (suite,)
    records = []
    for name in names:
        res = run_suite(name, max_p=max_p, max_genus=max_genus, jobs=jobs)
        records.append({
            "suite": res.suite,
            "status": "pass" if res.ok else "FAIL",
            "passed": res.passed,
            "failed": res.failed,
            "elapsed_ms": res.elapsed_ms,
            "mismatches": " | ".join(res.mismatches),
        })
    cols = ("suite", "status", "passed", "failed", "elapsed_ms", "mismatches")
    click.echo(render(records, cols, fmt), nl=False)
    if any(r["status"] != "pass" for r in records):
        sys.exit(EXIT_MISMATCH)


# -- sweep and classify ------------------------------------------------------------


def _sweep_one(args):
    p, m, n = args
    try:
        ctx = make_context(p, m, n)
        g = prank_general(ctx).gamma
        return {"p": p, "m": m, "n": n, "genus": str(ctx.genus), "gamma": str(g)}, None
    except InvariantViolation as exc:
        return {"p": p, "m": m, "n": n, "genus": None, "gamma": None}, ("internal", str(exc))
    except PRankError as exc:
        return {"p": p, "m": m, "n": n, "genus": None, "gamma": None}, ("invalid", str(exc))


def _classify_one(args):
    p, m, n = args
    rec = {"p": p, "m": m, "n": n, "genus": None, "gamma": None, "supersingular": None,
           "witness": None, "special_rule": None}
    try:
        ctx = make_context(p, m, n)
        rec["genus"] = str(ctx.genus)
        rec["gamma"] = str(prank_general(ctx).gamma)
        if ctx.genus:
            ss, wit = is_supersingular(ctx)
            rec["supersingular"], rec["witness"] = ss, wit
            special = supersingular_special(ctx)
            rec["special_rule"] = special
            if special is not None and special != ss:
                return rec, ("internal", "shortcut rule disagrees with the criterion")
            if ss and rec["gamma"] != "0":
                return rec, ("internal", "supersingular curve with nonzero p-rank")
        return rec, None
    except InvariantViolation as exc:
        return rec, ("internal", str(exc))
    except PRankError as exc:
        return rec, ("invalid", str(exc))


def _grid(p_list, m_range, n_range):
    return [(p, m, n) for p in p_list for m in m_range for n in n_range]


def _stream(worker, items, jobs, columns, fmt):
    """Run worker over items (in order) and print records; return the exit code.

    Invalid grid points are reported inline and do not change the exit code;
    only internal errors do.
    """
    if jobs > 1 and len(items) > 1:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(worker, items, chunksize=max(1, len(items) // (4 * jobs)))
    else:
        pool, results = None, map(worker, items)
    worst = EXIT_OK
    try:
        if fmt != "json":
            header = render([], columns, fmt)
            click.echo(header, nl=False)
        for rec, err in results:
            if err is not None:
                kind, msg = err
                if kind == "internal":
                    worst = EXIT_INTERNAL
                if fmt == "json":
                    rec = {**rec, "error": msg}
                else:
                    rec = {**rec, "gamma": f"error: {msg}"}
            body = render([rec], columns if fmt != "json" else list(rec), fmt)
            if fmt == "csv":
                body = body.split("\n", 1)[1]
            elif fmt == "md":
                body = body.split("\n", 2)[2]
            click.echo(body, nl=False)
    finally:
        if pool is not None:
            pool.shutdown()
    return worst


GRID_OPTS = [
    click.option("--p-list", type=RANGE, required=True, help="Primes, e.g. 2,3 or 2..13."),
    click.option("--m-range", type=RANGE, required=True, help="e.g. 2..6"),
    click.option("--n-range", type=RANGE, required=True, help="e.g. 2..6"),
    click.option("--jobs", type=int, default=os.cpu_count() or 1, show_default="cpu count"),
    FORMAT_OPT,
]


def _grid_opts(fn):
    for opt in reversed(GRID_OPTS):
        fn = opt(fn)
    return fn


@cli.command()
@_grid_opts
@_guard
def sweep(p_list, m_range, n_range, jobs, fmt):
    """Counter p-rank over a (p, m, n) grid, in input order."""
    items = _grid(p_list, m_range, n_range)
    sys.exit(_stream(_sweep_one, items, jobs, SWEEP_COLUMNS, fmt))


@cli.command()
@_grid_opts
@_guard
def classify(p_list, m_range, n_range, jobs, fmt):
    """Supersingularity report over a (p, m, n) grid."""
    items = _grid(p_list, m_range, n_range)
    sys.exit(_stream(_classify_one, items, jobs, CLASSIFY_COLUMNS, fmt))


def main(argv=None):
    """Entry point; click usage errors exit with 2."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - anything unexpected is internal
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    sys.exit(EXIT_OK)
