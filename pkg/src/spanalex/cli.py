"""Command-line interface.

Exit status: 0 on success, 1 on a domain or usage error, 2 when a
verification fails (routes disagree, a root-location check fails).
``--json`` output is deterministic: sorted keys, fixed float formatting and a
``"schema"`` version.
"""
from __future__ import annotations

import functools
import json
from dataclasses import dataclass

import click

from . import __version__, kernels
from .alexander import alex_tangle, alexander_pretzel, alexander_rational
from .errors import SpanAlexError, VerificationFailure
from .minus1 import classification_record
from .roots import CIRCLE_EPS, FAMILIES, check_halfplane, check_unit_circle, family_verify, find_roots, write_csv
from .tangle import PretzelSpec, RationalSpec, bridge_denominator, even_cf, parse_tangle, sig_str, to_text

SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    as_json: bool
    tol: float
    jobs: int


def _emit(cfg: RunConfig, payload: dict, human: str) -> None:
    if cfg.as_json:
        click.echo(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2))
    else:
        click.echo(human)


def _handled(fn):
    """Map library errors to exit codes and a JSON error record."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        cfg = click.get_current_context().find_object(RunConfig)
        try:
            return fn(*args, **kwargs) or 0
        except SpanAlexError as exc:
            if cfg is not None and cfg.as_json:
                err = {"code": exc.code, "type": type(exc).__name__, "message": str(exc)}
                click.echo(json.dumps({"schema": SCHEMA, "error": err}, sort_keys=True, indent=2))
            else:
                click.echo(f"error [{exc.code}]: {exc}", err=True)
            return exc.exit_code

    return wrapper


def _fraction(text: str) -> RationalSpec:
    return RationalSpec.parse(text)


def _poly_record(p) -> dict:
    return {
        "text": str(p),
        "min_degree": p.min_degree,
        "coefficients": [str(c) for c in p.coefficients],
    }


def _matrix_strings(m) -> list:
    return m.to_strings() if m is not None else None


@click.group()
@click.version_option(__version__, prog_name="spanalex")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-12, show_default=True,
              help="Root-finder tolerance (relative correction).")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for batch commands.")
@click.pass_context
def cli(ctx, as_json, tol, jobs):
    """Alexander polynomials of 2-bridge and pretzel knots from spans over Q(t)."""
    ctx.obj = RunConfig(as_json, tol, jobs)


# ---------------------------------------------------------------------------
# alex


@cli.group()
def alex():
    """Compute Alexander polynomials."""


def _routes_payload(results: dict) -> dict:
    return {r: _poly_record(res.delta) for r, res in results.items()}


@alex.command("rational")
@click.argument("fraction")
@click.option("--route", type=click.Choice(["span", "continuant", "all"]), default="all", show_default=True)
@click.pass_obj
@_handled
def alex_rational_cmd(cfg, fraction, route):
    """2-bridge knot b(P, Q) given as P/Q."""
    r = _fraction(fraction)
    results = alexander_rational(r.p, r.q, route)
    first = next(iter(results.values()))
    payload = {
        "command": "alex rational",
        "knot": first.knot,
        "delta": _poly_record(first.delta),
        "determinant": first.determinant,
        "mirror_applied": first.mirror_applied,
        "routes": _routes_payload(results),
        "agree": True,
    }
    lines = [f"{first.knot}: Delta = {first.delta}", f"determinant {first.determinant}"]
    lines += [f"  {name}: {res.delta}" for name, res in results.items()]
    _emit(cfg, payload, "\n".join(lines))


@alex.command("pretzel")
@click.argument("spec")
@click.option("--route", type=click.Choice(["span", "continuant", "closed", "all"]), default="all", show_default=True)
@click.pass_obj
@_handled
def alex_pretzel_cmd(cfg, spec, route):
    """Pretzel knot from comma-separated twists, e.g. 2,1,1,1,-5 or 'P(-2,3,7)'."""
    s = PretzelSpec.parse(spec)
    results = alexander_pretzel(s, route)
    first = next(iter(results.values()))
    payload = {
        "command": "alex pretzel",
        "knot": str(s),
        "delta": _poly_record(first.delta),
        "determinant": first.determinant,
        "routes": _routes_payload(results),
        "agree": True,
    }
    lines = [f"{s}: Delta = {first.delta}", f"determinant {first.determinant}"]
    lines += [f"  {name}: {res.delta}" for name, res in results.items()]
    _emit(cfg, payload, "\n".join(lines))


@alex.command("tangle")
@click.argument("expr")
@click.option("--closure", type=click.Choice(["even", "odd"]), default=None,
              help="Plat-close a (+,-,+,-) tangle and report its polynomial.")
@click.option("--mode", type=click.Choice(["fast", "generators"]), default="fast", show_default=True)
@click.pass_obj
@_handled
def alex_tangle_cmd(cfg, expr, closure, mode):
    """Span of a tangle expression such as 'compose(X+@1, X+@3)'."""
    e = parse_tangle(expr)
    span, res = alex_tangle(e, closure, mode)
    basic = span.basic_map()
    payload = {
        "command": "alex tangle",
        "expr": to_text(e),
        "source": sig_str(e.source),
        "target": sig_str(e.target),
        "apex_dim": span.apex_dim,
        "left": _matrix_strings(span.left),
        "right": _matrix_strings(span.right),
        "basic_map": _matrix_strings(basic),
    }
    lines = [f"{to_text(e)} : {sig_str(e.source)} -> {sig_str(e.target)}", f"apex dimension {span.apex_dim}"]
    if basic is not None:
        lines += ["basic map:", str(basic)]
    else:
        lines += ["left leg:", str(span.left), "right leg:", str(span.right)]
    if res is not None:
        payload["delta"] = _poly_record(res.delta)
        payload["determinant"] = res.determinant
        lines.append(f"{closure} closure: Delta = {res.delta}, determinant {res.determinant}")
    _emit(cfg, payload, "\n".join(lines))


# ---------------------------------------------------------------------------
# roots


@cli.group()
def roots():
    """Roots of Alexander polynomials and root-location checks."""


def _roots_run(cfg, knot, delta, check, eps, csv_path):
    rep = find_roots(delta, tol=cfg.tol, knot=knot)
    checks = {"circle": check_unit_circle(rep, eps), "hoste": check_halfplane(rep)}
    selected = [check] if check else list(checks)
    payload = {
        "command": "roots",
        "knot": knot,
        "polynomial": _poly_record(rep.polynomial),
        "degree": rep.degree,
        "roots": [
            {"re": z.value.real, "im": z.value.imag, "abs": abs(z.value), "residual": z.residual,
             "multiplicity": z.multiplicity}
            for z in rep.roots
        ],
        "checks": {
            name: {"name": checks[name].name, "passed": checks[name].passed, "margin": checks[name].margin}
            for name in selected
        },
    }
    lines = [f"{knot}: {rep.polynomial}  (degree {rep.degree})"]
    lines += [f"  {z.value.real:+.15f} {z.value.imag:+.15f}i  |t|={abs(z.value):.15f}" for z in rep.roots]
    for name in selected:
        c = checks[name]
        lines.append(f"{c.name}: {'pass' if c.passed else 'FAIL'} (margin {c.margin:.3e})")
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            write_csv([rep], fh)
    _emit(cfg, payload, "\n".join(lines))
    if check and not checks[check].passed:
        return VerificationFailure.exit_code
    return 0


_check_opt = click.option("--check", type=click.Choice(["circle", "hoste"]), default=None,
                          help="Fail (exit 2) unless the roots pass this check.")
_eps_opt = click.option("--eps", type=click.FloatRange(min=0, min_open=True), default=CIRCLE_EPS, show_default=True,
                        help="Unit-circle tolerance.")
_csv_opt = click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True), default=None,
                        help="Write one row per root.")


@roots.command("rational")
@click.argument("fraction")
@_check_opt
@_eps_opt
@_csv_opt
@click.pass_obj
@_handled
def roots_rational_cmd(cfg, fraction, check, eps, csv_path):
    """Roots for b(P, Q)."""
    r = _fraction(fraction)
    res = alexander_rational(r.p, r.q, "continuant")["continuant"]
    return _roots_run(cfg, res.knot, res.delta, check, eps, csv_path)


@roots.command("pretzel")
@click.argument("spec")
@_check_opt
@_eps_opt
@_csv_opt
@click.pass_obj
@_handled
def roots_pretzel_cmd(cfg, spec, check, eps, csv_path):
    """Roots for a pretzel knot."""
    s = PretzelSpec.parse(spec)
    res = alexander_pretzel(s, "closed")["closed"]
    return _roots_run(cfg, str(s), res.delta, check, eps, csv_path)


# ---------------------------------------------------------------------------


@cli.command()
@click.argument("expr")
@click.pass_obj
@_handled
def classify(cfg, expr):
    """Fraction of a rational 2-tangle from its span at t = -1 (experimental for other tangles)."""
    e = parse_tangle(expr)
    rec = classification_record(e)
    human = "\n".join(
        [
            f"fraction {rec['fraction']}  (slope {rec['slope']})",
            f"coloring {rec['coloring_matrix']}: (b-a)/(b-d) = {rec['coloring_fraction']}, "
            f"(v4-v3)/(v4-v2) = {rec['plucker_fraction']}",
            f"plucker {rec['plucker']}  on curve: {rec['on_curve']}",
        ]
    )
    _emit(cfg, {"command": "classify", **rec}, human)


@cli.command()
@click.argument("fraction")
@click.pass_obj
@_handled
def cf(cfg, fraction):
    """Even continued fraction used to build b(P, Q)."""
    r = _fraction(fraction)
    qe, mirrored = bridge_denominator(r.p, r.q)
    a = even_cf(r.p, qe)
    payload = {
        "command": "cf",
        "fraction": str(r),
        "denominator": qe,
        "mirror_applied": mirrored,
        "even_cf": a,
        "twists": [x // 2 for x in a],
    }
    note = f"  (odd denominator: uses the mirror image b({r.p},{qe}))" if mirrored else ""
    _emit(cfg, payload, f"{r.p}/{qe} = [{', '.join(str(x) for x in a)}]{note}")


@cli.command()
@click.option("--family", required=True, type=click.Choice([f.replace("_", "-") for f in FAMILIES] + list(FAMILIES)))
@click.option("--samples", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--bound", type=click.IntRange(min=1), default=None, help="Largest twist (pretzels) or P (rational).")
@_eps_opt
@_csv_opt
@click.pass_obj
@_handled
def verify(cfg, family, samples, seed, bound, eps, csv_path):
    """Sample a knot family and check where its Alexander roots lie."""
    rep = family_verify(family, samples, seed, bound, tol=cfg.tol, eps=eps, jobs=cfg.jobs)
    payload = {
        "command": "verify",
        "family": rep.family,
        "check": rep.check,
        "samples": rep.samples,
        "seed": rep.seed,
        "bound": rep.bound,
        "passed": rep.passed,
        "summary": rep.summary,
        "worst_margin": rep.worst_margin,
        "failures": [{"knot": k, "margin": m} for k, m in rep.failures],
    }
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            fh.write("knot,passed,margin,degree\n")
            for knot, ok, margin, degree in rep.rows:
                fh.write(f'"{knot}",{int(ok)},{margin!r},{degree}\n')
    lines = [rep.summary] + [f"  FAIL {k} (margin {m:.3e})" for k, m in rep.failures]
    _emit(cfg, payload, "\n".join(lines))
    return 0 if not rep.failures else VerificationFailure.exit_code


@cli.command()
@click.pass_obj
def backend(cfg):
    """Report the active kernel backend."""
    _emit(cfg, {"command": "backend", "backend": kernels.BACKEND, "available": sorted(kernels.backends())},
          f"{kernels.BACKEND} (available: {', '.join(sorted(kernels.backends()))})")


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="spanalex", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        rv = 1
    except click.Abort:
        rv = 1
    return rv if isinstance(rv, int) else 0
