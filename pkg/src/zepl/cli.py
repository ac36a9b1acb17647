"""Command-line front end: machine-readable tables and figure data.

Exit codes: 0 success, 1 verification failure (a residual or agreement check
above tolerance), 2 parameter/validation error, 3 I/O error.  Output is a
single JSON document (validating against schemas/output.schema.json) or CSV
rows with a stable header, to stdout or --output.  The only environment
knob is ZEPL_OUTPUT_DIR, which relative --output paths are joined against.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from . import __version__, dirac, halfline, oracle, powerlaw, verify

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class ValidationError(Exception):
    pass


def parse_rational(text: str):
    """'3/2' parses exactly (Fraction); plain integers stay exact; anything
    else falls back to float."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        if text.lstrip("+-").isdigit():
            return Fraction(int(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse number {text!r}") from exc


def _emit(doc: dict, rows: list[dict], args) -> None:
    """Write the JSON envelope or the CSV rows for this command."""
    if args.format == "json":
        payload = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        payload = buf.getvalue()
    if args.output:
        path = args.output
        outdir = os.environ.get("ZEPL_OUTPUT_DIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _envelope(command: str, parameters: dict, results, passed: bool | None = None) -> dict:
    doc = {"command": command, "version": __version__,
           "parameters": parameters, "results": results}
    if passed is not None:
        doc["passed"] = passed
    return doc


def _num(value):
    if isinstance(value, Fraction):
        return float(value)
    return value


# ---------------------------------------------------------------------------
# Subcommand runners
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    names = args.suite or verify.suite_names()
    checks = []
    for name in names:
        try:
            checks.extend(verify.run_suite(name))
        except KeyError as exc:
            raise ValidationError(str(exc)) from exc
    scale = args.tolerance_scale
    rows = [{"name": c.name, "value": c.value, "tolerance": c.tolerance * scale,
             "passed": bool(c.value < c.tolerance * scale or
                            (c.passed and scale >= 1.0)), "detail": c.detail}
            for c in checks]
    passed = all(r["passed"] for r in rows)
    doc = _envelope("verify", {"suites": names, "tolerance_scale": scale},
                    rows, passed=passed)
    _emit(doc, rows, args)
    return EXIT_OK if passed else EXIT_VERIFICATION


def _family_from(args) -> powerlaw.PowerLawFamily:
    try:
        return powerlaw.PowerLawFamily(mu=args.mu, lam=args.lam, l=args.l, n=args.n)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _cmd_classify(args) -> int:
    fam = _family_from(args)
    rep = powerlaw.classify(fam, coupling_scale=args.coupling_scale)
    result = {
        "mu": _num(fam.mu), "lambda": fam.lam, "l": fam.l, "n": fam.n,
        "coupling_scale": rep.coupling_scale,
        "limit_origin": rep.limit_origin, "limit_infinity": rep.limit_infinity,
        "bounded": rep.bounded, "normalizable": rep.normalizable,
        "condition_status": rep.condition.status,
        "condition_rhs": rep.condition.rhs,
        "well": None if rep.well is None else asdict(rep.well),
    }
    row = {k: (json.dumps(v) if isinstance(v, dict) else v) for k, v in result.items()}
    _emit(_envelope("classify", vars_of(args, "mu", "lam", "l", "n", "coupling_scale"),
                    result), [row], args)
    return EXIT_OK


def _cmd_degeneracy(args) -> int:
    try:
        pairs = sorted(powerlaw.degenerate_pairs(args.mu, args.omega, args.l_max))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    result = {"pairs": [list(p) for p in pairs]}
    rows = [{"l": l, "n": n} for l, n in pairs]
    _emit(_envelope("degeneracy", vars_of(args, "mu", "omega", "l_max"), result),
          rows, args)
    return EXIT_OK


def _cmd_potential(args) -> int:
    fam = _family_from(args)
    if not (args.r_min > 0 and args.r_max > args.r_min):
        raise ValidationError("need 0 < r-min < r-max")
    r = np.geomspace(args.r_min, args.r_max, args.points)
    v = powerlaw.potential_eval(fam, r)
    veff = powerlaw.effective_potential_eval(fam, r)
    mapped = powerlaw.map_parameters(fam)
    rows = [{"r": float(a), "v": float(b), "v_eff": float(c)}
            for a, b, c in zip(r, v, veff)]
    result = {"gamma": mapped.gamma, "energy": mapped.energy,
              "terms": asdict(mapped.terms), "samples": rows}
    _emit(_envelope("potential", vars_of(args, "mu", "lam", "l", "n",
                                         "r_min", "r_max", "points"), result),
          rows, args)
    return EXIT_OK


def _cmd_dirac(args) -> int:
    try:
        fam = dirac.DiracFamily(beta=args.beta, lam=args.lam, l=args.l,
                                alpha_fs=args.alpha_fs)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    sol = dirac.upper_spinor(fam)
    theta = dirac.lower_component_relative(fam)
    res = dirac.residual_33(fam).max_residual
    agree = dirac.reduced_form_agreement(fam)
    result = {
        "nu": fam.nu, "kappa": fam.kappa, "coupling": fam.coupling, "n": 0,
        "c_l": sol.c_l, "normalized": sol.normalized, "notes": list(sol.notes),
        "theta_max_rel": theta, "residual_33_max": res,
        "reduced_form_agreement": agree,
    }
    if sol.normalized:
        result["norm_quadrature"] = dirac.spinor_norm(fam).value
    row = {k: (json.dumps(v) if isinstance(v, list) else v) for k, v in result.items()}
    passed = theta < 1e-12 and res < args.tolerance and agree < 1e-12
    _emit(_envelope("dirac", vars_of(args, "beta", "lam", "l", "alpha_fs"),
                    result, passed=passed), [row], args)
    return EXIT_OK if passed else EXIT_VERIFICATION


def _cmd_bender(args) -> int:
    if args.N == -2:
        raise ValidationError("N = -2 is excluded")
    rows = []
    worst = 0.0
    for n in range(args.n_max + 1):
        energy = halfline.spectrum(args.N, n)
        resid = halfline.residual_41(args.N, n).max_residual
        worst = max(worst, resid)
        rows.append({"n": n, "energy": energy, "residual_max": resid})
    passed = worst < args.tolerance
    _emit(_envelope("bender", vars_of(args, "N", "n_max"), rows, passed=passed),
          rows, args)
    return EXIT_OK if passed else EXIT_VERIFICATION


def _cmd_oracle(args) -> int:
    coupling_mode = args.mu is not None
    if coupling_mode == (args.N is not None):
        raise ValidationError("give either --mu (coupling mode) or --N (energy mode)")
    if coupling_mode:
        res = oracle.shoot_coupling(args.mu, args.lam, args.l, count=args.count)
        mu_f = float(args.mu)
        unit = (args.lam / (2.0 * mu_f + 1.0)) ** 2
        omega0 = 1.0 + (2 * args.l + 1) * abs(mu_f + 0.5)
        predicted = [unit * (2 * n + omega0) for n in range(args.count)]
        params = vars_of(args, "mu", "lam", "l", "count")
    else:
        if args.N not in (-1, 0, 1, 3):
            raise ValidationError("energy mode supports N in {-1, 0, 1, 3}")
        res = oracle.shoot_energy_bender(args.N, count=args.count)
        predicted = [(2 * n + 1) * abs(args.N + 2) + 1.0 for n in range(args.count)]
        params = vars_of(args, "N", "count")
    rows = []
    worst = math.inf if len(res.values) < args.count else 0.0
    for i, pred in enumerate(predicted):
        got = res.values[i] if i < len(res.values) else None
        nodes = res.node_counts[i] if i < len(res.node_counts) else None
        err = abs(got - pred) / abs(pred) if got is not None else None
        if err is not None:
            worst = max(worst, err)
        rows.append({"index": i, "recovered": got, "predicted": pred,
                     "rel_err": err, "node_count": nodes})
    passed = worst < args.tolerance and [r["node_count"] for r in rows] == list(range(args.count))
    result = {"mode": "coupling" if coupling_mode else "energy",
              "levels": rows, "diagnostics": res.diagnostics}
    _emit(_envelope("oracle", params, result, passed=passed), rows, args)
    return EXIT_OK if passed else EXIT_VERIFICATION


# --- figures ---------------------------------------------------------------

def _veff_rows(case: str, fam: powerlaw.PowerLawFamily, scale: float,
               points: int) -> list[dict]:
    terms = powerlaw.map_parameters(fam).terms.scaled(scale)
    r0 = terms.turning_scale
    r = np.geomspace(r0 * 1e-3, r0 * 1e3, points)
    v = powerlaw.effective_potential_eval(fam, r, coupling_scale=scale)
    return [{"case": case, "r": float(a), "v_eff": float(b)} for a, b in zip(r, v)]


def _subcritical_scale(fam: powerlaw.PowerLawFamily) -> float:
    cond = powerlaw.bound_condition(fam)
    if cond.rhs is None:
        raise ValidationError("no well-existence condition in this regime")
    b = fam.beta
    omega = 2 * fam.n + 1 + (2 * fam.l + 1) / b
    omega_crit = 2 * cond.rhs + 1 + (2 * fam.l + 1) / b
    if omega_crit <= 0:
        raise ValidationError(
            f"condition cannot be violated for l = {fam.l}: critical coupling is negative")
    return 0.9 * omega_crit / omega


def _cmd_figures(args) -> int:
    which = args.which
    lam, n, points = args.lam, args.n, args.points
    if which == 1:
        try:
            lo, hi, step = (float(tok) for tok in args.mu_range.split(":"))
        except ValueError as exc:
            raise ValidationError("--mu-range must look like -4:4:0.01") from exc
        if not (hi > lo and step > 0):
            raise ValidationError("--mu-range must satisfy lo < hi, step > 0")
        mus = np.arange(lo, hi + step / 2, step)
        rows = []
        for mu in mus:
            if min(abs(mu), abs(mu - 0.5), abs(mu + 0.5)) < 1e-9:
                continue
            p1, p2 = powerlaw.exponent_pair(float(mu))
            rows.append({"mu": float(mu), "p1": p1, "p2": p2})
        _emit(_envelope("figures", {"which": 1, "mu_range": args.mu_range}, rows),
              rows, args)
        return EXIT_OK

    l_pos = args.l if args.l and args.l > 0 else 1
    if which == 2:
        mu = float(args.mu) if args.mu is not None else 1.5
        if not mu > 0.5:
            raise ValidationError("figure 2 requires mu > 1/2")
        fam_a = powerlaw.PowerLawFamily(mu=mu, lam=lam, l=0, n=n)
        fam_bc = powerlaw.PowerLawFamily(mu=mu, lam=lam, l=l_pos, n=n)
        rows = (_veff_rows("a", fam_a, 1.0, points)
                + _veff_rows("b", fam_bc, 1.0, points)
                + _veff_rows("c", fam_bc, _subcritical_scale(fam_bc), points))
    elif which == 3:
        mu = float(args.mu) if args.mu is not None else 1.0 / 6.0
        if not 0.0 < mu < 0.5:
            raise ValidationError("figure 3 requires 0 < mu < 1/2 for case (a)")
        mu_neg = args.mu_negative
        if not -0.5 < mu_neg < 0.0:
            raise ValidationError("--mu-negative must lie in (-1/2, 0) for case (b)")
        rows = (_veff_rows("a", powerlaw.PowerLawFamily(mu=mu, lam=lam, l=0, n=n), 1.0, points)
                + _veff_rows("b", powerlaw.PowerLawFamily(mu=mu_neg, lam=lam, l=0, n=n), 1.0, points)
                + _veff_rows("c", powerlaw.PowerLawFamily(mu=mu, lam=lam, l=l_pos, n=n), 1.0, points))
    elif which == 4:
        mu = float(args.mu) if args.mu is not None else -1.5
        if not mu < -0.5:
            raise ValidationError("figure 4 requires mu < -1/2")
        fam_a = powerlaw.PowerLawFamily(mu=mu, lam=lam, l=0, n=n)
        fam_bc = powerlaw.PowerLawFamily(mu=mu, lam=lam, l=l_pos, n=n)
        rows = (_veff_rows("a", fam_a, 1.0, points)
                + _veff_rows("b", fam_bc, 1.0, points)
                + _veff_rows("c", fam_bc, _subcritical_scale(fam_bc), points))
    else:
        raise ValidationError("--which must be 1, 2, 3 or 4")
    params = {"which": which, "mu": _num(args.mu) if args.mu is not None else None,
              "lambda": lam, "l": l_pos, "n": n}
    _emit(_envelope("figures", params, rows), rows, args)
    return EXIT_OK


def vars_of(args, *names) -> dict:
    out = {}
    for name in names:
        out["lambda" if name == "lam" else name] = _num(getattr(args, name))
    return out


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output", help="write to this path instead of stdout "
                                     "(relative paths join ZEPL_OUTPUT_DIR)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zepl",
        description="Zero-energy power-law solutions: closed forms, "
                    "classification, and independent numerical verification.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run verification suites; exit 1 on any failure")
    sp.add_argument("--suite", action="append", choices=verify.suite_names(),
                    help="run only this suite (repeatable); default: all")
    sp.add_argument("--all", action="store_true", help="run every suite (default)")
    sp.add_argument("--tolerance-scale", type=float, default=1.0,
                    help="multiply every check tolerance by this factor")
    _add_common(sp)
    sp.set_defaults(run=_cmd_verify)

    sp = sub.add_parser("classify", help="boundedness/normalizability report")
    sp.add_argument("--mu", type=parse_rational, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--coupling-scale", type=float, default=1.0,
                    help="scale the attractive coefficient (sub-quantized shapes)")
    _add_common(sp)
    sp.set_defaults(run=_cmd_classify)

    sp = sub.add_parser("degeneracy", help="(l, n) pairs sharing one potential")
    sp.add_argument("--mu", type=parse_rational, required=True)
    sp.add_argument("--omega", type=parse_rational, required=True)
    sp.add_argument("--l-max", type=int, default=6)
    _add_common(sp)
    sp.set_defaults(run=_cmd_degeneracy)

    sp = sub.add_parser("potential", help="tabulate V and the effective potential")
    sp.add_argument("--mu", type=parse_rational, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--r-min", type=float, default=1e-2)
    sp.add_argument("--r-max", type=float, default=1e2)
    sp.add_argument("--points", type=int, default=200)
    _add_common(sp)
    sp.set_defaults(run=_cmd_potential)

    sp = sub.add_parser("dirac", help="rest-mass-energy spinor branch")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--alpha-fs", type=float, default=dirac.FINE_STRUCTURE_DEFAULT)
    sp.add_argument("--tolerance", type=float, default=1e-8)
    _add_common(sp)
    sp.set_defaults(run=_cmd_dirac)

    sp = sub.add_parser("bender", help="half-line monomial spectrum E_n = (2n+1)|N+2|+1")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--tolerance", type=float, default=1e-8)
    _add_common(sp)
    sp.set_defaults(run=_cmd_bender)

    sp = sub.add_parser("oracle", help="shooting recovery of couplings or energies")
    sp.add_argument("--mu", type=parse_rational, help="coupling mode")
    sp.add_argument("--N", type=int, help="energy mode")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--count", type=int, default=3)
    sp.add_argument("--tolerance", type=float, default=1e-6)
    _add_common(sp)
    sp.set_defaults(run=_cmd_oracle)

    sp = sub.add_parser("figures", help="curve data for the four summary figures")
    sp.add_argument("--which", type=int, required=True, choices=(1, 2, 3, 4))
    sp.add_argument("--mu", type=parse_rational)
    sp.add_argument("--mu-negative", type=float, default=-0.25,
                    help="mu for figure 3 case (b), in (-1/2, 0)")
    sp.add_argument("--mu-range", default="-4:4:0.01", help="lo:hi:step for figure 1")
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--points", type=int, default=400)
    _add_common(sp)
    sp.set_defaults(run=_cmd_figures)

    return p


_DASH_VALUE_FLAGS = {"--mu", "--omega", "--mu-range", "--mu-negative", "--beta", "--N"}
_DASH_VALUE_CHARS = set("-+0123456789./:")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ['--mu', '-3/4'] as ['--mu=-3/4'] so argparse does not read
    fraction or range values starting with '-' as options."""
    out = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok in _DASH_VALUE_FLAGS and nxt and nxt.startswith("-")
                and len(nxt) > 1 and set(nxt) <= _DASH_VALUE_CHARS):
            out.append(f"{tok}={nxt}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.run(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
