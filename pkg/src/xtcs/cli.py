"""Command-line front end.

Subcommands: params, table, verify, local-energy.  Configuration is a JSON
file with exactly the keys {"N", "lambda", "r", "omega", "s", "m"}; runtime
knobs are flags and override anything implied by the config.  Exit codes:
0 success, 1 usage or configuration error, 2 genuine verification failure.
Output is deterministic for a fixed config and seed; floats in tables and
text reports are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ValidationError
from .manybody import constancy_scan
from .model import ModelParams, derived_params, energy_level, ext_constants, v_eff_radial
from .laguerre import xm_laguerre
from .solver import solver_grid
from .verify import (VerificationReport, consistency_suite, isospectrality_check,
                     ode_residual, orthogonality_matrix, spectrum_csv_rows, thread_cap)
from .wavefunctions import count_nodes, radial_eigenfunction

SUITES = ("residual", "spectrum", "ortho", "consistency", "local-energy")


def _fmt(x) -> str:
    return f"{float(x):.17g}"


class _Parser(argparse.ArgumentParser):
    # usage errors are exit code 1; 2 is reserved for verification failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xtcs", description=__doc__)
    parser.add_argument("--version", action="version", version=f"xtcs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_config(sp):
        sp.add_argument("--config", required=True, metavar="PATH",
                        help="JSON file with keys N, lambda, r, omega, s, m")

    sp = sub.add_parser("params", help="print derived constants and low-lying energies")
    add_config(sp)
    sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("table", help="write CSV tables for external plotting")
    add_config(sp)
    sp.add_argument("--what", required=True, choices=("potential", "wavefunction", "spectrum"))
    sp.add_argument("--rho-max", type=float, default=None)
    sp.add_argument("--points", type=int, default=None)
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--level", type=int, default=0, help="level n for the wavefunction table")
    sp.add_argument("--out", metavar="DIR", default=None)
    sp.add_argument("--dump-polynomials", metavar="PATH", default=None, help=argparse.SUPPRESS)

    sp = sub.add_parser("verify", help="run verification suites, write reports")
    add_config(sp)
    sp.add_argument("--suite", default="all", choices=SUITES + ("all",))
    sp.add_argument("--out", metavar="DIR", default=None)
    sp.add_argument("--levels", type=int, default=4)
    sp.add_argument("--points", type=int, default=20001)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--perturb", type=float, default=1.0,
                    help="scale the extension term of H (negative control)")

    sp = sub.add_parser("local-energy", help="many-body local-energy constancy scan")
    add_config(sp)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--out", metavar="DIR", default=None)

    return parser


def load_params(path) -> ModelParams:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}")
    return ModelParams.from_json_dict(doc)


def _write_csv(rows, header, stream):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(str(c) if isinstance(c, int) else _fmt(c) for c in row) + "\n")


def _open_out(out_dir, name):
    path = Path(out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------


def cmd_params(args) -> int:
    p = load_params(args.config)
    d = derived_params(p)
    energies = [energy_level(n, p) for n in range(5)]
    constants = ext_constants(p) if p.ext_index == 1 else None
    if args.json:
        doc = {"params": p.to_json_dict(), "tau": d.tau, "alpha": d.alpha,
               "pair_count": d.pair_count,
               "energies": {f"E_{n}": e for n, e in enumerate(energies)}}
        if constants is not None:
            doc["x1_constants"] = dataclasses.asdict(constants)
        print(json.dumps(doc, indent=2))
        return 0
    print(f"tau        = {_fmt(d.tau)}")
    print(f"alpha      = {_fmt(d.alpha)}")
    print(f"pair_count = {d.pair_count}")
    for n, e in enumerate(energies):
        print(f"E_{n}        = {_fmt(e)}")
    if constants is not None:
        c = constants
        print(f"x1 constants: alpha1={_fmt(c.alpha1)} alpha2={_fmt(c.alpha2)} "
              f"beta1={_fmt(c.beta1)} beta2={_fmt(c.beta2)}")
    return 0


def _dump_polynomials(p, path):
    rows = []
    alpha = p.alpha
    for n in range(7):
        for m in range(4):
            for g in np.linspace(0.0, 10.0, 101):
                rows.append((n, m, alpha, float(g), float(xm_laguerre(n, m, alpha, g))))
    with open(path, "w", encoding="utf-8") as fh:
        _write_csv(rows, ("n", "m", "alpha", "g", "value"), fh)


def cmd_table(args) -> int:
    p = load_params(args.config)
    if args.dump_polynomials:
        _dump_polynomials(p, args.dump_polynomials)

    if args.what == "spectrum":
        grid = solver_grid(p, args.levels, args.points) if args.points else None
        rows = spectrum_csv_rows(p, args.levels, grid)
        header = ("n", "E_analytic", "E_conv_numeric", "E_ext_numeric",
                  "rel_err_conv", "rel_err_ext")
    else:
        n_points = args.points or 1001
        rho_max = args.rho_max or float(np.sqrt((2 * (2 * args.level + p.alpha + 1) + 10) / p.omega))
        rho = np.linspace(rho_max / n_points, rho_max, n_points)
        g = p.omega * rho ** 2
        v_conv = v_eff_radial(rho, p, extended=False)
        v_ext = v_eff_radial(rho, p, extended=True)
        if args.what == "potential":
            rows = list(zip(rho, g, v_conv, v_ext))
            header = ("rho", "g", "v_eff_conventional", "v_eff_extended")
        else:
            p_conv = dataclasses.replace(p, ext_index=0)
            phi_c = radial_eigenfunction(args.level, p_conv, rho)
            phi_e = radial_eigenfunction(args.level, p, rho)
            rows = list(zip(rho, g, phi_c, phi_e, v_conv, v_ext))
            header = ("rho", "g", "phi_conventional", "phi_extended",
                      "v_eff_conventional", "v_eff_extended")

    if args.out:
        try:
            with open(_open_out(args.out, f"{args.what}.csv"), "w", encoding="utf-8") as fh:
                _write_csv(rows, header, fh)
        except OSError as exc:
            print(f"xtcs: error: cannot write output: {exc}", file=sys.stderr)
            return 1
    else:
        _write_csv(rows, header, sys.stdout)
    return 0


# ---------------------------------------------------------------------------


def _suite_residual(p, args) -> VerificationReport:
    report = VerificationReport("eigen-equation residuals", p)
    for n in range(4):
        report.add(f"scaled residual, level {n} (m={p.ext_index})",
                   ode_residual(n, p), 1e-8)
    # the inconsistent m=1 denominator must fail; run it on the m=1 family
    p1 = dataclasses.replace(p, ext_index=1)
    report.add("scaled residual, level 0, m=1 denominator variant 2g+alpha",
               ode_residual(0, p1, x1_denominator="2g_plus_alpha"), 1e-2,
               comparison=">=",
               detail="variant rejected: only g+alpha solves the extended radial equation")
    return report


def _suite_spectrum(p, args) -> VerificationReport:
    grid = solver_grid(p, args.levels, args.points)
    return isospectrality_check(p, args.levels, grid, v_new_scale=args.perturb)


def _suite_ortho(p, args) -> VerificationReport:
    report = VerificationReport("orthogonality and node structure", p)
    k = max(args.levels, 5)
    gram = orthogonality_matrix(p, k)
    off = np.max(np.abs(gram - np.eye(k)))
    report.add(f"worst off-diagonal normalized inner product (k={k})", off, 1e-8)
    for n in range(5):
        report.add(f"node count, level {n} (expect {n})",
                   abs(count_nodes(n, p) - n), 0)
    return report


def _suite_consistency(p, args) -> VerificationReport:
    return consistency_suite(p)


def _suite_local_energy(p, args) -> VerificationReport:
    report = VerificationReport("many-body local-energy constancy", p)
    stats = constancy_scan(p, args.samples, args.seed, v_new_scale=args.perturb)
    report.add("stddev / |mean|", stats.relative_spread, 1e-5)
    report.add("|mean - E_0| / E_0", stats.relative_mean_error, 1e-5)
    report.metadata["scan"] = stats.to_json_dict()
    return report


_SUITE_RUNNERS = {
    "residual": _suite_residual,
    "spectrum": _suite_spectrum,
    "ortho": _suite_ortho,
    "consistency": _suite_consistency,
    "local-energy": _suite_local_energy,
}


def cmd_verify(args) -> int:
    p = load_params(args.config)
    selected = list(SUITES) if args.suite == "all" else [args.suite]
    runners = [(name, _SUITE_RUNNERS[name]) for name in selected]
    with ThreadPoolExecutor(max_workers=min(thread_cap(), len(runners))) as pool:
        reports = list(pool.map(lambda item: item[1](p, args), runners))
    all_passed = True
    for name, report in zip(selected, reports):
        all_passed &= report.passed
        print(f"{name}: {'PASS' if report.passed else 'FAIL'}")
        if args.out:
            try:
                _open_out(args.out, f"report_{name}.json").write_text(
                    json.dumps(report.to_json_dict(), indent=2) + "\n", encoding="utf-8")
                _open_out(args.out, f"report_{name}.txt").write_text(
                    report.to_text(), encoding="utf-8")
            except OSError as exc:
                print(f"xtcs: error: cannot write reports: {exc}", file=sys.stderr)
                return 1
    return 0 if all_passed else 2


def cmd_local_energy(args) -> int:
    p = load_params(args.config)
    stats = constancy_scan(p, args.samples, args.seed)
    doc = stats.to_json_dict()
    print(json.dumps(doc, indent=2))
    if args.out:
        try:
            _open_out(args.out, "local_energy.json").write_text(
                json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"xtcs: error: cannot write output: {exc}", file=sys.stderr)
            return 1
    return 0 if stats.passed() else 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits for usage errors, --help, --version
        return int(exc.code or 0)
    handlers = {"params": cmd_params, "table": cmd_table,
                "verify": cmd_verify, "local-energy": cmd_local_energy}
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"xtcs: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
