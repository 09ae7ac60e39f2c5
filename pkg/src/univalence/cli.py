"""Command-line front end: JSON and CSV output for every computation.

Output is deterministic for a fixed configuration: stable field order, floats
rendered with 17 significant digits, complex numbers as {re, im} pairs.
Exit codes: 0 success, 1 numeric failure (with its analytic meaning in the
message), 2 configuration error naming the offending flag.
"""

from __future__ import annotations

import argparse
import sys

from . import acceptance, catalog, criteria, quadrature, sequences
from .errors import ConfigError, UnivalenceError
from .quadrature import MeshSpec

__all__ = ["main", "run"]

SCHEMA_VERSION = 1


# --------------------------------------------------------------------------
# deterministic rendering


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # canonicalize negative zero
    return format(x, ".17g")


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  "{key}": {_render_json(val, indent + 1)}'
            for key, val in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_render_json(val, indent + 1)}" for val in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(obj)}")


def _cpx(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _render_csv(header: list[str], rows: list[list]) -> str:
    def cell(v) -> str:
        if isinstance(v, float):
            return _fmt(v)
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict, csv_header: list[str], csv_rows: list[list]) -> None:
    if args.format == "csv":
        text = _render_csv(csv_header, csv_rows)
    else:
        text = _render_json(payload) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# argument handling


def _parse_complex_flag(value: str, flag: str) -> complex:
    try:
        return catalog.parse_complex(value)
    except ValueError as exc:
        raise ConfigError(flag, str(exc)) from exc


def _parse_mesh(spec: str | None, center: complex) -> MeshSpec:
    if spec is None:
        return MeshSpec(center=center)
    parts = spec.split(",")
    if len(parts) != 3:
        raise ConfigError("--mesh", f"expected R,A,grading, got {spec!r}")
    try:
        radial, angular = int(parts[0]), int(parts[1])
        grading = float(parts[2])
        return MeshSpec(
            radial_nodes=radial, angular_nodes=angular, grading=grading, center=center
        )
    except ValueError as exc:
        raise ConfigError("--mesh", str(exc)) from exc


def _parse_grid(spec: str) -> list[complex]:
    if spec == "default":
        return criteria.default_grid()
    radii_part, sep, angles_part = spec.partition("x")
    if not sep:
        raise ConfigError("--grid", f"expected 'default' or 'r1,r2,...xM', got {spec!r}")
    try:
        radii = [float(r) for r in radii_part.split(",")]
        angles = int(angles_part)
    except ValueError as exc:
        raise ConfigError("--grid", str(exc)) from exc
    if any(r < 0 or r >= 1 for r in radii) or angles < 1:
        raise ConfigError("--grid", "radii must lie in [0,1) and angle count >= 1")
    return criteria.default_grid(radii=tuple(radii), angles=angles)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="univalence",
        description="Coefficient sequences, area sums and univalence "
        "criteria for analytic functions on the unit disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, fn=True, out=True):
        if fn:
            p.add_argument("--fn", required=True, help="catalog id, e.g. koebe or exp_scale:k=4")
        if out:
            p.add_argument("--format", choices=("json", "csv"), default=None)
            p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("series", help="Taylor coefficients of a catalog entry")
    add_common(p)
    p.add_argument("--z", default="0", help="expansion center")
    p.add_argument("--count", type=int, default=16, help="expansion order")

    p = sub.add_parser("sequence", help="phi/Phi/Psi coefficient tables")
    add_common(p)
    p.add_argument("--kind", choices=("phi", "Phi", "Psi"), required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--lambda", dest="lam", type=float, default=None)

    p = sub.add_parser("criterion", help="criterion sum report at one probe point")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--zeta", default="0")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--tol", type=float, default=criteria.DEFAULT_TOL)

    p = sub.add_parser("scan", help="criterion gaps over a probe grid (CSV by default)")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--grid", default="default")
    p.add_argument("--N", type=int, default=96)
    p.add_argument("--tol", type=float, default=criteria.DEFAULT_TOL)

    p = sub.add_parser("bounds", help="growth-bound slack table for a univalent entry")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--N", type=int, default=10)

    p = sub.add_parser("area", help="weighted area integral with budget 1/lambda")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--mesh", default=None, help="R,A,grading")

    p = sub.add_parser("grunsky", help="Grunsky norm and the exterior-sum identity residual")
    add_common(p)
    p.add_argument("--z", default="0")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--mesh", default=None, help="R,A,grading")

    p = sub.add_parser("selftest", help="run the acceptance suite")
    return parser


# --------------------------------------------------------------------------
# subcommands


def _cmd_series(args) -> int:
    fn = catalog.from_spec(args.fn)
    z = _parse_complex_flag(args.z, "--z")
    s = catalog.series_at(fn, z, args.count)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "series",
        "fn": fn.label,
        "center": _cpx(s.center),
        "order": s.order,
        "coeffs": [_cpx(c) for c in s.coeffs],
    }
    rows = [[k, c.real, c.imag] for k, c in enumerate(s.coeffs)]
    _emit(args, payload, ["k", "re", "im"], rows)
    return 0


def _cmd_sequence(args) -> int:
    fn = catalog.from_spec(args.fn)
    z = _parse_complex_flag(args.z, "--z")
    # one order beyond the strict minimum covers the Psi route at count 0 too
    s = catalog.series_at(fn, z, args.count + 3)
    if args.kind == "phi":
        seq = sequences.aharonov_phi(s, args.count)
    elif args.kind == "Phi":
        if args.lam is None:
            raise ConfigError("--lambda", "required for kind=Phi")
        seq = sequences.phi_capital_direct(s, args.lam, args.count)
    else:
        seq = sequences.psi_sequence(s, z, args.count)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "sequence",
        "fn": fn.label,
        "kind": seq.kind,
        "z": _cpx(z),
        "values": [_cpx(v) for v in seq.values],
    }
    if seq.lam is not None:
        payload["lambda"] = seq.lam
    rows = [[n, v.real, v.imag] for n, v in enumerate(seq.values)]
    _emit(args, payload, ["n", "re", "im"], rows)
    return 0


def _cmd_criterion(args) -> int:
    fn = catalog.from_spec(args.fn)
    zeta = _parse_complex_flag(args.zeta, "--zeta")
    rep = criteria.univalence_criterion(fn, args.lam, zeta, args.N, args.tol)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "criterion",
        "fn": fn.label,
        "lambda": rep.lam,
        "zeta": _cpx(rep.zeta),
        "N": rep.N,
        "T_N": rep.T_N,
        "budget": rep.budget,
        "margin": rep.margin,
        "sup_abs_term": rep.sup_abs_term,
        "verdict": rep.verdict,
        "terms": [_cpx(a) for a in rep.terms],
    }
    rows = [[n + 1, a.real, a.imag] for n, a in enumerate(rep.terms)]
    _emit(args, payload, ["n", "re", "im"], rows)
    return 0


def _cmd_scan(args) -> int:
    fn = catalog.from_spec(args.fn)
    grid = _parse_grid(args.grid)
    res = criteria.fullmap_scan(fn, args.lam, grid, args.N, args.tol)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "scan",
        "fn": fn.label,
        "lambda": res.lam,
        "N": res.N,
        "full_mapping_consistent": res.full_mapping_consistent,
        "rows": [
            {
                "zeta": _cpx(r.zeta),
                "T_N": r.T_N,
                "margin": r.margin,
                "verdict": r.verdict,
            }
            for r in res.rows
        ],
    }
    rows = [
        [r.zeta.real, r.zeta.imag, r.T_N, r.margin, r.verdict] for r in res.rows
    ]
    if args.format is None:
        args.format = "csv"
    _emit(args, payload, ["zeta_re", "zeta_im", "T_N", "margin", "verdict"], rows)
    return 0


def _cmd_bounds(args) -> int:
    fn = catalog.from_spec(args.fn)
    z = _parse_complex_flag(args.z, "--z")
    rep = criteria.decay_bound_checks(fn, z, args.N, args.lam)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "bounds",
        "fn": fn.label,
        "lambda": rep.lam,
        "z": _cpx(rep.z),
        "worst_slack": rep.worst_slack,
        "rows": [
            {
                "n": r.n,
                "phi_lhs": r.phi_lhs,
                "phi_rhs": r.phi_rhs,
                "phi_slack": r.phi_slack,
                "cap_lhs": r.cap_lhs,
                "cap_rhs": r.cap_rhs,
                "cap_slack": r.cap_slack,
            }
            for r in rep.rows
        ],
    }
    rows = [
        [r.n, r.phi_lhs, r.phi_rhs, r.phi_slack, r.cap_lhs, r.cap_rhs, r.cap_slack]
        for r in rep.rows
    ]
    _emit(
        args,
        payload,
        ["n", "phi_lhs", "phi_rhs", "phi_slack", "cap_lhs", "cap_rhs", "cap_slack"],
        rows,
    )
    return 0


def _cmd_area(args) -> int:
    fn = catalog.from_spec(args.fn)
    z = _parse_complex_flag(args.z, "--z")
    mesh = _parse_mesh(args.mesh, z)
    res = quadrature.prawitz_integral(fn, args.lam, z, mesh)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "area",
        "fn": fn.label,
        "lambda": args.lam,
        "z": _cpx(z),
        "value": res.value,
        "error_estimate": res.error_estimate,
        "budget": 1.0 / args.lam,
        "mesh": {
            "radial_nodes": res.mesh.radial_nodes,
            "angular_nodes": res.mesh.angular_nodes,
            "grading": res.mesh.grading,
            "center": _cpx(res.mesh.center),
        },
    }
    rows = [[res.value, res.error_estimate, 1.0 / args.lam]]
    _emit(args, payload, ["value", "error_estimate", "budget"], rows)
    return 0


def _cmd_grunsky(args) -> int:
    fn = catalog.from_spec(args.fn)
    z = _parse_complex_flag(args.z, "--z")
    mesh = _parse_mesh(args.mesh, z)
    norm = quadrature.grunsky_norm(fn, z, mesh)
    residual = quadrature.psi_grunsky_identity_check(fn, z, args.N, mesh)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "grunsky",
        "fn": fn.label,
        "z": _cpx(z),
        "N": args.N,
        "grunsky_norm": norm.value,
        "error_estimate": norm.error_estimate,
        "identity_residual": residual,
    }
    rows = [[norm.value, norm.error_estimate, residual]]
    _emit(args, payload, ["grunsky_norm", "error_estimate", "identity_residual"], rows)
    return 0


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(report=print)
    return 0 if all(r.passed for r in results) else 1


_DISPATCH = {
    "series": _cmd_series,
    "sequence": _cmd_sequence,
    "criterion": _cmd_criterion,
    "scan": _cmd_scan,
    "bounds": _cmd_bounds,
    "area": _cmd_area,
    "grunsky": _cmd_grunsky,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except UnivalenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
