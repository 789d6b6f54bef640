"""Command-line front end.

Non-interactive, report-emitting.  Exit codes: 0 success, 2 validation
error, 3 capacity error.  All numeric output uses the configured decimal
precision (flag --precision, environment variable LATPACK_PRECISION,
default 4).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .errors import CapacityError, LatpackError, ParameterError
from .exactnum import next_prime
from . import craig, codes, lift, records, svp

# Published dimension-k claims tracked for comparison in gv reports.
REFERENCE_GV_CLAIMS = {(4096, 1024): 772}


def _precision(args) -> int:
    if args.precision is not None:
        return args.precision
    env = os.environ.get("LATPACK_PRECISION")
    return int(env) if env else 4


def _params(args) -> craig.CraigParams:
    l = args.l if args.l is not None else next_prime(args.n + 1)
    m = args.m if args.m is not None else craig.choose_params(args.n).m
    return craig.CraigParams(args.n, m, l)


def _density_block(out, p, k, density, guarantee, digits):
    out.write(f"params: n={p.n} m={p.m} l={p.l} k={k}\n")
    out.write(f"log2 center density: {density.log2(digits)} ({density.provenance})\n")
    out.write(f"min norm guarantee: {guarantee}\n")
    rec = records.builtin_records().best_record(p.n)
    if rec is not None:
        verdict = records.compare(p.n, density)
        out.write(
            f"reference: {rec.log2_delta} ({rec.name}); margin {verdict.margin} "
            f"({verdict.relation})\n"
        )


def cmd_construct(args, out):
    p = _params(args)
    if p.n + 1 > lift.AMBIENT_CAP:
        raise CapacityError(f"basis construction capped at ambient {lift.AMBIENT_CAP}")
    lattice = craig.craig_basis(p)
    if args.out:
        with open(args.out, "w") as fh:
            craig.write_basis(lattice, fh)
        out.write(f"wrote basis ({lattice.rank} x {lattice.ambient_dim}) to {args.out}\n")
    else:
        craig.write_basis(lattice, out)


def cmd_density(args, out):
    p = _params(args)
    k = args.k or 0
    density = craig.center_density_lb(p, k)
    guarantee = 8 * p.m if k else 2 * p.m
    _density_block(out, p, k, density, guarantee, _precision(args))


def cmd_lift(args, out):
    p = _params(args)
    with open(args.code) as fh:
        code = codes.read_generator(fh)
    if code.n == p.n:
        result = lift.lift_with_length_n_code(p, code)
    elif code.n == p.n + 1:
        result = lift.lift_sublattice(p, code)
    else:
        raise ParameterError(f"code length {code.n} matches neither n nor n+1")
    out.write(f"code: {result.code}\n")
    _density_block(out, p, result.code.k, result.density, result.min_norm_guarantee,
                   _precision(args))
    if result.lattice is not None:
        out.write(f"constructed basis rank {result.lattice.rank}; "
                  f"vol^2 = {result.lattice.vol_sq}\n")


def cmd_gv(args, out):
    k = codes.gv_max_k(args.n, args.d)
    out.write(f"exact GV maximum k for [{args.n}, k, {args.d}]: {k}\n")
    claim = REFERENCE_GV_CLAIMS.get((args.n, args.d))
    if claim is not None:
        out.write(f"published claim: k = {claim}; exact scan confirms k >= {claim}: "
                  f"{'yes' if k >= claim else 'no'}\n")


def cmd_verify(args, out):
    with open(args.basis) as fh:
        lattice = craig.read_basis(fh)
    cert = svp.verify_min_norm(lattice, args.bound)
    if cert.holds:
        out.write(f"certificate: holds (shortest norm {cert.norm} >= {args.bound})\n")
    else:
        out.write(f"certificate: violated (norm {cert.norm} < {args.bound}); "
                  f"witness {cert.witness}\n")


def cmd_table(args, out):
    tol = Fraction(args.tolerance) if args.tolerance else records.AGREE_TOLERANCE
    report = records.emit_table(args.id, tolerance=tol)
    out.write(records.render_report(report, args.format))


def cmd_sweep(args, out):
    result = lift.sweep_dimension(args.n)
    k = result.code.k if result.code else 0
    _density_block(out, result.params, k, result.density, result.min_norm_guarantee,
                   _precision(args))


def cmd_mwbeat(args, out):
    result = lift.mw_beater_search(args.p)
    mw = lift.mordell_weil_density(args.p)
    digits = _precision(args)
    out.write(f"dimension {result.params.n}: code {result.code}\n")
    _density_block(out, result.params, result.code.k, result.density,
                   result.min_norm_guarantee, digits)
    out.write(f"reference density (formula): {mw.log2(digits)}\n")


def cmd_pipeline24(args, out):
    result = lift.pipeline_24n(args.dim)
    _density_block(out, result.params, result.code.k, result.density,
                   result.min_norm_guarantee, _precision(args))


def cmd_conditional(args, out):
    p = craig.CraigParams(args.n, args.m, args.l)
    required = codes.CodeSpec(2, args.req_n, args.req_k, args.req_d, codes.HYPOTHETICAL)
    verdict = lift.conditional_eval(p, required)
    digits = _precision(args)
    out.write(f"required code: {required}\n")
    out.write(f"achieved log2 density: {verdict.achieved_density.log2(digits)}\n")
    out.write(f"status: {verdict.status}\n")
    rec = records.builtin_records().best_record(args.n)
    if rec is not None:
        v = records.compare(args.n, verdict.achieved_density)
        out.write(f"target record: {rec.log2_delta} ({rec.name}); margin {v.margin}\n")


def cmd_compare(args, out):
    verdict = records.compare(args.dim, args.value)
    out.write(f"best record at {args.dim}: {verdict.against.log2_delta} "
              f"({verdict.against.name})\n")
    out.write(f"candidate {args.value}: {verdict.relation} by {verdict.margin}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latpack",
                                 description="exact lattice packings from codes")
    ap.add_argument("--precision", type=int, default=None,
                    help="decimal digits for log2 output (default 4)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        for flag, kw in flags.items():
            sp.add_argument(f"--{flag.replace('_', '-')}", **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("construct", cmd_construct,
        n={"type": int, "required": True}, m={"type": int}, l={"type": int},
        out={"type": str})
    add("density", cmd_density,
        n={"type": int, "required": True}, m={"type": int}, l={"type": int},
        k={"type": int, "default": 0})
    add("lift", cmd_lift,
        n={"type": int, "required": True}, m={"type": int}, l={"type": int},
        code={"type": str, "required": True})
    add("gv", cmd_gv, n={"type": int, "required": True}, d={"type": int, "required": True})
    add("verify", cmd_verify,
        basis={"type": str, "required": True}, bound={"type": int, "required": True})
    add("table", cmd_table,
        id={"type": int, "required": True}, tolerance={"type": str},
        format={"type": str, "default": "text", "choices": ["text", "csv"]})
    add("sweep", cmd_sweep, n={"type": int, "required": True})
    add("mwbeat", cmd_mwbeat, p={"type": int, "required": True})
    add("pipeline24", cmd_pipeline24, dim={"type": int, "required": True})
    add("conditional", cmd_conditional,
        n={"type": int, "required": True}, m={"type": int, "required": True},
        l={"type": int, "required": True}, req_n={"type": int, "required": True},
        req_k={"type": int, "required": True}, req_d={"type": int, "required": True})
    add("compare", cmd_compare,
        dim={"type": int, "required": True}, value={"type": str, "required": True})
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        args.fn(args, out)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (ParameterError, LatpackError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
