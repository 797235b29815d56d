"""Command line front end.

Subcommands: ``gen``, ``spectral-radius``, ``certify``, ``power`` and
``verify-conjecture``. Every command prints either a human-readable table or
JSON records (``--format records``). Exit status is 0 on full success, 1 when
a check fails or the solver does not converge, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import io
from .certify import (
    CertificateError,
    CertificateVerdict,
    WeightedIncidence,
    build_family_certificate,
    check_alpha_normal,
)
from .conjecture import VerificationRow, verify_conjecture
from .core import FAMILIES, HypergraphError
from .power import PowerSpec, gen_power, lift_eigenvector, predicted_rho
from .spectral import (
    ConvergenceError,
    SolverOptions,
    SpectralError,
    eigen_residual,
    spectral_radius,
)

SCHEMA_VERSION = 1
LIFT_TOL = 1e-6


class UsageError(Exception):
    pass


def _int_range(text: str) -> list[int]:
    """Parse ``3,4,5`` or ``5-10`` (or a mix) into a sorted list of ints."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return sorted(out)


def _solver_opts(args) -> SolverOptions:
    return SolverOptions(tolerance=args.tol, max_iterations=args.max_iters, shift=args.shift)


def _emit(args, record: dict[str, Any], table: str) -> None:
    if args.format == "records":
        print(json.dumps({"schema_version": SCHEMA_VERSION, **record}, indent=2))
    else:
        print(table)


def _verdict_record(v: CertificateVerdict, k: int) -> dict[str, Any]:
    def w(x):
        d = {"constraint": x.constraint, "value": x.value, "target": x.target}
        if x.index is not None:
            d["index"] = x.index
        if x.cycle:
            d["cycle"] = list(x.cycle)
        return d

    return {
        "verdict": v.kind.value,
        "alpha": v.alpha,
        "alpha_pow_minus_1_over_k": v.alpha ** (-1.0 / k),
        "rho_bound": {"relation": v.rho_bound.relation, "value": v.rho_bound.value},
        "witnesses": [w(x) for x in v.witnesses],
        "cycle_products": [w(x) for x in v.cycle_products],
    }


def _verdict_table(v: CertificateVerdict, k: int) -> str:
    lines = [
        f"verdict   {v.kind.value}",
        f"alpha     {v.alpha:.15g}",
        f"alpha^-1/k {v.alpha ** (-1.0 / k):.15g}",
        f"bound     {v.rho_bound}",
    ]
    for x in v.witnesses:
        where = f"cycle {list(x.cycle)}" if x.cycle else f"{x.constraint} #{x.index}"
        lines.append(f"witness   {where}: {x.value:.12g} (target {x.target:.12g})")
    for x in v.cycle_products:
        lines.append(f"cycle     {list(x.cycle)}: {x.value:.12g}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    L = FAMILIES[args.family](args.k, args.m)
    text = io.dumps(L)
    if args.out:
        Path(args.out).write_text(text)
        _emit(
            args,
            {"command": "gen", "family": args.family, "k": args.k, "m": L.graph.m,
             "n": L.graph.n, "path": str(args.out)},
            f"wrote {args.family} k={args.k} m={L.graph.m} n={L.graph.n} to {args.out}",
        )
    else:
        sys.stdout.write(text)
    return 0


def cmd_spectral(args) -> int:
    H = io.read_hypergraph(args.file).graph
    try:
        r = spectral_radius(H, _solver_opts(args))
        status = 0
    except ConvergenceError as exc:
        r = exc.result
        status = 1
    record = {
        "command": "spectral-radius", "rho": r.rho, "lower": r.lower, "upper": r.upper,
        "iterations": r.iterations, "residual": r.residual, "converged": r.converged,
    }
    table = (
        f"rho        {r.rho:.15g}\n"
        f"bracket    [{r.lower:.15g}, {r.upper:.15g}]\n"
        f"iterations {r.iterations}\n"
        f"residual   {r.residual:.3e}\n"
        f"converged  {r.converged}"
    )
    if args.emit_vector:
        record["eigenvector"] = r.eigenvector.tolist()
        table += "\neigenvector " + " ".join(f"{c:.12g}" for c in r.eigenvector)
    _emit(args, record, table)
    return status


def _read_matrix(path: str) -> WeightedIncidence:
    triples = json.loads(Path(path).read_text())
    if not isinstance(triples, list):
        raise CertificateError("matrix file must be a list of [vertex, edge, weight] triples")
    weights = {}
    for t in triples:
        if not (isinstance(t, list) and len(t) == 3):
            raise CertificateError(f"bad triple {t!r}")
        v, e, w = t
        weights[(int(v), int(e))] = float(w)
    return WeightedIncidence(weights)


def cmd_certify(args) -> int:
    if args.family:
        if args.k is None or args.m is None:
            raise UsageError("--family needs --k and --m")
        L, B, alpha = build_family_certificate(args.family, args.k, args.m)
        H = L.graph
    else:
        if not args.file or args.alpha is None or not args.matrix:
            raise UsageError("certify needs either --family or FILE --alpha --matrix")
        H = io.read_hypergraph(args.file).graph
        B = _read_matrix(args.matrix)
        alpha = args.alpha
    v = check_alpha_normal(H, B, alpha)
    record = {"command": "certify", "k": H.k, "m": H.m, "n": H.n, **_verdict_record(v, H.k)}
    _emit(args, record, _verdict_table(v, H.k))
    return 1 if v.kind.value == "Invalid" else 0


def cmd_power(args) -> int:
    seed = io.read_hypergraph(args.seed).graph
    spec = PowerSpec(seed.k, args.k, args.s)
    P, pmap = gen_power(seed, spec)
    record: dict[str, Any] = {"command": "power", "t": spec.t, "k": spec.k, "s": spec.s,
                              "n": P.n, "m": P.m}
    lines = [f"power t={spec.t} k={spec.k} s={spec.s}: n={P.n} m={P.m}"]
    status = 0
    if args.out:
        io.write_hypergraph(P, args.out)
        record["path"] = str(args.out)
    elif not (args.emit_map or args.verify):
        sys.stdout.write(io.dumps(P))
        return 0
    else:
        record["hypergraph"] = io.to_document(P)
    if args.emit_map:
        record["map"] = {
            "vertex_blocks": [list(b) for b in pmap.vertex_blocks],
            "edge_blocks": [list(b) for b in pmap.edge_blocks],
        }
        lines += [f"V_{v} = {list(b)}" for v, b in enumerate(pmap.vertex_blocks)]
        lines += [f"V_e{i} = {list(b)}" for i, b in enumerate(pmap.edge_blocks)]
    if args.verify:
        opts = _solver_opts(args)
        try:
            rs = spectral_radius(seed, opts)
            rp = spectral_radius(P, opts)
        except SpectralError as exc:
            record["verify"] = {"error": str(exc), "holds": False}
            _emit(args, record, "\n".join(lines + [f"verify failed: {exc}"]))
            return 1
        pred = predicted_rho(rs.rho, spec)
        y = lift_eigenvector(seed, rs.eigenvector, rs.rho, spec, pmap)
        lift_res = eigen_residual(P, rs.rho**spec.exponent, y)
        holds = abs(rp.rho - pred) <= LIFT_TOL and lift_res <= 1e-8
        status = 0 if holds else 1
        record["verify"] = {"rho_seed": rs.rho, "rho_power": rp.rho, "predicted": pred,
                            "difference": rp.rho - pred, "lift_residual": lift_res,
                            "holds": holds}
        lines += [
            f"rho(seed)      {rs.rho:.15g}",
            f"rho(power)     {rp.rho:.15g}",
            f"rho(seed)^ts/k {pred:.15g}",
            f"lift residual  {lift_res:.3e}",
            f"identity holds {holds}",
        ]
    _emit(args, record, "\n".join(lines))
    return status


def _row_record(r: VerificationRow) -> dict[str, Any]:
    def b(x):
        return None if x is None else {"lower": x.lower, "upper": x.upper}

    d12, d23 = r.margins
    return {"k": r.k, "m": r.m, "rho_bl1": b(r.rho_bl1), "rho_bl2": b(r.rho_bl2),
            "rho_bp": b(r.rho_bp), "margins": [d12, d23],
            "ordering_holds": r.ordering_holds, "error": r.error}


def cmd_verify(args) -> int:
    rows = verify_conjecture(args.k, args.m, _solver_opts(args))
    ok = all(r.ordering_holds for r in rows)
    header = f"{'k':>2} {'m':>3} {'rho(B_L1)':>16} {'rho(B_L2)':>16} {'rho(B_P)':>16} {'L1-L2':>10} {'L2-P':>10}  ok"
    lines = [header]
    for r in rows:
        if r.error:
            lines.append(f"{r.k:>2} {r.m:>3}  error: {r.error}")
            continue
        d12, d23 = r.margins
        lines.append(
            f"{r.k:>2} {r.m:>3} {r.rho_bl1.mid:16.12f} {r.rho_bl2.mid:16.12f} "
            f"{r.rho_bp.mid:16.12f} {d12:10.3e} {d23:10.3e}  {'yes' if r.ordering_holds else 'NO'}"
        )
    lines.append("ordering holds on every row" if ok else "ORDERING FAILED on some row")
    _emit(args, {"command": "verify-conjecture", "all_hold": ok,
                 "rows": [_row_record(r) for r in rows]}, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def _add_global_options(parser: argparse.ArgumentParser, top: bool) -> None:
    # subcommands only override the top-level value when given explicitly
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--tol", type=float, default=d(1e-10),
                        help="solver tolerance on bracket width and residual (default 1e-10)")
    parser.add_argument("--max-iters", type=int, default=d(100_000))
    parser.add_argument("--shift", type=float, default=d(1.0))
    parser.add_argument("--format", choices=["table", "records"], default=d("table"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, top=False)

    p = argparse.ArgumentParser(prog="hyperspec", description=__doc__.splitlines()[0])
    _add_global_options(p, top=True)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate B_m^P / B_m^L(1) / B_m^L(2)")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("spectral-radius", parents=[common], help="spectral radius of a hypergraph file")
    s.add_argument("file")
    s.add_argument("--emit-vector", action="store_true")
    s.set_defaults(func=cmd_spectral)

    c = sub.add_parser("certify", parents=[common], help="classify a weighted incidence certificate")
    c.add_argument("file", nargs="?")
    c.add_argument("--alpha", type=float)
    c.add_argument("--matrix", help="JSON list of [vertex, edge, weight] triples")
    c.add_argument("--family", choices=["bl1", "bl2"])
    c.add_argument("--k", type=int)
    c.add_argument("--m", type=int)
    c.set_defaults(func=cmd_certify)

    w = sub.add_parser("power", parents=[common], help="generalized power hypergraph G^{k,s}")
    w.add_argument("seed")
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--s", type=int, required=True)
    w.add_argument("-o", "--out")
    w.add_argument("--emit-map", action="store_true")
    w.add_argument("--verify", action="store_true",
                   help="solve seed and power and check rho(G^{k,s}) = rho(G)^(ts/k)")
    w.set_defaults(func=cmd_power)

    v = sub.add_parser("verify-conjecture", parents=[common],
                       help="check rho(B_m^L(1)) > rho(B_m^L(2)) > rho(B_m^P) on a grid")
    v.add_argument("--k", type=_int_range, default=[3, 4, 5], help="e.g. 3,4,5 or 3-5")
    v.add_argument("--m", type=_int_range, default=list(range(5, 11)), help="e.g. 5-10")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HypergraphError, CertificateError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
