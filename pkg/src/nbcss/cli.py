"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse or usage error,
3 infeasible (overlap larger than two, heuristic timeout, stuck elimination).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .binmat import BinaryMatrix, CssPair, check_orthogonal_f2, nullspace_f2, overlap_histogram, overlap_sets
from .congruence import build_system, dump_system
from .errors import DimensionMismatch, InfeasibleError, NbcssError, OddOverlap
from .extend import CsaParams, ExponentAssignment, assemble, csa, verify_orthogonal_fq, verify_support
from .field import make_field
from .formats import (
    format_dense,
    format_field_matrix,
    offset_hex_assignment,
    read_binary,
    read_field_matrix,
    write_binary,
)
from .hgp import hgp
from .modsolve import SOLVERS, solve

log = logging.getLogger("nbcss")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


@dataclass
class RunManifest:
    command: str
    inputs: list[str]
    field_degree: int | None = None
    poly: str | None = None
    solver: str | None = None
    seed: int | None = None
    outputs: list[str] = field(default_factory=list)
    version: str = __version__

    def dumps(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _pair(args) -> CssPair:
    return CssPair(read_binary(args.hc, args.format), read_binary(args.hd, args.format))


def _field(args):
    poly = int(args.poly, 0) if args.poly is not None else None
    return make_field(args.field_degree, poly)


def _report_violations(kind: str, bad, limit: int = 20) -> None:
    print(f"{kind}: FAIL ({len(bad)} violation(s))")
    for item in bad[:limit]:
        print(f"  {item}")
    if len(bad) > limit:
        print(f"  ... {len(bad) - limit} more")


def cmd_check(args) -> int:
    pair = _pair(args)
    table = overlap_sets(pair)
    hist = overlap_histogram(table)
    odd = check_orthogonal_f2(pair)
    print(f"H_C: {pair.hc.rows}x{pair.n}  H_D: {pair.hd.rows}x{pair.n}")
    print("overlap histogram: " + (", ".join(f"{k}:{v}" for k, v in hist.items()) or "(no overlaps)"))
    if odd:
        _report_violations("F2 orthogonality", [f"rows ({i},{ip}) overlap {s}" for i, ip, s in odd])
        return EXIT_FAIL
    print("F2 orthogonality: ok")
    applicable = set(hist) <= {2}
    if applicable:
        print("congruence method: applicable (all overlaps 0 or 2)")
    else:
        print("congruence method: not applicable (overlaps > 2); use the separable assignment (csa)")
    return EXIT_OK


def cmd_hgp(args) -> int:
    h1 = read_binary(args.h1, args.format)
    h2 = read_binary(args.h2, args.format)
    pair = hgp(h1, h2)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = ".alist" if args.out_format == "alist" else ".txt"
    write_binary(out / f"hx{ext}", pair.hc, args.out_format)
    write_binary(out / f"hz{ext}", pair.hd, args.out_format)
    print(f"H_X: {pair.hc.rows}x{pair.n}  H_Z: {pair.hd.rows}x{pair.n}  -> {out}")
    return EXIT_OK


def _write_extension(out: Path, hg, hd, manifest: RunManifest, extra: dict[str, str]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    files = {"hgamma.hex": format_field_matrix(hg), "hdelta.hex": format_field_matrix(hd), **extra}
    for name, text in files.items():
        (out / name).write_text(text)
    manifest.outputs = sorted(files) + ["manifest.json"]
    (out / "manifest.json").write_text(manifest.dumps())


def _self_check(pair: CssPair, hg, hd) -> int:
    bad_s = verify_support(hg, pair.hc) + verify_support(hd, pair.hd)
    bad_o = verify_orthogonal_fq(hg, hd)
    if bad_s:
        _report_violations("support", bad_s)
    if bad_o:
        _report_violations("Fq orthogonality", bad_o)
    return EXIT_FAIL if bad_s or bad_o else EXIT_OK


def cmd_extend(args) -> int:
    pair = _pair(args)
    F = _field(args)
    manifest = RunManifest(
        "extend", [args.hc, args.hd], F.m, f"{F.poly:#x}", args.solver, args.seed
    )
    extra: dict[str, str] = {}
    if args.solver == "csa":
        hg, hd = csa(pair, CsaParams.random(pair, F.modulus, args.seed), F)
    else:
        system = build_system(pair, F.modulus)
        dump = dump_system(system)
        extra["congruences.txt"] = dump
        if args.dump_congruences:
            sys.stdout.write(dump)
        trace_lines: list[str] = []
        v = solve(
            system,
            args.solver,
            args.seed,
            fallback=not args.no_fallback,
            max_iters=args.max_iters,
            trace=trace_lines.append if args.trace_elimination else None,
        )
        if args.trace_elimination:
            extra["elimination.trace"] = "\n".join(trace_lines) + ("\n" if trace_lines else "")
        asg = ExponentAssignment.from_vector(system.var_index, v, F.modulus)
        hg, hd = assemble(pair, asg, F)
    _write_extension(Path(args.out_dir), hg, hd, manifest, extra)
    rc = _self_check(pair, hg, hd)
    print(f"{F}: wrote {args.out_dir} ({'ok' if rc == 0 else 'FAILED self-check'})")
    return rc


def cmd_csa(args) -> int:
    pair = _pair(args)
    F = _field(args)
    manifest = RunManifest("csa", [args.hc, args.hd], F.m, f"{F.poly:#x}", "csa", args.seed)
    hg, hd = csa(pair, CsaParams.random(pair, F.modulus, args.seed), F)
    _write_extension(Path(args.out_dir), hg, hd, manifest, {})
    rc = _self_check(pair, hg, hd)
    print(f"{F}: wrote {args.out_dir} ({'ok' if rc == 0 else 'FAILED self-check'})")
    return rc


def cmd_verify(args) -> int:
    pair = _pair(args)
    if args.paper_hex:
        # exponents only; any primitive element of GF(256) gives the same verdicts
        # on 0/2 overlaps, so assemble them in the default field
        F = make_field(8)
        sg, sd, asg = offset_hex_assignment(Path(args.hgamma).read_text(), Path(args.hdelta).read_text(), F.modulus)
        bad = [("Gamma", i, j) for i, j in _support_diff(sg, pair.hc)]
        bad += [("Delta", i, j) for i, j in _support_diff(sd, pair.hd)]
        if bad:
            _report_violations("support", bad)
            return EXIT_FAIL
        hg, hd = assemble(pair, asg, F)
        table = overlap_sets(pair)
        if set(overlap_histogram(table)) <= {2}:
            system = build_system(pair, F.modulus, table)
            v = asg.to_vector(system.var_index)
            unsat = [system.row_labels[r] for r in system.unsatisfied(v)]
            if unsat:
                _report_violations("exponent congruences", unsat)
                return EXIT_FAIL
            print(f"exponent congruences: ok ({system.n_rows} checked)")
    else:
        hg = read_field_matrix(args.hgamma)
        hd = read_field_matrix(args.hdelta, hg.field)
    rc = _self_check(pair, hg, hd)
    if rc == EXIT_OK:
        print("support: ok")
        print("Fq orthogonality: ok")
    return rc


def _support_diff(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"field matrix is {a.shape[0]}x{a.shape[1]}, binary is {b.shape[0]}x{b.shape[1]}")
    return [(i, j) for i in range(a.rows) for j in sorted(set(a.row_support[i]) ^ set(b.row_support[i]))]


def cmd_kernel(args) -> int:
    mat = read_binary(args.matrix, args.format)
    basis = nullspace_f2(mat)
    print(f"# kernel dimension {len(basis)}")
    sys.stdout.write(format_dense(BinaryMatrix.from_supports(([j for j, b in enumerate(v) if b] for v in basis), mat.cols)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nbcss", description="Non-binary extension of binary CSS pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def io_opts(p):
        p.add_argument("--format", choices=["auto", "dense", "alist"], default="auto", help="input matrix format")

    def pair_opts(p):
        p.add_argument("hc", help="first binary check matrix (H_C / H_X)")
        p.add_argument("hd", help="second binary check matrix (H_D / H_Z)")
        io_opts(p)

    def field_opts(p):
        p.add_argument("-m", "--field-degree", type=int, default=8)
        p.add_argument("--poly", help="field polynomial bitmask, e.g. 0x11d (default: built-in table)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--out-dir", required=True)

    p = sub.add_parser("check", help="F2 orthogonality, overlap histogram, applicability")
    pair_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hgp", help="hypergraph product of two seeds")
    p.add_argument("h1")
    p.add_argument("h2")
    io_opts(p)
    p.add_argument("--out-format", choices=["dense", "alist"], default="dense")
    p.add_argument("-o", "--out-dir", required=True)
    p.set_defaults(func=cmd_hgp)

    p = sub.add_parser("extend", help="solve the exponent congruences and write field matrices")
    pair_opts(p)
    field_opts(p)
    p.add_argument("--solver", choices=list(SOLVERS) + ["csa"], default="eliminate")
    p.add_argument("--no-fallback", action="store_true", help="fail instead of using SNF when elimination is stuck")
    p.add_argument("--max-iters", type=int, default=1000, help="heuristic sweep budget")
    p.add_argument("--dump-congruences", action="store_true", help="also print the congruence system")
    p.add_argument("--trace-elimination", action="store_true", help="write elimination.trace")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("csa", help="separable assignment (any even overlaps)")
    pair_opts(p)
    field_opts(p)
    p.set_defaults(func=cmd_csa)

    p = sub.add_parser("verify", help="check support and orthogonality of field matrices")
    p.add_argument("hgamma")
    p.add_argument("hdelta")
    pair_opts(p)
    p.add_argument("--paper-hex", action="store_true", help="field files use the offset byte convention (01 = alpha^0)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernel", help="F2 kernel basis of a binary matrix")
    p.add_argument("matrix")
    io_opts(p)
    p.set_defaults(func=cmd_kernel)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OddOverlap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NbcssError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
