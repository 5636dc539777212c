"""Command-line front end.

Exit codes: 0 when everything passes, 1 when a verification check fails,
2 for configuration or input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from .cumulants import boolean_from_moments, free_from_moments, two_state_from_pair
from .documents import DocumentError, doc_to_functional, dumps, format_rational, loads, parse_rational, to_doc
from .meixner import boolean_shift_jacobi, jacobi_from_moments, meixner_jacobi, moments_from_jacobi
from .series import AlphabetMismatch
from .transforms import (TransformError, b_map, bercovici_pata, bercovici_pata_inverse, boolean_power,
                         delta_state, fermi_image, free_convolve, free_power, monotone_convolve,
                         orthogonal_convolve, phi_map, phi_one_arg, recover_psi)
from .verify import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
MAP_KINDS = ("phi", "b", "fermi", "boolean-power", "free-power", "delta-shift",
             "bercovici-pata", "bercovici-pata-inverse", "monotone", "orthogonal", "recover-psi")


class ConfigError(Exception):
    pass


def max_n() -> int:
    raw = os.environ.get("CFREE_MAX_N", "10")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"CFREE_MAX_N={raw!r} is not an integer") from exc
    if value < 1:
        raise ConfigError("CFREE_MAX_N must be positive")
    return value


def _read_doc(path: str | None):
    if path is None:
        raise ConfigError("an input document is required (-i/--input)")
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path):
    return doc_to_functional(_read_doc(path), max_n())


def _write(obj, path: str | None):
    text = dumps(obj)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _rational(s: str) -> Fraction:
    try:
        return parse_rational(s)
    except DocumentError as exc:
        raise ConfigError(str(exc)) from exc


def _vector(s: str | None, d: int) -> list:
    if s is None:
        return [Fraction(0)] * d
    parts = [_rational(x) for x in s.split(",")]
    if len(parts) == 1:
        return parts * d
    if len(parts) != d:
        raise ConfigError(f"vector {s!r} has {len(parts)} entries, expected 1 or {d}")
    return parts


def _need(value, flag):
    if value is None:
        raise ConfigError(f"{flag} is required for this operation")
    return value


# -- subcommands ---------------------------------------------------------------

def cmd_cumulants(args) -> int:
    f = _load(args.input)
    if args.kind == "boolean":
        out = boolean_from_moments(f)
    elif args.kind == "free":
        out = free_from_moments(f)
    else:
        psi = _load(_need(args.psi, "--psi"))
        out = two_state_from_pair(f, psi)
    _write(to_doc(out), args.output)
    return EXIT_OK


def cmd_map(args) -> int:
    kind = args.map
    if kind == "phi":
        rho = _load(args.rho or _need(args.input, "--rho or --input"))
        out = phi_map(rho, _load(args.psi)) if args.psi else phi_one_arg(rho)
    elif kind == "recover-psi":
        out = recover_psi(_load(_need(args.rho, "--rho")), _load(args.input))
    elif kind in ("monotone", "orthogonal"):
        tau = _load(args.input)
        psi = _load(_need(args.psi, "--psi"))
        out = monotone_convolve(tau, psi) if kind == "monotone" else orthogonal_convolve(tau, psi)
    else:
        f = _load(args.input)
        if kind == "b":
            out = b_map(f, _vector(args.a, f.d), _rational(_need(args.t, "--t")))
        elif kind == "fermi":
            out = fermi_image(f)
        elif kind == "boolean-power":
            out = boolean_power(f, _rational(_need(args.t, "--t")))
        elif kind == "free-power":
            out = free_power(f, _rational(_need(args.t, "--t")))
        elif kind == "delta-shift":
            out = free_convolve(f, delta_state(_vector(_need(args.a, "--a"), f.d), f.N))
        elif kind == "bercovici-pata":
            out = bercovici_pata(f)
        else:
            out = bercovici_pata_inverse(f)
    _write(to_doc(out), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cap = max_n()
    if args.N > cap:
        raise ConfigError(f"--N {args.N} exceeds the cap {cap} (CFREE_MAX_N)")
    if args.N < 2 or args.d < 1 or args.trials < 1 or args.tolerance <= 0:
        raise ConfigError("need N >= 2, d >= 1, trials >= 1 and a positive tolerance")
    cfg = SuiteConfig(seed=args.seed, N=args.N, d=args.d, trials=args.trials,
                      tolerance=args.tolerance, exact=args.exact)
    start = time.perf_counter()
    report = run_suite(args.suite, cfg)
    doc = report.to_json()
    doc["seconds"] = time.perf_counter() - start
    _write(doc, args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_jacobi(args) -> int:
    if args.meixner is not None:
        b, c = (_rational(x) for x in args.meixner)
        N = args.N if args.N is not None else max_n()
        jac = meixner_jacobi(b, c, args.levels or (N // 2 + 1))
    else:
        f = _load(args.input)
        N = f.N
        jac = jacobi_from_moments(f, args.levels)
    if N > max_n():
        raise ConfigError(f"N={N} exceeds the cap {max_n()} (CFREE_MAX_N)")
    doc = {"kind": "jacobi", "beta": [format_rational(x) for x in jac.beta],
           "gamma": [format_rational(x) for x in jac.gamma]}
    if args.shift is not None:
        alpha, t = (_rational(x) for x in args.shift)
        shifted = boolean_shift_jacobi(jac, alpha, t)
        doc["shifted"] = {"alpha": format_rational(alpha), "t": format_rational(t),
                          "beta": [format_rational(x) for x in shifted.beta],
                          "gamma": [format_rational(x) for x in shifted.gamma]}
        doc["moments"] = to_doc(moments_from_jacobi(shifted, N))
    _write(doc, args.output)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cfree", description="Exact cumulant calculus for non-commutative distributions.")
    sub = p.add_subparsers(dest="command", required=True)

    def io(sp):
        sp.add_argument("-i", "--input", help="input state document ('-' for stdin)")
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    c = sub.add_parser("cumulants", help="Boolean, free or two-state cumulants of a state document")
    io(c)
    c.add_argument("--kind", choices=("boolean", "free", "two-state"), required=True)
    c.add_argument("--psi", help="second state for two-state cumulants")
    c.set_defaults(func=cmd_cumulants)

    m = sub.add_parser("map", help="apply a transformation to state documents")
    io(m)
    m.add_argument("--map", choices=MAP_KINDS, required=True)
    m.add_argument("--rho", help="first argument of phi (defaults to the input)")
    m.add_argument("--psi", help="second argument of phi, monotone or orthogonal")
    m.add_argument("--a", help="rational shift, one value or comma-separated per variable")
    m.add_argument("--t", help="rational parameter")
    m.set_defaults(func=cmd_map)

    v = sub.add_parser("verify", help="run identity suites and emit a report")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--N", type=int, default=6)
    v.add_argument("--d", type=int, default=2)
    v.add_argument("--trials", type=int, default=5)
    v.add_argument("--tolerance", type=float, default=1e-9)
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", help="rational matrices in the fock suite")
    mode.add_argument("--float", dest="exact", action="store_false", help="float matrices (default)")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify, exact=False)

    j = sub.add_parser("jacobi", help="Jacobi parameters of a one-variable state or a free Meixner law")
    io(j)
    j.add_argument("--meixner", nargs=2, metavar=("B", "C"))
    j.add_argument("--shift", nargs=2, metavar=("ALPHA", "T"), help="Boolean head shift")
    j.add_argument("--levels", type=int)
    j.add_argument("--N", type=int, help="moment degree for --meixner")
    j.set_defaults(func=cmd_jacobi)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DocumentError, AlphabetMismatch, TransformError, ValueError) as exc:
        print(f"cfree: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
