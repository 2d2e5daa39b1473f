"""Command-line interface.

Exit codes: 0 success, 2 bad input (parse errors, bad prime, malformed
config), 3 not a covering candidate / not semi-invariant / RDP filter
failure, 4 verification or golden mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from . import lattice
from .automorphisms import (
    CMTypeCandidate,
    DiagonalAutomorphism,
    SemiInvarianceError,
    cm_verdict,
    conclude_transcendental_dimension,
    h20_weights,
)
from .characters import b2_fermat, fermat_lambda, orbit_decomposition, transcendental_characters
from .delsarte import CoveringError, DelsarteError, analyze, parse_exponent_matrix
from .enumeration import (
    EnumerationStats,
    canonical_form,
    is_maximal_quintic_class,
    picard_spectrum,
    run_enumeration,
    uniqueness_report,
)
from .polynomial import PolynomialSyntaxError, format_polynomial
from .zeta import ZetaError, format_factored, verify_resolution_trace, zeta_local

EXIT_OK, EXIT_INPUT, EXIT_CANDIDATE, EXIT_MISMATCH = 0, 2, 3, 4


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _surface(text: str):
    try:
        return parse_exponent_matrix(text)
    except PolynomialSyntaxError as exc:
        raise CLIError(f"parse error: {exc}", EXIT_INPUT) from None
    except CoveringError as exc:
        raise CLIError(str(exc), EXIT_CANDIDATE) from None
    except DelsarteError as exc:
        raise CLIError(str(exc), EXIT_INPUT) from None


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_analyze(args) -> int:
    surface = _surface(args.polynomial)
    result = analyze(surface)
    if args.json:
        _emit_json(result.to_dict())
        return EXIT_OK
    cov = result.covering
    print(f"polynomial : {surface.polynomial}")
    print(f"degree     : {surface.degree}")
    print(f"m          : {cov.m}")
    print("B          : " + "  ".join("(" + ",".join(map(str, r)) + ")" for r in cov.B))
    gens = ", ".join(f"{g} (order {o})" for g, o in zip(cov.G.generators, cov.G.orders)) or "trivial"
    print(f"|G|        : {cov.G_order}  generators {gens}")
    print(f"lambda     : {result.lambda_}")
    print(f"h20        : {result.h20}")
    if result.picard is not None:
        print(f"rho        : {result.picard}")
    elif "worse-than-RDP" in result.flags:
        print("rho        : RDP filter failed (h20 dropped)")
    else:
        print("rho        : not computed for this degree")
    for orb in result.orbits:
        print(f"orbit      : {orb.representative} size {orb.size}")
    return EXIT_OK


def cmd_fermat(args) -> int:
    m = args.m
    if m < 3:
        raise CLIError("m must be at least 3", EXIT_INPUT)
    b2 = b2_fermat(m)
    lam = fermat_lambda(m)
    orbits = orbit_decomposition(transcendental_characters(m))
    payload = {
        "m": m,
        "b2": b2,
        "lambda": lam,
        "picard": b2 - lam,
        "orbits": [{"representative": list(o.representative.a), "size": o.size} for o in orbits],
    }
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"b2(S_{m})     : {b2}")
    print(f"lambda(S_{m}) : {lam}")
    print(f"rho(S_{m})    : {b2 - lam}")
    print(f"orbits       : {len(orbits)}")
    for o in orbits:
        print(f"  {o.representative} size {o.size}")
    return EXIT_OK


def cmd_zeta(args) -> int:
    surface = _surface(args.polynomial)
    q = args.prime
    try:
        z = zeta_local(surface, q)
    except ZetaError as exc:
        code = EXIT_CANDIDATE if "RDP" in str(exc) else EXIT_INPUT
        raise CLIError(str(exc), code) from None
    payload = {
        "q": q,
        "ns_factor": list(z.ns.coeffs),
        "transcendental_factor": list(z.transcendental.coeffs),
        "denominator": list(z.denominator.coeffs),
        "denominator_degree": z.denominator.degree,
    }
    rows = [
        ("q", str(q)),
        (f"NS factor (degree {z.ns.degree})", format_factored(z.ns, q)),
        (f"T(X) factor (degree {z.transcendental.degree})", str(z.transcendental)),
        ("Z(T)", f"1 / [(1 - T) * NS * T(X) * (1 - {q * q}T)], denominator degree {z.denominator.degree}"),
    ]
    code = EXIT_OK
    if args.verify:
        exceptional = args.exceptional
        if exceptional is None:
            if not is_maximal_quintic_class(surface):
                raise CLIError("--verify needs --exceptional N for this surface", EXIT_INPUT)
            exceptional = 36
        rep = verify_resolution_trace(surface, q, exceptional)
        payload["verify"] = {
            "exceptional_curves": exceptional,
            "cohomological": rep.cohomological,
            "point_count": rep.point_count,
            "geometric": rep.geometric,
            "equal": rep.equal,
        }
        rows += [
            ("1 + rho*q + q^2 + sum j", str(rep.cohomological)),
            (f"#Y(F_q) + {exceptional}*q", f"{rep.point_count} + {exceptional * q} = {rep.geometric}"),
            ("trace identity", "holds" if rep.equal else "MISMATCH"),
        ]
        if not rep.equal:
            code = EXIT_MISMATCH
    if args.json:
        _emit_json(payload)
    else:
        width = max(len(label) for label, _ in rows)
        print("\n".join(f"{label:<{width}} : {value}" for label, value in rows))
    if code == EXIT_MISMATCH:
        print(f"error: trace identity fails at q = {q} with {exceptional} exceptional curves", file=sys.stderr)
    return code


def _load_config(arg: str | None) -> lattice.CurveConfig:
    try:
        if arg is None:
            return lattice.load_shipped()
        path = Path(arg)
        if path.exists():
            return lattice.load(path)
        shipped = arg if arg.endswith(".cfg") else arg + ".cfg"
        if resources.files("delsarte.data").joinpath(shipped).is_file():
            return lattice.load_shipped(shipped)
    except lattice.ConfigError as exc:
        raise CLIError(f"malformed config: {exc}", EXIT_INPUT) from None
    raise CLIError(f"no such config: {arg}", EXIT_INPUT)


def cmd_lattice(args) -> int:
    cfg = _load_config(args.config)
    try:
        G = lattice.gram(cfg)
    except lattice.ConfigError as exc:
        raise CLIError(f"malformed config: {exc}", EXIT_INPUT) from None
    d = lattice.det_exact(G)
    r = lattice.gram_rank(G)
    sig = lattice.signature(G)
    if args.json:
        _emit_json({"n": G.n, "det": d, "factorization": lattice.format_factorization(d),
                    "rank": r, "signature": list(sig)})
        return EXIT_OK
    print(f"n         : {G.n}")
    print(f"det       : {d} = {lattice.format_factorization(d)}")
    print(f"rank      : {r}")
    print(f"signature : ({sig[0]},{sig[1]},{sig[2]})")
    return EXIT_OK


def load_golden(path: Path | None = None) -> list[tuple[int, str]]:
    text = (Path(path).read_text() if path is not None
            else resources.files("delsarte.data").joinpath("golden_quintics.tsv").read_text())
    rows = []
    for row in csv.reader((ln for ln in text.splitlines() if ln and not ln.startswith("#")), delimiter="\t"):
        if row[0] == "rho":
            continue
        rows.append((int(row[0]), row[1]))
    return rows


def cmd_enumerate(args) -> int:
    stats = EnumerationStats()
    out = Path(args.out) if args.out else Path(f"delsarte-d{args.degree}.tsv")
    records = run_enumeration(args.degree, out=out, stats=stats)
    spectrum = picard_spectrum(records)
    unique45 = uniqueness_report(records, 45)
    print(f"degree {args.degree}: {len(records)} canonical candidates "
          f"({stats.subsets} subsets scanned), results in {out}")
    passing = sum(1 for r in records if r.picard is not None)
    print(f"RDP filter passed: {passing}")
    print("Picard spectrum:")
    for rho, rec in spectrum.items():
        print(f"  rho={rho:<3} {format_polynomial(rec.matrix)}")
    if args.degree == 5:
        print(f"rho=45 canonical classes: {len(unique45)}")
        for A in unique45:
            print(f"  {format_polynomial(A)}")
    code = EXIT_OK
    if args.golden is not None:
        golden = load_golden(None if args.golden == "shipped" else Path(args.golden))
        by_matrix = {r.matrix: r for r in records}
        for rho, poly in golden:
            rec = by_matrix.get(canonical_form(parse_exponent_matrix(poly).A))
            got = None if rec is None else rec.picard
            ok = got == rho
            print(f"golden rho={rho:<3} {poly:<28} {'ok' if ok else f'MISMATCH (got {got})'}")
            if not ok:
                code = EXIT_MISMATCH
        if code == EXIT_MISMATCH:
            print("error: golden fixtures do not match the enumeration", file=sys.stderr)
    return code


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_cmtype(args) -> int:
    surface = _surface(args.polynomial)
    if len(args.weights) != 4:
        raise CLIError("--weights needs four integers", EXIT_INPUT)
    aut = DiagonalAutomorphism(args.order, tuple(args.weights))
    try:
        exps = h20_weights(aut, surface)
    except SemiInvarianceError as exc:
        raise CLIError(str(exc), EXIT_CANDIDATE) from None
    verdict = cm_verdict(CMTypeCandidate(args.order, tuple(exps)))
    print(f"H^(2,0) eigenvalue exponents mod {args.order}: {exps}")
    print(f"CM-type: {'yes' if verdict.is_cm_type else 'no'}" +
          ("" if verdict.is_cm_type else f" ({verdict.reason})"))
    if args.rho_lower is not None:
        if not verdict.is_cm_type:
            print("no divisibility conclusion without a CM-type")
        else:
            b2 = b2_fermat(surface.degree)
            res = conclude_transcendental_dimension(args.order, b2, args.rho_lower)
            if res is None:
                print(f"dim T not determined (b2={b2}, rho >= {args.rho_lower})")
            else:
                print(f"dim T = {res[0]}, rho = {res[1]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="delsarte", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="Fermat covering, Lefschetz and Picard number of a Delsarte surface")
    a.add_argument("polynomial")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("fermat", help="invariants of the Fermat surface of degree m")
    f.add_argument("m", type=int)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fermat)

    z = sub.add_parser("zeta", help="local zeta function at a prime q = 1 mod m")
    z.add_argument("polynomial")
    z.add_argument("--prime", "-q", type=int, required=True)
    z.add_argument("--verify", action="store_true", help="compare with a brute-force point count")
    z.add_argument("--exceptional", type=int, default=None,
                   help="number of exceptional curves in the resolution (default 36 for the maximal quintic)")
    z.add_argument("--json", action="store_true")
    z.set_defaults(func=cmd_zeta)

    lat = sub.add_parser("lattice", help="determinant, rank and signature of a curve configuration")
    lat.add_argument("config", nargs="?", default=None,
                     help="config file, or a shipped name (quintic45, quintic45_verbatim)")
    lat.add_argument("--json", action="store_true")
    lat.set_defaults(func=cmd_lattice)

    e = sub.add_parser("enumerate", help="classify all Delsarte surfaces of a degree")
    e.add_argument("--degree", type=int, default=5)
    e.add_argument("--out", default=None, help="results file (TSV); resumed if it exists")
    e.add_argument("--golden", nargs="?", const="shipped", default=None,
                   help="check the golden quintic fixtures (shipped by default, or a TSV path)")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("cmtype", help="eigenvalues of a diagonal automorphism on H^(2,0)")
    c.add_argument("polynomial")
    c.add_argument("--weights", type=_int_list, required=True)
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--rho-lower", type=int, default=None)
    c.set_defaults(func=cmd_cmtype)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
