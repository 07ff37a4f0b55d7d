"""Command-line front end.

Subcommands cover the pipeline stages: ``dims`` (graded complex dimension
signature), ``resultant``, ``certificate``, ``check`` (toric emptiness) and
``mixed-volume``.  Systems are described by a JSON file; ``--delta``, ``--Q``
and ``--seed`` override file values.  Output is deterministic for a fixed
(file, seed) pair; the only randomness in the pipeline is the seeded
admissible-selection specialization.

Exit codes: 0 success, 2 input error, 3 geometric precondition violated,
4 internal algebraic failure, 5 no certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .bezout import certificate as make_certificate
from .bezout import emptiness_check, verify_certificate
from .errors import (DivisionFailure, ExactnessFailure, GeometryError,
                     NoCertificate, TargetSupportEscape)
from .koszul import build_complex
from .lattice_geom import mixed_volume
from .polyring import LaurentPoly
from .resultant import resultant_of_complex, verify_minor_divisibility
from .toric import build_context, make_system

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GEOMETRY = 3
EXIT_ALGEBRA = 4
EXIT_NO_CERTIFICATE = 5


class InputError(ValueError):
    pass


def _parse_fraction(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def _parse_delta_flag(text: str, n: int):
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise InputError(f"--delta needs {n} comma-separated rationals")
    return [_parse_fraction(p) for p in parts]


def _parse_q_flag(text: str):
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        points.append([int(x) for x in chunk.split(",")])
    if not points:
        raise InputError("--Q needs at least one point")
    return points


_TERM_RE = re.compile(
    r"^(?P<coeff>\d+(?:/\d+)?)?\s*\*?\s*(?:t\^\((?P<exps>-?\d+(?:\s*,\s*-?\d+)*)\))?$")


def _split_signed_terms(s: str):
    """Split on top-level +/- (signs inside exponent parentheses are kept)."""
    chunks = []
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and s[start:i].strip():
            chunks.append(s[start:i])
            start = i
    chunks.append(s[start:])
    return chunks


def parse_laurent(text: str, n: int) -> LaurentPoly:
    """Parse '3*t^(1,0) - 1/2*t^(0,1) + 2' into a LaurentPoly."""
    terms = {}
    for raw in _split_signed_terms(text.strip()):
        raw = raw.strip()
        if not raw:
            continue
        sign = Fraction(1)
        while raw and raw[0] in "+-":
            if raw[0] == "-":
                sign = -sign
            raw = raw[1:].strip()
        m = _TERM_RE.match(raw)
        if not m or (m.group("coeff") is None and m.group("exps") is None):
            raise InputError(f"cannot parse monomial {raw!r}")
        coeff = sign * (_parse_fraction(m.group("coeff")) if m.group("coeff")
                        else Fraction(1))
        exps = m.group("exps")
        point = tuple(int(x) for x in exps.split(",")) if exps else tuple([0] * n)
        if len(point) != n:
            raise InputError(f"monomial {raw!r} has {len(point)} exponents, expected {n}")
        terms[point] = terms.get(point, Fraction(0)) + coeff
    if not terms and text.strip() not in ("0", "-0", "+0"):
        raise InputError(f"cannot parse target {text!r}")
    return LaurentPoly(terms)


def load_system(path: str, args) -> tuple:
    """(SparseSystem, seed) from a JSON system file plus flag overrides."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    try:
        n = int(data["n"])
        supports = [[tuple(int(x) for x in p) for p in sup] for sup in data["supports"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad system file: {exc}") from exc
    if any(len(p) != n for sup in supports for p in sup):
        raise InputError("support points do not match n")
    coeff_field = data.get("coefficients", "generic")
    if coeff_field == "generic":
        coefficients = None
    else:
        coefficients = [[_parse_fraction(c) for c in row] for row in coeff_field]
    delta = [_parse_fraction(d) for d in data.get("delta", ["0"] * n)]
    if getattr(args, "delta", None):
        delta = _parse_delta_flag(args.delta, n)
    q_points = data.get("Q")
    if getattr(args, "q", None):
        q_points = _parse_q_flag(args.q)
    seed = int(data.get("seed", 0))
    if getattr(args, "seed", None) is not None:
        seed = args.seed
    try:
        system = make_system(supports, coefficients=coefficients,
                             delta=delta, q_points=q_points)
    except GeometryError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return system, seed


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def cmd_dims(args) -> int:
    system, _ = load_system(args.file, args)
    cx = build_complex(system)
    sig = cx.dims_signature()
    _emit(args, {"levels": sig},
          "levels " + json.dumps(sig, separators=(",", ":")))
    return EXIT_OK


def cmd_resultant(args) -> int:
    system, seed = load_system(args.file, args)
    if not system.is_generic:
        raise InputError("resultant needs generic coefficients")
    if system.k != system.n + 1:
        raise InputError(f"resultant needs k = n+1, got k={system.k}, n={system.n}")
    cx = build_complex(system)
    result = resultant_of_complex(cx, seed=seed)
    payload = {
        "resultant": result.polynomial.render(),
        "terms": result.polynomial.json_terms(),
        "degrees": list(result.degrees),
        "mixed_volumes": list(result.mixed_volumes),
    }
    lines = [result.polynomial.render(), ""]
    lines.append("block  degree  mixed_volume")
    for i, (d, mv) in enumerate(zip(result.degrees, result.mixed_volumes), start=1):
        lines.append(f"f_{i}     {d}       {mv}")
    if args.verify_minors is not None:
        workers = os.environ.get("TORIC_ELIM_THREADS")
        workers = int(workers) if workers else None
        sample = args.verify_minors if args.verify_minors > 0 else None
        report = verify_minor_divisibility(cx, result, sample=sample,
                                           seed=seed, max_workers=workers)
        payload["minors"] = {
            "total": report.total, "zero": report.zero,
            "divisible": report.divisible,
            "failures": [list(c) for c in report.failures],
        }
        lines.append(f"minors checked={report.total} zero={report.zero} "
                     f"divisible={report.divisible} failures={len(report.failures)}")
        if report.failures:
            _emit(args, payload, "\n".join(lines))
            return EXIT_ALGEBRA
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_certificate(args) -> int:
    system, _ = load_system(args.file, args)
    if system.is_generic:
        raise InputError("certificates need concrete coefficients")
    g = parse_laurent(args.target, system.n)
    try:
        cert = make_certificate(system, g)
    except ValueError as exc:
        if isinstance(exc, (TargetSupportEscape, GeometryError)):
            raise
        raise InputError(str(exc)) from exc
    payload = cert.to_json()
    payload["verified"] = verify_certificate(cert, system)
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args) -> int:
    system, _ = load_system(args.file, args)
    if system.is_generic:
        raise InputError("check needs concrete coefficients")
    empty = emptiness_check(system)
    verdict = "empty (surjective)" if empty else "nonempty (not surjective)"
    _emit(args, {"empty": empty, "verdict": verdict}, verdict)
    return EXIT_OK


def cmd_mixed_volume(args) -> int:
    system, _ = load_system(args.file, args)
    ctx = build_context(system)
    mvs = []
    for i in range(system.k):
        others = [p for j, p in enumerate(ctx.polytopes) if j != i]
        mvs.append(mixed_volume(others))
    _emit(args, {"mixed_volumes": mvs}, json.dumps(mvs, separators=(",", ":")))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toricelim",
        description="Sparse resultants, graded Koszul complexes and toric "
                    "Nullstellensatz certificates, in exact arithmetic.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="system JSON file")
        p.add_argument("--delta", help="override delta, e.g. '1/2,1/2'")
        p.add_argument("--Q", dest="q", help="override Q points, e.g. '0,0;1,0'")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("dims", help="dimension signature of the graded complex"))
    p = sub.add_parser("resultant", help="sparse resultant of a generic system")
    common(p)
    p.add_argument("--verify-minors", type=int, default=None, metavar="N",
                   help="check divisibility of N sampled maximal minors (0 = all)")
    p = sub.add_parser("certificate", help="Bezout-identity certificate for a target")
    common(p)
    p.add_argument("--target", required=True,
                   help="target Laurent polynomial, e.g. 't^(2,2)' or '1 + 2*t^(1,0)'")
    common(sub.add_parser("check", help="decide toric-zero emptiness"))
    common(sub.add_parser("mixed-volume", help="complementary mixed volumes"))
    return ap


_HANDLERS = {
    "dims": cmd_dims,
    "resultant": cmd_resultant,
    "certificate": cmd_certificate,
    "check": cmd_check,
    "mixed-volume": cmd_mixed_volume,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except GeometryError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (InputError, TargetSupportEscape) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoCertificate as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_NO_CERTIFICATE
    except (ExactnessFailure, DivisionFailure, ArithmeticError) as exc:
        print(f"algebraic failure: {exc}", file=sys.stderr)
        return EXIT_ALGEBRA


if __name__ == "__main__":
    sys.exit(main())
