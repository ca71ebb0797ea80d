"""Command-line front end.

Subcommands: padic, congruence sweep, conjecture probe, dwork certify,
mirror-map, open-closed, superpotential, curve, invert, conditions.

Outputs are deterministic: fixed file names inside --out, JSON with sorted
keys, series in the canonical one-term-per-line text form.  Exit codes:
0 all asserted checks passed, 1 checks ran and at least one failed,
2 the command could not run (bad arguments or malformed input), in which
case a machine-readable error object is printed to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import brane, congruence, dwork, geometry, inversion
from .congruence import PropositionId
from .padic import Prime, digit_sum, ordp_factorial, ordp_int, ordp_rational
from .series import is_integral, series_to_text
from fractions import Fraction

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


class CliError(Exception):
    """Input or configuration problem; maps to exit code 2."""


def _parse_ints(text: str) -> list[int]:
    """Parse '3', '1,2,4', or '2..6' into a sorted list of ints."""
    out: set[int] = set()
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo, _, hi = piece.partition("..")
            out.update(range(int(lo), int(hi) + 1))
        elif piece:
            out.add(int(piece))
    if not out:
        raise CliError(f"empty integer list: {text!r}")
    return sorted(out)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, payloads: dict[str, str]) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in payloads.items():
            (out / name).write_text(text, encoding="utf-8")
    else:
        for name, text in payloads.items():
            sys.stdout.write(f"# {name}\n{text}")


def _geometry(args) -> geometry.ChargeSystem:
    if getattr(args, "preset", None) and getattr(args, "geometry", None):
        raise CliError("give either --preset or --geometry, not both")
    if getattr(args, "preset", None):
        try:
            return geometry.preset(args.preset)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    if getattr(args, "geometry", None):
        try:
            return geometry.load_charge_system(args.geometry)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot load geometry: {exc}") from None
    raise CliError("a geometry is required: --preset NAME or --geometry PATH")


def _brane_system(args, cs: geometry.ChargeSystem) -> brane.BraneSystem:
    choice = args.brane
    if not choice:
        raise CliError("--brane is required: outer, inner, or phase:<csv>")
    if choice.startswith("phase:"):
        subset = _parse_ints(choice[len("phase:"):])
        return brane.extend(cs, "phase", subset)
    if choice in ("outer", "inner"):
        return brane.extend(cs, choice)
    raise CliError(f"--brane must be outer, inner, or phase:<csv>, got {choice!r}")


def _cert_payload(meta: dict, cert) -> str:
    obj = dict(meta)
    obj["certificate"] = cert.to_json_obj()
    return _json_text(obj)


# -- subcommand handlers ----------------------------------------------------


def _cmd_padic(args) -> int:
    p = Prime(args.p)
    obj: dict = {"p": int(p)}
    if args.n is None and args.rational is None and args.factorial is None:
        raise CliError("padic needs at least one of --n, --rational, --factorial")
    if args.n is not None:
        obj["n"] = args.n
        obj["digit_sum"] = digit_sum(args.n, p)
        obj["ord"] = str(ordp_int(args.n, p))
    if args.rational is not None:
        num, _, den = args.rational.partition("/")
        q = Fraction(int(num), int(den) if den else 1)
        obj["rational"] = f"{q.numerator}/{q.denominator}"
        obj["ord_rational"] = str(ordp_rational(q, p))
    if args.factorial is not None:
        obj["factorial_of"] = args.factorial
        obj["ord_factorial"] = ordp_factorial(args.factorial, p)
    _emit(args, {"padic.json": _json_text(obj)})
    return EXIT_OK


def _sweep_ranges(prop: PropositionId, args) -> dict[str, list[int]]:
    shape = congruence.PARAM_SHAPES[prop]
    needed = {
        "ks": ("parts", "k"),
        "m_ks": ("m", "parts", "k"),
        "m_n": ("m", "n"),
        "m_k_l": ("m", "k", "l"),
        "m_r_a": ("m", "r", "a"),
    }[shape]
    ranges = {}
    for key in needed:
        value = getattr(args, key if key != "l" else "l_range")
        if value is None:
            raise CliError(f"{prop.value} needs --{key}")
        ranges[key] = _parse_ints(value)
    return ranges


def _cmd_congruence_sweep(args) -> int:
    try:
        prop = PropositionId(args.prop)
    except ValueError:
        raise CliError(f"unknown proposition id {args.prop!r}") from None
    ranges = _sweep_ranges(prop, args)
    primes = [Prime(p) for p in _parse_ints(args.primes)]
    result = congruence.sweep(prop, ranges, primes)
    if args.format == "json":
        obj = congruence.sweep_json_obj(result)
        obj["ranges"] = {k: v for k, v in sorted(ranges.items())}
        obj["primes"] = [int(p) for p in primes]
        payloads = {"sweep.json": _json_text(obj)}
    else:
        payloads = {
            "sweep.csv": congruence.sweep_csv_text(result),
            "sweep.meta.json": _json_text(
                {
                    "prop": prop.value,
                    "ranges": {k: v for k, v in sorted(ranges.items())},
                    "primes": [int(p) for p in primes],
                    "reports": len(result.reports),
                    "skipped": result.skipped,
                    "all_hold": result.all_hold,
                }
            ),
        }
    _emit(args, payloads)
    return EXIT_OK if result.all_hold else EXIT_CHECK_FAILED


def _cmd_conjecture_probe(args) -> int:
    rows = []
    for p in _parse_ints(args.p):
        for r in _parse_ints(args.r):
            for a in _parse_ints(args.a):
                if a % p == 0:
                    continue
                for m in _parse_ints(args.m):
                    rows.append(congruence.conjecture_probe(p, r, a, m))
    header = ["p", "r", "a", "m", "proven_bound", "observed", "predicted", "degenerate", "matches"]
    if args.format == "json":
        payload = _json_text(
            [
                {
                    "p": row.p,
                    "r": row.r,
                    "a": row.a,
                    "m": row.m,
                    "proven_bound": row.proven_bound,
                    "observed": str(row.observed),
                    "predicted": row.predicted,
                    "degenerate": row.degenerate,
                    "matches": row.matches,
                }
                for row in rows
            ]
        )
        payloads = {"probe.json": payload}
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(
                f"{row.p},{row.r},{row.a},{row.m},{row.proven_bound},"
                f"{row.observed},{row.predicted},"
                f"{'true' if row.degenerate else 'false'},"
                f"{'true' if row.matches else 'false'}"
            )
        payloads = {"probe.csv": "\n".join(lines) + "\n"}
    _emit(args, payloads)
    # The probe reports a conjecture; it never fails the run.
    return EXIT_OK


def _cmd_dwork_certify(args) -> int:
    ks = tuple(_parse_ints(args.ks)) if args.ks else None
    try:
        f = dwork.generate(
            args.theorem, bound=args.degree, m=args.m, n=args.n, ks=ks
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    primes = [Prime(p) for p in _parse_ints(args.primes)]
    report = dwork.dwork_certify(f, primes)
    exploratory = args.theorem == "T43" and (args.m or 1) >= 2
    obj = {
        "theorem": args.theorem,
        "params": {"m": args.m, "n": args.n, "ks": list(ks) if ks else None},
        "bound": args.degree,
        "exploratory": exploratory,
        "report": report.to_json_obj(),
    }
    _emit(args, {"dwork.json": _json_text(obj), "exponent.txt": series_to_text(f)})
    if exploratory:
        return EXIT_OK
    return EXIT_OK if report.all_pass else EXIT_CHECK_FAILED


def _cmd_mirror_map(args) -> int:
    cs = _geometry(args)
    try:
        unit = geometry.mirror_map(cs, args.index, args.degree)
    except (IndexError, geometry.ConditionAUnverified) as exc:
        raise CliError(str(exc)) from None
    cert = is_integral(unit)
    meta = {
        "geometry": cs.name,
        "index": args.index,
        "degree": args.degree,
        "series": "unit part q_i / z_i",
    }
    _emit(
        args,
        {
            "series.txt": series_to_text(unit),
            "certificate.json": _cert_payload(meta, cert),
        },
    )
    return EXIT_OK if cert.integral else EXIT_CHECK_FAILED


def _cmd_open_closed(args) -> int:
    cs = _geometry(args)
    bs = _brane_system(args, cs)
    try:
        unit = brane.open_closed_map(bs, args.index, args.degree)
    except (IndexError, geometry.ConditionAUnverified) as exc:
        raise CliError(str(exc)) from None
    cert = is_integral(unit)
    meta = {
        "geometry": cs.name,
        "brane": args.brane,
        "index": args.index,
        "degree": args.degree,
        "series": "unit part Q_i / z_i",
    }
    _emit(
        args,
        {
            "series.txt": series_to_text(unit),
            "certificate.json": _cert_payload(meta, cert),
        },
    )
    return EXIT_OK if cert.integral else EXIT_CHECK_FAILED


def _cmd_superpotential(args) -> int:
    cs = _geometry(args)
    bs = _brane_system(args, cs)
    sp = brane.superpotential(bs, args.degree, args.sign_convention)
    meta = {
        "geometry": cs.name,
        "brane": args.brane,
        "degree": args.degree,
        "kind": sp.kind,
        "sign_convention": args.sign_convention,
        "terms": len(sp.w),
    }
    _emit(
        args,
        {"series.txt": series_to_text(sp.w), "summary.json": _json_text(meta)},
    )
    return EXIT_OK


def _cmd_curve(args) -> int:
    cs = _geometry(args)
    bs = _brane_system(args, cs)
    curve = brane.curve_series(bs, args.degree, args.sign_convention)
    cert = is_integral(curve)
    meta = {
        "geometry": cs.name,
        "brane": args.brane,
        "degree": args.degree,
        "sign_convention": args.sign_convention,
        "series": "exp of minus the theta-weighted superpotential",
    }
    _emit(
        args,
        {
            "series.txt": series_to_text(curve),
            "certificate.json": _cert_payload(meta, cert),
        },
    )
    return EXIT_OK if cert.integral else EXIT_CHECK_FAILED


def _cmd_invert(args) -> int:
    cs = _geometry(args)
    degree = args.degree
    if args.brane:
        bs = _brane_system(args, cs)
        try:
            logs = [
                brane.open_closed_log(bs, i, degree) for i in range(bs.nvars)
            ]
        except geometry.ConditionAUnverified as exc:
            raise CliError(str(exc)) from None
        label = f"{cs.name}/{args.brane}"
    else:
        try:
            logs = [geometry.g1_series(cs, i, degree) for i in range(1, cs.N + 1)]
        except geometry.ConditionAUnverified as exc:
            raise CliError(str(exc)) from None
        label = cs.name
    fam = inversion.UnitMapFamily(tuple(logs))
    closed_form = inversion.invert_lagrange_good(fam, degree)
    fixed_point = inversion.invert_iterative(fam, degree)
    agree = closed_form == fixed_point
    certs = [is_integral(s) for s in closed_form]
    obj = {
        "geometry": label,
        "degree": degree,
        "oracle_agreement": agree,
        "certificates": [c.to_json_obj() for c in certs],
    }
    payloads = {"report.json": _json_text(obj)}
    for i, s in enumerate(closed_form):
        payloads[f"inverse_{i}.txt"] = series_to_text(s)
    _emit(args, payloads)
    ok = agree and all(c.integral for c in certs)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_conditions(args) -> int:
    cs = _geometry(args)
    if args.brane:
        cs = _brane_system(args, cs).as_charge_system()
    rep_a = geometry.check_condition_a(cs, args.degree)
    rep_b = geometry.check_condition_b(cs, args.degree)
    obj = {
        "geometry": cs.name,
        "degree": args.degree,
        "A": rep_a.to_json_obj(),
        "B": rep_b.to_json_obj(),
    }
    _emit(args, {"conditions.json": _json_text(obj)})
    return EXIT_OK if rep_a.holds and rep_b.holds else EXIT_CHECK_FAILED


# -- parser -----------------------------------------------------------------


def _add_common(sub, geometry_flags=True, brane_flag=False):
    sub.add_argument("--out", help="output directory (default: print to stdout)")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="csv")
    if geometry_flags:
        sub.add_argument("--preset", help="built-in geometry name")
        sub.add_argument("--geometry", help="path to a geometry JSON file")
        sub.add_argument("--degree", type=int, required=True)
    if brane_flag:
        sub.add_argument("--brane", help="outer, inner, or phase:<csv>")
        sub.add_argument(
            "--sign-convention",
            choices=brane.SIGN_CONVENTIONS,
            default="printed",
            dest="sign_convention",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorint",
        description="exact integrality certification for local mirror symmetry",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("padic", help="digit sums and valuations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--rational", help="a/b")
    p.add_argument("--factorial", type=int)
    _add_common(p, geometry_flags=False)
    p.set_defaults(handler=_cmd_padic)

    cong = subs.add_parser("congruence", help="congruence statement sweeps")
    cong_subs = cong.add_subparsers(dest="subcommand", required=True)
    sw = cong_subs.add_parser("sweep", help="evaluate one statement over a box")
    sw.add_argument("--prop", required=True)
    sw.add_argument("--primes", required=True)
    sw.add_argument("--m")
    sw.add_argument("--n")
    sw.add_argument("--k")
    sw.add_argument("--l", dest="l_range")
    sw.add_argument("--r")
    sw.add_argument("--a")
    sw.add_argument("--parts")
    _add_common(sw, geometry_flags=False)
    sw.set_defaults(handler=_cmd_congruence_sweep)

    conj = subs.add_parser("conjecture", help="factorial-ratio valuation probe")
    conj_subs = conj.add_subparsers(dest="subcommand", required=True)
    pr = conj_subs.add_parser("probe", help="observed vs conjectured valuations")
    pr.add_argument("--p", required=True)
    pr.add_argument("--r", required=True)
    pr.add_argument("--a", required=True)
    pr.add_argument("--m", required=True)
    _add_common(pr, geometry_flags=False)
    pr.set_defaults(handler=_cmd_conjecture_probe)

    dw = subs.add_parser("dwork", help="exponential integrality certificates")
    dw_subs = dw.add_subparsers(dest="subcommand", required=True)
    ce = dw_subs.add_parser("certify", help="certify one generated series")
    ce.add_argument("--theorem", required=True, choices=dwork.THEOREM_IDS)
    ce.add_argument("--m", type=int)
    ce.add_argument("--n", type=int)
    ce.add_argument("--ks", help="fixed parts, e.g. 1,2")
    ce.add_argument("--degree", type=int, required=True)
    ce.add_argument("--primes", required=True)
    _add_common(ce, geometry_flags=False)
    ce.set_defaults(handler=_cmd_dwork_certify)

    mm = subs.add_parser("mirror-map", help="closed-string mirror map unit")
    _add_common(mm)
    mm.add_argument("--index", type=int, default=1, help="solution index, 1-based")
    mm.set_defaults(handler=_cmd_mirror_map)

    oc = subs.add_parser("open-closed", help="open-closed mirror map unit")
    _add_common(oc, brane_flag=True)
    oc.add_argument("--index", type=int, default=0, help="map index, 0 = brane")
    oc.set_defaults(handler=_cmd_open_closed)

    sp = subs.add_parser("superpotential", help="disc superpotential series")
    _add_common(sp, brane_flag=True)
    sp.set_defaults(handler=_cmd_superpotential)

    cu = subs.add_parser("curve", help="mirror-curve series with certificate")
    _add_common(cu, brane_flag=True)
    cu.set_defaults(handler=_cmd_curve)

    inv = subs.add_parser("invert", help="inverse mirror maps, both routes")
    _add_common(inv, brane_flag=True)
    inv.set_defaults(handler=_cmd_invert)

    co = subs.add_parser("conditions", help="charge-system condition reports")
    _add_common(co, brane_flag=True)
    co.set_defaults(handler=_cmd_conditions)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "brane", None) in ("", None) and hasattr(args, "brane"):
        args.brane = args.brane or None
    try:
        return args.handler(args)
    except CliError as exc:
        sys.stderr.write(_json_text({"error": "bad-input", "message": str(exc)}))
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        sys.stderr.write(
            _json_text({"error": type(exc).__name__, "message": str(exc)})
        )
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
