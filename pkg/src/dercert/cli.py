"""Command line interface: analyze, darboux, image, mz, conjecture-scan.

Every command produces a versioned JSON report binding the verdict to
its result tag and certificate; the text rendering is a pure function
of that JSON.  Exit codes: 0 success, 2 parse error, 3 unsupported
family for the requested decision, 4 bounded-search outcomes that found
nothing (not-found-up-to / none-up-to-bounds / undecided).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .darboux import (
    SearchBounds,
    SearchOutcome,
    darboux_search_family_a,
    darboux_search_power_family,
)
from .derivation import (
    Derivation,
    FamilyA,
    FamilyB,
    FamilyDiag,
    FamilyDiagX,
    FamilyPow,
    Generic,
    UnsupportedFamily,
    locally_finite_closed_form,
    recognize_family,
)
from .expr import ParseError, parse_derivation, parse_poly, poly_to_str
from .image import (
    CertifiedNonMember,
    Member,
    NotFoundUpTo,
    decide_mz,
)
from .mpoly import MultiPoly
from .simplicity import (
    Certificate,
    NecessaryCheck,
    SimplicityVerdict,
    conjecture_necessary,
    decide_simple_family_a,
    scan_rows_to_jsonl,
    conjecture_scan,
)
from .upoly import UniPoly

SCHEMA = "dercert-report/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_NOT_FOUND = 4

# one-line statement of the decision rule behind each result tag
RULE_TEXT = {
    "T2.1": "no linear y-term: simple iff a0 is a nonzero constant and deg a2 >= 1",
    "REF15": "constant a2: simple iff a0 is a nonzero constant and deg a1 >= 1",
    "T4.1": "constant a1: simple iff a0 is a nonzero constant and deg a2 >= 1",
    "T4.2": "simple iff a0 in Q*, a1 or a2 nonconstant, and no l in Q* with a2 = l*a1 - l^2*a0",
    "P6.3-necessary": "necessary: a0 in Q*, a1 or a2 nonconstant, no l in Q* with a2 = l*a1 + (-1)^beta*l^(beta+1)*a0",
    "P2.2": "for the simple linear plane family, x is never in the image",
    "C2.3": "constant-a0 linear plane family: image is MZ iff the derivation is not simple",
    "T5.1": "image MZ iff every coefficient is constant with exponent 1",
    "C5.2": "image MZ iff the derivation is locally finite",
    "T5.3": "diagonal family: image MZ iff every exponent is at most 1",
}


def _uni_str(p: UniPoly) -> str:
    return poly_to_str(MultiPoly.from_unipoly(("x",), "x", p))


def describe_family(family) -> dict:
    if isinstance(family, FamilyB):
        return {"name": "plane-linear", "a1": _uni_str(family.a1), "a0": str(family.a0)}
    if isinstance(family, FamilyA):
        return {
            "name": "plane-quadratic",
            "a2": _uni_str(family.a2),
            "a1": _uni_str(family.a1),
            "a0": _uni_str(family.a0),
        }
    if isinstance(family, FamilyPow):
        return {
            "name": "plane-power",
            "alpha": family.alpha,
            "beta": family.beta,
            "a2": _uni_str(family.a2),
            "a1": _uni_str(family.a1),
            "a0": _uni_str(family.a0),
        }
    if isinstance(family, FamilyDiagX):
        return {
            "name": "translation-diagonal",
            "gammas": [_uni_str(g) for g in family.gammas],
            "ks": list(family.ks),
        }
    if isinstance(family, FamilyDiag):
        return {
            "name": "diagonal",
            "gammas": [str(g) for g in family.gammas],
            "ks": list(family.ks),
        }
    return {"name": "generic"}


def describe_certificate(cert: Certificate) -> dict:
    out: dict = {"kind": cert.kind}
    if cert.generators:
        out["generators"] = [poly_to_str(g) for g in cert.generators]
    if cert.l_value is not None:
        out["l"] = str(cert.l_value)
    if cert.conditions is not None:
        out["conditions"] = list(cert.conditions)
    return out


def describe_image_result(result) -> dict:
    if isinstance(result, Member):
        return {
            "status": "member",
            "preimage": poly_to_str(result.preimage),
            "kernel_dim": result.kernel_dim,
            "bound": result.bound,
        }
    if isinstance(result, NotFoundUpTo):
        return {"status": "not-found-up-to", "bound": result.bound}
    if isinstance(result, CertifiedNonMember):
        out = {
            "status": "certified-non-member",
            "theorem": result.theorem,
            "claim": result.claim,
            "target": poly_to_str(result.target),
        }
        if result.m_used is not None:
            out["m_used"] = result.m_used
        return out
    return {"status": "none"}


def describe_evidence(evidence) -> object:
    if evidence is None:
        return None
    if isinstance(evidence, CertifiedNonMember):
        return describe_image_result(evidence)
    if isinstance(evidence, tuple):
        return {"kind": evidence[0], "value": str(evidence[1])}
    return str(evidence)


def describe_search(outcome: SearchOutcome) -> dict:
    found = []
    for pair in outcome.pairs:
        by_y = pair.cofactor.coeffs_in("y")
        found.append(
            {
                "n": int(pair.F.degree_in("y")),
                "d1": poly_to_str(by_y.get(1, MultiPoly.zero(pair.F.variables))),
                "d0": poly_to_str(by_y.get(0, MultiPoly.zero(pair.F.variables))),
                "F": poly_to_str(pair.F),
                "cofactor": poly_to_str(pair.cofactor),
                "status": "found",
            }
        )
    return {"status": outcome.status, "found": found, "detail": outcome.detail}


# -- report plumbing -----------------------------------------------------


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    if "input" in report:
        lines.append(f"input: {report['input']}")
    if "family" in report:
        fam = report["family"]
        extras = ", ".join(f"{k}={v}" for k, v in fam.items() if k != "name")
        lines.append(f"family: {fam['name']}" + (f" ({extras})" if extras else ""))
    for key, value in report.get("results", {}).items():
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    if report.get("bounds"):
        lines.append(f"bounds: {json.dumps(report['bounds'], sort_keys=True)}")
    lines.append(f"timing_ms: {report['timing_ms']}")
    return "\n".join(lines)


def _emit(report: dict, args, stream, allow_file: bool = True) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) if args.json else render_text(report)
    if args.out and allow_file:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stream)


# -- commands --------------------------------------------------------------


def _cmd_analyze(args, report: dict) -> int:
    D = parse_derivation(args.derivation)
    family = recognize_family(D)
    report["family"] = describe_family(family)
    results: dict = {}
    report["results"] = results
    code = EXIT_OK
    if isinstance(family, Generic):
        results["note"] = "no structured family recognized; no decision available"
        return EXIT_UNSUPPORTED
    if isinstance(family, FamilyB):
        verdict = decide_simple_family_a(family.as_family_a())
        results["simplicity"] = _simplicity_dict(verdict)
        results["mz"] = _mz_dict(D)
        results["locally_finite"] = locally_finite_closed_form(family)
    elif isinstance(family, FamilyA):
        verdict = decide_simple_family_a(family)
        results["simplicity"] = _simplicity_dict(verdict)
        results["mz"] = {"status": "unsupported", "reason": "no rule covers this shape"}
    elif isinstance(family, FamilyPow):
        check = conjecture_necessary(family)
        results["necessary_conditions"] = _necessary_dict(check)
    elif isinstance(family, (FamilyDiagX, FamilyDiag)):
        results["mz"] = _mz_dict(D)
        results["locally_finite"] = locally_finite_closed_form(family)
    return code


def _simplicity_dict(verdict: SimplicityVerdict) -> dict:
    return {
        "simple": verdict.simple,
        "theorem": verdict.theorem,
        "rule": RULE_TEXT.get(verdict.theorem, ""),
        "certificate": describe_certificate(verdict.certificate),
    }


def _necessary_dict(check: NecessaryCheck) -> dict:
    out: dict = {
        "passed": check.passed,
        "theorem": "P6.3-necessary",
        "rule": RULE_TEXT["P6.3-necessary"],
    }
    if not check.passed:
        out["failed_condition"] = check.failed_condition
        out["witness"] = describe_certificate(check.witness)
        if check.l_value is not None:
            out["l"] = str(check.l_value)
    return out


def _mz_dict(D: Derivation) -> dict:
    verdict = decide_mz(D)
    return {
        "mz": verdict.mz,
        "theorem": verdict.theorem,
        "rule": RULE_TEXT.get(verdict.theorem, ""),
        "evidence": describe_evidence(verdict.evidence),
    }


def _cmd_mz(args, report: dict) -> int:
    D = parse_derivation(args.derivation)
    family = recognize_family(D)
    report["family"] = describe_family(family)
    try:
        report["results"] = {"mz": _mz_dict(D)}
    except UnsupportedFamily as exc:
        report["results"] = {"error": str(exc)}
        return EXIT_UNSUPPORTED
    return EXIT_OK


def _cmd_image(args, report: dict) -> int:
    D = parse_derivation(args.derivation)
    target = parse_poly(args.target, D.variables)
    report["family"] = describe_family(recognize_family(D))
    from .image import certified_nonmembership, image_membership

    result = image_membership(D, target, args.bound)
    results = {"target": args.target, "membership": describe_image_result(result)}
    report["results"] = results
    if isinstance(result, Member):
        return EXIT_OK
    certificate = certified_nonmembership(D, target)
    if certificate is not None:
        results["certified"] = describe_image_result(certificate)
    return EXIT_NOT_FOUND


def _cmd_darboux(args, report: dict) -> int:
    D = parse_derivation(args.derivation)
    family = recognize_family(D)
    report["family"] = describe_family(family)
    bounds = SearchBounds(
        n_max=args.n_max,
        d0_deg_max=args.d0_deg,
        cx_deg_max=args.cx_deg,
        residual_effort=args.effort,
    )
    report["bounds"] = {
        "n_max": bounds.n_max,
        "d0_deg_max": bounds.d0_deg_max,
        "cx_deg_max": bounds.cx_deg_max,
        "residual_effort": bounds.residual_effort,
    }
    if isinstance(family, FamilyB):
        family = family.as_family_a()
    searchable = (
        isinstance(family, (FamilyA, FamilyPow))
        and family.a2.degree() >= 1
        and family.a0.is_constant()
        and not family.a0.is_zero()
        and (not isinstance(family, FamilyPow) or family.alpha == family.beta)
    )
    if not searchable:
        report["results"] = {
            "error": "search needs deg a2 >= 1 and a0 a nonzero constant"
        }
        return EXIT_UNSUPPORTED
    if isinstance(family, FamilyPow):
        outcome = darboux_search_power_family(family, bounds)
    else:
        outcome = darboux_search_family_a(family, bounds)
    report["results"] = {"search": describe_search(outcome)}
    return EXIT_OK if outcome.status == "found" else EXIT_NOT_FOUND


def _read_grid(path: str):
    cells = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            cells.append(
                (
                    _parse_uni(record["a2"]),
                    _parse_uni(record["a1"]),
                    _parse_uni(record["a0"]),
                )
            )
    return cells


def _parse_uni(src: str) -> UniPoly:
    return parse_poly(src, ("x",)).to_unipoly("x")


def _cmd_scan(args, report: dict) -> int:
    bounds = SearchBounds(
        n_max=args.n_max,
        d0_deg_max=args.d0_deg,
        cx_deg_max=args.cx_deg,
        residual_effort=args.effort,
    )
    grid = _read_grid(args.grid)
    rows = conjecture_scan(args.alpha, grid, bounds)
    lines = list(scan_rows_to_jsonl(rows, bounds))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    report["results"] = {
        "cells": len(rows),
        "necessary_fail": sum(1 for r in rows if r.necessary == "fail"),
        "none_up_to_bounds": sum(
            1 for r in rows if r.darboux_status == "none-up-to-bounds"
        ),
        "found": sum(1 for r in rows if r.darboux_status == "found"),
    }
    report["bounds"] = {
        "n_max": bounds.n_max,
        "d0_deg_max": bounds.d0_deg_max,
        "cx_deg_max": bounds.cx_deg_max,
    }
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subparser from overwriting flags given before the
    # subcommand with its own defaults
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS,
        help="emit the JSON report",
    )
    shared.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS,
        help="seed recorded in the report",
    )
    shared.add_argument(
        "--out", default=argparse.SUPPRESS, help="write the report to a file"
    )

    parser = argparse.ArgumentParser(
        prog="dercert",
        description="Exact simplicity, Darboux and image decisions for polynomial derivations",
        parents=[shared],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "analyze", parents=[shared], help="family recognition plus every supported verdict"
    )
    p.add_argument("derivation")

    p = sub.add_parser("darboux", parents=[shared], help="bounded Darboux polynomial search")
    p.add_argument("derivation")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--d0-deg", type=int, default=3)
    p.add_argument("--cx-deg", type=int, default=4)
    p.add_argument("--effort", type=int, default=100)

    p = sub.add_parser("image", parents=[shared], help="bounded image membership for a target")
    p.add_argument("derivation")
    p.add_argument("--target", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("mz", parents=[shared], help="Mathieu-Zhao status of the image")
    p.add_argument("derivation")

    p = sub.add_parser(
        "conjecture-scan", parents=[shared], help="evidence table over a coefficient grid"
    )
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--grid", required=True, help="JSONL file of {a2, a1, a0} strings")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--d0-deg", type=int, default=2)
    p.add_argument("--cx-deg", type=int, default=3)
    p.add_argument("--effort", type=int, default=100)
    return parser


_DISPATCH = {
    "analyze": _cmd_analyze,
    "mz": _cmd_mz,
    "image": _cmd_image,
    "darboux": _cmd_darboux,
    "conjecture-scan": _cmd_scan,
}


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", None)
    args.out = getattr(args, "out", None)
    start = time.perf_counter()
    report: dict = {"schema": SCHEMA, "command": args.command}
    if getattr(args, "derivation", None) is not None:
        report["input"] = args.derivation
    if args.seed is not None:
        report["seed"] = args.seed
    try:
        code = _DISPATCH[args.command](args, report)
    except ParseError as exc:
        report["results"] = {"error": str(exc)}
        code = EXIT_PARSE
    except UnsupportedFamily as exc:
        report["results"] = {"error": str(exc)}
        code = EXIT_UNSUPPORTED
    except (ValueError, OSError) as exc:
        # invalid argument values (negative bounds, unreadable grid files)
        report["results"] = {"error": str(exc)}
        code = EXIT_PARSE
    report["exit_code"] = code
    report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    is_scan = args.command == "conjecture-scan"
    if not is_scan or args.json:
        # the scan's --out file holds the evidence JSONL, not the report
        _emit(
            report,
            args,
            sys.stdout if code == EXIT_OK else sys.stderr,
            allow_file=not is_scan,
        )
    return code


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
