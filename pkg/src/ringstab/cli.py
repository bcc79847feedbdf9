"""Command-line front end.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 input
error, 3 a configured bound was hit (divisibility bound, inconclusive
radical test, size limit).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import __version__
from . import criteria as K
from . import synthesis as S
from .matrices import DimensionError, Matrix
from .parser import ParseError, PlantFile, load_plant_file
from .plant import DEFAULT_MAX_SIZE, SizeLimitExceeded, is_causal, is_strictly_causal, transfer_matrix
from .rings import Ideal, RadicalInconclusive, UnsupportedRing

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class Outcome:
    """A command result: exit code, JSON document, and text lines."""

    def __init__(self, code: int = EXIT_OK):
        self.code = code
        self.doc: Dict = {}
        self.lines: List[str] = []
        self.json = False

    def say(self, line: str = "") -> None:
        self.lines.append(line)


# rendering helpers --------------------------------------------------------------


def ideal_text(a: Ideal) -> List[str]:
    return [str(g) for g in a.canonical_basis()]


def ideal_str(a: Ideal) -> str:
    return "(" + (", ".join(ideal_text(a)) or "0") + ")"


def matrix_rows(M: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in M.rows]


def matrix_str(M: Matrix) -> str:
    return "[" + "; ".join(", ".join(r) for r in matrix_rows(M)) + "]"


def _wrap(x) -> str:
    s = str(x)
    return s if s.lstrip("-").isalnum() and not s.startswith("-") else f"({s})"


def witness_line(report: K.StabilizabilityReport) -> str:
    terms = [f"{_wrap(w.r)}*{_wrap(w.x)}" for w in report.witness]
    return "1 = " + " + ".join(terms)


def _header(pf: PlantFile, out: Outcome, command: str) -> None:
    p = pf.plant
    out.doc["command"] = command
    out.doc["ring"] = str(pf.spec)
    out.doc["plant"] = {"m": p.m, "n": p.n, "N": matrix_rows(p.N), "D": matrix_rows(p.D)}
    out.say(f"ring: {pf.spec}")
    out.say(f"plant: {p.n}x{p.m}, N = {matrix_str(p.N)}, D = {matrix_str(p.D)}")
    if p.causality_ideal is not None:
        causal, strict = is_causal(p), is_strictly_causal(p)
        out.doc["causality_ideal"] = ideal_text(p.causality_ideal)
        out.doc["causal"] = causal
        out.doc["strictly_causal"] = strict
        out.say(f"causality ideal Z = {ideal_str(p.causality_ideal)} (assumed prime; not verified)")
        strict_note = "yes" if strict else "no (tested on the given fraction; may be conservative)"
        out.say(f"causal: {'yes' if causal else 'no'}; strictly causal: {strict_note}")


# commands -------------------------------------------------------------------------


def cmd_minors(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "minors")
    t, minors = K.minor_ideal(pf.plant)
    w, wminors = K.minor_ideal_W(pf.plant)
    out.doc["minors"] = {str(I): str(v) for I, v in minors.items()}
    out.doc["minor_ideal"] = ideal_text(t)
    out.doc["w_minors"] = {str(J): str(v) for J, v in wminors.items()}
    out.doc["w_minor_ideal"] = ideal_text(w)
    out.say("full-size minors of T = [N; D]:")
    for I, v in minors.items():
        out.say(f"  t{I} = {v}")
    out.say(f"minor ideal: {ideal_str(t)}")
    out.say("full-size minors of W^t (common-denominator left fraction):")
    for J, v in wminors.items():
        out.say(f"  w{J} = {v}")
    out.say(f"minor ideal: {ideal_str(w)}")
    return out


def _report_doc(r: K.StabilizabilityReport) -> Dict:
    doc = {
        "verdict": r.verdict,
        "minors": {str(I): str(v) for I, v in r.minors.items()},
        "minor_ideal": ideal_text(r.minor_ideal),
        "quotient_ideals": {str(I): ideal_text(q) for I, q in r.quotient_ideals.items()},
    }
    if r.witness is not None:
        doc["witness"] = [
            {"index_set": str(w.index_set), "x": str(w.x), "r": str(w.r)} for w in r.witness
        ]
    if r.refutation is not None:
        doc["refutation"] = r.refutation
    return doc


def cmd_check(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "check")
    r = K.is_stabilizable(pf.plant)
    out.doc.update(_report_doc(r))
    for I, q in r.quotient_ideals.items():
        out.say(f"((t{I}) : t) = {ideal_str(q)}")
    if r.verdict:
        out.say("stabilizable: yes")
        out.say("witness: " + witness_line(r))
    else:
        out.code = EXIT_NEGATIVE
        out.say("stabilizable: no")
        out.say(f"certificate that 1 is not in the quotient sum: {_refutation_str(r.refutation)}")
    return out


def _refutation_str(ref: Dict) -> str:
    kind = ref["kind"]
    if kind == "common-zero":
        pt = ", ".join(f"{k} = {v}" for k, v in ref["point"].items())
        return f"every generator vanishes at {pt}"
    if kind == "common-divisor":
        return f"every generator is divisible by {ref['value']}"
    if kind == "lattice-index":
        return f"the ideal has index {ref['value']} in the ring"
    if kind == "zero-ideal":
        return "the quotient sum is the zero ideal"
    return "reduced Groebner basis (" + ", ".join(ref["basis"]) + ")"


def cmd_reduced_minors(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "reduced-minors")
    _, minors = K.minor_ideal(pf.plant)
    d = K.minors_gcd(minors)
    a = K.reduced_minors(pf.plant)
    ok = K.reduced_minors_generate(pf.plant)
    out.doc.update(
        {
            "verdict": ok,
            "gcd": str(d),
            "reduced_minors": {str(I): str(v) for I, v in a.items()},
        }
    )
    out.say(f"gcd of full-size minors: {d}")
    for I, v in a.items():
        out.say(f"  a{I} = {v}")
    out.say(f"reduced minors generate the ring: {'yes' if ok else 'no'}")
    out.code = EXIT_OK if ok else EXIT_NEGATIVE
    return out


def cmd_elem_factors(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "elem-factors")
    F, G = K.elementary_factors(pf.plant)
    ok = K.elementary_factors_coprime(pf.plant)
    out.doc.update(
        {
            "verdict": ok,
            "f": {str(I): str(v) for I, v in F.items()},
            "g": {str(J): str(v) for J, v in G.items()},
        }
    )
    for I, v in F.items():
        out.say(f"  f{I} = {v}")
    for J, v in G.items():
        out.say(f"  g{J} = {v}")
    out.say(f"elementary factors coprime: {'yes' if ok else 'no'}")
    out.code = EXIT_OK if ok else EXIT_NEGATIVE
    return out


def cmd_gen_elem_factors(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "gen-elem-factors")
    lams = K.generalized_elementary_factors(pf.plant)
    ok = K.gef_sum_is_ring(pf.plant)
    out.doc.update({"verdict": ok, "factors": {str(I): ideal_text(v) for I, v in lams.items()}})
    for I, v in lams.items():
        out.say(f"  Lambda{I} = {ideal_str(v)}")
    out.say(f"generalized elementary factors generate the ring: {'yes' if ok else 'no'}")
    out.code = EXIT_OK if ok else EXIT_NEGATIVE
    return out


def _certificate_doc(cert: S.ControllerCertificate) -> Dict:
    doc = {
        "controller": matrix_rows(cert.controller),
        "H": matrix_rows(cert.H) if cert.H is not None else None,
        "det_condition": cert.det_condition,
        "all_entries_in_ring": cert.all_entries_in_ring,
        "stabilizing": cert.stabilizing,
        "repair_applied": cert.repair_applied,
        "transcript": cert.transcript,
        "offending_entries": [{"row": i, "col": j, "entry": e} for i, j, e in cert.offending],
    }
    if cert.closed_loop_causal is not None:
        doc["closed_loop_causal"] = cert.closed_loop_causal
    return doc


def _say_certificate(out: Outcome, cert: S.ControllerCertificate) -> None:
    out.say(f"controller C = {matrix_str(cert.controller)}")
    if cert.H is not None:
        out.say(f"H(P, C) = {matrix_str(cert.H)}")
    out.say(f"det(E + PC) nonzero: {'yes' if cert.det_condition else 'no'}")
    out.say(f"all entries of H(P, C) in the ring: {'yes' if cert.all_entries_in_ring else 'no'}")
    for i, j, e in cert.offending:
        out.say(f"  entry ({i},{j}) = {e} is not in the ring")
    if cert.closed_loop_causal is not None:
        out.say(f"closed loop causal: {'yes' if cert.closed_loop_causal else 'no'}")


def cmd_synthesize(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "synthesize")
    r = K.is_stabilizable(pf.plant)
    out.doc.update(_report_doc(r))
    if not r.verdict:
        out.code = EXIT_NEGATIVE
        out.say("not stabilizable; no controller exists")
        return out
    cert = S.glue_controller(pf.plant, r, kdiv=args.kdiv)
    out.doc["certificate"] = _certificate_doc(cert)
    out.say("witness: " + witness_line(r))
    for step in cert.transcript:
        out.say("step: " + json.dumps(step, sort_keys=True))
    _say_certificate(out, cert)
    return out


def _need_controller(pf: PlantFile) -> Matrix:
    if pf.controller is None:
        raise ParseError("this command needs a [controller] section")
    return pf.controller


def cmd_verify(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "verify")
    C = _need_controller(pf)
    cert = S.verify_stabilizing(pf.plant, C)
    out.doc["verdict"] = cert.stabilizing
    out.doc["certificate"] = _certificate_doc(cert)
    _say_certificate(out, cert)
    out.say(f"stabilizing: {'yes' if cert.stabilizing else 'no'}")
    out.code = EXIT_OK if cert.stabilizing else EXIT_NEGATIVE
    return out


def cmd_hmatrix(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "hmatrix")
    C = _need_controller(pf)
    try:
        H = S.h_matrix(transfer_matrix(pf.plant), C)
    except S.SingularLoop:
        out.code = EXIT_NEGATIVE
        out.doc["H"] = None
        out.say("det(E + PC) = 0; H(P, C) is undefined")
        return out
    out.doc["H"] = matrix_rows(H)
    for row in matrix_rows(H):
        out.say("  " + ", ".join(row))
    return out


def cmd_cross_check(pf: PlantFile, args) -> Outcome:
    out = Outcome()
    _header(pf, out, "cross-check")
    rep = K.radical_cross_checks(pf.plant, bound=args.radical_bound)
    checks = []
    for c in rep.checks:
        checks.append(
            {
                "index_set": str(c.index_set),
                "radical_agreement": c.radical_agreement,
                "reduced_minor_equals_quotient": c.reduced_minor_equals_quotient,
                "elementary_matches_reduced": c.elementary_matches_reduced,
                "note": c.note,
            }
        )
        out.say(
            f"  {c.index_set}: radicals {_tri(c.radical_agreement)}, "
            f"reduced minor = quotient {_tri(c.reduced_minor_equals_quotient)}, "
            f"elementary factor ~ reduced minor {_tri(c.elementary_matches_reduced)}"
        )
    out.doc.update(
        {
            "radical_bound": rep.radical_bound,
            "checks": checks,
            "violations": len(rep.violations),
            "inconclusive": len(rep.inconclusive),
        }
    )
    out.say(f"violations: {len(rep.violations)}, inconclusive: {len(rep.inconclusive)}")
    if rep.violations:
        out.code = EXIT_NEGATIVE
    elif rep.inconclusive:
        out.code = EXIT_LIMIT
    return out


def _tri(v: Optional[bool]) -> str:
    return {True: "agree", False: "DISAGREE", None: "n/a"}[v]


COMMANDS = {
    "minors": cmd_minors,
    "check": cmd_check,
    "reduced-minors": cmd_reduced_minors,
    "elem-factors": cmd_elem_factors,
    "gen-elem-factors": cmd_gen_elem_factors,
    "synthesize": cmd_synthesize,
    "verify": cmd_verify,
    "hmatrix": cmd_hmatrix,
    "cross-check": cmd_cross_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("plant_file", help="path to a plant file")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--kdiv", type=int, default=S.DEFAULT_KDIV, help="divisibility exponent bound")
    common.add_argument("--radical-bound", type=int, default=K.DEFAULT_RADICAL_BOUND, help="power bound for radical membership in Z[sqrt(-5)]")
    common.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE, help="largest accepted plant dimension")
    ap = argparse.ArgumentParser(prog="ringstab", description="Stabilizability of plants over commutative rings.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return ap


def run(argv: Optional[List[str]] = None) -> Outcome:
    args = build_parser().parse_args(argv)
    try:
        pf = load_plant_file(args.plant_file, max_size=args.max_size)
        out = COMMANDS[args.command](pf, args)
    except (ParseError, UnsupportedRing, DimensionError, OSError, K.SingularSelection) as exc:
        out = Outcome(EXIT_INPUT)
        out.doc = {"command": args.command, "error": str(exc)}
        out.say(f"error: {exc}")
    except (S.DivisibilityBoundExceeded, RadicalInconclusive, SizeLimitExceeded) as exc:
        out = Outcome(EXIT_LIMIT)
        out.doc = {"command": args.command, "error": str(exc)}
        out.say(f"limit reached: {exc}")
    out.doc["exit_code"] = out.code
    out.json = args.json
    return out


def main(argv: Optional[List[str]] = None) -> int:
    out = run(argv)
    if out.json:
        sys.stdout.write(json.dumps(out.doc, indent=2, sort_keys=True) + "\n")
    else:
        stream = sys.stderr if out.code in (EXIT_INPUT, EXIT_LIMIT) and "error" in out.doc else sys.stdout
        stream.write("\n".join(out.lines) + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
