"""``dfml`` command-line front end.

Exit codes: 0 the property holds (or the command succeeded), 1 it fails
(a witness is printed), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formula as fm
from .axioms import FRAME_AXIOMS, classify_frame
from .canonical import canonical_frame, canonicity_report, verify_representation
from .formats import FormatError, parse_frm, parse_lat, parse_val, write_frm, write_val
from .frame import FrameError
from .logics import AXIOMS, LOGICS, logic_axioms, parse_class
from .nle import LatticeError, validate_nle
from .proofs import ProofFormatError, check_derivation, read_prf, search_proof, write_prf
from .search import BudgetExhausted, SearchBounds, find_countermodel
from .semantics import NonStableValuation, build_model, check_sequent_frame, check_sequent_model

OK, FAILS, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _sequent(text: str) -> fm.Sequent:
    try:
        return fm.parse_sequent(text)
    except fm.FormulaSyntaxError as exc:
        raise InputError(f"bad sequent: {exc}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for ln in lines:
            print(ln)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _valuation_names(F, val: dict) -> dict:
    return {f"p{v}": [F.z1[i] for i in range(F.n1) if (m >> i) & 1] for v, m in sorted(val.items())}


# --------------------------------------------------------------- commands

def cmd_classify(args) -> int:
    F = parse_frm(_read(args.frame))
    axioms = parse_class(args.axioms) if args.axioms else FRAME_AXIOMS
    for a in axioms:
        if a not in FRAME_AXIOMS:
            raise InputError(f"unknown frame axiom {a!r}")
    rep = classify_frame(F, axioms)
    ok = rep.satisfies(axioms)
    payload = dict(rep.to_dict(), ok=ok, axioms=list(axioms))
    _emit(args, payload, [c.line() for c in rep.checks] + [f"class: {'pass' if ok else 'fail'}"])
    return OK if ok else FAILS


def cmd_check(args) -> int:
    F = parse_frm(_read(args.frame))
    s = _sequent(args.sequent)
    payload: dict = {"sequent": str(s)}
    if args.val:
        val = parse_val(_read(args.val), F)
        missing = sorted((fm.variables(s.left) | fm.variables(s.right)) - set(val))
        if missing:
            raise InputError(f"valuation does not assign p{missing[0]}")
        try:
            M = build_model(F, val)
        except NonStableValuation as exc:
            raise InputError(str(exc)) from None
        holds, point = check_sequent_model(M, s)
        payload.update(mode="model", holds=holds, witness=None if holds else F.z1[point])
        lines = ["holds" if holds else f"fails at point {F.z1[point]}"]
    else:
        try:
            holds, val = check_sequent_frame(F, s)
        except FrameError as exc:
            raise InputError(str(exc)) from None
        payload.update(mode="frame", holds=holds,
                       valuation=None if holds else _valuation_names(F, val))
        lines = ["holds"] if holds else ["fails; first refuting valuation:"] + \
            write_val(F, val).splitlines()
    _emit(args, payload, lines)
    want = args.expect == "holds"
    return OK if holds == want else FAILS


def cmd_canonical(args) -> int:
    N = parse_lat(_read(args.lattice))
    v = validate_nle(N)
    if not v.ok:
        raise InputError("not a normal lattice expansion:\n" + "\n".join(c.line() for c in v.failures()))
    C = canonical_frame(N)
    text = write_frm(C.frame)
    ok = True
    payload: dict = {"points": {"sort1": len(C.frame.z1), "sortd": len(C.frame.zd)}}
    report_lines: list[str] = []
    if args.verify_iso:
        rep = verify_representation(N)
        ok &= rep.ok
        payload["iso"] = rep.to_dict()
        report_lines += [c.line() for c in rep.checks]
        report_lines.append(f"iso: {'verified' if rep.ok else 'FAILED'}")
    if args.classify:
        rep = classify_frame(C.frame)
        ok &= rep.refined
        payload["classify"] = rep.to_dict()
        report_lines += [c.line() for c in rep.checks]
        report_lines.append("refined" if rep.refined else "not refined")
    if args.canonicity:
        ids = logic_axioms(args.canonicity)
        rep = canonicity_report(N, ids)
        bad = [c for c in rep.checks if "holds in" in c.note and not c.passed]
        ok &= not bad
        payload["canonicity"] = dict(rep.to_dict(), violations=[c.id for c in bad])
        report_lines += [c.line() for c in rep.checks]
    if args.out:
        _write(args.out, text)
    if args.json:
        if not args.out:
            payload["frame"] = text
        payload["ok"] = ok
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        if not args.out:
            sys.stdout.write(text)
        prefix = "" if args.out else "# "
        for ln in report_lines:
            print(prefix + ln)
    return OK if ok else FAILS


def cmd_prove(args) -> int:
    s = _sequent(args.sequent)
    d = search_proof(s, args.logic, depth=args.depth)
    if d is None:
        _emit(args, {"found": False, "sequent": str(s)},
              [f"none found within height {args.depth} (inconclusive)"])
        return FAILS
    assert check_derivation(d, args.logic).ok
    text = write_prf(d)
    _write(args.out, text)
    _emit(args, {"found": True, "height": d.height, "sequent": str(s), "proof": text},
          text.splitlines())
    return OK


def cmd_checkproof(args) -> int:
    d = read_prf(_read(args.proof))
    v = check_derivation(d, args.logic)
    payload = {"ok": v.ok, "sequent": str(d.sequent), "path": list(v.path) if v.path else None,
               "message": v.message}
    _emit(args, payload, [v.line()])
    return OK if v.ok else FAILS


def cmd_countermodel(args) -> int:
    s = _sequent(args.sequent)
    max1 = args.max1 or args.max_size
    maxd = args.maxd or args.max_size
    start = tuple(int(t) for t in args.start.split(",")) if args.start else None
    if start is not None and len(start) != 3:
        raise InputError("--start takes n1,nd,imask")
    bounds = SearchBounds(max1, maxd, parse_class(args.cls), budget=args.budget)
    try:
        cm = find_countermodel(s, bounds, jobs=args.jobs, start=start)
    except BudgetExhausted as exc:
        cur = ",".join(map(str, exc.cursor))
        _emit(args, {"found": False, "exhausted": False, "cursor": list(exc.cursor)},
              [f"budget exhausted; resume with --start {cur}"])
        return FAILS
    if cm is None:
        _emit(args, {"found": False, "exhausted": True, "class": list(bounds.axioms)},
              [f"none found within ({max1},{maxd}) in class {'+'.join(bounds.axioms)}"])
        return FAILS
    F = cm.frame
    frm, val = write_frm(F), write_val(F, cm.valuation)
    _write(args.frm_out, frm)
    _write(args.val_out, val)
    payload = {"found": True, "position": list(cm.position), "witness": F.z1[cm.witness],
               "frame": frm, "valuation": _valuation_names(F, cm.valuation)}
    lines = [f"countermodel at {cm.position}, witness point {F.z1[cm.witness]}",
             "# frame (.frm)"] + frm.splitlines() + ["# valuation (.val)"] + val.splitlines()
    _emit(args, payload, lines)
    return OK


# ----------------------------------------------------------------- parser

def _logic(text: str) -> str:
    try:
        logic_axioms(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dfml", description="Two-sorted frames for distribution-free modal logic.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="check frame axioms on a .frm file")
    c.add_argument("frame")
    c.add_argument("--axioms", help="axiom ids or class, e.g. F1,F2 or refined+FK")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check", help="validity of a sequent on a frame or one model")
    c.add_argument("frame")
    c.add_argument("sequent")
    c.add_argument("--val", help=".val file; checks that single model")
    c.add_argument("--expect", choices=("holds", "fails"), default="holds",
                   help="outcome that counts as success (default holds)")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("canonical", help="canonical frame of a .lat file")
    c.add_argument("lattice")
    c.add_argument("--out", help="write the .frm here instead of stdout")
    c.add_argument("--verify-iso", action="store_true")
    c.add_argument("--classify", action="store_true")
    c.add_argument("--canonicity", metavar="AXIOMS", help=f"subset of {','.join(AXIOMS)}")
    c.set_defaults(func=cmd_canonical)

    c = sub.add_parser("prove", help="bounded proof search")
    c.add_argument("sequent")
    c.add_argument("--logic", type=_logic, default="min", help=f"one of {', '.join(LOGICS)} or axiom ids")
    c.add_argument("--depth", type=int, default=6)
    c.add_argument("--out", help="write the .prf certificate here")
    c.set_defaults(func=cmd_prove)

    c = sub.add_parser("checkproof", help="check a .prf derivation")
    c.add_argument("proof")
    c.add_argument("--logic", type=_logic, default="min")
    c.set_defaults(func=cmd_checkproof)

    c = sub.add_parser("countermodel", help="search small frames for a countermodel")
    c.add_argument("sequent")
    c.add_argument("--class", dest="cls", default="refined")
    c.add_argument("--max-size", type=int, default=3)
    c.add_argument("--max1", type=int)
    c.add_argument("--maxd", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--budget", type=int, help="number of Galois relations to examine")
    c.add_argument("--start", help="resume cursor n1,nd,imask")
    c.add_argument("--frm-out")
    c.add_argument("--val-out")
    c.set_defaults(func=cmd_countermodel)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "depth", 1) < 1:
        print("dfml: --depth must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (InputError, FormatError, ProofFormatError, FrameError, LatticeError, ValueError) as exc:
        print(f"dfml: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
