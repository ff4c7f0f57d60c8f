"""Command line front end.

Every subcommand wraps one public operation and emits a RunReport:
command echo, JSON payload, counterexample when a check fails, and a
single elapsed_s timing field.  Timing is the only nondeterministic
field, so reports from equal inputs and --seed compare byte for byte
once it is stripped.  Exit codes: 0 pass, 1 check failed (with
counterexample), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .autmat import (check_relations, conj_rep, reconstruct_T, rep_from_json,
                     rep_to_json)
from .errors import (ChartMiss, DegenerateIdempotent, MembershipError,
                     NotAutomorphism, RegularityFailure, SuperkitError)
from .fields import RATIONALS, FieldSpec
from .linebundle import cocycle_sig, normalize_cocycle
from .morphisms import compose_morphisms
from .parsing import parse_expr
from .projective import (ProjPoint, act, chart_change, induced_chart_map,
                         normalize_point, p12_witness)
from .selftest import SelftestConfig, run_all
from .supergroups import (expand_C_equations, factor_C, in_spo_lie, is_C,
                          is_SpO, spo_component)
from .supermatrix import (SuperMatrix, h_form, matrix_from_json,
                          matrix_to_json)
from .superpoly import RingSignature, SuperPoly, grassmann_signature, transport
from .susy import is_susy_preserving, pullback_s, susy_sig

_GRAMMAR_EVEN = (("x", True), ("x0", False), ("x1", False), ("x2", False),
                 ("x3", False), ("w", False), ("u", False), ("v", False),
                 ("z0", False), ("z1", False))
_GRAMMAR_ODD = ("zeta", "xi", "eta", "mu1", "mu2", "nu1", "nu2") + tuple(
    f"t{i}" for i in range(1, 10))


def default_signature(field: FieldSpec = RATIONALS) -> RingSignature:
    """The full expression lexicon as one signature."""
    return RingSignature(field, _GRAMMAR_EVEN, _GRAMMAR_ODD)


def parse_expression(text: str, sig: RingSignature | None = None) -> SuperPoly:
    return parse_expr(sig if sig is not None else default_signature(), text)


# -- plumbing ----------------------------------------------------------------

class UsageError(Exception):
    pass


def _field(args) -> FieldSpec:
    if args.field == "rational":
        return RATIONALS
    try:
        return FieldSpec(int(args.field))
    except (ValueError, SuperkitError) as exc:
        raise UsageError(f"--field wants 'rational' or an odd prime: {exc}")


def _ring(args) -> RingSignature:
    return grassmann_signature(args.grassmann, _field(args))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc))


def _read_json(path: str) -> dict:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON input: {exc}")


def _load_matrix(path: str, sig: RingSignature) -> SuperMatrix:
    return matrix_from_json(_read_json(path), sig)


def _fmt(p: SuperPoly) -> str:
    return p.to_string()


# -- handlers ----------------------------------------------------------------
# each returns (exit code, payload, counterexample)

def cmd_ber(args):
    mat = _load_matrix(args.input, _ring(args))
    return 0, {"ber": _fmt(mat.berezinian())}, None


def cmd_gl_check(args):
    mat = _load_matrix(args.input, _ring(args))
    if mat.is_invertible():
        return 0, {"invertible": True}, None
    return 1, {"invertible": False}, {
        "reason": "a diagonal block has a non-invertible body"}


def cmd_spo_check(args):
    mat = _load_matrix(args.input, _ring(args))
    h = h_form(mat.sig)
    if args.lie:
        if in_spo_lie(mat):
            return 0, {"in_lie": True}, None
        defect = (mat.supertranspose() @ h) + (h @ mat)
        return 1, {"in_lie": False}, {"defect": matrix_to_json(defect)}
    if is_SpO(mat):
        return 0, {"spo": True, "component": spo_component(mat)}, None
    defect = mat.supertranspose() @ h @ mat - h
    return 1, {"spo": False}, {"defect": matrix_to_json(defect)}


def cmd_c_check(args):
    if args.expand:
        rels = expand_C_equations("standard", _field(args))
        return 0, {"relations": [_fmt(r) for r in rels]}, None
    if args.input is None:
        raise UsageError("c-check wants a matrix, or --expand")
    mat = _load_matrix(args.input, _ring(args))
    ok, scale = is_C(mat)
    if ok:
        return 0, {"conformal": True, "scale": _fmt(scale)}, None
    h = h_form(mat.sig)
    defect = mat.supertranspose() @ h @ mat - h.scale(scale)
    return 1, {"conformal": False}, {"candidate_scale": _fmt(scale),
                                     "defect": matrix_to_json(defect)}


def cmd_sc_factor(args):
    mat = _load_matrix(args.input, _ring(args))
    try:
        fac = factor_C(mat)
    except MembershipError as exc:
        return 1, {"conformal": False}, {"reason": str(exc)}
    return 0, {"scalar": _fmt(fac.scalar),
               "special": matrix_to_json(fac.special)}, None


def cmd_susy_check(args):
    mat = _load_matrix(args.input, _ring(args))
    ok, scale = is_susy_preserving(mat)
    if ok:
        return 0, {"preserving": True, "t": _fmt(scale),
                   "sc_representative": matrix_to_json(factor_C(mat).special)}, None
    sig = susy_sig(args.grassmann, _field(args))
    lift = SuperMatrix(2, 1, [[transport(e, sig) for e in row]
                              for row in mat.entries])
    pulled = pullback_s(lift)
    return 1, {"preserving": False, "t": None, "sc_representative": None}, {
        "pullback": {"dz0": _fmt(pulled.a0), "dz1": _fmt(pulled.a1),
                     "dzeta": _fmt(pulled.b)}}


def cmd_aut_rep(args):
    mat = _load_matrix(args.input, _ring(args))
    rep = conj_rep(mat)
    return 0, {"rep": rep_to_json(rep),
               "relations_hold": check_relations(rep)}, None


def cmd_aut_reconstruct(args):
    data = _read_json(args.input)
    rep = rep_from_json(data.get("rep", data), _ring(args))
    try:
        mat = reconstruct_T(rep)
    except (DegenerateIdempotent, NotAutomorphism) as exc:
        return 1, {"reconstructed": False}, {"reason": str(exc)}
    return 0, {"reconstructed": True, "matrix": matrix_to_json(mat)}, None


def _morphism_payload(f) -> dict:
    return {"images": {name: _fmt(img) for name, img in sorted(f.images.items())}}


def cmd_chart_change(args):
    field = _field(args)
    if args.matrix is not None:
        mat = _load_matrix(args.matrix, _ring(args))
        f = induced_chart_map(mat, args.i)
        return 0, _morphism_payload(f), None
    if args.j is None:
        raise UsageError("chart-change wants a second chart, or --matrix")
    f = chart_change(args.i, args.j, args.m, args.n, field)
    return 0, _morphism_payload(f), None


def cmd_chart_cocycle(args):
    field = _field(args)
    m, n = args.m, args.n
    checked = 0
    for i in range(m + 1):
        for j in range(m + 1):
            for k in range(m + 1):
                if len({i, j, k}) != 3:
                    continue
                left = compose_morphisms(
                    chart_change(i, j, m, n, field, extra_laurent=(k,)),
                    chart_change(j, k, m, n, field, extra_laurent=(i,)))
                if left != chart_change(i, k, m, n, field, extra_laurent=(j,)):
                    return 1, {"holds": False}, {"charts": [i, j, k]}
                checked += 1
    return 0, {"holds": True, "triples": checked}, None


def cmd_point_act(args):
    data = _read_json(args.input)
    sig = _ring(args)
    try:
        mat = matrix_from_json(data["matrix"], sig)
        coords = [parse_expr(sig, text) for text in data["coords"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"point-act wants {{matrix, coords}}: {exc}")
    if len(coords) != mat.m + mat.n:
        raise UsageError(f"need {mat.m + mat.n} coordinates, got {len(coords)}")
    p = ProjPoint(coords[:mat.m], coords[mat.m:])
    q = act(mat, p)
    payload = {"even": [_fmt(c) for c in q.even],
               "odd": [_fmt(c) for c in q.odd],
               "chart": q.chart_index()}
    if args.chart is not None:
        try:
            payload["normalized"] = [_fmt(c) for c in normalize_point(q, args.chart)]
        except ChartMiss as exc:
            return 1, payload, {"reason": str(exc)}
    return 0, payload, None


def cmd_cocycle_normalize(args):
    sig = cocycle_sig(args.grassmann, _field(args))
    g = parse_expr(sig, _read_text(args.input).strip())
    try:
        tr = normalize_cocycle(g)
    except RegularityFailure as exc:
        return 1, {"normalized": False}, {"reason": str(exc)}
    return 0, {"h0": _fmt(tr.h0), "h1": _fmt(tr.h1), "n": tr.n}, None


def cmd_p12_witness(args):
    _, report = p12_witness(_field(args))
    ok = report["invertible"] and report["glues"] and report["coefficient_is_unit"]
    return (0 if ok else 1), report, (None if ok else {"report": report})


def cmd_selftest(args):
    cfg = SelftestConfig(seed=args.seed, samples=args.samples)
    results = run_all(cfg)
    payload = {"criteria": [{"name": r.name, "passed": r.passed,
                             "detail": r.detail} for r in results],
               "passed": all(r.passed for r in results)}
    failing = [r.name for r in results if not r.passed]
    if failing:
        return 1, payload, {"failing": failing}
    return 0, payload, None


_HANDLERS = {
    "ber": cmd_ber,
    "gl-check": cmd_gl_check,
    "spo-check": cmd_spo_check,
    "c-check": cmd_c_check,
    "sc-factor": cmd_sc_factor,
    "susy-check": cmd_susy_check,
    "aut-rep": cmd_aut_rep,
    "aut-reconstruct": cmd_aut_reconstruct,
    "chart-change": cmd_chart_change,
    "chart-cocycle": cmd_chart_cocycle,
    "point-act": cmd_point_act,
    "cocycle-normalize": cmd_cocycle_normalize,
    "p12-witness": cmd_p12_witness,
    "selftest": cmd_selftest,
}


# -- argument parsing and report emission ------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--grassmann", type=int, default=3,
                        help="number of odd coefficient generators t1..tq")
    common.add_argument("--field", default="rational",
                        help="'rational' or an odd prime p")
    common.add_argument("--json", action="store_true",
                        help="emit the full RunReport as JSON")

    top = argparse.ArgumentParser(prog="superkit",
                                  description="exact supercommutative algebra toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_text, **kwargs):
        return sub.add_parser(name, parents=[common], help=help_text, **kwargs)

    for name, help_text in (("ber", "berezinian of a matrix"),
                            ("gl-check", "invertibility of a matrix"),
                            ("aut-rep", "conjugation representation of a matrix"),
                            ("sc-factor", "split a conformal matrix as unit times special")):
        p = add(name, help_text)
        p.add_argument("input", help="matrix JSON path, or - for stdin")

    p = add("spo-check", "exact form preservation")
    p.add_argument("input", help="matrix JSON path, or - for stdin")
    p.add_argument("--lie", action="store_true",
                   help="check the infinitesimal equation instead")

    p = add("c-check", "form preservation up to a unit")
    p.add_argument("input", nargs="?", help="matrix JSON path, or - for stdin")
    p.add_argument("--expand", action="store_true",
                   help="print the expanded equations over a generic ring")

    p = add("susy-check", "whether a matrix rescales the contact form")
    p.add_argument("input", help="matrix JSON path, or - for stdin")

    p = add("aut-reconstruct", "matrix from a conjugation representation")
    p.add_argument("input", help="representation JSON path, or - for stdin")

    p = add("chart-change", "chart transition, or the chart map of a matrix")
    p.add_argument("i", type=int, help="target chart")
    p.add_argument("j", type=int, nargs="?", help="source chart")
    p.add_argument("--m", type=int, default=1, help="even projective dimension")
    p.add_argument("--n", type=int, default=1, help="odd projective dimension")
    p.add_argument("--matrix", help="matrix JSON path: report its induced map on chart i")

    p = add("chart-cocycle", "triple compatibility of all chart transitions")
    p.add_argument("--m", type=int, default=2, help="even projective dimension")
    p.add_argument("--n", type=int, default=1, help="odd projective dimension")

    p = add("point-act", "apply a matrix to homogeneous coordinates")
    p.add_argument("input", help="JSON {matrix, coords} path, or - for stdin")
    p.add_argument("--chart", type=int, default=None,
                   help="also normalize the result in this chart")

    p = add("cocycle-normalize", "factor a transition function over P^1")
    p.add_argument("input", help="expression path, or - for stdin")

    add("p12-witness", "the quadric twist that glues to projective space")
    add("selftest", "run the acceptance criteria")
    return top


def _emit(args, code: int, payload, counterexample, elapsed: float):
    if args.json:
        report = {"command": args.command, "payload": payload,
                  "counterexample": counterexample,
                  "elapsed_s": round(elapsed, 6)}
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    if args.command == "selftest":
        for row in payload["criteria"]:
            mark = "PASS" if row["passed"] else "FAIL"
            print(f"{mark} {row['name']:32s} {row['detail']}")
        print("selftest:", "pass" if payload["passed"] else "fail")
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    if counterexample is not None:
        print("counterexample:", json.dumps(counterexample, sort_keys=True))


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, payload, counterexample = _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"superkit {args.command}: {exc}", file=sys.stderr)
        return 2
    except SuperkitError as exc:
        print(f"superkit {args.command}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 2
    _emit(args, code, payload, counterexample, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
