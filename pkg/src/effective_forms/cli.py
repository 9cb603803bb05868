"""Command-line front end: read forms from JSON documents, run the
classification / stabilizer / prolongation / PDE / witness pipelines, and
print human-readable or JSON reports.

Exit codes: 0 success, 2 input form not effective, 1 I/O, parse or usage
errors.  Basis convention: indices 1..3 are e1..e3, 4..6 are f1..f3.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classify import classify, reduce
from .exterior import KForm, ScalarModeError
from .invariants import pfaffian, q_form, q_report
from .mae import JetForm, check_jet_conditions, pde_from_form
from .jets import Poly, PolyKForm
from .spmaps import symplectic_defect
from .stabilizer import killing_report, prolongation, stabilizer
from .symplectic import bot, is_effective
from .witness import FamilyMismatchError, SolverOptions, solve_conjugacy

BASIS_CONVENTION = "e1..e3 = indices 1..3, f1..f3 = indices 4..6"


class DocumentError(ValueError):
    pass


def _parse_scalar(text, rational):
    if rational:
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, str):
            return Fraction(text)
        raise DocumentError(
            f"rational mode accepts integers or 'p/q' strings, got {text!r}"
        )
    return float(text)


def _format_scalar(value):
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def parse_form(doc: dict):
    """FormDocument -> (KForm, JetForm or None)."""
    try:
        dim = int(doc["dim"])
        degree = int(doc["degree"])
        mode = doc.get("mode", "rational")
        rational = mode == "rational"
        if mode not in ("rational", "float"):
            raise DocumentError(f"unknown scalar mode {mode!r}")
        coeffs = {}
        jet1, jet2 = {}, {}
        has_jet = False
        for term in doc.get("terms", []):
            idx = tuple(int(i) for i in term["idx"])
            coeffs[idx] = coeffs.get(idx, 0) + _parse_scalar(term["coef"], rational)
            for entry in term.get("jet", []):
                has_jet = True
                exps = tuple(int(e) for e in entry["monomial"])
                if len(exps) != dim or sum(exps) not in (1, 2):
                    raise DocumentError(f"bad jet monomial {exps}")
                target = jet1 if sum(exps) == 1 else jet2
                p = target.setdefault(idx, Poly.zero(dim))
                target[idx] = p + Poly(dim, {exps: Fraction(entry["coef"])})
        w = KForm(dim, degree, coeffs, rational=rational)
        jet = None
        if has_jet:
            if not rational:
                raise DocumentError("jet documents must be rational mode")
            jet = JetForm(w, PolyKForm(dim, degree, jet1), PolyKForm(dim, degree, jet2))
        return w, jet
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed form document: {exc}") from exc


def form_to_doc(w: KForm) -> dict:
    return {
        "dim": w.dim,
        "degree": w.degree,
        "mode": "rational" if w.rational else "float",
        "terms": [
            {"idx": list(idx), "coef": _format_scalar(c)}
            for idx, c in sorted(w.coeffs.items())
        ],
    }


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def _require_effective(w):
    if w.rational:
        if is_effective(w):
            return
        residue = {tuple(k): str(v) for k, v in bot(w).coeffs.items()}
    else:
        residue_form = bot(w)
        if residue_form.max_abs() <= 1e-9 * max(1.0, w.max_abs()):
            return
        residue = {tuple(k): float(v) for k, v in residue_form.coeffs.items()}
    raise NotEffectiveError(residue)


class NotEffectiveError(ValueError):
    def __init__(self, residue):
        super().__init__(f"form is not effective; contraction residue {residue}")
        self.residue = residue


def _emit(report: dict, as_json: bool):
    report = {"basis": BASIS_CONVENTION, **report}
    if as_json:
        print(json.dumps(report, sort_keys=True, default=str))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


def _matrix_to_lists(rows):
    return [[_format_scalar(v) for v in row] for row in rows]


def cmd_classify(args) -> int:
    w, _ = parse_form(_load(args.file))
    _require_effective(w)
    label = classify(w)
    report = {
        "input": form_to_doc(w),
        "family": label.family,
        "parameter": None if label.parameter is None else _format_scalar(label.parameter),
    }
    q = q_form(w, check_effective=False)
    rep = q_report(q)
    report["q_matrix"] = _matrix_to_lists(q.matrix)
    report["q_rank"] = rep.rank
    report["q_signature"] = list(rep.signature)
    report["q_det"] = _format_scalar(rep.det)
    if args.witness:
        label = reduce(
            w, SolverOptions(seed=args.seed, restarts=args.restarts)
        )
        if label.witness is not None:
            report["witness"] = _matrix_to_lists(label.witness.rows)
            report["witness_symplectic_defect"] = float(
                symplectic_defect(label.witness)
            )
        else:
            report["witness"] = None
    _emit(report, args.json)
    return 0


def cmd_stabilizer(args) -> int:
    w, _ = parse_form(_load(args.file))
    _require_effective(w)
    sub = stabilizer(w)
    sig, radical = killing_report(sub)
    _emit(
        {
            "input": form_to_doc(w),
            "stabilizer_dim": sub.dim,
            "killing_signature": list(sig),
            "killing_radical_dim": radical,
            "basis": [_matrix_to_lists(b.rows) for b in sub.basis],
        },
        args.json,
    )
    return 0


def cmd_prolong(args) -> int:
    w, _ = parse_form(_load(args.file))
    _require_effective(w)
    sub = stabilizer(w)
    pro = prolongation(sub)
    _emit(
        {
            "input": form_to_doc(w),
            "stabilizer_dim": sub.dim,
            "prolongation_dim": pro.dim,
        },
        args.json,
    )
    return 0


def cmd_pfaffian(args) -> int:
    w, _ = parse_form(_load(args.file))
    _require_effective(w)
    pf = pfaffian(w)
    if (pf > 0) if w.rational else (pf > 1e-12):
        kind = "elliptic"
    elif (pf < 0) if w.rational else (pf < -1e-12):
        kind = "hyperbolic"
    else:
        kind = "parabolic"
    _emit(
        {"input": form_to_doc(w), "pfaffian": _format_scalar(pf), "type": kind},
        args.json,
    )
    return 0


def cmd_effective(args) -> int:
    w, _ = parse_form(_load(args.file))
    residue_form = bot(w)
    effective = (
        is_effective(w)
        if w.rational
        else residue_form.max_abs() <= 1e-9 * max(1.0, w.max_abs())
    )
    _emit(
        {
            "input": form_to_doc(w),
            "effective": bool(effective),
            "contraction": {
                str(list(k)): _format_scalar(v) for k, v in residue_form.coeffs.items()
            },
        },
        args.json,
    )
    return 0 if effective else 2


def cmd_mae(args) -> int:
    w, jet = parse_form(_load(args.file))
    _require_effective(w)
    report = {"input": form_to_doc(w), "pde": repr(pde_from_form(w))}
    if jet is not None:
        flat = check_jet_conditions(jet)
        report["jet_family"] = flat.orbit_at_base.family
        report["sigma1_solvable"] = flat.sigma1_solvable
        report["sigma2_solvable"] = flat.sigma2_solvable
        report["kernel_independent"] = flat.kernel_independent
        report["conclusion"] = flat.conclusion
    _emit(report, args.json)
    return 0


def cmd_equiv(args) -> int:
    wa, _ = parse_form(_load(args.file_a))
    wb, _ = parse_form(_load(args.file_b))
    _require_effective(wa)
    _require_effective(wb)
    la, lb = classify(wa), classify(wb)
    report = {
        "family_a": la.family,
        "family_b": lb.family,
        "parameter_a": None if la.parameter is None else _format_scalar(la.parameter),
        "parameter_b": None if lb.parameter is None else _format_scalar(lb.parameter),
    }
    if la.family != lb.family:
        qa = q_report(q_form(wa, check_effective=False))
        qb = q_report(q_form(wb, check_effective=False))
        report["equivalent"] = False
        report["reason"] = (
            f"q signature mismatch: {qa.signature} vs {qb.signature}"
        )
        _emit(report, args.json)
        return 1
    params_match = True
    if la.parameter is not None:
        pa, pb = float(la.parameter), float(lb.parameter)
        params_match = abs(pa - pb) <= 1e-9 * max(1.0, abs(pa))
    report["equivalent"] = params_match
    if not params_match:
        report["reason"] = "parameter mismatch"
        _emit(report, args.json)
        return 1
    if args.witness:
        try:
            res = solve_conjugacy(
                wa, wb, SolverOptions(seed=args.seed, restarts=args.restarts)
            )
        except FamilyMismatchError as exc:
            report["equivalent"] = False
            report["reason"] = str(exc)
            _emit(report, args.json)
            return 1
        report["witness_converged"] = res.converged
        report["witness_residual"] = res.residual
        if res.converged:
            report["witness"] = _matrix_to_lists(res.map.rows)
        _emit(report, args.json)
        return 0 if res.converged else 1
    _emit(report, args.json)
    return 0


def cmd_witness(args) -> int:
    wa, _ = parse_form(_load(args.file_a))
    wb, _ = parse_form(_load(args.file_b))
    _require_effective(wa)
    _require_effective(wb)
    try:
        res = solve_conjugacy(
            wa,
            wb,
            SolverOptions(
                seed=args.seed,
                restarts=args.restarts,
                residual_threshold=args.tolerance,
            ),
        )
    except FamilyMismatchError as exc:
        _emit({"error": str(exc)}, args.json)
        return 1
    report = {
        "converged": res.converged,
        "residual": res.residual,
        "restarts_used": res.restarts_used,
    }
    if res.map is not None:
        report["witness"] = _matrix_to_lists(res.map.rows)
        report["symplectic_defect"] = float(symplectic_defect(res.map))
    _emit(report, args.json)
    return 0 if res.converged else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="effective-forms",
        description="Symplectic classification of effective 3-forms on R^6",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, files=1):
        if files == 1:
            p.add_argument("file")
        else:
            p.add_argument("file_a")
            p.add_argument("file_b")
        p.add_argument("--json", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=8)
        p.add_argument("--tolerance", type=float, default=1e-8)

    p = sub.add_parser("classify", help="orbit decision with invariants")
    common(p)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_classify)

    for name, fn in (
        ("stabilizer", cmd_stabilizer),
        ("prolong", cmd_prolong),
        ("pfaffian", cmd_pfaffian),
        ("effective", cmd_effective),
        ("mae", cmd_mae),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("equiv", help="same-orbit decision for two forms")
    common(p, files=2)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("witness", help="numerical conjugacy search")
    common(p, files=2)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except NotEffectiveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DocumentError, ScalarModeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
