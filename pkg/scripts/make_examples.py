#!/usr/bin/env python3
"""Regenerate the JSON form documents in examples/forms/."""

import json
from fractions import Fraction
from pathlib import Path

from effective_forms.cli import form_to_doc
from effective_forms.jets import Poly
from effective_forms.mae import forward_jet
from effective_forms.normal_forms import representative

EXAMPLES = Path(__file__).resolve().parent.parent / "examples" / "forms"


def dump(name, doc):
    path = EXAMPLES / name
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {path}")


def main():
    EXAMPLES.mkdir(exist_ok=True)
    for family in range(1, 10):
        w = (
            representative(family, Fraction(1))
            if family <= 3
            else representative(family)
        )
        dump(f"family{family}.json", form_to_doc(w))

    dump(
        "pfaffian_hyperbolic.json",
        {
            "dim": 4,
            "degree": 2,
            "mode": "rational",
            "terms": [
                {"idx": [1, 2], "coef": "1"},
                {"idx": [3, 4], "coef": "-1"},
            ],
        },
    )

    # a 2-jet document over the family-3 base form, built from known
    # generating functions so the jet conditions are satisfiable
    w = representative(3, Fraction(1))
    h = Poly(6, {(3, 0, 0, 0, 0, 0): Fraction(1, 6)})
    k = Poly(6, {(0, 4, 0, 0, 0, 0): Fraction(1, 24)})
    jet = forward_jet(w, h, k)
    doc = form_to_doc(w)
    by_idx = {tuple(t["idx"]): t for t in doc["terms"]}
    for polyform in (jet.omega1, jet.omega2):
        for idx, poly in polyform.coeffs.items():
            term = by_idx.setdefault(tuple(idx), {"idx": list(idx), "coef": "0"})
            entries = term.setdefault("jet", [])
            for exps, coef in sorted(poly.terms.items()):
                entries.append({"monomial": list(exps), "coef": str(coef)})
    doc["terms"] = [by_idx[k2] for k2 in sorted(by_idx)]
    dump("jet_family3.json", doc)


if __name__ == "__main__":
    main()
