"""Regenerate src/hopftwist/defs/moyal4d.defs.

The Poincare brackets are read off from commutators of the differential
operators, so the file cannot drift from its own action section.
"""

import itertools
import sys
from pathlib import Path

from hopftwist.polynomials import DiffRing, PolyRing
from hopftwist.scalars import DeformationContext, GaussianRational

COORDS = ["x0", "x1", "x2", "x3"]
I = GaussianRational(0, 1)


def operators(D, ring):
    x = [D.multiplication(ring.var(c)) for c in COORDS]
    d = [D.partial(c) for c in COORDS]
    ops, text = {}, {}
    for j in (1, 2, 3):
        ops[f"K{j}"] = -(x[0] * d[j] + x[j] * d[0])
        text[f"K{j}"] = f"-x0*d_x{j} - x{j}*d_x0"
    for j, k in ((1, 2), (1, 3), (2, 3)):
        ops[f"J{j}{k}"] = -(x[j] * d[k] - x[k] * d[j])
        text[f"J{j}{k}"] = f"-x{j}*d_x{k} + x{k}*d_x{j}"
    for m in range(4):
        ops[f"P{m}"] = d[m].scale(I)
        text[f"P{m}"] = f"i*d_x{m}"
    return ops, text


def express(target, ops):
    """Coefficients c with target = sum c[g] ops[g]; the operators are monomial-disjoint enough."""
    rest = target
    out = {}
    for g, op in ops.items():
        (key, c), = sorted(op.terms.items())[:1]
        v = rest.terms.get(key)
        if v is not None and v:
            coeff = v * c.invert()
            out[g] = coeff
            rest = rest - op.scale(coeff)
    if rest:
        raise SystemExit(f"bracket not in span: {rest}")
    return out


def main(path):
    ctx = DeformationContext((), 0)
    ring = PolyRing(COORDS, ctx)
    D = DiffRing(ring)
    ops, text = operators(D, ring)
    names = list(ops)
    lines = [
        "# Moyal twist of the 4D Poincare algebra acting on flat space.",
        "# Generated by tools/gen_moyal4d.py; brackets are operator commutators.",
        "",
        "[deformation]",
        "params = theta01, theta02, theta03, theta12, theta13, theta23",
        "order = 2",
        "",
        "[lie]",
        "generators = " + ", ".join(names),
    ]
    for a, b in itertools.combinations(names, 2):
        comm = ops[a] * ops[b] - ops[b] * ops[a]
        if not comm:
            continue
        coeffs = express(comm, ops)
        terms = []
        for g, c in coeffs.items():
            s = str(c)
            terms.append(f"{'' if s == '1' else '-' if s == '-1' else s + '*'}{g}")
        rhs = " + ".join(terms).replace("+ -", "- ")
        lines.append(f"[{a}, {b}] = {rhs}")
    lines += ["", "[module]", "coordinates = " + ", ".join(COORDS)]
    lines += [f"action {g} = {text[g]}" for g in names]
    lines += ["", "[twist]", "kind = abelian"]
    for a, b in itertools.combinations(range(4), 2):
        lines.append(f"f[P{a}, P{b}] = -(1/2)*i*theta{a}{b}")
    Path(path).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/hopftwist/defs/moyal4d.defs")
