"""A non-Abelian example: the Jordanian twist on [H, E] = E.

Here F = exp(-H@ln(1 + xi*E)) does not commute with the coproduct, so
the twisted coproduct, antipode and R-matrix all change shape. The demo
also shows that the sign matters: the opposite exponent is not a cocycle.

    python demos/jordanian.py
"""

from hopftwist.frontend.defs import load_defs, load_defs_text
from hopftwist.frontend.printer import print_canonical as show
from hopftwist.twist_engine import check_cocycle, phi, phi_inv, twisted_R


WRONG_SIGN = """
[deformation]
params = xi
order = 2

[lie]
generators = H, E
[H, E] = E

[twist]
kind = explicit
order 1 = xi*H@E
order 2 = -(1/2)*xi^2*H@E^2 + (1/2)*xi^2*H^2@E^2
"""


def main():
    d = load_defs("jordanian", order=4)
    t = d.twist
    H, E = d.lie.gen("H"), d.lie.gen("E")
    print("F =", show(t.F))
    print("\nTwisted structure:")
    print("  D~(E) =", show(t.coproduct(E)))
    print("  D~(H) =", show(t.coproduct(H)))
    print("  S~(E) =", show(t.antipode(E)))
    print("  R~ =", show(twisted_R(t)))

    # phi(E) is the series of E/(1 + xi*E); phi^-1 undoes it exactly
    y = phi(t, E)
    print("\nphi(E) =", show(y))
    print("phi^-1(phi(E)) =", show(phi_inv(t, y)))

    rep = check_cocycle(t.F)
    print("\nCocycle condition:", "holds" if rep.passed else "fails")

    bad = load_defs_text(WRONG_SIGN, name="wrong-sign", expand=False)
    rep = check_cocycle(bad.twist_spec.expand())
    print("With the exponent's sign flipped:", "holds" if rep.passed else "fails")
    if not rep.passed:
        print(" ", rep.counterexample.label)
        print(" ", rep.counterexample.detail)


if __name__ == "__main__":
    main()
