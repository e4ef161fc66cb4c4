"""The Moyal plane from a twist of the 2D Poincare algebra.

Deforming the product of functions on the plane with the Abelian twist
F = exp(-(i/2) theta (P0@P1 - P1@P0)) makes the coordinates stop commuting.
The map phi carries the deformed algebra back into the undeformed smash
product, where the same relation holds for ordinary operators.

    python demos/moyal_plane.py [order]
"""

import sys

from hopftwist.frontend.defs import load_defs
from hopftwist.frontend.printer import print_canonical as show
from hopftwist.twist_engine import phi, phi_inv, star_product


def main(order=4):
    d = load_defs("moyal2d", order=order)
    A, t = d.module, d.twist
    print(f"Moyal twist truncated at theta^{order}")
    print("F =", show(t.F))

    x0, x1 = A.var("x0"), A.var("x1")
    print("\nStar products of coordinates:")
    for a, b in [(x0, x1), (x1, x0), (x0 * x0, x1 * x1)]:
        print(f"  {show(a)} * {show(b)} = {show(star_product(t, A, a, b))}")
    comm = star_product(t, A, x0, x1) - star_product(t, A, x1, x0)
    print("  x0*x1 - x1*x0 =", show(comm), " (no higher powers of theta survive)")

    # inside A#U(g) the same relation is carried by ordinary operators
    S = A.smash
    y0, y1 = phi(t, S.var("x0")), phi(t, S.var("x1"))
    print("\nImages in the smash product:")
    print("  y0 = phi(x0) =", show(y0))
    print("  y1 = phi(x1) =", show(y1))
    print("  y0 y1 - y1 y0 =", show(y0 * y1 - y1 * y0))
    print("  phi^-1(y0) =", show(phi_inv(t, y0)))

    # phi turns the star product into the ordinary product
    a, b = S.var("x0") * S.gen("M"), S.var("x1") * S.var("x1")
    lhs = phi(t, star_product(t, None, a, b))
    rhs = phi(t, a) * phi(t, b)
    print(f"\nphi(a*b) == phi(a)phi(b) for a = {show(a)}, b = {show(b)}:", lhs == rhs)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
