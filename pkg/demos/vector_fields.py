"""First-order operators before and after twisting.

An operator X is first order when it satisfies the braided Leibniz rule.
On the Moyal plane the set of first-order operators does not change
under the twist, even though the rule itself does. Second-order
operators fail both versions.

    python demos/vector_fields.py
"""

from hopftwist import corpus
from hopftwist.frontend.defs import load_defs
from hopftwist.frontend.printer import print_canonical as show
from hopftwist.polynomials import DiffRing
from hopftwist.qvector_fields import braided_operator_commutator, check_first_order


def main():
    d = load_defs("moyal2d", order=2)
    A, t = d.module, d.twist
    D = DiffRing(A.ring)
    d0, d1 = D.partial("x0"), D.partial("x1")
    x0, x1 = D.multiplication(A.ring.var("x0")), D.multiplication(A.ring.var("x1"))
    ops = {"d0": d0, "d1": d1, "x0 d1": x0 * d1, "x1 d0": x1 * d0, "d0 d1": d0 * d1}
    pairs = corpus.monomial_pairs(A, 2)
    print(f"Checking the Leibniz rule on {len(pairs)} monomial pairs\n")
    print(f"  {'operator':8s} {'untwisted':10s} twisted")
    for name, X in ops.items():
        u = check_first_order(A, None, X, pairs)
        w = check_first_order(A, t, X, pairs)
        print(f"  {name:8s} {'yes' if u.passed else 'no':10s} {'yes' if w.passed else 'no'}")
        if not w.passed:
            print("    first failure:", w.counterexample.label)

    print("\nBraided commutators")
    print("  [d0, x0 d1]   =", show(braided_operator_commutator(A, d0, x0 * d1)))
    print("  [d0, x0 d1]_R =", show(braided_operator_commutator(A, d0, x0 * d1, t)))
    Z = braided_operator_commutator(A, x0 * d1, x1 * d0, t)
    print("  [x0 d1, x1 d0]_R =", show(Z))
    print("  first order:", check_first_order(A, t, Z, pairs).passed)


if __name__ == "__main__":
    main()
