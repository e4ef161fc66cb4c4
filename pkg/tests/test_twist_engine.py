"""Twist expansion, deformed structure maps, star products and φ.

Frozen values marked "oracle" come from tools/oracles.py (sympy, independent
of this package).
"""

from fractions import Fraction

import pytest

from hopftwist import corpus
from hopftwist.errors import ValidationError
from hopftwist.frontend.defs import load_defs_text, resolve_defs
from hopftwist.hopf_core import antipode, coproduct
from hopftwist.lie_pbw import tensor, unit_tensor
from hopftwist.scalars import I
from hopftwist.twist_engine import (
    TwistSpec, check_cocycle, check_counit, check_three_leg_identity, expand_twist, iterated_twist, phi,
    phi_inv, star_product, twisted_antipode, twisted_coproduct, twisted_R, verify_adrep,
    verify_compensation, verify_intertwine, verify_smash_iso, verify_theorem_cotwist,
    verify_twist_axioms,
)

# oracle: exp(-(i/2) theta (P0@P1 - P1@P0)) to theta^4
MOYAL_F = (
    "1@1 - (1/2)*i*theta*P0@P1 + (1/2)*i*theta*P1@P0"
    " - (1/8)*theta^2*P0^2@P1^2 + (1/4)*theta^2*P0*P1@P0*P1 - (1/8)*theta^2*P1^2@P0^2"
    " + (1/48)*i*theta^3*P0^3@P1^3 - (1/16)*i*theta^3*P0^2*P1@P0*P1^2"
    " + (1/16)*i*theta^3*P0*P1^2@P0^2*P1 - (1/48)*i*theta^3*P1^3@P0^3"
    " + (1/384)*theta^4*P0^4@P1^4 - (1/96)*theta^4*P0^3*P1@P0*P1^3"
    " + (1/64)*theta^4*P0^2*P1^2@P0^2*P1^2 - (1/96)*theta^4*P0*P1^3@P0^3*P1"
    " + (1/384)*theta^4*P1^4@P0^4"
)

# oracle: exp(-i theta (P0@P1 - P1@P0)) to theta^4, i.e. F squared
MOYAL_R = (
    "1@1 - i*theta*P0@P1 + i*theta*P1@P0"
    " - (1/2)*theta^2*P0^2@P1^2 + theta^2*P0*P1@P0*P1 - (1/2)*theta^2*P1^2@P0^2"
    " + (1/6)*i*theta^3*P0^3@P1^3 - (1/2)*i*theta^3*P0^2*P1@P0*P1^2"
    " + (1/2)*i*theta^3*P0*P1^2@P0^2*P1 - (1/6)*i*theta^3*P1^3@P0^3"
    " + (1/24)*theta^4*P0^4@P1^4 - (1/6)*theta^4*P0^3*P1@P0*P1^3"
    " + (1/4)*theta^4*P0^2*P1^2@P0^2*P1^2 - (1/6)*theta^4*P0*P1^3@P0^3*P1"
    " + (1/24)*theta^4*P1^4@P0^4"
)

# oracle: (F1 > f)(F2 > g) as a bidifferential operator with P = i d
MOYAL_STARS = [
    ("x0", "x1", "x0*x1 + (1/2)*i*theta"),
    ("x1", "x0", "x0*x1 - (1/2)*i*theta"),
    ("x0", "x0", "x0^2"),
    ("x0^2", "x1", "x0^2*x1 + i*theta*x0"),
    ("x0*x1", "x0*x1", "x0^2*x1^2 + (1/4)*theta^2"),
    ("x0^2", "x1^2", "x0^2*x1^2 + 2*i*theta*x0*x1 - (1/2)*theta^2"),
]


class TestExpansion:
    def test_moyal_F(self, moyal):
        assert moyal.twist.F == moyal.parse(MOYAL_F)

    def test_first_order(self, moyal):
        expect = moyal.parse("1@1 - (1/2)*i*theta*P0@P1 + (1/2)*i*theta*P1@P0")
        assert moyal.twist.F.truncated(1) == expect

    def test_moyal_theta_zeta_trivial(self, moyal):
        one = moyal.lie.unit()
        assert moyal.twist.theta == one
        assert moyal.twist.zeta == one

    def test_trivial_spec(self, trivial):
        t = trivial.twist
        assert t.F == unit_tensor(trivial.lie, 2)
        assert t.theta == trivial.lie.unit() == t.zeta

    def test_moyal_cocycle_and_counit(self, moyal):
        assert check_cocycle(moyal.twist.F).passed
        assert check_counit(moyal.twist.F).passed

    def test_unit_tensor_cocycle(self, moyal):
        assert check_cocycle(unit_tensor(moyal.lie, 2)).passed

    def test_jordanian_cocycle(self, jordanian):
        assert check_cocycle(jordanian.twist.F).passed
        assert check_counit(jordanian.twist.F).passed

    def test_jordanian_terms_match_oracle(self, jordanian):
        # oracle: exp(-H@ln(1 + xi E)); leg 1 holds only H, leg 2 only E
        oracle = {
            (0, 0, 0): 1, (1, 1, 1): -1, (1, 2, 2): Fraction(1, 2), (2, 2, 2): Fraction(1, 2),
            (1, 3, 3): Fraction(-1, 3), (2, 3, 3): Fraction(-1, 2), (3, 3, 3): Fraction(-1, 6),
            (1, 4, 4): Fraction(1, 4), (2, 4, 4): Fraction(11, 24), (3, 4, 4): Fraction(1, 4),
            (4, 4, 4): Fraction(1, 24),
        }
        got = {}
        for (m1, m2), c in jordanian.twist.F.terms.items():
            assert m1[1] == 0 and m2[0] == 0
            for (k,), v in c.terms.items():
                got[(m1[0], m2[1], k)] = v
        assert got == oracle

    def test_order2_zeroed_rejected(self):
        _, text = resolve_defs("jordanian")
        bad = text.replace("order 2 = (1/2)*xi^2*H@E^2 + (1/2)*xi^2*H^2@E^2\n", "")
        with pytest.raises(ValidationError, match="first failing order 2"):
            load_defs_text(bad)
        rep = check_cocycle(load_defs_text(bad, expand=False).twist_spec.expand())
        assert not rep.passed
        assert "xi^2*H@E@E - xi^2*H@H@E^2 + xi^2*H^2@E@E" in rep.counterexample.detail

    def test_opposite_sign_fails(self):
        # oracle: exp(+H@ln(1 + xi E)) to order 2 violates this cocycle convention
        text = (
            "[deformation]\nparams = xi\norder = 2\n"
            "[lie]\ngenerators = H, E\n[H, E] = E\n"
            "[twist]\nkind = explicit\norder 1 = xi*H@E\n"
            "order 2 = -(1/2)*xi^2*H@E^2 + (1/2)*xi^2*H^2@E^2\n"
        )
        rep = check_cocycle(load_defs_text(text, expand=False).twist_spec.expand())
        assert not rep.passed
        assert rep.counterexample.detail == "first failing order 2; witness: 2*xi^2*H@E@E"

    def test_counit_violation(self, moyal):
        lie = moyal.lie
        spec = TwistSpec.explicit(lie, [(1, tensor(lie, lie.unit(), lie.gen("P0"),
                                                   coeff=moyal.context.param("theta")))])
        assert not check_counit(spec.expand()).passed
        with pytest.raises(ValidationError):
            expand_twist(spec)

    def test_abelian_needs_commuting_generators(self, moyal):
        with pytest.raises(ValidationError):
            TwistSpec.abelian(moyal.lie, ["M", "P0"], {("M", "P0"): moyal.context.param("theta")})

    def test_iterated(self, moyal2):
        t = moyal2.twist
        assert iterated_twist(t, 1) == moyal2.lie.unit()
        assert iterated_twist(t, 2) == t.F
        F3a = iterated_twist(t, 3, partition=(1, 2))
        F3b = iterated_twist(t, 3, partition=(2, 1))
        assert F3a == F3b == iterated_twist(t, 3)


class TestDeformedStructure:
    def test_momentum_coproduct_unchanged(self, moyal):
        P0 = moyal.lie.gen("P0")
        assert twisted_coproduct(moyal.twist, P0) == coproduct(P0)

    def test_boost_coproduct(self, moyal):
        # first-order term (i/2) theta [Delta(M), P0@P1 - P1@P0] vanishes: the
        # boost preserves the antisymmetric form, so Delta~(M) = Delta(M) exactly
        M = moyal.lie.gen("M")
        assert twisted_coproduct(moyal.twist, M) == coproduct(M)

    def test_jordanian_coproduct_of_E(self, jordanian):
        # closed form E@(1 + xi E) + 1@E, exact at every order
        expect = jordanian.parse("E@1 + 1@E + xi*E@E")
        assert twisted_coproduct(jordanian.twist, jordanian.lie.gen("E")) == expect

    def test_trivial_coproduct(self, trivial):
        for h in corpus.uea_elements(trivial.lie, 5, seed=1):
            assert twisted_coproduct(trivial.twist, h) == coproduct(h)
            assert twisted_antipode(trivial.twist, h) == antipode(h)

    def test_moyal_antipode(self, moyal):
        t = moyal.twist
        P0, M = moyal.lie.gen("P0"), moyal.lie.gen("M")
        assert twisted_antipode(t, P0) == -P0
        assert twisted_antipode(t, twisted_antipode(t, M)) == M

    def test_R_tilde(self, moyal):
        assert twisted_R(moyal.twist) == moyal.parse(MOYAL_R)

    def test_R_is_F_squared(self, moyal):
        from hopftwist.lie_pbw import tensor_mul

        F = moyal.twist.F
        assert twisted_R(moyal.twist) == tensor_mul(F, F)

    def test_trivial_R(self, trivial):
        assert twisted_R(trivial.twist) == unit_tensor(trivial.lie, 2)

    def test_quasi_cocommutative(self, moyal3):
        from hopftwist.lie_pbw import embed_legs, tensor_mul

        t = moyal3.twist
        R = twisted_R(t)
        D = twisted_coproduct(t, moyal3.lie.gen("M"))
        assert tensor_mul(R, D) == tensor_mul(embed_legs(D, 2, [2, 1]), R)

    @pytest.mark.parametrize("name", ["moyal", "jordanian"])
    def test_axioms(self, name, request):
        d = request.getfixturevalue(name)
        hs = [d.lie.gen(i) for i in range(d.lie.n)] + corpus.uea_elements(d.lie, 3, seed=0)
        rep = verify_twist_axioms(d.twist, hs)
        assert rep.passed, rep.to_text()


class TestStar:
    @pytest.mark.parametrize("a,b,expect", MOYAL_STARS)
    def test_moyal_polynomials(self, moyal, a, b, expect):
        A = moyal.module
        assert star_product(moyal.twist, A, moyal.parse(a), moyal.parse(b)) == moyal.parse(expect)

    def test_commutator(self, moyal):
        A, t = moyal.module, moyal.twist
        x0, x1 = A.var("x0"), A.var("x1")
        comm = star_product(t, A, x0, x1) - star_product(t, A, x1, x0)
        assert comm == A.ring.one().scale(moyal.context.param("theta") * I)

    def test_trivial_star_is_product(self, trivial):
        A = trivial.module
        for a, b in corpus.poly_pairs(A, 5, seed=2, max_degree=2):
            assert star_product(trivial.twist, A, a, b) == a * b

    def test_associative(self, moyal):
        A, t = moyal.module, moyal.twist
        polys = corpus.polynomials(A, 4, seed=8, max_degree=2)
        for a in polys:
            for b in polys[:2]:
                c = polys[-1]
                lhs = star_product(t, A, star_product(t, A, a, b), c)
                assert lhs == star_product(t, A, a, star_product(t, A, b, c))


class TestPhi:
    def test_phi_x0(self, moyal):
        S = moyal.module.smash
        assert phi(moyal.twist, S.var("x0")) == moyal.parse("x0 + (1/2)*theta*P1", kind="smash")

    def test_phi_inv_y0(self, moyal):
        S = moyal.module.smash
        y0 = moyal.parse("x0 + (1/2)*theta*P1", kind="smash")
        assert phi_inv(moyal.twist, y0) == S.var("x0")

    def test_phi_momentum(self, moyal):
        P0 = moyal.lie.gen("P0")
        assert phi(moyal.twist, P0) == P0

    def test_phi_boost(self, moyal):
        # order 1 by hand: -(i/2) theta ([P0,M]P1 - [P1,M]P0); ad(P)^2 M = 0 kills higher orders
        M = moyal.lie.gen("M")
        expect = moyal.parse("M - (1/2)*i*theta*P0^2 + (1/2)*i*theta*P1^2")
        assert phi(moyal.twist, M) == expect
        assert phi_inv(moyal.twist, phi(moyal.twist, M)) == M

    def test_trivial_phi(self, trivial):
        for x in corpus.smash_elements(trivial.module, 5, seed=3):
            assert phi(trivial.twist, x) == x
            assert phi_inv(trivial.twist, x) == x

    def test_jordanian_phi_E(self, jordanian):
        # oracle: phi(E) = E (1 + xi E)^-1
        t = jordanian.twist
        E = jordanian.lie.gen("E")
        y = phi(t, E)
        assert y == jordanian.parse("E - xi*E^2 + xi^2*E^3 - xi^3*E^4 + xi^4*E^5")
        assert phi_inv(t, E) == jordanian.parse("E + xi*E^2 + xi^2*E^3 + xi^3*E^4 + xi^4*E^5")
        assert phi_inv(t, y) == E
        assert phi(t, phi_inv(t, E)) == E

    @pytest.mark.parametrize("name", ["moyal", "jordanian"])
    def test_round_trip(self, name, request):
        d = request.getfixturevalue(name)
        xs = (corpus.smash_elements(d.module, 6, seed=4, max_degree=2) if d.module
              else corpus.uea_elements(d.lie, 6, seed=4, max_degree=3))
        for x in xs:
            assert phi_inv(d.twist, phi(d.twist, x)) == x
            assert phi(d.twist, phi_inv(d.twist, x)) == x

    def test_generators_relation(self, moyal):
        S = moyal.module.smash
        t = moyal.twist
        y0, y1 = phi(t, S.var("x0")), phi(t, S.var("x1"))
        assert y0 * y1 - y1 * y0 == S.one().scale(moyal.context.param("theta") * I)

    def test_4d_images(self, moyal4d):
        # oracle: x^a + (1/2) theta^{ab} P_b, theta antisymmetric
        S = moyal4d.module.smash
        t = moyal4d.twist
        expect = {
            "x0": "x0 + (1/2)*theta01*P1 + (1/2)*theta02*P2 + (1/2)*theta03*P3",
            "x1": "x1 - (1/2)*theta01*P0 + (1/2)*theta12*P2 + (1/2)*theta13*P3",
            "x2": "x2 - (1/2)*theta02*P0 - (1/2)*theta12*P1 + (1/2)*theta23*P3",
            "x3": "x3 - (1/2)*theta03*P0 - (1/2)*theta13*P1 - (1/2)*theta23*P2",
        }
        for x, e in expect.items():
            assert phi(t, S.var(x)) == moyal4d.parse(e, kind="smash")


class TestSuites:
    def test_theorem(self, moyal):
        pairs = corpus.smash_pairs(moyal.module, 10, seed=1, max_degree=2)
        assert verify_theorem_cotwist(moyal.twist, pairs).passed

    def test_three_leg(self, moyal, jordanian):
        assert check_three_leg_identity(moyal.twist).passed
        assert check_three_leg_identity(jordanian.twist).passed

    def test_intertwine_M_P0(self, moyal3):
        M, P0 = moyal3.lie.gen("M"), moyal3.lie.gen("P0")
        assert verify_intertwine(moyal3.twist, [M, moyal3.lie.unit()], [P0]).passed

    def test_adrep_M_P0P1(self, moyal3):
        lie = moyal3.lie
        M, P0, P1 = lie.gen("M"), lie.gen("P0"), lie.gen("P1")
        assert verify_adrep(moyal3.twist, [M, lie.unit()], [P0 * P1]).passed

    def test_smash_iso(self, moyal):
        A = moyal.module
        assert verify_smash_iso(moyal.twist, A, corpus.smash_pairs(A, 5, seed=2)).passed

    def test_compensation(self, moyal):
        A = moyal.module
        S = A.smash
        ops = [S.gen("P0"), S.var("x0") * S.gen("P1")]
        polys = [A.var("x0") * A.var("x1"), A.var("x1")]
        assert verify_compensation(moyal.twist, A, ops, polys).passed


def test_no_cross_check_skipped(jordanian, moyal):
    # high-degree corpus keys must still be compared against the second formula
    for d in (jordanian, moyal):
        pairs = corpus.smash_pairs(d.module, 10, seed=1, max_degree=3) if d.module else None
        if pairs is None:
            els = corpus.uea_elements(d.lie, 20, seed=1, max_degree=3)
            pairs = list(zip(els[::2], els[1::2]))
        assert verify_theorem_cotwist(d.twist, pairs).passed
        assert not d.twist._caches.get("skipped-cross-checks")
