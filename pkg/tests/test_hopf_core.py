import pytest

from hopftwist import corpus
from hopftwist.errors import UsageError, ValidationError
from hopftwist.hopf_core import (
    ActionSpec, PolyModuleAlgebra, act, adjoint, adjoint_commutators, adjoint_coproduct, antipode,
    coproduct, counit, iterated_coproduct, module_algebra_check,
)
from hopftwist.lie_pbw import tensor, unit_tensor
from hopftwist.polynomials import DiffOperator, DiffRing
from hopftwist.scalars import I


@pytest.fixture
def gens(moyal):
    lie = moyal.lie
    return lie.gen("M"), lie.gen("P0"), lie.gen("P1")


class TestHopf:
    def test_primitive_coproduct(self, moyal, gens):
        lie = moyal.lie
        _, P0, _ = gens
        assert coproduct(P0) == tensor(lie, P0, lie.unit()) + tensor(lie, lie.unit(), P0)

    def test_coproduct_unit(self, moyal):
        assert coproduct(moyal.lie.unit()) == unit_tensor(moyal.lie, 2)

    def test_coproduct_product(self, moyal, gens):
        # oracle: Delta(P0) Delta(P1) multiplied out by hand
        lie = moyal.lie
        _, P0, P1 = gens
        one = lie.unit()
        expect = (tensor(lie, P0 * P1, one) + tensor(lie, P0, P1) + tensor(lie, P1, P0)
                  + tensor(lie, one, P0 * P1))
        assert coproduct(P0 * P1) == expect

    def test_counit(self, moyal, gens):
        M, P0, _ = gens
        ctx = moyal.context
        assert counit(P0) == ctx.zero()
        assert counit(moyal.lie.unit()) == ctx.one()
        assert counit(moyal.lie.unit().scale(3) + M * P0) == ctx.const(3)

    def test_antipode(self, moyal, gens):
        M, P0, P1 = gens
        assert antipode(P0) == -P0
        assert antipode(moyal.lie.unit()) == moyal.lie.unit()
        assert antipode(M * P0) == M * P0 - P1

    def test_antipode_axiom(self, moyal):
        lie = moyal.lie
        for h in corpus.uea_elements(lie, 10, seed=2, max_degree=3):
            total = lie.zero()
            for (a, b), c in coproduct(h).terms.items():
                total = total + (antipode(lie.monomial(a)) * lie.monomial(b)).scale(c)
            assert total == lie.unit().scale(counit(h))

    def test_coassociative(self, moyal):
        lie = moyal.lie
        from hopftwist.lie_pbw import apply_map_leg

        for h in corpus.uea_elements(lie, 6, seed=4, max_degree=3):
            D = coproduct(h)
            assert apply_map_leg(D, 1, coproduct) == apply_map_leg(D, 2, coproduct)
            assert apply_map_leg(D, 1, coproduct) == iterated_coproduct(h, 3)


class TestAdjoint:
    def test_ad_unit(self, moyal, gens):
        M, P0, _ = gens
        assert adjoint(moyal.lie.unit(), M * P0) == M * P0

    def test_ad_M_P0(self, gens):
        M, P0, P1 = gens
        assert adjoint(M, P0) == P1

    def test_momenta_commute(self, gens):
        _, P0, P1 = gens
        assert not adjoint(P0, P1)

    def test_two_routes_agree(self, moyal):
        lie = moyal.lie
        S = moyal.module.smash
        hs = corpus.uea_elements(lie, 6, seed=1, max_degree=3)
        xs = corpus.smash_elements(moyal.module, 6, seed=2, max_degree=2)
        for h in hs:
            for x in xs + [S.from_uea(u) for u in hs[:3]]:
                assert adjoint_commutators(h, x) == adjoint_coproduct(h, x)

    def test_polynomial_rejected(self, moyal):
        with pytest.raises(UsageError):
            adjoint(moyal.lie.gen("M"), moyal.module.var("x0"))


class TestModuleAlgebra:
    def test_momentum_acts_as_i_d(self, moyal):
        A = moyal.module
        x0 = A.var("x0")
        assert act(A, moyal.lie.gen("P0"), x0) == A.ring.one().scale(I)

    def test_unit_action(self, moyal):
        A = moyal.module
        a = A.var("x0") * A.var("x1")
        assert act(A, moyal.lie.unit(), a) == a

    def test_leibniz(self, moyal):
        A = moyal.module
        assert act(A, moyal.lie.gen("P0"), A.var("x0") * A.var("x1")) == A.var("x1").scale(I)

    def test_module_algebra_corpus(self, moyal):
        A = moyal.module
        hs = corpus.uea_elements(moyal.lie, 4, seed=0, max_degree=2)
        polys = corpus.polynomials(A, 4, seed=1, max_degree=3)
        assert module_algebra_check(A, hs, polys).passed

    def test_epsilon_action_passes(self, moyal):
        A = PolyModuleAlgebra(moyal.lie, ["x0", "x1"])
        hs = corpus.uea_elements(moyal.lie, 3, seed=0, max_degree=2)
        polys = corpus.polynomials(A, 3, seed=1, max_degree=2)
        assert module_algebra_check(A, hs, polys).passed

    def test_corrupted_action(self, moyal):
        ring = moyal.module.ring
        D = DiffRing(ring)
        bad = dict(zip(moyal.lie.generators, moyal.module.action.operators))
        bad["P0"] = D.multiplication(ring.var("x0"))
        with pytest.raises(ValidationError):
            ActionSpec(moyal.lie, ring, bad)
        A = PolyModuleAlgebra(moyal.lie, action=ActionSpec(moyal.lie, ring, bad, validate=False))
        x0 = A.var("x0")
        rep = module_algebra_check(A, [moyal.lie.gen("P0")], [x0])
        assert not rep.passed
        assert "x0" in rep.counterexample.label

    def test_second_order_action_rejected(self, moyal):
        ring = moyal.module.ring
        D = DiffRing(ring)
        op = D.partial("x0") * D.partial("x0")
        assert isinstance(op, DiffOperator)
        with pytest.raises(ValidationError):
            ActionSpec(moyal.lie, ring, {"P0": op})


class TestSmash:
    def test_cross_relation(self, moyal):
        S = moyal.module.smash
        P0, x0 = S.gen("P0"), S.var("x0")
        assert P0 * x0 == S.one().scale(I) + x0 * P0

    def test_one_step(self, moyal):
        S = moyal.module.smash
        P0, x0 = S.gen("P0"), S.var("x0")
        assert (x0 * P0) * x0 == x0.scale(I) + x0 * x0 * P0

    def test_coordinates_commute(self, moyal):
        S = moyal.module.smash
        x0, x1 = S.var("x0"), S.var("x1")
        assert x0 * x1 == x1 * x0
        assert (x0 * x1).is_poly()

    def test_associative(self, moyal):
        for a, b in corpus.smash_pairs(moyal.module, 6, seed=3, max_degree=2):
            c = a + b
            assert (a * b) * c == a * (b * c)

    def test_smash_acts_as_operators(self, moyal):
        # E = A#U(g) acts on A; the action must be an algebra map
        A = moyal.module
        polys = corpus.polynomials(A, 3, seed=5, max_degree=2)
        for u, v in corpus.smash_pairs(A, 5, seed=6, max_degree=2):
            for p in polys:
                assert (u * v).apply(p) == u.apply(v.apply(p))
