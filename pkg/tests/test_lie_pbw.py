import random

import pytest

from hopftwist.errors import ResourceError, UsageError
from hopftwist.hopf_core import antipode, coproduct, counit
from hopftwist.lie_pbw import (
    LiePresentation, apply_map_leg, embed_legs, monomial_word, normal_form_word, tensor,
    tensor_mul, unit_tensor, validate_presentation,
)
from hopftwist.scalars import DeformationContext

# Faithful 3x3 representation of 2D Poincare used as an independent oracle:
# P0 = E02, P1 = E12, M = E01 + E10 gives [M,P0] = P1 and [M,P1] = P0.
REP = {
    "M": [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    "P0": [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    "P1": [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
}
ID3 = [[int(i == j) for j in range(3)] for i in range(3)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def matadd(a, b, c=1):
    return [[a[i][j] + c * b[i][j] for j in range(3)] for i in range(3)]


def rep_word(word):
    out = ID3
    for g in word:
        out = matmul(out, REP[g])
    return out


def rep_element(x):
    """Image of a UeaElement with rational constant coefficients."""
    lie = x.algebra
    total = [[0] * 3 for _ in range(3)]
    for m, c in x.terms.items():
        word = [lie.generators[k] for k in monomial_word(m)]
        total = matadd(total, rep_word(word), c.constant_term().re)
    return total


def poincare(N=2):
    ctx = DeformationContext([], N)
    return LiePresentation(["M", "P0", "P1"], {("M", "P0"): {"P1": 1}, ("M", "P1"): {"P0": 1}}, ctx)


@pytest.fixture
def lie():
    return poincare()


def test_poincare_valid(lie):
    assert validate_presentation(lie).valid


def test_abelian_valid():
    ctx = DeformationContext([], 1)
    assert validate_presentation(LiePresentation(["a", "b"], {}, ctx)).valid


def test_sign_flip_invalid():
    # sl2, then flip the sign of [h, f]
    ctx = DeformationContext([], 1)
    good = {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}}
    assert validate_presentation(LiePresentation(["h", "e", "f"], good, ctx)).valid
    bad = dict(good)
    bad[("h", "f")] = {"f": 2}
    rep = validate_presentation(LiePresentation(["h", "e", "f"], bad, ctx))
    assert not rep.valid
    assert ("jacobi", "h", "e", "f") in rep.violations


def test_antisymmetry_violation_named():
    ctx = DeformationContext([], 1)
    p = LiePresentation(["a", "b"], {("a", "b"): {"a": 1}, ("b", "a"): {"a": 1}}, ctx)
    rep = validate_presentation(p)
    assert not rep.valid
    assert rep.violations[0][0] == "antisymmetry"


def test_single_rewrite(lie):
    P0, M, P1 = lie.gen("P0"), lie.gen("M"), lie.gen("P1")
    assert P0 * M == M * P0 - P1


def test_unit_and_ordered(lie):
    M = lie.gen("M")
    assert lie.unit() * M == M
    assert (M * M).terms == {(2, 0, 0): lie.context.one()}


def test_algebra_mismatch(lie):
    other = poincare(3)
    with pytest.raises(UsageError):
        lie.gen("M") * other.gen("M")


def test_degree_cap():
    p = poincare()
    p.max_degree = 4
    P1 = p.gen("P1")
    with pytest.raises(ResourceError):
        P1 * P1 * P1 * P1 * P1


def test_normal_form_matches_representation(lie):
    rng = random.Random(3)
    for _ in range(40):
        word = [rng.choice(["M", "P0", "P1"]) for _ in range(rng.randint(1, 5))]
        x = lie.unit()
        for g in word:
            x = x * lie.gen(g)
        assert rep_element(x) == rep_word(word), word


@pytest.mark.parametrize("strategy", ["leftmost", "rightmost", "random"])
def test_rewriter_agrees_with_mono_mul(lie, strategy):
    rng = random.Random(11)
    for _ in range(25):
        word = [rng.choice(lie.generators) for _ in range(rng.randint(1, 6))]
        x = lie.unit()
        for g in word:
            x = x * lie.gen(g)
        assert normal_form_word(lie, word, strategy=strategy, seed=5) == x


class TestTensors:
    def test_unit_times_F(self, moyal):
        F = moyal.twist.F
        assert tensor_mul(unit_tensor(moyal.lie, 2), F) == F

    def test_commuting_legs(self, lie):
        P0, P1 = lie.gen("P0"), lie.gen("P1")
        t = tensor(lie, P0, P1)
        assert tensor_mul(t, t) == tensor(lie, P0 * P0, P1 * P1)

    def test_ordered_leg(self, lie):
        M, P0, one = lie.gen("M"), lie.gen("P0"), lie.unit()
        assert tensor_mul(tensor(lie, M, one), tensor(lie, P0, one)) == tensor(lie, M * P0, one)

    def test_arity_mismatch(self, lie):
        with pytest.raises(UsageError):
            tensor_mul(unit_tensor(lie, 2), unit_tensor(lie, 3))

    def test_embed_12(self, moyal):
        F = moyal.twist.F
        F12 = embed_legs(F, 3, [1, 2])
        assert F12 == tensor_mul(F12, unit_tensor(moyal.lie, 3))
        assert all(k[2] == (0, 0, 0) for k in F12.terms)

    def test_embed_flip(self, lie):
        P0, P1 = lie.gen("P0"), lie.gen("P1")
        assert embed_legs(tensor(lie, P0, P1), 2, [2, 1]) == tensor(lie, P1, P0)

    def test_embed_13(self, lie):
        P0, P1 = lie.gen("P0"), lie.gen("P1")
        assert embed_legs(tensor(lie, P0, P1), 3, [1, 3]) == tensor(lie, P0, lie.unit(), P1)

    @pytest.mark.parametrize("legs", [[1, 1], [0, 2], [1, 4]])
    def test_embed_invalid(self, lie, legs):
        with pytest.raises(UsageError):
            embed_legs(unit_tensor(lie, 2), 3, legs)

    def test_counit_leg_of_twist(self, moyal):
        one = moyal.lie.unit()
        assert apply_map_leg(moyal.twist.F, 1, counit) == one

    def test_coproduct_leg_of_unit(self, lie):
        assert apply_map_leg(unit_tensor(lie, 2), 1, coproduct) == unit_tensor(lie, 3)

    def test_antipode_leg(self, lie):
        P0, P1 = lie.gen("P0"), lie.gen("P1")
        assert apply_map_leg(tensor(lie, P0, P1), 1, antipode) == tensor(lie, -P0, P1)

    def test_invalid_leg(self, lie):
        with pytest.raises(UsageError):
            apply_map_leg(unit_tensor(lie, 2), 3, antipode)
