"""With F = 1@1 every twisted object must reduce to its classical counterpart."""

import io

import pytest

from hopftwist import corpus
from hopftwist.braided_lie import BracketTable, twist_bracket
from hopftwist.frontend.cli import main
from hopftwist.frontend.suites import SUITES
from hopftwist.hopf_core import adjoint, antipode, coproduct
from hopftwist.lie_pbw import unit_tensor
from hopftwist.twist_engine import phi, phi_inv, star_product, twisted_R


@pytest.fixture
def hs(trivial):
    lie = trivial.lie
    return [lie.gen(i) for i in range(lie.n)] + corpus.uea_elements(lie, 6, seed=1, max_degree=3)


def test_twist_is_unit(trivial):
    assert trivial.twist.F == unit_tensor(trivial.lie, 2)
    assert twisted_R(trivial.twist) == unit_tensor(trivial.lie, 2)


def test_hopf_structure_unchanged(trivial, hs):
    t = trivial.twist
    for h in hs:
        assert t.coproduct(h) == coproduct(h)
        assert t.antipode(h) == antipode(h)


def test_adjoint_unchanged(trivial, hs):
    t = trivial.twist
    xs = corpus.smash_elements(trivial.module, 4, seed=2, max_degree=2)
    for h in hs[:5]:
        for x in xs:
            assert t.adjoint(h, x) == adjoint(h, x)


def test_star_is_product(trivial):
    t, A = trivial.twist, trivial.module
    for a, b in corpus.smash_pairs(A, 8, seed=3, max_degree=2):
        assert star_product(t, None, a, b) == a * b


def test_phi_is_identity(trivial):
    t = trivial.twist
    for x in corpus.smash_elements(trivial.module, 8, seed=4, max_degree=2):
        assert phi(t, x) == x
        assert phi_inv(t, x) == x


def test_bracket_unchanged(trivial):
    base = BracketTable.from_presentation(trivial.lie)
    tw = twist_bracket(trivial.twist, base)
    n = len(base.basis)
    assert all(tw.entry(i, j) == base.entry(i, j) for i in range(n) for j in range(n))


def _transcript(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out, err=io.StringIO())
    return code, out.getvalue()


def test_jacobi_transcript_twisted_equals_classical():
    code, out = _transcript("verify", "trivial", "--suite", "jacobi")
    assert code == 0
    items = [line[6:] for line in out.splitlines() if line.startswith("[")]
    classical = [s.replace("classical: ", "", 1) for s in items if "classical: " in s]
    twisted = [s.replace("twisted: ", "", 1) for s in items if "twisted: " in s]
    assert classical == twisted


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_and_is_stable(suite):
    first = _transcript("verify", "trivial", "--suite", suite, "--order", "2")
    assert first[0] == 0, first[1]
    assert _transcript("verify", "trivial", "--suite", suite, "--order", "2") == first
