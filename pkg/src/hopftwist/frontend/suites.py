"""Named verification suites run by ``hopftwist verify``."""

from __future__ import annotations

from itertools import combinations

from .. import corpus
from ..braided_lie import (
    BracketTable, check_braided_jacobi, current_algebra, lie_membership, twist_bracket,
    verify_hopf_smash_iso, verify_uea_cotwist,
)
from ..errors import UsageError
from ..hopf_core import momentum_partials
from ..reports import Report
from ..twist_engine import (
    phi, phi_inv, verify_adrep, verify_compensation, verify_intertwine, verify_smash_iso,
    verify_theorem_cotwist, verify_twist_axioms,
)
from ..qvector_fields import verify_der_closure, verify_der_stability, check_first_order


def _need_module(d):
    if d.module is None:
        raise UsageError(f"{d.name} declares no module algebra; this suite needs one")
    return d.module


def _need_twist(d):
    if d.twist is None:
        raise UsageError(f"{d.name} declares no twist")
    return d.twist


def _elements(d, count, seed, max_degree):
    """Corpus in A⋊H when a module exists, else in U(g)."""
    if d.module is not None:
        return corpus.smash_elements(d.module, count, seed=seed, max_degree=max_degree)
    return corpus.uea_elements(d.lie, count, seed=seed, max_degree=max_degree)


def _pairs(d, count, seed, max_degree):
    flat = _elements(d, 2 * count, seed, max_degree)
    return [(flat[2 * k], flat[2 * k + 1]) for k in range(count)]


def _hopf_corpus(d, count, seed):
    lie = d.lie
    gens = [lie.gen(i) for i in range(lie.n)]
    return gens + corpus.uea_elements(lie, max(0, count - len(gens)), seed=seed, max_degree=2)


def _operators(d):
    """Generator actions, momentum partials and one second-order operator."""
    A = _need_module(d)
    S = A.smash
    ops = []
    partials = momentum_partials(A)
    for q in sorted(partials):
        ops.append(partials[q])
    for g in d.lie.generators:
        X = S.lift(A.action.operator(g))
        if X and X not in ops:
            ops.append(X)
    if len(partials) >= 2:
        ops.append(partials[0] * partials[1])
    return ops


def theorem_cotwist(d, seed, max_degree, count=50):
    return verify_theorem_cotwist(_need_twist(d), _pairs(d, count, seed, max_degree), seed=seed)


def intertwine(d, seed, max_degree, count=6):
    hs = corpus.uea_elements(d.lie, 5, seed=seed, max_degree=2)
    return verify_intertwine(_need_twist(d), hs, _elements(d, count, seed + 1, max_degree), seed=seed)


def adrep(d, seed, max_degree, count=6):
    hs = corpus.uea_elements(d.lie, 5, seed=seed, max_degree=2)
    return verify_adrep(_need_twist(d), hs, _elements(d, count, seed + 1, max_degree), seed=seed)


def smash_iso(d, seed, max_degree, count=20):
    A = _need_module(d)
    pairs = corpus.smash_pairs(A, count, seed=seed, max_degree=max_degree)
    return verify_smash_iso(_need_twist(d), A, pairs, seed=seed)


def compensation(d, seed, max_degree, count=8):
    A = _need_module(d)
    polys = corpus.polynomials(A, count, seed=seed, max_degree=max_degree)
    return verify_compensation(_need_twist(d), A, _operators(d), polys, seed=seed)


def jacobi(d, seed, max_degree):
    t = _need_twist(d)
    table = BracketTable.from_presentation(d.lie)
    rep = Report("jacobi", order=d.order, seed=seed, corpus="all generator triples")
    rep.extend(check_braided_jacobi(table), prefix="classical: ")
    rep.extend(check_braided_jacobi(twist_bracket(t, table, verify=False)), prefix="twisted: ")
    return rep


def uea_cotwist(d, seed, max_degree):
    return verify_uea_cotwist(_need_twist(d), seed=seed)


def hopf_smash_iso(d, seed, max_degree):
    return verify_hopf_smash_iso(_need_twist(d), A=d.module, seed=seed)


def membership(d, seed, max_degree):
    t = _need_twist(d)
    lie = d.lie
    gens = [lie.gen(i) for i in range(lie.n)]
    hs = corpus.uea_elements(lie, 3, seed=seed, max_degree=2)
    rep = Report("lie-membership", order=d.order, seed=seed,
                 corpus=f"{len(gens)} generators, {len(hs)} Hopf elements")
    for g in gens:
        ok, res = lie_membership(None, g)
        rep.add(f"{g} in Lie(H)", ok, "" if ok else f"residual: {res}")
        y = phi(t, g)
        ok, res = lie_membership(t, y)
        rep.add(f"phi({g}) = {y} in Lie(H~)", ok, "" if ok else f"residual: {res}")
        rep.check_equal(f"phi^-1(phi({g})) = {g}", phi_inv(t, y), g)
        for h in hs:
            z = t.adjoint(h, y)
            ok, res = lie_membership(t, z)
            rep.add(f"ad~({h})phi({g}) in Lie(H~)", ok, "" if ok else f"residual: {res}")
    return rep


def der_stability(d, seed, max_degree):
    A = _need_module(d)
    pairs = corpus.monomial_pairs(A, min(max_degree, 2))
    return verify_der_stability(A, _need_twist(d), _operators(d), pairs, seed=seed)


def der_closure(d, seed, max_degree):
    A = _need_module(d)
    t = _need_twist(d)
    pairs = corpus.monomial_pairs(A, min(max_degree, 2))
    first = [X for X in _operators(d)
             if check_first_order(A, None, X, pairs).passed]
    rep = Report("der-closure", order=d.order, seed=seed,
                 corpus=f"{len(first)} first-order operators, {len(pairs)} pairs")
    for X, Y in combinations(first, 2):
        for tw in (None, t):
            r, Z = verify_der_closure(A, X, Y, pairs, t=tw)
            label = "twisted" if tw is not None else "untwisted"
            rep.add(f"[{X}, {Y}]_R {label} = {Z} is first order", r.passed,
                    "" if r.passed else r.counterexample.label)
    return rep


def current(d, seed, max_degree):
    A = _need_module(d)
    t = _need_twist(d)
    g = BracketTable.from_presentation(d.lie)
    rep = Report("current", order=d.order, seed=seed, corpus="coordinate degree <= 1")
    rep.extend(check_braided_jacobi(current_algebra(A, g)), prefix="untwisted: ")
    rep.extend(check_braided_jacobi(current_algebra(A, g, t)), prefix="twisted: ")
    return rep


def twist_axioms(d, seed, max_degree):
    return verify_twist_axioms(_need_twist(d), _hopf_corpus(d, 8, seed), seed=seed)


SUITES = {
    "theorem-cotwist": theorem_cotwist,
    "intertwine": intertwine,
    "adrep": adrep,
    "smash-iso": smash_iso,
    "compensation": compensation,
    "jacobi": jacobi,
    "uea-cotwist": uea_cotwist,
    "hopf-smash-iso": hopf_smash_iso,
    "lie-membership": membership,
    "der-stability": der_stability,
    "der-closure": der_closure,
    "current": current,
    "twist-axioms": twist_axioms,
}


def run_suite(name, d, seed=0, max_degree=3):
    try:
        fn = SUITES[name]
    except KeyError:
        raise UsageError(f"unknown suite {name!r}") from None
    return fn(d, seed, max_degree)
