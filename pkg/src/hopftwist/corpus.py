"""Seeded random corpora for the verification suites.

All generators draw from ``random.Random(seed)`` so a seed fixes the corpus
and therefore the transcript.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .hopf_core import SmashElement
from .lie_pbw import UeaElement, grlex_key
from .polynomials import Polynomial
from .scalars import GaussianRational, Series

_COEFFS = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2), Fraction(3)]


def _monomials(n, max_degree):
    out = [()]
    for _ in range(n):
        out = [m + (k,) for m in out for k in range(max_degree + 1)]
    return sorted((m for m in out if sum(m) <= max_degree), key=grlex_key)


def _coeff(rng, ctx, complex_coeffs=True):
    re = rng.choice(_COEFFS)
    im = rng.choice(_COEFFS) if complex_coeffs and rng.random() < 0.3 else 0
    return Series.const(ctx, GaussianRational(re, im))


def _combo(rng, keys, max_terms, ctx):
    k = rng.randint(1, max_terms)
    picked = rng.sample(keys, min(k, len(keys)))
    return {key: _coeff(rng, ctx) for key in sorted(picked, key=str)}


def uea_elements(lie, count, seed=0, max_degree=2, max_terms=3, include_constant=False):
    rng = random.Random(seed)
    keys = _monomials(lie.n, max_degree)
    if not include_constant:
        keys = [m for m in keys if any(m)]
    return [UeaElement(lie, _combo(rng, keys, max_terms, lie.context)) for _ in range(count)]


def uea_triples(lie, count, seed=0, max_degree=2):
    flat = uea_elements(lie, 3 * count, seed=seed, max_degree=max_degree)
    return [tuple(flat[3 * k:3 * k + 3]) for k in range(count)]


def polynomials(A, count, seed=0, max_degree=2, max_terms=3):
    rng = random.Random(seed)
    keys = _monomials(A.ring.n, max_degree)
    return [Polynomial(A.ring, _combo(rng, keys, max_terms, A.context)) for _ in range(count)]


def poly_pairs(A, count, seed=0, max_degree=2):
    flat = polynomials(A, 2 * count, seed=seed, max_degree=max_degree)
    return [(flat[2 * k], flat[2 * k + 1]) for k in range(count)]


def monomial_pairs(A, max_degree=2):
    """All ordered pairs of coordinate monomials of degree ≤ max_degree."""
    ring = A.ring
    ms = [ring.monomial(e) for e in ring.monomials(max_degree)]
    return [(a, b) for a in ms for b in ms]


def smash_keys(A, max_degree):
    """Normal-form keys (coordinate exps, PBW exps) of total degree ≤ max_degree."""
    out = []
    for a in _monomials(A.ring.n, max_degree):
        for m in _monomials(A.lie.n, max_degree - sum(a)):
            out.append((a, m))
    return out


def smash_elements(A, count, seed=0, max_degree=2, max_terms=3):
    rng = random.Random(seed)
    keys = [k for k in smash_keys(A, max_degree) if any(k[0]) or any(k[1])]
    return [SmashElement(A.smash, _combo(rng, keys, max_terms, A.context)) for _ in range(count)]


def smash_pairs(A, count, seed=0, max_degree=2):
    flat = smash_elements(A, 2 * count, seed=seed, max_degree=max_degree)
    return [(flat[2 * k], flat[2 * k + 1]) for k in range(count)]
