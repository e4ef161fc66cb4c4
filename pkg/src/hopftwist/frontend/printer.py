"""Canonical ASCII printing; output re-parses to the same element."""

from __future__ import annotations

from fractions import Fraction

from ..scalars import GaussianRational, Series, _grlex_key


def _rat(q: Fraction, paren=True):
    if q.denominator == 1:
        return str(q.numerator)
    s = f"{q.numerator}/{q.denominator}"
    return f"({s})" if paren else s


def format_gaussian(c: GaussianRational) -> str:
    if not c.im:
        return _rat(c.re, paren=False)
    if not c.re:
        m = abs(c.im)
        body = "i" if m == 1 else f"{_rat(m)}*i"
        return body if c.im > 0 else "-" + body
    return _complex(c)


def _complex(c):
    m = abs(c.im)
    imag = "i" if m == 1 else f"{_rat(m)}*i"
    return f"({_rat(c.re, paren=False)}{'+' if c.im > 0 else '-'}{imag})"


def _term(coeff: GaussianRational, factors):
    """(sign, body) for coeff * product(factors)."""
    f = "*".join(x for x in factors if x)
    if coeff.im and coeff.re:
        return "+", _complex(coeff) + ("*" + f if f else "")
    if coeff.im:
        sign = "+" if coeff.im > 0 else "-"
        m = abs(coeff.im)
        head = "i" if m == 1 else f"{_rat(m)}*i"
        return sign, head + ("*" + f if f else "")
    sign = "+" if coeff.re > 0 else "-"
    m = abs(coeff.re)
    if m == 1:
        return sign, f if f else "1"
    return sign, _rat(m, paren=bool(f)) + ("*" + f if f else "")


def _join(terms):
    if not terms:
        return "0"
    out = []
    for k, (sign, body) in enumerate(terms):
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _powers(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _param_str(ctx, exps):
    return _powers(ctx.params, exps)


def format_series(s: Series) -> str:
    terms = [_term(c, [_param_str(s.context, e)]) for e, c in s.sorted_terms()]
    return _join(terms)


def _flatten(x, basis_str):
    terms = []
    ctx = x.context
    for key, coeff in x.sorted_items():
        b = basis_str(key)
        for e, c in coeff.sorted_terms():
            terms.append(_term(c, [_param_str(ctx, e), b]))
    return _join(terms)


def print_canonical(x) -> str:
    from ..hopf_core import SmashElement
    from ..lie_pbw import TensorElement, UeaElement
    from ..polynomials import DiffOperator, Polynomial

    if isinstance(x, GaussianRational):
        return format_gaussian(x)
    if isinstance(x, Series):
        return format_series(x)
    if isinstance(x, UeaElement):
        names = x.parent.generators
        return _flatten(x, lambda m: _powers(names, m))
    if isinstance(x, Polynomial):
        names = x.parent.coordinates
        return _flatten(x, lambda e: _powers(names, e))
    if isinstance(x, SmashElement):
        coords = x.parent.ring.coordinates
        gens = x.parent.lie.generators

        def smash_str(key):
            a, m = key
            return "*".join(p for p in (_powers(coords, a), _powers(gens, m)) if p)
        return _flatten(x, smash_str)
    if isinstance(x, DiffOperator):
        coords = x.parent.ring.coordinates
        dnames = tuple("d_" + c for c in coords)

        def diff_str(key):
            a, b = key
            return "*".join(p for p in (_powers(coords, a), _powers(dnames, b)) if p)
        return _flatten(x, diff_str)
    if isinstance(x, TensorElement):
        return _print_tensor(x)
    return str(x)


def _print_tensor(t):
    names = t.algebra.generators
    ctx = t.context
    terms = []
    for key, coeff in t.sorted_items():
        legs = [_powers(names, m) for m in key]
        rest = "@".join(leg or "1" for leg in legs[1:])
        for e, c in coeff.sorted_terms():
            sign, head = _term(c, [_param_str(ctx, e), legs[0]])
            terms.append((sign, head + "@" + rest))
    return _join(terms)
