"""Lie algebras by structure constants and PBW normal-form arithmetic in U(g)^{⊗k}."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

from .errors import DomainError, ResourceError, UsageError, ValidationError
from .linear import LinearElement, accumulate
from .scalars import GaussianRational, Series

DEFAULT_MAX_WORD_DEGREE = 12


def monomial_word(mono):
    """Expand an exponent vector into its ordered generator-index word."""
    return tuple(i for i, e in enumerate(mono) for _ in range(e))


def word_monomial(word, n):
    exps = [0] * n
    for i in word:
        exps[i] += 1
    return tuple(exps)


def grlex_key(mono):
    return (sum(mono), tuple(-e for e in mono))


class ValidationReport:
    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def __repr__(self):
        return f"ValidationReport(valid={self.valid}, violations={self.violations})"


class LiePresentation:
    """A finite-dimensional Lie algebra g, generators listed in PBW order.

    ``brackets`` maps a pair of generator names (or indices) to a mapping
    ``{generator: coefficient}`` giving ``[g_i, g_j]``. Missing mirrored pairs
    are filled by antisymmetry; explicitly given pairs are kept verbatim so
    that :func:`validate_presentation` can reject inconsistent input.
    """

    def __init__(self, generators, brackets, context, max_degree=DEFAULT_MAX_WORD_DEGREE):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise UsageError("duplicate generator name")
        self.context = context
        self.max_degree = max_degree
        self.n = len(self.generators)
        self._index = {g: k for k, g in enumerate(self.generators)}
        given = {}
        for (a, b), rhs in brackets.items():
            i, j = self.index(a), self.index(b)
            vec = {}
            for k, c in rhs.items():
                c = Series.const(context, c)
                if c.terms:
                    vec[self.index(k)] = c
            given[(i, j)] = vec
        c = {}
        for i in range(self.n):
            for j in range(self.n):
                if (i, j) in given:
                    c[(i, j)] = given[(i, j)]
                elif (j, i) in given:
                    c[(i, j)] = {k: -v for k, v in given[(j, i)].items()}
                else:
                    c[(i, j)] = {}
        self._c = {key: tuple(sorted(v.items())) for key, v in c.items()}
        self._one = Series.const(context, 1)
        self._left_cache = {}
        self._mono_cache = {}
        self._valid = None
        self._tensor_spaces = {}

    def index(self, name):
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise UsageError(f"generator index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown Lie generator {name!r}") from None

    def structure_constant(self, i, j, k) -> Series:
        for kk, c in self._c[(self.index(i), self.index(j))]:
            if kk == self.index(k):
                return c
        return self.context.zero()

    def bracket_vector(self, i, j):
        return dict(self._c[(self.index(i), self.index(j))])

    def is_abelian(self):
        return all(not v for v in self._c.values())

    def require_valid(self):
        if self._valid is None:
            self._valid = validate_presentation(self)
        if not self._valid.valid:
            raise ValidationError("Lie presentation is invalid", self._valid.violations)

    def with_context(self, context):
        """Same presentation re-expressed over another truncation order."""
        br = {}
        for (i, j), vec in self._c.items():
            br[(i, j)] = {k: Series(context, dict(c.terms)) for k, c in vec}
        return LiePresentation(self.generators, br, context, self.max_degree)

    # elements
    def unit(self):
        return UeaElement(self, {(0,) * self.n: self._one}, _trusted=True)

    def zero(self):
        return UeaElement(self, {}, _trusted=True)

    def gen(self, name):
        e = [0] * self.n
        e[self.index(name)] = 1
        return UeaElement(self, {tuple(e): self._one}, _trusted=True)

    def monomial(self, mono, coeff=1):
        return UeaElement(self, {tuple(mono): Series.const(self.context, coeff)})

    def tensor_space(self, arity):
        sp = self._tensor_spaces.get(arity)
        if sp is None:
            sp = self._tensor_spaces[arity] = TensorSpace(self, arity)
        return sp

    # PBW straightening
    def _left_gen(self, j, mono):
        """Normal form of g_j * mono as {monomial: Series}."""
        key = (j, mono)
        hit = self._left_cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        i = next((k for k in range(n) if mono[k]), n)
        if j <= i:
            if sum(mono) + 1 > self.max_degree:
                raise ResourceError(
                    f"PBW word degree exceeds the configured bound {self.max_degree}")
            new = list(mono)
            new[j] += 1
            res = {tuple(new): self._one}
        else:
            rest = list(mono)
            rest[i] -= 1
            rest = tuple(rest)
            res = {}
            # g_j g_i rest = g_i (g_j rest) + [g_j, g_i] rest
            for m, c in self._left_gen(j, rest).items():
                for m2, c2 in self._left_gen(i, m).items():
                    accumulate(res, m2, c * c2)
            for k, ck in self._c[(j, i)]:
                for m, c in self._left_gen(k, rest).items():
                    accumulate(res, m, ck * c)
        self._left_cache[key] = res
        return res

    def mono_mul(self, m1, m2):
        """Normal form of the product of two PBW monomials."""
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        first2 = next((k for k in range(self.n) if m2[k]), self.n)
        last1 = max((k for k in range(self.n) if m1[k]), default=-1)
        if last1 <= first2:
            m = tuple(a + b for a, b in zip(m1, m2))
            if sum(m) > self.max_degree:
                raise ResourceError(
                    f"PBW word degree exceeds the configured bound {self.max_degree}")
            res = {m: self._one}
        else:
            res = {m2: self._one}
            for letter in reversed(monomial_word(m1)):
                nxt = {}
                for m, c in res.items():
                    for m3, c3 in self._left_gen(letter, m).items():
                        accumulate(nxt, m3, c * c3)
                res = nxt
        self._mono_cache[key] = res
        return res


def validate_presentation(p: LiePresentation) -> ValidationReport:
    """Check antisymmetry and the classical Jacobi identity exactly."""
    violations = []
    n = p.n
    zero = p.context.zero()
    c = {key: dict(v) for key, v in p._c.items()}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                a = c[(i, j)].get(k, zero)
                b = c[(j, i)].get(k, zero)
                if a + b:
                    violations.append(
                        ("antisymmetry", p.generators[i], p.generators[j], p.generators[k]))
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            total = zero
            for m in range(n):
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    cxy = c[(x, y)].get(m)
                    if cxy is None:
                        continue
                    cmz = c[(m, z)].get(l)
                    if cmz is not None:
                        total = total + cxy * cmz
            if total:
                violations.append(
                    ("jacobi", p.generators[i], p.generators[j], p.generators[k]))
                break
    return ValidationReport(violations)


class UeaElement(LinearElement):
    """Element of U(g) in PBW normal form: ``{exponent tuple: Series}``."""

    __slots__ = ()

    @staticmethod
    def sort_key(mono):
        return grlex_key(mono)

    @property
    def algebra(self):
        return self.parent

    def scalar(self, value):
        p = self.parent
        return UeaElement(p, {(0,) * p.n: Series.const(p.context, value)})

    def __mul__(self, other):
        if isinstance(other, UeaElement):
            return uea_mul(self, other)
        if isinstance(other, LinearElement):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k):
        result = self.parent.unit()
        for _ in range(k):
            result = result * self
        return result

    def counit(self):
        return self.terms.get((0,) * self.parent.n, self.context.zero())

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)


def uea_mul(a: UeaElement, b: UeaElement) -> UeaElement:
    a._compatible(b)
    p = a.parent
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            cab = ca * cb
            if not cab.terms:
                continue
            for m, c in p.mono_mul(ma, mb).items():
                accumulate(out, m, cab * c)
    return UeaElement(p, out, _trusted=True)


def uea_mul_bounded(a: UeaElement, b: UeaElement, max_order: int) -> UeaElement:
    """a*b keeping only deformation orders ≤ max_order.

    Pairs of terms whose orders already exceed the bound are never
    multiplied, which keeps intermediate PBW words short.
    """
    a._compatible(b)
    p = a.parent
    out = {}
    for ma, ca in a.terms.items():
        da = ca.min_degree()
        for mb, cb in b.terms.items():
            if da + cb.min_degree() > max_order:
                continue
            cab = ca * cb
            if not cab.terms:
                continue
            for m, c in p.mono_mul(ma, mb).items():
                accumulate(out, m, cab * c)
    return UeaElement(p, out, _trusted=True).truncated(max_order)


def normal_form_word(p: LiePresentation, word, strategy="leftmost", seed=0, budget=100_000):
    """Straighten a word of generators by explicit adjacent swaps.

    Independent of :meth:`LiePresentation.mono_mul`; ``strategy`` picks which
    out-of-order pair is rewritten next ('leftmost', 'rightmost', 'random').
    Raises :class:`ResourceError` if ``budget`` swaps do not suffice.
    """
    word = tuple(p.index(g) for g in word)
    rng = random.Random(seed)
    pending = {word: p._one}
    done = {}
    steps = 0
    while pending:
        w = min(pending, key=lambda x: (len(x), x)) if strategy != "random" else \
            sorted(pending, key=lambda x: (len(x), x))[rng.randrange(len(pending))]
        c = pending.pop(w)
        inversions = [q for q in range(len(w) - 1) if w[q] > w[q + 1]]
        if not inversions:
            accumulate(done, w, c)
            continue
        steps += 1
        if steps > budget:
            raise ResourceError("rewrite step budget exhausted")
        if strategy == "leftmost":
            q = inversions[0]
        elif strategy == "rightmost":
            q = inversions[-1]
        else:
            q = inversions[rng.randrange(len(inversions))]
        j, i = w[q], w[q + 1]
        swapped = w[:q] + (i, j) + w[q + 2:]
        accumulate(pending, swapped, c)
        for k, ck in p._c[(j, i)]:
            accumulate(pending, w[:q] + (k,) + w[q + 2:], c * ck)
    out = {}
    for w, c in done.items():
        accumulate(out, word_monomial(w, p.n), c)
    return UeaElement(p, out, _trusted=True)


class TensorSpace:
    """Parent of arity-k tensors over one Lie presentation."""

    def __init__(self, lie, arity):
        if arity < 1:
            raise UsageError("tensor arity must be at least 1")
        self.lie = lie
        self.arity = arity
        self.context = lie.context

    def __eq__(self, other):
        return isinstance(other, TensorSpace) and other.arity == self.arity and \
            (other.lie is self.lie)

    def __hash__(self):
        return hash((id(self.lie), self.arity))


class TensorElement(LinearElement):
    """Element of U(g)^{⊗k}: ``{(mono_1, ..., mono_k): Series}``."""

    __slots__ = ()

    @staticmethod
    def sort_key(key):
        return (sum(sum(m) for m in key), tuple(grlex_key(m) for m in key))

    @property
    def arity(self):
        return self.parent.arity

    @property
    def algebra(self):
        return self.parent.lie

    def scalar(self, value):
        sp = self.parent
        unit = ((0,) * sp.lie.n,) * sp.arity
        return TensorElement(sp, {unit: Series.const(sp.context, value)})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        if isinstance(other, LinearElement):
            return NotImplemented
        return self.scale(other)

    def legs(self, key):
        return [UeaElement(self.algebra, {m: self.context.one()}, _trusted=True) for m in key]

    def flip(self):
        return embed_legs(self, 2, [2, 1])


def tensor(lie, *legs, coeff=1):
    """Pure tensor leg_1 ⊗ ... ⊗ leg_k of UeaElements."""
    sp = lie.tensor_space(len(legs))
    out = {(): Series.const(lie.context, coeff)}
    for leg in legs:
        nxt = {}
        for key, c in out.items():
            for m, cm in leg.terms.items():
                accumulate(nxt, key + (m,), c * cm)
        out = nxt
    return TensorElement(sp, out, _trusted=True)


def unit_tensor(lie, arity):
    return tensor(lie, *([lie.unit()] * arity))


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    if not isinstance(b, TensorElement) or a.arity != b.arity:
        raise UsageError("tensor arity mismatch")
    a._compatible(b)
    lie = a.algebra
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            cab = ca * cb
            if not cab.terms:
                continue
            partial = {(): cab}
            for ma, mb in zip(ka, kb):
                prod = lie.mono_mul(ma, mb)
                nxt = {}
                for key, c in partial.items():
                    for m, cm in prod.items():
                        v = c * cm
                        if v.terms:
                            accumulate(nxt, key + (m,), v)
                partial = nxt
            for key, c in partial.items():
                accumulate(out, key, c)
    return TensorElement(a.parent, out, _trusted=True)


def outer(a, b) -> TensorElement:
    """Tensor product a ⊗ b of UeaElements / TensorElements (arities add)."""
    ka = a.terms if isinstance(a, TensorElement) else {(m,): c for m, c in a.terms.items()}
    kb = b.terms if isinstance(b, TensorElement) else {(m,): c for m, c in b.terms.items()}
    ar = (a.arity if isinstance(a, TensorElement) else 1) + \
        (b.arity if isinstance(b, TensorElement) else 1)
    lie = a.algebra
    out = {}
    for x, cx in ka.items():
        for y, cy in kb.items():
            c = cx * cy
            if c.terms:
                accumulate(out, x + y, c)
    return TensorElement(lie.tensor_space(ar), out, _trusted=True)


def embed_legs(a: TensorElement, target_arity: int, legs) -> TensorElement:
    """Place ``a`` into the listed (1-based) legs of an arity-``target_arity`` tensor.

    The order of ``legs`` is meaningful: ``embed_legs(F, 2, [2, 1])`` is F_21.
    """
    legs = list(legs)
    if isinstance(a, UeaElement):
        a = tensor(a.algebra, a)
    if len(legs) != a.arity:
        raise UsageError(f"need {a.arity} leg positions, got {len(legs)}")
    if len(set(legs)) != len(legs) or any(not 1 <= q <= target_arity for q in legs):
        raise UsageError(f"invalid leg positions {legs} for arity {target_arity}")
    lie = a.algebra
    unit = (0,) * lie.n
    out = {}
    for key, c in a.terms.items():
        new = [unit] * target_arity
        for pos, m in zip(legs, key):
            new[pos - 1] = m
        out[tuple(new)] = c
    return TensorElement(lie.tensor_space(target_arity), out, _trusted=True)


def apply_map_leg(a: TensorElement, leg: int, m) -> TensorElement | UeaElement | Series:
    """Apply a linear map on U(g) to one (1-based) leg of ``a``.

    ``m`` takes a UeaElement and returns a UeaElement (arity unchanged), a
    TensorElement of arity r (the leg is replaced by r legs) or a Series
    (the leg is removed). A result of arity 1 is returned as a UeaElement and
    arity 0 as a Series.
    """
    if isinstance(a, UeaElement):
        a = tensor(a.algebra, a)
    if not 1 <= leg <= a.arity:
        raise UsageError(f"leg {leg} out of range for arity {a.arity}")
    lie = a.algebra
    ctx = lie.context
    q = leg - 1
    images = {}
    out = {}
    new_arity = None
    for key, c in a.terms.items():
        mono = key[q]
        img = images.get(mono)
        if img is None:
            v = m(UeaElement(lie, {mono: ctx.one()}, _trusted=True))
            if isinstance(v, Series):
                img = (0, {(): v} if v.terms else {})
            elif isinstance(v, UeaElement):
                img = (1, {(mm,): cc for mm, cc in v.terms.items()})
            elif isinstance(v, TensorElement):
                img = (v.arity, v.terms)
            else:
                raise UsageError("leg map must return Series, UeaElement or TensorElement")
            images[mono] = img
        r, vals = img
        if new_arity is None:
            new_arity = a.arity - 1 + r
        elif new_arity != a.arity - 1 + r:
            raise UsageError("leg map returned inconsistent arities")
        for sub, cv in vals.items():
            v = c * cv
            if v.terms:
                accumulate(out, key[:q] + sub + key[q + 1:], v)
    if new_arity is None:
        new_arity = a.arity
        m_probe = m(lie.unit())
        if isinstance(m_probe, Series):
            new_arity = a.arity - 1
        elif isinstance(m_probe, TensorElement):
            new_arity = a.arity - 1 + m_probe.arity
    if new_arity == 0:
        return out.get((), ctx.zero())
    if new_arity == 1:
        return UeaElement(lie, {k[0]: c for k, c in out.items()}, _trusted=True)
    return TensorElement(lie.tensor_space(new_arity), out, _trusted=True)


def contract(a: TensorElement, fn, result_zero):
    """Σ c · fn(leg_1, ..., leg_k) over the terms of ``a`` (legs as UeaElements)."""
    total = result_zero
    for key, c in a.terms.items():
        total = total + fn(*a.legs(key)).scale(c)
    return total


def split_order_zero(x):
    """Return (c, rest) with x = c·1 + rest, rest of deformation order ≥ 1."""
    zero_part = x.order_part(0)
    one = x.scalar(1)
    unit_key = next(iter(one.terms))
    if any(k != unit_key for k in zero_part.terms):
        raise DomainError("order-0 part is not a scalar multiple of the unit")
    c = zero_part.terms.get(unit_key)
    return (c.constant_term() if c is not None else GaussianRational()), x - zero_part


def element_inverse(x):
    """Inverse of an algebra element whose order-0 part is a nonzero scalar."""
    c, rest = split_order_zero(x)
    if not c:
        raise DomainError("element is not invertible: order-0 part vanishes")
    c_inv = c.inverse()
    u = -rest.scale(c_inv)
    one = x.scalar(1)
    result = one
    power = one
    for _ in range(x.context.max_order):
        power = power * u
        if not power:
            break
        result = result + power
    return result.scale(c_inv)


def element_exp(x):
    """exp(x) truncated at the context order; x must vanish at order 0."""
    if x.order_part(0):
        raise DomainError("exp needs an argument of deformation order ≥ 1")
    one = x.scalar(1)
    result = one
    power = one
    for k in range(1, x.context.max_order + 1):
        power = power * x
        if not power:
            break
        result = result + power.scale(GaussianRational(Fraction(1, factorial(k))))
    return result
