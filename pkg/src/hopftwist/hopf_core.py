"""Hopf structure of U(g), polynomial module algebras and the smash product A⋊U(g)."""

from __future__ import annotations

from math import comb

from .errors import UsageError, ValidationError
from .lie_pbw import (
    LiePresentation, TensorElement, UeaElement, grlex_key, monomial_word, tensor,
    tensor_mul, unit_tensor, embed_legs,
)
from .linear import LinearElement, accumulate
from .polynomials import DiffOperator, DiffRing, PolyRing, Polynomial
from .reports import Report
from .scalars import Series


def _cache(lie, name):
    store = lie.__dict__.setdefault("_hopf_caches", {})
    return store.setdefault(name, {})


# --- coalgebra maps on U(g) -------------------------------------------------

def _mono_coproduct(lie, mono):
    cache = _cache(lie, "coproduct")
    hit = cache.get(mono)
    if hit is None:
        # generators are primitive and legs stay PBW-ordered, so no rewriting
        splits = [()]
        for e in mono:
            splits = [s + (k,) for s in splits for k in range(e + 1)]
        hit = []
        for k in splits:
            c = 1
            for e, kk in zip(mono, k):
                c *= comb(e, kk)
            rest = tuple(e - kk for e, kk in zip(mono, k))
            hit.append((k, rest, c))
        cache[mono] = hit
    return hit


def coproduct(h: UeaElement) -> TensorElement:
    lie = h.algebra
    out = {}
    for m, c in h.terms.items():
        for a, b, k in _mono_coproduct(lie, m):
            accumulate(out, (a, b), c * k)
    return TensorElement(lie.tensor_space(2), out, _trusted=True)


def counit(h: UeaElement) -> Series:
    return h.counit()


def _mono_antipode(lie, mono):
    cache = _cache(lie, "antipode")
    hit = cache.get(mono)
    if hit is None:
        word = monomial_word(mono)
        res = lie.unit()
        for letter in reversed(word):
            res = res * lie.gen(letter)
        hit = res if len(word) % 2 == 0 else -res
        cache[mono] = hit
    return hit


def antipode(h: UeaElement) -> UeaElement:
    lie = h.algebra
    out = {}
    for m, c in h.terms.items():
        for mm, cc in _mono_antipode(lie, m).terms.items():
            accumulate(out, mm, c * cc)
    return UeaElement(lie, out, _trusted=True)


def iterated_coproduct(h: UeaElement, k: int):
    """Δ^{(k)}: U(g) → U(g)^{⊗k}; Δ^{(1)} = id (returned as arity-1 tensor)."""
    if k < 1:
        raise UsageError("iterated coproduct needs k ≥ 1")
    lie = h.algebra
    out = {(m,): c for m, c in h.terms.items()}
    for _ in range(k - 1):
        nxt = {}
        for key, c in out.items():
            for a, b, kk in _mono_coproduct(lie, key[-1]):
                accumulate(nxt, key[:-1] + (a, b), c * kk)
        out = nxt
    return TensorElement(lie.tensor_space(k), out, _trusted=True)


class HopfContext:
    """U(g) with its primitive coproduct and an R-matrix (default 1⊗1)."""

    def __init__(self, algebra: LiePresentation, R: TensorElement | None = None):
        algebra.require_valid()
        self.algebra = algebra
        self.R = R if R is not None else unit_tensor(algebra, 2)
        if self.R.arity != 2:
            raise UsageError("R-matrix must have arity 2")
        if tensor_mul(self.R, embed_legs(self.R, 2, [2, 1])) != unit_tensor(algebra, 2):
            raise ValidationError("R-matrix is not triangular at this order")

    @property
    def context(self):
        return self.algebra.context


# --- polynomial module algebras ---------------------------------------------

class ActionSpec:
    """Action of each Lie generator as a (≤ first order) differential operator.

    The representation property ``[op(g_i), op(g_j)] = Σ_k c_ij^k op(g_k)``
    is checked on construction unless ``validate=False``.
    """

    def __init__(self, lie: LiePresentation, ring: PolyRing, operators, validate=True):
        self.lie = lie
        self.ring = ring
        self.diff = DiffRing(ring)
        ops = {}
        for g, op in operators.items():
            i = lie.index(g)
            if not isinstance(op, DiffOperator):
                raise UsageError("action operators must be DiffOperators")
            if op.order() > 1:
                raise ValidationError(f"action of {lie.generators[i]} is not first order")
            ops[i] = op
        zero = DiffOperator(self.diff, {}, _trusted=True)
        self.operators = tuple(ops.get(i, zero) for i in range(lie.n))
        if validate:
            violations = self.representation_violations()
            if violations:
                raise ValidationError("action is not a representation of the Lie algebra",
                                      violations)

    def representation_violations(self):
        lie = self.lie
        out = []
        for i in range(lie.n):
            for j in range(i + 1, lie.n):
                a, b = self.operators[i], self.operators[j]
                lhs = a * b - b * a
                rhs = DiffOperator(self.diff, {}, _trusted=True)
                for k, c in lie.bracket_vector(i, j).items():
                    rhs = rhs + self.operators[k].scale(c)
                if lhs != rhs:
                    out.append((lie.generators[i], lie.generators[j]))
        return out

    def operator(self, g) -> DiffOperator:
        return self.operators[self.lie.index(g)]


class PolyModuleAlgebra:
    """Polynomials in ``coordinates`` with U(g) acting through an ActionSpec."""

    def __init__(self, lie: LiePresentation, coordinates=(), action=None, validate=True):
        self.lie = lie
        self.context = lie.context
        if isinstance(action, ActionSpec):
            self.ring = action.ring
        else:
            self.ring = PolyRing(coordinates, lie.context)
        if action is None:
            action = ActionSpec(lie, self.ring, {}, validate=False)
        elif not isinstance(action, ActionSpec):
            action = ActionSpec(lie, self.ring, action, validate=validate)
        self.action = action
        self._act_cache = {}
        self.smash = SmashAlgebra(self)
        # lets polynomial-only entry points find their module algebra
        self.ring.module_algebra = self

    @property
    def coordinates(self):
        return self.ring.coordinates

    def var(self, name):
        return self.ring.var(name)

    def _act_mono(self, mono, exps):
        key = (mono, exps)
        hit = self._act_cache.get(key)
        if hit is None:
            p = Polynomial(self.ring, {exps: self.context.one()}, _trusted=True)
            for letter in reversed(monomial_word(mono)):
                p = self.action.operators[letter].apply(p)
                if not p:
                    break
            hit = self._act_cache[key] = p
        return hit


def act(A: PolyModuleAlgebra, h: UeaElement, a: Polynomial) -> Polynomial:
    """h ▷ a for the module algebra A."""
    out = {}
    for m, c in h.terms.items():
        for e, ce in a.terms.items():
            cc = c * ce
            if not cc.terms:
                continue
            for ee, v in A._act_mono(m, e).terms.items():
                accumulate(out, ee, cc * v)
    return Polynomial(A.ring, out, _trusted=True)


# --- smash product A⋊U(g) ---------------------------------------------------

class SmashAlgebra:
    """A⋊U(g) with normal form Σ c · x^α h (coordinates left of PBW monomials)."""

    def __init__(self, module_algebra: PolyModuleAlgebra):
        self.module_algebra = module_algebra
        self.lie = module_algebra.lie
        self.context = module_algebra.context
        self._key_cache = {}

    def __eq__(self, other):
        return isinstance(other, SmashAlgebra) and other.module_algebra is self.module_algebra

    def __hash__(self):
        return id(self.module_algebra)

    @property
    def ring(self):
        return self.module_algebra.ring

    def one(self):
        return SmashElement(self, {((0,) * self.ring.n, (0,) * self.lie.n): self.context.one()},
                            _trusted=True)

    def zero(self):
        return SmashElement(self, {}, _trusted=True)

    def from_uea(self, h: UeaElement):
        z = (0,) * self.ring.n
        return SmashElement(self, {(z, m): c for m, c in h.terms.items()}, _trusted=True)

    def from_poly(self, p: Polynomial):
        z = (0,) * self.lie.n
        return SmashElement(self, {(e, z): c for e, c in p.terms.items()}, _trusted=True)

    def lift(self, x):
        if isinstance(x, SmashElement):
            return x
        if isinstance(x, UeaElement):
            return self.from_uea(x)
        if isinstance(x, Polynomial):
            return self.from_poly(x)
        if isinstance(x, DiffOperator):
            return diffop_to_smash(self, x)
        raise UsageError(f"cannot lift {type(x).__name__} into the smash product")

    def var(self, name):
        return self.from_poly(self.ring.var(name))

    def gen(self, name):
        return self.from_uea(self.lie.gen(name))

    def key_mul(self, k1, k2):
        hit = self._key_cache.get((k1, k2))
        if hit is not None:
            return hit
        (a, m), (b, n) = k1, k2
        A = self.module_algebra
        lie = self.lie
        out = {}
        if not any(m):
            prods = {n: self.context.one()}
            ab = tuple(x + y for x, y in zip(a, b))
            for nn, c in prods.items():
                accumulate(out, (ab, nn), c)
        else:
            # (x^a m)(x^b n) = x^a (m' ▷ x^b) m'' n
            for m1, m2, k in _mono_coproduct(lie, m):
                p = A._act_mono(m1, b)
                if not p:
                    continue
                prod = lie.mono_mul(m2, n)
                for e, ce in p.terms.items():
                    ea = tuple(x + y for x, y in zip(a, e))
                    cek = ce * k
                    for nn, cn in prod.items():
                        accumulate(out, (ea, nn), cek * cn)
        self._key_cache[(k1, k2)] = out
        return out


class SmashElement(LinearElement):
    """Element of A⋊U(g): ``{(coordinate exponents, PBW exponents): Series}``."""

    __slots__ = ()

    @staticmethod
    def sort_key(key):
        a, m = key
        return (sum(a) + sum(m), grlex_key(m), grlex_key(a))

    @property
    def algebra(self):
        return self.parent

    def scalar(self, value):
        return self.parent.one().scale(value)

    def __mul__(self, other):
        if isinstance(other, SmashElement):
            return smash_mul(self, other)
        if isinstance(other, LinearElement):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k):
        result = self.parent.one()
        for _ in range(k):
            result = result * self
        return result

    def poly_part(self):
        """The part lying in A (PBW exponent zero) as a Polynomial, if pure."""
        z = (0,) * self.parent.lie.n
        return Polynomial(self.parent.ring, {a: c for (a, m), c in self.terms.items() if m == z},
                          _trusted=True)

    def is_poly(self):
        z = (0,) * self.parent.lie.n
        return all(m == z for _, m in self.terms)

    def is_uea(self):
        z = (0,) * self.parent.ring.n
        return all(a == z for a, _ in self.terms)

    def to_uea(self) -> UeaElement:
        if not self.is_uea():
            raise UsageError("element has coordinate dependence")
        return UeaElement(self.parent.lie, {m: c for (_, m), c in self.terms.items()},
                          _trusted=True)

    def to_poly(self) -> Polynomial:
        if not self.is_poly():
            raise UsageError("element has Hopf-algebra part")
        return self.poly_part()

    def apply(self, p: Polynomial) -> Polynomial:
        return smash_apply(self, p)


def smash_mul(u: SmashElement, v: SmashElement) -> SmashElement:
    u._compatible(v)
    S = u.parent
    out = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            c = c1 * c2
            if not c.terms:
                continue
            for k, ck in S.key_mul(k1, k2).items():
                accumulate(out, k, c * ck)
    return SmashElement(S, out, _trusted=True)


def smash_apply(X: SmashElement, p: Polynomial) -> Polynomial:
    """Action of A⋊U(g) on A: (a h) ▷ p = a · (h ▷ p)."""
    S = X.parent
    A = S.module_algebra
    out = {}
    for (a, m), c in X.terms.items():
        for e, ce in p.terms.items():
            cc = c * ce
            if not cc.terms:
                continue
            for ee, v in A._act_mono(m, e).terms.items():
                accumulate(out, tuple(x + y for x, y in zip(a, ee)), cc * v)
    return Polynomial(A.ring, out, _trusted=True)


def lift_to(h: UeaElement, like):
    """Embed h ∈ U(g) into the algebra of ``like`` (U(g) itself or A⋊U(g))."""
    if isinstance(like, SmashElement):
        return like.parent.from_uea(h)
    return h


def adjoint(h: UeaElement, a, coproduct_fn=None, antipode_fn=None):
    """ad(h)a = Σ h' a γ(h'') in U(g) or A⋊U(g).

    ``coproduct_fn``/``antipode_fn`` default to the classical structure; pass
    the twisted ones to get the adjoint action of the twisted Hopf algebra.
    The classical case is computed as iterated commutators with generators,
    which never builds words longer than deg(a) + 1.
    """
    if isinstance(a, Polynomial):
        raise UsageError("use act() for the module action on polynomials")
    if coproduct_fn is None and antipode_fn is None:
        return adjoint_commutators(h, a)
    return adjoint_coproduct(h, a, coproduct_fn or coproduct, antipode_fn or antipode)


def adjoint_commutators(h: UeaElement, a):
    """ad(g₁⋯g_k)a = [g₁, [g₂, … [g_k, a]]] for each PBW monomial of h."""
    if isinstance(a, Polynomial):
        raise UsageError("use act() for the module action on polynomials")
    lie = h.algebra
    gens = [lift_to(lie.gen(i), a) for i in range(lie.n)]
    total = a.scale(0)
    for m, c in h.terms.items():
        x = a
        for letter in reversed(monomial_word(m)):
            g = gens[letter]
            x = g * x - x * g
        total = total + x.scale(c)
    return total


def adjoint_coproduct(h: UeaElement, a, coproduct_fn=coproduct, antipode_fn=antipode,
                      budget=None):
    """ad(h)a straight from Σ h' a γ(h''); independent of adjoint_commutators.

    With ``budget`` the result keeps deformation orders ≤ budget only, and
    ``antipode_fn`` is called as antipode_fn(x, budget).
    """
    if isinstance(a, Polynomial):
        raise UsageError("use act() for the module action on polynomials")
    lie = h.algebra
    total = a.scale(0)
    for (m1, m2), c in coproduct_fn(h).terms.items():
        # the coefficient rides on the antipode argument so truncation can prune early
        x = UeaElement(lie, {m2: c}, _trusted=True)
        g = antipode_fn(x) if budget is None else antipode_fn(x, budget)
        if not g:
            continue
        left = lift_to(UeaElement(lie, {m1: lie.context.one()}, _trusted=True), a)
        right = lift_to(g, a)
        prod = a * right if budget is None else (a * right).truncated(budget)
        total = total + left * prod
    return total if budget is None else total.truncated(budget)


# --- checks -------------------------------------------------------------------

def module_algebra_check(A: PolyModuleAlgebra, hs, polys, seed=None) -> Report:
    """Verify h ▷ (ab) = (h' ▷ a)(h'' ▷ b) for all h in hs and a, b in polys."""
    rep = Report("module-algebra", order=A.context.max_order, seed=seed,
                 corpus=f"{len(hs)} Hopf elements x {len(polys)}^2 polynomial pairs")
    for h in hs:
        dh = coproduct(h)
        lie = h.algebra
        one = lie.context.one()
        for a in polys:
            for b in polys:
                lhs = act(A, h, a * b)
                rhs = A.ring.zero()
                for (m1, m2), c in dh.terms.items():
                    h1 = UeaElement(lie, {m1: one}, _trusted=True)
                    h2 = UeaElement(lie, {m2: one}, _trusted=True)
                    rhs = rhs + (act(A, h1, a) * act(A, h2, b)).scale(c)
                rep.check_equal(f"h={h} a={a} b={b}", lhs, rhs)
    return rep


def diffop_to_smash(S: SmashAlgebra, X: DiffOperator) -> SmashElement:
    """Realize a differential operator inside A⋊U(g).

    Needs, for each coordinate x^μ, a generator acting as the pure operator
    c·∂_μ; then ∂_μ = g / c.
    """
    partials = momentum_partials(S.module_algebra)
    ring = S.ring
    out = S.zero()
    for (a, b), c in X.terms.items():
        term = S.from_poly(Polynomial(ring, {a: c}, _trusted=True))
        for q, e in enumerate(b):
            if not e:
                continue
            if q not in partials:
                raise UsageError(
                    f"no generator acts as a constant multiple of d/d{ring.coordinates[q]}")
            d = partials[q]
            for _ in range(e):
                term = term * d
        out = out + term
    return out


def momentum_partials(A: PolyModuleAlgebra):
    """{coordinate index: SmashElement equal to ∂/∂x^q} from pure-partial generators."""
    cache = A.__dict__.setdefault("_partials", None)
    if cache is not None:
        return cache
    out = {}
    n = A.ring.n
    z = (0,) * n
    for i, op in enumerate(A.action.operators):
        if len(op.terms) != 1:
            continue
        ((a, b), c), = op.terms.items()
        if a != z or sum(b) != 1 or not c.is_constant():
            continue
        q = b.index(1)
        if q in out:
            continue
        out[q] = A.smash.gen(i).scale(c.constant_term().inverse())
    A._partials = out
    return out
