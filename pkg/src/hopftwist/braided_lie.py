"""Braided (H-)Lie algebras realized inside U(g) or A⋊U(g).

Every bracket here is computed in an ambient associative engine; a
:class:`BracketTable` is the certificate extracted from it.
"""

from __future__ import annotations

from collections import namedtuple
from itertools import product as iproduct

from .errors import InvariantViolation, PreconditionError, UsageError
from .hopf_core import SmashElement, act, adjoint, antipode, coproduct
from .lie_pbw import TensorElement, UeaElement, tensor, uea_mul_bounded, unit_tensor
from .linear import accumulate
from .polynomials import Polynomial
from .reports import Report
from .twist_engine import phi, phi_inv, star_product, twisted_R


def _mono(lie, m):
    return UeaElement(lie, {m: lie.context.one()}, _trusted=True)


def _is_triangular(R):
    from .lie_pbw import embed_legs, tensor_mul

    return tensor_mul(R, embed_legs(R, 2, [2, 1])) == unit_tensor(R.algebra, 2)


class BraidedContext:
    """H with an effective triangular R (1⊗1 or R̃) and the matching actions.

    With a twist the adjoint action uses (Δ̃, γ̃); polynomials always carry
    the module action, which a twist leaves unchanged.
    """

    def __init__(self, H, R_eff=None, twist=None, product=None):
        self.lie = getattr(H, "algebra", H)
        self.twist = twist
        if R_eff is None:
            R_eff = twisted_R(twist) if twist is not None else getattr(H, "R", None)
        if R_eff is None:
            R_eff = unit_tensor(self.lie, 2)
        if not _is_triangular(R_eff):
            raise UsageError("effective R-matrix is not triangular at this order")
        self.R = R_eff
        self.product = product
        self._act_cache = {}

    @property
    def context(self):
        return self.lie.context

    def mul(self, a, b):
        if self.product is not None:
            return self.product(a, b)
        return a * b

    def _act_key(self, m, key, sample, budget=None):
        ck = (m, key, id(sample.parent), budget)
        hit = self._act_cache.get(ck)
        if hit is None:
            x = sample._new({key: self.context.one()})
            h = _mono(self.lie, m)
            if isinstance(x, Polynomial):
                A = getattr(x.parent, "module_algebra", None)
                if A is None:
                    raise UsageError("polynomial has no module algebra attached")
                hit = act(A, h, x)
            elif self.twist is not None:
                hit = self.twist.adjoint(h, x, budget)
            else:
                hit = adjoint(h, x)
            self._act_cache[ck] = hit
        return hit

    def act(self, h: UeaElement, a):
        total = a.scale(0)
        for m, c in h.terms.items():
            for key, ca in a.terms.items():
                total = total + self._act_key(m, key, a).scale(c * ca)
        return total

    def act_mono(self, m, a, budget=None):
        """Action of one PBW monomial; ``budget`` caps the deformation order
        of the result (the twisted adjoint then stays within the degree bound)."""
        total = a.scale(0)
        for key, ca in a.terms.items():
            K = None if budget is None else budget - ca.min_degree()
            if K is not None and K < 0:
                continue
            total = total + self._act_key(m, key, a, K).scale(ca)
        return total


def braided_commutator(ctx: BraidedContext, a, b):
    """[a,b]_R = ab − (R₂▷b)(R₁▷a)."""
    total = ctx.mul(a, b)
    for (m1, m2), c in ctx.R.terms.items():
        total = total - ctx.mul(ctx.act_mono(m2, b), ctx.act_mono(m1, a)).scale(c)
    return total


class BracketTable:
    """An H-Lie algebra on span(basis): bracket, H-action and R.

    ``key_bracket(k1, k2)`` and ``key_action(mono, k)`` work on basis keys
    and are extended bilinearly; results are cached.
    """

    def __init__(self, basis, key_bracket, key_action, R, labels=None, lie=None, name=""):
        self.basis = list(basis)
        self.R = R
        self.lie = lie or R.algebra
        self.labels = list(labels) if labels else [str(b) for b in self.basis]
        self.name = name
        self._key_bracket = key_bracket
        self._key_action = key_action
        self._bcache = {}
        self._acache = {}
        self.structure = None

    @classmethod
    def from_presentation(cls, lie, R=None, structure=None):
        """g ⊂ U(g) with ad as action; ``structure`` overrides the bracket constants."""
        R = R if R is not None else unit_tensor(lie, 2)
        basis = [lie.gen(i) for i in range(lie.n)]
        const = None
        if structure is not None:
            const = {}
            for (a, b), rhs in structure.items():
                i, j = lie.index(a), lie.index(b)
                const[(i, j)] = {lie.index(k): v for k, v in rhs.items()}
                const.setdefault((j, i), {k: -v for k, v in const[(i, j)].items()})

        def key_bracket(k1, k2):
            x, y = _mono(lie, k1), _mono(lie, k2)
            if const is None:
                return x * y - y * x
            i, j = k1.index(1), k2.index(1)
            out = lie.zero()
            for k, v in const.get((i, j), {}).items():
                out = out + lie.gen(k).scale(v)
            return out

        def key_action(m, k):
            return adjoint(_mono(lie, m), _mono(lie, k))

        table = cls(basis, key_bracket, key_action, R, labels=lie.generators, lie=lie)
        table.structure = const
        return table

    def with_structure_constant(self, a, b, k, value):
        """Copy of a presentation table with [a,b] having coefficient ``value`` on k.

        The mirrored entry [b,a] is changed accordingly so skew-symmetry survives.
        """
        lie = self.lie
        const = {}
        for i in range(lie.n):
            for j in range(lie.n):
                if self.structure is not None:
                    const[(i, j)] = dict(self.structure.get((i, j), {}))
                else:
                    const[(i, j)] = dict(lie.bracket_vector(i, j))
        i, j, kk = lie.index(a), lie.index(b), lie.index(k)
        const[(i, j)][kk] = value
        const[(j, i)][kk] = -value
        named = {(lie.generators[p], lie.generators[q]): {lie.generators[r]: v for r, v in vec.items()}
                 for (p, q), vec in const.items()}
        return BracketTable.from_presentation(lie, self.R, named)

    def key_bracket(self, k1, k2):
        hit = self._bcache.get((k1, k2))
        if hit is None:
            hit = self._bcache[(k1, k2)] = self._key_bracket(k1, k2)
        return hit

    def key_action(self, m, k):
        hit = self._acache.get((m, k))
        if hit is None:
            hit = self._acache[(m, k)] = self._key_action(m, k)
        return hit

    def bracket(self, x, y):
        total = x.scale(0)
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                c = c1 * c2
                if c.terms:
                    total = total + self.key_bracket(k1, k2).scale(c)
        return total

    def act_mono(self, m, x):
        total = x.scale(0)
        for k, c in x.terms.items():
            total = total + self.key_action(m, k).scale(c)
        return total

    def act(self, h: UeaElement, x):
        total = x.scale(0)
        for m, c in h.terms.items():
            total = total + self.act_mono(m, x).scale(c)
        return total

    def entry(self, i, j):
        return self.bracket(self.basis[i], self.basis[j])

    def braided_skew(self, x, y):
        """[R₂▷x, R₁▷y] + [y, x]; zero when skew-symmetry holds."""
        total = self.bracket(y, x)
        for (m1, m2), c in self.R.terms.items():
            total = total + self.bracket(self.act_mono(m2, x), self.act_mono(m1, y)).scale(c)
        return total

    def jacobi_defect(self, x, y, z):
        """[x,[y,z]] − [[x,y],z] − [R₂▷y,[R₁▷x,z]]."""
        total = self.bracket(x, self.bracket(y, z)) - self.bracket(self.bracket(x, y), z)
        for (m1, m2), c in self.R.terms.items():
            total = total - self.bracket(self.act_mono(m2, y),
                                         self.bracket(self.act_mono(m1, x), z)).scale(c)
        return total


def check_braided_jacobi(table: BracketTable, triples=None, seed=None) -> Report:
    """Braided skew-symmetry on basis pairs and braided Jacobi on triples."""
    n = len(table.basis)
    if triples is None:
        triples = list(iproduct(range(n), repeat=3))
        corpus = f"all {len(triples)} basis triples"
    else:
        corpus = f"{len(triples)} basis triples"
    rep = Report("braided-jacobi", order=table.lie.context.max_order, seed=seed, corpus=corpus)
    L, B = table.labels, table.basis
    for i in range(n):
        for j in range(n):
            rep.check_zero(f"skew ({L[i]}, {L[j]})", table.braided_skew(B[i], B[j]))
    for i, j, k in triples:
        rep.check_zero(f"Jacobi ({L[i]}, {L[j]}, {L[k]})", table.jacobi_defect(B[i], B[j], B[k]))
    return rep


def twist_bracket(t, table: BracketTable, verify=True) -> BracketTable:
    """[ξ,η]~ = [F₁▷ξ, F₂▷η] over R̃ = F₂₁⁻¹RF; re-verified unless ``verify`` is False."""
    F = t.F
    one = t.context.one()

    def key_bracket(k1, k2):
        x = table.basis[0]._new({k1: one})
        y = table.basis[0]._new({k2: one})
        total = x.scale(0)
        for (m1, m2), c in F.terms.items():
            a = table.act_mono(m1, x)
            if not a:
                continue
            b = table.act_mono(m2, y)
            if b:
                total = total + table.bracket(a, b).scale(c)
        return total

    new = BracketTable(table.basis, key_bracket, table.key_action, twisted_R(t, table.R),
                       labels=table.labels, lie=table.lie, name=(table.name + " twisted").strip())
    if verify:
        rep = check_braided_jacobi(new)
        if not rep:
            raise InvariantViolation("twisted bracket is not braided Lie: "
                                     + rep.counterexample.label)
    return new


def hlie_coproduct(ctx: BraidedContext, xi: UeaElement) -> TensorElement:
    """Δ(ξ) = ξ⊗1 + R₂⊗(R₁▷ξ)."""
    lie = ctx.lie
    out = tensor(lie, xi, lie.unit())
    N = lie.context.max_order
    for (m1, m2), c in ctx.R.terms.items():
        out = out + tensor(lie, _mono(lie, m2), ctx.act_mono(m1, xi, N - c.min_degree()), coeff=c)
    return out


def hlie_antipode(ctx: BraidedContext, xi: UeaElement) -> UeaElement:
    """γ(ξ) = −(R₂▷ξ)R₁."""
    lie = ctx.lie
    N = lie.context.max_order
    out = lie.zero()
    for (m1, m2), c in ctx.R.terms.items():
        out = out - (ctx.act_mono(m2, xi, N - c.min_degree()) * _mono(lie, m1)).scale(c)
    return out


Membership = namedtuple("Membership", "member residual")


def lie_membership(t, xi: UeaElement, R=None) -> Membership:
    """Quasi-primitivity Δ(ξ) = ξ⊗1 + R₂R₁′⊗R₁ξR₂′ (twisted structure when ``t`` is given)."""
    lie = xi.algebra
    if t is not None:
        D = t.coproduct(xi)
        R = t.R() if R is None else R
    else:
        D = coproduct(xi)
        R = unit_tensor(lie, 2) if R is None else R
    N = lie.context.max_order
    rhs = tensor(lie, xi, lie.unit())
    for (a1, a2), c in R.terms.items():
        for (b1, b2), d in R.terms.items():
            cd = c * d
            if cd.is_zero():
                continue
            # the coefficient already uses up part of the order budget
            K = N - cd.min_degree()
            left = uea_mul_bounded(_mono(lie, a2), _mono(lie, b1), K)
            right = uea_mul_bounded(uea_mul_bounded(_mono(lie, a1), xi, K), _mono(lie, b2), K)
            rhs = rhs + tensor(lie, left, right, coeff=cd)
    residual = D - rhs
    return Membership(residual.is_zero(), residual)


def verify_uea_cotwist(t, lie=None, pairs=None, seed=None) -> Report:
    """ξ*η − (R̃₂▷η)*(R̃₁▷ξ) = [F₁▷ξ, F₂▷η] in the cotwisted U(g)."""
    lie = lie or t.lie
    gens = [lie.gen(i) for i in range(lie.n)]
    if pairs is None:
        pairs = [(a, b) for a in gens for b in gens]
    rep = Report("uea-cotwist", order=t.order, seed=seed, corpus=f"{len(pairs)} generator pairs")
    # the cotwist keeps the original adjoint action of H
    classical = BraidedContext(lie, twisted_R(t), product=lambda a, b: star_product(t, None, a, b))
    table = BracketTable.from_presentation(lie)
    for a, b in pairs:
        lhs = braided_commutator(classical, a, b)
        rhs = lie.zero()
        for (m1, m2), c in t.F.terms.items():
            rhs = rhs + table.bracket(table.act_mono(m1, a), table.act_mono(m2, b)).scale(c)
        rep.check_equal(f"[{a}, {b}]_R~ in U(g)_* = [F1>{a}, F2>{b}]", lhs, rhs)
    return rep


def generation_witness(t, target: UeaElement, images):
    """Coefficients w with target = Σ w[m] · Π φ(g)^m (PBW order) at order N.

    ``images`` lists φ(g_j) for every generator. Returns the dict and the
    leftover, which is zero when the witness is exact.
    """
    lie = target.algebra
    cache = {}

    def image(m):
        hit = cache.get(m)
        if hit is None:
            hit = lie.unit()
            for j, e in enumerate(m):
                for _ in range(e):
                    hit = hit * images[j]
            cache[m] = hit
        return hit

    w = {}
    r = target
    for _ in range(lie.context.max_order + 2):
        if r.is_zero():
            break
        nxt = r
        for m, c in r.terms.items():
            accumulate(w, m, c)
            nxt = nxt - image(m).scale(c)
        r = nxt
    return w, r


def verify_hopf_smash_iso(t, lie=None, A=None, corpus=None, seed=None) -> Report:
    """ξ ↦ (F₁▷ξ)F₂ sends g into Lie(H̃), is multiplicative, and its image generates."""
    lie = lie or t.lie
    gens = [lie.gen(i) for i in range(lie.n)]
    corpus = corpus or gens
    rep = Report("hopf-smash-iso", order=t.order, seed=seed, corpus=f"{len(corpus)} elements of g")
    ctx = BraidedContext(lie, twist=t)
    for xi in corpus:
        y = phi(t, xi)
        ok, res = lie_membership(t, y)
        rep.add(f"phi({xi}) in Lie(H~)", ok, "" if ok else f"residual: {res}")
        rep.check_equal(f"D~(phi({xi})) = phi({xi})@1 + R~2@R~1>phi({xi})",
                        t.coproduct(y), hlie_coproduct(ctx, y))
        rep.check_equal(f"phi^-1(phi({xi})) = {xi}", phi_inv(t, y), xi)
        if A is not None:
            S = A.smash
            rep.check_equal(f"phi({xi}) agrees in U(g) and A#H",
                            phi(t, S.from_uea(xi)), S.from_uea(y))
    for a in corpus:
        for b in corpus:
            rep.check_equal(f"phi({a}*{b}) = phi({a})phi({b})",
                            phi(t, star_product(t, None, a, b)), phi(t, a) * phi(t, b))
    images = [phi(t, g) for g in gens]
    for g in gens:
        w, r = generation_witness(t, g, images)
        rep.check_zero(f"{g} generated by phi(g) ({len(w)} PBW words)", r)
    return rep


def require_quasi_commutative(A, R, mul, elements=None):
    """Raise PreconditionError unless ab = (R₂▷b)(R₁▷a) on the given elements.

    The default elements are 1 and the coordinates, which suffices for a
    product generated by them.
    """
    lie = A.lie
    ring = A.ring
    xs = elements or [ring.one()] + [ring.var(x) for x in A.coordinates]
    for a in xs:
        for b in xs:
            rhs = ring.zero()
            for (m1, m2), c in R.terms.items():
                rhs = rhs + mul(act(A, _mono(lie, m2), b), act(A, _mono(lie, m1), a)).scale(c)
            if mul(a, b) != rhs:
                raise PreconditionError(f"A is not quasi-commutative: {a}, {b}")


def current_algebra(A, g: BracketTable, t=None, max_degree=1) -> BracketTable:
    """[a⊗ξ, b⊗η] = a(R₂▷b) ⊗ [R₁▷ξ, η] on A⊗g, truncated to coordinate degree ≤ max_degree.

    Elements are SmashElements whose PBW part has degree one. With a twist
    the bracket of g is twisted, A carries the star product and H acts on
    tensor products through Δ̃.
    """
    lie = g.lie
    if t is not None:
        g = twist_bracket(t, g)
        mul = lambda a, b: star_product(t, A, a, b)
        cop = t.coproduct
    else:
        mul = lambda a, b: a * b
        cop = coproduct
    R = g.R
    ring = A.ring
    S = A.smash
    one = lie.context.one()
    require_quasi_commutative(A, R, mul)

    def poly(e):
        return Polynomial(ring, {e: one}, _trusted=True)

    def assemble(p, x):
        out = {}
        for e, ce in p.terms.items():
            for m, cm in x.terms.items():
                accumulate(out, (e, m), ce * cm)
        return SmashElement(S, out, _trusted=True)

    def key_bracket(k1, k2):
        (a, m), (b, n) = k1, k2
        total = S.zero()
        for (m1, m2), c in R.terms.items():
            left = mul(poly(a), act(A, _mono(lie, m2), poly(b)))
            if not left:
                continue
            right = g.bracket(g.act_mono(m1, _mono(lie, m)), _mono(lie, n))
            if right:
                total = total + assemble(left, right).scale(c)
        return total

    def key_action(h, k):
        a, m = k
        total = S.zero()
        for (m1, m2), c in cop(_mono(lie, h)).terms.items():
            p = act(A, _mono(lie, m1), poly(a))
            if p:
                total = total + assemble(p, g.act_mono(m2, _mono(lie, m))).scale(c)
        return total

    basis, labels = [], []
    for e in ring.monomials(max_degree):
        for gi, lab in zip(g.basis, g.labels):
            (m,) = gi.terms
            basis.append(SmashElement(S, {(e, m): one}, _trusted=True))
            ps = str(poly(e))
            labels.append(f"{ps}@{lab}")
    return BracketTable(basis, key_bracket, key_action, R, labels=labels, lie=lie,
                        name="current algebra")


def table_to_defs(table: BracketTable) -> str:
    """Serialize a U(g)-realized bracket table as a definition-file fragment."""
    lie = table.lie
    ctx = lie.context
    lines = ["[deformation]"]
    if ctx.params:
        lines.append("params = " + ", ".join(ctx.params))
    lines.append(f"order = {ctx.max_order}")
    lines.append("")
    lines.append("[lie]")
    lines.append("generators = " + ", ".join(table.labels))
    n = len(table.basis)
    for i in range(n):
        for j in range(i + 1, n):
            v = table.entry(i, j)
            if v:
                lines.append(f"[{table.labels[i]}, {table.labels[j]}] = {v}")
    return "\n".join(lines) + "\n"


def table_from_defs(text: str) -> BracketTable:
    from .frontend.defs import load_defs_text

    d = load_defs_text(text)
    return BracketTable.from_presentation(d.lie)
