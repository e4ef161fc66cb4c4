"""Quantum vector fields: first-order operators with respect to a triangular R.

Operators live in E = A⋊U(g) (a DiffOperator is lifted first). Untwisted,
X is first order when X(ab) = (Xa)b + (R₂▷a)((R₁.X)b). On the cotwist A_*
the same element X acts by X•a = (F₁.X)(F₂▷a) and the condition reads
X•(a*b) = (X•a)*b + (R̃₂▷a)*((R̃₁.X)•b).
"""

from __future__ import annotations

from fractions import Fraction

from .hopf_core import PolyModuleAlgebra, SmashElement, act, adjoint, momentum_partials, smash_apply
from .lie_pbw import UeaElement, unit_tensor
from .polynomials import DiffOperator, Polynomial
from .reports import Report
from .scalars import GaussianRational, Series
from .twist_engine import ad_linear, check_cocycle, phi, star_product, twisted_R, verify_theorem_cotwist

__all__ = [
    "DiffOperator", "apply", "check_first_order", "first_order_defect", "verify_der_invariance",
    "verify_der_stability", "verify_der_closure", "braided_operator_commutator",
    "coproduct_action", "module_action", "moyal_demo",
]


def _mono(lie, m):
    return UeaElement(lie, {m: lie.context.one()}, _trusted=True)


def _lift(A, X):
    return A.smash.lift(X)


def apply(X, a: Polynomial, A: PolyModuleAlgebra | None = None) -> Polynomial:
    """Evaluate X on a polynomial; X may be a DiffOperator, SmashElement or UeaElement."""
    if isinstance(X, DiffOperator):
        return X.apply(a)
    if isinstance(X, UeaElement):
        A = A or a.parent.module_algebra
        return act(A, X, a)
    return smash_apply(X, a)


def _dot(t, X: SmashElement, a: Polynomial) -> Polynomial:
    """X•a = Σ (F₁.X)(F₂▷a); plain evaluation without a twist."""
    if t is None:
        return smash_apply(X, a)
    A = X.parent.module_algebra
    lie = t.lie
    total = A.ring.zero()
    for (m1, m2), c in t.F.terms.items():
        Y = ad_linear(t, _mono(lie, m1), X)
        if Y:
            total = total + smash_apply(Y, act(A, _mono(lie, m2), a)).scale(c)
    return total


def first_order_defect(A: PolyModuleAlgebra, t, X, a, b, R=None) -> Polynomial:
    """LHS − RHS of the first-order condition on one pair (a, b)."""
    X = _lift(A, X)
    lie = A.lie
    if t is None:
        R = R if R is not None else unit_tensor(lie, 2)
        mul = lambda p, q: p * q
    else:
        R = twisted_R(t)
        mul = lambda p, q: star_product(t, A, p, q)
    lhs = _dot(t, X, mul(a, b))
    rhs = mul(_dot(t, X, a), b)
    for (m1, m2), c in R.terms.items():
        rhs = rhs + mul(act(A, _mono(lie, m2), a),
                        _dot(t, adjoint(_mono(lie, m1), X), b)).scale(c)
    return lhs - rhs


def _pair_label(a, b):
    return f"a={a}, b={b}"


def check_first_order(A: PolyModuleAlgebra, t, X, pairs, seed=None, R=None) -> Report:
    """Exact first-order identity on every (a, b) pair; twisted when ``t`` is given."""
    suite = "first-order" if t is None else "first-order-twisted"
    order = A.context.max_order
    rep = Report(suite, order=order, seed=seed, corpus=f"{len(pairs)} polynomial pairs")
    Xs = _lift(A, X)
    rep.notes.append(f"X = {X}")
    for a, b in pairs:
        rep.check_zero(f"X(ab) Leibniz for {_pair_label(a, b)}",
                       first_order_defect(A, t, Xs, a, b, R))
    return rep


def coproduct_action(A, X, a, b, R=None):
    """Action of Δ(X) = X⊗1 + R₂⊗R₁.X on a⊗b, multiplied out."""
    X = _lift(A, X)
    lie = A.lie
    R = R if R is not None else unit_tensor(lie, 2)
    out = smash_apply(X, a) * b
    for (m1, m2), c in R.terms.items():
        out = out + (act(A, _mono(lie, m2), a) *
                     smash_apply(adjoint(_mono(lie, m1), X), b)).scale(c)
    return out


def verify_der_invariance(A, X, hs, pairs, seed=None) -> Report:
    """h.X = ad(h)X stays first order for every corpus h."""
    X = _lift(A, X)
    rep = Report("der-invariance", order=A.context.max_order, seed=seed,
                 corpus=f"{len(hs)} Hopf elements x {len(pairs)} pairs")
    for h in hs:
        Y = adjoint(h, X)
        bad = [(a, b) for a, b in pairs if first_order_defect(A, None, Y, a, b)]
        detail = "" if not bad else f"h.X = {Y} fails on {_pair_label(*bad[0])}"
        rep.add(f"{h}.X first order", not bad, detail)
    return rep


def verify_der_stability(A, t, operators, pairs, seed=None) -> Report:
    """Untwisted and twisted first-order status agree operator by operator."""
    rep = Report("der-stability", order=A.context.max_order, seed=seed,
                 corpus=f"{len(operators)} operators x {len(pairs)} pairs")
    status = {}
    for X in operators:
        u = all(not first_order_defect(A, None, X, a, b) for a, b in pairs)
        w = all(not first_order_defect(A, t, X, a, b) for a, b in pairs)
        status[str(X)] = (u, w)
        rep.add(f"X = {X}: untwisted {'yes' if u else 'no'}, twisted {'yes' if w else 'no'}",
                u == w, "" if u == w else "one-sided failure")
    rep.status = status
    return rep


def braided_operator_commutator(A, X, Y, t=None):
    """[X,Y]_R = XY − (R₂.Y)(R₁.X), products in E (or E_* with R̃ when twisted)."""
    X, Y = _lift(A, X), _lift(A, Y)
    lie = A.lie
    if t is None:
        return X * Y - Y * X
    mul = lambda u, v: star_product(t, None, u, v)
    out = mul(X, Y)
    for (m1, m2), c in twisted_R(t).terms.items():
        out = out - mul(ad_linear(t, _mono(lie, m2), Y), ad_linear(t, _mono(lie, m1), X)).scale(c)
    return out


def verify_der_closure(A, X, Y, pairs, t=None, seed=None):
    """Braided commutator of two first-order operators is first order. Returns (report, [X,Y]_R)."""
    Z = braided_operator_commutator(A, X, Y, t)
    rep = check_first_order(A, t, Z, pairs, seed=seed)
    rep.suite = "der-closure" if t is None else "der-closure-twisted"
    rep.notes.append(f"[X,Y]_R = {Z}")
    return rep, Z


def module_action(A, a: Polynomial, X, t=None):
    """a·X: left multiplication of an operator by a function, a*X in E_* when twisted.

    Only defined when A (A_* with R~ when twisted) is quasi-commutative;
    that is checked first and a PreconditionError is raised otherwise.
    """
    from .braided_lie import require_quasi_commutative

    X = _lift(A, X)
    if t is None:
        require_quasi_commutative(A, unit_tensor(A.lie, 2), lambda p, q: p * q)
        return A.smash.from_poly(a) * X
    require_quasi_commutative(A, twisted_R(t), lambda p, q: star_product(t, A, p, q))
    return star_product(t, None, A.smash.from_poly(a), X)


# --- the end-to-end Moyal demonstration ---------------------------------------

def _theta_matrix(t, A):
    """θ^{αβ} over coordinates from the twist matrix: f[P_α, P_β] = −(i/2)θ^{αβ}."""
    partials = momentum_partials(A)
    gen_of = {}
    for q, d in partials.items():
        (key, c), = d.terms.items()
        gen_of[q] = (key[1].index(1), c)
    spec = t.spec
    n = A.ring.n
    ctx = A.context
    theta = {}
    two_i = GaussianRational(0, 2)
    for a in range(n):
        for b in range(n):
            v = ctx.zero()
            if spec is not None and spec.kind == "abelian" and a in gen_of and b in gen_of:
                ga, gb = gen_of[a][0], gen_of[b][0]
                f = spec.matrix.get((ga, gb))
                if f is not None:
                    v = f * two_i
            theta[(a, b)] = v
    return theta, gen_of


def moyal_demo(A: PolyModuleAlgebra, t, seed=0, pairs=20) -> Report:
    """Star commutators, φ of coordinates, their relations and the supporting suites."""
    from .corpus import smash_pairs, poly_pairs

    S = A.smash
    ring = A.ring
    lie = A.lie
    coords = A.coordinates
    n = ring.n
    rep = Report("moyal-demo", order=t.order, seed=seed, corpus=f"{pairs} smash pairs")
    theta, gen_of = _theta_matrix(t, A)
    i = GaussianRational(0, 1)
    for a in range(n):
        for b in range(a + 1, n):
            xa, xb = ring.var(coords[a]), ring.var(coords[b])
            comm = star_product(t, A, xa, xb) - star_product(t, A, xb, xa)
            rep.check_equal(f"[{coords[a]}, {coords[b]}]_* = i*theta^{a}{b}", comm,
                            ring.one().scale(theta[(a, b)] * i))
    ys = []
    for a in range(n):
        y = phi(t, S.var(coords[a]))
        expect = S.var(coords[a])
        for b in range(n):
            if b in gen_of and theta[(a, b)]:
                expect = expect + S.gen(lie.generators[gen_of[b][0]]).scale(
                    theta[(a, b)] * Fraction(1, 2))
        rep.check_equal(f"phi({coords[a]}) = {coords[a]} + (1/2)*theta^{a}b*P_b", y, expect)
        rep.notes.append(f"y{a} = {y}")
        ys.append(y)
    for a in range(n):
        for b in range(a + 1, n):
            rep.check_equal(f"[y{a}, y{b}] = i*theta^{a}{b}", ys[a] * ys[b] - ys[b] * ys[a],
                            S.one().scale(theta[(a, b)] * i))
    rep.extend(check_cocycle(t.F))
    th = verify_theorem_cotwist(t, smash_pairs(A, pairs, seed=seed, max_degree=1))
    ok = th.passed
    rep.add(f"theorem: phi(a*b) = phi(a)phi(b) on {pairs} pairs and the three-leg identity", ok,
            "" if ok else th.counterexample.label)
    pp = poly_pairs(A, 8, seed=seed, max_degree=2)
    D = [momentum_partials(A)[q] for q in range(n) if q in momentum_partials(A)]
    corpus_ops = list(D)
    if len(D) >= 2:
        corpus_ops.append(S.var(coords[0]) * D[1])
    st = verify_der_stability(A, t, corpus_ops, pp)
    rep.add(f"vector fields: first-order status agrees twisted/untwisted on {len(corpus_ops)} operators",
            st.passed and all(u for u, _ in st.status.values()),
            "" if st.passed else st.counterexample.label)
    return rep
