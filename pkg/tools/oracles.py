"""Independent oracles for the frozen test values.

Everything here is computed with sympy and never touches the hopftwist
package. Run it to regenerate the literals frozen in tests/; the output is
printed in the package's canonical text form so it can be compared
directly with print_canonical.

    python tools/oracles.py
"""

import sympy as sp

theta, xi = sp.symbols("theta xi")


def series(expr, var, N):
    """Truncated Taylor coefficients of expr in var up to order N."""
    s = sp.series(expr, var, 0, N + 1).removeO()
    return [sp.nsimplify(sp.expand(s).coeff(var, k)) for k in range(N + 1)]


def fmt_coeff(c):
    c = sp.nsimplify(c)
    re, im = sp.re(c), sp.im(c)
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}*i"
    return f"({re}+{im}*i)"


# --- scalars -------------------------------------------------------------------

def scalar_oracles():
    out = {}
    out["exp(theta), N=3"] = series(sp.exp(theta), theta, 3)
    out["exp(i*theta)*exp(-i*theta), N=4"] = series(
        sp.expand(sum(c * theta**k for k, c in enumerate(series(sp.exp(sp.I * theta), theta, 4)))
                  * sum(c * theta**k for k, c in enumerate(series(sp.exp(-sp.I * theta), theta, 4)))),
        theta, 4)
    out["1/(1+theta), N=3"] = series(1 / (1 + theta), theta, 3)
    out["1/(1+i*theta)*(1+i*theta), N=4"] = series(
        sp.expand(sum(c * theta**k for k, c in enumerate(series(1 / (1 + sp.I * theta), theta, 4)))
                  * (1 + sp.I * theta)), theta, 4)
    return out


# --- Moyal twist ------------------------------------------------------------------
# All momenta commute, so P_mu on leg 1 and on leg 2 become commuting symbols.

a0, a1, b0, b1 = sp.symbols("a0 a1 b0 b1")  # leg 1: a, leg 2: b


def moyal_tensor(expr, N):
    """Expand expr(theta, a, b) to order N as {(leg1 monomial, leg2 monomial): coeff}."""
    coeffs = series(expr, theta, N)
    out = {}
    for k, c in enumerate(coeffs):
        poly = sp.Poly(sp.expand(c), a0, a1, b0, b1)
        for (e0, e1, f0, f1), v in poly.terms():
            out[((e0, e1), (f0, f1), k)] = v
    return out


def moyal_F(N=4):
    return moyal_tensor(sp.exp(-sp.I / 2 * theta * (a0 * b1 - a1 * b0)), N)


def moyal_R(N=4):
    # R~ = F21^-1 F = F^2 for an antisymmetric abelian exponent
    return moyal_tensor(sp.exp(-sp.I * theta * (a0 * b1 - a1 * b0)), N)


def moyal_star(f, g, N):
    """(F1 > f)(F2 > g) with P_mu = i d/dx^mu, computed as a bidifferential operator."""
    x0, x1, y0, y1 = sp.symbols("x0 x1 y0 y1")
    fg = f.subs({sp.Symbol("x0"): x0, sp.Symbol("x1"): x1}) * \
        g.subs({sp.Symbol("x0"): y0, sp.Symbol("x1"): y1})

    def P0P1(e):  # (P0 @ P1 - P1 @ P0) acting on f(x) g(y)
        return sp.I * sp.I * (sp.diff(e, x0, y1) - sp.diff(e, x1, y0))

    total, term = 0, fg
    for k in range(N + 1):
        total += term * (-sp.I * theta / 2) ** k / sp.factorial(k)
        term = P0P1(term)
    return sp.expand(total.subs({y0: x0, y1: x1}))


# --- Jordanian twist --------------------------------------------------------------
# Leg 1 only holds H, leg 2 only holds E, so both legs are commutative.

h, e = sp.symbols("h e")


def jordanian_F(N=4, sign=-1):
    coeffs = series(sp.exp(sign * h * sp.log(1 + xi * e)), xi, N)
    out = {}
    for k, c in enumerate(coeffs):
        poly = sp.Poly(sp.expand(c), h, e)
        for (ph, pe), v in poly.terms():
            out[(ph, pe, k)] = v
    return out


def jordanian_phi_E(N=4):
    """phi(E) = (ad F1 E) F2 with ad(H)E = E: ad(H^k)E = E, so phi(E) = E exp(-ln(1+xi E))."""
    return series(1 / (1 + xi * e), xi, N)


def fmt_tensor_moyal(t):
    names = [("P0", 0), ("P1", 1)]

    def mono(ex):
        parts = []
        for (nm, i) in names:
            if ex[i] == 1:
                parts.append(nm)
            elif ex[i] > 1:
                parts.append(f"{nm}^{ex[i]}")
        return "*".join(parts) or "1"

    return sorted(f"{fmt_coeff(v)} {mono(k1)}@{mono(k2)} theta^{k}" for (k1, k2, k), v in t.items())


def main():
    for k, v in scalar_oracles().items():
        print(k, "->", v)
    print("Moyal F, N=4:")
    for line in fmt_tensor_moyal(moyal_F()):
        print("   ", line)
    print("Moyal R~, N=4:")
    for line in fmt_tensor_moyal(moyal_R()):
        print("   ", line)
    x0, x1 = sp.symbols("x0 x1")
    for f, g in [(x0, x1), (x1, x0), (x0, x0), (x0**2, x1), (x0 * x1, x0 * x1), (x0**2, x1**2)]:
        print(f"Moyal {f} * {g}, N=4 ->", moyal_star(f, g, 4))
    print("Moyal x0*x1 - x1*x0 ->", sp.expand(moyal_star(x0, x1, 4) - moyal_star(x1, x0, 4)))
    print("Jordanian F, N=4 (H power, E power, xi order):")
    for (ph, pe, k), v in sorted(jordanian_F().items(), key=lambda kv: (kv[0][2], kv[0][0])):
        print("   ", ph, pe, k, v)
    print("Jordanian F with the opposite sign exp(+H@ln(1+xi*E)), N=2:")
    for (ph, pe, k), v in sorted(jordanian_F(2, +1).items(), key=lambda kv: (kv[0][2], kv[0][0])):
        print("   ", ph, pe, k, v)
    print("Jordanian phi(E) coefficients of xi^k E^(k+1):", jordanian_phi_E())
    # phi(x^a) = x^a + (1/2) theta^{ab} P_b on generic antisymmetric theta (4D):
    th = {(a, b): sp.Symbol(f"theta{a}{b}") for a in range(4) for b in range(4) if a < b}
    for a in range(4):
        terms = []
        for b in range(4):
            if a == b:
                continue
            c = th[(a, b)] if a < b else -th[(b, a)]
            terms.append(f"{sp.Rational(1, 2) * c}*P{b}")
        print(f"phi(x{a}) (4D) = x{a} + " + " + ".join(terms))


if __name__ == "__main__":
    main()
