"""Reference computations that do not share code with the package.

Everything here goes through sympy: exact resultants, closed forms for the
published branches and a perturbation count for local multiplicities.
"""

from __future__ import annotations

import itertools

import sympy as sp

from flexpuiseux import Polynomial

x, y, z = sp.symbols("x y z")


def to_sympy(p: Polynomial):
    syms = sp.symbols(p.variables)
    if len(p.variables) == 1:
        syms = (syms,)
    expr = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s**e
        expr += term
    return sp.expand(expr)


def sympy_resultant(p: Polynomial, q: Polynomial, var: str):
    """Determinant of sympy's Sylvester matrix.

    ``sympy.resultant`` itself returns the wrong sign in some cases with a
    vanishing constant term (e.g. ``x + 1`` against ``x**3``), so the
    matrix is built and expanded directly.
    """
    from sympy.polys.subresultants_qq_zz import sylvester

    v = sp.Symbol(var)
    return sp.expand(sylvester(to_sympy(p), to_sympy(q), v).det(method="berkowitz"))


# -- three quadrics through the origin ------------------------------------

THREE_QUADRICS = (
    x**2 + y**2 - 2 * z,
    y**2 + x * y - z,
    2 * x**2 - 3 * x * y - 2 * y**2 - 2 * y * z + z,
)


def perturbed_solution_count(eps=(sp.Rational(1, 10**8), sp.Rational(3, 10**8), sp.Rational(-2, 10**8)),
                             radius=0.05, digits=60):
    """Solutions of ``c_i = eps_i`` inside a small ball around the origin.

    ``c_2 = eps_2`` is solved for z; a resultant in y leaves one polynomial
    in x whose roots are back-substituted. The count equals the local
    multiplicity when the perturbation is generic and small.
    """
    c1, c2, c3 = THREE_QUADRICS
    zsol = sp.solve(sp.Eq(c2, eps[1]), z)[0]
    f = sp.expand(c1.subs(z, zsol) - eps[0])
    g = sp.expand(c3.subs(z, zsol) - eps[2])
    rx = sp.Poly(sp.resultant(f, g, y), x)
    found = 0
    for xr in rx.nroots(n=digits, maxsteps=500):
        fy = sp.Poly(f.subs(x, xr), y)
        for yr in fy.nroots(n=digits, maxsteps=500):
            if abs(sp.N(g.subs({x: xr, y: yr}), digits)) > 1e-20:
                continue
            zr = zsol.subs({x: xr, y: yr})
            if max(abs(sp.N(xr)), abs(sp.N(yr)), abs(sp.N(zr))) < radius:
                found += 1
    return found


def monomial_perturbation_count(a: int, b: int) -> int:
    """Solutions of ``x**a = e1, y**b = e2`` near 0 (all of them)."""
    e1, e2 = sp.Rational(1, 10**6), sp.Rational(2, 10**6)
    xs = sp.Poly(x**a - e1, x).nroots()
    ys = sp.Poly(y**b - e2, y).nroots()
    return sum(1 for _ in itertools.product(xs, ys))


# -- closed forms for published branches -------------------------------------


def generic_pencil_leading(l1, l2):
    """Leading coefficients ``(y_1, z_2)`` of both linear branches of I1.

    ``y`` starts at ``t`` and ``z`` at ``t**2``: both generators of the
    pencil have linear parts proportional to ``z``, and the Newton polygon
    of the ``(x, z)`` projection has the single edge ``z**2, x**2*z, x**4``.
    """
    l1, l2 = sp.Rational(l1), sp.Rational(l2)
    d = l1 - 3 * l2 + 1
    w = sp.sqrt((3 * l1 - 8 * l2 + 2) * d)
    out = []
    for s in (1, -1):
        yc = -(d - s * w) / d
        zc = (3 * l1 - 7 * l2 + 2 - s * w) / d
        out.append((complex(sp.N(yc, 30)), complex(sp.N(zc, 30))))
    return out


def i3_branches():
    r3 = sp.sqrt(3)
    out = []
    for s in (1, -1):
        out.append(
            {
                "y1": float(-(1 - s * r3)),
                "y2": float(-(4 - 2 * s * r3)),
                "z2": float(3 - s * r3),
            }
        )
    return out


def case1_coefficients(l2):
    l2 = sp.Rational(l2)
    q = (4 * l2 - 2) / (l2 - 1)
    ycoef = sp.root(q, 3) ** 2 * (l2 - 1) / (4 * l2 - 2)
    zcoef = sp.root(q, 3) / 2
    return complex(sp.N(ycoef, 30)), complex(sp.N(zcoef, 30))


def case2_coefficients(l2):
    l2 = sp.Rational(l2)
    w1 = 2 * l2 / (l2 - 1) * sp.sqrt((3 * l2 - 3) / l2)
    return complex(sp.N(w1, 30)), complex(sp.N(-3 * l2 / (l2 - 1), 30))
