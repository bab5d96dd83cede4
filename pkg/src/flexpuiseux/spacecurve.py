"""Branches of space curves through the origin.

The curve cut out by ``m - 1`` polynomials in ``m`` unknowns is projected to
every coordinate plane containing a chosen base axis (iterated resultants),
each planar image is expanded into Puiseux branches, and the planar branches
are recombined. A combination is kept only if substituting it into every
generator vanishes up to the truncation order; this also discards the
extraneous components that resultants tend to introduce.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exact_poly import Polynomial, resultant
from .puiseux import (
    DEFAULT_ORDER,
    BranchParam,
    PuiseuxConfig,
    PuiseuxSeries,
    YAxisComponentError,
    _clean_complex,
    compose,
    expand_branches,
)

__all__ = [
    "AmbiguousLiftError",
    "NoConsistentLiftError",
    "ProjectionError",
    "SpaceBranch",
    "branch_order",
    "lift_branches",
    "merged_variables",
    "project",
]

# A space branch is a minimal parametrization over more than two coordinates.
SpaceBranch = BranchParam


class ProjectionError(ValueError):
    pass


class NoConsistentLiftError(ArithmeticError):
    pass


class AmbiguousLiftError(ArithmeticError):
    """Distinct planar data lift to branches that agree to the truncation order."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = candidates


def merged_variables(polys: Sequence[Polynomial]) -> tuple:
    out: list = []
    for p in polys:
        for v in p.variables:
            if v not in out:
                out.append(v)
    return tuple(out)


def _primitive(p: Polynomial) -> Polynomial:
    """Scale to coprime integer coefficients with a positive leading term."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = gcd(num, (c * den).numerator)
    lead = p.sorted_terms()[0][1]
    factor = Fraction(den, num) * (1 if lead > 0 else -1)
    return p * factor


def _eliminate(gens: list, v: str) -> list:
    containing = [g for g in gens if g.degree(v) > 0]
    rest = [g for g in gens if g.degree(v) <= 0]
    if not containing:
        return gens
    if len(containing) == 1:
        # the projection of a single hypersurface along v is unconstrained
        return rest
    order = sorted(containing, key=lambda g: (g.degree(v), g.total_degree(), len(g.terms)))
    best: list | None = None
    for pivot in order:
        res = [resultant(pivot, g, v) for g in order if g is not pivot]
        nonzero = [_primitive(r) for r in res if not r.is_zero()]
        if len(nonzero) == len(res):
            best = nonzero
            break
        if nonzero and (best is None or len(nonzero) > len(best)):
            best = nonzero
    if not best:
        raise ProjectionError(f"every resultant eliminating {v!r} vanishes identically")
    return rest + best


def project(
    generators: Sequence[Polynomial],
    base: str,
    dep: str,
    elimination_order: Sequence[str] | None = None,
) -> Polynomial:
    """Polynomial in ``{base, dep}`` vanishing on the projected curve.

    Variables other than ``base`` and ``dep`` are eliminated by Sylvester
    resultants, by default in reverse declaration order. The result is
    scaled to primitive integer coefficients.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ProjectionError("no nonzero generators")
    variables = merged_variables(gens)
    gens = [g.with_variables(variables) for g in gens]
    for v in (base, dep):
        if v not in variables:
            raise ProjectionError(f"unknown variable {v!r}")
    if elimination_order is None:
        elimination_order = [v for v in reversed(variables) if v not in (base, dep)]
    for v in elimination_order:
        gens = _eliminate(gens, v)
    keep = {base, dep}
    planar = [g for g in gens if set(g.free_variables()) <= keep and dep in g.free_variables()]
    if not planar:
        # an image inside the base hyperplane shows up as a polynomial in base alone
        planar = [g for g in gens if g.free_variables() == (base,)]
    if not planar:
        raise ProjectionError(
            f"fewer generators than variables to eliminate: nothing constrains {dep!r} against {base!r}"
        )
    best = min(planar, key=lambda g: (g.total_degree(), len(g.terms)))
    return _primitive(best.with_variables((base, dep)))


def branch_order(b: BranchParam) -> int:
    """Smallest valuation over all coordinate series of the branch."""
    return b.order()


# ---------------------------------------------------------------------------
# lifting


_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def _unit_root(k: int, n: int) -> complex:
    """exp(2*pi*i*k/n), exact when it is a power of i."""
    r = Fraction(k, n) % 1
    if (4 * r).denominator == 1:
        return _QUARTER_TURNS[int(4 * r)]
    return cmath.exp(2j * math.pi * float(r))


def _scaled(terms, tol):
    out = []
    for e, c in terms:
        c = _clean_complex(c, tol)
        if c != 0:
            out.append((e, c))
    return tuple(out)


def _rescale(series: PuiseuxSeries, factor: int, k: int, nu: int, tol: float) -> PuiseuxSeries:
    """Substitute t -> exp(2*pi*i*k/nu) * T**factor."""
    terms = _scaled(((e * factor, c * _unit_root(k * int(e), nu)) for e, c in series.terms), tol)
    trunc = series.truncation_order
    return PuiseuxSeries(terms, trunc if trunc == math.inf else trunc * factor)


def _rotate(b: BranchParam, k: int, tol: float = 0.0) -> BranchParam:
    """Apply t -> eps**k t with eps a primitive ramification-th root of unity."""
    nu = b.ramification
    out = {}
    for v, s in b.series.items():
        if v == b.base:
            out[v] = s
            continue
        terms = _scaled(((e, c * _unit_root(k * int(e), nu)) for e, c in s.terms), tol)
        out[v] = PuiseuxSeries(terms, s.truncation_order)
    return BranchParam(b.base, nu, out, b.truncation_order, b.multiplicity, b.separated)


def _signature(b: BranchParam, tol: float, nterms: int = 6):
    key = []
    for v, s in b.series.items():
        if v == b.base:
            continue
        for e, c in s.terms[:nterms]:
            key.append((int(e), round(c.real / (10 * tol)), round(c.imag / (10 * tol))))
        key.append((-1, 0, 0))
    return key


def _canonical(b: BranchParam, tol: float) -> BranchParam:
    """Representative of the t -> eps*t class with the largest leading data."""
    if b.ramification == 1:
        return b
    best, best_key = b, None
    for k in range(b.ramification):
        r = _rotate(b, k, tol)
        key = [(-e, re, im) for e, re, im in _signature(r, tol)]
        if best_key is None or key > best_key:
            best, best_key = r, key
    return best


def _minimize(b: BranchParam) -> BranchParam:
    g = b.exponent_gcd()
    if g == 1:
        return b
    trunc = b.truncation_order
    new_trunc = trunc if trunc == math.inf else math.ceil(Fraction(trunc, g))
    series = {}
    for v, s in b.series.items():
        terms = tuple((e / g, c) for e, c in s.terms)
        st = s.truncation_order
        series[v] = PuiseuxSeries(terms, st if st == math.inf else math.ceil(st / g))
    return BranchParam(b.base, b.ramification // g, series, new_trunc, b.multiplicity, b.separated)


def _close(a: BranchParam, b: BranchParam, tol: float) -> bool:
    if a.ramification != b.ramification:
        return False
    trunc = min(a.truncation_order, b.truncation_order)
    for v in a.series:
        sa, sb = a.series[v], b.series[v]
        exps = {e for e, _ in sa.terms if e < trunc} | {e for e, _ in sb.terms if e < trunc}
        for e in exps:
            ca, cb = sa.coefficient(e), sb.coefficient(e)
            if abs(ca - cb) > 1e3 * tol * (1 + abs(ca) + abs(cb)):
                return False
    return True


def _equivalent(a: BranchParam, b: BranchParam, tol: float) -> bool:
    if a.ramification != b.ramification:
        return False
    return any(_close(_rotate(a, k), b, tol) for k in range(a.ramification))


def _vanishes(g: Polynomial, b: BranchParam, tol: float) -> bool:
    s = compose(g, b, tol)
    return s.is_zero()


def _lift_with_base(gens, variables, base, order, config):
    deps = [v for v in variables if v != base]
    images = {d: project(gens, base, d) for d in deps}
    for d, img in images.items():
        if all(m[0] > 0 for m in img.terms):
            raise YAxisComponentError(f"projection to ({base}, {d}) contains the line {base} = 0")
    planar = {d: expand_branches(images[d], base, order, config) for d in deps}
    tol = config.tolerance

    accepted: list[tuple[BranchParam, tuple]] = []
    for combo in itertools.product(*[planar[d] for d in deps]):
        L = lcm(*[b.ramification for b in combo])
        root_choices = [range(1)] + [range(b.ramification) for b in combo[1:]]
        for ks in itertools.product(*root_choices):
            series = {}
            trunc = math.inf
            for d, b, k in zip(deps, combo, ks):
                factor = L // b.ramification
                series[d] = _rescale(b.series[d], factor, k, b.ramification, tol)
                bt = b.truncation_order
                trunc = min(trunc, bt if bt == math.inf else bt * factor)
            ordered = {base: PuiseuxSeries(((Fraction(L), 1 + 0j),), math.inf)}
            for v in variables:
                if v != base:
                    ordered[v] = series[v].truncate(trunc) if trunc != math.inf else series[v]
            mult = min(b.multiplicity for b in combo)
            separated = all(b.separated for b in combo)
            cand = BranchParam(base, L, ordered, trunc, mult, separated)
            if all(_vanishes(g, cand, tol) for g in gens):
                accepted.append((_canonical(_minimize(cand), tol), tuple(id(b) for b in combo)))

    if not accepted:
        raise NoConsistentLiftError(
            f"no combination of planar branches over base {base!r} satisfies all generators; "
            "raise the truncation order"
        )
    unique: list[tuple[BranchParam, tuple]] = []
    for cand, source in accepted:
        for kept, kept_source in unique:
            if _equivalent(cand, kept, tol):
                if kept_source != source:
                    raise AmbiguousLiftError(
                        "different planar branches lift to the same branch at this truncation order",
                        [kept, cand],
                    )
                break
        else:
            unique.append((cand, source))
    branches = [b for b, _ in unique]
    branches.sort(key=lambda b: (b.ramification, [(-x, -y, -z) for x, y, z in _signature(b, tol)]))
    return branches


# ---------------------------------------------------------------------------
# smooth points


def _linear_part(gens, variables) -> list[list[Fraction]]:
    rows = []
    for g in gens:
        row = [Fraction(0)] * len(variables)
        for mono, c in g.terms.items():
            if sum(mono) == 1:
                row[mono.index(1)] = c
        rows.append(row)
    return rows


def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    a = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        pick = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pick is None:
            continue
        a[r], a[pick] = a[pick], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def _series_eval(g: Polynomial, coords: list[list[Fraction]], n: int) -> list[Fraction]:
    """Coefficients of ``g(coords(t))`` below ``t**n``."""
    out = [Fraction(0)] * n
    coords = [list(c[:n]) + [Fraction(0)] * (n - len(c)) for c in coords]
    powers: dict = {}

    def power(i, e):
        if (i, e) not in powers:
            if e == 1:
                powers[(i, e)] = coords[i][:n]
            else:
                prev, base = power(i, e - 1), coords[i]
                res = [Fraction(0)] * n
                for a, pa in enumerate(prev):
                    if pa:
                        for b in range(n - a):
                            if base[b]:
                                res[a + b] += pa * base[b]
                powers[(i, e)] = res
        return powers[(i, e)]

    for mono, c in g.terms.items():
        term = [Fraction(0)] * n
        term[0] = c
        for i, e in enumerate(mono):
            if e:
                pe = power(i, e)
                res = [Fraction(0)] * n
                for a, ta in enumerate(term):
                    if ta:
                        for b in range(n - a):
                            if pe[b]:
                                res[a + b] += ta * pe[b]
                term = res
        out = [x + y for x, y in zip(out, term)]
    return out


def _smooth_branch(gens, variables, base, order):
    """The unique branch through a smooth point, solved order by order.

    Returns ``None`` when the linear parts do not have rank ``m - 1`` or
    the tangent line lies in the hyperplane of ``base``.
    """
    m = len(variables)
    jac = _linear_part(gens, variables)
    echelon, pivots = _row_reduce(jac)
    if len(pivots) != m - 1:
        return None
    free = next(c for c in range(m) if c not in pivots)
    tangent = [Fraction(0)] * m
    tangent[free] = Fraction(1)
    for row, c in zip(echelon, pivots):
        tangent[c] = -row[free]
    if base is None:
        bi = next(i for i in range(m) if tangent[i] != 0)
    else:
        bi = variables.index(base)
        if tangent[bi] == 0:
            return None
    deps = [i for i in range(m) if i != bi]
    # independent generators and the square system for the dependent coordinates
    chosen_rows = _independent_rows(jac, m - 1)
    sub = [[jac[r][i] for i in deps] for r in chosen_rows]
    coords = [[Fraction(0)] * order for _ in range(m)]
    coords[bi][1] = Fraction(1)
    for k in range(1, order):
        rhs = []
        for r in chosen_rows:
            rhs.append(-_series_eval(gens[r], coords, k + 1)[k])
        aug = [row + [v] for row, v in zip(sub, rhs)]
        red, piv = _row_reduce(aug)
        solution = [Fraction(0)] * len(deps)
        for row, c in zip(red, piv):
            solution[c] = row[-1]
        for j, i in enumerate(deps):
            coords[i][k] = solution[j]
    series = {}
    exact = all(
        not any(_series_eval(g, coords, (g.total_degree() * order) + 1)) for g in gens
    )
    trunc = math.inf if exact else order
    for i, v in enumerate(variables):
        if i == bi:
            series[v] = PuiseuxSeries(((Fraction(1), 1 + 0j),), math.inf)
            continue
        terms = tuple((Fraction(k), complex(c)) for k, c in enumerate(coords[i]) if c)
        series[v] = PuiseuxSeries(terms, trunc)
    b = BranchParam(variables[bi], 1, series, trunc)
    return b


def _independent_rows(rows, count):
    chosen: list[int] = []
    for i in range(len(rows)):
        trial = [rows[j] for j in chosen + [i]]
        _, piv = _row_reduce(trial)
        if len(piv) == len(trial):
            chosen.append(i)
        if len(chosen) == count:
            break
    return chosen


def lift_branches(
    generators: Sequence[Polynomial],
    base: str | None = None,
    order: int = DEFAULT_ORDER,
    config: PuiseuxConfig | None = None,
) -> list[BranchParam]:
    """Minimal parametrizations of the branches through the origin.

    With ``base=None`` the variables are tried in declaration order and the
    first one whose coordinate hyperplane contains no branch is used.
    """
    config = config or PuiseuxConfig()
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ProjectionError("no nonzero generators")
    variables = merged_variables(gens)
    gens = [g.with_variables(variables) for g in gens]
    for g in gens:
        if g.constant_term() != 0:
            raise ValueError(f"generator {g} does not vanish at the origin")
    if len(variables) == 1:
        raise ProjectionError("a single unknown leaves no curve to parametrize")
    smooth = _smooth_branch(gens, variables, base, order)
    if smooth is not None:
        if not all(_vanishes(g, smooth, config.tolerance) for g in gens):
            raise NoConsistentLiftError("the origin is an isolated solution")
        return [smooth]
    if base is not None:
        return _lift_with_base(gens, variables, base, order, config)
    last: Exception | None = None
    for candidate in variables:
        try:
            return _lift_with_base(gens, variables, candidate, order, config)
        except YAxisComponentError as exc:
            last = exc
    raise YAxisComponentError(f"every coordinate hyperplane contains a branch ({last})")
