"""Newton-Puiseux expansion of plane algebraic curves at the origin.

A curve ``p(x, y) = 0`` through the origin is split into branches, each
given by a truncated Puiseux series ``y = sum(beta_k * x**(n_k / nu))`` and
its minimal parametrization ``x = t**nu, y = sum(beta_k * t**n_k)``.

Singular steps (Newton polygon edges, roots of edge polynomials) are carried
out in extended precision with mpmath so that multiple roots can be told
apart from close simple ones; once a branch is separated the remaining
coefficients follow from a regular power-series solve in double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Mapping, NamedTuple, Sequence

import mpmath
import numpy as np

from ._roots import RootFindingError, principal_root, roots_with_multiplicity
from .exact_poly import Polynomial

__all__ = [
    "AtLeast",
    "BranchParam",
    "CurveNotThroughOriginError",
    "NewtonEdge",
    "NewtonPolygon",
    "PuiseuxConfig",
    "PuiseuxSeries",
    "RootFindingError",
    "YAxisComponentError",
    "compose",
    "expand_branches",
    "minimal_parametrization",
    "newton_polygon",
    "puiseux_expand",
    "valuation",
]

DEFAULT_ORDER = 8


class CurveNotThroughOriginError(ValueError):
    pass


class YAxisComponentError(ValueError):
    """The base variable divides the polynomial (a branch lies in base = 0)."""


@dataclass(frozen=True)
class PuiseuxConfig:
    """Numerical settings threaded through an expansion.

    tolerance
        Output coefficients (and their real/imaginary parts) with absolute
        value at most this are set to exactly zero.
    max_depth
        Bound on Newton-polygon recursion for unseparated branches.
    precision
        Decimal digits used for the singular part of the expansion.
    cluster_tolerance
        Relative distance under which edge-polynomial roots are merged.
    """

    tolerance: float = 1e-10
    max_depth: int = 32
    precision: int = 100
    cluster_tolerance: float = 1e-10

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


class AtLeast(NamedTuple):
    """Valuation known only to be at least ``bound`` (no term below it)."""

    bound: Fraction | float

    def __str__(self):
        return f">= {self.bound}"


def _clean_complex(c: complex, tol: float) -> complex:
    re, im = c.real, c.imag
    if abs(re) <= tol:
        re = 0.0
    if abs(im) <= tol:
        im = 0.0
    return complex(re + 0.0, im + 0.0)


def _format_complex(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return f"{im:.12g}i"
    sign = "+" if im > 0 else "-"
    return f"({re:.12g}{sign}{abs(im):.12g}i)"


def _format_exponent(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


@dataclass(frozen=True)
class PuiseuxSeries:
    """Truncated series ``sum(c * t**e)`` with rational exponents.

    ``terms`` holds ``(exponent, coefficient)`` pairs with strictly
    increasing exponents and nonzero coefficients. Every term with exponent
    below ``truncation_order`` is present; ``math.inf`` marks an exact
    (finite) series.
    """

    terms: tuple = ()
    truncation_order: Fraction | float = math.inf

    def __post_init__(self):
        terms = tuple((Fraction(e), complex(c)) for e, c in self.terms)
        last = None
        for e, c in terms:
            if c == 0:
                raise ValueError("zero coefficient stored in series")
            if e < 0:
                raise ValueError("negative exponent in series")
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly increasing")
            last = e
        if last is not None and not last < self.truncation_order:
            raise ValueError("stored exponent at or beyond truncation order")
        object.__setattr__(self, "terms", terms)
        if self.truncation_order != math.inf:
            object.__setattr__(self, "truncation_order", Fraction(self.truncation_order))

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        return self.terms[0][0] if self.terms else AtLeast(self.truncation_order)

    def leading(self):
        """``(exponent, coefficient)`` of the first term, or ``None``."""
        return self.terms[0] if self.terms else None

    def coefficient(self, exponent) -> complex:
        exponent = Fraction(exponent)
        if exponent >= self.truncation_order:
            raise ValueError(f"exponent {exponent} beyond truncation {self.truncation_order}")
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0j

    def real_part(self, tolerance: float = 1e-10) -> "PuiseuxSeries":
        terms = [(e, complex(c.real, 0.0)) for e, c in self.terms if abs(c.real) > tolerance]
        return PuiseuxSeries(tuple(terms), self.truncation_order)

    def truncate(self, order) -> "PuiseuxSeries":
        order = min(Fraction(order), self.truncation_order) if order != math.inf else self.truncation_order
        return PuiseuxSeries(tuple((e, c) for e, c in self.terms if e < order), order)

    def evaluate(self, t: complex) -> complex:
        return sum(c * t ** float(e) for e, c in self.terms)

    def render(self, var: str = "t") -> str:
        if not self.terms:
            body = "0"
        else:
            body = ""
            for e, c in self.terms:
                sign = " + "
                if c.imag == 0 and c.real < 0:
                    sign, c = " - ", -c
                if e == 0:
                    piece = _format_complex(c)
                else:
                    mono = var if e == 1 else f"{var}^{_format_exponent(e)}"
                    piece = mono if c == 1 else f"{_format_complex(c)} * {mono}"
                if not body:
                    body = piece if sign == " + " else f"-{piece}"
                else:
                    body += sign + piece
        if self.truncation_order == math.inf:
            return body
        return f"{body} + O({var}^{_format_exponent(self.truncation_order)})"

    def __str__(self):
        return self.render()

    def to_json(self) -> list:
        return [
            {"exponent": [e.numerator, e.denominator], "re": c.real, "im": c.imag}
            for e, c in self.terms
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], truncation_order=math.inf) -> "PuiseuxSeries":
        terms = [(Fraction(d["exponent"][0], d["exponent"][1]), complex(d["re"], d["im"])) for d in data]
        return cls(tuple(terms), truncation_order)


def valuation(s: PuiseuxSeries):
    """Exponent of the first nonzero term, else ``AtLeast(truncation_order)``."""
    return s.valuation()


@dataclass(frozen=True)
class BranchParam:
    """Minimal parametrization of a curve branch in a common parameter t.

    ``series[base]`` is exactly ``t**ramification``; every other coordinate
    is a truncated series in t with integer exponents.
    """

    base: str
    ramification: int
    series: Mapping[str, PuiseuxSeries]
    truncation_order: int | float
    multiplicity: int = 1
    separated: bool = True

    def __post_init__(self):
        object.__setattr__(self, "series", dict(self.series))
        base_series = self.series.get(self.base)
        if base_series is None or base_series.terms != ((Fraction(self.ramification), 1 + 0j),):
            raise ValueError("base coordinate must be exactly t**ramification")

    @property
    def variables(self) -> tuple:
        return tuple(self.series)

    def exponent_gcd(self) -> int:
        g = self.ramification
        for s in self.series.values():
            for e, _ in s.terms:
                g = gcd(g, int(e))
        return g

    def order(self) -> int:
        """Branch order: smallest valuation over all coordinates."""
        vals = [s.terms[0][0] for s in self.series.values() if s.terms]
        if not vals:
            raise ValueError("all-zero branch has no order")
        return int(min(vals))

    def real_part(self, tolerance: float = 1e-10) -> "BranchParam":
        return BranchParam(
            self.base,
            self.ramification,
            {v: s.real_part(tolerance) for v, s in self.series.items()},
            self.truncation_order,
            self.multiplicity,
            self.separated,
        )

    def render(self, var: str = "t") -> str:
        return ", ".join(f"{v}={s.truncate(math.inf).render(var)}" for v, s in self.series.items())

    def __str__(self):
        return self.render()

    def to_json(self) -> dict:
        trunc = self.truncation_order
        return {
            "base": self.base,
            "ramification": self.ramification,
            "truncation_order": "inf" if trunc == math.inf else int(trunc),
            "series": {v: s.to_json() for v, s in self.series.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BranchParam":
        trunc = data.get("truncation_order", "inf")
        trunc = math.inf if trunc == "inf" else int(trunc)
        series = {}
        for v, terms in data["series"].items():
            s = PuiseuxSeries.from_json(terms)
            if v != data["base"]:
                s = s.truncate(trunc)
            series[v] = s
        return cls(data["base"], int(data["ramification"]), series, trunc)


# ---------------------------------------------------------------------------
# Newton polygon


@dataclass(frozen=True)
class NewtonEdge:
    """One edge of the Newton polygon.

    ``slope`` is ``dj/di`` in the (x-exponent, y-exponent) plane; the branch
    exponent ``y ~ x**exponent`` is ``-1/slope`` (``inf`` for the horizontal
    edge of a ``y = 0`` component). ``edge_polynomial[k]`` is the
    coefficient of ``z**k`` in ``sum(a_ij * z**(j - j_low))`` over the edge.
    """

    slope: Fraction
    points: tuple
    edge_polynomial: tuple

    @property
    def exponent(self):
        return math.inf if self.slope == 0 else -1 / self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    edges: tuple = field(default_factory=tuple)

    def slopes(self) -> list:
        return [e.slope for e in self.edges]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull(points) -> list:
    """Lower-left hull vertices from the lowest point of the leftmost
    column to the leftmost point of the lowest row."""
    best: dict = {}
    for i, j in points:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())
    jmin = min(j for _, j in pts)
    stop = next(k for k, (_, j) in enumerate(pts) if j == jmin)
    hull: list = []
    for p in pts[: stop + 1]:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def _edge_points(a, b, support):
    (ia, ja), (ib, jb) = a, b
    return sorted(
        (i, j)
        for i, j in support
        if ia <= i <= ib and (i - ia) * (jb - ja) == (j - ja) * (ib - ia)
    )


def _as_bivariate(p: Polynomial, base: str) -> tuple[str, dict]:
    free = p.free_variables()
    others = [v for v in p.variables if v != base]
    if base not in p.variables:
        raise ValueError(f"base variable {base!r} not among {p.variables}")
    extra = [v for v in free if v != base]
    if len(extra) > 1:
        raise ValueError(f"expected a bivariate polynomial, found variables {free}")
    dep = extra[0] if extra else (others[0] if others else None)
    if dep is None:
        raise ValueError("need a dependent variable")
    ib, jd = p.variables.index(base), p.variables.index(dep)
    return dep, {(m[ib], m[jd]): c for m, c in p.terms.items()}


def newton_polygon(p: Polynomial, base: str | None = None) -> NewtonPolygon:
    """Newton polygon of a bivariate polynomial vanishing at the origin."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polygon")
    base = base or p.variables[0]
    _, support = _as_bivariate(p, base)
    if (0, 0) in support:
        raise CurveNotThroughOriginError("p(0, 0) != 0: origin is not on the curve")
    hull = _lower_hull(support)
    edges = []
    for a, b in zip(hull, hull[1:]):
        pts = _edge_points(a, b, support)
        jlow = b[1]
        poly = [Fraction(0)] * (a[1] - jlow + 1)
        for i, j in pts:
            poly[j - jlow] = support[(i, j)]
        edges.append(NewtonEdge(Fraction(b[1] - a[1], b[0] - a[0]), tuple(pts), tuple(poly)))
    jmin = min(j for _, j in support)
    if jmin > 0:
        i_at = min(i for i, j in support if j == jmin)
        edges.append(NewtonEdge(Fraction(0), ((i_at, jmin),), (support[(i_at, jmin)],)))
    return NewtonPolygon(tuple(edges))


# ---------------------------------------------------------------------------
# expansion


@dataclass
class _RawBranch:
    ramification: int
    terms: list  # (t-exponent, mpc)
    truncation: float | int
    multiplicity: int = 1
    separated: bool = True


class _Expander:
    def __init__(self, order: int, config: PuiseuxConfig):
        self.order = int(order)
        self.cfg = config
        self.ctx = mpmath.MPContext()
        self.ctx.dps = config.precision
        self.zero_rel = self.ctx.mpf(10) ** (-(config.precision // 2))
        self.out: list[_RawBranch] = []

    def _normalize(self, Q: dict) -> dict:
        scale = max(abs(a) for a in Q.values())
        thr = scale * self.zero_rel
        return {k: a / scale for k, a in Q.items() if abs(a) > thr}

    def run(self, support: Mapping) -> list[_RawBranch]:
        ctx = self.ctx
        Q = {k: ctx.mpf(c.numerator) / c.denominator for k, c in support.items()}
        self._step(self._normalize(Q), [], 0, 1, 0, False)
        return self.out

    def _step(self, Q, prefix, E, P, depth, cut_used):
        jmin = min(j for _, j in Q)
        if jmin > 0:
            trunc = max(self.order, E + 1) if cut_used else math.inf
            # after a cut, a repeated factor may hide branches that split later
            self.out.append(_RawBranch(P, list(prefix), trunc, jmin, not (cut_used and jmin > 1)))
            Q = {(i, j - jmin): a for (i, j), a in Q.items()}
            if (0, 0) in Q:
                return
        column = [j for i, j in Q if i == 0]
        if not column:
            raise YAxisComponentError("the base variable divides the polynomial")
        j0 = min(column)
        if j0 == 1:
            self.out.append(self._regular(Q, prefix, E, P))
            return
        if depth >= self.cfg.max_depth:
            self.out.append(_RawBranch(P, list(prefix), max(self.order, E + 1), j0, False))
            return
        hull = _lower_hull(Q.keys())
        for a, b in zip(hull, hull[1:]):
            self._edge(Q, a, b, prefix, E, P, depth, cut_used)

    def _edge(self, Q, a, b, prefix, E, P, depth, cut_used):
        ctx = self.ctx
        (ia, ja), (ib, jb) = a, b
        di, dj = ib - ia, ja - jb
        g = gcd(di, dj)
        q, p = di // g, dj // g
        pts = _edge_points(a, b, Q.keys())
        psi = [ctx.mpc(0)] * (dj // p + 1)
        for i, j in pts:
            psi[(j - jb) // p] = Q[(i, j)]
        shift_exp = p * ia + q * ja
        for xi, mu in roots_with_multiplicity(ctx, psi, self.cfg.cluster_tolerance):
            c = principal_root(ctx, xi, p)
            E1, P1 = E * p + q, P * p
            prefix1 = [(e * p, coef) for e, coef in prefix] + [(E1, c)]
            if mu > 1 and E1 >= 2 * self.order + 2:
                self.out.append(_RawBranch(P1, prefix1, E1 + 1, mu, False))
                continue
            remaining = max(self.order - E1, 0) + self.order + 1
            deg_w = max(j for _, j in Q)
            cut = (deg_w + 1) * (remaining + 1)
            Q1, dropped = self._substitute(Q, p, q, c, shift_exp, cut)
            self._step(Q1, prefix1, E1, P1, depth + 1, cut_used or dropped)

    def _substitute(self, Q, p, q, c, shift_exp, cut):
        ctx = self.ctx
        deg_w = max(j for _, j in Q)
        cpow = [ctx.mpc(1)]
        for _ in range(deg_w):
            cpow.append(cpow[-1] * c)
        out: dict = {}
        dropped = False
        for (i, j), a in Q.items():
            e = p * i + q * j - shift_exp
            if e > cut:
                dropped = True
                continue
            for k in range(j + 1):
                key = (e, k)
                out[key] = out.get(key, 0) + a * comb(j, k) * cpow[j - k]
        return self._normalize(out), dropped

    def _regular(self, Q, prefix, E, P) -> _RawBranch:
        """Finish a separated branch: w solves Q(s, w) = 0 with Q_w(0,0) != 0."""
        M = self.order - E
        if M <= 1:
            return _RawBranch(P, list(prefix), max(self.order, E + 1))
        deg_w = max(j for _, j in Q)
        A = np.zeros((deg_w + 1, M), dtype=complex)
        for (i, j), a in Q.items():
            if i < M:
                A[j, i] += complex(a)
        a01 = A[1, 0]
        w = np.zeros(M, dtype=complex)
        for _ in range(M + 1):
            val = A[deg_w].copy()
            for j in range(deg_w - 1, -1, -1):
                val = np.convolve(val, w)[:M] + A[j]
            step = val / a01
            w = w - step
            if np.all(np.abs(step) <= 1e-300):
                break
        terms = list(prefix) + [(E + k, w[k]) for k in range(1, M) if w[k] != 0]
        return _RawBranch(P, terms, self.order)


def _bivariate_checks(p: Polynomial, base: str):
    if p.is_zero():
        raise ValueError("the zero polynomial does not define a curve")
    dep, support = _as_bivariate(p, base)
    if (0, 0) in support:
        raise CurveNotThroughOriginError("p(0, 0) != 0: origin is not on the curve")
    if all(i > 0 for i, _ in support):
        raise YAxisComponentError(
            f"{base} divides the polynomial: a branch lies in {base} = 0; expand over another base"
        )
    return dep, support


def _canonical_representative(terms: list, nu: int, tol: float) -> list:
    """Pick among t -> eps*t conjugates the one whose first nonzero
    coefficient is largest by (real, imaginary) part."""
    if nu == 1 or not terms:
        return terms
    e1, c1 = terms[0]
    best_k, best_key = 0, None
    for k in range(nu):
        eps = cmath.exp(2j * math.pi * k * e1 / nu)
        lead = c1 * eps
        key = (round(lead.real / (10 * tol)), round(lead.imag / (10 * tol)))
        if best_key is None or key > best_key:
            best_k, best_key = k, key
    return [(e, c * cmath.exp(2j * math.pi * best_k * e / nu)) for e, c in terms]


def _raw_to_series(raw: _RawBranch, tol: float) -> PuiseuxSeries:
    cleaned = []
    for e, c in raw.terms:
        c = _clean_complex(complex(c), tol)
        if c != 0 and e < raw.truncation:
            cleaned.append((Fraction(e, raw.ramification), c))
    nu = lcm(1, *[e.denominator for e, _ in cleaned])
    ints = [(int(e * nu), c) for e, c in cleaned]
    ints = _canonical_representative(ints, nu, tol)
    terms = tuple((Fraction(e, nu), _clean_complex(c, tol)) for e, c in ints)
    trunc = raw.truncation if raw.truncation == math.inf else Fraction(raw.truncation, raw.ramification)
    return PuiseuxSeries(terms, trunc)


def _series_sort_key(s: PuiseuxSeries):
    if not s.terms:
        return (0, 0, 0, 0)
    out = []
    for e, c in s.terms[:4]:
        out.extend([float(e), -round(c.real, 8), -round(c.imag, 8)])
    return (1, *out)


def puiseux_expand(
    p: Polynomial, base: str, order: int = DEFAULT_ORDER, config: PuiseuxConfig | None = None
) -> list[PuiseuxSeries]:
    """Puiseux series of every branch of ``p = 0`` at the origin.

    One representative per conjugacy class is returned; ``order`` is the
    truncation order in the branch parameter t (all terms of t-exponent
    below it are present).

    Raises
    ------
    YAxisComponentError
        ``base`` divides ``p``; expand with the other variable as base.
    RootFindingError
        An edge polynomial could not be solved at the configured precision.
    """
    return [s for s, _ in _expand(p, base, order, config)]


def _expand(p, base, order, config):
    config = config or PuiseuxConfig()
    if order < 1:
        raise ValueError("truncation order must be positive")
    _, support = _bivariate_checks(p, base)
    raws = _Expander(order, config).run(support)
    pairs = [(_raw_to_series(r, config.tolerance), r) for r in raws]
    pairs.sort(key=lambda sr: _series_sort_key(sr[0]))
    return pairs


def minimal_parametrization(s: PuiseuxSeries, base: str, dep: str) -> BranchParam:
    """``x = t**nu, y = sum(beta * t**(nu * e))`` with ``nu`` the lcm of the
    exponent denominators."""
    nu = lcm(1, *[e.denominator for e, _ in s.terms])
    terms = tuple((e * nu, c) for e, c in s.terms)
    if s.truncation_order == math.inf:
        trunc = math.inf
    else:
        trunc = math.ceil(s.truncation_order * nu)
    dep_series = PuiseuxSeries(terms, trunc)
    base_series = PuiseuxSeries(((Fraction(nu), 1 + 0j),), math.inf)
    return BranchParam(base, nu, {base: base_series, dep: dep_series}, trunc)


def expand_branches(
    p: Polynomial, base: str, order: int = DEFAULT_ORDER, config: PuiseuxConfig | None = None
) -> list[BranchParam]:
    """Minimal parametrizations of all branches of ``p = 0`` at the origin."""
    dep, _ = _as_bivariate(p, base)
    out = []
    for s, raw in _expand(p, base, order, config):
        b = minimal_parametrization(s, base, dep)
        if raw.multiplicity != 1 or not raw.separated:
            b = BranchParam(b.base, b.ramification, b.series, b.truncation_order, raw.multiplicity, raw.separated)
        out.append(b)
    return out


# ---------------------------------------------------------------------------
# composition


def _dense(s: PuiseuxSeries, length: int) -> np.ndarray:
    arr = np.zeros(length, dtype=complex)
    for e, c in s.terms:
        if e.denominator != 1:
            raise ValueError("composition needs integer exponents in t")
        if e < length:
            arr[int(e)] += c
    return arr


def compose(p: Polynomial, b: BranchParam, tolerance: float = 1e-10) -> PuiseuxSeries:
    """Series of ``p`` evaluated along the branch ``b``.

    The truncation order of the result is the order below which every
    coefficient is determined by the known terms of ``b``. A coefficient is
    treated as zero when it is at most ``tolerance`` times the magnitude of
    the contributions summed into it.
    """
    free = p.free_variables()
    missing = [v for v in free if v not in b.series]
    if missing:
        raise KeyError(f"branch has no series for {missing}")
    idx = {v: p.variables.index(v) for v in free}
    trunc = {v: b.series[v].truncation_order for v in free}
    val = {}
    for v in free:
        s = b.series[v]
        val[v] = s.terms[0][0] if s.terms else trunc[v]

    valid = math.inf
    exact_len = 0
    for m in p.terms:
        used = [(v, m[idx[v]]) for v in free if m[idx[v]]]
        low = sum(e * val[v] for v, e in used)
        for v, e in used:
            valid = min(valid, trunc[v] + low - val[v])
        degree = 0
        for v, e in used:
            top = b.series[v].terms[-1][0] if b.series[v].terms else 0
            degree += e * top
        exact_len = max(exact_len, degree)
    if valid == math.inf:
        length = int(exact_len) + 1
    else:
        length = max(int(math.ceil(valid)), 1)

    dense = {v: _dense(b.series[v], length) for v in free}
    dense_abs = {v: np.abs(d) for v, d in dense.items()}
    total = np.zeros(length, dtype=complex)
    magnitude = np.zeros(length)
    powers: dict = {}

    def power(v, e, absolute):
        key = (v, e, absolute)
        if key not in powers:
            base = dense_abs[v] if absolute else dense[v]
            if e == 1:
                powers[key] = base
            else:
                powers[key] = np.convolve(power(v, e - 1, absolute), base)[:length]
        return powers[key]

    for m, c in p.terms.items():
        term = np.zeros(length, dtype=complex)
        term[0] = 1.0
        mag = np.zeros(length)
        mag[0] = 1.0
        for v in free:
            e = m[idx[v]]
            if e:
                term = np.convolve(term, power(v, e, False))[:length]
                mag = np.convolve(mag, power(v, e, True))[:length]
        total += complex(c) * term
        magnitude += abs(float(c)) * mag

    terms = []
    for k in range(length):
        if k >= valid:
            break
        ck = total[k]
        if abs(ck) > tolerance * magnitude[k] and abs(ck) > 0:
            terms.append((Fraction(k), _clean_complex(complex(ck), tolerance * magnitude[k])))
    trunc_out = valid if valid == math.inf else Fraction(valid)
    return PuiseuxSeries(tuple(terms), trunc_out)
