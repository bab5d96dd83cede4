"""Higher-order flexes of bar-joint frameworks.

A framework is turned into quadratic edge-length constraints around its
realization (shifted to the origin). For an isostatic system one constraint
at a time is removed, optionally after mixing it into the others with pencil
parameters, and each branch of the resulting curve is tested against the
removed constraint: contact of order ``n + 1`` with a branch of order ``k``
is a ``(k, n)``-flex. Systems with one more unknown than constraints are
mobile and their branches are reported directly with ``n = inf``.

The local multiplicity of the constraint system at the origin is computed
from the Macaulay dual space, degree by degree.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .exact_poly import Polynomial, parse_polynomial, shift
from .puiseux import AtLeast, BranchParam, PuiseuxConfig, compose
from .spacecurve import AmbiguousLiftError, lift_branches

__all__ = [
    "INF",
    "AnalysisConfig",
    "ConstraintSystem",
    "DegreeBoundError",
    "FlexClass",
    "FlexReport",
    "Framework",
    "FrameworkError",
    "IrregularHypersurfaceError",
    "analyze",
    "build_constraints",
    "classify_branch",
    "intersection_multiplicity",
    "local_multiplicity",
    "pencil_ideal",
    "real_flex",
    "removal_ideal",
]

INF = math.inf
_AXES = "xyz"


class FrameworkError(ValueError):
    pass


class IrregularHypersurfaceError(ValueError):
    """The removed constraint is singular at the origin."""


class DegreeBoundError(ArithmeticError):
    """Dual-space dimensions neither stabilized nor settled into a linear pattern."""


def _rational(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_n(n) -> object:
    if n is None:
        return None
    return "inf" if n == INF else int(n)


# ---------------------------------------------------------------------------
# frameworks and constraint systems


@dataclass(frozen=True)
class Knot:
    id: str
    pin: tuple | None = None  # per coordinate: a fixed value or None


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    length: Fraction | None = None


@dataclass(frozen=True)
class Framework:
    """Bar-joint framework with a realization.

    ``pin`` entries fix individual coordinates; ``True`` pins a knot at its
    realized position. Edge lengths default to the realized distances.
    """

    dimension: int
    knots: tuple
    edges: tuple
    realization: Mapping[str, tuple]
    tolerance: float = 1e-9

    @classmethod
    def from_json(cls, data: Mapping) -> "Framework":
        dim = int(data["dimension"])
        if dim not in (2, 3):
            raise FrameworkError("dimension must be 2 or 3")
        realization = {
            str(k): tuple(_rational(x) for x in v) for k, v in data.get("realization", {}).items()
        }
        knots = []
        for k in data["knots"]:
            kid = str(k["id"])
            pin = k.get("pin")
            if pin is True:
                if kid not in realization:
                    raise FrameworkError(f"knot {kid} pinned without coordinates")
                pin = realization[kid]
            elif pin is not None:
                if len(pin) != dim:
                    raise FrameworkError(f"pin of knot {kid} needs {dim} entries")
                pin = tuple(None if x is None else _rational(x) for x in pin)
                if kid not in realization:
                    if any(x is None for x in pin):
                        raise FrameworkError(f"knot {kid} has free coordinates but no realization")
                    realization[kid] = pin
            knots.append(Knot(kid, None if pin is None else tuple(pin)))
        edges = []
        for e in data["edges"]:
            length = e.get("length")
            edges.append(Edge(str(e["a"]), str(e["b"]), None if length is None else _rational(length)))
        fw = cls(dim, tuple(knots), tuple(edges), realization, float(data.get("tolerance", 1e-9)))
        fw.validate()
        return fw

    def validate(self) -> None:
        ids = [k.id for k in self.knots]
        if len(set(ids)) != len(ids):
            raise FrameworkError("duplicate knot ids")
        for k in self.knots:
            pos = self.realization.get(k.id)
            if pos is None or len(pos) != self.dimension:
                raise FrameworkError(f"knot {k.id} lacks a {self.dimension}-dimensional realization")
            if k.pin is not None:
                for p, x in zip(k.pin, pos):
                    if p is not None and p != x:
                        raise FrameworkError(f"pin of knot {k.id} disagrees with its realization")
        for e in self.edges:
            if e.a not in ids or e.b not in ids:
                raise FrameworkError(f"edge {e.a}-{e.b} references an unknown knot")
            if e.length is not None and e.length <= 0:
                raise FrameworkError(f"edge {e.a}-{e.b} has non-positive length")
            d2 = self._dist2(e.a, e.b)
            if d2 == 0:
                raise FrameworkError(f"edge {e.a}-{e.b} has zero length in the realization")
            if e.length is not None:
                gap = abs(d2 - e.length**2)
                if gap > self.tolerance * max(1, e.length**2):
                    raise FrameworkError(
                        f"realization violates edge {e.a}-{e.b}: squared length {float(d2)} vs {float(e.length**2)}"
                    )

    def _dist2(self, a, b) -> Fraction:
        pa, pb = self.realization[a], self.realization[b]
        return sum((x - y) ** 2 for x, y in zip(pa, pb))


def _auto_pins(fw: Framework) -> dict:
    """Fix enough coordinates to remove all Euclidean motions."""
    dim = fw.dimension
    need = 3 if dim == 2 else 6
    ids = [k.id for k in fw.knots]
    pos = {k: np.array([float(x) for x in fw.realization[k]]) for k in ids}

    def motions(p):
        # infinitesimal velocities of point p under translations and rotations
        rows = [np.eye(dim)[i] for i in range(dim)]
        if dim == 2:
            rows.append(np.array([-p[1], p[0]]))
        else:
            for axis in np.eye(3):
                rows.append(np.cross(axis, p))
        return np.array(rows)  # (need, dim)

    chosen: list[tuple[str, int]] = []
    if not ids:
        return {}
    for i in range(dim):
        chosen.append((ids[0], i))
    for kid in ids[1:]:
        current = len(chosen)
        if current >= need:
            break
        best = None
        for size in range(min(dim, need - current), 0, -1):
            for combo in itertools.combinations(reversed(range(dim)), size):
                trial = chosen + [(kid, c) for c in combo]
                mat = np.array([motions(pos[k])[:, c] for k, c in trial])
                if np.linalg.matrix_rank(mat, tol=1e-9) == len(trial):
                    best = trial
                    break
            if best:
                break
        if best:
            chosen = best
    if len(chosen) < need:
        raise FrameworkError("cannot eliminate rigid motions: pinned knots are collinear")
    out: dict = {}
    for k, c in chosen:
        out.setdefault(k, [None] * dim)[c] = fw.realization[k][c]
    return {k: tuple(v) for k, v in out.items()}


@dataclass(frozen=True)
class ConstraintSystem:
    """Polynomial constraints with the analyzed configuration at the origin."""

    variables: tuple
    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        gens = tuple(g.with_variables(self.variables) for g in self.generators)
        for g in gens:
            if g.constant_term() != 0:
                raise ValueError(f"generator {g} does not vanish at the origin")
        object.__setattr__(self, "generators", gens)

    @property
    def point(self) -> tuple:
        return (0,) * len(self.variables)

    @classmethod
    def from_json(cls, data: Mapping) -> "ConstraintSystem":
        variables = tuple(str(v) for v in data["variables"])
        gens = [parse_polynomial(text, variables) for text in data["generators"]]
        point = data.get("point")
        if point is not None:
            if len(point) != len(variables):
                raise ValueError("point needs one coordinate per variable")
            offset = {v: _rational(x) for v, x in zip(variables, point)}
            gens = [shift(g, offset) for g in gens]
        nonzero = [g for g in gens if not g.is_zero()]
        for g in nonzero:
            if g.constant_term() != 0:
                raise ValueError(f"generator {g} does not vanish at the given point")
        return cls(variables, tuple(nonzero))

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": [str(g) for g in self.generators],
            "point": [0] * len(self.variables),
        }


def build_constraints(fw: Framework) -> ConstraintSystem:
    """Edge-length equations in the free coordinates, shifted to the origin.

    Unknowns are named ``<knot>_x``, ``<knot>_y`` (and ``<knot>_z``). When no
    knot carries a pin, rigid motions are removed by pinning the first knot
    and then as few further coordinates as needed.
    """
    if any(k.pin is not None for k in fw.knots):
        pins = {k.id: k.pin for k in fw.knots if k.pin is not None}
    else:
        pins = _auto_pins(fw)
    variables = []
    coord: dict = {}
    for k in fw.knots:
        pin = pins.get(k.id, (None,) * fw.dimension)
        for i in range(fw.dimension):
            if pin[i] is None:
                name = f"{k.id}_{_AXES[i]}"
                variables.append(name)
                coord[(k.id, i)] = name
    variables = tuple(variables)
    gens = []
    for e in fw.edges:
        total = Polynomial.zero(variables)
        for i in range(fw.dimension):
            diff = Polynomial.constant(fw.realization[e.a][i] - fw.realization[e.b][i], variables)
            if (e.a, i) in coord:
                diff = diff + Polynomial.var(coord[(e.a, i)], variables)
            if (e.b, i) in coord:
                diff = diff - Polynomial.var(coord[(e.b, i)], variables)
            total = total + diff * diff
        # drop the constant left over by a realization that is only approximately consistent
        terms = {m: c for m, c in total.terms.items() if any(m)}
        g = Polynomial(terms, variables)
        if not g.is_zero():
            gens.append(g)
    return ConstraintSystem(variables, tuple(gens))


# ---------------------------------------------------------------------------
# ideals


def _check_index(sys: ConstraintSystem, i: int) -> None:
    if not 1 <= i <= len(sys.generators):
        raise ValueError(f"constraint index {i} outside 1..{len(sys.generators)}")


def removal_ideal(sys: ConstraintSystem, i: int) -> list[Polynomial]:
    """Generators with the ``i``-th (1-based) removed."""
    _check_index(sys, i)
    if len(sys.generators) == 1:
        warnings.warn("removing the only constraint leaves an empty ideal", stacklevel=2)
    return [g for j, g in enumerate(sys.generators, 1) if j != i]


def pencil_ideal(sys: ConstraintSystem, i: int, lam: Sequence) -> list[Polynomial]:
    """Generators ``c_j + lam_j * c_i`` for ``j != i`` in increasing order of ``j``."""
    _check_index(sys, i)
    lam = [_rational(x) for x in lam]
    if len(lam) != len(sys.generators) - 1:
        raise ValueError(f"expected {len(sys.generators) - 1} pencil parameters, got {len(lam)}")
    ci = sys.generators[i - 1]
    others = removal_ideal(sys, i)
    return [g + ci * l if l else g for g, l in zip(others, lam)]


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class FlexClass:
    k: int
    n: int | float | AtLeast
    branch: BranchParam | None = None
    removed_index: int | None = None
    lam: tuple | None = None

    @property
    def key(self) -> tuple:
        return (self.k, self.n)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": _fmt_n(self.n),
            "removed": self.removed_index,
            "lambda": None if self.lam is None else [_fmt_fraction(x) for x in self.lam],
        }


def _is_regular(p: Polynomial) -> bool:
    return any(sum(m) == 1 for m in p.terms)


def intersection_multiplicity(b: BranchParam, p: Polynomial, tolerance: float = 1e-10):
    """Order in t of ``p`` restricted to the branch (``AtLeast`` if unresolved)."""
    return compose(p, b, tolerance).valuation()


def classify_branch(
    b: BranchParam, removed: Polynomial, tolerance: float = 1e-10, check_regular: bool = True
) -> FlexClass | None:
    """``(k, n)``-flex implied by a branch against a removed constraint.

    Returns ``None`` when the contact order ``n`` is smaller than the branch
    order ``k``. An unresolved contact gives ``n = AtLeast(N - 1)``.
    """
    if check_regular and not _is_regular(removed):
        raise IrregularHypersurfaceError(f"{removed} is singular at the origin")
    k = b.order()
    mu = intersection_multiplicity(b, removed, tolerance)
    if isinstance(mu, AtLeast):
        # an exact branch lying on the hypersurface has infinite contact
        return FlexClass(k, INF if mu.bound == INF else AtLeast(mu.bound - 1), b)
    n = int(mu) - 1
    if n < k:
        return None
    return FlexClass(k, n, b)


def real_flex(b: BranchParam, generators: Sequence[Polynomial], tolerance: float = 1e-10):
    """``(k_real, n_real)`` of the coefficient-wise real part, or ``None``.

    ``n_real`` is one less than the smallest vanishing order of the
    generators along the real part; ``INF`` if none is resolved at the
    branch's truncation.
    """
    re = b.real_part(tolerance)
    deps = [s for v, s in re.series.items() if v != re.base]
    if all(s.is_zero() for s in deps) and not re.series[re.base].terms:
        return None
    k = re.order()
    orders = [intersection_multiplicity(re, g, tolerance) for g in generators]
    finite = [int(o) for o in orders if not isinstance(o, AtLeast)]
    if finite:
        return (k, min(finite) - 1)
    return (k, INF)


# ---------------------------------------------------------------------------
# local multiplicity


_PRIMES = (2147483629, 2147483587)


def _monomials(m: int, d: int):
    """Exponent tuples in m variables of total degree exactly d."""
    if m == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _monomials(m - 1, d - first):
            yield (first,) + rest


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = mat % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        r = rank + nz[0]
        if r != rank:
            a[[rank, r]] = a[[r, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = np.nonzero(a[rank + 1 :, c])[0] + rank + 1
        if below.size:
            factors = a[below, c].reshape(-1, 1)
            a[below] = (a[below] - (factors * a[rank]) % p) % p
        rank += 1
    return rank


def _dual_dimension(gens, m: int, d: int, p: int) -> int:
    cols = [mono for k in range(d + 1) for mono in _monomials(m, k)]
    index = {mono: i for i, mono in enumerate(cols)}
    rows = []
    for g in gens:
        reduced = {}
        for mono, c in g.terms.items():
            if sum(mono) <= d:
                reduced[mono] = c.numerator * pow(c.denominator, p - 2, p) % p
        for k in range(d):
            for beta in _monomials(m, k):
                row = {}
                for mono, c in reduced.items():
                    shifted = tuple(a + b for a, b in zip(mono, beta))
                    if sum(shifted) <= d:
                        row[index[shifted]] = c
                if row:
                    rows.append(row)
    if not rows:
        return len(cols)
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, c in row.items():
            mat[i, j] = c
    return len(cols) - _rank_mod_p(mat, p)


def local_multiplicity(sys: ConstraintSystem | Sequence[Polynomial], degree_bound: int = 12):
    """Local intersection multiplicity at the origin, or ``INF``.

    The dimension of the local dual space restricted to differential
    functionals of order at most ``d`` is computed for ``d = 0, 1, ...``
    until it stops growing. A system with fewer equations than unknowns has
    no isolated solution and returns ``INF`` at once; otherwise ``INF`` is
    returned when the growth per degree is constant and positive over the
    last three degrees before ``degree_bound``.

    Raises
    ------
    DegreeBoundError
        Growth neither stopped nor settled before ``degree_bound``.
    """
    if isinstance(sys, ConstraintSystem):
        gens, variables = list(sys.generators), sys.variables
    else:
        gens = [g for g in sys if not g.is_zero()]
        variables = gens[0].variables if gens else ()
        gens = [g.with_variables(variables) for g in gens]
    m = len(variables)
    gens = [g for g in gens if not g.is_zero()]
    if any(g.constant_term() != 0 for g in gens):
        return 0
    if m == 0:
        return 1
    if len(gens) < m:
        return INF
    dims = [1]
    for d in range(1, degree_bound + 1):
        dim = max(_dual_dimension(gens, m, d, p) for p in _PRIMES)
        if dim == dims[-1]:
            return dim
        dims.append(dim)
    growth = [b - a for a, b in zip(dims, dims[1:])]
    if len(growth) >= 3 and growth[-1] == growth[-2] == growth[-3] >= 1:
        return INF
    raise DegreeBoundError(
        f"dual-space dimensions {dims} did not stabilize by degree {degree_bound}"
    )


# ---------------------------------------------------------------------------
# analysis


@dataclass(frozen=True)
class AnalysisConfig:
    truncation_order: int = 8
    samples: int = 8
    seed: int = 42
    tolerance: float = 1e-10
    degree_bound: int = 12
    explicit_lambdas: tuple = ()  # entries (index or None, lambda vector)
    remove: tuple | None = None  # restrict to these 1-based indices

    def __post_init__(self):
        if self.truncation_order < 2:
            raise ValueError("truncation order must be at least 2")
        if self.samples < 0:
            raise ValueError("samples must be non-negative")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass
class UnitResult:
    removed: int | None
    lam: tuple | None
    branches: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    error: str | None = None
    ambiguous: bool = False


@dataclass
class FlexReport:
    classes: list
    real: tuple | None
    multiplicity: int | float
    units: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def r(self):
        if self.multiplicity is None:
            return None
        return INF if self.multiplicity == INF else self.multiplicity - 1

    @property
    def class_set(self) -> set:
        return {c.key for c in self.classes}

    @property
    def triple(self) -> tuple:
        kmax, nmax = self.real if self.real else (None, None)
        return (self.r, kmax, nmax)

    def to_json(self) -> dict:
        return {
            "classes": [c.to_json() for c in self.classes],
            "real": None
            if self.real is None
            else {"kmax": self.real[0], "nmax": _fmt_n(self.real[1])},
            "multiplicity": _fmt_n(self.multiplicity),
            "r": _fmt_n(self.r),
            "errors": list(self.errors),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def sample_lambdas(count: int, size: int, rng: random.Random) -> list[tuple]:
    """Random rational vectors with numerators and denominators in [-9, 9]."""
    out = []
    for _ in range(count):
        vec = []
        for _ in range(size):
            num = rng.randint(-9, 9)
            den = rng.choice([d for d in range(-9, 10) if d])
            vec.append(Fraction(num, den))
        out.append(tuple(vec))
    return out


def _lift(gens, order, config):
    return lift_branches(gens, None, order, PuiseuxConfig(tolerance=config.tolerance))


def _removal_unit(sys, i, lam, config) -> UnitResult:
    unit = UnitResult(i, lam)
    ci = sys.generators[i - 1]
    gens = pencil_ideal(sys, i, lam)
    order = config.truncation_order
    try:
        branches = _lift(gens, order, config)
        unit.branches = branches
        for b in branches:
            fc = classify_branch(b, ci, config.tolerance)
            if fc is not None and isinstance(fc.n, AtLeast):
                # contact unresolved: redo this unit once at doubled truncation
                deeper = _lift(gens, 2 * order, config)
                unit.branches = deeper
                unit.classes = []
                for bb in deeper:
                    fc2 = classify_branch(bb, ci, config.tolerance)
                    if fc2 is not None:
                        n = INF if isinstance(fc2.n, AtLeast) else fc2.n
                        unit.classes.append(FlexClass(fc2.k, n, bb, i, lam))
                return unit
            if fc is not None:
                unit.classes.append(FlexClass(fc.k, fc.n, b, i, lam))
    except AmbiguousLiftError as exc:
        unit.error, unit.ambiguous = str(exc), True
    except (ArithmeticError, ValueError) as exc:
        unit.error = f"{type(exc).__name__}: {exc}"
    return unit


def _curve_unit(sys, config) -> UnitResult:
    unit = UnitResult(None, None)
    try:
        unit.branches = _lift(list(sys.generators), config.truncation_order, config)
        unit.classes = [FlexClass(b.order(), INF, b) for b in unit.branches]
    except AmbiguousLiftError as exc:
        unit.error, unit.ambiguous = str(exc), True
    except (ArithmeticError, ValueError) as exc:
        unit.error = f"{type(exc).__name__}: {exc}"
    return unit


def _units(sys: ConstraintSystem, config: AnalysisConfig) -> list[UnitResult]:
    e, m = len(sys.generators), len(sys.variables)
    if e == 0:
        return []
    if e == m - 1:
        return [_curve_unit(sys, config)]
    if e != m:
        raise ValueError(f"{e} constraints in {m} unknowns: need e = m or e = m - 1")
    rng = random.Random(config.seed)
    units = []
    indices = range(1, e + 1) if config.remove is None else config.remove
    for i in indices:
        _check_index(sys, i)
        if not _is_regular(sys.generators[i - 1]):
            continue
        lambdas = [tuple(Fraction(0) for _ in range(e - 1))]
        lambdas += sample_lambdas(config.samples, e - 1, rng)
        for idx, lam in config.explicit_lambdas:
            if idx is None or idx == i:
                lam = tuple(_rational(x) for x in lam)
                if len(lam) != e - 1:
                    raise ValueError(f"lambda {lam} needs {e - 1} entries")
                lambdas.append(lam)
        seen = set()
        for lam in lambdas:
            if lam in seen:
                continue
            seen.add(lam)
            units.append(_removal_unit(sys, i, lam, config))
    return units


def _real_key(kn):
    k, n = kn
    return (n, k)


def analyze(sys: ConstraintSystem, config: AnalysisConfig | None = None) -> FlexReport:
    """Flex classes, highest real flex and local multiplicity of a system."""
    config = config or AnalysisConfig()
    units = _units(sys, config)
    classes: dict = {}
    real = None
    errors = []
    for u in units:
        if u.error:
            tag = "curve" if u.removed is None else f"remove {u.removed}, lambda ({', '.join(_fmt_fraction(x) for x in u.lam)})"
            errors.append(f"{tag}: {u.error}")
        for c in u.classes:
            classes.setdefault((c.k, c.n, c.removed_index, c.lam), c)
        for b in u.branches:
            rf = real_flex(b, sys.generators, config.tolerance)
            if rf is None or rf[1] < rf[0]:
                continue
            if real is None or _real_key(rf) > _real_key(real):
                real = rf
    ordered = [classes[k] for k in sorted(classes, key=_class_sort_key)]
    try:
        mult = local_multiplicity(sys, config.degree_bound)
    except DegreeBoundError as exc:
        errors.append(f"multiplicity: {exc}")
        mult = None
    report = FlexReport(ordered, real, mult, units, errors)
    return report


def _class_sort_key(key):
    k, n, removed, lam = key
    return (k, n, removed or 0, lam or ())
