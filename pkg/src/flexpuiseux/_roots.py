"""Univariate root finding with multiplicities (Aberth-Ehrlich iteration).

Works in an :class:`mpmath.MPContext` so that clusters produced by
multiple roots can be separated from genuinely distinct roots.
"""

from __future__ import annotations


class RootFindingError(ArithmeticError):
    """Simultaneous iteration did not produce acceptable roots."""


def _horner(ctx, coeffs, z):
    # coeffs[k] multiplies z**k
    p = ctx.mpc(0)
    dp = ctx.mpc(0)
    for a in reversed(coeffs):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _derivative(coeffs, times=1):
    for _ in range(times):
        coeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
    return coeffs


def aberth(ctx, coeffs, maxiter=600):
    """All roots of ``sum(coeffs[k] * z**k)``; leading coefficient nonzero."""
    n = len(coeffs) - 1
    if n < 1:
        return []
    lead = coeffs[-1]
    if n == 1:
        return [-coeffs[0] / lead]
    # Fujiwara-type bound for the initial circle
    radius = 2 * max(abs(coeffs[k] / lead) ** (ctx.mpf(1) / (n - k)) for k in range(n))
    radius = max(radius, ctx.mpf("1e-3"))
    z = [radius * ctx.expj(2 * ctx.pi * k / n + ctx.mpf("0.4")) for k in range(n)]
    eps = ctx.mpf(10) ** (-ctx.dps + 5)
    for _ in range(maxiter):
        biggest = ctx.mpf(0)
        for k in range(n):
            p, dp = _horner(ctx, coeffs, z[k])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else ctx.mpc(radius)
            s = sum(1 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
            step = ratio / (1 - ratio * s)
            z[k] -= step
            biggest = max(biggest, abs(step) / (1 + abs(z[k])))
        if biggest < eps:
            break
    return z


def roots_with_multiplicity(ctx, coeffs, cluster_tol=1e-10):
    """Distinct roots and multiplicities of a polynomial.

    Roots that lie within ``cluster_tol`` (relative) of each other are
    merged; the merged root is refined by Newton's method on the derivative
    of order ``multiplicity - 1``, where it is a simple root.

    Returns
    -------
    list of (root, multiplicity)
    """
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    n = len(coeffs) - 1
    if n < 1:
        return []
    raw = aberth(ctx, coeffs)
    scale = max(abs(c) for c in coeffs)
    # residual-based acceptance
    for r in raw:
        p, _ = _horner(ctx, coeffs, r)
        bound = sum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
        if not ctx.isfinite(abs(r)) or abs(p) > ctx.mpf(10) ** (-ctx.dps // 4) * (bound + scale):
            raise RootFindingError(f"root iteration failed to converge (residual {float(abs(p)):.3g})")

    clusters: list[list] = []
    for r in raw:
        for cl in clusters:
            center = sum(cl) / len(cl)
            if abs(r - center) <= cluster_tol * (1 + abs(center)):
                cl.append(r)
                break
        else:
            clusters.append([r])

    out = []
    for cl in clusters:
        mult = len(cl)
        root = sum(cl) / mult
        if mult > 1:
            d = _derivative(coeffs, mult - 1)
            for _ in range(100):
                p, dp = _horner(ctx, d, root)
                if dp == 0:
                    break
                step = p / dp
                root -= step
                if abs(step) <= ctx.mpf(10) ** (-ctx.dps + 3) * (1 + abs(root)):
                    break
            # the refined root must annihilate the lower derivatives too
            for k in range(mult - 1):
                dk = _derivative(coeffs, k)
                p, _ = _horner(ctx, dk, root)
                bound = sum(abs(c) * abs(root) ** j for j, c in enumerate(dk))
                if abs(p) > ctx.mpf(10) ** (-ctx.dps // 3) * (bound + 1):
                    raise RootFindingError(
                        f"cluster of {mult} roots near {complex(root):.6g} is not a multiple root"
                    )
        else:
            for _ in range(20):
                p, dp = _horner(ctx, coeffs, root)
                if dp == 0:
                    break
                step = p / dp
                root -= step
                if abs(step) <= ctx.mpf(10) ** (-ctx.dps + 3) * (1 + abs(root)):
                    break
        out.append((root, mult))
    return out


def principal_root(ctx, value, p: int):
    """The p-th root with argument in (-pi/p, pi/p]."""
    if p == 1:
        return value
    return ctx.root(value, p)


__all__ = ["RootFindingError", "aberth", "roots_with_multiplicity", "principal_root"]
