"""Lattice-point counts in discs: R(t), r2(k), cumulative R2(k), the
classical error bound |R(t) - pi t| <= 2 pi (1 + sqrt(2t)), and an
empirical fit of the error exponent.

All counts are exact integers computed with integer square roots; the
bound check runs in decimal arithmetic at a configurable precision
(default 50 significant digits) and demands a safety margin, so a pass
can never be a rounding artifact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from itertools import accumulate
from statistics import linear_regression

from .errors import ArgumentError, CheckFailure

DEFAULT_PRECISION = 50
DEFAULT_MARGIN = Decimal("1e-20")


def pi_decimal(digits: int = DEFAULT_PRECISION) -> Decimal:
    """Pi to `digits` significant digits (arctan-free spigot iteration,
    the classic Decimal recipe)."""
    if digits < 1:
        raise ArgumentError("digits must be positive")
    with localcontext() as ctx:
        ctx.prec = digits + 2
        three = Decimal(3)
        lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
    with localcontext() as ctx:
        ctx.prec = digits
        return +s


def count_disc(t: int) -> int:
    """R(t): number of integer points (a, b) with a^2 + b^2 <= t."""
    if t < 0:
        raise ArgumentError("t must be nonnegative")
    r = math.isqrt(t)
    return sum(2 * math.isqrt(t - a * a) + 1 for a in range(-r, r + 1))


def r2(k: int) -> int:
    """Number of representations k = a^2 + b^2 counting signs and order."""
    if k < 0:
        raise ArgumentError("k must be nonnegative")
    total = 0
    for a in range(-math.isqrt(k), math.isqrt(k) + 1):
        rem = k - a * a
        s = math.isqrt(rem)
        if s * s == rem:
            total += 2 if s > 0 else 1
    return total


def r2_table(kmax: int) -> list[int]:
    """r2(0..kmax) in one sieve pass over the eighth of the plane
    0 <= a <= b, expanding each pair by its symmetry orbit."""
    if kmax < 0:
        raise ArgumentError("kmax must be nonnegative")
    counts = [0] * (kmax + 1)
    for a in range(math.isqrt(kmax) + 1):
        a2 = a * a
        for b in range(a, math.isqrt(kmax - a2) + 1):
            s = a2 + b * b
            if a == 0 and b == 0:
                w = 1
            elif a == 0 or a == b:
                w = 4
            else:
                w = 8
            counts[s] += w
    return counts


def R2(k: int) -> int:
    """Cumulative representation count sum_{j<=k} r2(j)."""
    if k < 0:
        raise ArgumentError("k must be nonnegative")
    return sum(r2_table(k))


def R2_table(kmax: int) -> list[int]:
    """R2(0..kmax); equals count_disc pointwise."""
    return list(accumulate(r2_table(kmax)))


@dataclass(frozen=True)
class CircleCount:
    """One bound check: exact count R(t), |R - pi t| and the classical
    bound, both to `digits` significant digits.  Construction fails
    (CheckFailure) unless the bound exceeds the error by the margin."""

    t: int
    R: int
    error: Decimal
    bound: Decimal
    digits: int = DEFAULT_PRECISION
    margin: Decimal = DEFAULT_MARGIN

    def __post_init__(self):
        with localcontext() as ctx:
            ctx.prec = self.digits + 10
            if self.bound - self.error <= self.margin:
                raise CheckFailure(
                    f"Gauss bound violated at t={self.t}: "
                    f"error {self.error} vs bound {self.bound}",
                    context=self.t)


def circle_count(t: int, digits: int = DEFAULT_PRECISION,
                 margin: Decimal = DEFAULT_MARGIN,
                 _pi: Decimal | None = None,
                 _R: int | None = None) -> CircleCount:
    """Count the disc at t and check the error bound at `digits`."""
    R = count_disc(t) if _R is None else _R
    with localcontext() as ctx:
        ctx.prec = digits + 10
        pi = pi_decimal(digits + 10) if _pi is None else _pi
        error = abs(Decimal(R) - pi * t)
        bound = 2 * pi * (1 + Decimal(2 * t).sqrt())
    with localcontext() as ctx:
        ctx.prec = digits
        return CircleCount(t, R, +error, +bound, digits, margin)


def gauss_bound_check(t_values, digits: int = DEFAULT_PRECISION,
                      margin: Decimal = DEFAULT_MARGIN) -> list[CircleCount]:
    """Check |R(t) - pi t| <= 2 pi (1 + sqrt(2t)) for every t given.

    Returns the per-t records on success; raises CheckFailure carrying
    the offending t if any check fails (it never should).
    """
    ts = list(t_values)
    if not ts:
        raise ArgumentError("t_values must be nonempty")
    pi = pi_decimal(digits + 10)
    dense_max = max(ts)
    table = None
    if len(ts) > 64 and dense_max <= 200_000:
        table = R2_table(dense_max)
    out = []
    for t in ts:
        R = table[t] if table is not None else None
        out.append(circle_count(t, digits, margin, _pi=pi, _R=R))
    return out


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log windowed-max error against log t."""

    alpha: float
    residual: float
    windows: tuple  # (log t at window center, log max error) pairs


def error_exponent_fit(t_grid, digits: int = DEFAULT_PRECISION) -> ExponentFit:
    """Fit |R(t) - pi t| ~ t^alpha on dyadic windows of the grid.

    Within each window [2^j, 2^{j+1}) the maximum error is taken, which
    smooths the heavy oscillation of the raw error term.  Diagnostic
    only: no pass/fail is attached to the fitted exponent.
    """
    ts = sorted(set(int(t) for t in t_grid))
    if len(ts) < 10:
        raise ArgumentError("need at least 10 grid values")
    if ts[0] < 1:
        raise ArgumentError("grid values must be at least 1")
    pi = pi_decimal(digits + 10)
    window_max: dict[int, Decimal] = {}
    with localcontext() as ctx:
        ctx.prec = digits + 10
        for t in ts:
            err = abs(Decimal(count_disc(t)) - pi * t)
            j = t.bit_length() - 1
            if j not in window_max or err > window_max[j]:
                window_max[j] = err
    if len(window_max) < 2:
        raise ArgumentError(
            "degenerate grid: need at least two dyadic windows")
    xs, ys = [], []
    for j in sorted(window_max):
        xs.append((j + 0.5) * math.log(2.0))
        ys.append(math.log(max(float(window_max[j]), 1e-300)))
    slope, intercept = linear_regression(xs, ys)
    residuals = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    rms = math.sqrt(sum(r * r for r in residuals) / len(residuals))
    return ExponentFit(float(slope), rms, tuple(zip(xs, ys)))
