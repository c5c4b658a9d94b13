"""Norming constants for powered maxima of standard normal samples.

Solves 2*pi*b^2*exp(b^2) = n^2 for b (equivalently b^2 = W(n^2/(2*pi)) on
the principal Lambert-W branch) and derives the power-dependent centering
and scaling

    c = t * b^(t-2),          d = b^t            (t != 2)
    c = 2 * (1 - b^-2),       d = b^2 - 2*b^-2   (t = 2)

together with the transformed quantile g(x) = (c*x + d)^(1/t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError
from .special_functions import LOG_2PI, _require_finite

# The t != 2 and t = 2 expansions do not join continuously; results this
# close to the branch point get a warning flag.
NEAR_TWO_WINDOW = 1e-3

_NEWTON_MAX_ITER = 50
_NEWTON_RTOL = 1e-15


@dataclass(frozen=True)
class PowerIndex:
    """Power index t > 0 with its branch flag.

    The t = 2 branch is selected by exact comparison; ``near_two`` marks
    indices within (0, 1e-3) of 2, where the t != 2 expansion degrades
    without the t = 2 formulas applying.
    """

    t: float
    is_two: bool

    @classmethod
    def of(cls, t: float | PowerIndex) -> PowerIndex:
        if isinstance(t, PowerIndex):
            return t
        t = _require_finite(t, "t")
        if t <= 0.0:
            raise DomainError(f"power index must be > 0, got {t}")
        return cls(t=t, is_two=(t == 2.0))

    @property
    def near_two(self) -> bool:
        return 0.0 < abs(self.t - 2.0) < NEAR_TWO_WINDOW


@dataclass(frozen=True)
class NormingConstants:
    """The tuple (n, t, b, c, d) tying a sample size and power index to its
    normalization; ``near_two`` warns of proximity to the t = 2 branch point."""

    n: float
    t: float
    b: float
    c: float
    d: float
    is_two: bool
    near_two: bool = False

    @property
    def b_squared(self) -> float:
        return self.b * self.b


def solve_b(n: float) -> float:
    """Solve 2*pi*b^2*exp(b^2) = n^2 for b > 0.

    Works on u = b^2 in the log form u + ln(u) = 2 ln(n) - ln(2*pi), which
    never overflows. The seed ell - ln(ell) is used for ell >= 1 and
    exp(ell - 1) below that; both start weakly below the root where Newton
    on this convex increasing function converges monotonically.

    The residual |2*pi*b^2*e^{b^2}/n^2 - 1| is at most 1e-12 for all
    admissible n (in practice a few ulp).
    """
    n = _require_finite(n, "n")
    if n < 2.0:
        raise DomainError(f"sample size must satisfy n >= 2, got {n}")
    ell = 2.0 * math.log(n) - LOG_2PI
    u = ell - math.log(ell) if ell >= 1.0 else math.exp(ell - 1.0)
    for _ in range(_NEWTON_MAX_ITER):
        step = (u + math.log(u) - ell) / (1.0 + 1.0 / u)
        u -= step
        if abs(step) <= _NEWTON_RTOL * u:
            break
    return math.sqrt(u)


def norming_constants(n: float, t: float | PowerIndex) -> NormingConstants:
    """Full norming tuple for sample size n and power index t.

    The t = 2 branch needs b^2 > 1 for a positive scaling c; that fails
    for n <= sqrt(2*pi*e) (about 4.13), so integer sample sizes below 5
    are rejected there.
    """
    p = PowerIndex.of(t)
    b = solve_b(n)
    u = b * b
    if p.is_two:
        if u <= 1.0:
            raise DomainError(
                f"t=2 norming needs b^2 > 1, i.e. n > sqrt(2*pi*e) ~ 4.133; got n={n}"
            )
        c = 2.0 * (1.0 - 1.0 / u)
        d = u - 2.0 / u
    else:
        c = p.t * b ** (p.t - 2.0)
        d = b ** p.t
    return NormingConstants(n=float(n), t=p.t, b=b, c=c, d=d,
                            is_two=p.is_two, near_two=p.near_two)


class TransformedQuantile(NamedTuple):
    g: float
    dg_dx: float


def transformed_quantile(nc: NormingConstants, x: float) -> TransformedQuantile:
    """g(x) = (c*x + d)^(1/t) and its derivative (c/t)*(c*x + d)^(1/t - 1).

    Defined only where c*x + d > 0; below that the power is not real and
    the error reports the boundary x_min = -d/c.
    """
    x = _require_finite(x)
    arg = nc.c * x + nc.d
    if arg <= 0.0:
        x_min = -nc.d / nc.c
        raise DomainError(
            f"c*x + d must be positive: x={x} is outside (x_min={x_min!r}, inf)",
            x_min=x_min,
        )
    inv_t = 1.0 / nc.t
    g = arg ** inv_t
    dg_dx = (nc.c * inv_t) * arg ** (inv_t - 1.0)
    return TransformedQuantile(g=g, dg_dx=dg_dx)
