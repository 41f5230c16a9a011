"""Exact exponent arithmetic: Strichartz admissibility, the (s, p) parameter
window, and the exponent bookkeeping behind the two local-solving regimes.

Everything here is pure rational arithmetic (:class:`fractions.Fraction`),
with ``math.inf`` as the only non-rational value, so admissibility checks are
exact rather than floating-point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Union

Rational = Union[Fraction, float]  # math.inf allowed where noted

DEFAULT_SLACK = Fraction(1, 20)  # relative offset realizing "just below" exponents


class ExponentError(ValueError):
    """Raised when an exponent constraint is violated."""


def as_fraction(x) -> Fraction:
    """Exact-ish conversion: decimal literals convert by their printed value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            raise ExponentError(f"cannot convert {x} to a fraction")
        return Fraction(Decimal(repr(x)))
    raise ExponentError(f"cannot convert {x!r} to a fraction")


def _reciprocal(x: Rational) -> Fraction:
    """1/x, with 1/inf = 0."""
    if isinstance(x, float) and math.isinf(x):
        return Fraction(0)
    x = as_fraction(x)
    if x == 0:
        raise ExponentError("reciprocal of zero")
    return 1 / x


def check_admissible(q: Rational, r: Rational, dim: int) -> bool:
    """Exact check of the Strichartz scaling relation 2/q = d(1/2 - 1/r)
    with the dimensional range constraints on r."""
    if dim < 1:
        raise ExponentError(f"dimension must be positive, got {dim}")
    q_inf = isinstance(q, float) and math.isinf(q)
    r_inf = isinstance(r, float) and math.isinf(r)
    inv_q = Fraction(0) if q_inf else _reciprocal(q)
    inv_r = Fraction(0) if r_inf else _reciprocal(r)
    if not q_inf and as_fraction(q) <= 0:
        return False
    # range of r
    if not r_inf:
        r_frac = as_fraction(r)
        if r_frac < 2:
            return False
        if dim >= 3 and r_frac > Fraction(2 * dim, dim - 2):
            return False
    else:
        if dim == 2:
            return False  # the endpoint r = inf is excluded in 2-D
        if dim >= 3:
            return False  # beyond the Sobolev-critical range
    return 2 * inv_q == dim * (Fraction(1, 2) - inv_r)


def admissible_partner(r: Rational, dim: int) -> Rational:
    """The q making (q, r) admissible, given r in range."""
    r_inf = isinstance(r, float) and math.isinf(r)
    inv_r = Fraction(0) if r_inf else _reciprocal(r)
    rhs = dim * (Fraction(1, 2) - inv_r)
    q: Rational = math.inf if rhs == 0 else 2 / rhs
    if not check_admissible(q, r, dim):
        raise ExponentError(f"r = {r} has no admissible partner in dimension {dim}")
    return q


@dataclass(frozen=True)
class AdmissiblePair:
    q: Rational
    r: Rational
    dim: int

    def __post_init__(self) -> None:
        if not check_admissible(self.q, self.r, self.dim):
            raise ExponentError(f"({self.q}, {self.r}) is not admissible in d = {self.dim}")


@dataclass(frozen=True)
class WindowResult:
    """Outcome of the (s, p) parameter-window check."""

    in_window: bool
    two_star: Rational  # 2d/(d - 2s), inf when s >= d/2
    reason: str | None = None
    # The cubic 3-D globalization setting uses its own window 4 < p < 6.
    in_cubic_3d_window: bool = False


def check_window(s, p, dim: int) -> WindowResult:
    """Validate 0 < s < min(d/2, 1) and 2 < p < 2* = 2d/(d-2s)."""
    s = as_fraction(s)
    p = as_fraction(p)
    cubic = dim == 3 and 4 < p < 6
    if s >= Fraction(dim, 2):
        return WindowResult(False, math.inf, f"s = {s} not < d/2", cubic)
    two_star = Fraction(2 * dim, 1) / (dim - 2 * s)
    if not 0 < s < 1:
        return WindowResult(False, two_star, f"s = {s} not in (0, 1)", cubic)
    if not p > 2:
        return WindowResult(False, two_star, f"p = {p} not > 2", cubic)
    if not p < two_star:
        return WindowResult(False, two_star, f"p = {p} not < 2* = {two_star}", cubic)
    return WindowResult(True, two_star, None, cubic)


@dataclass(frozen=True)
class LwpExponents:
    """The exponent bookkeeping of the local fixed-point argument.

    In the small-p regime (p <= 2 sigma + 2) a single space-time pair
    carries the contraction; it is stored as (q1, r1).  In the large-p
    regime all three pairs and the L^p interpolation parameter theta are
    filled in.
    """

    regime: str  # "small_p" | "large_p"
    dim: int
    s: Fraction
    p: Fraction
    sigma: Fraction
    r1: Fraction
    q1: Rational
    a: Fraction
    r2: Fraction | None = None
    q2: Rational | None = None
    r3: Fraction | None = None
    q3: Rational | None = None
    theta_interp: Fraction | None = None
    rho: Fraction | None = None
    rho_star: Rational | None = None
    conditions_ok: dict[str, bool] = field(default_factory=dict)

    def pairs(self) -> list[AdmissiblePair]:
        out = [AdmissiblePair(self.q1, self.r1, self.dim)]
        if self.r2 is not None:
            out.append(AdmissiblePair(self.q2, self.r2, self.dim))
        if self.r3 is not None:
            out.append(AdmissiblePair(self.q3, self.r3, self.dim))
        return out


def derive_lwp_exponents(s, p, sigma, dim: int,
                         slack: Fraction = DEFAULT_SLACK) -> LwpExponents:
    """Fill in the exponents used by the local solver in either regime.

    ``slack`` realizes exponents defined as "just below" a threshold value:
    the chosen r2 is the threshold shrunk by the relative factor 1 - slack.
    """
    s = as_fraction(s)
    p = as_fraction(p)
    sigma = as_fraction(sigma)
    if sigma <= 0:
        raise ExponentError(f"sigma must be positive, got {sigma}")
    if not 0 < s <= 1:
        raise ExponentError(f"s must be in (0, 1], got {s}")
    if s >= Fraction(dim, 2):
        raise ExponentError(f"s = {s} must be below d/2 = {Fraction(dim, 2)}")
    if p <= 2:
        raise ExponentError(f"p must exceed 2, got {p}")
    window = check_window(s, p, dim)

    if p <= 2 * sigma + 2:
        return _small_p_exponents(s, p, sigma, dim, window)
    return _large_p_exponents(s, p, sigma, dim, window, slack)


def _small_p_exponents(s, p, sigma, dim, window) -> LwpExponents:
    conditions = {"window": window.in_window}
    if dim <= 2 or p * (dim + 2) >= 2 * dim * (sigma + 1):
        # Single-pair case: the space exponent is p itself.
        r = p
        a = p
        rho_star = None
        rho = None
        conditions["single_pair_case"] = True
    else:
        r = Fraction(dim * (sigma + 2), 1) / (dim + s * sigma)
        rho = r
        a = Fraction(dim * (sigma + 2), 1) / (dim - 2 * s)
        rho_star = dim * rho / (dim - s * rho) if dim - s * rho > 0 else math.inf
        conditions["single_pair_case"] = False
        # a must sit strictly between p and rho* for the interpolation step
        conditions["a_between_p_and_rho_star"] = bool(p < a) and (
            rho_star == math.inf or a < rho_star
        )
    q = admissible_partner(r, dim)
    return LwpExponents(
        regime="small_p", dim=dim, s=s, p=p, sigma=sigma,
        r1=r, q1=q, a=a, rho=rho, rho_star=rho_star, conditions_ok=conditions,
    )


def _large_p_exponents(s, p, sigma, dim, window, slack) -> LwpExponents:
    # Gate: the large-p regime forces sigma <= p/2 - 1 <= 2s/(d - 2s).
    if sigma > p / 2 - 1:
        raise ExponentError(
            f"large-p regime needs sigma <= p/2 - 1: sigma = {sigma}, p/2 - 1 = {p / 2 - 1}"
        )
    if sigma > Fraction(2 * s, 1) / (dim - 2 * s):
        raise ExponentError(
            f"large-p regime needs sigma <= 2s/(d - 2s): "
            f"sigma = {sigma}, bound = {Fraction(2 * s, 1) / (dim - 2 * s)}"
        )

    r1 = 2 * p / (p - 2 * sigma)
    q1 = admissible_partner(r1, dim)

    # r2 sits just below d/s, or just below the Sobolev-critical exponent
    # when d/s overshoots it.
    target = Fraction(dim, 1) / s
    if dim >= 3 and target > Fraction(2 * dim, dim - 2):
        target = Fraction(2 * dim, dim - 2)
    r2 = target * (1 - slack)
    if r2 <= 2:
        raise ExponentError(f"slack {slack} pushes r2 = {r2} out of range")
    q2 = admissible_partner(r2, dim)

    rho = dim * r2 / (dim - s * r2)
    interp_ok = p * (sigma + 1) < rho
    theta = None
    if interp_ok:
        # 1/(p(sigma+1)) = theta/p + (1-theta)/rho
        theta = (Fraction(1, 1) / (p * (sigma + 1)) - 1 / rho) / (1 / p - 1 / rho)
    time_ok = False
    if theta is not None and not (isinstance(q2, float) and math.isinf(q2)):
        time_ok = q2 > (1 - theta) * (sigma + 1)
    elif theta is not None:
        time_ok = True  # q2 = inf dominates any finite exponent

    r3 = 2 * p / (p - sigma)
    q3 = admissible_partner(r3, dim)

    conditions = {
        "window": window.in_window,
        "interpolation_range": bool(interp_ok),
        "time_integrability": bool(time_ok),
        "kinematic_2p_gt_d_sigma": bool(2 * p > dim * sigma),
        "r3_between_2_and_p": bool(2 < r3 < p),
    }
    return LwpExponents(
        regime="large_p", dim=dim, s=s, p=p, sigma=sigma,
        r1=r1, q1=q1, a=p,
        r2=r2, q2=q2, r3=r3, q3=q3,
        theta_interp=theta, rho=rho,
        rho_star=None, conditions_ok=conditions,
    )


# Globalization threshold arithmetic ----------------------------------------


def truncation_theta(p) -> Fraction:
    """theta = (p - 4)/(2p - 4), the L^4/L^2 interpolation exponent."""
    p = as_fraction(p)
    if not 4 < p < 6:
        raise ExponentError(f"p must lie in (4, 6), got {p}")
    return (p - 4) / (2 * p - 4)


def truncation_beta(p) -> Fraction:
    """beta = (1 + 4 theta)/2, the correction-size exponent."""
    return (1 + 4 * truncation_theta(p)) / 2


def is_globalizable(p) -> bool:
    """beta > 7 theta, exactly; equivalent to p < 9/2."""
    theta = truncation_theta(p)
    return truncation_beta(p) > 7 * theta
