"""Closed-form constants and high-accuracy numerical cross-checks.

Covers the maximum pairwise-distance sums on circles and spheres, the mean
inter-point distance of the uniform distribution on the unit sphere in R^d
(by exact recurrence and by an independent quadrature oracle), Wallis partial
products with their exponential envelopes, the derived upper bounds on the
star Steiner ratio, and the summary bounds table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .exceptions import QuadratureError

__all__ = [
    "BoundPair",
    "BoundsTable",
    "TableRow",
    "UniformConstant",
    "WallisPartial",
    "adaptive_simpson",
    "bounds_table",
    "circle_sum_max",
    "circle_sum_quadratic_upper",
    "conjectured_plane_ratio",
    "ratio_envelope",
    "ratio_upper_bound",
    "sphere_mean_distance",
    "sphere_mean_distance_quadrature",
    "sphere_sum_bounds",
    "wallis_envelopes",
    "wallis_partial",
    "wallis_tail_sum",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BoundPair:
    """A lower/upper bound pair with lower <= upper."""

    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class UniformConstant:
    """Mean inter-point distance on the unit sphere in R^d, with provenance."""

    d: int
    value: float
    method: str  # "recurrence" or "quadrature"


@dataclass(frozen=True)
class WallisPartial:
    """Partial Wallis product W_n and its tail Z_n = (pi/2)/W_n."""

    n: int
    w: float
    z: float


def circle_sum_max(n: int) -> float:
    """Maximum of the pairwise-distance sum of n points on the unit circle,
    in closed form: n / tan(pi/(2n))."""
    if n < 2:
        raise ValueError("need n >= 2")
    return n / math.tan(math.pi / (2 * n))


def circle_sum_quadratic_upper(n: int) -> float:
    """The simpler quadratic relaxation (2/pi) n^2 of ``circle_sum_max``."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (2.0 / math.pi) * n * n


def sphere_sum_bounds(n: int) -> BoundPair:
    """Bracketing bounds for the maximum pairwise-distance sum of n points on
    the unit sphere in R^3: (2/3)n^2 - 10 sqrt(n) < max < (2/3)n^2 - 1/2."""
    if n < 2:
        raise ValueError("need n >= 2")
    base = (2.0 / 3.0) * n * n
    return BoundPair(base - 10.0 * math.sqrt(n), base - 0.5)


def sphere_mean_distance(d: int) -> UniformConstant:
    """Mean inter-point distance for the uniform distribution on the unit
    sphere in R^d, by the exact two-step recurrence
    c_{d+2} = 4d^2/(4d^2 - 1) * c_d with c_1 = 1 and c_2 = 4/pi."""
    if d < 1:
        raise ValueError("need d >= 1")
    value = 1.0 if d % 2 else 4.0 / math.pi
    for k in range(2 - d % 2, d, 2):
        value *= 4.0 * k * k / (4.0 * k * k - 1.0)
    return UniformConstant(d=d, value=value, method="recurrence")


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-12,
                     max_depth: int = 60) -> float:
    """Adaptive Simpson quadrature of ``f`` on [a, b] to absolute tolerance
    ``tol``; raises QuadratureError if the recursion depth is exhausted."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    def simpson(lo, flo, hi, fhi):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        return mid, fmid, (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, flo, mid, fmid, hi, fhi, whole, tol, depth):
        lm, flm, left = simpson(lo, flo, mid, fmid)
        rm, frm, right = simpson(mid, fmid, hi, fhi)
        err = left + right - whole
        if abs(err) <= 15.0 * tol:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson did not converge on [{lo}, {hi}]"
            )
        return (recurse(lo, flo, lm, flm, mid, fmid, left, 0.5 * tol, depth + 1)
                + recurse(mid, fmid, rm, frm, hi, fhi, right, 0.5 * tol, depth + 1))

    fa, fb = f(a), f(b)
    m, fm, whole = simpson(a, fa, b, fb)
    return recurse(a, fa, m, fm, b, fb, whole, tol, 0)


def sphere_mean_distance_quadrature(d: int, tol: float = 1e-12) -> UniformConstant:
    """Independent quadrature oracle for ``sphere_mean_distance``:
    2 * int_0^{pi/2} sin^{d-2}(2a) sin(a) da / int_0^{pi/2} sin^{d-2}(2a) da."""
    if d < 2:
        raise ValueError("need d >= 2")
    half_pi = 0.5 * math.pi
    k = d - 2
    num = adaptive_simpson(lambda a: math.sin(2.0 * a) ** k * math.sin(a),
                           0.0, half_pi, tol)
    den = adaptive_simpson(lambda a: math.sin(2.0 * a) ** k,
                           0.0, half_pi, tol)
    return UniformConstant(d=d, value=2.0 * num / den, method="quadrature")


def wallis_partial(n: int) -> WallisPartial:
    """Partial Wallis product W_n = prod_{k=1}^n 4k^2/(4k^2-1) and its tail
    Z_n = (pi/2)/W_n, so that W_n * Z_n = pi/2."""
    if n < 1:
        raise ValueError("need n >= 1")
    w = 1.0
    for k in range(1, n + 1):
        w *= 4.0 * k * k / (4.0 * k * k - 1.0)
    return WallisPartial(n=n, w=w, z=(0.5 * math.pi) / w)


def wallis_tail_sum(n: int) -> float:
    """Telescoping tail sum_{k>n} 1/(4k^2-1) = 1/(2(2n+1))."""
    if n < 1:
        raise ValueError("need n >= 1")
    return 1.0 / (2.0 * (2 * n + 1))


def wallis_envelopes(n: int) -> tuple[BoundPair, BoundPair]:
    """Exponential envelopes for the Wallis tail and partial product:

    e^{2/(5(2n+1))} <= Z_n <= e^{1/(2(2n+1))}
    (pi/2) e^{-1/(2(2n+1))} <= W_n <= (pi/2) e^{-2/(5(2n+1))}

    Returns (envelope for Z_n, envelope for W_n).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    half = 1.0 / (2.0 * (2 * n + 1))
    two_fifth = 2.0 / (5.0 * (2 * n + 1))
    z_pair = BoundPair(math.exp(two_fifth), math.exp(half))
    w_pair = BoundPair(0.5 * math.pi * math.exp(-half),
                       0.5 * math.pi * math.exp(-two_fifth))
    return z_pair, w_pair


def ratio_upper_bound(c: float) -> float:
    """Upper bound (2 sqrt(2) - c)/(1 + sqrt(2) - c) on the star Steiner
    ratio in a space whose sphere mean distance is ``c``; obtained by
    balancing the nearest-point and averaged estimates at delta = sqrt(2) - c.
    """
    if not 1.0 <= c <= SQRT2:
        raise ValueError(f"mean distance must lie in [1, sqrt(2)], got {c}")
    return (2.0 * SQRT2 - c) / (1.0 + SQRT2 - c)


def ratio_envelope(d: int) -> BoundPair:
    """Closed-form exponential envelope for the star Steiner ratio in R^d,
    valid for d >= 4:

    sqrt(2) e^{-1/(4(2d-3))} <= ratio <= ratio_upper_bound(sqrt(2) e^{-1/(5(2d-1))})
    """
    if d < 4:
        raise ValueError("envelope requires d >= 4")
    lower = SQRT2 * math.exp(-1.0 / (4.0 * (2 * d - 3)))
    c_up = SQRT2 * math.exp(-1.0 / (5.0 * (2 * d - 1)))
    return BoundPair(lower, ratio_upper_bound(c_up))


def conjectured_plane_ratio(n: int) -> float:
    """Conjectured star Steiner ratio for n points in the plane,
    (2/n) / tan(pi/(2n)); increases to 4/pi as n grows."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (2.0 / n) / math.tan(math.pi / (2 * n))


def _floor4(x: float) -> float:
    return math.floor(x * 10_000.0) / 10_000.0


def _ceil4(x: float) -> float:
    return math.ceil(x * 10_000.0) / 10_000.0


@dataclass(frozen=True)
class TableRow:
    """One bounds-table row. Display values keep the bound direction:
    lower bounds are rounded down to 4 decimals, upper bounds up."""

    quantity: str  # "star_steiner_ratio" or "star_matching_ratio"
    dim: int
    lower: float
    upper: float

    @property
    def lower_display(self) -> float:
        return _floor4(self.lower)

    @property
    def upper_display(self) -> float:
        return _ceil4(self.upper)


@dataclass(frozen=True)
class BoundsTable:
    rows: tuple[TableRow, ...]

    def to_json(self) -> str:
        payload = [
            {
                "quantity": r.quantity,
                "dim": r.dim,
                "lower": r.lower,
                "upper": r.upper,
                "lower_4dp": r.lower_display,
                "upper_4dp": r.upper_display,
            }
            for r in self.rows
        ]
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = [f"{'quantity':<22} {'dim':>4} {'lower':>8} {'upper':>8}"]
        for r in self.rows:
            lines.append(
                f"{r.quantity:<22} {r.dim:>4} "
                f"{r.lower_display:>8.4f} {r.upper_display:>8.4f}"
            )
        return "\n".join(lines)


# best known lower bounds for the star/matching ratio in d = 2 and 3
_MATCHING_RATIO_LOWER = {2: 4.0 / 3.0, 3: 1.5}


def bounds_table() -> BoundsTable:
    """Summary table of star Steiner ratio bounds for d in {2, 3, 4, 5, 100}
    and of the star/matching ratio bounds for d in {2, 3}."""
    rows = []
    for d in (2, 3, 4, 5, 100):
        c = sphere_mean_distance(d).value
        rows.append(TableRow("star_steiner_ratio", d, c, ratio_upper_bound(c)))
    matching_factor = {2: 2.0 / math.sqrt(3.0), 3: SQRT2}
    for d in (2, 3):
        c = sphere_mean_distance(d).value
        rows.append(
            TableRow(
                "star_matching_ratio",
                d,
                _MATCHING_RATIO_LOWER[d],
                ratio_upper_bound(c) * matching_factor[d],
            )
        )
    return BoundsTable(rows=tuple(rows))
