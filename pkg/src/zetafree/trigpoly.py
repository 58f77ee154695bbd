"""Cosine polynomials p(theta) = sum_j b_j cos(j*theta).

Two representations are used: the raw coefficient vector, and a
manifestly nonnegative product form
scale * (1 + cos t)^e * prod_i (a_i + cos t)^2 with e in {0, 1}.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import mpmath as mp
import numpy as np
from numpy.polynomial import chebyshev as _cheb
from numpy.polynomial import polynomial as _poly

from .errors import DegreeOverflowError

MAX_DEGREE = 32


@dataclass(frozen=True)
class CosinePolynomial:
    """Coefficients b_0..b_d of sum b_j cos(j*theta)."""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        if len(c) < 2:
            raise ValueError("need degree >= 1 (at least two coefficients)")
        if not all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def scaled(self, factor: float) -> "CosinePolynomial":
        return CosinePolynomial(tuple(factor * b for b in self.coeffs))

    def to_json(self) -> list:
        return list(self.coeffs)


@dataclass(frozen=True)
class ProductForm:
    """Factored nonnegative polynomial.

    Represents scale * (1 + cos t)^e * prod (a_i + cos t)^2, with
    e = 1 when half_angle_factor is set.  Every factor is >= 0 for
    real t, so the represented function is pointwise nonnegative.
    """

    scale: float
    half_angle_factor: bool
    roots: Tuple[float, ...]

    def __post_init__(self):
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise ValueError("scale must be positive and finite")
        r = tuple(float(a) for a in self.roots)
        if not all(a > 0 and np.isfinite(a) for a in r):
            raise ValueError("every root offset a_i must be positive and finite")
        object.__setattr__(self, "roots", r)

    @property
    def degree(self) -> int:
        return 2 * len(self.roots) + (1 if self.half_angle_factor else 0)

    def eval(self, theta):
        """Direct evaluation of the factored product."""
        c = np.cos(theta)
        out = self.scale * np.ones_like(c)
        if self.half_angle_factor:
            out = out * (1.0 + c)
        for a in self.roots:
            out = out * (a + c) ** 2
        return out

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "half_angle_factor": self.half_angle_factor,
            "roots": list(self.roots),
        }


@dataclass(frozen=True)
class Certificate:
    """Grid-plus-refinement evidence that the minimum is >= -tol."""

    min_value: float
    argmin: float


@dataclass(frozen=True)
class Violation:
    """Witness angle where the polynomial dips below -tol."""

    theta: float
    value: float


def eval_poly(p: CosinePolynomial, theta):
    """Evaluate sum b_j cos(j*theta); accepts scalars or arrays."""
    th = np.asarray(theta, dtype=float)
    j = np.arange(len(p.coeffs))
    vals = np.cos(np.multiply.outer(th, j)) @ np.asarray(p.coeffs)
    return float(vals) if np.isscalar(theta) else vals


def power_to_cosine(power_coeffs: Sequence[float]) -> Tuple[float, ...]:
    """Convert a polynomial in c = cos(theta) to cosine coefficients.

    Uses the Chebyshev basis change cos(j*theta) = T_j(cos theta), so the
    conversion is exact up to rounding.
    """
    pc = np.asarray(power_coeffs, dtype=float)
    if pc.size == 0:
        raise ValueError("empty coefficient list")
    return tuple(_cheb.poly2cheb(pc))


def expand_product(form: ProductForm, max_degree: int = MAX_DEGREE) -> CosinePolynomial:
    """Expand a ProductForm into cosine coefficients.

    Multiplies the factors in the power basis of c = cos(theta) and then
    changes basis via power_to_cosine.
    """
    if form.degree > max_degree:
        raise DegreeOverflowError(
            f"degree {form.degree} exceeds the configured maximum {max_degree}"
        )
    pc = np.array([form.scale])
    if form.half_angle_factor:
        pc = _poly.polymul(pc, [1.0, 1.0])
    for a in form.roots:
        pc = _poly.polymul(pc, _poly.polymul([a, 1.0], [a, 1.0]))
    b = power_to_cosine(pc)
    if len(b) < 2:  # constant form is not a valid CosinePolynomial
        b = b + (0.0,)
    return CosinePolynomial(b)


def _golden_min_mp(coeffs, a, b, width=1e-12):
    """Golden-section refinement in extended precision.

    Double precision cannot localize a high-order zero-touching minimum
    (round-off ~1e-16 smears the argmin over ~1e-4 for a quartic touch),
    so the local refinement evaluates the cosine sum at 60 digits.
    """
    with mp.workdps(60):
        cs = [mp.mpf(c) for c in coeffs]
        f = lambda t: mp.fsum(cj * mp.cos(j * t) for j, cj in enumerate(cs))
        invphi = (mp.sqrt(5) - 1) / 2
        a, b = mp.mpf(a), mp.mpf(b)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = f(c), f(d)
        while (b - a) > width:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = f(d)
        x = (a + b) / 2
        return float(x), float(f(x))


def verify_nonneg(
    p: CosinePolynomial,
    tol: float = 1e-12,
    grid_points: int = 200_001,
) -> Union[Certificate, Violation]:
    """Check p >= -tol on [0, pi] (evenness covers the rest).

    Dense grid scan followed by golden-section refinement of every local
    minimum down to width 1e-12.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    thetas = np.linspace(0.0, np.pi, grid_points)
    vals = eval_poly(p, thetas)
    interior = (vals[1:-1] <= vals[:-2]) & (vals[1:-1] <= vals[2:])
    candidates = list(np.nonzero(interior)[0] + 1)
    if vals[0] <= vals[1]:
        candidates.append(0)
    if vals[-1] <= vals[-2]:
        candidates.append(grid_points - 1)

    best_x, best_v = 0.0, vals[0]
    for i in candidates:
        lo = thetas[max(i - 1, 0)]
        hi = thetas[min(i + 1, grid_points - 1)]
        x, v = _golden_min_mp(p.coeffs, lo, hi)
        if v < best_v:
            best_x, best_v = x, v
    if best_v >= -tol:
        return Certificate(min_value=float(best_v), argmin=float(best_x))
    return Violation(theta=float(best_x), value=float(best_v))


def zero_coefficient_flags(p: CosinePolynomial, tol: float = 0.0) -> Tuple[int, ...]:
    """Indices j >= 2 where b_j vanishes (permitted, but worth flagging)."""
    return tuple(j for j in range(2, len(p.coeffs)) if abs(p.coeffs[j]) <= tol)
