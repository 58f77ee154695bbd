"""Mollifier weight family: shape angle, g, its convolution square w,
the scaled weight f, and their Laplace transforms.

The shape angle theta in (0, pi/2) solves
    sin^2 theta = (b1/b0) * (1 - theta*cot(theta)),
after which
    g(u) = (cos(u tan theta) - cos theta) * sec^2 theta   for |u| < theta/tan theta,
    w = g * g (convolution square),
    f(u) = lam * exp(lam*u) * w(lam*u)                    for u >= 0,
and F, W are the Laplace transforms of f and w.  Closed forms are known
for w(0), F(0) and -W'(0); everything else is computed by quadrature on
the compact support.
"""

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import RatioOutOfRangeError
from .quadrature import adaptive_quad, fixed_gauss

RATIO_WINDOW = (1.0, 3.0)


def _theta_residual(theta, ratio):
    return np.sin(theta) ** 2 - ratio * (1.0 - theta / np.tan(theta))


def _theta_residual_prime(theta, ratio):
    sin2 = np.sin(theta) ** 2
    return np.sin(2.0 * theta) + ratio * (1.0 / np.tan(theta) - theta / sin2)


def solve_theta(b0: float, b1: float) -> float:
    """Solve the shape equation for theta in (0, pi/2).

    Requires b1/b0 in (1, 3): the residual behaves like theta^2*(1 - r/3)
    near 0 and equals 1 - r at pi/2, so exactly this window guarantees a
    sign change on the bracket.
    """
    if b0 <= 0 or b1 <= 0:
        raise ValueError("b0 and b1 must be positive")
    ratio = b1 / b0
    if not (RATIO_WINDOW[0] < ratio < RATIO_WINDOW[1]):
        raise RatioOutOfRangeError(
            f"b1/b0 = {ratio:.6g} outside the window {RATIO_WINDOW}"
        )

    lo, hi = 1e-8, np.pi / 2 - 1e-12
    # coarse scan; also reports if the bracket ever shows multiple crossings
    scan = np.linspace(lo, hi, 2001)
    signs = np.sign(_theta_residual(scan, ratio))
    changes = np.nonzero(np.diff(signs) != 0)[0]
    if len(changes) > 1:
        warnings.warn(
            f"multiple sign changes detected for ratio {ratio:.6g}; "
            "using the first crossing",
            RuntimeWarning,
        )
    if len(changes) >= 1:
        lo, hi = float(scan[changes[0]]), float(scan[changes[0] + 1])

    flo = _theta_residual(lo, ratio)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = _theta_residual(mid, ratio)
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    theta = 0.5 * (lo + hi)

    # Newton polish with the analytic derivative
    for _ in range(4):
        step = _theta_residual(theta, ratio) / _theta_residual_prime(theta, ratio)
        new = theta - step
        if 0 < new < np.pi / 2:
            theta = new
        if abs(step) < 1e-15:
            break
    if abs(_theta_residual(theta, ratio)) > 1e-12:
        raise ArithmeticError("shape equation residual did not reach 1e-12")
    return float(theta)


def g_support(theta: float) -> float:
    return theta / np.tan(theta)


def g_eval(theta: float, u):
    """Evaluate g; zero outside |u| < theta/tan(theta)."""
    s = g_support(theta)
    u_arr = np.asarray(u, dtype=float)
    sec2 = 1.0 / np.cos(theta) ** 2
    inside = np.abs(u_arr) < s
    vals = np.where(
        inside,
        (np.cos(u_arr * np.tan(theta)) - np.cos(theta)) * sec2,
        0.0,
    )
    return float(vals) if np.isscalar(u) else vals


def w_eval(theta: float, u: float, order: int = 60) -> float:
    """Convolution square (g*g)(u) for u >= 0 by Gauss-Legendre quadrature."""
    if u < 0:
        raise ValueError("u must be >= 0")
    s = g_support(theta)
    if u >= 2 * s:
        return 0.0
    lo, hi = max(-s, u - s), min(s, u + s)
    return float(fixed_gauss(lambda v: g_eval(theta, v) * g_eval(theta, u - v), lo, hi, order))


def w0_closed(theta: float) -> float:
    """w(0) = sec^2(theta) * (theta*tan(theta) + 3*theta*cot(theta) - 3)."""
    t = np.tan(theta)
    return float((theta * t + 3.0 * theta / t - 3.0) / np.cos(theta) ** 2)


def F0_closed(theta: float) -> float:
    """F(0) = 2*tan^2(theta) + 3 - 3*theta*(tan(theta) + cot(theta))."""
    t = np.tan(theta)
    return float(2.0 * t**2 + 3.0 - 3.0 * theta * (t + 1.0 / t))


def negWprime0_closed(theta: float) -> float:
    """-W'(0), i.e. the first moment of w on its support."""
    cot = 1.0 / np.tan(theta)
    csc = 1.0 / np.sin(theta)
    sec = 1.0 / np.cos(theta)
    inner = (15.0 - 12.0 * theta**2 + theta * (-15.0 + 4.0 * theta**2) * cot) * csc
    return float((csc * (inner + 3.0 * theta * sec)) / 3.0)


def W_eval(theta: float, s, tol: float = 1e-11) -> complex:
    """Laplace transform of w: integral of w(u)*exp(-s*u) over the support."""
    sup = 2.0 * g_support(theta)
    s = complex(s)

    def integrand(u):
        return np.array([w_eval(theta, float(ui)) for ui in np.atleast_1d(u)]) * np.exp(-s * u)

    val, _ = adaptive_quad(integrand, 0.0, sup, tol=tol)
    return complex(val)


@dataclass(frozen=True)
class MollifierShape:
    """Shape angle plus the derived quantities the objective consumes.

    lam (the exponential scaling) may be attached later; the stored
    closed-form values are lam-free.
    """

    theta: float
    b0: float
    b1: float
    lam: Optional[float] = None
    g_support: float = 0.0
    w_support: float = 0.0
    w0: float = 0.0
    F0val: float = 0.0
    negWp0: float = 0.0

    @classmethod
    def from_coeffs(cls, b0: float, b1: float, lam: Optional[float] = None) -> "MollifierShape":
        theta = solve_theta(b0, b1)
        return cls(
            theta=theta,
            b0=float(b0),
            b1=float(b1),
            lam=None if lam is None else float(lam),
            g_support=g_support(theta),
            w_support=2.0 * g_support(theta),
            w0=w0_closed(theta),
            F0val=F0_closed(theta),
            negWp0=negWprime0_closed(theta),
        )

    def with_lambda(self, lam: float) -> "MollifierShape":
        if lam <= 0:
            raise ValueError("lam must be positive")
        return MollifierShape(
            theta=self.theta, b0=self.b0, b1=self.b1, lam=float(lam),
            g_support=self.g_support, w_support=self.w_support,
            w0=self.w0, F0val=self.F0val, negWp0=self.negWp0,
        )

    @property
    def f0(self) -> float:
        """f(0) = lam * w(0)."""
        if self.lam is None:
            raise ValueError("lam is not set on this shape")
        return self.lam * self.w0

    def f_eval(self, u: float) -> float:
        """f(u) = lam * exp(lam*u) * w(lam*u) for u >= 0."""
        if self.lam is None:
            raise ValueError("lam is not set on this shape")
        if u < 0:
            raise ValueError("u must be >= 0")
        lu = self.lam * u
        if lu >= self.w_support:
            return 0.0
        return self.lam * np.exp(lu) * w_eval(self.theta, lu)


def F_eval(shape: MollifierShape, z) -> complex:
    """Laplace transform of f, via F(z) = W(z/lam - 1)."""
    if shape.lam is None:
        raise ValueError("lam is not set on this shape")
    return W_eval(shape.theta, complex(z) / shape.lam - 1.0)


def F0_eval(shape: MollifierShape, z) -> complex:
    """Pole-subtracted transform F(z) - f(0)/z."""
    z = complex(z)
    if z == 0:
        raise ZeroDivisionError("F0 is undefined at z = 0")
    return F_eval(shape, z) - shape.f0 / z
