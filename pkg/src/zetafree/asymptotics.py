"""Objective constant M and the region constants C, eta, lambda.

For a feasible cosine polynomial b_0..b_d with shape angle theta,
    M   = b0*cos^2(theta) / ((3/4)*(sum_{j>=1} b_j)*(sum_j b_j)^(1/2))^(2/3)
    C   = (4*sum_j b_j / (3*B*sum_{j>=1} b_j))^(2/3)
    eta = C * (log log t / log t)^(2/3)
    lam = M / ((B log t)^(2/3) * (log log t)^(1/3))
and the region rows assert no zero with real part above 1 - lam near
height t.
"""

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .errors import DomainError, NonnegativityError
from .mollifier import solve_theta
from .trigpoly import Certificate, CosinePolynomial, verify_nonneg

DEFAULT_A = 76.2
DEFAULT_B = 4.45


@dataclass(frozen=True)
class AsymptoticParams:
    """Bundle of the constants entering the region evaluation.

    A is carried for provenance only; no in-scope formula consumes it.
    """

    A: float
    B: float
    t: float
    C: float
    eta: float
    lam: float
    M: float
    lambda_within_hypothesis: bool = True

    @classmethod
    def build(cls, p: CosinePolynomial, A: float, B: float, t: float) -> "AsymptoticParams":
        M = compute_M(p)
        C = compute_C(p, B)
        eta = eta_of(t, C)
        lam = lambda_of(t, B, M)
        return cls(
            A=A, B=B, t=t, C=C, eta=eta, lam=lam, M=M,
            lambda_within_hypothesis=lam < eta / 250.0,
        )


@dataclass(frozen=True)
class RegionRow:
    t: float
    eta: float
    lam: float
    beta_bound: float
    flags: Tuple[str, ...] = field(default_factory=tuple)


def _check_objective_input(p: CosinePolynomial) -> None:
    b = p.coeffs
    if b[0] <= 0 or b[1] <= 0:
        raise ValueError("b0 and b1 must be positive")
    cert = verify_nonneg(p)
    if not isinstance(cert, Certificate):
        raise NonnegativityError(
            f"polynomial dips to {cert.value:.3g} at theta={cert.theta:.6g}"
        )


def compute_M(p: CosinePolynomial, check_nonneg: bool = True) -> float:
    """Objective constant M; homogeneous of degree 0 in the coefficients."""
    if check_nonneg:
        _check_objective_input(p)
    b = p.coeffs
    theta = solve_theta(b[0], b[1])
    s_all = sum(b)
    s_tail = sum(b[1:])
    denom = (0.75 * s_tail * math.sqrt(s_all)) ** (2.0 / 3.0)
    return b[0] * math.cos(theta) ** 2 / denom


def compute_C(p: CosinePolynomial, B: float) -> float:
    """Optimal constant in the eta asymptotic, for growth constant B."""
    if B <= 0:
        raise ValueError("B must be positive")
    b = p.coeffs
    s_all = sum(b)
    s_tail = sum(b[1:])
    if s_tail <= 0:
        raise ValueError("sum of b_1..b_d must be positive")
    return (4.0 * s_all / (3.0 * B * s_tail)) ** (2.0 / 3.0)


def eta_of(t: float, C: float) -> float:
    if t <= math.e:
        raise DomainError("t must exceed e so that log log t is positive")
    if C <= 0:
        raise ValueError("C must be positive")
    return C * (math.log(math.log(t)) / math.log(t)) ** (2.0 / 3.0)


def lambda_of(t: float, B: float, M: float) -> float:
    if t <= math.e:
        raise DomainError("t must exceed e so that log log t is positive")
    if B <= 0 or M <= 0:
        raise ValueError("B and M must be positive")
    return M / ((B * math.log(t)) ** (2.0 / 3.0) * math.log(math.log(t)) ** (1.0 / 3.0))


def region_table(
    p: CosinePolynomial,
    A: float = DEFAULT_A,
    B: float = DEFAULT_B,
    t_values: Sequence[float] = (3e12,),
) -> List[RegionRow]:
    """Zero-free-region rows beta <= 1 - lambda(t), with hypothesis flags."""
    M = compute_M(p)
    C = compute_C(p, B)
    rows = []
    for t in t_values:
        if t <= 100:
            raise DomainError(f"t = {t} must exceed 100")
        eta = eta_of(t, C)
        lam = lambda_of(t, B, M)
        flags = []
        if lam >= eta / 250.0:
            flags.append("lambda_not_below_eta_over_250")
        if t <= 10000:
            flags.append("t_not_above_10000")
        rows.append(RegionRow(t=float(t), eta=eta, lam=lam,
                              beta_bound=1.0 - lam, flags=tuple(flags)))
    return rows
