"""Isoparametric families M_theta in S^n: curvatures, mean/scalar curvature, focal points.

The g distinct principal curvatures of the family member at parameter
theta in (-pi/(2g), pi/(2g)) are

    lambda_i = cot(theta_1 + (i-1) pi/g),   theta_1 = pi/(2g) + theta,

strictly decreasing with lambda_1 > cot(pi/g). Multiplicities are common
for g in {1, 3, 6} and alternate (m1, m2) for g in {2, 4}. The mean
curvature (trace of the shape operator, no averaging) is

    H = (g/2) (m1 t - m2 / t),   t = cot(g theta_1 / 2),

strictly decreasing in theta and onto R, so theta is recovered from H by
bisection. The scalar curvature is R = (n-1)(n-2) + H^2 - S with
S = sum m_i lambda_i^2, and closed forms for g = 3, 4, 6 are checked
against it on every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadric import ProjectiveCurvature

ADMISSIBLE_G = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class IsoparametricFamily:
    g: int
    m1: int
    m2: int
    theta: float

    def __post_init__(self):
        if self.g not in ADMISSIBLE_G:
            raise DomainError(f"g must be one of {ADMISSIBLE_G}")
        if self.m1 < 1 or self.m2 < 1:
            raise DomainError("multiplicities must be positive")
        if self.g in (1, 3, 6) and self.m1 != self.m2:
            raise DomainError(f"g = {self.g} forces a common multiplicity")
        bound = math.pi / (2 * self.g)
        if not -bound < self.theta < bound:
            raise DomainError(f"theta must lie in (-pi/{2 * self.g}, pi/{2 * self.g})")

    @property
    def theta1(self) -> float:
        return math.pi / (2 * self.g) + self.theta

    @property
    def multiplicities(self) -> np.ndarray:
        if self.g % 2 == 0:
            return np.array([self.m1, self.m2] * (self.g // 2), dtype=float)
        return np.full(self.g, float(self.m1))

    @property
    def ambient_dim(self) -> int:
        """n, with dim M = n - 1 = sum of multiplicities."""
        return int(self.multiplicities.sum()) + 1


@dataclass(frozen=True)
class FamilyInvariants:
    dimension_ambient: int
    mean_curvature: float
    second_moment: float
    scalar_curvature: float

    def __post_init__(self):
        n, h, s, r = (self.dimension_ambient, self.mean_curvature,
                      self.second_moment, self.scalar_curvature)
        expected = (n - 1) * (n - 2) + h * h - s
        if abs(r - expected) > 1e-9 * max(1.0, abs(expected)):
            raise ValueError("scalar curvature inconsistent with (n-1)(n-2) + H^2 - S")


def principal_curvatures(fam: IsoparametricFamily) -> np.ndarray:
    """cot(theta_1 + (i-1) pi/g), i = 1..g; strictly decreasing."""
    angles = fam.theta1 + np.arange(fam.g) * math.pi / fam.g
    return 1.0 / np.tan(angles)


def _mean_curvature_raw(g: int, m1: int, m2: int, theta1: float) -> float:
    if g == 1:
        return m1 / math.tan(theta1)
    if g == 2:
        return m1 / math.tan(theta1) + m2 / math.tan(theta1 + math.pi / 2)
    t = 1.0 / math.tan(g * theta1 / 2.0)
    return (g / 2.0) * (m1 * t - m2 / t)


def mean_curvature(fam: IsoparametricFamily) -> float:
    lam = principal_curvatures(fam)
    direct = float(fam.multiplicities @ lam)
    h = _mean_curvature_raw(fam.g, fam.m1, fam.m2, fam.theta1)
    # angle arguments carry a few ulps of pi; cot amplifies that by 1 + cot^2
    conditioning = 4e-15 * float(fam.multiplicities @ (1.0 + lam * lam))
    tol = max(1e-9 * max(1.0, abs(h)), conditioning)
    if abs(h - direct) > tol:
        raise ArithmeticError(f"mean curvature formula disagrees with direct sum: {h} vs {direct}")
    if fam.g in (3, 6):
        alt = fam.g * fam.m1 / math.tan(fam.g * fam.theta1)
        if abs(alt - h) > tol:
            raise ArithmeticError("common-multiplicity mean curvature form disagrees")
    return h


def minimal_theta(g: int, m1: int, m2: int) -> float:
    """The unique theta with H = 0: cot^2(g theta_1 / 2) = m2/m1."""
    fam_check = IsoparametricFamily(g, m1, m2, 0.0)  # validates (g, m1, m2)
    del fam_check
    theta1 = (2.0 / g) * math.atan(math.sqrt(m1 / m2))
    theta = theta1 - math.pi / (2 * g)
    residual = mean_curvature(IsoparametricFamily(g, m1, m2, theta))
    if abs(residual) > 1e-10:
        raise ArithmeticError(f"minimal theta residual {residual:.3e}")
    return theta


def theta_from_mean_curvature(g: int, m1: int, m2: int, h: float) -> float:
    """Invert H(theta) by bisection; H is strictly decreasing and onto R."""
    IsoparametricFamily(g, m1, m2, 0.0)  # validates (g, m1, m2)
    bound = math.pi / (2 * g)
    eps = 1e-13
    lo, hi = -bound + eps, bound - eps
    offset = math.pi / (2 * g)

    def f(theta: float) -> float:
        return _mean_curvature_raw(g, m1, m2, offset + theta) - h

    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi):
        raise ArithmeticError("mean curvature does not diverge with opposite signs at endpoints")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scalar_curvature(fam: IsoparametricFamily) -> FamilyInvariants:
    """General R = (n-1)(n-2) + H^2 - S, checked against the closed form for g in {3,4,6}."""
    lam = principal_curvatures(fam)
    mult = fam.multiplicities
    n = fam.ambient_dim
    h = mean_curvature(fam)
    s = float(mult @ (lam * lam))
    r = (n - 1) * (n - 2) + h * h - s
    closed = None
    if fam.g == 3:
        closed = 9 * fam.m1 * (fam.m1 - 1) * (1 + 1.0 / math.tan(3 * fam.theta1) ** 2)
    elif fam.g == 4:
        t = 1.0 / math.tan(2 * fam.theta1)
        closed = 4 * (fam.m1 * (fam.m1 - 1) * (1 + t * t)
                      + fam.m2 * (fam.m2 - 1) * (1 + 1.0 / (t * t)))
    elif fam.g == 6:
        closed = 36 * fam.m1 * (fam.m1 - 1) * (1 + 1.0 / math.tan(6 * fam.theta1) ** 2)
    if closed is not None and abs(closed - r) > 1e-8 * max(1.0, abs(r)):
        raise ArithmeticError(f"closed-form scalar curvature {closed} disagrees with {r}")
    return FamilyInvariants(n, h, s, r)


def focal_points(p: np.ndarray, n: np.ndarray, lam) -> tuple[np.ndarray, np.ndarray]:
    """cos(theta) p + sin(theta) n and its antipode, theta = arccot(lambda) in (0, pi).

    Accepts a real curvature or a ProjectiveCurvature (so lambda = infinity is exact).
    """
    p = np.asarray(p, dtype=float)
    n = np.asarray(n, dtype=float)
    if (abs(np.linalg.norm(p) - 1.0) > 1e-10 or abs(np.linalg.norm(n) - 1.0) > 1e-10
            or abs(float(np.dot(p, n))) > 1e-10):
        raise DomainError("p and n must be orthonormal")
    if isinstance(lam, ProjectiveCurvature):
        theta = lam.angle
    else:
        theta = math.atan2(1.0, float(lam))
    f = math.cos(theta) * p + math.sin(theta) * n
    return f, -f


def distance_squared(x: np.ndarray, p: np.ndarray) -> float:
    """Squared spherical distance (arccos of the clamped dot product)^2."""
    dot = float(np.clip(np.dot(x, p), -1.0, 1.0))
    return math.acos(dot) ** 2
