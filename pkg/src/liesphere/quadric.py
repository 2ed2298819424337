"""Oriented hyperspheres of S^n in the projective quadric model.

An oriented sphere with center p in S^n, radius theta in (0, pi) and
orientation eps = +/-1 is the projective class of

    z = (p, cos theta, eps sin theta)  in R^(n+3),

null for the signature-(n+1, 2) form. The point sphere at p is (p, 1, 0)
and the oriented great sphere is (p, 0, +/-1). Two quadric points are in
oriented contact iff their indefinite inner product vanishes.

A pointed unit normal (p, n) lifts to the contact element (k1, k2) =
((p,1,0), (n,0,1)); the curvature sphere for a principal curvature
lambda = v/u = cot(xi) is v k1 + u k2. A group element maps principal
curvatures by the Moebius rule lambda -> (a lambda + c)/(b lambda + d),
so curvatures are kept as projective pairs (v, u) and poles are exact.

Lie curvatures are cross ratios of four curvatures; the two index
conventions that appear in practice are named explicitly because silent
convention drift is the main correctness hazard:

    standard_13_24:  (l1-l3)(l2-l4) / ((l1-l4)(l2-l3))
    paper6_12_34:    (l1-l2)(l3-l4) / ((l1-l4)(l3-l2))
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContactViolation, DegenerateConfiguration, DomainError
from .indefinite import LieTransform, Signature, SignedVector, inner

QUADRIC_TOL = 1e-9
PROJECTIVE_TOL = 1e-10

SPHERE = "sphere"
POINT_SPHERE = "point_sphere"
GREAT_SPHERE = "great_sphere"

STANDARD_13_24 = "standard_13_24"
PAPER6_12_34 = "paper6_12_34"
ORDERINGS = (STANDARD_13_24, PAPER6_12_34)


@dataclass(frozen=True)
class OrientedSphere:
    """Oriented hypersphere of S^n; point spheres and great spheres carry no radius."""

    center: np.ndarray
    kind: str
    radius: float | None = None
    orientation: int = 1

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        object.__setattr__(self, "center", center)
        if abs(np.linalg.norm(center) - 1.0) > 1e-12:
            raise DomainError("center must be a unit vector")
        if self.kind not in (SPHERE, POINT_SPHERE, GREAT_SPHERE):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == SPHERE:
            if self.radius is None or not 0.0 < self.radius < math.pi:
                raise DomainError("sphere radius must lie in (0, pi)")
        elif self.radius is not None:
            raise DomainError(f"{self.kind} carries no radius")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @classmethod
    def sphere(cls, center, radius: float, orientation: int = 1) -> "OrientedSphere":
        return cls(center, SPHERE, radius, orientation)

    @classmethod
    def point(cls, center) -> "OrientedSphere":
        return cls(center, POINT_SPHERE)

    @classmethod
    def great(cls, center, orientation: int = 1) -> "OrientedSphere":
        return cls(center, GREAT_SPHERE, None, orientation)


@dataclass(frozen=True)
class QuadricPoint:
    """Projective class [z] of a null vector; equality means parallel representatives."""

    rep: SignedVector

    def __post_init__(self):
        z = self.rep.coords
        norm2 = float(np.dot(z, z))
        if norm2 == 0.0:
            raise ValueError("representative must be nonzero")
        if abs(inner(self.rep, self.rep)) > QUADRIC_TOL * norm2:
            raise DomainError("representative is not on the quadric")

    def same_point(self, other: "QuadricPoint", tol: float = QUADRIC_TOL) -> bool:
        a, b = self.rep.coords, other.rep.coords
        cos = np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
        return abs(abs(cos) - 1.0) <= tol


@dataclass(frozen=True)
class ContactElement:
    """Legendre pair (k1, k2): point sphere and great sphere in oriented contact."""

    k1: QuadricPoint
    k2: QuadricPoint

    def __post_init__(self):
        a, b = self.k1.rep.coords, self.k2.rep.coords
        scale = np.linalg.norm(a) * np.linalg.norm(b)
        if abs(inner(self.k1.rep, self.k2.rep)) > QUADRIC_TOL * scale:
            raise ContactViolation("k1 and k2 are not in oriented contact")
        if abs(abs(np.dot(a, b)) - scale) <= 1e-12 * scale:
            raise ContactViolation("k1 and k2 must be linearly independent")


@dataclass(frozen=True)
class ProjectiveCurvature:
    """Curvature lambda = v/u = cot(xi) as a projective pair; u = 0 is the point-sphere pole."""

    v: float
    u: float

    def __post_init__(self):
        if self.v == 0.0 and self.u == 0.0:
            raise ValueError("(v, u) must be nonzero")

    @classmethod
    def from_value(cls, lam: float) -> "ProjectiveCurvature":
        return cls(float(lam), 1.0)

    @classmethod
    def from_angle(cls, xi: float) -> "ProjectiveCurvature":
        return cls(math.cos(xi), math.sin(xi))

    @classmethod
    def infinity(cls) -> "ProjectiveCurvature":
        return cls(1.0, 0.0)

    @property
    def is_infinite(self) -> bool:
        return abs(self.u) <= PROJECTIVE_TOL * abs(self.v)

    @property
    def value(self) -> float:
        if self.is_infinite:
            return math.inf if self.v > 0 else -math.inf
        return self.v / self.u

    @property
    def angle(self) -> float:
        """Radius xi = arccot(v/u) in [0, pi)."""
        return math.atan2(self.u, self.v) % math.pi


def projective_distance(a: ProjectiveCurvature, b: ProjectiveCurvature) -> float:
    """|sin| of the angle between the rays (v, u); zero iff projectively equal."""
    cross = a.v * b.u - b.v * a.u
    return abs(cross) / (math.hypot(a.v, a.u) * math.hypot(b.v, b.u))


def sphere_to_quadric(s: OrientedSphere) -> QuadricPoint:
    """(p, cos theta, eps sin theta); (p, 1, 0) for point spheres; (p, 0, eps) for great."""
    n_plus = len(s.center)
    sig = Signature(n_plus, 2)
    if s.kind == POINT_SPHERE:
        tail = (1.0, 0.0)
    elif s.kind == GREAT_SPHERE:
        tail = (0.0, float(s.orientation))
    else:
        tail = (math.cos(s.radius), s.orientation * math.sin(s.radius))
    rep = np.concatenate([s.center, tail])
    return QuadricPoint(SignedVector(rep, sig))


def classify_quadric_point(q: QuadricPoint, tol: float = 1e-12) -> OrientedSphere:
    """Inverse of sphere_to_quadric: scale the spatial part to a unit vector and read (c, s)."""
    z = q.rep.coords
    spatial = z[:-2]
    norm = np.linalg.norm(spatial)
    if norm <= tol * np.linalg.norm(z):
        raise DomainError("malformed representative: zero spatial part")
    center = spatial / norm
    c, s = z[-2] / norm, z[-1] / norm
    if abs(s) <= tol:
        return OrientedSphere.point(center)
    if abs(c) <= tol:
        return OrientedSphere.great(center, 1 if s > 0 else -1)
    theta = math.atan2(abs(s), c)
    return OrientedSphere.sphere(center, theta, 1 if s > 0 else -1)


def oriented_contact(a: QuadricPoint, b: QuadricPoint, tol: float = QUADRIC_TOL):
    """True iff <a, b> = 0 relative to the representative norms. Returns (ok, residual)."""
    scale = np.linalg.norm(a.rep.coords) * np.linalg.norm(b.rep.coords)
    residual = abs(inner(a.rep, b.rep)) / scale
    return residual <= tol, residual


def legendre_lift(p: np.ndarray, n: np.ndarray) -> ContactElement:
    """Contact element ((p,1,0), (n,0,1)) of a pointed unit normal."""
    p = np.asarray(p, dtype=float)
    n = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(p) - 1.0) > 1e-10 or abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ContactViolation("p and n must be unit vectors")
    if abs(float(np.dot(p, n))) > 1e-10:
        raise ContactViolation("p and n must be orthogonal")
    sig = Signature(len(p), 2)
    k1 = QuadricPoint(SignedVector(np.concatenate([p, [1.0, 0.0]]), sig))
    k2 = QuadricPoint(SignedVector(np.concatenate([n, [0.0, 1.0]]), sig))
    return ContactElement(k1, k2)


def curvature_sphere(ce: ContactElement, lam: ProjectiveCurvature) -> QuadricPoint:
    """v k1 + u k2: the oriented sphere of radius xi = arccot(v/u) through the contact element."""
    rep = lam.v * ce.k1.rep.coords + lam.u * ce.k2.rep.coords
    return QuadricPoint(SignedVector(rep, ce.k1.rep.signature))


def moebius_curvature(a: float, b: float, c: float, d: float,
                      lam: ProjectiveCurvature) -> ProjectiveCurvature:
    """lambda -> (a lambda + c)/(b lambda + d), applied projectively so poles are exact."""
    det = a * d - b * c
    scale = max(abs(a), abs(b), abs(c), abs(d), 1e-300)
    if abs(det) <= 1e-12 * scale * scale:
        raise DegenerateConfiguration("moebius coefficient matrix is singular")
    return ProjectiveCurvature(a * lam.v + c * lam.u, b * lam.v + d * lam.u)


def parallel_transform(theta: float, sig: Signature) -> LieTransform:
    """Identity on the plus block, rotation by theta on the two minus slots.

    Its induced curvature action is cot(xi) -> cot(xi + theta).
    """
    if sig.minus_count != 2:
        raise ValueError("parallel transformations need a (n+1, 2) signature")
    m = np.eye(sig.dim)
    ct, st = math.cos(theta), math.sin(theta)
    m[-2:, -2:] = [[ct, -st], [st, ct]]
    return LieTransform(m, sig)


def moebius_coefficients(l: LieTransform, ce: ContactElement):
    """(a, b, c, d) of the curvature action of l on a contact element.

    The images L k1 = (q, a, b), L k2 = (m, c, d) decompose exactly in the
    image frame (point sphere, great sphere), so the coefficients are just
    the last two coordinates of the images.
    """
    w1 = l.matrix @ ce.k1.rep.coords
    w2 = l.matrix @ ce.k2.rep.coords
    a, b = float(w1[-2]), float(w1[-1])
    c, d = float(w2[-2]), float(w2[-1])
    det = a * d - b * c
    if abs(det) <= 1e-12:
        raise DegenerateConfiguration("transformed frame is degenerate")
    return a, b, c, d


def cross_ratio(w1: complex, w2: complex, w3: complex, w4: complex) -> complex:
    """[w1, w2; w3, w4] = (w1-w3)(w2-w4) / ((w1-w4)(w2-w3)).

    Real iff the four points are concircular or collinear.
    """
    scale = max(abs(w1), abs(w2), abs(w3), abs(w4), 1.0)
    if abs(w1 - w4) <= 1e-12 * scale or abs(w2 - w3) <= 1e-12 * scale:
        raise DegenerateConfiguration("cross ratio denominator vanishes")
    return (w1 - w3) * (w2 - w4) / ((w1 - w4) * (w2 - w3))


@dataclass(frozen=True)
class LieCurvatureValue:
    value: float
    ordering: str = STANDARD_13_24

    def __post_init__(self):
        if self.ordering not in ORDERINGS:
            raise ValueError(f"unknown ordering {self.ordering!r}")


def _pdiff(a: ProjectiveCurvature, b: ProjectiveCurvature) -> float:
    # numerator of a - b over a common projective denominator
    return a.v * b.u - b.v * a.u


def lie_curvature(l1: ProjectiveCurvature, l2: ProjectiveCurvature,
                  l3: ProjectiveCurvature, l4: ProjectiveCurvature,
                  ordering: str = STANDARD_13_24) -> LieCurvatureValue:
    """Cross ratio of four curvatures, computed projectively so infinity is admissible."""
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}")
    curvatures = (l1, l2, l3, l4)
    for i in range(4):
        for j in range(i + 1, 4):
            if projective_distance(curvatures[i], curvatures[j]) <= PROJECTIVE_TOL:
                raise DegenerateConfiguration(f"curvatures {i + 1} and {j + 1} coincide")
    if ordering == STANDARD_13_24:
        num = _pdiff(l1, l3) * _pdiff(l2, l4)
        den = _pdiff(l1, l4) * _pdiff(l2, l3)
    else:
        num = _pdiff(l1, l2) * _pdiff(l3, l4)
        den = _pdiff(l1, l4) * _pdiff(l3, l2)
    return LieCurvatureValue(num / den, ordering)


def lie_curvature_of_values(values, ordering: str = STANDARD_13_24) -> LieCurvatureValue:
    return lie_curvature(*(ProjectiveCurvature.from_value(v) for v in values), ordering=ordering)
