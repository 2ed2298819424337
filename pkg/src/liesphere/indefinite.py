"""Dense linear algebra over R^(p+q) with the indefinite form sum(x_i y_i) - sum(x_j y_j).

The ambient space of the quadric model is R^(n+3) with signature (n+1, 2);
the conformal subgroup acting on a normal geodesic circle lives in signature
(2, 1). A matrix L belongs to O(p, q) iff  L^T Ibar L = Ibar  where Ibar is
the diagonal signature matrix diag(+1 ... +1, -1 ... -1).

Random group elements are generated as exp(X) of Ibar-skew generators
(X^T Ibar + Ibar X = 0), which guarantees membership up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, SignatureMismatch

GROUP_TOL = 1e-9
COMPOSE_TOL = 1e-8


@dataclass(frozen=True)
class Signature:
    """Signature (plus_count, minus_count) of the ambient bilinear form."""

    plus_count: int
    minus_count: int

    def __post_init__(self):
        if self.plus_count < 1:
            raise ValueError("plus_count must be >= 1")
        if self.minus_count not in (1, 2):
            raise ValueError("minus_count must be 1 or 2")

    @property
    def dim(self) -> int:
        return self.plus_count + self.minus_count

    def matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([np.ones(self.plus_count), -np.ones(self.minus_count)]))


@dataclass(frozen=True)
class SignedVector:
    """A vector of R^(p+q) tagged with its Signature."""

    coords: np.ndarray
    signature: Signature

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        if coords.shape != (self.signature.dim,):
            raise ShapeError(f"expected {self.signature.dim} coordinates, got {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")


def inner_raw(x: np.ndarray, y: np.ndarray, sig: Signature) -> float:
    p = sig.plus_count
    return float(np.dot(x[:p], y[:p]) - np.dot(x[p:], y[p:]))


def inner(x: SignedVector, y: SignedVector) -> float:
    """Indefinite inner product; raises SignatureMismatch on incompatible operands."""
    if x.signature != y.signature:
        raise SignatureMismatch(f"{x.signature} vs {y.signature}")
    return inner_raw(x.coords, y.coords, x.signature)


def is_lie_transform(matrix: np.ndarray, sig: Signature, tol: float = GROUP_TOL):
    """Membership test for O(p, q): max-abs residual of L^T Ibar L - Ibar.

    Returns (ok, residual); the residual is always reported.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] != sig.dim:
        raise ShapeError(f"matrix of size {matrix.shape[0]} does not match dim {sig.dim}")
    ibar = sig.matrix()
    residual = float(np.abs(matrix.T @ ibar @ matrix - ibar).max())
    return residual <= tol, residual


@dataclass(frozen=True)
class LieTransform:
    """An element of O(p, q), validated against its defining relation on construction."""

    matrix: np.ndarray
    signature: Signature

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", matrix)
        ok, residual = is_lie_transform(matrix, self.signature, COMPOSE_TOL)
        if not ok:
            raise ValueError(f"not in O({self.signature.plus_count},{self.signature.minus_count}): "
                             f"residual {residual:.3e}")
        det = float(np.linalg.det(matrix))
        if abs(abs(det) - 1.0) > 1e-6:
            raise ValueError(f"determinant {det} not of unit modulus")


def _expm(x: np.ndarray) -> np.ndarray:
    # scaling and squaring: 10 squarings, degree-8 Taylor core
    squarings = 10
    t = x / float(2 ** squarings)
    acc = np.eye(x.shape[0])
    term = np.eye(x.shape[0])
    for k in range(1, 9):
        term = term @ t / k
        acc = acc + term
    for _ in range(squarings):
        acc = acc @ acc
    return acc


def random_lie_transform(sig: Signature, seed: int, scale: float = 0.5) -> LieTransform:
    """exp of a seeded Ibar-skew generator with Frobenius norm = scale.

    Deterministic: identical seeds give bitwise-identical matrices.
    """
    if scale < 0:
        raise ValueError("scale must be >= 0")
    p, q = sig.plus_count, sig.minus_count
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, (p, p))
    d = rng.uniform(-1.0, 1.0, (q, q))
    b = rng.uniform(-1.0, 1.0, (p, q))
    x = np.zeros((p + q, p + q))
    x[:p, :p] = a - a.T
    x[p:, p:] = d - d.T
    x[:p, p:] = b
    x[p:, :p] = b.T
    norm = float(np.linalg.norm(x))
    if norm > 0 and scale > 0:
        x *= scale / norm
    else:
        x[:] = 0.0
    return LieTransform(_expm(x), sig)


def compose(a: LieTransform, b: LieTransform) -> LieTransform:
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.signature} vs {b.signature}")
    return LieTransform(a.matrix @ b.matrix, a.signature)


def invert(a: LieTransform) -> LieTransform:
    # group inverse Ibar L^T Ibar, exact up to roundoff
    ibar = a.signature.matrix()
    return LieTransform(ibar @ a.matrix.T @ ibar, a.signature)
