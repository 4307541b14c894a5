"""Frames, Lorentz boosts and the reflected-point constructions.

Two translated circles (or hyperbolas) in the plane meet in at most two
points.  For a circle pair with radii ``r1 <= r2`` and a point ``x`` the
intersection of ``r1 S^1`` with ``x - r2 S^1`` is ``{P1+, P1-}``, and
``P2-+ = x - P1+-``.  Labels follow ``v_x``, the counter-clockwise quarter
turn of ``x/|x|``: ``P1+ . v_x >= 0`` and ``P2+ . v_x >= 0``.

Hyperbola points are labelled after boosting ``x`` to the time axis, where
``Q1+- = (+-w, phi_m1(w))`` and ``Q2+- = (+-w, phi_m2(w))``, so that
``Q1+ + Q2- = Q1- + Q2+ = x``.  Rapidity order is boost invariant, so the
labels mean the same thing in every frame: ``Q1+`` and ``Q2+`` are the points
of larger rapidity on their hyperbolas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateContinuumError, DomainError, EmptyIntersectionError,
                     NonTimelikeError, WrongSheetError)

__all__ = [
    "Frame",
    "CirclePair",
    "HyperbolaPair",
    "ReflectedPoints",
    "circle_points",
    "hyperbola_points",
    "lorentz_gamma",
    "lorentz_boost",
    "canonical_direction",
    "reflect_across_line",
    "hyperbola_reflect",
    "rotation_2d",
    "TANGENT_RTOL",
]

TANGENT_RTOL = 1e-9


def canonical_direction(omega) -> np.ndarray:
    """Normalise ``omega`` and flip it into the upper hemisphere.

    The upper hemisphere has last nonzero coordinate positive.
    """
    w = np.asarray(omega, dtype=float).ravel()
    nrm = np.linalg.norm(w)
    if not nrm > 0:
        raise DomainError("direction must be nonzero")
    w = w / nrm
    nz = np.nonzero(np.abs(w) > 1e-15)[0]
    if w[nz[-1]] < 0:
        w = -w
    return w


def _complete_basis(vectors: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of ``vectors``."""
    vectors = np.atleast_2d(vectors)
    dim = vectors.shape[1]
    q, _ = np.linalg.qr(np.vstack([vectors, np.eye(dim)]).T)
    comp = q[:, vectors.shape[0]:dim].T
    # deterministic signs: largest entry of each row positive
    for i, row in enumerate(comp):
        j = np.argmax(np.abs(row))
        if row[j] < 0:
            comp[i] = -row
    return comp


@dataclass(frozen=True)
class Frame:
    """An orthogonal splitting ``R^dim = pi + pi_perp``.

    ``basis_pi`` and ``basis_perp`` hold orthonormal rows.  In grid
    computations the frame coordinates are ordered ``(pi..., perp...)``.

    Hyperboloid and paraboloid usage (:meth:`from_direction`): ``pi`` is the
    hyperplane ``<omega>^perp`` and ``basis_perp = [omega]``.  Sphere usage
    (:meth:`from_line`, ``n = 3``): ``pi`` is the line ``<omega>`` and
    ``basis_perp`` spans the 2-plane orthogonal to it.
    """

    basis_pi: np.ndarray
    basis_perp: np.ndarray

    def __post_init__(self):
        bp = np.atleast_2d(np.asarray(self.basis_pi, dtype=float)) if np.size(self.basis_pi) else None
        bq = np.atleast_2d(np.asarray(self.basis_perp, dtype=float))
        dim = bq.shape[1]
        bp = np.zeros((0, dim)) if bp is None else bp
        full = np.vstack([bp, bq])
        if full.shape != (dim, dim):
            raise DomainError("frame bases must together form a square basis")
        if np.max(np.abs(full @ full.T - np.eye(dim))) > 1e-12:
            raise DomainError("frame bases are not orthonormal")
        object.__setattr__(self, "basis_pi", bp)
        object.__setattr__(self, "basis_perp", bq)

    @property
    def dim(self) -> int:
        return self.basis_perp.shape[1]

    @property
    def k(self) -> int:
        """Dimension of ``pi``."""
        return self.basis_pi.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Rows ``(basis_pi..., basis_perp...)``; maps world to frame coordinates."""
        return np.vstack([self.basis_pi, self.basis_perp])

    @property
    def omega(self) -> np.ndarray:
        """The distinguished unit direction of the frame."""
        if self.basis_perp.shape[0] == 1:
            return self.basis_perp[0]
        if self.basis_pi.shape[0] == 1:
            return self.basis_pi[0]
        raise DomainError("frame has no single distinguished direction")

    @classmethod
    def from_direction(cls, omega) -> "Frame":
        w = canonical_direction(omega)
        return cls(_complete_basis(w[None, :]), w[None, :])

    @classmethod
    def from_line(cls, omega) -> "Frame":
        w = canonical_direction(omega)
        return cls(w[None, :], _complete_basis(w[None, :]))

    @classmethod
    def from_bases(cls, basis_pi, basis_perp) -> "Frame":
        return cls(np.asarray(basis_pi, dtype=float), np.asarray(basis_perp, dtype=float))

    def decompose(self, x) -> tuple:
        """Frame coordinates ``(x^pi, x^perp)`` of points ``x`` (last axis)."""
        x = np.asarray(x, dtype=float)
        return x @ self.basis_pi.T, x @ self.basis_perp.T

    def components(self, x) -> tuple:
        """The orthogonal projections of ``x`` onto ``pi`` and ``pi_perp`` as vectors."""
        a, b = self.decompose(x)
        return a @ self.basis_pi, b @ self.basis_perp

    def recompose(self, coord_pi, coord_perp) -> np.ndarray:
        return np.asarray(coord_pi) @ self.basis_pi + np.asarray(coord_perp) @ self.basis_perp

    def rotated(self, rot) -> "Frame":
        rot = np.asarray(rot, dtype=float)
        return Frame(self.basis_pi @ rot.T, self.basis_perp @ rot.T)


@dataclass(frozen=True)
class CirclePair:
    r1: float
    r2: float

    def __post_init__(self):
        if not (0 < self.r1 <= self.r2):
            raise DomainError(f"need 0 < r1 <= r2, got r1={self.r1}, r2={self.r2}")


@dataclass(frozen=True)
class HyperbolaPair:
    m1: float
    m2: float

    def __post_init__(self):
        if not (0 < self.m1 <= self.m2):
            raise DomainError(f"need 0 < m1 <= m2, got m1={self.m1}, m2={self.m2}")


@dataclass(frozen=True)
class ReflectedPoints:
    """The two intersection pairs; ``p1_plus + p2_minus = p1_minus + p2_plus = x``.

    For hyperbolas the same fields hold ``Q1+, Q1-, Q2+, Q2-``; the
    ``q*`` properties are aliases.
    """

    p1_plus: np.ndarray
    p1_minus: np.ndarray
    p2_plus: np.ndarray
    p2_minus: np.ndarray
    tangent: bool

    q1_plus = property(lambda self: self.p1_plus)
    q1_minus = property(lambda self: self.p1_minus)
    q2_plus = property(lambda self: self.p2_plus)
    q2_minus = property(lambda self: self.p2_minus)


def rotation_2d(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def circle_points(pair: CirclePair, x) -> ReflectedPoints:
    x = np.asarray(x, dtype=float)
    r1, r2 = float(pair.r1), float(pair.r2)
    rho = float(np.hypot(x[0], x[1]))
    scale = r1 + r2
    if rho == 0.0:
        if r1 == r2:
            raise DegenerateContinuumError("x = 0 with equal radii: the circles coincide")
        raise EmptyIntersectionError("x = 0 with distinct radii: concentric circles do not meet")
    lo, hi = r2 - r1, r2 + r1
    tol = TANGENT_RTOL * scale
    if rho < lo - tol or rho > hi + tol:
        raise EmptyIntersectionError(f"|x| = {rho:g} outside [{lo:g}, {hi:g}]")
    tangent = abs(rho - lo) <= tol or abs(rho - hi) <= tol
    xhat = x / rho
    vx = np.array([-xhat[1], xhat[0]])
    # P1 = r1 (u xhat +- sqrt(1-u^2) v_x) with u the cosine of the angle to x
    u = (rho * rho + r1 * r1 - r2 * r2) / (2.0 * r1 * rho)
    u = min(1.0, max(-1.0, u))
    v = 0.0 if tangent else math.sqrt(max(0.0, 1.0 - u * u))
    p1p = r1 * (u * xhat + v * vx)
    p1m = r1 * (u * xhat - v * vx)
    return ReflectedPoints(p1p, p1m, x - p1m, x - p1p, tangent)


def lorentz_gamma(p) -> float:
    """Rapidity ``ln sqrt((tau + xi)/(tau - xi))`` of a timelike ``(xi, tau)``."""
    xi, tau = float(p[0]), float(p[1])
    if not tau > abs(xi):
        raise NonTimelikeError(f"({xi:g}, {tau:g}) is not strictly timelike")
    return 0.5 * math.log((tau + xi) / (tau - xi))


def lorentz_boost(gamma, p) -> np.ndarray:
    """``L_gamma p = (cosh g p1 - sinh g p2, -sinh g p1 + cosh g p2)``; vectorised over ``p[..., :]``."""
    p = np.asarray(p, dtype=float)
    ch, sh = np.cosh(gamma), np.sinh(gamma)
    return np.stack([ch * p[..., 0] - sh * p[..., 1], -sh * p[..., 0] + ch * p[..., 1]], axis=-1)


def _omega1(v: float, m1: float, m2: float) -> float:
    disc = v ** 4 - 2.0 * v * v * (m1 * m1 + m2 * m2) + (m1 * m1 - m2 * m2) ** 2
    return math.sqrt(max(0.0, disc)) / (2.0 * v)


def hyperbola_points(pair: HyperbolaPair, x) -> ReflectedPoints:
    x = np.asarray(x, dtype=float)
    m1, m2 = float(pair.m1), float(pair.m2)
    if not x[1] > 0:
        raise WrongSheetError("x must lie in the upper half plane")
    q = x[1] * x[1] - x[0] * x[0]
    thr = m1 + m2
    tol = TANGENT_RTOL * thr
    if q <= 0 or math.sqrt(q) < thr - tol:
        raise EmptyIntersectionError("x lies below the sum of the two hyperbolas")
    r_p = math.sqrt(q)
    tangent = abs(r_p - thr) <= tol
    gam = lorentz_gamma(x)
    w = 0.0 if tangent else _omega1(r_p, m1, m2)
    q1p = np.array([w, math.hypot(m1, w)])
    q1m = np.array([-w, math.hypot(m1, w)])
    q2p = np.array([w, math.hypot(m2, w)])
    q2m = np.array([-w, math.hypot(m2, w)])
    back = [lorentz_boost(-gam, q_) for q_ in (q1p, q1m, q2p, q2m)]
    return ReflectedPoints(*back, tangent)


def reflect_across_line(p, direction) -> np.ndarray:
    """Mirror planar points ``p`` across the lines through 0 spanned by ``direction``.

    Vectorised over the leading axes; ``direction`` need not be normalised.
    """
    p = np.asarray(p, dtype=float)
    d = np.asarray(direction, dtype=float)
    nrm2 = np.sum(d * d, axis=-1, keepdims=True)
    proj = np.sum(p * d, axis=-1, keepdims=True) / nrm2
    return 2.0 * proj * d - p


def hyperbola_reflect(a, b, ma, mb):
    """Reflected coordinates for points ``(a, phi_ma(a))`` and ``(b, phi_mb(b))``.

    Each point is boosted so that the sum lands on the time axis, mirrored in
    that axis and boosted back.  In rapidities ``g_a, g_b`` and ``g_P`` of the
    sum this is ``g -> 2 g_P - g``.  Vectorised.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ea = np.hypot(ma, a)
    eb = np.hypot(mb, b)
    p1 = a + b
    p2 = ea + eb
    g_p = 0.5 * np.log((p2 + p1) / (p2 - p1))
    g_a = np.arcsinh(a / ma)
    g_b = np.arcsinh(b / mb)
    return ma * np.sinh(2.0 * g_p - g_a), mb * np.sinh(2.0 * g_p - g_b)
