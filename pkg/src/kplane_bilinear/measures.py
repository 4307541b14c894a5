"""Convolutions of weighted measures on circles and hyperbolas.

The circle measure is ``d theta`` pushed forward by ``theta -> r(cos, sin)``
and the hyperbola measure is ``d xi / phi_m(xi)``, i.e. ``d gamma`` in the
hyperbolic angle ``(m sinh gamma, m cosh gamma)``.  The closed forms evaluate
the densities at the reflected points of :mod:`kplane_bilinear.geometry`.
:func:`conv_oracle` is an independent brute-force check: it replaces the
delta in ``int int g1(P) g2(Q) delta(x - P - Q)`` by a normalised Gaussian of
width sigma and sums over a tensor quadrature of the two curves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .conventions import QuadKind, QuadratureRule1D
from .errors import ConvergenceError, DegenerateContinuumError, DomainError, WrongSheetError
from .geometry import CirclePair, HyperbolaPair, circle_points, hyperbola_points, lorentz_boost

__all__ = [
    "CircleDensity",
    "HyperbolaDensity",
    "ConvStatus",
    "ConvValue",
    "circle_conv_closed",
    "hyperbola_conv_closed",
    "conv_oracle",
    "GUARD_RTOL",
    "polynomial_density",
    "seeded_configurations",
    "lemma_study",
]

GUARD_RTOL = 1e-6
_CUT = 8.5  # mollifier cut-off in units of sigma; exp(-36) is below double precision


@dataclass(frozen=True)
class CircleDensity:
    radius: float
    density: Callable = lambda p: np.ones(np.shape(p)[:-1], dtype=complex)

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("radius must be positive")


@dataclass(frozen=True)
class HyperbolaDensity:
    mass: float
    density: Callable = lambda p: np.ones(np.shape(p)[:-1], dtype=complex)

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError("mass must be positive")


class ConvStatus(str, enum.Enum):
    FINITE = "finite"
    EMPTY_SUPPORT = "empty_support"
    TANGENT_DIVERGENT = "tangent_divergent"


@dataclass(frozen=True)
class ConvValue:
    value: complex | None
    status: ConvStatus

    @property
    def finite(self) -> bool:
        return self.status is ConvStatus.FINITE


_EMPTY = ConvValue(0j, ConvStatus.EMPTY_SUPPORT)
_TANGENT = ConvValue(None, ConvStatus.TANGENT_DIVERGENT)


def _eval(g, p) -> complex:
    return complex(np.asarray(g(np.asarray(p, dtype=float))))


def circle_conv_closed(a: CircleDensity, b: CircleDensity, x) -> ConvValue:
    if a.radius > b.radius:
        a, b = b, a
    r1, r2 = a.radius, b.radius
    x = np.asarray(x, dtype=float)
    rho = float(np.hypot(x[0], x[1]))
    if rho == 0.0:
        if r1 == r2:
            raise DegenerateContinuumError("x = 0 with equal radii")
        return _EMPTY
    lo, hi = r2 - r1, r2 + r1
    tol = GUARD_RTOL * (r1 + r2)
    if rho < lo - tol or rho > hi + tol:
        return _EMPTY
    if abs(rho - lo) <= tol or abs(rho - hi) <= tol:
        return _TANGENT
    pts = circle_points(CirclePair(r1, r2), x)
    g1, g2 = a.density, b.density
    num = 2 * _eval(g1, pts.p1_plus) * _eval(g2, pts.p2_minus) \
        + 2 * _eval(g1, pts.p1_minus) * _eval(g2, pts.p2_plus)
    den = math.sqrt(-(rho * rho - hi * hi) * (rho * rho - lo * lo))
    return ConvValue(num / den, ConvStatus.FINITE)


def hyperbola_conv_closed(a: HyperbolaDensity, b: HyperbolaDensity, x) -> ConvValue:
    if a.mass > b.mass:
        a, b = b, a
    m1, m2 = a.mass, b.mass
    x = np.asarray(x, dtype=float)
    if not x[1] > 0:
        raise WrongSheetError("x must have positive time component")
    q = x[1] * x[1] - x[0] * x[0]
    thr = m1 + m2
    tol = GUARD_RTOL * thr
    if q <= 0 or math.sqrt(q) < thr - tol:
        return _EMPTY
    if abs(math.sqrt(q) - thr) <= tol:
        return _TANGENT
    pts = hyperbola_points(HyperbolaPair(m1, m2), x)
    g1, g2 = a.density, b.density
    num = 2 * _eval(g1, pts.q1_plus) * _eval(g2, pts.q2_minus) \
        + 2 * _eval(g1, pts.q1_minus) * _eval(g2, pts.q2_plus)
    den = math.sqrt(q * q - 2 * q * (m1 * m1 + m2 * m2) + (m1 * m1 - m2 * m2) ** 2)
    return ConvValue(num / den, ConvStatus.FINITE)


def _mollifier(d2: np.ndarray, sigma: float) -> np.ndarray:
    return np.exp(-0.5 * d2 / (sigma * sigma)) / (2.0 * math.pi * sigma * sigma)


def _circle_sum(r1, r2, g1, g2, x, sigma, rule: QuadratureRule1D) -> complex:
    th, w = rule.nodes, rule.weights
    circ = np.stack([np.cos(th), np.sin(th)], axis=-1)
    A, B = r1 * circ, r2 * circ
    cut = _CUT * sigma
    d = x[None, :] - A
    keep = np.abs(np.hypot(d[:, 0], d[:, 1]) - r2) < cut
    if not keep.any():
        return 0j
    Ak, wa = A[keep], w[keep]
    ga = np.asarray(g1(Ak), dtype=complex)
    gb = np.asarray(g2(B), dtype=complex)
    total = 0j
    for lo in range(0, Ak.shape[0], 256):
        dd = x[None, None, :] - Ak[lo:lo + 256, None, :] - B[None, :, :]
        k = _mollifier(np.sum(dd * dd, axis=-1), sigma)
        total += np.sum((wa[lo:lo + 256] * ga[lo:lo + 256])[:, None] * k * (w * gb)[None, :])
    return total


def _hyperbola_rule(m: float, x2: float, sigma: float, truncation: float) -> QuadratureRule1D:
    """Composite Gauss–Legendre rule in the hyperbolic angle on ``[-G, G]``.

    Every point ``P`` with ``P + Q = x`` has ``m cosh(gamma) <= x2``, so the
    panels are graded to the local arc speed only inside that window; outside
    it coarse panels keep the rule defined up to the truncation.
    """
    order = 8
    g_in = min(truncation, math.acosh(max(1.0, (x2 + _CUT * sigma) / m)) + 0.05)
    edges = [0.0]
    while edges[-1] < g_in:
        g = edges[-1]
        width = min(0.05, 4.0 * sigma / (m * math.cosh(g + 0.05)))
        edges.append(min(g_in, g + width))
    g = edges[-1]
    while g < truncation:
        g = min(truncation, g + 0.5)
        edges.append(g)
    edges = np.asarray(edges)
    edges = np.concatenate([-edges[:0:-1], edges])
    xg, wg = np.polynomial.legendre.leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return QuadratureRule1D(nodes, weights, QuadKind.GAUSS_LEGENDRE)


def _hyperbola_sum(m1, m2, g1, g2, x, sigma, rule1, rule2) -> complex:
    a, wa = rule1.nodes, rule1.weights
    b, wb = rule2.nodes, rule2.weights
    A = np.stack([m1 * np.sinh(a), m1 * np.cosh(a)], axis=-1)
    B = np.stack([m2 * np.sinh(b), m2 * np.cosh(b)], axis=-1)
    cut = _CUT * sigma
    d = x[None, :] - A
    # the hyperbola is a 1-Lipschitz graph, so the vertical gap bounds distance
    keep = np.abs(d[:, 1] - np.hypot(m2, d[:, 0])) < math.sqrt(2.0) * cut
    if not keep.any():
        return 0j
    idx = np.nonzero(keep)[0]
    lo = np.searchsorted(B[:, 0], d[idx, 0] - cut)
    hi = np.searchsorted(B[:, 0], d[idx, 0] + cut)
    counts = hi - lo
    ii = np.repeat(idx, counts)
    starts = np.repeat(lo - np.cumsum(counts) + counts, counts)
    jj = np.arange(counts.sum()) + starts
    dd = x[None, :] - A[ii] - B[jj]
    k = _mollifier(np.sum(dd * dd, axis=-1), sigma)
    ga = np.asarray(g1(A[ii]), dtype=complex)
    gb = np.asarray(g2(B[jj]), dtype=complex)
    return complex(np.sum(wa[ii] * wb[jj] * ga * gb * k))


def conv_oracle(surface_kind: str, params, g1, g2, x, mollifier_width: float,
                rule: QuadratureRule1D | None = None, *, truncation: float = 8.0,
                check_truncation: bool = True, rtol: float = 1e-3) -> complex:
    """Mollified brute-force value of ``(g1 dmu1 * g2 dmu2)(x)``.

    ``surface_kind`` is ``"circle"`` (``params = (r1, r2)``) or
    ``"hyperbola"`` (``params = (m1, m2)``).  ``rule`` is used for both
    curves when given: periodic trapezoid in the angle on ``[0, 2 pi)`` or
    Gauss–Legendre in the hyperbolic angle.  Otherwise rules are chosen from
    ``sigma`` and ``x`` so that the mollifier is resolved; for hyperbolas the
    value is then recomputed with the truncation doubled and a change above
    ``rtol`` raises ConvergenceError.
    """
    sigma = float(mollifier_width)
    if not sigma > 0:
        raise DomainError("mollifier width must be positive")
    x = np.asarray(x, dtype=float)
    p1, p2 = float(params[0]), float(params[1])
    if surface_kind == "circle":
        if rule is None:
            n = max(2048, 1 << math.ceil(math.log2(3 * math.pi * max(p1, p2) / sigma)))
            rule = QuadratureRule1D.periodic_trapezoid(n)
        return _circle_sum(p1, p2, g1, g2, x, sigma, rule)
    if surface_kind == "hyperbola":
        if rule is not None:
            return _hyperbola_sum(p1, p2, g1, g2, x, sigma, rule, rule)
        val = _hyperbola_sum(p1, p2, g1, g2, x, sigma,
                             _hyperbola_rule(p1, x[1], sigma, truncation),
                             _hyperbola_rule(p2, x[1], sigma, truncation))
        if check_truncation:
            val2 = _hyperbola_sum(p1, p2, g1, g2, x, sigma,
                                  _hyperbola_rule(p1, x[1], sigma, 2 * truncation),
                                  _hyperbola_rule(p2, x[1], sigma, 2 * truncation))
            scale = max(abs(val2), 1e-300)
            if abs(val2 - val) > rtol * scale:
                raise ConvergenceError(
                    f"oracle changed by {abs(val2 - val) / scale:.2e} when truncation doubled")
            val = val2
        return val
    raise DomainError(f"unknown surface kind {surface_kind!r}")


def polynomial_density(rng: np.random.Generator, degree: int = 2) -> Callable:
    """``1 + sum c_ij p0^i p1^j`` over ``1 <= i + j <= degree`` with small complex coefficients."""
    terms = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i) if i + j > 0]
    coef = [0.3 * (rng.normal() + 1j * rng.normal()) for _ in terms]

    def g(p):
        p = np.asarray(p, dtype=float)
        out = np.ones(p.shape[:-1], dtype=complex)
        for c, (i, j) in zip(coef, terms):
            out = out + c * p[..., 0] ** i * p[..., 1] ** j
        return out

    return g


def seeded_configurations(surface_kind: str, seed: int = 0, count: int = 20) -> list:
    """Non-tangent test cases ``(params, g1, g2, points)`` drawn from one seed.

    Circle points have ``|x|`` in the middle 70% of ``(r2 - r1, r1 + r2)``.
    Hyperbola points are ``(0, s)`` with ``s`` in ``(1.2, 2.5) (m1 + m2)``
    plus that point boosted by a rapidity in ``+-(0.3, 1.2)``.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a, b = np.sort(rng.uniform(0.5, 2.0, size=2))
        g1, g2 = polynomial_density(rng), polynomial_density(rng)
        if surface_kind == "circle":
            lo, hi = b - a, a + b
            rho = lo + (hi - lo) * rng.uniform(0.15, 0.85)
            ang = rng.uniform(0.0, 2 * math.pi)
            points = [np.array([rho * math.cos(ang), rho * math.sin(ang)])]
        elif surface_kind == "hyperbola":
            s = (a + b) * rng.uniform(1.2, 2.5)
            gam = rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.2)
            x0 = np.array([0.0, s])
            points = [x0, lorentz_boost(gam, x0)]
        else:
            raise DomainError(f"unknown surface kind {surface_kind!r}")
        out.append(((float(a), float(b)), g1, g2, points))
    return out


def lemma_study(surface_kind: str, sigma: float, seed: int = 0, count: int = 20) -> dict:
    """Largest relative gap between the closed form and the oracle at width ``sigma``."""
    worst, rows = 0.0, []
    for params, g1, g2, points in seeded_configurations(surface_kind, seed, count):
        if surface_kind == "circle":
            c1, c2 = CircleDensity(params[0], g1), CircleDensity(params[1], g2)
            closed_fn = circle_conv_closed
        else:
            c1, c2 = HyperbolaDensity(params[0], g1), HyperbolaDensity(params[1], g2)
            closed_fn = hyperbola_conv_closed
        for x in points:
            closed = closed_fn(c1, c2, x)
            if not closed.finite:
                raise DomainError("seeded configuration is not in the open support")
            approx = conv_oracle(surface_kind, params, g1, g2, x, sigma)
            rel = abs(approx - closed.value) / max(abs(closed.value), 1e-300)
            worst = max(worst, rel)
            rows.append({"params": list(params), "x": list(map(float, x)), "closed": closed.value,
                         "oracle": approx, "rel_err": rel})
    return {"surface": surface_kind, "sigma": sigma, "seed": seed, "max_rel_err": worst, "cases": rows}
