"""Closed-form kernels of the bilinear identities and their averages.

Sphere kernels use a frame whose ``pi`` is a line (``Frame.from_line``) and
whose ``pi_perp`` is the plane carrying the reflected points.  Hyperboloid
kernels use ``Frame.from_direction(omega)``: ``xi^omega`` is the coordinate
along ``omega`` and ``m_xi = sqrt(m^2 + |xi^pi|^2)`` is the effective mass of
the hyperbola through ``xi`` in the ``(omega, time)`` plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conventions import QuadratureRule1D
from .errors import DomainError, SingularKernelError
from .geometry import Frame, _complete_basis, hyperbola_reflect, reflect_across_line

__all__ = [
    "KernelInput",
    "kernel_sphere",
    "kernel_sphere_wedge_equivalence",
    "kernel_hyperboloid",
    "kernel_hyperboloid_reflected_equivalence",
    "kernel_hyperboloid_angle",
    "kernel_sphere_averaged",
    "kernel_hyperboloid_averaged",
    "angular_average_abs_inner",
    "angular_average_abs_inner_numeric",
    "hyperboloid_form_study",
    "sphere_form_study",
]

_SURFACES = ("sphere", "hyperboloid", "paraboloid")
_NUDGE = 1e-6


@dataclass(frozen=True)
class KernelInput:
    surface: str
    frame: Frame
    xi: np.ndarray
    zeta: np.ndarray
    param: float = 1.0

    def __post_init__(self):
        if self.surface not in _SURFACES:
            raise DomainError(f"unknown surface {self.surface!r}")
        xi = np.asarray(self.xi, dtype=float)
        zeta = np.asarray(self.zeta, dtype=float)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "zeta", zeta)
        if xi.shape != (self.frame.dim,) or zeta.shape != xi.shape:
            raise DomainError("points must be vectors of the frame dimension")
        if not self.param > 0:
            raise DomainError("radius or mass must be positive")
        if self.surface == "sphere":
            for p in (xi, zeta):
                if abs(np.linalg.norm(p) - self.param) > 1e-10 * max(1.0, self.param):
                    raise DomainError("point is not on the sphere of the given radius")

    def perp(self) -> tuple:
        """``xi^perp, zeta^perp`` in frame coordinates of ``pi_perp``."""
        return self.frame.decompose(self.xi)[1], self.frame.decompose(self.zeta)[1]

    def phi(self, p) -> float:
        return math.sqrt(self.param ** 2 + float(p @ p))


def _require(inp: KernelInput, surface: str) -> None:
    if inp.surface != surface:
        raise DomainError(f"expected a {surface} input, got {inp.surface}")


def kernel_sphere(inp: KernelInput) -> float:
    """``2 / |xi^perp + zeta^perp|``."""
    _require(inp, "sphere")
    a, b = inp.perp()
    s = float(np.linalg.norm(a + b))
    if s <= 1e-14 * inp.param:
        raise SingularKernelError("xi^perp + zeta^perp = 0")
    return 2.0 / s


def _wedge_form(a: np.ndarray, b: np.ndarray) -> float:
    x = a + b
    at = reflect_across_line(a, x)
    bt = reflect_across_line(b, x)
    # (r_a r_b)^2 - (a.b)^2 by Lagrange's identity, free of cancellation
    den = float(a[0] * b[1] - a[1] * b[0]) ** 2
    num = np.linalg.norm(a - at) * np.linalg.norm(b - bt)
    return math.sqrt(num / den)


def kernel_sphere_wedge_equivalence(inp: KernelInput) -> tuple:
    """``(wedge form, 2/|xi^perp + zeta^perp|)``.

    When ``xi^perp`` and ``zeta^perp`` are parallel both numerator and
    denominator of the wedge form vanish; its value is then the mean of the
    two evaluations with ``zeta^perp`` turned by ``+-1e-6`` rad.
    """
    direct = kernel_sphere(inp)
    a, b = inp.perp()
    if a.shape != (2,):
        raise DomainError("the wedge form needs a two-dimensional pi_perp")
    scale = max(np.linalg.norm(a) * np.linalg.norm(b), 1e-300)
    cross = abs(a[0] * b[1] - a[1] * b[0])
    if cross > 1e-7 * scale:
        return _wedge_form(a, b), direct
    if np.linalg.norm(a) == 0 or np.linalg.norm(b) == 0:
        return direct, direct
    vals = []
    for eps in (_NUDGE, -_NUDGE):
        c, s = math.cos(eps), math.sin(eps)
        vals.append(_wedge_form(a, np.array([c * b[0] - s * b[1], s * b[0] + c * b[1]])))
    return 0.5 * (vals[0] + vals[1]), direct


def kernel_hyperboloid(inp: KernelInput) -> float:
    """``2 (phi(xi) + phi(zeta)) / ((phi(xi) + phi(zeta))^2 - ((xi + zeta).omega)^2)``."""
    _require(inp, "hyperboloid")
    w = inp.frame.omega
    e = inp.phi(inp.xi) + inp.phi(inp.zeta)
    p = float((inp.xi + inp.zeta) @ w)
    return 2.0 * e / (e * e - p * p)


def _omega_split(inp: KernelInput) -> tuple:
    w = inp.frame.omega
    a, b = float(inp.xi @ w), float(inp.zeta @ w)
    m = inp.param
    ma = math.sqrt(m * m + float(inp.xi @ inp.xi) - a * a)
    mb = math.sqrt(m * m + float(inp.zeta @ inp.zeta) - b * b)
    return a, b, ma, mb


def _reflected_form(a, b, ma, mb) -> float:
    at, bt = hyperbola_reflect(a, b, ma, mb)
    den = abs(a * math.hypot(mb, b) - b * math.hypot(ma, a))
    return math.sqrt(abs(a - float(at)) * abs(b - float(bt))) / den


def kernel_hyperboloid_angle(inp: KernelInput) -> float:
    """The kernel in hyperbolic angles.

    With rapidities ``g_xi, g_zeta`` of ``(xi^omega, phi)`` on the hyperbolas of
    mass ``m_xi, m_zeta`` and ``g_P`` the rapidity of their sum,
    ``2 cosh(g_P) sqrt(m_xi m_zeta |sinh(g_xi - g_P) sinh(g_zeta - g_P)|)
    / (m_xi m_zeta |sinh(g_xi - g_zeta)|)``.  Equal rapidities make this
    ``0/0``; it is then the mean of two evaluations with ``xi^omega`` shifted by ``+-1e-6``.
    """
    _require(inp, "hyperboloid")
    a, b, ma, mb = _omega_split(inp)
    if abs(math.asinh(a / ma) - math.asinh(b / mb)) > 1e-7:
        return _angle_form(a, b, ma, mb)
    return _nudged(_angle_form, a, b, ma, mb)


def _angle_form(a, b, ma, mb) -> float:
    ga, gb = math.asinh(a / ma), math.asinh(b / mb)
    p1 = a + b
    p2 = math.hypot(ma, a) + math.hypot(mb, b)
    gp = 0.5 * math.log((p2 + p1) / (p2 - p1))
    num = 2.0 * math.cosh(gp) * math.sqrt(ma * mb * abs(math.sinh(ga - gp) * math.sinh(gb - gp)))
    return num / (ma * mb * abs(math.sinh(ga - gb)))


def _nudged(form, a, b, ma, mb) -> float:
    h = _NUDGE * max(1.0, abs(a), abs(b))
    return 0.5 * (form(a + h, b, ma, mb) + form(a - h, b, ma, mb))


def kernel_hyperboloid_reflected_equivalence(inp: KernelInput) -> tuple:
    """``(reflected-point form, compact form, hyperbolic-angle form)``.

    If ``xi^omega`` and ``zeta^omega`` have equal rapidity the reflected
    points coincide with the originals and the first and third forms are
    ``0/0``.  They are then evaluated as the mean of two evaluations with
    ``xi^omega`` shifted by ``+-1e-6``, and the compact form is the value
    of record.
    """
    compact = kernel_hyperboloid(inp)
    a, b, ma, mb = _omega_split(inp)
    ga, gb = math.asinh(a / ma), math.asinh(b / mb)
    if abs(ga - gb) > 1e-7:
        return _reflected_form(a, b, ma, mb), compact, _angle_form(a, b, ma, mb)
    return _nudged(_reflected_form, a, b, ma, mb), compact, _nudged(_angle_form, a, b, ma, mb)


def kernel_sphere_averaged(xi, zeta, samples: int = 4096) -> tuple:
    """Average of ``kernel_sphere`` over lines ``pi`` in ``R^3``, and ``2 pi / |xi + zeta|``.

    The average is ``|G_{1,2}|^{-1} int_{G_{1,3}} K_pi``, with ``|G_{1,2}| = pi``
    and ``G_{1,3}`` the hemisphere of line directions.  The direction
    integral is taken over the whole sphere (and halved) in polar
    coordinates about ``(xi + zeta)/|xi + zeta|``, so the Jacobian cancels
    the ``1/sin`` singularity of the kernel.  ``samples`` is split evenly
    between a polar Gauss–Legendre and an azimuthal trapezoid rule.
    Returns ``(numeric, analytic)``.
    """
    xi = np.asarray(xi, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    if xi.shape != (3,) or zeta.shape != (3,):
        raise DomainError("points must lie in R^3")
    r = float(np.linalg.norm(xi))
    x = xi + zeta
    nx = float(np.linalg.norm(x))
    if nx <= 1e-14 * max(r, 1.0):
        raise SingularKernelError("antipodal points")
    n = max(2, int(math.isqrt(max(4, samples))))
    polar = QuadratureRule1D.gauss_legendre(n, 0.0, math.pi)
    azim = QuadratureRule1D.periodic_trapezoid(n)
    basis = _complete_basis((x / nx)[None, :])
    th = polar.nodes[:, None, None]
    ph = azim.nodes[None, :, None]
    u = np.cos(th) * (x / nx) + np.sin(th) * (np.cos(ph) * basis[0] + np.sin(ph) * basis[1])
    # kernel_sphere for the line frame of u: the pi_perp part of xi + zeta
    perp = x - (u @ x)[..., None] * u
    vals = np.sin(th[..., 0]) * 2.0 / np.linalg.norm(perp, axis=-1)
    total = float(polar.weights @ vals @ azim.weights)
    numeric = 0.5 * total / math.pi
    return numeric, 2.0 * math.pi / nx


def kernel_hyperboloid_averaged(xi, zeta, m: float, samples: int = 256) -> float:
    """``1/2 int_{S^{d-1}} K_omega(xi, zeta) dsigma(omega)``, unnormalised ``dsigma``.

    ``d = 2`` uses equi-angular directions, ``d = 3`` a Fibonacci sphere,
    ``d = 1`` the two points ``+-1``.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    d = xi.size
    if d == 1:
        dirs, wts = np.array([[1.0], [-1.0]]), np.ones(2)
    elif d == 2:
        th = 2 * math.pi * np.arange(samples) / samples
        dirs, wts = np.stack([np.cos(th), np.sin(th)], axis=-1), np.full(samples, 2 * math.pi / samples)
    elif d == 3:
        j = np.arange(samples) + 0.5
        z = 1.0 - 2.0 * j / samples
        ph = j * math.pi * (3.0 - math.sqrt(5.0))
        rho = np.sqrt(1.0 - z * z)
        dirs = np.stack([rho * np.cos(ph), rho * np.sin(ph), z], axis=-1)
        wts = np.full(samples, 4 * math.pi / samples)
    else:
        raise DomainError("d must be 1, 2 or 3")
    e = math.sqrt(m * m + float(xi @ xi)) + math.sqrt(m * m + float(zeta @ zeta))
    p = dirs @ (xi + zeta)
    return 0.5 * float(np.sum(wts * 2.0 * e / (e * e - p * p)))


def angular_average_abs_inner(v) -> float:
    """``int_{S^{d-1}} |v . omega| dsigma(omega) = 2 |v| pi^{(d-1)/2} / Gamma((d+1)/2)``."""
    v = np.asarray(v, dtype=float)
    d = v.size
    if d < 2:
        raise DomainError("d must be at least 2")
    return 2.0 * float(np.linalg.norm(v)) * math.pi ** ((d - 1) / 2) / math.gamma((d + 1) / 2)


def angular_average_abs_inner_numeric(v, samples: int = 512) -> float:
    """Quadrature value of :func:`angular_average_abs_inner` for ``d = 2, 3``.

    Polar coordinates about ``v`` reduce the integral to
    ``|S^{d-2}| int_0^pi |v| |cos t| sin^{d-2} t dt``, done by Gauss–Legendre
    on ``[0, pi/2]`` and doubled.
    """
    v = np.asarray(v, dtype=float)
    d = v.size
    if d not in (2, 3):
        raise DomainError("numeric cross-check supports d = 2, 3")
    rule = QuadratureRule1D.gauss_legendre(samples, 0.0, math.pi / 2)
    t = rule.nodes
    ring = 2.0 if d == 2 else 2 * math.pi
    f = np.abs(np.cos(t)) * np.sin(t) ** (d - 2)
    return 2.0 * ring * float(np.linalg.norm(v)) * float(rule.weights @ f)


def _max_rel_spread(values) -> float:
    v = np.asarray(values, dtype=float)
    return float((v.max() - v.min()) / abs(v).max())


def hyperboloid_form_study(seed: int = 0, count: int = 100, mass: float = 1.0, d: int = 2) -> dict:
    """Largest relative spread of the three hyperboloid kernel forms on seeded inputs.

    ``xi, zeta`` are standard normal times 1.5 in ``R^d`` and ``omega`` is
    uniform on the circle (``d = 2``) or sphere.
    """
    rng = np.random.default_rng(seed)
    worst, rows = 0.0, []
    for _ in range(count):
        xi, zeta = 1.5 * rng.normal(size=d), 1.5 * rng.normal(size=d)
        frame = Frame.from_direction(rng.normal(size=d))
        forms = kernel_hyperboloid_reflected_equivalence(KernelInput("hyperboloid", frame, xi, zeta, mass))
        spread = _max_rel_spread(forms)
        worst = max(worst, spread)
        rows.append(spread)
    return {"max_rel_spread": worst, "count": count, "seed": seed, "spreads": rows}


def sphere_form_study(seed: int = 0, count: int = 100, radius: float = 1.0) -> dict:
    """Largest relative gap between the wedge and direct sphere kernels on seeded inputs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        xi, zeta = (radius * v / np.linalg.norm(v) for v in rng.normal(size=(2, 3)))
        frame = Frame.from_line(rng.normal(size=3))
        worst = max(worst, _max_rel_spread(kernel_sphere_wedge_equivalence(
            KernelInput("sphere", frame, xi, zeta, radius))))
    return {"max_rel_spread": worst, "count": count, "seed": seed}
