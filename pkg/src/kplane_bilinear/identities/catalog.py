"""Seeded test densities used by the verifiers, the CLI and the tests."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import eval_hermite, eval_legendre

from ..transforms import HyperboloidFunctionRd, ParaboloidFunctionRd, SphereDensity

__all__ = [
    "sphere_constant",
    "sphere_zonal",
    "sphere_zero",
    "seeded_zonal",
    "truncated_gaussian",
    "hermite_gaussian",
    "gaussian_u0_data",
    "zero_function",
    "hyperboloid_gaussian",
    "paraboloid_gaussian",
]

DEFAULT_ZONAL = (1.0, 0.5, 0.25)


def sphere_constant(radius: float = 1.0, value: complex = 1.0) -> SphereDensity:
    return SphereDensity(radius, lambda p: np.full(np.shape(p)[:-1], value, dtype=complex))


def sphere_zero(radius: float = 1.0) -> SphereDensity:
    return sphere_constant(radius, 0.0)


def sphere_zonal(radius: float = 1.0, coeffs=DEFAULT_ZONAL, axis=(0.0, 0.0, 1.0)) -> SphereDensity:
    """``sum_l c_l P_l(xi . axis / r)``, Legendre polynomials about ``axis``."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    coeffs = tuple(coeffs)

    def g(p):
        u = np.asarray(p) @ axis / radius
        return sum(c * eval_legendre(l, u) for l, c in enumerate(coeffs)) + 0j

    return SphereDensity(radius, g)


def seeded_zonal(seed: int = 0, degree: int = 3, radius: float = 1.0, axis=(0.0, 0.0, 1.0)) -> SphereDensity:
    """Zonal mixture with ``c_0 = 1`` and complex ``c_l`` of size about ``0.5^l`` drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    coeffs = [1.0 + 0j] + [0.5 ** l * (rng.normal() + 1j * rng.normal()) / math.sqrt(2) for l in range(1, degree + 1)]
    return sphere_zonal(radius, coeffs, axis)


def truncated_gaussian(d: int = 2, scale: float = 1.0, radius: float | None = None,
                       center=None, amplitude: complex = 1.0):
    """``amplitude * exp(-|xi - center|^2 / scale^2)`` cut off at ``radius``.

    The default radius puts the cut where the Gaussian is ``exp(-30)``.
    """
    R = scale * math.sqrt(30.0) if radius is None else float(radius)
    c = np.zeros(d) if center is None else np.asarray(center, dtype=float)

    def f(xi):
        xi = np.asarray(xi, dtype=float)
        r2 = np.sum((xi - c) ** 2, axis=-1)
        return np.where(np.sum(xi * xi, axis=-1) <= R * R, amplitude * np.exp(-r2 / scale ** 2), 0.0) + 0j

    f.support_radius = R
    return f


def hermite_gaussian(d: int = 2, seed: int = 0, degree: int = 2, scale: float = 1.0,
                     radius: float | None = None):
    """A truncated Gaussian times a seeded complex combination of Hermite products.

    Coefficients of ``H_j(xi_1) H_k(xi_2)`` with ``j + k <= degree`` are drawn
    from a standard complex normal scaled by ``0.3^(j+k)``.
    """
    rng = np.random.default_rng(seed)
    base = truncated_gaussian(d, scale, radius)
    R = base.support_radius
    if d == 1:
        terms = [(j,) for j in range(degree + 1)]
    else:
        terms = [(j, k) for j in range(degree + 1) for k in range(degree + 1 - j)]
    coef = [(rng.normal() + 1j * rng.normal()) * 0.3 ** sum(t) for t in terms]
    coef[0] = 1.0 + 0j

    def f(xi):
        xi = np.asarray(xi, dtype=float)
        poly = 0j
        for c, t in zip(coef, terms):
            term = c
            for axis, deg in enumerate(t):
                term = term * eval_hermite(deg, xi[..., axis] / scale)
            poly = poly + term
        return base(xi) * poly

    f.support_radius = R
    return f


def zero_function(d: int = 2):
    def f(xi):
        return np.zeros(np.shape(xi)[:-1], dtype=complex)

    f.support_radius = 1.0
    return f


def hyperboloid_gaussian(mass: float = 1.0, d: int = 2, scale: float = 1.0) -> HyperboloidFunctionRd:
    f = truncated_gaussian(d, scale)
    return HyperboloidFunctionRd(mass, f, d, f.support_radius)


def paraboloid_gaussian(d: int = 2, scale: float = 1.0) -> ParaboloidFunctionRd:
    f = truncated_gaussian(d, scale)
    return ParaboloidFunctionRd(f, d, f.support_radius)


def gaussian_u0_data(d: int = 2) -> ParaboloidFunctionRd:
    """Extension density ``u0^check`` for ``u0(x) = exp(-|x|^2)``.

    ``u0^(xi) = pi^{d/2} exp(-|xi|^2/4)``, so ``u0^check(xi) = (2 pi)^{-d} u0^(-xi)``
    and ``u = E u0^check`` solves the free Schrodinger equation with data ``u0``.
    """
    amp = (2 * math.pi) ** (-d) * math.pi ** (d / 2)
    f = truncated_gaussian(d, 2.0, amplitude=amp)
    return ParaboloidFunctionRd(f, d, f.support_radius)
