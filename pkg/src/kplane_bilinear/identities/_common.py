"""Settings, time quadrature and four-wave bookkeeping shared by the verifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..conventions import Field, GridSpec, QuadKind, QuadratureRule1D, apply_radial_multiplier
from ..errors import DomainError


@dataclass(frozen=True)
class Settings:
    """Knobs common to the end-to-end verifiers.

    ``quick`` halves grids and node counts and widens the end-to-end
    tolerance to ``6e-2``.  ``overrides`` passes verifier-specific values
    (grid half-widths, node counts, time horizons) by name.
    """

    tolerance: float | None = None
    quick: bool = False
    guard_band: float = 1e-3
    seed: int = 0
    overrides: dict = field(default_factory=dict)

    def tol(self, default: float = 3e-2) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return 2 * default if self.quick else default

    def get(self, key: str, full, quick=None):
        if key in self.overrides:
            return self.overrides[key]
        return quick if (self.quick and quick is not None) else full


def graded_time_rule(horizon: float, levels: int, order: int = 8) -> QuadratureRule1D:
    """Composite Gauss–Legendre rule on ``[-T, T]`` with panels doubling away from 0.

    Panel edges are ``0, T/2^levels, ..., T/2, T``: dispersive integrands vary
    on the scale of the initial data near ``t = 0`` and slowly later, and the
    last panel ``[T/2, T]`` feeds the tail fit.
    """
    if horizon <= 0 or levels < 1:
        raise DomainError("horizon must be positive and levels at least 1")
    edges = [0.0] + [horizon / 2.0 ** k for k in range(levels, -1, -1)]
    xg, wg = np.polynomial.legendre.leggauss(order)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append(0.5 * (b - a) * xg + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * wg)
    pos = np.concatenate(nodes)
    wpos = np.concatenate(weights)
    return QuadratureRule1D(np.concatenate([-pos[::-1], pos]), np.concatenate([wpos[::-1], wpos]),
                            QuadKind.GAUSS_LEGENDRE)


def time_integral(rule: QuadratureRule1D, values, horizon: float, decay: int) -> tuple:
    """``int_R I(t) dt`` from samples on a graded rule plus fitted tails.

    For ``|t| >= T/2`` on each side ``t^p I(t)`` is fitted by
    ``a0 + a1/t + a2/t^2`` (``p = decay``) and the fit is integrated over
    ``|t| > T`` in closed form.  Returns ``(main, tail)``.
    """
    values = np.asarray(values, dtype=float)
    main = float(rule.weights @ values)
    T, p = float(horizon), int(decay)
    tail = 0.0
    for sign in (1.0, -1.0):
        sel = sign * rule.nodes >= 0.5 * T - 1e-12
        t = np.abs(rule.nodes[sel])
        basis = np.stack([np.ones_like(t), 1.0 / t, 1.0 / t ** 2], axis=-1)
        coef = np.linalg.lstsq(basis, t ** p * values[sel], rcond=None)[0]
        tail += (coef[0] * T ** (1 - p) / (p - 1) + coef[1] * T ** (-p) / p
                 + coef[2] * T ** (-p - 1) / (p + 1))
    return main, float(tail)


def space_grid(half_width: float, spacing: float) -> GridSpec:
    n = 2 * int(math.ceil(half_width / spacing))
    return GridSpec(2, half_width, max(8, n))


def s_derivative_norm(values: np.ndarray, half_width: float, exponent: float) -> float:
    """``int |D_s^exponent g|^2 ds`` for samples of ``g`` on a centred 1-D grid.

    Realised as the multiplier ``|sigma|^exponent``.  For fractional
    exponents the offset axis is zero padded 16 times so that the dual grid
    is fine at the kink of ``|sigma|`` at 0.
    """
    grid = GridSpec(1, half_width, values.shape[0])
    pad = 2 if float(exponent).is_integer() else 16
    out = apply_radial_multiplier(Field(grid, values), exponent, pad=pad, crop=False, edge_tol=None)
    return out.l2_norm_sq()


@dataclass(frozen=True)
class FourWaveWeights:
    """The pair ``x = g1(xi) g2(zeta)`` and ``y = g2(xi~) g1(zeta~)`` on nodes.

    The four-wave integrand is ``x conj(y)``; its real part splits as
    ``(|x|^2 + |y|^2)/2 - |x - y|^2/2``.
    """

    x: np.ndarray
    y: np.ndarray

    @property
    def four_wave(self) -> np.ndarray:
        return self.x * np.conj(self.y)

    @property
    def modulus_part(self) -> np.ndarray:
        return 0.5 * (np.abs(self.x) ** 2 + np.abs(self.y) ** 2)

    @property
    def deficit(self) -> np.ndarray:
        return 0.5 * np.abs(self.x - self.y) ** 2


def four_wave_identity_defect(a, b, c, d) -> np.ndarray:
    """``a b~ c~ d - [(|ac|^2 + |bd|^2 - |a c~ - b d~|^2)/2 + i Im(a b~ c~ d)]`` (``~`` conjugate)."""
    a, b, c, d = (np.asarray(v, dtype=complex) for v in (a, b, c, d))
    lhs = a * np.conj(b) * np.conj(c) * d
    real = 0.5 * (np.abs(a * c) ** 2 + np.abs(b * d) ** 2 - np.abs(a * np.conj(c) - b * np.conj(d)) ** 2)
    return lhs - (real + 1j * lhs.imag)


class FourWaveSums:
    """Running weighted sums of the four-wave pieces over quadrature blocks."""

    def __init__(self):
        self.four_wave = 0j
        self.x_sq = 0.0
        self.y_sq = 0.0
        self.deficit = 0.0
        self.min_deficit = math.inf
        self.excised = 0.0
        self.abs_total = 0.0

    def add(self, weights: np.ndarray, fw: FourWaveWeights, keep: np.ndarray | None = None) -> None:
        w = np.asarray(weights, dtype=float)
        integrand = fw.four_wave
        if keep is not None:
            self.excised += float(np.sum(np.abs(w[~keep] * integrand[~keep])))
            w = np.where(keep, w, 0.0)
        self.abs_total += float(np.sum(np.abs(w * integrand)))
        self.four_wave += complex(np.sum(w * integrand))
        self.x_sq += float(np.sum(w * np.abs(fw.x) ** 2))
        self.y_sq += float(np.sum(w * np.abs(fw.y) ** 2))
        dfc = fw.deficit
        self.deficit += float(np.sum(w * dfc))
        if dfc.size:
            self.min_deficit = min(self.min_deficit, float(dfc.min()))

    def algebra_defect(self) -> float:
        """Relative gap between ``sum w Re(x y~)`` and ``sum w (|x|^2+|y|^2)/2 - sum w |x-y|^2/2``."""
        split = 0.5 * (self.x_sq + self.y_sq) - self.deficit
        return abs(self.four_wave.real - split) / max(abs(self.four_wave.real), 1e-300)
