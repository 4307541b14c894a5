"""Fourier conventions, grids, quadrature rules and Fourier multipliers.

The forward transform is

    f^(xi) = int e^{+i z.xi} f(z) dz,

with no prefactor, and the inverse carries (2 pi)^{-n} and the opposite sign,
so that ||f^||_2 = (2 pi)^{n/2} ||f||_2.  The sign of every FFT backend is
mapped in exactly one place, :func:`_dft`; everything else goes through it.

Grids are centred: along an axis with ``N`` points and half width ``L`` the
nodes are ``x_j = (j - N//2) h`` with ``h = 2L/N``.  The dual frequency grid
has spacing ``pi/L`` and half width ``pi N / (2L)``, so the dual of the dual is
the original grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import fft as sp_fft
from scipy.special import gamma, roots_legendre

from .errors import DomainError, ResolutionError

__all__ = [
    "Side",
    "GridSpec",
    "Field",
    "QuadKind",
    "QuadratureRule1D",
    "fourier_forward",
    "fourier_inverse",
    "apply_radial_multiplier",
    "grassmannian_volume",
    "sphere_area",
    "grid_integral",
    "DEFAULT_GRID_2D",
    "DEFAULT_GRID_3D",
]


class Side(str, enum.Enum):
    SPACE = "space"
    FREQUENCY = "frequency"


def _per_axis(value, dim: int, cast) -> tuple:
    if np.ndim(value) == 0:
        return tuple(cast(value) for _ in range(dim))
    out = tuple(cast(v) for v in value)
    if len(out) != dim:
        raise DomainError(f"expected {dim} per-axis values, got {len(out)}")
    return out


@dataclass(frozen=True)
class GridSpec:
    """Uniform centred grid on ``[-L_a, L_a)`` along each axis ``a``.

    ``half_width`` and ``points_per_axis`` accept a scalar (same on every
    axis) or one value per axis.
    """

    dim: int
    half_width: tuple
    points_per_axis: tuple

    def __post_init__(self):
        if not 1 <= int(self.dim) <= 3:
            raise DomainError(f"grid dimension must be 1, 2 or 3, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        hw = _per_axis(self.half_width, self.dim, float)
        npts = _per_axis(self.points_per_axis, self.dim, int)
        if any(not (h > 0 and math.isfinite(h)) for h in hw):
            raise DomainError(f"half_width must be positive, got {hw}")
        if any(n < 8 for n in npts):
            raise DomainError(f"points_per_axis must be >= 8, got {npts}")
        object.__setattr__(self, "half_width", hw)
        object.__setattr__(self, "points_per_axis", npts)

    @property
    def shape(self) -> tuple:
        return self.points_per_axis

    @property
    def size(self) -> int:
        return int(np.prod(self.points_per_axis))

    @property
    def spacing(self) -> tuple:
        return tuple(2.0 * L / n for L, n in zip(self.half_width, self.points_per_axis))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def axis(self, a: int) -> np.ndarray:
        n = self.points_per_axis[a]
        return (np.arange(n) - n // 2) * self.spacing[a]

    def axes(self) -> list:
        return [self.axis(a) for a in range(self.dim)]

    def mesh(self) -> list:
        return np.meshgrid(*self.axes(), indexing="ij")

    def points(self) -> np.ndarray:
        """All grid points as an array of shape ``shape + (dim,)``."""
        return np.stack(self.mesh(), axis=-1)

    def dual(self) -> "GridSpec":
        """The frequency grid reached by an FFT of this grid."""
        hw = tuple(math.pi * n / (2.0 * L) for L, n in zip(self.half_width, self.points_per_axis))
        return GridSpec(self.dim, hw, self.points_per_axis)

    def nyquist(self) -> tuple:
        """Largest representable frequency per axis, ``pi / h``."""
        return tuple(math.pi / h for h in self.spacing)

    def padded(self, factor: int, axes: Sequence[int]) -> "GridSpec":
        factor = int(factor)
        hw = list(self.half_width)
        npts = list(self.points_per_axis)
        for a in axes:
            hw[a] *= factor
            npts[a] *= factor
        return GridSpec(self.dim, tuple(hw), tuple(npts))

    def sub(self, axes: Sequence[int]) -> "GridSpec":
        """Grid restricted to a subset of axes."""
        axes = list(axes)
        return GridSpec(len(axes), tuple(self.half_width[a] for a in axes),
                        tuple(self.points_per_axis[a] for a in axes))


DEFAULT_GRID_2D = GridSpec(2, 10.0, 256)
DEFAULT_GRID_3D = GridSpec(3, 8.0, 96)


@dataclass
class Field:
    """Complex samples on a grid, tagged with the side they live on."""

    grid: GridSpec
    values: np.ndarray
    side: Side = Side.SPACE
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.size != self.grid.size:
            raise DomainError(f"values have {vals.size} entries, grid has {self.grid.size}")
        self.values = vals.reshape(self.grid.shape)
        self.side = Side(self.side)

    @classmethod
    def from_function(cls, grid: GridSpec, func, side: Side = Side.SPACE) -> "Field":
        return cls(grid, func(grid.points()), side)

    def integral(self) -> complex:
        return complex(self.values.sum() * self.grid.cell_volume)

    def l2_norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume)


def grid_integral(values: np.ndarray, grid: GridSpec) -> complex:
    return complex(np.sum(values) * grid.cell_volume)


def _dft(values: np.ndarray, scale: float, axes: Sequence[int], sign: int) -> np.ndarray:
    """Centred DFT along ``axes``: ``scale * sum_j v_j exp(sign * i x_j xi_k)``.

    This is the only place where the backend sign is chosen.  scipy's
    ``fftn`` uses ``exp(-i ...)`` and ``ifftn`` with ``norm="forward"`` gives
    the unscaled ``exp(+i ...)`` sum.
    """
    axes = tuple(axes)
    v = sp_fft.ifftshift(values, axes=axes)
    if sign > 0:
        v = sp_fft.ifftn(v, axes=axes, norm="forward")
    else:
        v = sp_fft.fftn(v, axes=axes)
    return sp_fft.fftshift(v, axes=axes) * scale


def _axis_scale(spacings: Sequence[float], axes: Sequence[int]) -> float:
    return float(np.prod([spacings[a] for a in axes]))


def forward_values(values: np.ndarray, grid: GridSpec, axes: Sequence[int] | None = None) -> np.ndarray:
    """``int e^{+i z.xi} v(z) dz`` along ``axes`` (all axes by default)."""
    axes = tuple(range(grid.dim)) if axes is None else tuple(axes)
    return _dft(values, _axis_scale(grid.spacing, axes), axes, +1)


def inverse_values(values: np.ndarray, freq_grid: GridSpec, axes: Sequence[int] | None = None) -> np.ndarray:
    """``(2 pi)^{-k} int e^{-i z.xi} V(xi) dxi`` along ``axes``."""
    axes = tuple(range(freq_grid.dim)) if axes is None else tuple(axes)
    scale = _axis_scale(freq_grid.spacing, axes) / (2.0 * math.pi) ** len(axes)
    return _dft(values, scale, axes, -1)


def _check_band(grid: GridSpec, band: float | None) -> None:
    if band is not None and band > min(grid.nyquist()):
        raise ResolutionError(
            f"requested band {band:g} exceeds the grid Nyquist frequency {min(grid.nyquist()):g}")


def fourier_forward(f: Field, band: float | None = None) -> Field:
    """Discrete ``f^(xi) = int e^{+i z.xi} f(z) dz`` on the dual grid."""
    if f.side is not Side.SPACE:
        raise DomainError("fourier_forward expects a space-side field")
    _check_band(f.grid, band)
    return Field(f.grid.dual(), forward_values(f.values, f.grid), Side.FREQUENCY)


def fourier_inverse(F: Field) -> Field:
    """Discrete ``(2 pi)^{-n} int e^{-i z.xi} F(xi) dxi`` on the dual grid."""
    if F.side is not Side.FREQUENCY:
        raise DomainError("fourier_inverse expects a frequency-side field")
    return Field(F.grid.dual(), inverse_values(F.values, F.grid), Side.SPACE)


def _zero_pad(values: np.ndarray, factor: int, axes: Sequence[int]) -> np.ndarray:
    pad = [(0, 0)] * values.ndim
    for a in axes:
        n = values.shape[a]
        extra = (factor - 1) * n
        # keep the origin at index N//2 of the enlarged axis
        lo = (factor * n) // 2 - n // 2
        pad[a] = (lo, extra - lo)
    return np.pad(values, pad)


def _crop(values: np.ndarray, factor: int, axes: Sequence[int], shape: tuple) -> np.ndarray:
    sl = [slice(None)] * values.ndim
    for a in axes:
        n = shape[a]
        lo = (factor * n) // 2 - n // 2
        sl[a] = slice(lo, lo + n)
    return values[tuple(sl)]


def apply_radial_multiplier(
    f: Field,
    exponent: float,
    subspace_mask: Sequence[int] | None = None,
    *,
    pad: int = 1,
    crop: bool = True,
    edge_tol: float | None = 1e-3,
) -> Field:
    """Realise ``(-Delta_y)^{s/2}`` on the axes in ``subspace_mask``.

    The Fourier transform along the masked axes is multiplied by
    ``|xi_mask|^s``.  With ``pad > 1`` the masked axes are zero-extended by
    that factor first, which removes periodic wrap-around of the nonlocal
    multiplier; with ``crop=False`` the result is returned on the enlarged
    grid so that its full L^2 mass can be integrated.

    For ``s > 0`` a ResolutionError is raised when spectral content in the
    outer tenth of the band exceeds ``edge_tol`` times the peak (``None``
    disables the check).  For ``s < 0`` the multiplier is set to zero at the
    zero-frequency node and ``flags["zero_frequency_zeroed"]`` records
    whether that discarded nonzero content.
    """
    if f.side is not Side.SPACE:
        raise DomainError("apply_radial_multiplier expects a space-side field")
    s = float(exponent)
    if not abs(s) <= 2.0:
        raise DomainError(f"exponent must satisfy |s| <= 2, got {s}")
    axes = tuple(range(f.grid.dim)) if subspace_mask is None else tuple(sorted(set(subspace_mask)))
    if not axes or any(a < 0 or a >= f.grid.dim for a in axes):
        raise DomainError(f"invalid subspace mask {subspace_mask}")
    if s == 0.0:
        return Field(f.grid, f.values.copy(), Side.SPACE, dict(f.flags))

    pad = int(pad)
    if pad < 1:
        raise DomainError("pad must be a positive integer")
    grid = f.grid.padded(pad, axes) if pad > 1 else f.grid
    vals = _zero_pad(f.values, pad, axes) if pad > 1 else f.values

    spectrum = forward_values(vals, grid, axes)
    dual = grid.dual()
    ksq = 0.0
    edge = np.zeros((), dtype=bool)
    for a in axes:
        shape = [1] * grid.dim
        shape[a] = -1
        k = dual.axis(a).reshape(shape)
        ksq = ksq + k * k
        edge = edge | (np.abs(k) >= 0.9 * dual.half_width[a])
    knorm = np.sqrt(ksq)

    flags = dict(f.flags)
    if s > 0 and edge_tol is not None:
        amp = np.abs(spectrum)
        peak = amp.max()
        if peak > 0:
            edge_amp = np.where(np.broadcast_to(edge, amp.shape), amp, 0.0).max()
            if edge_amp > edge_tol * peak:
                raise ResolutionError(
                    f"band-edge content {edge_amp / peak:.2e} of peak; refine the grid")
    with np.errstate(divide="ignore"):
        mult = np.where(knorm > 0, knorm ** s, 0.0)
    if s < 0:
        zero = np.broadcast_to(knorm == 0, spectrum.shape)
        peak = np.abs(spectrum).max()
        flags["zero_frequency_zeroed"] = bool(
            peak > 0 and np.abs(spectrum[zero]).max(initial=0.0) > 1e-12 * peak)
    out = inverse_values(spectrum * mult, dual, axes)
    if pad > 1 and crop:
        return Field(f.grid, _crop(out, pad, axes, f.grid.shape), Side.SPACE, flags)
    return Field(grid, out, Side.SPACE, flags)


class QuadKind(str, enum.Enum):
    GAUSS_LEGENDRE = "gauss_legendre"
    PERIODIC_TRAPEZOID = "periodic_trapezoid"


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple:
    x, w = roots_legendre(n)
    return x, w


@dataclass(frozen=True)
class QuadratureRule1D:
    nodes: np.ndarray
    weights: np.ndarray
    kind: QuadKind

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if nodes.shape != weights.shape or nodes.size == 0:
            raise DomainError("nodes and weights must be non-empty and of equal length")
        if np.any(weights <= 0):
            raise DomainError("quadrature weights must be strictly positive")
        kind = QuadKind(self.kind)
        if kind is QuadKind.PERIODIC_TRAPEZOID and np.ptp(weights) > 1e-14 * weights.max():
            raise DomainError("periodic trapezoid weights must be equal")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "kind", kind)

    def __len__(self) -> int:
        return self.nodes.size

    @classmethod
    def gauss_legendre(cls, n: int, a: float = -1.0, b: float = 1.0, panels: int = 1) -> "QuadratureRule1D":
        """Composite Gauss–Legendre rule with ``panels`` equal panels of ``n`` nodes."""
        if n < 1 or panels < 1:
            raise DomainError("need at least one node and one panel")
        x, w = _legendre(int(n))
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (np.abs(half)[:, None] * w[None, :]).ravel()
        return cls(nodes, weights, QuadKind.GAUSS_LEGENDRE)

    @classmethod
    def periodic_trapezoid(cls, n: int, a: float = 0.0, b: float = 2 * math.pi) -> "QuadratureRule1D":
        h = (b - a) / n
        return cls(a + h * np.arange(n), np.full(n, h), QuadKind.PERIODIC_TRAPEZOID)

    def integrate(self, func) -> complex:
        return np.sum(self.weights * func(self.nodes))


def sphere_area(m: int) -> float:
    """Surface measure ``|S^m|`` of the unit sphere in ``R^{m+1}``."""
    if m < 0:
        raise DomainError("sphere dimension must be non-negative")
    return 2.0 * math.pi ** ((m + 1) / 2.0) / gamma((m + 1) / 2.0)


def grassmannian_volume(k: int, n: int) -> float:
    """``|G_{k,n}| = (|S^{n-1}|...|S^{n-k}|) / (|S^{k-1}|...|S^0|)``.

    The empty products at ``k = 0`` and ``k = n`` give 1, which is what the
    k-plane Plancherel normalisation needs at its endpoints.
    """
    if int(k) != k or int(n) != n or n < 1 or not 0 <= k <= n:
        raise DomainError(f"need integers 0 <= k <= n, n >= 1; got k={k}, n={n}")
    k, n = int(k), int(n)
    num = math.prod(sphere_area(n - j) for j in range(1, k + 1))
    den = math.prod(sphere_area(k - j) for j in range(1, k + 1))
    return num / den
