"""Extension operators, k-plane transforms and the Klein–Gordon propagator.

Extension operators are evaluated by direct quadrature sums over surface
nodes.  The sums are factorised along grid axes (one matrix product per axis)
so their cost is a few dense matrix products instead of one long loop over
``nodes x gridpoints``.  Grids may be expressed in the coordinates of a
:class:`~kplane_bilinear.geometry.Frame`; the frame rotates the quadrature
nodes, never the grid, so k-plane transforms along frame directions become
plain axis sums.

The hyperboloid and paraboloid operators also offer ``method="fft"``: the
trapezoid rule on the frequency grid dual to the space grid, whose sum at all
space points at once is a single FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import ndimage

from .conventions import (Field, GridSpec, QuadratureRule1D, Side, apply_radial_multiplier,
                          forward_values, grassmannian_volume, inverse_values)
from .errors import DomainError, ResolutionError, TruncationError
from .geometry import Frame
from .report import IdentityReport

__all__ = [
    "SphereDensity",
    "HyperboloidFunctionRd",
    "ParaboloidFunctionRd",
    "extension_sphere",
    "extension_hyperboloid",
    "extension_paraboloid",
    "kplane_transform",
    "plancherel_kplane_check",
    "klein_gordon_propagator",
    "direction_samples",
    "extension_slice",
    "required_nodes",
    "write_field_csv",
    "sphere_constant_field",
    "fourier_slice_check",
]


def _ones(p):
    return np.ones(np.shape(p)[:-1], dtype=complex)


@dataclass(frozen=True)
class SphereDensity:
    """Density on ``S^2_r`` with a polar Gauss–Legendre x azimuthal trapezoid rule.

    The measure is the unit-sphere surface measure pushed forward to radius
    ``r`` (total mass ``4 pi``).
    """

    radius: float = 1.0
    density: Callable = _ones
    n: int = 3
    n_polar: int = 128
    n_azim: int = 256

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("radius must be positive")
        if self.n != 3:
            raise DomainError("only the two-sphere in R^3 is supported")

    def rules(self) -> tuple:
        return (QuadratureRule1D.gauss_legendre(self.n_polar),
                QuadratureRule1D.periodic_trapezoid(self.n_azim))

    def frame_nodes(self) -> tuple:
        """Nodes in frame coordinates, shape ``(n_polar, n_azim, 3)``, and weights."""
        tr, pr = self.rules()
        t = tr.nodes[:, None]
        s = np.sqrt(1.0 - t * t)
        phi = pr.nodes[None, :]
        pts = self.radius * np.stack(np.broadcast_arrays(t, s * np.cos(phi), s * np.sin(phi)), axis=-1)
        return pts, tr.weights[:, None] * pr.weights[None, :]

    def integrate(self, func=None) -> complex:
        """``int func * g dsigma`` (``func`` defaults to 1) in world coordinates."""
        pts, w = self.frame_nodes()
        vals = np.asarray(self.density(pts), dtype=complex)
        if func is not None:
            vals = vals * func(pts)
        return complex(np.sum(w * vals))


@dataclass(frozen=True)
class HyperboloidFunctionRd:
    """``f`` on ``R^d``, lifted to ``H^d_m`` with measure ``dxi / phi_m(xi)``."""

    mass: float = 1.0
    f: Callable = _ones
    d: int = 2
    support_radius: float = 5.5
    n_nodes: int = 200

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError("mass must be positive")
        if self.d not in (1, 2):
            raise DomainError("only d = 1 or d = 2 is supported")

    def phi(self, xi) -> np.ndarray:
        return np.sqrt(self.mass ** 2 + np.sum(np.asarray(xi) ** 2, axis=-1))

    def check_support(self, tol: float = 1e-12, samples: int = 256) -> bool:
        return _support_ok(self.f, self.d, self.support_radius, tol, samples)


@dataclass(frozen=True)
class ParaboloidFunctionRd:
    """``f`` on ``R^d``, lifted to ``P^d_a = {(xi, |xi|^2 + a)}`` with measure ``dxi``."""

    f: Callable = _ones
    d: int = 2
    support_radius: float = 5.5
    vertex_offset: float = 0.0
    n_nodes: int = 200

    def __post_init__(self):
        if self.d not in (1, 2):
            raise DomainError("only d = 1 or d = 2 is supported")

    def check_support(self, tol: float = 1e-12, samples: int = 256) -> bool:
        return _support_ok(self.f, self.d, self.support_radius, tol, samples)


def _support_ok(f, d, radius, tol, samples) -> bool:
    if d == 1:
        ring = np.array([[radius], [-radius], [1.5 * radius], [-1.5 * radius]])
    else:
        th = 2 * np.pi * np.arange(samples) / samples
        ring = np.concatenate([r * np.stack([np.cos(th), np.sin(th)], axis=-1)
                               for r in (radius, 1.25 * radius, 1.5 * radius)])
    vals = np.abs(np.asarray(f(ring)))
    return bool(np.all(vals < tol))


def _frame_matrix(frame: Frame | None, dim: int) -> np.ndarray:
    if frame is None:
        return np.eye(dim)
    if frame.dim != dim:
        raise DomainError(f"frame dimension {frame.dim} does not match {dim}")
    return frame.matrix


def extension_sphere(g: SphereDensity, grid: GridSpec, frame: Frame | None = None,
                     check: bool = True) -> Field:
    """``E(z) = int e^{i z.xi} g(xi) dsigma_r(xi)`` on a 3-D grid.

    Grid coordinates are frame coordinates ``(pi, perp_1, perp_2)``; the
    polar axis of the sphere rule is the first of them.
    """
    if grid.dim != 3:
        raise DomainError("the sphere extension needs a 3-D grid")
    r = g.radius
    if check:
        for L, n in zip(grid.half_width, grid.points_per_axis):
            if n < 4 * r * L / math.pi:
                raise ResolutionError(
                    f"{n} points on [-{L:g}, {L:g}] do not resolve radius {r:g}; need {4 * r * L / math.pi:.0f}")
        l0, l1, l2 = grid.half_width
        if g.n_polar < r * l0 / 2 + 12 or g.n_azim < r * math.hypot(l1, l2) + 20:
            raise ResolutionError("sphere quadrature too coarse for the grid extent")
    pts, w = g.frame_nodes()
    M = _frame_matrix(frame, 3)
    gv = np.asarray(g.density(pts @ M), dtype=complex) * w
    t = pts[..., 0][:, 0] / r
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    phi = QuadratureRule1D.periodic_trapezoid(g.n_azim).nodes
    z0, z1, z2 = grid.axes()
    ring = np.empty((t.size, z1.size, z2.size), dtype=complex)
    for i in range(t.size):
        c1 = np.exp(1j * r * s[i] * np.outer(z1, np.cos(phi)))
        c2 = np.exp(1j * r * s[i] * np.outer(np.sin(phi), z2))
        ring[i] = (c1 * gv[i][None, :]) @ c2
    polar = np.exp(1j * r * np.outer(z0, t))
    vals = (polar @ ring.reshape(t.size, -1)).reshape(grid.shape)
    return Field(grid, vals, Side.SPACE)


def sphere_constant_field(x, radius: float = 1.0, value: complex = 1.0) -> np.ndarray:
    """Closed form ``value * 4 pi sin(r |x|) / (r |x|)`` of the constant-density extension."""
    rho = radius * np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
    return value * 4 * np.pi * np.sinc(rho / np.pi) + 0j


def required_nodes(support_radius: float, grid: GridSpec) -> int:
    """Gauss–Legendre nodes per axis needed for the phase ``x.xi + t tau(xi)``."""
    d = grid.dim - 1
    xmax = max(grid.half_width[:d])
    tmax = grid.half_width[d]
    R = support_radius
    return int(math.ceil(R * (xmax * math.sqrt(d) + 2.0 * tmax * max(1.0, R)) / 2 + 10))


def _graph_extension(values_fn, phase_fn, d, R, n, grid, frame, method, check):
    """Shared kernel of the hyperboloid and paraboloid extensions.

    ``values_fn(xi)`` gives the weighted density and ``phase_fn(xi)`` the
    time phase ``tau(xi)``; the result is ``int e^{i x.xi + i t tau} v dxi``.
    """
    if grid.dim != d + 1:
        raise DomainError(f"need a {d + 1}-D space-time grid, got dim {grid.dim}")
    M = _frame_matrix(frame, d)
    space = grid.sub(range(d))
    times = grid.axis(d)
    if method == "fft":
        nyq = min(space.nyquist())
        if check and R > nyq:
            raise ResolutionError(f"support radius {R:g} exceeds the space-grid Nyquist {nyq:g}")
        freq = space.dual()
        xi = freq.points() @ M
        v = np.asarray(values_fn(xi), dtype=complex)
        tau = phase_fn(xi)
        out = np.empty(grid.shape, dtype=complex)
        for k, t in enumerate(times):
            # the +i sum over the frequency grid lands on its dual, the space grid
            out[..., k] = forward_values(v * np.exp(1j * t * tau), freq)
        return Field(grid, out, Side.SPACE)
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    if check:
        need = required_nodes(R, grid)
        if n < need:
            raise ResolutionError(f"{n} nodes per axis cannot resolve the phase; need about {need:.0f}")
    rule = QuadratureRule1D.gauss_legendre(n, -R, R)
    a, wa = rule.nodes, rule.weights
    grids = np.meshgrid(*([a] * d), indexing="ij")
    xi_frame = np.stack(grids, axis=-1)
    xi = xi_frame @ M
    wts = np.prod(np.meshgrid(*([wa] * d), indexing="ij"), axis=0)
    v = np.asarray(values_fn(xi), dtype=complex) * wts
    tau = phase_fn(xi)
    mats = [np.exp(1j * np.outer(ax, a)) for ax in space.axes()]
    out = np.empty(grid.shape, dtype=complex)
    for k, t in enumerate(times):
        block = v * np.exp(1j * t * tau)
        for ax in range(d):
            block = np.tensordot(mats[ax], block, axes=([1], [ax]))
            block = np.moveaxis(block, 0, ax)
        out[..., k] = block
    return Field(grid, out, Side.SPACE)


def extension_hyperboloid(F: HyperboloidFunctionRd, grid: GridSpec, frame: Frame | None = None,
                          method: str = "direct", check: bool = True) -> Field:
    """``int e^{i x.xi + i t phi_m(xi)} f(xi) dxi / phi_m(xi)`` on an ``(x, t)`` grid."""
    m = F.mass

    def values(xi):
        return np.asarray(F.f(xi), dtype=complex) / np.sqrt(m * m + np.sum(xi * xi, axis=-1))

    def phase(xi):
        return np.sqrt(m * m + np.sum(xi * xi, axis=-1))

    return _graph_extension(values, phase, F.d, F.support_radius, F.n_nodes, grid, frame, method, check)


def extension_paraboloid(F: ParaboloidFunctionRd, grid: GridSpec, frame: Frame | None = None,
                         method: str = "direct", check: bool = True) -> Field:
    """``int e^{i x.xi + i t (|xi|^2 + a)} f(xi) dxi`` on an ``(x, t)`` grid."""
    a = F.vertex_offset

    def values(xi):
        return np.asarray(F.f(xi), dtype=complex)

    def phase(xi):
        return np.sum(xi * xi, axis=-1) + a

    return _graph_extension(values, phase, F.d, F.support_radius, F.n_nodes, grid, frame, method, check)


def extension_slice(F, space: GridSpec, t: float, frame: Frame | None = None,
                    check: bool = True) -> Field:
    """Hyperboloid or paraboloid extension at one time ``t`` on a space grid.

    Uses the FFT trapezoid rule on the dual of ``space``; grid coordinates
    are frame coordinates when ``frame`` is given.
    """
    d = space.dim
    if isinstance(F, HyperboloidFunctionRd):
        m = F.mass

        def tau(xi):
            return np.sqrt(m * m + np.sum(xi * xi, axis=-1))

        def values(xi):
            return np.asarray(F.f(xi), dtype=complex) / tau(xi)
    elif isinstance(F, ParaboloidFunctionRd):
        a = F.vertex_offset

        def tau(xi):
            return np.sum(xi * xi, axis=-1) + a

        def values(xi):
            return np.asarray(F.f(xi), dtype=complex)
    else:
        raise DomainError("expected a hyperboloid or paraboloid function")
    if d != F.d:
        raise DomainError(f"space grid has dimension {d}, function has d = {F.d}")
    if check and F.support_radius > min(space.nyquist()):
        raise ResolutionError(f"support radius {F.support_radius:g} exceeds the grid Nyquist "
                              f"{min(space.nyquist()):g}")
    freq = space.dual()
    xi = freq.points() @ _frame_matrix(frame, d)
    return Field(space, forward_values(values(xi) * np.exp(1j * t * tau(xi)), freq), Side.SPACE)


def _aligned_axes(frame: Frame) -> tuple | None:
    """Grid axes of ``pi`` and ``pi_perp`` when the frame is the identity up to order."""
    M = frame.matrix
    if not np.allclose(np.abs(M), np.round(np.abs(M)), atol=1e-14) or np.any(M < -0.5):
        return None
    idx = [int(np.argmax(row)) for row in M]
    k = frame.k
    pi_axes, perp_axes = idx[:k], idx[k:]
    if perp_axes != sorted(perp_axes):
        return None
    return tuple(pi_axes), tuple(perp_axes)


def _boundary_ratio(vals: np.ndarray) -> float:
    amp = np.abs(vals)
    peak = amp.max()
    if peak == 0:
        return 0.0
    edge = 0.0
    for ax in range(vals.ndim):
        edge = max(edge, np.take(amp, 0, axis=ax).max(), np.take(amp, -1, axis=ax).max())
    return float(edge / peak)


def _spline_coeffs(F: Field, order: int) -> tuple:
    if order > 1:
        return tuple(ndimage.spline_filter(part, order=order, mode="grid-constant")
                     for part in (F.values.real, F.values.imag))
    return F.values.real, F.values.imag


def _check_kplane_args(F: Field, frame: Frame, k: int, boundary_tol: float | None) -> None:
    if F.side is not Side.SPACE:
        raise DomainError("kplane_transform expects a space-side field")
    dim = F.grid.dim
    if not 1 <= k <= dim - 1:
        raise DomainError(f"k must lie in 1..{dim - 1}, got {k}")
    if frame.dim != dim or frame.k != k:
        raise DomainError("frame does not match the grid dimension and k")
    if boundary_tol is not None:
        ratio = _boundary_ratio(F.values)
        if ratio > boundary_tol:
            raise TruncationError(f"field at the grid boundary is {ratio:.2e} of its peak")


def _kplane(F: Field, frame: Frame, k: int, order: int, coeffs) -> Field:
    aligned = _aligned_axes(frame)
    if aligned is not None:
        pi_axes, perp_axes = aligned
        vals = F.values.sum(axis=pi_axes) * math.prod(F.grid.spacing[a] for a in pi_axes)
        return Field(F.grid.sub(perp_axes), vals, Side.SPACE)
    dim = F.grid.dim
    h = min(F.grid.spacing)
    ygrid = GridSpec(dim - k, min(F.grid.half_width), min(F.grid.points_per_axis))
    reach = math.sqrt(sum(w * w for w in F.grid.half_width))
    ns = 2 * int(math.ceil(reach / h)) + 1
    sline = (np.arange(ns) - ns // 2) * h
    spts = np.stack(np.meshgrid(*([sline] * k), indexing="ij"), axis=-1).reshape(-1, k)
    line = spts @ frame.basis_pi
    ypts = ygrid.points().reshape(-1, dim - k)
    origin = np.array([n // 2 for n in F.grid.points_per_axis], dtype=float)
    spacing = np.array(F.grid.spacing)
    re, im = coeffs
    out = np.empty(ypts.shape[0], dtype=complex)
    chunk = max(1, 2_000_000 // line.shape[0])
    for lo in range(0, ypts.shape[0], chunk):
        pts = (ypts[lo:lo + chunk] @ frame.basis_perp)[:, None, :] + line[None, :, :]
        coords = (pts / spacing + origin).reshape(-1, dim).T
        # in-grid test skips samples that would only return the zero fill
        inside = np.all((coords > -1) & (coords < np.array(F.grid.shape)[:, None]), axis=0)
        vals = np.zeros(coords.shape[1], dtype=complex)
        c = coords[:, inside]
        vals[inside] = (ndimage.map_coordinates(re, c, order=order, mode="grid-constant", prefilter=False)
                        + 1j * ndimage.map_coordinates(im, c, order=order, mode="grid-constant",
                                                       prefilter=False))
        out[lo:lo + chunk] = vals.reshape(pts.shape[:2]).sum(axis=1) * h ** k
    return Field(ygrid, out.reshape(ygrid.shape), Side.SPACE)


def kplane_transform(F: Field, frame: Frame, k: int, *, boundary_tol: float | None = 1e-6,
                     order: int = 5) -> Field:
    """``T_k F(y) = int_pi F(x + y) dlambda_pi(x)`` for ``y`` on a grid of ``pi_perp``.

    The output grid is indexed by coordinates along ``frame.basis_perp``.  If
    the frame is axis aligned the integral is a trapezoid sum along grid
    axes; otherwise ``F`` is resampled by spline interpolation of the given
    ``order`` (1 is linear) on lines or planes parallel to ``pi``.
    """
    _check_kplane_args(F, frame, k, boundary_tol)
    coeffs = None if _aligned_axes(frame) is not None else _spline_coeffs(F, order)
    return _kplane(F, frame, k, order, coeffs)


def direction_samples(dim: int, count: int) -> tuple:
    """Directions on the upper half circle or hemisphere and their weights.

    ``dim = 2``: equi-angular midpoints on ``[0, pi)``, weights ``pi/count``.
    ``dim = 3``: a Fibonacci spiral on the upper hemisphere with equal
    weights ``2 pi / count``.  Weights sum to the hemisphere measure.
    """
    if dim == 2:
        th = (np.arange(count) + 0.5) * math.pi / count
        return np.stack([np.cos(th), np.sin(th)], axis=-1), np.full(count, math.pi / count)
    if dim == 3:
        j = np.arange(count) + 0.5
        z = j / count
        phi = j * math.pi * (3.0 - math.sqrt(5.0))
        rho = np.sqrt(1.0 - z * z)
        u = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)
        return u, np.full(count, 2 * math.pi / count)
    raise DomainError("direction sampling supports dim 2 or 3")


def _frame_for(dim: int, k: int, u: np.ndarray) -> Frame:
    # k-planes in R^2 and lines in R^3 are spanned by u; planes in R^3 are u-perp
    if k == dim - 1 and dim == 3:
        return Frame.from_direction(u)
    return Frame.from_line(u)


def plancherel_kplane_check(F: Field, k: int, frame_samples: int, *, tolerance: float = 1e-4,
                            order: int = 5, pad: int | None = None) -> IdentityReport:
    """Compare ``||F||^2`` with the Grassmannian average of ``||(-Delta_y)^{k/4} T_k F||^2``."""
    dim = F.grid.dim
    if pad is None:
        # the trapezoid error at the kink of |nu|^k is O(dnu^2) on a line, O(dnu^3) on a plane
        pad = 16 if dim - k == 1 else 8
    lhs = F.l2_norm_sq()
    dirs, wts = direction_samples(dim, frame_samples)
    const = (2 * math.pi) ** (-k) / grassmannian_volume(dim - k - 1, dim - 1)
    acc = 0.0
    _check_kplane_args(F, _frame_for(dim, k, dirs[0]), k, 1e-6)
    coeffs = _spline_coeffs(F, order)
    for u, w in zip(dirs, wts):
        T = _kplane(F, _frame_for(dim, k, u), k, order, coeffs)
        # zero padding refines the dual grid at the kink of |nu|^k
        D = apply_radial_multiplier(T, k / 2.0, pad=pad, crop=False, edge_tol=None)
        acc += w * D.l2_norm_sq()
    rhs = const * acc
    return IdentityReport("plancherel-kplane", lhs, rhs, tolerance,
                          params={"dim": dim, "k": k, "frame_samples": frame_samples,
                                  "points_per_axis": list(F.grid.points_per_axis),
                                  "half_width": list(F.grid.half_width), "order": order, "pad": pad})


def fourier_slice_check(F: Field, frame: Frame, k: int = 1, *, order: int = 5) -> dict:
    """Largest gap between ``(T_k F)^(nu)`` and ``F^(nu)`` for ``nu`` in ``pi_perp``.

    The left side is the FFT of the k-plane transform on its own grid; the
    right side is a direct sum of ``F e^{i x.nu}`` over the full grid.
    Errors are relative to ``max |F^|`` on the slice.
    """
    T = kplane_transform(F, frame, k, order=order)
    lhs = forward_values(T.values, T.grid)
    nus = T.grid.dual().points().reshape(-1, T.grid.dim)
    world = nus @ frame.basis_perp
    # the phase factorises over grid axes, so contract one axis at a time
    phases = [np.exp(1j * np.outer(world[:, a], F.grid.axis(a))) for a in range(F.grid.dim)]
    rhs = F.values @ phases[-1].T
    for a in range(F.grid.dim - 2, -1, -1):
        rhs = np.einsum("...in,ni->...n", rhs, phases[a])
    rhs = rhs * F.grid.cell_volume
    peak = np.abs(rhs).max()
    err = float(np.abs(lhs.ravel() - rhs).max() / max(peak, 1e-300))
    return {"max_rel_err": err, "peak": float(peak), "nodes": int(world.shape[0])}


def klein_gordon_propagator(f: Callable, m: float, grid: GridSpec, *, method: str = "multiplier",
                            n_nodes: int | None = None, support_radius: float | None = None) -> Field:
    """``e^{i t sqrt(m^2 - Delta)} f`` on a space-time grid (time on the last axis).

    ``method="multiplier"`` multiplies the FFT of ``f`` by ``e^{i t phi_m}``.
    ``method="extension"`` evaluates ``f^(-xi)`` at Gauss–Legendre frequency
    nodes by direct summation, lifts ``f^(-xi) phi_m`` to the hyperboloid and applies
    :func:`extension_hyperboloid`, then divides by ``(2 pi)^d``.

    The half-wave group has slowly decaying tails, so the multiplier path
    needs a box well beyond the bulk of the solution to avoid wrap-around.
    """
    d = grid.dim - 1
    if d not in (1, 2):
        raise DomainError("the propagator needs a 2-D or 3-D space-time grid")
    space = grid.sub(range(d))
    samples = np.asarray(f(space.points()), dtype=complex)
    times = grid.axis(d)
    if method == "multiplier":
        fhat = forward_values(samples, space)
        freq = space.dual()
        phi = np.sqrt(m * m + np.sum(freq.points() ** 2, axis=-1))
        out = np.empty(grid.shape, dtype=complex)
        for k, t in enumerate(times):
            out[..., k] = inverse_values(fhat * np.exp(1j * t * phi), freq)
        return Field(grid, out, Side.SPACE)
    if method != "extension":
        raise DomainError(f"unknown method {method!r}")
    R = min(space.nyquist()) if support_radius is None else float(support_radius)
    if n_nodes is None:
        n_nodes = required_nodes(R, grid)
    rule = QuadratureRule1D.gauss_legendre(n_nodes, -R, R)
    mats = [np.exp(-1j * np.outer(rule.nodes, ax)) * h for ax, h in zip(space.axes(), space.spacing)]
    fhat = samples
    for ax in range(d):
        fhat = np.moveaxis(np.tensordot(mats[ax], fhat, axes=([1], [ax])), 0, ax)
    grids = np.meshgrid(*([rule.nodes] * d), indexing="ij")

    def lifted(xi):
        # xi arrives in the same node layout, so the tabulated f^ lines up
        phi = np.sqrt(m * m + np.sum(xi * xi, axis=-1))
        return fhat * phi

    F = HyperboloidFunctionRd(m, lifted, d, R, n_nodes)
    E = extension_hyperboloid(F, grid, check=False)
    return Field(grid, E.values / (2 * math.pi) ** d, Side.SPACE)


def write_field_csv(fld: Field, target) -> None:
    """Write a header row then one row per grid point: coordinates, re, im."""
    pts = fld.grid.points().reshape(-1, fld.grid.dim)
    vals = fld.values.reshape(-1)
    names = [f"x{a}" for a in range(fld.grid.dim)] + ["re", "im"]
    data = np.column_stack([pts, vals.real, vals.imag])
    np.savetxt(target, data, fmt="%.17g", delimiter=",", header=",".join(names), comments="")
