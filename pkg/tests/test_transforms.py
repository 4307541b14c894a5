import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kplane_bilinear.conventions import Field, GridSpec, QuadratureRule1D
from kplane_bilinear.errors import DomainError, ResolutionError, TruncationError
from kplane_bilinear.geometry import Frame
from kplane_bilinear.identities import sphere_constant, sphere_zonal, truncated_gaussian
from kplane_bilinear.transforms import (HyperboloidFunctionRd, ParaboloidFunctionRd, SphereDensity,
                                        direction_samples, extension_hyperboloid, extension_paraboloid,
                                        extension_slice, extension_sphere, fourier_slice_check,
                                        klein_gordon_propagator, kplane_transform, plancherel_kplane_check,
                                        sphere_constant_field, write_field_csv)


@pytest.fixture(scope="module")
def constant_field():
    return extension_sphere(sphere_constant(), GridSpec(3, 8.0, 24))


def test_sphere_constant_extension(constant_field):
    pts = constant_field.grid.points()
    exact = sphere_constant_field(pts)
    centre = tuple(n // 2 for n in constant_field.grid.shape)
    assert constant_field.values[centre] == pytest.approx(4 * math.pi, rel=1e-12)
    inside = np.linalg.norm(pts, axis=-1) <= 8
    assert np.abs(constant_field.values - exact)[inside].max() / (4 * math.pi) <= 1e-6


def test_sphere_odd_density_parity():
    g = SphereDensity(1.0, lambda p: np.asarray(p)[..., 2] + 0j)
    grid = GridSpec(3, 4.0, 16)
    E = extension_sphere(g, grid).values
    mid = grid.shape[2] // 2
    assert np.abs(E[:, :, mid]).max() <= 1e-10
    # odd in z3: index j and the mirrored index 2*mid - j
    j = np.arange(1, grid.shape[2])
    assert np.abs(E[:, :, j] + E[:, :, 2 * mid - j]).max() <= 1e-10 * np.abs(E).max()


def test_sphere_quadrature_converged():
    grid = GridSpec(3, 4.0, 16)
    g = sphere_zonal()
    a = extension_sphere(g, grid).values
    b = extension_sphere(SphereDensity(1.0, g.density, n_polar=256, n_azim=512), grid).values
    assert np.abs(a - b).max() <= 1e-8 * np.abs(a).max()


def test_sphere_resolution_error():
    with pytest.raises(ResolutionError):
        extension_sphere(sphere_constant(), GridSpec(3, 20.0, 16))
    with pytest.raises(DomainError):
        extension_sphere(sphere_constant(), GridSpec(2, 4.0, 16))


def hyp_function(mass=1.0):
    f = truncated_gaussian(2)
    return HyperboloidFunctionRd(mass, f, 2, f.support_radius)


def _direct_integral(F, weight):
    rule = QuadratureRule1D.gauss_legendre(200, -F.support_radius, F.support_radius)
    X, Y = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    xi = np.stack([X, Y], -1)
    return np.sum(np.outer(rule.weights, rule.weights) * F.f(xi) * weight(xi))


def test_hyperboloid_extension_at_origin_and_conjugation():
    F = hyp_function()
    grid = GridSpec(3, (6.0, 6.0, 2.0), (32, 32, 8))
    E = extension_hyperboloid(F, grid).values
    direct = _direct_integral(F, lambda xi: 1 / F.phi(xi))
    assert abs(E[16, 16, 4] - direct) <= 1e-10 * abs(direct)
    # t on index k and -t on index 8 - k
    assert np.abs(E[:, :, 1] - np.conj(E[:, :, 7])).max() <= 1e-10 * np.abs(E).max()


def test_hyperboloid_large_mass_scaling():
    grid = GridSpec(3, (6.0, 6.0, 2.0), (32, 32, 8))
    total = _direct_integral(hyp_function(), lambda xi: np.ones(xi.shape[:-1]))
    for m in (20.0, 40.0):
        E = extension_hyperboloid(hyp_function(m), grid, check=False).values[16, 16, 4]
        # 1/phi = 1/m - |xi|^2/(2 m^3) + ..., so the gap to total/m is O(m^-3)
        assert abs(E * m / total - 1) <= 1.0 / m ** 2


def test_paraboloid_free_schrodinger():
    R = 6.0
    f = lambda xi: np.exp(-np.sum(np.asarray(xi) ** 2, -1)) + 0j
    F = ParaboloidFunctionRd(f, 1, R, n_nodes=300)
    grid = GridSpec(2, (4.0, 1.0), (32, 8))
    E = extension_paraboloid(F, grid).values
    x, t = np.meshgrid(grid.axis(0), grid.axis(1), indexing="ij")
    # int e^{i x xi + i t xi^2 - xi^2} dxi = sqrt(pi/(1 - i t)) e^{-x^2/(4(1 - i t))}
    exact = np.sqrt(math.pi / (1 - 1j * t)) * np.exp(-x ** 2 / (4 * (1 - 1j * t)))
    assert np.abs(E - exact).max() / np.abs(exact).max() <= 1e-8


def test_paraboloid_vertex_shift_and_zero():
    f = truncated_gaussian(2)
    grid = GridSpec(3, (4.0, 4.0, 1.0), (16, 16, 8))
    F0 = ParaboloidFunctionRd(f, 2, f.support_radius)
    F1 = ParaboloidFunctionRd(f, 2, f.support_radius, vertex_offset=0.7)
    E0, E1 = extension_paraboloid(F0, grid).values, extension_paraboloid(F1, grid).values
    t = grid.axis(2)[None, None, :]
    assert np.abs(E1 - np.exp(1j * 0.7 * t) * E0).max() <= 1e-12 * np.abs(E0).max()
    Z = ParaboloidFunctionRd(lambda xi: np.zeros(np.shape(xi)[:-1], complex), 2, 2.0)
    assert not np.any(extension_paraboloid(Z, grid).values)


def test_extension_slice_matches_direct():
    F = hyp_function()
    # f/phi decays only like exp(-|x|) in space, so the periodic FFT box must be wide
    space = GridSpec(2, 20.0, 96)
    S = extension_slice(F, space, 0.5).values
    grid = GridSpec(3, (20.0, 20.0, 1.0), (96, 96, 8))
    D = extension_hyperboloid(F, grid, check=False).values
    assert np.abs(S - D[:, :, 6]).max() <= 1e-6 * np.abs(D).max()


def gauss2d(n=128, L=10.0):
    grid = GridSpec(2, L, n)
    return Field.from_function(grid, lambda p: np.exp(-np.sum(p ** 2, -1)) + 0j)


def test_radon_gaussian():
    F = gauss2d()
    for th in (0.0, 0.3, math.pi / 4):
        frame = Frame.from_line([math.cos(th), math.sin(th)])
        R = kplane_transform(F, frame, 1)
        s = R.grid.axis(0)
        exact = math.sqrt(math.pi) * np.exp(-s ** 2)
        assert np.abs(R.values - exact).max() / exact.max() <= 1e-6


def test_fourier_slice_seeded():
    F = Field.from_function(GridSpec(2, 10.0, 128),
                            lambda p: np.exp(-np.sum(p ** 2, -1)) * (1 + 0.4 * p[..., 0] - 0.2j * p[..., 1]))
    rng = np.random.default_rng(1)
    for th in rng.uniform(0, math.pi, 4):
        frame = Frame.from_line([math.cos(th), math.sin(th)])
        assert fourier_slice_check(F, frame)["max_rel_err"] <= 1e-5


def test_kplane_errors():
    F = gauss2d(32)
    with pytest.raises(DomainError):
        kplane_transform(F, Frame.from_line([1.0, 0.0]), 2)
    wide = Field.from_function(GridSpec(2, 2.0, 32), lambda p: np.exp(-np.sum(p ** 2, -1) / 4))
    with pytest.raises(TruncationError):
        kplane_transform(wide, Frame.from_line([1.0, 0.0]), 1)


def test_kplane_3d_line():
    grid = GridSpec(3, 6.0, 48)
    F = Field.from_function(grid, lambda p: np.exp(-np.sum(p ** 2, -1)) + 0j)
    T = kplane_transform(F, Frame.from_line([0.0, 0.6, 0.8]), 1)
    y = T.grid.points()
    exact = math.sqrt(math.pi) * np.exp(-np.sum(y ** 2, -1))
    assert np.abs(T.values - exact).max() <= 1e-4


@settings(max_examples=10, deadline=None)
@given(st.floats(0, math.pi), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_kplane_linear(th, a, b):
    grid = GridSpec(2, 8.0, 64)
    F = Field.from_function(grid, lambda p: np.exp(-np.sum(p ** 2, -1)) + 0j)
    G = Field.from_function(grid, lambda p: np.exp(-np.sum((p - 0.5) ** 2, -1)) * p[..., 0])
    frame = Frame.from_line([math.cos(th), math.sin(th)])
    lhs = kplane_transform(Field(grid, a * F.values + b * G.values), frame, 1).values
    rhs = a * kplane_transform(F, frame, 1).values + b * kplane_transform(G, frame, 1).values
    assert np.abs(lhs - rhs).max() <= 1e-12 * max(1.0, abs(a) + abs(b))


def test_plancherel_gaussian_and_zero():
    rep = plancherel_kplane_check(gauss2d(256), 1, 64)
    assert rep.rel_err <= 1e-4 and rep.passed
    Z = Field(GridSpec(2, 10.0, 64), np.zeros((64, 64)))
    rz = plancherel_kplane_check(Z, 1, 8)
    assert rz.lhs == 0 and rz.rhs == 0


def test_plancherel_direction_convergence():
    F = Field.from_function(GridSpec(2, 10.0, 128),
                            lambda p: np.exp(-p[..., 0] ** 2 - 2 * p[..., 1] ** 2) + 0j)
    e4 = plancherel_kplane_check(F, 1, 4).rel_err
    e8 = plancherel_kplane_check(F, 1, 8).rel_err
    assert e8 < e4


def test_direction_samples_weights():
    for dim, total in ((2, math.pi), (3, 2 * math.pi)):
        u, w = direction_samples(dim, 50)
        assert w.sum() == pytest.approx(total)
        assert np.allclose(np.linalg.norm(u, axis=-1), 1)


def test_klein_gordon_paths():
    grid = GridSpec(2, (40.0, 2.0), (512, 8))
    f = lambda p: np.exp(-np.sum(p ** 2, -1))
    A = klein_gordon_propagator(f, 1.0, grid)
    B = klein_gordon_propagator(f, 1.0, grid, method="extension", support_radius=10.0)
    f0 = np.exp(-grid.axis(0) ** 2)
    assert np.abs(A.values[:, 4] - f0).max() <= 1e-8
    norms = np.sum(np.abs(A.values) ** 2, axis=0) / np.sum(f0 ** 2)
    assert np.abs(norms - 1).max() <= 1e-8
    assert np.abs(A.values - B.values).max() <= 1e-6


def test_write_field_csv():
    grid = GridSpec(2, 1.0, 8)
    fld = Field(grid, np.arange(64) * (1 + 1j))
    buf = io.StringIO()
    write_field_csv(fld, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "x0,x1,re,im"
    assert len(lines) == 65
    row = [float(v) for v in lines[-1].split(",")]
    assert row[2] == 63 and row[3] == 63 and row[0] == grid.axis(0)[-1]
