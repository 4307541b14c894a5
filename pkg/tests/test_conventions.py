import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kplane_bilinear.conventions import (Field, GridSpec, QuadKind, QuadratureRule1D, Side,
                                         apply_radial_multiplier, fourier_forward, fourier_inverse,
                                         grassmannian_volume, sphere_area)
from kplane_bilinear.errors import DomainError, ResolutionError


def gaussian_2d(grid):
    return Field.from_function(grid, lambda p: np.exp(-0.5 * np.sum(p ** 2, axis=-1)))


def test_gridspec_invariants():
    g = GridSpec(2, 10.0, 256)
    assert g.shape == (256, 256)
    assert g.spacing == (20.0 / 256, 20.0 / 256)
    with pytest.raises(DomainError):
        GridSpec(2, 10.0, 4)
    with pytest.raises(DomainError):
        GridSpec(2, -1.0, 16)
    with pytest.raises(DomainError):
        GridSpec(4, 1.0, 16)


def test_field_size_checked():
    with pytest.raises(DomainError):
        Field(GridSpec(2, 1.0, 8), np.zeros(10))


def test_forward_gaussian_2d():
    F = fourier_forward(gaussian_2d(GridSpec(2, 8.0, 256)))
    xi = F.grid.points()
    exact = 2 * math.pi * np.exp(-0.5 * np.sum(xi ** 2, axis=-1))
    mask = np.sum(xi ** 2, axis=-1) < 36
    err = np.abs(F.values - exact)[mask].max() / exact.max()
    assert err <= 1e-6


def test_forward_sign_convention():
    # a shifted Gaussian picks up e^{+i a.xi} with the + sign convention
    a = np.array([1.5, -0.5])
    grid = GridSpec(2, 8.0, 128)
    f = Field.from_function(grid, lambda p: np.exp(-0.5 * np.sum((p - a) ** 2, axis=-1)))
    F = fourier_forward(f)
    xi = F.grid.points()
    exact = 2 * math.pi * np.exp(-0.5 * np.sum(xi ** 2, axis=-1)) * np.exp(1j * xi @ a)
    assert np.abs(F.values - exact).max() < 1e-8


def test_narrow_gaussian_tends_to_one():
    sigma = 0.05
    grid = GridSpec(2, 2.0, 512)
    f = Field.from_function(grid, lambda p: np.exp(-0.5 * np.sum(p ** 2, -1) / sigma ** 2)
                            / (2 * math.pi * sigma ** 2))
    F = fourier_forward(f)
    low = np.sum(F.grid.points() ** 2, axis=-1) < 1.0
    assert np.abs(F.values[low] - 1).max() < 2e-3


def test_plancherel_and_round_trip():
    rng = np.random.default_rng(3)
    grid = GridSpec(2, 8.0, 128)
    c = rng.normal(size=(4, 2))
    f = Field.from_function(grid, lambda p: sum(np.exp(-np.sum((p - ci) ** 2, -1)) for ci in c) + 0j)
    F = fourier_forward(f)
    ratio = F.l2_norm_sq() / f.l2_norm_sq()
    assert abs(ratio / (2 * math.pi) ** 2 - 1) <= 1e-6
    back = fourier_inverse(F)
    assert np.abs(back.values - f.values).max() / np.abs(f.values).max() <= 1e-8


def test_parseval_pairing():
    grid = GridSpec(2, 8.0, 128)
    f = Field.from_function(grid, lambda p: np.exp(-np.sum(p ** 2, -1)) * (1 + 1j * p[..., 0]))
    g = Field.from_function(grid, lambda p: np.exp(-np.sum((p - 0.3) ** 2, -1)))
    F, G = fourier_forward(f), fourier_forward(g)
    lhs = np.sum(F.values * np.conj(G.values)) * F.grid.cell_volume
    rhs = (2 * math.pi) ** 2 * np.sum(f.values * np.conj(g.values)) * grid.cell_volume
    assert abs(lhs - rhs) <= 1e-6 * abs(rhs)


def test_side_checks():
    f = gaussian_2d(GridSpec(2, 4.0, 16))
    with pytest.raises(DomainError):
        fourier_inverse(f)
    with pytest.raises(DomainError):
        fourier_forward(fourier_forward(f))


def plane_wave(a, L=40.0, n=1024):
    grid = GridSpec(1, L, n)
    x = grid.axis(0)
    # flat on the central half so derivative terms of the window stay below 1e-3
    window = np.exp(-(x / (0.8 * L)) ** 24)
    return Field(grid, np.exp(1j * a * x) * window), x


def test_multiplier_plane_wave():
    a = 2.0
    f, x = plane_wave(a)
    out = apply_radial_multiplier(f, 0.5)
    inner = np.abs(x) < 0.5 * 40.0
    err = np.abs(out.values[inner] - abs(a) ** 0.5 * f.values[inner]).max() / abs(a) ** 0.5
    assert err <= 1e-3


def test_multiplier_zero_exponent_identity():
    f = gaussian_2d(GridSpec(2, 6.0, 64))
    assert np.array_equal(apply_radial_multiplier(f, 0.0).values, f.values)


def test_multiplier_semigroup():
    f = gaussian_2d(GridSpec(2, 10.0, 128))
    twice = apply_radial_multiplier(apply_radial_multiplier(f, 0.25), 0.25)
    once = apply_radial_multiplier(f, 0.5)
    assert np.abs(twice.values - once.values).max() <= 1e-8


def test_multiplier_inverse_pair():
    grid = GridSpec(2, 10.0, 128)
    f = Field.from_function(grid, lambda p: np.exp(-0.5 * np.sum(p ** 2, -1)) * p[..., 0])
    back = apply_radial_multiplier(apply_radial_multiplier(f, 0.5), -0.5)
    assert back.flags["zero_frequency_zeroed"] is False
    assert np.abs(back.values - f.values).max() <= 1e-6 * np.abs(f.values).max()


def test_negative_exponent_flags_zero_frequency():
    f = gaussian_2d(GridSpec(2, 10.0, 64))
    out = apply_radial_multiplier(f, -0.5)
    assert out.flags["zero_frequency_zeroed"] is True


def test_multiplier_masked_axes():
    # acting on axis 1 only leaves a function of x0 alone
    grid = GridSpec(2, 10.0, 128)
    f = Field.from_function(grid, lambda p: np.exp(-0.5 * p[..., 0] ** 2) * np.exp(-0.5 * p[..., 1] ** 2))
    out = apply_radial_multiplier(f, 1.0, [1])
    one_d = apply_radial_multiplier(Field(GridSpec(1, 10.0, 128), np.exp(-0.5 * grid.axis(1) ** 2)), 1.0)
    assert np.abs(out.values - np.outer(np.exp(-0.5 * grid.axis(0) ** 2), one_d.values)).max() < 1e-12


def test_multiplier_errors():
    f = gaussian_2d(GridSpec(2, 10.0, 64))
    with pytest.raises(DomainError):
        apply_radial_multiplier(f, 2.5)
    with pytest.raises(DomainError):
        apply_radial_multiplier(f, 0.5, [3])
    coarse = Field.from_function(GridSpec(1, 10.0, 16), lambda p: np.exp(1j * 2.5 * p[..., 0]))
    with pytest.raises(ResolutionError):
        apply_radial_multiplier(coarse, 1.0)


def test_quadrature_rules():
    gl = QuadratureRule1D.gauss_legendre(10, 0.0, math.pi)
    assert gl.kind is QuadKind.GAUSS_LEGENDRE
    assert abs(gl.integrate(np.sin) - 2.0) < 1e-12
    tr = QuadratureRule1D.periodic_trapezoid(32)
    assert np.ptp(tr.weights) == 0
    assert abs(tr.integrate(lambda t: np.cos(t) ** 2) - math.pi) < 1e-12
    with pytest.raises(DomainError):
        QuadratureRule1D(np.zeros(2), np.array([1.0, -1.0]), QuadKind.GAUSS_LEGENDRE)
    with pytest.raises(DomainError):
        QuadratureRule1D(np.zeros(2), np.array([1.0, 2.0]), QuadKind.PERIODIC_TRAPEZOID)


def test_grassmannian_examples():
    assert grassmannian_volume(1, 2) == pytest.approx(math.pi, rel=1e-15)
    assert grassmannian_volume(1, 3) == pytest.approx(2 * math.pi, rel=1e-15)
    assert grassmannian_volume(2, 3) == pytest.approx(grassmannian_volume(1, 3), rel=1e-15)
    with pytest.raises(DomainError):
        grassmannian_volume(4, 3)


@given(st.integers(1, 6), st.data())
def test_grassmannian_duality(n, data):
    k = data.draw(st.integers(1, max(1, n - 1)))
    if n >= 2:
        assert grassmannian_volume(k, n) == pytest.approx(grassmannian_volume(n - k, n), rel=1e-12)


def test_sphere_area():
    assert sphere_area(0) == pytest.approx(2.0)
    assert sphere_area(1) == pytest.approx(2 * math.pi)
    assert sphere_area(2) == pytest.approx(4 * math.pi)


@settings(max_examples=20, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 2.0))
def test_forward_is_linear_and_unitary_up_to_constant(a, b, w):
    grid = GridSpec(1, 20.0, 256)
    f = Field.from_function(grid, lambda p: np.exp(-((p[..., 0] - a) / w) ** 2) * np.exp(1j * b * p[..., 0]))
    F = fourier_forward(f)
    assert F.side is Side.FREQUENCY
    assert F.l2_norm_sq() == pytest.approx(2 * math.pi * f.l2_norm_sq(), rel=1e-8)
