import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.transform import Rotation

from kplane_bilinear.errors import DomainError, SingularKernelError
from kplane_bilinear.geometry import Frame
from kplane_bilinear.kernels import (KernelInput, angular_average_abs_inner, angular_average_abs_inner_numeric,
                                     hyperboloid_form_study, kernel_hyperboloid, kernel_hyperboloid_angle,
                                     kernel_hyperboloid_averaged, kernel_hyperboloid_reflected_equivalence,
                                     kernel_sphere, kernel_sphere_averaged, kernel_sphere_wedge_equivalence,
                                     sphere_form_study)

E1 = Frame.from_line([1.0, 0.0, 0.0])


def sph(xi, zeta, frame=E1, r=1.0):
    return KernelInput("sphere", frame, np.asarray(xi, float), np.asarray(zeta, float), r)


def hyp(xi, zeta, omega=(1.0, 0.0), m=1.0):
    return KernelInput("hyperboloid", Frame.from_direction(omega), np.asarray(xi, float),
                       np.asarray(zeta, float), m)


def test_kernel_sphere_examples():
    assert kernel_sphere(sph((0, 1, 0), (0, 0, 1))) == pytest.approx(math.sqrt(2), rel=1e-15)
    with pytest.raises(SingularKernelError):
        kernel_sphere(sph((0, 1, 0), (0, -1, 0)))
    c, s = math.cos(0.4), math.sin(0.4)
    assert kernel_sphere(sph((c, s, 0), (c, s, 0))) == pytest.approx(1 / s, rel=1e-14)


def test_kernel_input_validation():
    with pytest.raises(DomainError):
        sph((0, 2, 0), (0, 0, 1))
    with pytest.raises(DomainError):
        KernelInput("torus", E1, np.zeros(3), np.zeros(3))


def test_wedge_examples():
    w, d = kernel_sphere_wedge_equivalence(sph((0, 1, 0), (0, 0, 1)))
    assert w == pytest.approx(math.sqrt(2), rel=1e-12) and d == pytest.approx(math.sqrt(2), rel=1e-12)
    # parallel perp parts: the reflection through xi^perp + zeta^perp fixes both points
    c, s = math.cos(0.7), math.sin(0.7)
    w, d = kernel_sphere_wedge_equivalence(sph((c, s, 0), (-c, s, 0)))
    assert w == pytest.approx(d, rel=1e-6)


def test_sphere_form_study():
    assert sphere_form_study(seed=0, count=100)["max_rel_spread"] <= 1e-10


def test_kernel_hyperboloid_examples():
    assert kernel_hyperboloid(hyp((0, 0), (0, 0))) == pytest.approx(1.0, rel=1e-15)
    assert kernel_hyperboloid(hyp((1, 0), (-1, 0))) == pytest.approx(math.sqrt(2) / 2, rel=1e-15)
    a = kernel_hyperboloid(hyp((0.3, 1.2), (-0.8, 0.5), (0.6, 0.8)))
    b = kernel_hyperboloid(hyp((0.3, 1.2), (-0.8, 0.5), (-0.6, -0.8)))
    assert a == b


def test_hyperboloid_forms_study():
    assert hyperboloid_form_study(seed=0, count=100)["max_rel_spread"] <= 1e-8


def test_hyperboloid_symmetric_and_equal_points():
    forms = kernel_hyperboloid_reflected_equivalence(hyp((0.4, 0.7), (-0.4, 0.7)))
    assert max(forms) - min(forms) <= 1e-8 * max(forms)
    xi = np.array([0.5, -0.3])
    forms = kernel_hyperboloid_reflected_equivalence(hyp(xi, xi))
    phi = math.sqrt(1 + xi @ xi)
    expected = 2 * 2 * phi / (4 * phi ** 2 - 4 * xi[0] ** 2)
    assert forms[1] == pytest.approx(expected, rel=1e-14)
    assert forms[2] == pytest.approx(expected, rel=1e-6)
    assert forms[0] == pytest.approx(expected, rel=1e-6)


vec2 = st.tuples(st.floats(-3, 3), st.floats(-3, 3))


@given(vec2, vec2, st.floats(0, 2 * math.pi), st.floats(0.3, 3))
def test_hyperboloid_positive_symmetric(xi, zeta, th, m):
    w = (math.cos(th), math.sin(th))
    k = kernel_hyperboloid(hyp(xi, zeta, w, m))
    assert k > 0
    assert kernel_hyperboloid(hyp(zeta, xi, w, m)) == pytest.approx(k, rel=1e-14)
    refl, compact, ang = kernel_hyperboloid_reflected_equivalence(hyp(xi, zeta, w, m))
    assert compact == k
    assert ang == pytest.approx(k, rel=1e-6) and refl == pytest.approx(k, rel=1e-6)
    assert kernel_hyperboloid_angle(hyp(xi, zeta, w, m)) > 0


def unit(v):
    v = np.asarray(v, float)
    return v / np.linalg.norm(v)


unit3 = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(lambda v: np.linalg.norm(v) > 0.1)


@settings(max_examples=60)
@given(unit3, unit3, unit3, st.integers(0, 2 ** 31))
def test_sphere_kernel_positive_symmetric_covariant(a, b, w, seed):
    xi, zeta = unit(a), unit(b)
    frame = Frame.from_line(w)
    try:
        k = kernel_sphere(sph(xi, zeta, frame))
    except SingularKernelError:
        return
    if k > 1e6:
        return
    assert k > 0
    assert kernel_sphere(sph(zeta, xi, frame)) == pytest.approx(k, rel=1e-13)
    R = Rotation.random(random_state=seed).as_matrix()
    kr = kernel_sphere(sph(R @ xi, R @ zeta, frame.rotated(R)))
    assert kr == pytest.approx(k, rel=1e-9)


def test_sphere_averaged():
    xi = unit([0.2, -0.5, 0.8])
    num, ana = kernel_sphere_averaged(xi, xi)
    assert ana == pytest.approx(math.pi, rel=1e-15)
    assert num == pytest.approx(ana, rel=1e-3)
    zeta = unit([0.9, 0.1, -0.3])
    num, ana = kernel_sphere_averaged(xi, zeta, samples=10_000)
    assert abs(num - ana) <= 1e-3 * ana
    with pytest.raises(SingularKernelError):
        kernel_sphere_averaged(xi, -xi)


@settings(max_examples=20)
@given(st.integers(0, 2 ** 31))
def test_sphere_averaged_rotation_invariant(seed):
    R = Rotation.random(random_state=seed).as_matrix()
    xi, zeta = unit([0.2, -0.5, 0.8]), unit([0.9, 0.1, -0.3])
    a = kernel_sphere_averaged(xi, zeta, samples=400)
    b = kernel_sphere_averaged(R @ xi, R @ zeta, samples=400)
    assert b[1] == pytest.approx(a[1], rel=1e-10)
    assert b[0] == pytest.approx(a[0], rel=1e-10)


def test_hyperboloid_averaged():
    assert kernel_hyperboloid_averaged([0, 0], [0, 0], 1.0) == pytest.approx(math.pi, rel=1e-14)
    assert kernel_hyperboloid_averaged([0, 0], [0, 0], 2.0) == pytest.approx(math.pi / 2, rel=1e-14)
    xi, zeta = np.array([0.7, -0.2]), np.array([0.1, 1.3])
    a = kernel_hyperboloid_averaged(xi, zeta, 1.0, samples=128)
    b = kernel_hyperboloid_averaged(xi, zeta, 1.0, samples=256)
    assert abs(a - b) <= 1e-4 * b
    c, s = math.cos(1.1), math.sin(1.1)
    R = np.array([[c, -s], [s, c]])
    assert kernel_hyperboloid_averaged(R @ xi, R @ zeta, 1.0, samples=256) == pytest.approx(b, rel=1e-10)


def test_angular_average_abs_inner():
    assert angular_average_abs_inner([1.0, 0.0]) == pytest.approx(4.0, rel=1e-15)
    assert angular_average_abs_inner([0.0, 0.0, 1.0]) == pytest.approx(2 * math.pi, rel=1e-15)
    assert angular_average_abs_inner([0.0, 0.0]) == 0.0
    for v in ([0.3, -1.1], [0.2, 0.4, -0.9]):
        assert angular_average_abs_inner_numeric(v) == pytest.approx(angular_average_abs_inner(v), rel=1e-10)
    with pytest.raises(DomainError):
        angular_average_abs_inner([1.0])
