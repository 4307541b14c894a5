import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kplane_bilinear.errors import (DegenerateContinuumError, DomainError, EmptyIntersectionError,
                                    NonTimelikeError, WrongSheetError)
from kplane_bilinear.geometry import (CirclePair, Frame, HyperbolaPair, canonical_direction, circle_points,
                                      hyperbola_points, hyperbola_reflect, lorentz_boost, lorentz_gamma,
                                      reflect_across_line, rotation_2d)

s2 = math.sqrt(2) / 2


def test_circle_equal_radii():
    p = circle_points(CirclePair(1, 1), (math.sqrt(2), 0))
    assert np.allclose(p.p2_plus, (s2, s2), atol=1e-14)
    assert np.allclose(p.p2_minus, (s2, -s2), atol=1e-14)
    assert np.allclose(p.p1_plus, (s2, s2), atol=1e-14)
    assert np.allclose(p.p1_minus, (s2, -s2), atol=1e-14)
    assert not p.tangent


def test_circle_tangent():
    p = circle_points(CirclePair(1, 2), (3, 0))
    assert p.tangent
    for q in (p.p1_plus, p.p1_minus):
        assert np.allclose(q, (1, 0), atol=1e-12)
    for q in (p.p2_plus, p.p2_minus):
        assert np.allclose(q, (2, 0), atol=1e-12)


def test_circle_errors():
    with pytest.raises(EmptyIntersectionError):
        circle_points(CirclePair(1, 2), (4, 0))
    with pytest.raises(EmptyIntersectionError):
        circle_points(CirclePair(1, 2), (0, 0))
    with pytest.raises(DegenerateContinuumError):
        circle_points(CirclePair(1, 1), (0, 0))
    with pytest.raises(DomainError):
        CirclePair(2, 1)


circle_cases = st.tuples(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(0.02, 0.98),
                         st.floats(0, 2 * math.pi))


def _circle_case(case):
    a, b, u, ang = case
    r1, r2 = sorted((a, b))
    rho = (r2 - r1) + u * 2 * r1
    x = rho * np.array([math.cos(ang), math.sin(ang)])
    return r1, r2, x


@given(circle_cases)
def test_circle_properties(case):
    r1, r2, x = _circle_case(case)
    if np.linalg.norm(x) < 1e-3:
        return
    p = circle_points(CirclePair(r1, r2), x)
    assert np.allclose(p.p1_plus + p.p2_minus, x, atol=1e-10)
    assert np.allclose(p.p1_minus + p.p2_plus, x, atol=1e-10)
    for q, r in ((p.p1_plus, r1), (p.p1_minus, r1), (p.p2_plus, r2), (p.p2_minus, r2)):
        assert abs(np.linalg.norm(q) - r) <= 1e-10 * max(1, r)
    vx = np.array([-x[1], x[0]]) / np.linalg.norm(x)
    assert p.p2_plus @ vx >= -1e-12 and p.p2_minus @ vx <= 1e-12
    assert abs(p.p1_plus @ vx + p.p1_minus @ vx) <= 1e-10
    assert np.allclose(reflect_across_line(p.p1_plus, x), p.p1_minus, atol=1e-10)


@given(circle_cases, st.floats(0, 2 * math.pi))
def test_circle_equivariance(case, angle):
    r1, r2, x = _circle_case(case)
    if np.linalg.norm(x) < 1e-3:
        return
    R = rotation_2d(angle)
    p = circle_points(CirclePair(r1, r2), x)
    q = circle_points(CirclePair(r1, r2), R @ x)
    for name in ("p1_plus", "p1_minus", "p2_plus", "p2_minus"):
        assert np.allclose(R @ getattr(p, name), getattr(q, name), atol=1e-9)


def test_lorentz_gamma_examples():
    assert lorentz_gamma((3, 5)) == pytest.approx(math.log(2), rel=1e-15)
    assert lorentz_gamma((0, 2.5)) == 0.0
    assert lorentz_gamma((-3, 5)) == pytest.approx(-math.log(2), rel=1e-15)
    with pytest.raises(NonTimelikeError):
        lorentz_gamma((5, 5))


def test_lorentz_boost_examples():
    assert np.allclose(lorentz_boost(math.log(2), (3, 5)), (0, 4), atol=1e-14)
    p = np.array([0.3, 2.0])
    assert np.array_equal(lorentz_boost(0.0, p), p)


@given(st.floats(-4, 4), st.floats(-5, 5), st.floats(0.1, 5))
def test_boost_group_and_invariance(g, x1, excess):
    p = np.array([x1, abs(x1) + excess])
    back = lorentz_boost(-g, lorentz_boost(g, p))
    assert np.allclose(back, p, rtol=1e-12, atol=1e-12 * np.abs(p).max() * math.cosh(g) ** 2)
    q = lorentz_boost(g, p)
    s = p[1] ** 2 - p[0] ** 2
    assert abs((q[1] ** 2 - q[0] ** 2) - s) <= 1e-12 * math.cosh(g) ** 2 * (p @ p)


def test_hyperbola_on_axis():
    p = hyperbola_points(HyperbolaPair(1, 1), (0, math.sqrt(5)))
    r = math.sqrt(5) / 2
    assert np.allclose(p.q1_plus, (0.5, r), atol=1e-14)
    assert np.allclose(p.q1_minus, (-0.5, r), atol=1e-14)
    assert np.allclose(p.q2_minus, (-0.5, r), atol=1e-14)
    assert np.allclose(p.q2_plus, (0.5, r), atol=1e-14)


def test_hyperbola_tangent_and_errors():
    p = hyperbola_points(HyperbolaPair(1, 1), (0, 2))
    assert p.tangent
    for q in (p.q1_plus, p.q1_minus, p.q2_plus, p.q2_minus):
        assert np.allclose(q, (0, 1), atol=1e-12)
    with pytest.raises(EmptyIntersectionError):
        hyperbola_points(HyperbolaPair(1, 1), (0, 1.5))
    with pytest.raises(WrongSheetError):
        hyperbola_points(HyperbolaPair(1, 1), (0, -3))


def test_hyperbola_boosted():
    x = np.array([3.0, 5.0])
    p = hyperbola_points(HyperbolaPair(1, 2), x)
    assert np.allclose(p.q1_plus + p.q2_minus, x, atol=1e-10)
    assert np.allclose(p.q1_minus + p.q2_plus, x, atol=1e-10)


@given(st.floats(0.3, 2), st.floats(0.3, 2), st.floats(1.05, 4), st.floats(-2, 2))
def test_hyperbola_properties(a, b, scale, g):
    m1, m2 = sorted((a, b))
    x = lorentz_boost(g, np.array([0.0, scale * (m1 + m2)]))
    p = hyperbola_points(HyperbolaPair(m1, m2), x)
    tol = 1e-10 * max(1.0, np.abs(x).max())
    assert np.allclose(p.q1_plus + p.q2_minus, x, atol=tol)
    assert np.allclose(p.q1_minus + p.q2_plus, x, atol=tol)
    for q, m in ((p.q1_plus, m1), (p.q1_minus, m1), (p.q2_plus, m2), (p.q2_minus, m2)):
        assert abs(q[1] - math.hypot(m, q[0])) <= tol
    # in the rest frame of x the + label sits on the positive e1 side
    assert lorentz_boost(lorentz_gamma(x), p.q2_plus)[0] >= -tol


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 2), st.floats(0.5, 2))
def test_hyperbola_reflect_preserves_sum(a, b, ma, mb):
    at, bt = hyperbola_reflect(a, b, ma, mb)
    assert at + bt == pytest.approx(a + b, abs=1e-9)
    assert math.hypot(ma, at) + math.hypot(mb, bt) == pytest.approx(math.hypot(ma, a) + math.hypot(mb, b),
                                                                  rel=1e-10)


def test_canonical_direction_and_frames():
    w = canonical_direction((0, -2))
    assert np.allclose(w, (0, 1))
    with pytest.raises(DomainError):
        canonical_direction((0, 0))
    f = Frame.from_line((1, 1, 1))
    assert f.k == 1 and f.dim == 3
    assert np.allclose(f.matrix @ f.matrix.T, np.eye(3))
    x = np.array([0.3, -1.2, 2.0])
    a, b = f.decompose(x)
    assert np.allclose(f.recompose(a, b), x)
    h = Frame.from_direction((0.6, 0.8))
    assert np.allclose(h.omega, (0.6, 0.8)) and h.k == 1
    with pytest.raises(DomainError):
        Frame.from_bases([[1, 0]], [[1, 0]])


@settings(max_examples=30)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_frame_components_orthogonal(v):
    if np.linalg.norm(v) < 1e-3:
        return
    f = Frame.from_line(v)
    x = np.array([0.5, -0.25, 1.0])
    p, q = f.components(x)
    assert abs(p @ q) < 1e-12
    assert np.allclose(p + q, x)
