"""The sphere identity in ``R^3``, its ``|g|^2`` corollary and the sharp constant checks.

The physical side is ``|(-Delta_y)^{1/4} T_{1,3}(E g1 conj E g2)|^2`` on a cube
aligned with the frame.  The line integral of ``|E g|^2 ~ |x|^{-2}`` loses
``O(1/L)`` mass to box truncation, so two boxes ``L`` and ``2L`` are combined
by Richardson extrapolation.

The frequency side uses polar coordinates about the line ``pi``.  The kernel
``2 / |xi^perp + zeta^perp|`` blows up where ``sin theta_2 = sin theta_1`` and
the azimuth gap is ``pi``; each of the four ``theta_2`` blocks meets this set
at one corner, which a Duffy split turns into a smooth integrand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..conventions import Field, GridSpec, QuadratureRule1D, apply_radial_multiplier
from ..errors import DomainError
from ..geometry import Frame, reflect_across_line
from ..report import IdentityReport
from ..transforms import SphereDensity, extension_sphere, kplane_transform, sphere_constant_field
from ._common import FourWaveSums, FourWaveWeights, Settings

__all__ = [
    "C_S",
    "verify_sphere_identity",
    "verify_sphere_corollary",
    "sphere_rhs",
    "sphere_lhs",
    "sphere_refinement_study",
    "check_stein_tomas_sphere",
    "check_foschi_sphere",
    "antipodal_sharp",
    "antipodal_form",
    "check_antipodal_chain",
    "InequalityCheck",
    "SphereRun",
]

_ALIGNED = Frame.from_bases([[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


def C_S(n: int = 3) -> float:
    return (2 * math.pi) ** (2 * (n - 1))


def _default_frame(frame: Frame | None) -> Frame:
    frame = Frame.from_line((1.0, 0.0, 0.0)) if frame is None else frame
    if frame.dim != 3 or frame.k != 1:
        raise DomainError("the sphere identity needs a line pi in R^3")
    return frame


def _check_pair(g1: SphereDensity, g2: SphereDensity) -> float:
    if g1.n != 3 or g2.n != 3:
        raise DomainError("only n = 3 is supported")
    if g1.radius != g2.radius:
        raise DomainError("both densities must live on the same sphere")
    return g1.radius


def _box_value(g1, g2, frame: Frame, half_width: float, spacing: float) -> float:
    n = 2 * int(math.ceil(half_width / spacing))
    grid = GridSpec(3, half_width, n)
    E1 = extension_sphere(g1, grid, frame).values
    E2 = E1 if g2 is g1 else extension_sphere(g2, grid, frame).values
    prod = Field(grid, E1 * np.conj(E2))
    del E1, E2
    lines = kplane_transform(prod, _ALIGNED, 1, boundary_tol=None)
    out = apply_radial_multiplier(lines, 0.5, pad=2, crop=False, edge_tol=None)
    return out.l2_norm_sq()


def sphere_lhs(g1: SphereDensity, g2: SphereDensity, frame: Frame | None = None,
               half_width: float = 10.0, spacing: float = 1.0) -> dict:
    """Physical side on boxes ``L`` and ``2L`` and their extrapolation ``2 V(2L) - V(L)``.

    ``|E g1 conj E g2|`` has band limit ``2r``, so any spacing below
    ``pi / (2r)`` samples it exactly; the cube sizes are what matter.
    """
    frame = _default_frame(frame)
    r = _check_pair(g1, g2)
    if not spacing < math.pi / (2 * r):
        raise DomainError(f"spacing {spacing} does not resolve radius {r}")
    v1 = _box_value(g1, g2, frame, half_width, spacing)
    v2 = _box_value(g1, g2, frame, 2 * half_width, spacing)
    return {"lhs": 2 * v2 - v1, "box_L": v1, "box_2L": v2, "half_width": half_width, "spacing": spacing}


def _gl(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def _duffy(n: int, x0: float, x1: float, y0: float, y1: float):
    """Nodes on the rectangle spanned by the corner ``(x0, y0)`` and ``(x1, y1)``.

    Two triangles meeting at the corner are mapped from the unit square with
    Jacobian ``u``, which cancels a ``1/distance`` singularity at the corner.
    """
    u, wu = _gl(n, 0.0, 1.0)
    U, V = np.meshgrid(u, u, indexing="ij")
    W = np.outer(wu, wu)
    A, B = x1 - x0, y1 - y0
    xs = np.concatenate([(x0 + A * U).ravel(), (x0 + A * U * V).ravel()])
    ys = np.concatenate([(y0 + B * U * V).ravel(), (y0 + B * U).ravel()])
    J = (abs(A * B) * U * W).ravel()
    return xs, ys, np.concatenate([J, J])


def _inner_rule(theta1: float, n: int):
    """``(theta_2, gap, weight)`` nodes with the singular corners at ``gap = pi``."""
    lo, hi = min(theta1, math.pi - theta1), max(theta1, math.pi - theta1)
    xs, ys, ws = [], [], []
    for a, b, corner in ((0.0, lo, lo), (lo, 0.5 * math.pi, lo),
                         (0.5 * math.pi, hi, hi), (hi, math.pi, hi)):
        if b - a < 1e-14:
            continue
        far = a if corner == b else b
        for end in (0.0, 2 * math.pi):
            x, y, w = _duffy(n, corner, far, math.pi, end)
            xs.append(x)
            ys.append(y)
            ws.append(w)
    return np.concatenate(xs), np.concatenate(ys), np.concatenate(ws)


def sphere_rhs(g1: SphereDensity, g2: SphereDensity, frame: Frame | None = None, n_block: int = 16,
               n_outer: int | None = None, guard_band: float = 1e-3) -> FourWaveSums:
    """Four-wave sums ``int int K (g1 g2)(conj g2~ g1~) dsigma dsigma`` without the constant.

    ``xi`` runs over Gauss–Legendre polar angles and trapezoid azimuths
    (``n_outer`` each, default ``2 n_block``); ``zeta`` over Duffy blocks.
    Nodes with ``|xi^perp + zeta^perp| < guard_band * r`` are excised.
    """
    frame = _default_frame(frame)
    r = _check_pair(g1, g2)
    n_outer = 2 * n_block if n_outer is None else n_outer
    M = frame.matrix
    t1s, w1s = _gl(n_outer, 0.0, math.pi)
    az = QuadratureRule1D.periodic_trapezoid(n_outer)
    sums = FourWaveSums()
    for t1, w1 in zip(t1s, w1s):
        t2, gap, w2 = _inner_rule(t1, n_block)
        p1 = az.nodes[:, None]
        p2 = p1 + gap[None, :]
        a = r * math.sin(t1) * np.stack(np.broadcast_arrays(np.cos(p1), np.sin(p1)), axis=-1)
        s2 = np.sin(t2)[None, :]
        b = r * np.stack([s2 * np.cos(p2), s2 * np.sin(p2)], axis=-1)
        a = np.broadcast_to(a, b.shape)
        x = a + b
        rho = np.linalg.norm(x, axis=-1)
        keep = rho >= guard_band * r
        safe = np.where(keep[..., None], x, np.array([1.0, 0.0]))
        at = reflect_across_line(a, safe)
        bt = reflect_across_line(b, safe)
        c1 = np.full(b.shape[:-1] + (1,), r * math.cos(t1))
        c2 = np.broadcast_to(r * np.cos(t2)[None, :, None], c1.shape)

        def world(c, p):
            return np.concatenate([c, p], axis=-1) @ M

        xv = np.asarray(g1.density(world(c1, a)), dtype=complex) * \
            np.asarray(g2.density(world(c2, b)), dtype=complex)
        yv = np.asarray(g2.density(world(c1, at)), dtype=complex) * \
            np.asarray(g1.density(world(c2, bt)), dtype=complex)
        K = 2.0 / np.maximum(rho, 1e-300)
        w = (w1 * math.sin(t1)) * az.weights[:, None] * (w2 * np.sin(t2))[None, :] * K
        sums.add(w.ravel(), FourWaveWeights(xv.ravel(), yv.ravel()), keep.ravel())
    return sums


@dataclass
class SphereRun:
    """Both sides of the sphere identity at one discretisation level."""

    lhs: dict
    sums: FourWaveSums
    params: dict

    @property
    def rhs(self) -> float:
        return C_S(3) * self.sums.four_wave.real


def _levels(settings: Settings) -> dict:
    level = int(settings.get("refine", 0))
    scale = 2 ** level
    return {"half_width": settings.get("box", 10.0, 8.0) * scale,
            "spacing": settings.get("spacing", 1.0) / scale,
            "n_block": settings.get("rhs_block", 16, 12) * scale,
            "refine": level}


def _run(g1, g2, frame, settings: Settings) -> SphereRun:
    p = _levels(settings)
    lhs = sphere_lhs(g1, g2, frame, p["half_width"], p["spacing"])
    sums = sphere_rhs(g1, g2, frame, p["n_block"], guard_band=settings.guard_band)
    p.update({"radius": g1.radius, "pi": list(frame.omega), "guard_band": settings.guard_band,
              "quick": settings.quick})
    return SphereRun(lhs, sums, p)


def _diagnostics(run: SphereRun, tol: float) -> tuple:
    sums = run.sums
    C = C_S(3)
    r = run.params["radius"]
    excised = C * sums.excised
    scale = max(abs(run.rhs), 1e-300)
    ratio = run.lhs["lhs"] / scale if run.rhs != 0 else float("nan")
    diag = {"box_L": run.lhs["box_L"], "box_2L": run.lhs["box_2L"],
            "rhs_imag": C * sums.four_wave.imag,
            "corollary_I": C * sums.deficit,
            "corollary_rhs": C * sums.x_sq - C * sums.deficit,
            "corollary_symmetric_rhs": C * 0.5 * (sums.x_sq + sums.y_sq) - C * sums.deficit,
            "corollary_algebra_defect": sums.algebra_defect(),
            "corollary_min_deficit": sums.min_deficit if math.isfinite(sums.min_deficit) else 0.0,
            "excised_fraction": excised / max(C * sums.abs_total + excised, 1e-300)}
    # the stated constant carries no radius dependence, while LHS / RHS scales like r^(4 - 2n)
    if r != 1.0:
        diag["constant_audit"] = {"lhs_over_rhs": ratio, "scaling_prediction": r ** (4 - 2 * 3)}
    inconclusive = excised > tol * scale
    return diag, excised, inconclusive


def verify_sphere_identity(g1: SphereDensity, g2: SphereDensity, frame: Frame | None = None,
                           settings: Settings | None = None) -> IdentityReport:
    """``int_{pi^perp} |(-Delta)^{1/4} T(E g1 conj E g2)|^2 = C_S int int K (four-wave) dsigma dsigma``.

    A guard-band mass above the tolerance budget marks the report inconclusive.
    """
    settings = settings or Settings()
    frame = _default_frame(frame)
    run = _run(g1, g2, frame, settings)
    tol = settings.tol()
    diag, excised, inconclusive = _diagnostics(run, tol)
    return IdentityReport("sphere-identity", run.lhs["lhs"], run.rhs, tol, params=run.params,
                          excised_mass=excised, inconclusive=inconclusive, diagnostics=diag)


def verify_sphere_corollary(g1: SphereDensity, g2: SphereDensity, frame: Frame | None = None,
                            settings: Settings | None = None) -> IdentityReport:
    """``LHS + I = C_S int int K |g1|^2 |g2|^2`` with ``I >= 0``.

    On shared nodes the modulus term is ``C_S sum w (|x|^2 + |y|^2)/2``; that
    the ``|y|^2`` half equals the ``|x|^2`` half is a change of variables, so
    its quadrature gap is reported separately.
    """
    settings = settings or Settings()
    frame = _default_frame(frame)
    run = _run(g1, g2, frame, settings)
    tol = settings.tol()
    diag, excised, inconclusive = _diagnostics(run, tol)
    sums = run.sums
    C = C_S(3)
    modulus = C * 0.5 * (sums.x_sq + sums.y_sq)
    diag.update({"modulus_x_only": C * sums.x_sq,
                 "modulus_swap_gap": abs(sums.x_sq - sums.y_sq) / max(sums.x_sq, 1e-300),
                 "four_wave_rhs": run.rhs,
                 "I_nonnegative": bool(C * sums.deficit >= -1e-12 and sums.min_deficit >= -1e-12)})
    return IdentityReport("sphere-corollary", run.lhs["lhs"], modulus, tol, correction=C * sums.deficit,
                          params=run.params, excised_mass=excised, inconclusive=inconclusive,
                          diagnostics=diag)


def sphere_refinement_study(g1: SphereDensity, g2: SphereDensity, frame: Frame | None = None,
                            settings: Settings | None = None) -> tuple:
    """Identity reports at the given level and one doubling finer, and whether the error fell."""
    settings = settings or Settings()
    base = verify_sphere_identity(g1, g2, frame, settings)
    over = dict(settings.overrides)
    over["refine"] = int(settings.get("refine", 0)) + 1
    finer = Settings(settings.tolerance, settings.quick, settings.guard_band, settings.seed, over)
    fine = verify_sphere_identity(g1, g2, frame, finer)
    return base, fine, bool(fine.rel_err < base.rel_err)


def _radial_l4(radius: float, cutoff: float, order: int = 16) -> float:
    """``4 pi int_0^cutoff |E 1(rho)|^4 rho^2 drho`` on Gauss–Legendre panels of length ``pi / r``."""
    width = math.pi / radius
    panels = int(math.ceil(cutoff / width))
    x, w = np.polynomial.legendre.leggauss(order)
    lo = np.arange(panels)[:, None] * width
    rho = (lo + 0.5 * width * (x[None, :] + 1.0)).ravel()
    wt = np.tile(0.5 * width * w, panels)
    vals = sphere_constant_field(np.stack([rho, 0 * rho, 0 * rho], axis=-1), radius).real
    return float(4 * math.pi * np.sum(wt * vals ** 4 * rho ** 2))


def check_stein_tomas_sphere(settings: Settings | None = None) -> IdentityReport:
    """``||E 1||_{L^4(R^3)}^4 = (2 pi)^4 ||1||_{L^2(S^2)}^4 = 256 pi^6``.

    The radial cutoff doubles until the relative increment drops below
    ``1e-6``; the ``3/(8 rho^2)`` mean tail beyond the last cutoff is added
    in closed form and reported.
    """
    settings = settings or Settings()
    r = 1.0
    cutoff = 64 * math.pi
    value = _radial_l4(r, cutoff)
    while True:
        nxt = _radial_l4(r, 2 * cutoff)
        inc = abs(nxt - value) / abs(nxt)
        value, cutoff = nxt, 2 * cutoff
        if inc < 1e-6:
            break
    tail = 4 * math.pi * (4 * math.pi) ** 4 * 3.0 / (8.0 * cutoff)
    # cross-check the closed-form field against the quadrature extension
    grid = GridSpec(3, 4.0, 16)
    numeric = extension_sphere(SphereDensity(r), grid).values
    closed = sphere_constant_field(grid.points(), r)
    rhs = (2 * math.pi) ** 4 * (4 * math.pi) ** 2
    return IdentityReport("stein-tomas-sphere", value + tail, rhs, settings.tol(1e-3),
                          params={"cutoff": cutoff, "panel_order": 16},
                          diagnostics={"tail": tail, "last_increment": inc,
                                       "field_check_max_abs": float(np.max(np.abs(numeric - closed)))})


def _rotated_rule(n: int):
    """Polar angle ``gamma`` from ``-xi`` and azimuth ``psi``: nodes and weights with the ``sin`` factor."""
    g, wg = _gl(n, 0.0, math.pi)
    ps = QuadratureRule1D.periodic_trapezoid(2 * n)
    G, P = np.meshgrid(g, ps.nodes, indexing="ij")
    W = np.outer(wg * np.sin(g), ps.weights)
    return G.ravel(), P.ravel(), W.ravel()


def _sphere_nodes(radius: float, n: int):
    g, wg = _gl(n, 0.0, math.pi)
    ps = QuadratureRule1D.periodic_trapezoid(2 * n)
    G, P = np.meshgrid(g, ps.nodes, indexing="ij")
    pts = radius * np.stack([np.sin(G) * np.cos(P), np.sin(G) * np.sin(P), np.cos(G)], axis=-1)
    return pts.reshape(-1, 3), np.outer(wg * np.sin(g), ps.weights).ravel()


def antipodal_form(h: SphereDensity, n: int = 32) -> float:
    """``int int h(xi) h(zeta) / |xi + zeta| dsigma dsigma`` for a real density ``h``.

    ``zeta`` is parametrised by its angle ``gamma`` from ``-xi``, where
    ``|xi + zeta| = 2 r sin(gamma/2)`` cancels against ``sin gamma``.
    """
    r = h.radius
    xs, wx = _sphere_nodes(r, n)
    G, P, W = _rotated_rule(n)
    hx = np.asarray(h.density(xs)).real
    total = 0.0
    for x, w, hv in zip(xs, wx, hx):
        pole = -x / r
        e1 = np.cross(pole, [1.0, 0.0, 0.0] if abs(pole[0]) < 0.9 else [0.0, 1.0, 0.0])
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(pole, e1)
        z = r * (np.cos(G)[:, None] * pole + np.sin(G)[:, None] * (np.cos(P)[:, None] * e1
                                                                   + np.sin(P)[:, None] * e2))
        dist = np.linalg.norm(x + z, axis=-1)
        total += w * hv * float(np.sum(W * np.asarray(h.density(z)).real / dist))
    return total


def check_foschi_sphere(settings: Settings | None = None) -> IdentityReport:
    """``int int |xi + zeta|^{-1} dsigma dsigma = (4 pi)^2`` on the unit sphere.

    By rotation invariance the form is ``4 pi * 2 pi`` times a 1-D integral
    over the angle ``gamma`` between ``-xi`` and ``zeta``.
    """
    settings = settings or Settings()
    g, wg = _gl(64, 0.0, math.pi)
    dist = np.sqrt(2.0 - 2.0 * np.cos(g))
    value = 4 * math.pi * 2 * math.pi * float(np.sum(wg * np.sin(g) / dist))
    full = antipodal_form(SphereDensity(1.0), n=12)
    return IdentityReport("foschi-sphere", value, (4 * math.pi) ** 2, settings.tol(1e-4) if settings.tolerance
                          else 1e-4, params={"angle_nodes": 64},
                          diagnostics={"surface_quadrature": full})


def antipodal_sharp(h: SphereDensity, check_nodes: bool = True) -> SphereDensity:
    """``h#(xi) = sqrt((h(xi) + h(-xi)) / 2)`` for a nonnegative density ``h``.

    Negative or complex values raise DomainError, on the quadrature nodes at
    construction and at every later evaluation.
    """

    def _valid(v):
        v = np.asarray(v)
        if np.iscomplexobj(v):
            if np.any(np.abs(v.imag) > 1e-12 * np.maximum(1.0, np.abs(v.real))):
                raise DomainError("antipodal_sharp needs a real density")
            v = v.real
        if np.any(v < 0):
            raise DomainError("antipodal_sharp needs a nonnegative density")
        return v

    def sharp(p):
        p = np.asarray(p, dtype=float)
        return np.sqrt(0.5 * (_valid(h.density(p)) + _valid(h.density(-p)))) + 0j

    if check_nodes:
        pts, _ = h.frame_nodes()
        _valid(h.density(pts))
    return SphereDensity(h.radius, sharp, h.n, h.n_polar, h.n_azim)


@dataclass(frozen=True)
class InequalityCheck:
    """``smaller <= larger`` up to a relative slack."""

    name: str
    smaller: float
    larger: float
    slack: float
    diagnostics: dict

    @property
    def holds(self) -> bool:
        return bool(self.smaller <= self.larger * (1 + self.slack))

    def as_dict(self) -> dict:
        return {"name": self.name, "smaller": self.smaller, "larger": self.larger,
                "slack": self.slack, "holds": self.holds, "diagnostics": self.diagnostics}


def check_antipodal_chain(g: SphereDensity, n: int = 24, slack: float = 1e-8) -> InequalityCheck:
    """``int int |g|^2 |g|^2 / |xi + zeta| <= int int (g#)^2 (g#)^2 / |xi + zeta|`` with ``h = |g|^2``.

    Also reports ``int (g#)^2 = int |g|^2`` and the Foschi bound
    ``int int (g#)^2 (g#)^2 / |xi + zeta| <= ||g||^4`` for antipodally symmetric data.
    """
    h = SphereDensity(g.radius, lambda p: np.abs(g.density(p)) ** 2 + 0j, g.n, g.n_polar, g.n_azim)
    hs = antipodal_sharp(h)
    sq = SphereDensity(g.radius, lambda p: hs.density(p) ** 2, g.n, g.n_polar, g.n_azim)
    a = antipodal_form(h, n)
    b = antipodal_form(sq, n)
    mass_h = h.integrate().real
    mass_sq = sq.integrate().real
    return InequalityCheck("antipodal-chain", a, b, slack,
                           {"mass_h": mass_h, "mass_sharp_sq": mass_sq,
                            "mass_rel_gap": abs(mass_h - mass_sq) / max(abs(mass_h), 1e-300),
                            "foschi_bound": mass_h ** 2, "foschi_bound_holds": bool(b <= mass_h ** 2 * (1 + slack))})
