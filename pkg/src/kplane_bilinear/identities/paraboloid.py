"""Paraboloid identities: PV with its J term, the honest bilinear identity, OT and PV constants.

``u = E f`` is the paraboloid extension of ``f = u0^check``, which solves the
free Schrodinger equation with data ``u0``.  Physical-side integrals are
taken slice by slice in time on a space grid, in frame coordinates
``(x^pi, s)``, whose half-width grows with ``|t|`` at the largest group
velocity ``2R``; the Radon transform is then a sum over the first axis.
"""

from __future__ import annotations

import math

import numpy as np

from ..conventions import QuadratureRule1D, sphere_area
from ..errors import DomainError, TruncationError
from ..geometry import Frame
from ..report import IdentityReport
from ..transforms import ParaboloidFunctionRd, direction_samples, extension_slice
from ._common import Settings, graded_time_rule, s_derivative_norm, space_grid, time_integral

__all__ = [
    "verify_pv_identity",
    "verify_honest_paraboloid",
    "honest_paraboloid_rhs",
    "honest_corollary_term",
    "pv_rhs",
    "pv_algebraic_check",
    "ot_recovery",
    "check_constants",
    "ot_constant",
    "pv_constant",
]

_BOUNDARY_TOL = 1e-8


def ot_constant(d: int) -> float:
    return 2.0 ** (-d) * math.pi ** ((2 - d) / 2) / math.gamma(d / 2)


def pv_constant(d: int) -> float:
    return 2.0 ** (-3 * d) * math.pi ** ((1 - 5 * d) / 2) / math.gamma((d + 1) / 2)


def _frame(omega, d: int) -> Frame:
    w = np.asarray(omega, dtype=float)
    if w.shape != (d,):
        raise DomainError(f"omega must be a vector in R^{d}")
    return Frame.from_direction(w)


def _slice_grid(F: ParaboloidFunctionRd, t: float, x0: float):
    R = F.support_radius
    dx = 0.9 * math.pi / R
    return space_grid(x0 + 2.0 * R * abs(t), dx)


def _edge_mass(values: np.ndarray) -> float:
    amp = np.abs(values)
    peak = amp.max()
    if peak == 0:
        return 0.0
    edge = max(amp[0].max(), amp[-1].max(), amp[:, 0].max(), amp[:, -1].max())
    return float(edge / peak)


def _with_derivative(F: ParaboloidFunctionRd, omega) -> ParaboloidFunctionRd:
    w = np.asarray(omega, dtype=float)

    def df(xi):
        return 1j * (np.asarray(xi) @ w) * np.asarray(F.f(xi), dtype=complex)

    return ParaboloidFunctionRd(df, F.d, F.support_radius, F.vertex_offset)


def _paraboloid_lhs(F1, F2, frame, settings: Settings, *, exponent: float, with_j: bool = False):
    """Time-integrated ``||D_s^exponent R(E1 conj E2)||^2`` and, if asked, ``J``."""
    T = settings.get("time_horizon", 8.0, 4.0)
    levels = settings.get("time_levels", 7, 6)
    x0 = settings.get("space_margin", 10.0)
    rule = graded_time_rule(T, levels)
    same = F2 is F1
    dF = _with_derivative(F1, frame.omega) if with_j else None
    main_vals, j_vals, worst_edge = [], [], 0.0
    for t in rule.nodes:
        space = _slice_grid(F1, t, x0)
        E1 = extension_slice(F1, space, t, frame).values
        E2 = E1 if same else extension_slice(F2, space, t, frame).values
        worst_edge = max(worst_edge, _edge_mass(E1), _edge_mass(E2))
        h = E1 * np.conj(E2)
        dx = space.spacing[0]
        main_vals.append(s_derivative_norm(h.sum(axis=0) * dx, space.half_width[1], exponent))
        if with_j:
            dE = extension_slice(dF, space, t, frame).values
            A = (np.abs(E1) ** 2).sum(axis=0) * dx
            B = (np.abs(dE) ** 2).sum(axis=0) * dx
            C = (np.conj(E1) * dE).sum(axis=0) * dx
            j_vals.append(2.0 * float(np.sum(A * B - np.abs(C) ** 2)) * space.spacing[1])
    if worst_edge > _BOUNDARY_TOL:
        raise TruncationError(f"extension reaches the slice boundary at {worst_edge:.2e} of its peak")
    decay = 3 if float(exponent) == 1.0 else 2
    main, tail = time_integral(rule, main_vals, T, decay)
    out = {"main": main, "tail": tail, "lhs": main + tail, "boundary_ratio": worst_edge,
           "time_horizon": T, "time_nodes": len(rule)}
    if with_j:
        jm, jt = time_integral(rule, j_vals, T, 3)
        out.update(j=jm + jt, j_tail=jt, j_min_slice=float(min(j_vals)))
    return out


def _frame_tensor(F: ParaboloidFunctionRd, frame: Frame, n: int):
    """``f`` on a Gauss–Legendre tensor grid in frame coordinates ``[p, a]`` (d = 2)."""
    R = F.support_radius
    rule = QuadratureRule1D.gauss_legendre(n, -R, R)
    P, A = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    world = np.stack([P, A], axis=-1) @ frame.matrix
    return np.asarray(F.f(world), dtype=complex), rule


def honest_paraboloid_rhs(F1, F2, frame: Frame, n: int = 64) -> complex:
    """``(2 pi)^{2d}/2 int int G1(p, q) conj(G2(p, q)) dp dq``, ``G_j = int f_j(p, a) conj f_j(q, a) da``."""
    if F1.d != 2:
        raise DomainError("the honest paraboloid RHS is implemented for d = 2")
    f1, rule = _frame_tensor(F1, frame, n)
    f2, _ = _frame_tensor(F2, frame, n)
    w = rule.weights
    G1 = (f1 * w[None, :]) @ np.conj(f1).T
    G2 = (f2 * w[None, :]) @ np.conj(f2).T
    return (2 * math.pi) ** 4 / 2 * complex(np.sum(np.outer(w, w) * G1 * np.conj(G2)))


def honest_corollary_term(F1, F2, frame: Frame, n: int = 48) -> tuple:
    """``I_omega = (2 pi)^{2d}/4 int |f1(p,a) f2(q,b) - f1(q,a) f2(p,b)|^2`` and ``||f1||^2 ||f2||^2``."""
    f1, rule = _frame_tensor(F1, frame, n)
    f2, _ = _frame_tensor(F2, frame, n)
    w = rule.weights
    total = 0.0
    for i in range(n):
        # X[a, q, b] = f1(p_i, a) f2(q, b) and Y[a, q, b] = f1(q, a) f2(p_i, b)
        X = f1[i][:, None, None] * f2[None, :, :]
        Y = f1.T[:, :, None] * f2[i][None, None, :]
        total += w[i] * float(np.einsum("a,q,b,aqb->", w, w, w, np.abs(X - Y) ** 2))
    n1 = float(w @ (np.abs(f1) ** 2) @ w)
    n2 = float(w @ (np.abs(f2) ** 2) @ w)
    return (2 * math.pi) ** 4 / 4 * total, n1 * n2


def pv_rhs(F: ParaboloidFunctionRd, frame: Frame, n: int = 80) -> float:
    """``pi (2 pi)^{-(2d+1)} int int |(xi - eta).omega| |u0^(xi)|^2 |u0^(eta)|^2``.

    With ``u0^(xi) = (2 pi)^d f(-xi)`` this is
    ``pi (2 pi)^{2d-1} int int |a - b| rho(a) rho(b) da db`` for the marginal
    ``rho(a) = int |f(p, a)|^2 dp``; the ``b`` integral is split at ``a``.
    """
    if F.d != 2:
        raise DomainError("pv_rhs is implemented for d = 2")
    R = F.support_radius
    rule = QuadratureRule1D.gauss_legendre(n, -R, R)

    def rho(a):
        P, A = np.meshgrid(rule.nodes, a, indexing="ij")
        vals = np.abs(np.asarray(F.f(np.stack([P, A], axis=-1) @ frame.matrix))) ** 2
        return rule.weights @ vals

    ra = rho(rule.nodes)
    total = 0.0
    for a, wa, r in zip(rule.nodes, rule.weights, ra):
        for lo, hi in ((-R, a), (a, R)):
            sub = QuadratureRule1D.gauss_legendre(n, lo, hi)
            total += wa * r * float(sub.weights @ (np.abs(a - sub.nodes) * rho(sub.nodes)))
    d = F.d
    return math.pi * (2 * math.pi) ** (2 * d - 1) * total


def pv_algebraic_check(samples: int = 100_000, seed: int = 0) -> float:
    """Largest violation of the constrained algebraic step over random quadruples.

    Under ``xi + zeta = eta + mu`` and ``xi^2 + zeta^2 = eta^2 + mu^2`` (the
    omega components) the solutions are ``{eta, mu} = {xi, zeta}``; on them
    ``|xi-eta||zeta-mu| + (zeta mu - zeta eta - xi mu + xi eta) = |xi-mu|^2``.
    The violation is relative to ``max(1, (|xi| + |zeta|)^2)``.
    """
    rng = np.random.default_rng(seed)
    xi = rng.normal(size=samples) * 3
    zeta = rng.normal(size=samples) * 3
    swap = rng.random(samples) < 0.5
    eta = np.where(swap, zeta, xi)
    mu = np.where(swap, xi, zeta)
    lhs = np.abs(xi - eta) * np.abs(zeta - mu) + (zeta * mu - zeta * eta - xi * mu + xi * eta)
    rhs = (xi - mu) ** 2
    scale = np.maximum(1.0, (np.abs(xi) + np.abs(zeta)) ** 2)
    return float(np.max(np.abs(lhs - rhs) / scale))


def verify_pv_identity(u0: ParaboloidFunctionRd, omega=(0.0, 1.0), settings: Settings | None = None,
                       *, algebraic_samples: int = 100_000) -> IdentityReport:
    """``int int |d_s R(|u|^2)|^2 ds dt + J_omega(u)`` against the weighted ``|u0^|^2`` integral.

    ``u0`` carries the extension density ``u0^check``.  The report's
    correction is ``J``; its diagnostics hold the algebraic-step check.
    """
    settings = settings or Settings()
    if u0.d != 2:
        raise DomainError("verify_pv_identity supports d = 2")
    frame = _frame(omega, 2)
    side = _paraboloid_lhs(u0, u0, frame, settings, exponent=1.0, with_j=True)
    n = settings.get("rhs_nodes", 80, 48)
    rhs = pv_rhs(u0, frame, n)
    rhs_coarse = pv_rhs(u0, frame, n // 2)
    algebra = pv_algebraic_check(algebraic_samples, settings.seed)
    return IdentityReport(
        "pv", side["lhs"], rhs, settings.tol(), correction=side["j"],
        params={"omega": list(frame.omega), "rhs_nodes": n, "time_horizon": side["time_horizon"],
                "time_nodes": side["time_nodes"], "quick": settings.quick},
        diagnostics={"lhs_tail": side["tail"], "j": side["j"], "j_tail": side["j_tail"],
                     "j_min_slice": side["j_min_slice"], "rhs_coarse": rhs_coarse,
                     "boundary_ratio": side["boundary_ratio"],
                     "algebraic_max_violation": algebra, "algebraic_samples": algebraic_samples})


def verify_honest_paraboloid(f1: ParaboloidFunctionRd, f2: ParaboloidFunctionRd, omega=(0.0, 1.0),
                             settings: Settings | None = None) -> IdentityReport:
    """``int int |D_s^{1/2} R(E f1 conj E f2)|^2 ds dt`` against the Gram-matrix RHS.

    Diagnostics carry the imaginary part of the RHS, the corollary term
    ``I_omega`` and the split ``(2 pi)^{2d}/2 ||f1||^2 ||f2||^2 - I_omega``.
    """
    settings = settings or Settings()
    if f1.d != 2 or f2.d != 2:
        raise DomainError("verify_honest_paraboloid supports d = 2")
    frame = _frame(omega, 2)
    side = _paraboloid_lhs(f1, f2, frame, settings, exponent=0.5)
    n = settings.get("rhs_nodes", 64, 40)
    rhs = honest_paraboloid_rhs(f1, f2, frame, n)
    corr, norms = honest_corollary_term(f1, f2, frame, settings.get("corollary_nodes", 40, 24))
    split = (2 * math.pi) ** 4 / 2 * norms - corr
    return IdentityReport(
        "honest-paraboloid", side["lhs"], rhs.real, settings.tol(),
        params={"omega": list(frame.omega), "rhs_nodes": n, "time_horizon": side["time_horizon"],
                "time_nodes": side["time_nodes"], "quick": settings.quick},
        diagnostics={"lhs_tail": side["tail"], "rhs_imag": rhs.imag,
                     "rhs_imag_rel": abs(rhs.imag) / max(abs(rhs.real), 1e-300),
                     "corollary_I": corr, "corollary_rhs": split,
                     "corollary_rel_gap": abs(split - rhs.real) / max(abs(rhs.real), 1e-300),
                     "boundary_ratio": side["boundary_ratio"]})


def ot_recovery(u0: ParaboloidFunctionRd, directions: int = 16, n: int = 64) -> dict:
    """Average the honest RHS over ``omega`` and normalise as the OT constant.

    ``(2 pi)^{1-d} |S^{d-1}|/2 <RHS_omega> / ||u0||^4`` with ``||u0||^2 = (2 pi)^d ||f||^2``;
    for Gaussian data this equals ``OT(d)``.
    """
    d = u0.d
    dirs, _ = direction_samples(d, directions)
    vals = [honest_paraboloid_rhs(u0, u0, Frame.from_direction(w), n).real for w in dirs]
    _, rule = _frame_tensor(u0, Frame.from_direction(dirs[0]), n)
    f, _ = _frame_tensor(u0, Frame.from_direction(dirs[0]), n)
    fnorm = float(rule.weights @ (np.abs(f) ** 2) @ rule.weights)
    u0_norm_sq = (2 * math.pi) ** d * fnorm
    value = (2 * math.pi) ** (1 - d) * sphere_area(d - 1) / 2 * float(np.mean(vals)) / u0_norm_sq ** 2
    return {"value": value, "ot": ot_constant(d), "rel_err": abs(value - ot_constant(d)) / ot_constant(d),
            "directions": directions, "spread": float(np.ptp(vals) / np.mean(vals))}


def _gaussian_lhs_d2(n: int = 48) -> float:
    """``int int |u|^4 dx dt`` for ``u0 = exp(-|x|^2)`` by quadrature.

    ``|u|^2 = (1+16t^2)^{-1} exp(-2|x|^2/(1+16t^2))``; time is mapped by
    ``t = tan(theta)/4`` and space is scaled by the width at each time.
    """
    th = QuadratureRule1D.gauss_legendre(n, -math.pi / 2, math.pi / 2)
    xs = QuadratureRule1D.gauss_legendre(n, -7.0, 7.0)
    X, Y = np.meshgrid(xs.nodes, xs.nodes, indexing="ij")
    W = np.outer(xs.weights, xs.weights)
    total = 0.0
    for theta, wt in zip(th.nodes, th.weights):
        t = math.tan(theta) / 4
        w2 = 1 + 16 * t * t
        width = math.sqrt(w2)
        u2 = np.exp(-2 * (X ** 2 + Y ** 2)) / w2
        total += wt * (1 + math.tan(theta) ** 2) / 4 * float(np.sum(W * u2 ** 2)) * width ** 2
    return total


def _gaussian_lhs_d1(n: int = 48) -> float:
    """``int int |D^{1/2} |u|^2|^2 dx dt`` for ``u0 = exp(-x^2)`` by quadrature.

    At each time the Fourier transform of ``|u|^2`` is evaluated at
    Gauss–Legendre frequencies by a direct sum over Gauss–Legendre space
    nodes, and ``(2 pi)^{-1} int |nu| |.|^2`` is taken over ``nu >= 0``
    and doubled (``|u|^2`` is real and even).
    """
    th = QuadratureRule1D.gauss_legendre(n, -math.pi / 2, math.pi / 2)
    total = 0.0
    for theta, wt in zip(th.nodes, th.weights):
        t = math.tan(theta) / 4
        w2 = 1 + 16 * t * t
        width = math.sqrt(w2)
        xs = QuadratureRule1D.gauss_legendre(2 * n, -7.0 * width, 7.0 * width)
        u2 = np.exp(-2 * xs.nodes ** 2 / w2) / width
        nu = QuadratureRule1D.gauss_legendre(2 * n, 0.0, 16.0 / width)
        ft = np.exp(1j * np.outer(nu.nodes, xs.nodes)) @ (xs.weights * u2)
        inner = 2.0 * float(nu.weights @ (nu.nodes * np.abs(ft) ** 2)) / (2 * math.pi)
        total += wt * (1 + math.tan(theta) ** 2) / 4 * inner
    return total


def check_constants(d: int, settings: Settings | None = None) -> IdentityReport:
    """Closed forms of ``OT(d)`` and ``PV(d)`` with numeric cross-checks.

    For ``d = 1, 2`` the report compares ``||(-Delta)^{(2-d)/4}|u|^2||^2 / ||u0||^4``
    for ``u0 = exp(-|x|^2)`` (both sides by quadrature) with ``OT(d)``.  For
    ``d = 3`` it compares ``OT(3)`` with the averaging chain
    ``(2 pi)^{1-d} |S^{d-1}|/4``.  ``PV(d)`` is checked against its chain
    ``(2 pi)^{1-d} pi (2 pi)^{-(2d+1)} pi^{(d-1)/2} / Gamma((d+1)/2)``.
    """
    settings = settings or Settings()
    if d not in (1, 2, 3):
        raise DomainError("d must be 1, 2 or 3")
    ot, pv = ot_constant(d), pv_constant(d)
    ot_chain = (2 * math.pi) ** (1 - d) * sphere_area(d - 1) / 4
    pv_chain = ((2 * math.pi) ** (1 - d) * math.pi * (2 * math.pi) ** (-(2 * d + 1))
                * math.pi ** ((d - 1) / 2) / math.gamma((d + 1) / 2))
    diagnostics = {"ot": ot, "pv": pv, "ot_chain": ot_chain, "pv_chain": pv_chain,
                   "pv_chain_rel_err": abs(pv_chain - pv) / pv}
    if d == 1:
        diagnostics["ot1_bis"] = 0.5
        diagnostics["ot1_matches_bis"] = abs(ot - 0.5) < 1e-15
    if d in (1, 2):
        lhs = _gaussian_lhs_d1() if d == 1 else _gaussian_lhs_d2()
        xs = QuadratureRule1D.gauss_legendre(64, -7.0, 7.0)
        norm1 = float(xs.weights @ np.exp(-2 * xs.nodes ** 2))
        u0_norm_sq = norm1 ** d
        diagnostics.update(gaussian_lhs=lhs, u0_norm_sq=u0_norm_sq)
        value = lhs / u0_norm_sq ** 2
        method = "gaussian-equality"
    else:
        value = ot_chain
        method = "averaging-chain"
    return IdentityReport(f"constants-d{d}", value, ot, settings.tolerance or 1e-3,
                          params={"d": d, "method": method}, diagnostics=diagnostics)
