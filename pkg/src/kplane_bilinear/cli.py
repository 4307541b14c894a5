"""Command-line front end: ``python -m kplane_bilinear <command> ...``.

Commands are ``verify``, ``constants``, ``convolve``, ``kernel``,
``dump-field`` and ``suite``.  Reports are JSON with 17 significant digits;
exit status is 0 when every executed check passed, 1 when any failed and 2
on configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import ast
import math
import sys
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import identities as ids
from .conventions import Field, GridSpec
from .errors import KPlaneError
from .geometry import Frame
from .kernels import (KernelInput, hyperboloid_form_study, kernel_hyperboloid_averaged,
                      kernel_hyperboloid_reflected_equivalence, kernel_sphere, kernel_sphere_averaged,
                      kernel_sphere_wedge_equivalence)
from .measures import (CircleDensity, HyperbolaDensity, circle_conv_closed, conv_oracle,
                       hyperbola_conv_closed, lemma_study, polynomial_density)
from .report import CheckReport, IdentityReport, dumps
from .transforms import (HyperboloidFunctionRd, ParaboloidFunctionRd, extension_slice, extension_sphere,
                         fourier_slice_check, plancherel_kplane_check, write_field_csv)

__all__ = ["main", "run", "RunConfig", "TARGETS", "build_parser"]


class ConfigError(Exception):
    """Invalid command-line configuration."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str | None = None
    seed: int = 0
    quick: bool = False
    tolerance: float | None = None
    overrides: tuple = ()
    output: str | None = None
    d: int = 1
    extra: tuple = ()

    def settings(self) -> ids.Settings:
        return ids.Settings(tolerance=self.tolerance, quick=self.quick, seed=self.seed,
                            overrides=dict(self.overrides))


# ---- verification targets -------------------------------------------------------------

def _lemma(kind: str):
    def runner(cfg: RunConfig) -> list:
        out = []
        for sigma, tol in ((0.01, 1e-2), (0.005, 1e-3)):
            res = lemma_study(kind, sigma, cfg.seed)
            out.append(CheckReport(f"{kind}-lemma-sigma{sigma:g}", res["max_rel_err"], tol,
                                   params={"sigma": sigma, "seed": cfg.seed, "cases": len(res["cases"])}))
        return out
    return runner


def _sphere_density(cfg: RunConfig):
    return ids.seeded_zonal(cfg.seed)


def _sphere_identity(cfg):
    g = _sphere_density(cfg)
    return [ids.verify_sphere_identity(g, g, settings=cfg.settings())]


def _sphere_constant(cfg):
    g = ids.sphere_constant()
    rep = ids.verify_sphere_identity(g, g, settings=cfg.settings())
    rep.name = "sphere-identity-constant"
    return [rep]


def _sphere_refinement(cfg):
    out = []
    for label, g in (("constant", ids.sphere_constant()), ("zonal", _sphere_density(cfg))):
        base, fine, dec = ids.sphere_refinement_study(g, g, settings=cfg.settings())
        out.append(CheckReport(f"sphere-refinement-{label}", fine.rel_err, fine.tolerance,
                               params={"base": base.params, "fine": fine.params},
                               conditions={"decreasing": dec, "base_within_tolerance": base.passed},
                               diagnostics={"base_rel_err": base.rel_err, "fine_rel_err": fine.rel_err}))
    return out


def _corollary_checks(rep: IdentityReport, exact_zero: bool) -> CheckReport:
    diag = rep.diagnostics
    cond = {"I_nonnegative": rep.correction >= -1e-12 and diag["corollary_min_deficit"] >= -1e-12}
    if exact_zero:
        cond["I_zero_for_constants"] = rep.correction == 0.0
    return CheckReport(rep.name + "-algebra", diag["corollary_algebra_defect"], 1e-10, conditions=cond,
                       diagnostics={"I": rep.correction, "min_deficit": diag["corollary_min_deficit"]})


def _sphere_corollary(cfg):
    s = cfg.settings()
    const = ids.sphere_constant()
    a = ids.verify_sphere_corollary(const, const, settings=s)
    a.name = "sphere-corollary-constant"
    b = ids.verify_sphere_corollary(ids.seeded_zonal(cfg.seed), ids.seeded_zonal(cfg.seed + 1), settings=s)
    b.name = "sphere-corollary-zonal"
    return [a, _corollary_checks(a, True), b, _corollary_checks(b, False)]


def _stein_tomas(cfg):
    return [ids.check_stein_tomas_sphere(cfg.settings()), ids.check_foschi_sphere(cfg.settings())]


def _antipodal(cfg):
    chk = ids.check_antipodal_chain(_sphere_density(cfg))
    excess = max(0.0, chk.smaller / chk.larger - 1.0)
    return [CheckReport("antipodal-chain", excess, chk.slack,
                        conditions={"mass_preserved": chk.diagnostics["mass_rel_gap"] < 1e-12},
                        diagnostics=chk.as_dict())]


def _hyperboloid(cfg):
    f = ids.hyperboloid_gaussian()
    rep = ids.verify_hyperboloid_identity(f, f, settings=cfg.settings())
    return [rep, _corollary_checks_hyp(rep)]


def _hyperboloid_seeded(cfg):
    h = ids.hermite_gaussian(2, cfg.seed)
    f1 = HyperboloidFunctionRd(1.0, h, 2, h.support_radius)
    rep = ids.verify_hyperboloid_identity(f1, ids.hyperboloid_gaussian(), omega=(0.6, 0.8),
                                          settings=cfg.settings())
    rep.name = "hyperboloid-seeded"
    return [rep]


def _corollary_checks_hyp(rep):
    diag = rep.diagnostics
    return CheckReport("hyperboloid-corollary-algebra", diag["corollary_algebra_defect"], 1e-10,
                       conditions={"I_nonnegative": diag["corollary_I"] >= -1e-12
                                   and diag["corollary_min_deficit"] >= -1e-12},
                       diagnostics={"I": diag["corollary_I"]})


def _hyperboloid_kernels(cfg):
    res = hyperboloid_form_study(cfg.seed, 100)
    return [CheckReport("hyperboloid-kernel-forms", res["max_rel_spread"], 1e-8,
                        params={"seed": cfg.seed, "count": res["count"]})]


def _pv(cfg):
    rep = ids.verify_pv_identity(ids.gaussian_u0_data(2), settings=cfg.settings())
    j_ratio = abs(rep.correction) / max(abs(rep.rhs), 1e-300)
    return [rep,
            CheckReport("pv-gaussian-j", j_ratio, 1e-10, diagnostics={"j": rep.correction}),
            CheckReport("pv-algebraic", rep.diagnostics["algebraic_max_violation"], 1e-12,
                        params={"samples": rep.diagnostics["algebraic_samples"]})]


def _pv_seeded(cfg):
    f = ids.hermite_gaussian(2, cfg.seed, scale=2.0)
    u0 = ParaboloidFunctionRd(f, 2, f.support_radius)
    rep = ids.verify_pv_identity(u0, omega=(0.6, 0.8), settings=cfg.settings())
    rep.name = "pv-seeded"
    return [rep, CheckReport("pv-seeded-j-nonnegative", 0.0, 0.0,
                             conditions={"J_nonnegative": rep.correction >= -1e-12},
                             diagnostics={"j": rep.correction})]


def _honest(cfg):
    f = ids.paraboloid_gaussian()
    rep = ids.verify_honest_paraboloid(f, f, settings=cfg.settings())
    d = rep.diagnostics
    return [rep, CheckReport("honest-paraboloid-structure", d["rhs_imag_rel"], 1e-10,
                             conditions={"I_nonnegative": d["corollary_I"] >= -1e-12})]


def _ot(cfg):
    res = ids.ot_recovery(ids.gaussian_u0_data(2))
    return [CheckReport("ot-recovery-d2", res["rel_err"], 1e-3, diagnostics=res)]


def _constants(cfg):
    return [ids.check_constants(d, cfg.settings()) for d in (1, 2, 3)]


def _gaussian_field_2d():
    return Field.from_function(GridSpec(2, 10.0, 256), lambda p: np.exp(-np.sum(p ** 2, -1)) + 0j)


def _plancherel(cfg):
    return [plancherel_kplane_check(_gaussian_field_2d(), 1, 64)]


def _fourier_slice(cfg):
    rng = np.random.default_rng(cfg.seed)
    F = Field.from_function(GridSpec(2, 10.0, 256),
                            lambda p: np.exp(-np.sum(p ** 2, -1)) * (1 + 0.4 * p[..., 0] - 0.2j * p[..., 1]))
    worst = 0.0
    for th in rng.uniform(0.0, math.pi, 20):
        worst = max(worst, fourier_slice_check(F, Frame.from_line([math.cos(th), math.sin(th)]), 1)["max_rel_err"])
    return [CheckReport("fourier-slice", worst, 1e-5, params={"directions": 20, "seed": cfg.seed})]


TARGETS: dict[str, Callable] = {
    "circle-lemma": _lemma("circle"),
    "hyperbola-lemma": _lemma("hyperbola"),
    "sphere-identity": _sphere_identity,
    "sphere-constant": _sphere_constant,
    "sphere-refinement": _sphere_refinement,
    "sphere-corollary": _sphere_corollary,
    "stein-tomas": _stein_tomas,
    "antipodal-chain": _antipodal,
    "hyperboloid-identity": _hyperboloid,
    "hyperboloid-seeded": _hyperboloid_seeded,
    "hyperboloid-kernels": _hyperboloid_kernels,
    "pv-identity": _pv,
    "pv-seeded": _pv_seeded,
    "honest-paraboloid": _honest,
    "ot-recovery": _ot,
    "constants": _constants,
    "plancherel": _plancherel,
    "fourier-slice": _fourier_slice,
}


# ---- commands -------------------------------------------------------------------------

def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _status(reports) -> int:
    return 0 if all(r.passed for r in reports) else 1


def _cmd_verify(cfg: RunConfig) -> int:
    reports = TARGETS[cfg.target](cfg)
    payload = reports[0] if len(reports) == 1 else [r.as_dict() for r in reports]
    _write(dumps(payload), cfg.output)
    return _status(reports)


def _cmd_suite(cfg: RunConfig) -> int:
    reports = []
    for name, runner in TARGETS.items():
        t0 = time.perf_counter()
        try:
            got = runner(cfg)
        except KPlaneError as exc:
            got = [CheckReport(name, math.inf, 0.0, conditions={"ran": False},
                               diagnostics={"error": f"{type(exc).__name__}: {exc}"})]
        reports.extend(got)
        print(f"[{name}: {time.perf_counter() - t0:.1f} s]", file=sys.stderr)
    rows = [r.summary_row() for r in reports]
    print("\n".join(rows))
    npass = sum(r.passed for r in reports)
    print(f"{npass}/{len(reports)} checks passed")
    if cfg.output is not None:
        _write(dumps({"seed": cfg.seed, "quick": cfg.quick, "reports": [r.as_dict() for r in reports],
                      "summary": rows}), cfg.output)
    return _status(reports)


def _cmd_constants(cfg: RunConfig) -> int:
    rep = ids.check_constants(cfg.d, cfg.settings())
    print(f"OT({cfg.d}) = {ids.ot_constant(cfg.d):.17g}")
    print(f"PV({cfg.d}) = {ids.pv_constant(cfg.d):.17g}")
    if cfg.output is not None:
        _write(dumps(rep), cfg.output)
    return _status([rep])


def _floats(values, n, name):
    if values is None or len(values) != n:
        raise ConfigError(f"--{name} needs {n} numbers")
    return np.array(values, dtype=float)


def _extra(cfg: RunConfig) -> dict:
    return dict(cfg.extra)


def _cmd_convolve(cfg: RunConfig) -> int:
    ex = _extra(cfg)
    kind = cfg.target
    params = _floats(ex.get("params"), 2, "params")
    x = _floats(ex.get("point"), 2, "point")
    rng = np.random.default_rng(cfg.seed)
    g1, g2 = (polynomial_density(rng), polynomial_density(rng)) if ex.get("polynomial") else (None, None)
    one = (lambda p: np.ones(np.shape(p)[:-1], dtype=complex))
    g1, g2 = g1 or one, g2 or one
    if kind == "circle":
        closed = circle_conv_closed(CircleDensity(params[0], g1), CircleDensity(params[1], g2), x)
    else:
        closed = hyperbola_conv_closed(HyperbolaDensity(params[0], g1), HyperbolaDensity(params[1], g2), x)
    out = {"surface": kind, "params": params, "point": x, "status": closed.status.value,
           "closed": closed.value}
    sigma = ex.get("sigma")
    if sigma is not None:
        approx = conv_oracle(kind, tuple(params), g1, g2, x, float(sigma))
        out["oracle"] = approx
        out["sigma"] = float(sigma)
        if closed.finite:
            out["rel_err"] = abs(approx - closed.value) / max(abs(closed.value), 1e-300)
    _write(dumps(out), cfg.output)
    return 0


def _cmd_kernel(cfg: RunConfig) -> int:
    ex = _extra(cfg)
    kind = cfg.target
    param = float(ex.get("param") or 1.0)
    if kind in ("sphere", "sphere-averaged"):
        xi, zeta = _floats(ex.get("xi"), 3, "xi"), _floats(ex.get("zeta"), 3, "zeta")
        if kind == "sphere-averaged":
            num, ana = kernel_sphere_averaged(xi, zeta)
            out = {"numeric": num, "analytic": ana}
        else:
            frame = Frame.from_line(_floats(ex.get("omega"), 3, "omega"))
            inp = KernelInput("sphere", frame, xi, zeta, param)
            wedge, direct = kernel_sphere_wedge_equivalence(inp)
            out = {"kernel": kernel_sphere(inp), "wedge": wedge, "direct": direct}
    else:
        xi, zeta = _floats(ex.get("xi"), 2, "xi"), _floats(ex.get("zeta"), 2, "zeta")
        if kind == "hyperboloid-averaged":
            out = {"averaged": kernel_hyperboloid_averaged(xi, zeta, param)}
        else:
            frame = Frame.from_direction(_floats(ex.get("omega"), 2, "omega"))
            refl, compact, angle = kernel_hyperboloid_reflected_equivalence(
                KernelInput("hyperboloid", frame, xi, zeta, param))
            out = {"reflected": refl, "compact": compact, "angle": angle}
    out.update({"surface": kind, "xi": xi, "zeta": zeta, "param": param})
    _write(dumps(out), cfg.output)
    return 0


def _cmd_dump_field(cfg: RunConfig) -> int:
    ex = _extra(cfg)
    if cfg.output is None:
        raise ConfigError("dump-field needs --output")
    L = float(ex.get("half_width") or 8.0)
    n = ex.get("points") or (32 if cfg.target == "sphere" else 64)
    t = float(ex.get("time") or 0.0)
    if cfg.target == "sphere":
        fld = extension_sphere(_sphere_density(cfg), GridSpec(3, L, n))
    else:
        f = ids.truncated_gaussian(2)
        F = (HyperboloidFunctionRd(1.0, f, 2, f.support_radius) if cfg.target == "hyperboloid"
             else ParaboloidFunctionRd(f, 2, f.support_radius))
        fld = extension_slice(F, GridSpec(2, L, n), t)
    write_field_csv(fld, cfg.output)
    return 0


_COMMANDS = {
    "verify": (_cmd_verify, tuple(TARGETS)),
    "suite": (_cmd_suite, None),
    "constants": (_cmd_constants, None),
    "convolve": (_cmd_convolve, ("circle", "hyperbola")),
    "kernel": (_cmd_kernel, ("sphere", "sphere-averaged", "hyperboloid", "hyperboloid-averaged")),
    "dump-field": (_cmd_dump_field, ("sphere", "hyperboloid", "paraboloid")),
}


def run(cfg: RunConfig) -> int:
    """Execute one configuration and return the exit code."""
    if cfg.command not in _COMMANDS:
        print(f"error: unknown command {cfg.command!r}", file=sys.stderr)
        return 2
    func, targets = _COMMANDS[cfg.command]
    if targets is not None and cfg.target not in targets:
        print(f"error: unknown target {cfg.target!r} for {cfg.command}; choose from {', '.join(targets)}",
              file=sys.stderr)
        return 2
    if cfg.command == "constants" and cfg.d not in (1, 2, 3):
        print("error: --d must be 1, 2 or 3", file=sys.stderr)
        return 2
    try:
        return func(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KPlaneError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _parse_override(text: str) -> tuple:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, ast.literal_eval(value)
    except (ValueError, SyntaxError):
        raise argparse.ArgumentTypeError(f"cannot parse value in {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--quick", action="store_true", help="halved grids, tolerance 6e-2")
    common.add_argument("--tolerance", type=float, default=None, help="override the relative tolerance")
    common.add_argument("--set", dest="overrides", action="append", type=_parse_override, default=[],
                        metavar="KEY=VALUE", help="grid or quadrature override, e.g. box=12.0")
    common.add_argument("--output", default=None, help="write JSON (or CSV for dump-field) here")
    parser = argparse.ArgumentParser(prog="kplane-bilinear", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", parents=[common], help="run one verification target")
    p.add_argument("--target", required=True)
    sub.add_parser("suite", parents=[common], help="run every verification target")
    p = sub.add_parser("constants", parents=[common], help="OT(d) and PV(d) with checks")
    p.add_argument("--d", type=int, default=1)
    p = sub.add_parser("convolve", parents=[common], help="closed-form convolution at a point")
    p.add_argument("--target", required=True)
    p.add_argument("--params", type=float, nargs=2, help="radii or masses")
    p.add_argument("--point", type=float, nargs=2)
    p.add_argument("--sigma", type=float, default=None, help="also run the mollified oracle")
    p.add_argument("--polynomial", action="store_true", help="seeded polynomial densities instead of 1")
    p = sub.add_parser("kernel", parents=[common], help="evaluate a kernel")
    p.add_argument("--target", required=True)
    p.add_argument("--xi", type=float, nargs="+")
    p.add_argument("--zeta", type=float, nargs="+")
    p.add_argument("--omega", type=float, nargs="+")
    p.add_argument("--param", type=float, default=1.0, help="radius or mass")
    p = sub.add_parser("dump-field", parents=[common], help="write an extension field as CSV")
    p.add_argument("--target", required=True)
    p.add_argument("--half-width", type=float, default=8.0)
    p.add_argument("--points", type=int, default=None, help="per axis (default 32 for sphere, 64 otherwise)")
    p.add_argument("--time", type=float, default=0.0)
    return parser


_EXTRA_KEYS = ("params", "point", "sigma", "polynomial", "xi", "zeta", "omega", "param",
               "half_width", "points", "time")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    extra = tuple((k, getattr(args, k)) for k in _EXTRA_KEYS if hasattr(args, k))
    cfg = RunConfig(command=args.command, target=getattr(args, "target", None), seed=args.seed,
                    quick=args.quick, tolerance=args.tolerance, overrides=tuple(args.overrides),
                    output=args.output, d=getattr(args, "d", 1), extra=extra)
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
