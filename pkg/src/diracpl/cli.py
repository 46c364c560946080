"""Command-line interface: solve, verify, convergence study, and the diagonal case.

Configuration comes from a flat key=value file plus command-line overrides;
all outputs (CSV samples, coefficient JSON, report JSON) are deterministic
for a fixed configuration.  Exit codes: 0 all checks pass, 1 a check failed,
2 invalid configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .basis import (PhysicalParams, Rep, kinetic_balance_apply, phi_minus,
                    select_representation)
from .recursion import build_recursion, closed_form_sequence, rescale, solve_forward
from .solution import (SeriesSolution, default_r_grid, diagonal_conditions_scan,
                       diagonal_correspondence, diagonal_special_case, dirac_residual,
                       evaluate_grid, map_params, residual_scale,
                       second_order_residual, second_order_scale, solve,
                       swap_energy, weak_form_boundary_check, weak_form_residual)
from .wave_operator import matrix_element_analytic, matrix_element_numeric

CONVERGENCE_NS = (5, 10, 20, 40)


@dataclass
class RunConfig:
    """Validated inputs for one run."""

    mode: str
    A: float
    mu: float
    kappa: int
    lam: float = 1.0
    eps: int = 1
    omega: float | None = None
    alpha: float | None = None
    N: int = 40
    quad_order: int | None = None
    seed: int = 1234
    out: str = "."

    def physical_params(self) -> PhysicalParams:
        return PhysicalParams(A=self.A, mu=self.mu, kappa=self.kappa,
                              lam=self.lam, eps=self.eps)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    description: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: measured={self.measured:.3e} "
                f"tol={self.tolerance:.1e} ({self.description})")


def _float_repr(v: float) -> str:
    return repr(float(v))


def _read_config_file(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key] = val
    return values

_FILE_KEYS = {
    "A": ("A", float), "mu": ("mu", float), "kappa": ("kappa", int),
    "lambda": ("lam", float), "lam": ("lam", float),
    "omega": ("omega", float), "alpha": ("alpha", float),
    "N": ("N", int), "quad_order": ("quad_order", int),
    "epsilon": ("eps", int), "eps": ("eps", int),
    "seed": ("seed", int), "out": ("out", str),
}


def build_config(args: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    if args.config:
        for key, raw in _read_config_file(args.config).items():
            if key not in _FILE_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            dest, conv = _FILE_KEYS[key]
            merged[dest] = conv(raw)
    for dest in ("A", "mu", "kappa", "lam", "omega", "alpha", "N",
                 "quad_order", "eps", "seed", "out"):
        val = getattr(args, dest, None)
        if val is not None:
            merged[dest] = val
    for required in ("A", "mu", "kappa"):
        if required not in merged:
            raise ValueError(f"missing required parameter {required!r} "
                             "(flag or config file)")
    return RunConfig(mode=args.mode, **merged)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracpl",
        description="Series solutions of the radial Dirac equation with odd "
                    "power-law potential A/r^mu at rest-mass energy.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, help_text in (
        ("solve", "compute a truncated series solution and export samples"),
        ("verify", "run the invariant check suite for one configuration"),
        ("convergence", "sweep the truncation N and report residuals"),
        ("special-case", "build and check the diagonal single-term solution"),
    ):
        p = sub.add_parser(mode, help=help_text)
        p.add_argument("--config", help="flat key=value configuration file")
        p.add_argument("--A", type=float, help="potential strength (nonzero)")
        p.add_argument("--mu", type=float, help="potential power (mu != 0, +1, -1)")
        p.add_argument("--kappa", type=int, help="spin-orbit integer (nonzero)")
        p.add_argument("--lambda", dest="lam", type=float, help="Compton length (default 1)")
        p.add_argument("--omega", type=float,
                       help="basis scale; defaults to the |rho| = 2 choice "
                            "(fixed internally for representation c)")
        p.add_argument("--alpha", type=float,
                       help="free basis exponent (representation c only)")
        p.add_argument("--N", type=int, help="series truncation (default 40)")
        p.add_argument("--quad-order", dest="quad_order", type=int,
                       help="quadrature order override (default 2N+20)")
        p.add_argument("--epsilon", dest="eps", type=int, choices=(1, -1),
                       help="energy sign in rest-mass units (default +1)")
        p.add_argument("--out", help="output directory (default .)")
        p.add_argument("--seed", type=int, help="seed for sampled check points")
    return parser


# ---------------------------------------------------------------------------
# check battery


def run_verify_checks(config: RunConfig) -> tuple[list[CheckResult], dict]:
    """Invariant suite for one configuration; returns results and context."""
    rng = np.random.default_rng(config.seed)
    phys = config.physical_params()
    work_phys = phys if phys.eps == 1 else map_params(phys)
    basis = select_representation(work_phys, omega=config.omega, alpha=config.alpha)
    sol = solve(phys, N=config.N, omega=config.omega, alpha=config.alpha,
                quad_order=config.quad_order)
    der = sol.derived
    checks: list[CheckResult] = []

    def add(name, measured, tol, description, larger_fails=True):
        ok = measured <= tol if larger_fails else measured >= tol
        checks.append(CheckResult(name, bool(ok), float(measured), tol, description))

    r_grid = default_r_grid(basis)
    worst = 0.0
    for n in range(11):
        direct = phi_minus(basis, n, r_grid)
        operator = kinetic_balance_apply(basis, n, r_grid)
        scale = np.max(np.abs(operator)) + 1e-300
        worst = max(worst, float(np.max(np.abs(direct - operator)) / scale))
    add("kinetic-balance", worst, 1e-8,
        "lower component equals the first-order operator applied to the upper")

    nmax = min(12, max(config.N, 2))
    op_scale = max(max(abs(matrix_element_analytic(basis.rep, der, n, n)) for n in range(nmax + 1)),
                   max(abs(matrix_element_analytic(basis.rep, der, n + 1, n)) for n in range(nmax)),
                   1.0)
    worst_far, worst_band = 0.0, 0.0
    for n in range(nmax + 1):
        for m in range(n, nmax + 1):
            num = matrix_element_numeric(basis, work_phys, n, m, order=config.quad_order)
            if m - n > 1:
                if m - n <= 4:
                    worst_far = max(worst_far, abs(num) / op_scale)
            else:
                ana = matrix_element_analytic(basis.rep, der, n, m)
                worst_band = max(worst_band, abs(num - ana) / max(abs(ana), 1e-30))
    add("operator-tridiagonality", worst_far, 1e-8,
        "projections vanish beyond the three central bands")
    add("operator-band-agreement", worst_band, 1e-8,
        "quadrature matrix elements match the closed forms on the bands")

    rec = build_recursion(basis.rep, der, basis.nu)
    fwd = solve_forward(rec, 20)
    cf = closed_form_sequence(basis.rep, der, 20)
    dual = float(np.max(np.abs(fwd.values - cf.values) / (np.abs(cf.values) + 1e-300)))
    add("coefficient-dual-path", dual, 1e-6,
        "forward recurrence equals the orthogonal-polynomial closed form")

    res = max(abs(rec.residual(cf.values, n)) / (abs(rec.a(n) * cf.values[n]) + 1e-300)
              for n in range(20))
    add("recursion-residual", res, 1e-10,
        "closed-form coefficients satisfy the three-term relation")

    raw = solve_forward(build_recursion(basis.rep, der, basis.nu, scaling="f"), 20)
    red = rescale(fwd, "f").values
    red = red / red[0]
    chain = float(np.max(np.abs(raw.values - red) / (np.abs(raw.values) + 1e-300)))
    add("scaling-equivalence", chain, 1e-12,
        "raw and rescaled recursions produce identical coefficients")

    if der.theta is not None:
        hyper = abs(np.cosh(der.theta) ** 2 - np.sinh(der.theta) ** 2 - 1.0)
        add("hyperbolic-identity", hyper, 1e-14,
            "cosh^2 - sinh^2 = 1 for the recursion angle")

    base_sol = sol if sol.eps == 1 else swap_energy(sol)
    interior = 0.0
    for n in sorted(set(np.linspace(0, max(config.N - 1, 0), 6, dtype=int))):
        value, scale = weak_form_residual(base_sol, int(n))
        interior = max(interior, abs(value) / scale)
    add("weak-form-interior", interior, 1e-8,
        "interior projections of the operator on the series vanish")

    boundary = weak_form_boundary_check(base_sol)
    if boundary["resolvable"]:
        add("weak-form-boundary", boundary["relative_error"], 1e-6,
            "the surviving projection equals the boundary term B_N f_{N+1}")
    else:
        add("weak-form-boundary", abs(boundary["projection"]) / boundary["scale"], 1e-9,
            "boundary term below quadrature noise; projection vanishes with it")

    if phys.eps == -1:
        direct = solve(map_params(phys), N=config.N, omega=config.omega,
                       alpha=config.alpha, quad_order=config.quad_order)
        r_probe = np.sort(rng.uniform(0.2, 5.0, size=10)) / basis.omega
        a1, a2 = evaluate_grid(swap_energy(sol), r_probe)
        b1, b2 = evaluate_grid(direct, r_probe)
        ref = max(np.max(np.abs(b1)), np.max(np.abs(b2)), 1e-300)
        invol = float(max(np.max(np.abs(a1 - b1)), np.max(np.abs(a2 - b2))) / ref)
        add("energy-reflection-involution", invol, 1e-8,
            "reflecting the energy twice reproduces the solution")

    context = {"basis": _basis_dict(sol), "derived": _derived_dict(sol),
               "normalization_constant": sol.norm_const}
    return checks, context


# ---------------------------------------------------------------------------
# report plumbing


def _basis_dict(sol: SeriesSolution) -> dict:
    b = sol.basis
    return {"representation": b.rep.value, "beta": b.beta, "omega": b.omega,
            "alpha": b.alpha, "nu": b.nu, "gamma": b.gamma, "rho": b.rho,
            "tau": b.tau, "lam": b.lam}


def _derived_dict(sol: SeriesSolution) -> dict:
    d = sol.derived
    return {"p": d.p, "q": d.q, "sigma_plus": d.sigma_plus,
            "sigma_minus": d.sigma_minus, "zeta": d.zeta, "theta": d.theta,
            "y": d.y, "z": d.z, "d": d.d, "u": d.u}


def _config_dict(config: RunConfig) -> dict:
    return dataclasses.asdict(config)


def _write_report(config: RunConfig, payload: dict) -> Path:
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {"version": __version__, "config": _config_dict(config), **payload}
    path = out_dir / "report.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _write_samples(config: RunConfig, sol: SeriesSolution) -> Path:
    r = default_r_grid(sol.basis)
    plus, minus = evaluate_grid(sol, r)
    res_p, res_m = dirac_residual(sol, r)
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "samples.csv"
    lines = ["r,phi_plus,phi_minus,residual_plus,residual_minus"]
    for i in range(len(r)):
        lines.append(",".join(_float_repr(v) for v in
                              (r[i], plus[i], minus[i], res_p[i], res_m[i])))
    path.write_text("\n".join(lines) + "\n")
    return path


def _write_coefficients(config: RunConfig, sol: SeriesSolution) -> Path:
    natural = "h" if sol.basis.rep is Rep.C else "g"
    from .recursion import CoefficientSequence
    seq = CoefficientSequence(values=sol.coeffs, scaling="f", nu=sol.basis.nu)
    scaled = rescale(seq, natural)
    rows = [{"n": n, "f_n": float(sol.coeffs[n]), "g_or_h_n": float(scaled.values[n])}
            for n in range(sol.N + 1)]
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "coefficients.json"
    path.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    return path


def _residual_stats(sol: SeriesSolution) -> dict:
    r = default_r_grid(sol.basis)
    res_p, res_m = dirac_residual(sol, r)
    scale = np.max(residual_scale(sol, r))
    interior = slice(5, len(r) - 5)
    lead = res_p if sol.eps == 1 else res_m
    return {
        "grid_points": len(r),
        "scale": float(scale),
        "max_leading_row_relative": float(np.max(np.abs(lead)) / scale),
        "max_interior_leading_row_relative": float(np.max(np.abs(lead[interior])) / scale),
        "max_identity_row_relative": float(
            np.max(np.abs(res_m if sol.eps == 1 else res_p)) / scale),
    }


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(config: RunConfig) -> int:
    sol = solve(config.physical_params(), N=config.N, omega=config.omega,
                alpha=config.alpha, quad_order=config.quad_order)
    samples = _write_samples(config, sol)
    coeffs = _write_coefficients(config, sol)
    report = _write_report(config, {
        "mode": "solve",
        "basis": _basis_dict(sol),
        "derived": _derived_dict(sol),
        "normalization_constant": sol.norm_const,
        "residual_stats": _residual_stats(sol),
        "outputs": {"samples": samples.name, "coefficients": coeffs.name},
    })
    print(f"wrote {samples}, {coeffs}, {report}")
    return 0


def _cmd_verify(config: RunConfig) -> int:
    checks, context = run_verify_checks(config)
    for check in checks:
        print(check.line())
    _write_report(config, {
        "mode": "verify",
        **context,
        "checks": [dataclasses.asdict(c) for c in checks],
        "all_passed": all(c.passed for c in checks),
    })
    return 0 if all(c.passed for c in checks) else 1


def _cmd_convergence(config: RunConfig) -> int:
    rows = []
    for N in CONVERGENCE_NS:
        sol = solve(config.physical_params(), N=N, omega=config.omega,
                    alpha=config.alpha, quad_order=config.quad_order)
        stats = _residual_stats(sol)
        base = sol if sol.eps == 1 else swap_energy(sol)
        boundary = weak_form_boundary_check(base)
        rows.append({"N": N,
                     "interior_residual": stats["max_interior_leading_row_relative"],
                     "boundary_relative_error": boundary["relative_error"],
                     "boundary_resolvable": boundary["resolvable"]})
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "convergence.csv"
    lines = ["N,interior_residual,boundary_relative_error"]
    for row in rows:
        lines.append(f"{row['N']},{_float_repr(row['interior_residual'])},"
                     f"{_float_repr(row['boundary_relative_error'])}")
    csv_path.write_text("\n".join(lines) + "\n")

    seq = [row["interior_residual"] for row in rows]
    decreasing = all(seq[i + 1] <= 1.1 * seq[i] for i in range(len(seq) - 1)) \
        and seq[-1] < seq[0]
    boundary_ok = all(row["boundary_relative_error"] < 1e-6 for row in rows
                      if row["boundary_resolvable"])
    checks = [
        CheckResult("interior-residual-decrease", decreasing,
                    seq[-1] / max(seq[0], 1e-300), 1.0,
                    "interior residual shrinks as the truncation grows"),
        CheckResult("boundary-identity", boundary_ok,
                    max((r["boundary_relative_error"] for r in rows
                         if r["boundary_resolvable"]), default=0.0), 1e-6,
                    "surviving projection equals B_N f_{N+1} at every "
                    "noise-resolvable N"),
    ]
    for check in checks:
        print(check.line())
    for row in rows:
        print(f"  N={row['N']:2d}: interior={row['interior_residual']:.3e} "
              f"boundary={row['boundary_relative_error']:.3e}")
    _write_report(config, {
        "mode": "convergence",
        "sweep": rows,
        "checks": [dataclasses.asdict(c) for c in checks],
        "all_passed": all(c.passed for c in checks),
        "outputs": {"sweep": csv_path.name},
    })
    return 0 if all(c.passed for c in checks) else 1


def _cmd_special_case(config: RunConfig) -> int:
    if config.omega is not None:
        raise ValueError("the diagonal case tunes omega itself; do not pass --omega")
    sol = diagonal_special_case(config.physical_params(),
                                quad_order=config.quad_order)
    r = default_r_grid(sol.basis)
    res_p, res_m = dirac_residual(sol, r)
    scale = float(np.max(residual_scale(sol, r)))
    dirac_rel = float(max(np.max(np.abs(res_p)), np.max(np.abs(res_m))) / scale)
    so_rel = 0.0
    for comp in ("+", "-"):
        so_scale = np.max(second_order_scale(sol, r, comp))
        if so_scale > 0.0:
            so_rel = max(so_rel, float(
                np.max(np.abs(second_order_residual(sol, r, comp))) / so_scale))
    kappas = [k for k in range(-4, 5) if k != 0]
    mus = [-2.5, -2.0, -0.5, 0.5, 1.5, 2.0, 3.0]
    hits = diagonal_conditions_scan(kappas, mus, n_max=40)
    only_expected = all(h["n"] == 0 and h["rho"] == 1.0
                        and not h["beta_kappa_positive"] for h in hits)
    checks = [
        CheckResult("diagonal-dirac-residual", dirac_rel <= 1e-10, dirac_rel, 1e-10,
                    "single-term solution satisfies the first-order system"),
        CheckResult("diagonal-second-order-residual", so_rel <= 1e-8, so_rel, 1e-8,
                    "single-term solution satisfies the second-order equation"),
        CheckResult("diagonal-uniqueness-scan", only_expected,
                    0.0 if only_expected else 1.0, 0.5,
                    "only n=0, rho=+1 with beta*kappa<0 diagonalizes (n <= 40 scan)"),
    ]
    for check in checks:
        print(check.line())
    _write_report(config, {
        "mode": "special-case",
        "basis": _basis_dict(sol),
        "derived": _derived_dict(sol),
        "normalization_constant": sol.norm_const,
        "correspondence": diagonal_correspondence(sol.basis),
        "scan_hits": hits,
        "checks": [dataclasses.asdict(c) for c in checks],
        "all_passed": all(c.passed for c in checks),
    })
    return 0 if all(c.passed for c in checks) else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "convergence": _cmd_convergence,
    "special-case": _cmd_special_case,
}


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
    except (ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[config.mode](config)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
