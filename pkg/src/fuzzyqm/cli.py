"""Command-line surface: machine-readable tables and reports for every headline result.

Outputs are deterministic: identical command line plus config produce
byte-identical files (no timestamps; fixed float formatting).  Exit codes:
0 all checks pass, 1 numerical check failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .deuteron import (
    ProblemTemplate,
    calibrate_smearing_mass,
    core_radius,
    coupling_report,
    effective_potential,
    optimal_alpha,
    range_depth_curve,
    solve_depth,
    trial_samples,
)
from .errors import BracketingError, ContractError, OverflowGuardError, RefinementError
from .numerics.grids import MomentumGrid
from .operators import SmearingParams, random_smooth_state, uncertainty_report, verify_commutator_xf_p, verify_spacetime_commutator
from .oscillator import (
    OscillatorSpec,
    anharmonic_shift,
    anharmonic_spectrum_formula,
    eigenfunction,
    harmonic_spectrum_formula,
    numeric_spectrum,
)

_GRID_KEYS = ("n_points", "cutoff_mult")
_NOMINAL_ORDER = 2.0  # central-difference ladder
_ORDER_TOL = 0.3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    constants: PhysicalConstants
    n_points: int
    cutoff_mult: float
    out: Path
    fmt: str
    command_line: str

    def echo(self) -> dict[str, object]:
        d: dict[str, object] = dict(sorted(self.constants.as_dict().items()))
        d["n_points"] = self.n_points
        d["cutoff_mult"] = self.cutoff_mult
        d["format"] = self.fmt
        return d


def _load_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"malformed config line (expected key=value): {raw!r}")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _build_run_config(args: argparse.Namespace, argv: list[str]) -> RunConfig:
    overrides: dict[str, str] = {}
    if args.config:
        overrides.update(_load_config_file(args.config))
    const_fields = set(PhysicalConstants().as_dict()) - {"reduced_mass"}
    const_overrides: dict[str, float] = {}
    n_points, cutoff_mult = 512, 8.0
    for k, v in overrides.items():
        if k in const_fields:
            const_overrides[k] = float(v)
        elif k == "n_points":
            n_points = int(v)
        elif k == "cutoff_mult":
            cutoff_mult = float(v)
        elif k in ("out", "format"):
            pass  # flags take precedence; accepted for completeness
        else:
            raise ConfigError(f"unknown config key {k!r}")
    constants = DEFAULT_CONSTANTS.with_overrides(**const_overrides)
    out = Path(args.out if args.out else overrides.get("out", "fuzzyqm_out"))
    fmt = args.format if args.format else overrides.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown output format {fmt!r}")
    return RunConfig(constants, n_points, cutoff_mult, out, fmt, " ".join(argv))


def _fmt(v: object) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _header_lines(cfg: RunConfig) -> list[str]:
    cfg_echo = " ".join(f"{k}={_fmt(v)}" for k, v in cfg.echo().items())
    return [
        f"tool: fuzzyqm {__version__}",
        f"command: {cfg.command_line}",
        f"config: {cfg_echo}",
    ]


def _write_table(cfg: RunConfig, name: str, columns: list[str], rows: list[list[object]]) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    if cfg.fmt == "json":
        path = cfg.out / f"{name}.json"
        payload = {
            "header": {"tool": f"fuzzyqm {__version__}", "command": cfg.command_line, "config": cfg.echo()},
            "columns": columns,
            "rows": [dict(zip(columns, r)) for r in rows],
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    else:
        path = cfg.out / f"{name}.csv"
        lines = [f"# {h}" for h in _header_lines(cfg)]
        lines.append(",".join(columns))
        lines.extend(",".join(_fmt(v) for v in r) for r in rows)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _write_report(cfg: RunConfig, name: str, payload: dict) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / f"{name}.json"
    doc = {
        "header": {"tool": f"fuzzyqm {__version__}", "command": cfg.command_line, "config": cfg.echo()},
        **payload,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


# ----------------------------------------------------------------------------
# commutators


def cmd_commutators(cfg: RunConfig, args: argparse.Namespace) -> int:
    mass = args.mass
    s = SmearingParams(mass)
    rows: list[list[object]] = []
    ok = True

    residuals: list[float] = []
    spacings: list[float] = []
    ns = [args.n0 * 2**k for k in range(args.levels)]
    for n in ns:
        grid = MomentumGrid.symmetric(n, cfg.cutoff_mult * mass)
        residuals.append(verify_commutator_xf_p(grid, s, scheme="central"))
        spacings.append(grid.spacing)
    for i, n in enumerate(ns):
        if i == 0:
            order, status = float("nan"), "-"
        else:
            order = float(np.log(residuals[i - 1] / residuals[i]) / np.log(spacings[i - 1] / spacings[i]))
            status = "OK" if abs(order - _NOMINAL_ORDER) <= _ORDER_TOL else "FAIL"
            ok &= status == "OK"
        rows.append(["commutator_xf_p", n, residuals[i], order, status])

    # Robertson inequality over random smooth states
    grid = MomentumGrid.symmetric(cfg.n_points, cfg.cutoff_mult * mass)
    rng = np.random.default_rng(20240801)
    violations = 0
    for _ in range(args.states):
        state = random_smooth_state(grid, rng)
        rep = uncertainty_report(state, s)
        if rep.dxf * rep.dp < rep.bound - 1e-9:
            violations += 1
    status = "OK" if violations == 0 else "FAIL"
    ok &= violations == 0
    rows.append(["robertson", args.states, float(violations), float("nan"), status])

    # two-component spacetime commutator ladder
    st_res: list[float] = []
    st_d: list[float] = []
    st_ns = (48, 64, 96, 128)
    for n in st_ns:
        axis = MomentumGrid.symmetric(n, 6.0 * mass)
        rep2 = verify_spacetime_commutator(axis, s)
        st_res.append(rep2.residual)
        st_d.append(axis.spacing)
        rows.append(["spacetime", n, rep2.residual, float("nan"), "-"])
    st_order = float(np.log(st_res[0] / st_res[-1]) / np.log(st_d[0] / st_d[-1]))
    st_ok = abs(st_order - _NOMINAL_ORDER) <= _ORDER_TOL
    ok &= st_ok
    rows.append(["spacetime_order", st_ns[-1], st_res[-1], st_order, "OK" if st_ok else "FAIL"])

    path = _write_table(cfg, "commutators", ["check", "N", "residual", "measured_order", "status"], rows)
    print(f"wrote {path}")
    if not ok:
        print("commutators: FAILED invariant (see status column)", file=sys.stderr)
        return 1
    return 0


# ----------------------------------------------------------------------------
# oscillator


def cmd_oscillator(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.nmax < 0:
        print("oscillator: --nmax must be nonnegative", file=sys.stderr)
        return 2
    spec = OscillatorSpec(args.omega, args.mass, args.truncation)
    n = np.arange(args.nmax + 1)
    if spec.truncation == "quadratic":
        formula = harmonic_spectrum_formula(spec, args.nmax)
        budget = 4.0 * (n + 0.5) * spec.omega_over_mass**3 * spec.mass
        breakdown = (False,) * (args.nmax + 1)
    else:
        ref_spec = OscillatorSpec(spec.omega, spec.mass, "quartic")
        formula = anharmonic_spectrum_formula(ref_spec, args.nmax)
        budget = 0.1 * anharmonic_shift(ref_spec, n)
        breakdown = formula.breakdown
    diag = numeric_spectrum(spec, args.nmax, n_points=args.npoints)

    rows: list[list[object]] = []
    ok = True
    for i in range(args.nmax + 1):
        ef, ed = formula.energies[i], diag.energies[i]
        dev = abs(ed - ef)
        if spec.truncation == "exact":
            status = "-"
        else:
            status = "OK" if dev <= budget[i] else "FAIL"
            ok &= status == "OK"
        warn = "perturbative-breakdown" if breakdown and breakdown[i] else "-"
        rows.append([int(i), ef, ed, dev, dev / abs(ef), float(budget[i]), status, warn])
    path = _write_table(
        cfg,
        "oscillator_spectrum",
        ["n", "E_formula_MeV", "E_diag_MeV", "abs_dev_MeV", "rel_dev", "budget_MeV", "status", "warning"],
        rows,
    )
    print(f"wrote {path}")

    # first two harmonic (closed-form) and anharmonic (diagonalised quartic) eigenfunctions
    quartic = OscillatorSpec(spec.omega, spec.mass, "quartic")
    res = numeric_spectrum(quartic, 1, n_points=args.npoints, return_eigenfunctions=True)
    grid = res.eigenfunctions[0].grid
    harm_spec = OscillatorSpec(spec.omega, spec.mass, "quadratic")
    efn_rows = []
    harm = [eigenfunction(harm_spec, i, grid) for i in (0, 1)] if spec.omega < spec.mass / 2 else None
    for j, p in enumerate(grid.points):
        row: list[object] = [float(p)]
        for i in (0, 1):
            row.append(float(np.real(harm[i].samples[j])) if harm else float("nan"))
            row.append(float(np.real(res.eigenfunctions[i].samples[j])))
        efn_rows.append(row)
    path2 = _write_table(
        cfg,
        "oscillator_eigenfunctions",
        ["p_MeV", "psi_harmonic_n0", "psi_anharmonic_n0", "psi_harmonic_n1", "psi_anharmonic_n1"],
        efn_rows,
    )
    print(f"wrote {path2}")
    return 0 if ok else 1


# ----------------------------------------------------------------------------
# deuteron


def _parse_r0_list(values: list[str]) -> list[float]:
    out: list[float] = []
    for v in values:
        out.extend(float(tok) for tok in v.split(",") if tok)
    return out


def _template(cfg: RunConfig, variant: str) -> tuple[ProblemTemplate, dict[str, object]]:
    meta: dict[str, object] = {"variant": variant}
    if variant == "fuzzy":
        cal = calibrate_smearing_mass(cfg.constants)
        meta["smearing_mass_MeV"] = cal.mass
        meta["smearing_mass_choice"] = cal.choice
        meta["calibration_depths_MeV"] = dict(sorted(cal.depths.items()))
        meta["calibration_target_MeV"] = cal.target
        return ProblemTemplate(cfg.constants, "fuzzy", smearing_mass=cal.mass), meta
    return ProblemTemplate(cfg.constants, "ordinary"), meta


def cmd_deuteron(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.action == "range-depth":
        template, meta = _template(cfg, args.variant)
        r0s = _parse_r0_list(args.r0) if args.r0 else [cfg.constants.r0_sigma_fm]
        points = range_depth_curve(r0s, template)
        rows = [[p.r0, p.depth, p.alpha_star, p.converged] for p in points]
        path = _write_table(cfg, "deuteron_range_depth", ["r0_fm", "depth_MeV", "alpha_star", "converged"], rows)
        print(f"wrote {path}")
        for p in points:
            print(f"r0={p.r0:g} fm: depth={p.depth:.4f} MeV (alpha*={p.alpha_star:.4f}, converged={p.converged})")
        if not all(p.converged for p in points):
            print("deuteron range-depth: unconverged point(s)", file=sys.stderr)
            return 1
        return 0

    if args.action == "core-radius":
        template, meta = _template(cfg, "fuzzy")
        try:
            res = core_radius(template)
        except BracketingError as exc:
            print(f"deuteron core-radius: {exc}", file=sys.stderr)
            return 1
        payload = {
            "core_radius_fm": res.r_c,
            "bracket": {
                "lo_fm": res.bracket_lo,
                "hi_fm": res.bracket_hi,
                "depth_at_lo_MeV": res.depth_lo,
                "depth_at_hi_MeV": res.depth_hi,
            },
            "metadata": meta,
        }
        path = _write_report(cfg, "deuteron_core_radius", payload)
        print(f"wrote {path}")
        print(f"core radius r_c = {res.r_c:.4f} fm (depth sign change {res.depth_lo:.1f} -> {res.depth_hi:.1f} MeV)")
        return 0

    # couplings: the full pipeline
    c = cfg.constants
    stage = "calibration"
    try:
        fuzzy_tpl, meta = _template(cfg, "fuzzy")
        ordinary_tpl = ProblemTemplate(c, "ordinary")
        stage = "ordinary depth"
        p_ord = solve_depth(c.r0_sigma_fm, ordinary_tpl)
        stage = "fuzzy depth"
        p_fuz = solve_depth(c.r0_sigma_fm, fuzzy_tpl)
        stage = "core radius"
        rc = core_radius(fuzzy_tpl)
        if not (p_ord.converged and p_fuz.converged):
            raise RefinementError("range-depth solve did not converge")
    except (BracketingError, ContractError, OverflowGuardError, RefinementError) as exc:
        print(f"deuteron couplings: stage '{stage}' failed: {exc}", file=sys.stderr)
        return 1

    report = coupling_report(c, p_ord.depth, p_fuz.depth, rc.r_c, meta["smearing_mass_MeV"], meta["smearing_mass_choice"])
    payload = {
        "couplings": {
            "V0_MeV": report.V0,
            "V0_prime_MeV": report.V0_prime,
            "core_radius_fm": report.r_c,
            "V1_MeV": report.V1,
            "g_sigma_sq_over_4pi": report.g_sigma_sq_over_4pi,
            "g_omega_sq_over_4pi": report.g_omega_sq_over_4pi,
            "ratio": report.ratio,
            "g_omega_phenom_sq_over_4pi": report.g_omega_phenom_sq_over_4pi,
            "phenom_reference": c.g_omega_phenom_sq_over_4pi,
            "phenom_deviation_percent": report.phenom_deviation_percent,
            "r0_fm": report.r0,
            "r1_fm": report.r1,
        },
        "metadata": meta,
    }
    path = _write_report(cfg, "deuteron_couplings", payload)
    print(f"wrote {path}")

    r_grid = np.arange(0.05, 3.0001, 0.005)
    v = effective_potential(report.V0, report.V1, report.r0, report.r1, r_grid)
    rows = [[float(r), float(val)] for r, val in zip(r_grid, v)]
    path2 = _write_table(cfg, "effective_potential", ["r_fm", "V_MeV"], rows)
    print(f"wrote {path2}")

    # optimal trial states at the pion and sigma ranges (smeared vs ordinary)
    for r0 in (1.43, c.r0_sigma_fm):
        po = ordinary_tpl.problem(solve_depth(r0, ordinary_tpl).depth, r0)
        pf = fuzzy_tpl.problem(solve_depth(r0, fuzzy_tpl).depth, r0)
        a_o, _ = optimal_alpha(po)
        a_f, _ = optimal_alpha(pf)
        p_axis = np.linspace(1.0, 1200.0, 400)
        psi_o, _ = trial_samples(po, a_o, p_axis)
        psi_f, phi_f = trial_samples(pf, a_f, p_axis)
        rows = [
            [float(p), float(po_v), float(pf_v), float(ph_v)]
            for p, po_v, pf_v, ph_v in zip(p_axis, psi_o, psi_f, phi_f)
        ]
        tag = f"{r0:g}".replace(".", "p")
        path3 = _write_table(
            cfg, f"deuteron_wavefunctions_r0_{tag}", ["p_MeV", "psi_ordinary", "psi_fuzzy", "phi_fuzzy"], rows
        )
        print(f"wrote {path3}")

    print(
        f"V0={report.V0:.2f} MeV, V0'={report.V0_prime:.2f} MeV, r_c={report.r_c:.4f} fm, "
        f"V1={report.V1:.2f} MeV, g_sigma^2/4pi={report.g_sigma_sq_over_4pi:.4f}, "
        f"g_omega^2/4pi={report.g_omega_sq_over_4pi:.4f}, ratio={report.ratio:.4f}, "
        f"prediction={report.g_omega_phenom_sq_over_4pi:.4f} "
        f"({report.phenom_deviation_percent:+.2f}% vs {c.g_omega_phenom_sq_over_4pi})"
    )
    return 0


# ----------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fuzzyqm", description=__doc__)
    ap.add_argument("--config", help="key=value config file (constants and grid overrides)")
    ap.add_argument("--out", help="output directory (default fuzzyqm_out)")
    ap.add_argument("--format", choices=("csv", "json"), help="table format (default csv)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("commutators", help="commutator and uncertainty verification ladder")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--mass", type=float, default=1.0, help="smearing mass (MeV); large = point-particle limit")
    p.add_argument("--n0", type=int, default=128, help="coarsest ladder grid size")
    p.add_argument("--states", type=int, default=1000, help="random states for the uncertainty bound suite")

    p = sub.add_parser("oscillator", help="fuzzy oscillator spectrum: formula vs diagonalisation")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--truncation", choices=("quadratic", "quartic", "exact"), default="quadratic")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--npoints", type=int, default=512)

    p = sub.add_parser("deuteron", help="range-depth relation, core radius, meson couplings")
    p.add_argument("action", choices=("range-depth", "core-radius", "couplings"))
    p.add_argument("--variant", choices=("ordinary", "fuzzy"), default="ordinary")
    p.add_argument("--r0", action="append", help="range(s) in fm, comma separated or repeated")

    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _build_run_config(args, ["fuzzyqm"] + argv)
    except (ConfigError, ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.command == "commutators":
        return cmd_commutators(cfg, args)
    if args.command == "oscillator":
        return cmd_oscillator(cfg, args)
    return cmd_deuteron(cfg, args)


if __name__ == "__main__":
    sys.exit(main())
