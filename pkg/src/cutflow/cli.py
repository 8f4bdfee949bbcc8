"""Command-line front end.

Subcommands ``trace``, ``density``, ``thermo`` and ``selftest``.  Settings
come from an optional ``key=value`` file (``--config``) overridden by flags.
Exit codes: 0 success, 1 usage error or failed self-test, 2 numerical
failure (seeding, unresolved singular point).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import models
from .acceptance import run_checks
from .equilibrium import density_profile
from .errors import DomainError, IntegrationError, NumericError, SingularityError
from .flow import IntegrateOptions, be_merge_event, seed_closed_form, seed_from_guess, seed_one_cut
from .phases import Trace, trace
from .polyops import Potential
from .thermo import birth_divergence_check, continuity_check, third_derivative_jump, thermo_curve

PRESETS = ("quartic_even", "bleher_eynard")
DEFAULT_RANGE = {"quartic_even": (0.1, 2.0), "bleher_eynard": (0.05, 3.0), None: (0.1, 3.0)}
CONFIG_KEYS = ("preset", "c", "coeffs", "tmin", "tmax", "temp", "out", "tol", "seed_guess", "n")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class ModelSpec:
    pot: Potential
    preset: str | None
    c: float | None
    T_min: float
    T_max: float
    tol: float
    out: Path
    seed_guess: list[float] | None
    temp: float | None = None
    n: int = 41


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]


def read_config(path: str) -> dict:
    """Flat ``key=value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_spec(args) -> ModelSpec:
    settings = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    preset = settings.get("preset")
    if preset is not None and preset not in PRESETS:
        raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    if preset is None and "coeffs" not in settings:
        raise UsageError("give --preset or --coeffs")
    if preset is not None and "coeffs" in settings:
        raise UsageError("--preset and --coeffs are exclusive")
    c = None
    try:
        if preset == "bleher_eynard":
            c = float(settings.get("c", 0.5))
            pot = models.bleher_eynard(c)
        elif preset == "quartic_even":
            pot = models.quartic_even()
        else:
            coeffs = settings["coeffs"]
            pot = Potential(_floats(coeffs) if isinstance(coeffs, str) else coeffs, name="custom")
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = DEFAULT_RANGE[preset]
    T_min = float(settings.get("tmin", lo))
    T_max = float(settings.get("tmax", hi))
    temp = settings.get("temp")
    temp = None if temp is None else float(temp)
    if temp is not None:
        if not temp > 0:
            raise UsageError(f"--temp must be positive, got {temp}")
        T_min, T_max = min(T_min, temp), max(T_max, temp)
    if not (0 < T_min < T_max and math.isfinite(T_max)):
        raise UsageError(f"empty or invalid temperature range ({T_min}, {T_max})")
    guess = settings.get("seed_guess")
    if isinstance(guess, str):
        guess = _floats(guess)
    n = int(settings.get("n", 41))
    if n < 2:
        raise UsageError("--n must be at least 2")
    return ModelSpec(pot, preset, c, T_min, T_max, float(settings.get("tol", 1e-10)),
                     Path(settings.get("out", "cutflow")), guess, temp, n)


def run_trace(spec: ModelSpec) -> Trace:
    opts = IntegrateOptions(rtol=spec.tol, atol=spec.tol)
    T_min, T_max = spec.T_min, spec.T_max
    if spec.preset == "bleher_eynard":
        # the known merge point seeds both phases; the range is widened to reach it
        start = be_merge_event(spec.c)
        T_min, T_max = min(T_min, start.T_c), max(T_max, start.T_c)
    elif spec.preset == "quartic_even":
        start = seed_closed_form("quartic_even", T=spec.T_max)
    elif spec.seed_guess is not None:
        start = seed_from_guess(spec.pot, spec.T_max, spec.seed_guess)
    else:
        start = seed_one_cut(spec.pot, spec.T_max)
    return trace(spec.pot, start, T_min, T_max, opts=opts)


def _num(x) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _path(spec: ModelSpec, suffix: str) -> Path:
    return spec.out.with_name(spec.out.name + suffix)


def _launch_fields(ev) -> str:
    parts = []
    for k in sorted(ev.launch):
        v = ev.launch[k]
        if isinstance(v, np.ndarray):
            parts.append(f"{k}=" + " ".join(_num(x) for x in v))
        else:
            parts.append(f"{k}={_num(v)}")
    return ";".join(parts)


def write_trace(spec: ModelSpec, tr: Trace) -> tuple[Path, Path]:
    width = 2 * max(seg.s for seg in tr.segments)
    header = ["T", "s"] + [f"beta_{i + 1}" for i in range(width)]
    rows = []
    for T, s, b in tr.samples():
        rows.append([_num(T), str(s)] + [_num(x) for x in b] + [""] * (width - len(b)))
    p_trace, p_events = _path(spec, "_trace.csv"), _path(spec, "_events.csv")
    _write_csv(p_trace, header, rows)
    ev_rows = [[ev.kind, _num(ev.T_c), _num(ev.beta), ev.two_cut_side, _launch_fields(ev)] for ev in tr.events]
    _write_csv(p_events, ["kind", "T_c", "beta", "two_cut_side", "launch"], ev_rows)
    return p_trace, p_events


def cmd_trace(spec: ModelSpec) -> int:
    tr = run_trace(spec)
    p1, p2 = write_trace(spec, tr)
    for ev in tr.events:
        print(f"{ev.kind} at T_c={_num(ev.T_c)} beta={_num(ev.beta)}")
    for chk in tr.checks:
        flag = "ok" if chk["ok"] else "FLAGGED"
        print(f"birth cross-check: one-cut estimate {_num(chk['T_one_cut'])} ({flag})")
    print(f"wrote {p1} and {p2}")
    return 0


def cmd_density(spec: ModelSpec) -> int:
    if spec.temp is None:
        raise UsageError("density needs --temp")
    tr = run_trace(spec)
    T = spec.temp
    config = tr.config_at(T)
    prof = density_profile(spec.pot, T, config)
    norm = prof.norm
    rows = []
    for j, arr in enumerate(prof.samples):
        rows.extend([str(j + 1), _num(x), _num(rho)] for x, rho in arr)
    p_dens, p_sum = _path(spec, "_density.csv"), _path(spec, "_density_summary.csv")
    _write_csv(p_dens, ["cut", "x", "rho"], rows)
    header = ["T", "s", "norm"] + [f"beta_{i + 1}" for i in range(len(config.beta))]
    _write_csv(p_sum, header, [[_num(T), str(config.s), _num(norm)] + [_num(b) for b in config.beta]])
    print(f"T={_num(T)} s={config.s} endpoints={' '.join(_num(b) for b in config.beta)} norm={_num(norm)}")
    print(f"wrote {p_dens} and {p_sum}")
    return 0


def _thermo_grid(spec: ModelSpec, tr: Trace) -> np.ndarray:
    grid = np.linspace(spec.T_min, spec.T_max, spec.n)
    # keep stencils clear of the range ends and of the transitions themselves
    pad = 1e-3 * max(1.0, spec.T_max)
    grid = np.clip(grid, spec.T_min + 4 * pad, spec.T_max - 4 * pad)
    for ev in tr.events:
        grid = np.where(np.abs(grid - ev.T_c) < pad, ev.T_c + np.sign(grid - ev.T_c + 1e-300) * pad, grid)
    return np.unique(grid)


def cmd_thermo(spec: ModelSpec) -> int:
    tr = run_trace(spec)
    curve = thermo_curve(tr, _thermo_grid(spec, tr))
    rows = [[_num(v) for v in row] for row in zip(curve.T, curve.F, curve.v1, curve.d2F, curve.d3F)]
    p_thermo, p_trans = _path(spec, "_thermo.csv"), _path(spec, "_transitions.csv")
    _write_csv(p_thermo, ["T", "F", "v1", "d2F", "d3F"], rows)
    header = ["kind", "T_c", "beta", "dF", "dF1", "dF2", "jump_numeric", "jump_closed_form",
              "divergence_exponent", "divergence_conclusive"]
    out = []
    for ev in tr.events:
        cont = continuity_check(ev)
        row = [ev.kind, _num(ev.T_c), _num(ev.beta), _num(cont.dF), _num(cont.dF1), _num(cont.dF2)]
        if ev.kind == "merge":
            jump = third_derivative_jump(ev)
            closed = "" if jump.closed_form is None else _num(jump.closed_form)
            row += [_num(jump.numeric), closed, "", ""]
            print(f"merge T_c={_num(ev.T_c)}: d3F jump {jump.numeric:.6g} (closed form {closed or 'n/a'})")
        else:
            div = birth_divergence_check(ev)
            row += ["", "", _num(div.exponent), str(div.conclusive).lower()]
            print(f"birth T_c={_num(ev.T_c)}: d3F ~ t^{div.exponent:.3f}/log(t)^2 (conclusive={div.conclusive})")
        print(f"  continuity |dF|={abs(cont.dF):.2e} |dF'|={abs(cont.dF1):.2e} |dF''|={abs(cont.dF2):.2e}")
        out.append(row)
    _write_csv(p_trans, header, out)
    print(f"wrote {p_thermo} and {p_trans}")
    return 0


def cmd_selftest(fault: int | None = None) -> int:
    results = run_checks(fault=fault)
    for r in results:
        print(r.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} passed")
    return 0 if n_pass == len(results) else 1


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value settings file (flags override)")
    p.add_argument("--preset", choices=PRESETS)
    p.add_argument("--c", type=float, help="Bleher-Eynard parameter, |c| < 1")
    p.add_argument("--coeffs", help="comma-separated t_1..t_2p of V(x) = sum t_n x^n")
    p.add_argument("--tmin", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--temp", type=float, help="temperature for the density")
    p.add_argument("--out", help="output path prefix")
    p.add_argument("--tol", type=float, help="integrator rtol/atol")
    p.add_argument("--seed-guess", dest="seed_guess", help="comma-separated one-cut endpoint guess at T_max")
    p.add_argument("--n", type=int, help="number of thermo grid points")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cutflow", description="Endpoint flow and phase transitions of Hermitian matrix models.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (("trace", "trace endpoints and transitions"),
                       ("density", "eigenvalue density at --temp"),
                       ("thermo", "free energy, derivatives and transition summary")):
        _add_model_args(sub.add_parser(name, help=text))
    st = sub.add_parser("selftest", help="run the acceptance checks")
    st.add_argument("--fault", type=int, metavar="N", help="shrink the tolerances of check N (harness test)")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            return cmd_selftest(args.fault)
        spec = build_spec(args)
        return {"trace": cmd_trace, "density": cmd_density, "thermo": cmd_thermo}[args.command](spec)
    except UsageError as exc:
        print(f"cutflow: error: {exc}", file=sys.stderr)
        return 1
    except (NumericError, IntegrationError, SingularityError, DomainError) as exc:
        print(f"cutflow: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
