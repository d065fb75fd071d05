"""Command-line driver: ``hypercon <subcommand> --config cfg.json [--out dir] [--seed u64] [--grid NR,NT] [--basis N]``.

Every output file starts with the resolved configuration and the library
version.  Exit codes: 0 all checked properties held, 1 a property failed,
2 usage or parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bergman import BergmanFunctionDisc, EigenSolverError, KernelSpecDisc, UsageError, kernel_disc
from .concentration import (
    c_delta_beta,
    converged_sup,
    faberkrahn_tuple,
    random_unit_function,
    sup_concentration,
    tuple_rng,
    theta,
    theta_prime,
)
from .domains import Annulus, DivergentMeasureError, EuclideanDisc, Polygon, centered_disc, domain_from_json
from .geometry import GeometryError
from .lebesgue import (
    GateError,
    annuli_infimum_demo,
    escape_demo,
    lebesgue_min_check,
    theta1,
    theta1_integral,
    theta2,
    theta2_integral,
)
from .quadrature import DEFAULT_NR, DEFAULT_NTHETA, build_disk_grid
from .rearrangement import isoperimetric_audit, level_profile, u_function, u_profile
from .specfun import DomainError
from .wavelet import CalibrationError, calibrate_unitarity, signal_from_json, signal_to_disc

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULTS = {
    "theta": {"alpha": 0.0, "s_min": 0.0, "s_max": 10.0, "n": 101},
    "concentrate": {"alpha": None, "beta": None, "domain": None, "basis": 64},
    "faberkrahn-scan": {
        "count": 200, "seed": 0, "alphas": [-0.5, 0.0, 1.0, 2.5], "s_min": 0.2, "s_max": 6.0,
        "families": ["union", "rectangle", "mask", "polygon", "annulus", "kernel_disc"],
        "basis": 24, "grid": [DEFAULT_NR, DEFAULT_NTHETA], "tol": 1e-6,
    },
    "rearrange": {
        "alpha": 0.0, "function": {"kind": "kernel", "w": [0.3, 0.2]}, "basis": 64, "seed": 0,
        "grid": [DEFAULT_NR, DEFAULT_NTHETA], "s_min": 0.1, "s_max": 10.0, "n_s": 50,
        "audit_s": [0.25, 0.5, 1.0, 2.0, 4.0, 8.0], "n_pix": 1024, "n_levels": 50,
        "envelope_tol": 5e-3, "audit_slack": 0.05,
    },
    "section4": {
        "alpha": None, "s": math.pi / 2, "candidates": None, "basis": 64,
        "escape_r": 0.9, "escape_n_max": 512, "annuli_s": 1.0, "annuli_k_max": 64,
    },
}


# ----------------------------------------------------------------------------
# output helpers


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x) if math.isfinite(x) else str(float(x))
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _header(cfg: dict, subcommand: str) -> dict:
    return {"library": "hypercon", "version": __version__, "subcommand": subcommand, "config": cfg}


def write_json(path: Path, payload: dict, cfg: dict, subcommand: str):
    doc = _header(cfg, subcommand)
    doc.update(payload)
    path.write_text(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def write_csv(path: Path, columns: list[str], rows, cfg: dict, subcommand: str):
    """CSV with a leading ``#`` line holding the config echo, then a header row."""
    lines = ["# " + json.dumps(_jsonable(_header(cfg, subcommand)), sort_keys=True, separators=(",", ":"))]
    lines.append(",".join(columns))
    for r in rows:
        lines.append(",".join(_fmt(v) for v in r))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


# ----------------------------------------------------------------------------
# config


def _resolve(subcommand: str, raw: dict, args) -> dict:
    cfg = dict(DEFAULTS[subcommand])
    unknown = set(raw) - set(cfg) - {"subcommand"}
    if unknown:
        raise UsageError(f"unknown config keys for {subcommand}: {sorted(unknown)}")
    cfg.update({k: v for k, v in raw.items() if k != "subcommand"})
    if args.seed is not None:
        if "seed" not in cfg:
            raise UsageError(f"{subcommand} takes no seed")
        cfg["seed"] = args.seed
    if args.grid is not None:
        if "grid" not in cfg:
            raise UsageError(f"{subcommand} takes no grid")
        cfg["grid"] = list(args.grid)
    if args.basis is not None:
        if "basis" not in cfg:
            raise UsageError(f"{subcommand} takes no basis size")
        cfg["basis"] = args.basis
    if "seed" in cfg and not (isinstance(cfg["seed"], int) and 0 <= cfg["seed"] < 2 ** 64):
        raise UsageError("seed must be an unsigned 64-bit integer")
    if "basis" in cfg and not (isinstance(cfg["basis"], int) and cfg["basis"] >= 1):
        # concentrate accepts null: grow the basis until the eigenvalue converges
        if not (subcommand == "concentrate" and cfg["basis"] is None):
            raise UsageError("basis must be a positive integer")
    if "grid" in cfg:
        g = cfg["grid"]
        if not (isinstance(g, list) and len(g) == 2 and all(isinstance(v, int) and v >= 2 for v in g)):
            raise UsageError("grid must be two integers NR,NT >= 2")
    return cfg


def _check_alpha(a):
    if a is None or not isinstance(a, (int, float)) or not a > -1:
        raise UsageError("alpha must be a number > -1")
    return float(a)


# ----------------------------------------------------------------------------
# subcommands


def cmd_theta(cfg: dict, out: Path) -> int:
    a = _check_alpha(cfg["alpha"])
    s0, s1, n = cfg["s_min"], cfg["s_max"], cfg["n"]
    if not (isinstance(n, int) and n >= 2) or not (0 <= s0 < s1) or not math.isfinite(s1):
        raise UsageError("need 0 <= s_min < s_max and n >= 2")
    s = np.linspace(s0, s1, n)
    write_csv(out / "theta.csv", ["s", "theta", "theta_prime"],
              zip(s, theta(s, a), theta_prime(s, a)), cfg, "theta")
    return EXIT_OK


def cmd_concentrate(cfg: dict, out: Path) -> int:
    if cfg["domain"] is None:
        raise UsageError("concentrate needs a domain")
    dom = domain_from_json(cfg["domain"])
    if dom.model == "halfplane":
        beta = cfg["beta"]
        if beta is None:
            beta = (_check_alpha(cfg["alpha"]) + 1.0) / 2.0
        if not beta > 0:
            raise UsageError("beta must be positive")
        rep = c_delta_beta(dom, float(beta), cfg["basis"])
    else:
        a = cfg["alpha"]
        if a is None and cfg["beta"] is not None:
            a = 2.0 * cfg["beta"] - 1.0
        a = _check_alpha(a)
        rep = converged_sup(dom, a) if cfg["basis"] is None else sup_concentration(dom, a, cfg["basis"])
    write_json(out / "concentrate.json", {"report": rep.to_json()}, cfg, "concentrate")
    return EXIT_OK if rep.gap >= -1e-6 else EXIT_PROPERTY


def cmd_faberkrahn_scan(cfg: dict, out: Path) -> int:
    if not (isinstance(cfg["count"], int) and cfg["count"] >= 1):
        raise UsageError("count must be >= 1")
    for a in cfg["alphas"]:
        _check_alpha(a)
    if not 0 < cfg["s_min"] < cfg["s_max"]:
        raise UsageError("need 0 < s_min < s_max")
    grids: dict = {}
    rows = [faberkrahn_tuple(cfg["seed"], i, cfg["families"], cfg["alphas"], (cfg["s_min"], cfg["s_max"]),
                             cfg["basis"], tuple(cfg["grid"]), grids) for i in range(cfg["count"])]
    cols = ["index", "seed", "family", "alpha", "s", "R", "theta", "gap"]
    write_csv(out / "faberkrahn.csv", cols, ([getattr(r, c) for c in cols] for r in rows), cfg, "faberkrahn-scan")
    bad = [r for r in rows if r.gap < -cfg["tol"]]
    return EXIT_PROPERTY if bad else EXIT_OK


def _function_from_cfg(spec: dict, alpha: float, N: int, seed: int, grid) -> BergmanFunctionDisc:
    kind = spec.get("kind")
    if kind == "kernel":
        f, _ = kernel_disc(KernelSpecDisc(alpha, complex(*spec["w"])), N)
    elif kind == "monomial":
        f = BergmanFunctionDisc.basis(int(spec["n"]), alpha, N)
    elif kind == "random":
        f = random_unit_function(int(spec.get("N", 24)), alpha, tuple_rng(seed, 0))
    elif kind == "coefficients":
        f = BergmanFunctionDisc(alpha, np.array([complex(*c) for c in spec["coeffs"]]))
    elif kind == "signal":
        sig = signal_from_json(spec["signal"])
        if sig.alpha != alpha:
            raise UsageError("signal alpha differs from config alpha")
        cal = calibrate_unitarity(alpha)
        f = signal_to_disc(sig, N, grid, cal.kappa)
    else:
        raise UsageError(f"unknown function kind {kind!r}")
    if f.norm() == 0:
        raise UsageError("the function is identically zero")
    return f


def cmd_rearrange(cfg: dict, out: Path) -> int:
    a = _check_alpha(cfg["alpha"])
    grid = build_disk_grid(cfg["grid"][0], cfg["grid"][1], a)
    f = _function_from_cfg(cfg["function"], a, cfg["basis"], cfg["seed"], grid)
    if not 0 < cfg["s_min"] < cfg["s_max"]:
        raise UsageError("need 0 < s_min < s_max")
    u = u_profile(f, grid)
    prof = level_profile(u, grid)
    s = np.linspace(cfg["s_min"], cfg["s_max"], cfg["n_s"])
    th = theta(s, a)
    I = prof.I(s)
    write_csv(out / "rearrange.csv", ["s", "ustar", "I", "theta"], zip(s, prof.ustar(s), I, th), cfg, "rearrange")
    rows = isoperimetric_audit(u_function(f), prof, cfg["audit_s"], cfg["n_pix"])
    audit = [dict(s=r.s, level=r.level, length=r.length, bound=r.bound, ratio=r.ratio,
                  margin=r.margin, n_curves=r.n_curves, note=r.note) for r in rows]
    env_ok = bool(np.all(I <= th + cfg["envelope_tol"]))
    audit_ok = all(r.margin >= -cfg["audit_slack"] for r in rows if r.n_curves)
    payload = {
        "envelope_max_excess": float(np.max(I - th)), "envelope_ok": env_ok,
        "ustar0": float(prof.ustar(0.0)), "ustar0_bound": (1.0 + a) / math.pi,
        "audit": audit, "audit_ok": audit_ok,
        "level_profile": prof.to_json(s, cfg["n_levels"]),
    }
    write_json(out / "rearrange_audit.json", payload, cfg, "rearrange")
    return EXIT_OK if env_ok and audit_ok else EXIT_PROPERTY


def default_candidates(alpha: float, s: float) -> list:
    """Domains of Lebesgue measure s used against the stated minimiser."""
    rho = math.sqrt(s / math.pi)
    out = []
    if alpha != 0:
        out.append(EuclideanDisc(complex(0.5 * (1 - rho), 0.0), rho))
    if alpha > 0:
        out.append(centered_disc(rho))
    if alpha < 0:
        out.append(Annulus(math.sqrt(1 - s / math.pi), 1.0))
    r_in = 0.5 * math.sqrt(1 - s / math.pi)
    out.append(Annulus(r_in, math.sqrt(r_in ** 2 + s / math.pi)))
    if s < 2:
        h = math.sqrt(s) / 2
        out.append(Polygon((complex(-h, -h), complex(h, -h), complex(h, h), complex(-h, h))))
    return out


def cmd_section4(cfg: dict, out: Path) -> int:
    a = _check_alpha(cfg["alpha"])
    s = float(cfg["s"])
    if not 0 < s < math.pi:
        raise UsageError("s (Lebesgue measure) must lie in (0, pi)")
    closed = {"theta1": theta1(s, a), "theta1_integral": theta1_integral(s, a),
              "theta2": theta2(s, a), "theta2_integral": theta2_integral(s, a)}
    closed["ok"] = (abs(closed["theta1"] - closed["theta1_integral"]) < 1e-10
                    and abs(closed["theta2"] - closed["theta2_integral"]) < 1e-10)
    cands = ([domain_from_json(c) for c in cfg["candidates"]] if cfg["candidates"] is not None
             else default_candidates(a, s))
    lm = lebesgue_min_check(a, s, cands, cfg["basis"])
    esc = escape_demo(a, n_max=cfg["escape_n_max"], r=cfg["escape_r"])
    ann = annuli_infimum_demo(a, cfg["annuli_s"], cfg["annuli_k_max"])
    ann_ok = bool(all(y < x for x, y in zip(ann.sup_R, ann.sup_R[1:])) and ann.sup_R[-1] < 0.05)
    claims = {"closed_forms": closed["ok"], "minimizer": lm.passed,
              "escape": esc.first_n_above is not None, "annuli": ann_ok}
    payload = {"closed_forms": closed, "lebesgue_min_check": lm.to_json(), "escape": esc.to_json(),
               "annuli": ann.to_json(), "claims": claims}
    write_json(out / "section4.json", payload, cfg, "section4")
    return EXIT_OK if all(claims.values()) else EXIT_PROPERTY


COMMANDS = {
    "theta": cmd_theta,
    "concentrate": cmd_concentrate,
    "faberkrahn-scan": cmd_faberkrahn_scan,
    "rearrange": cmd_rearrange,
    "section4": cmd_section4,
}


def _grid_arg(text: str):
    try:
        nr, nt = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected NR,NT") from exc
    return nr, nt


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"hypercon: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypercon", description="Wavelet and Bergman-space concentration experiments.")
    p.add_argument("--version", action="version", version=f"hypercon {__version__}")
    p.add_argument("subcommand", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, type=Path, help="JSON configuration file")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory (created if missing)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=_grid_arg, default=None, help="polar grid NR,NT")
    p.add_argument("--basis", type=int, default=None, help="basis truncation N")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = json.loads(args.config.read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
        cfg = _resolve(args.subcommand, raw, args)
        args.out.mkdir(parents=True, exist_ok=True)
        code = COMMANDS[args.subcommand](cfg, args.out)
    except (EigenSolverError, CalibrationError, GateError, FloatingPointError) as exc:
        print(f"hypercon: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, json.JSONDecodeError, UsageError, DomainError, DivergentMeasureError, GeometryError,
            KeyError, TypeError, ValueError) as exc:
        print(f"hypercon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"hypercon {args.subcommand}: exit {code}, outputs in {args.out}")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
