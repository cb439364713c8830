"""Batch command-line front door.

Subcommands::

    constants       print the exact problem constants as JSON
    simulate        minimize the n-particle energy, write CSV/JSON/SVG
    verify-el       Euler-Lagrange equality/inequality verification
    verify-fourier  direct vs spectral interaction energy + sign witness
    field           evaluate F = V*m + |x|^2/2 at points from a CSV
    convexity       energy convexity probe along a density segment

Every verification subcommand writes a JSON report with a ``violations``
array; the exit code is 0 when all contracts hold, 1 on any violation,
and 2 on usage or configuration errors.  All settings are explicit flags
(optionally seeded from a JSON config file; flags win), never
environment variables, so runs are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analytic, elcheck, fourier, measure, particle, quadrature
from ._ioutil import dumps_json, fmt_float, write_text

__all__ = ["run"]

USAGE_ERROR = 2
VIOLATION = 1


def _load_config(path) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _merge(defaults: dict, config: dict, args: argparse.Namespace) -> dict:
    """Defaults, overridden by config-file values, overridden by flags."""
    out = dict(defaults)
    for key, val in config.items():
        key = key.replace("-", "_")
        if key not in out:
            raise ValueError(f"unknown config key {key!r}")
        out[key] = val
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    return out


def _write_report(path, payload: dict) -> None:
    text = dumps_json(payload)
    if path is None:
        sys.stdout.write(text)
    else:
        write_text(path, text)


def _svg_scatter(config: particle.Configuration, path) -> None:
    """Static SVG: final particle positions with the semicircle density
    profile drawn sideways along the vertical axis."""
    size = 640
    pad = 40
    hw = analytic.SUPPORT_HALFWIDTH
    extent = max(hw + 0.4, float(np.abs(config.positions).max()) * 1.1)

    def to_px(x, y):
        sx = pad + (x + extent) / (2 * extent) * (size - 2 * pad)
        sy = pad + (extent - y) / (2 * extent) * (size - 2 * pad)
        return sx, sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    ax0 = to_px(-extent, 0.0)
    ax1 = to_px(extent, 0.0)
    ay0 = to_px(0.0, -extent)
    ay1 = to_px(0.0, extent)
    for (xa, ya), (xb, yb) in ((ax0, ax1), (ay0, ay1)):
        parts.append(
            f'<line x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}" '
            f'stroke="#999999" stroke-width="1"/>'
        )
    ts = np.linspace(-hw, hw, 201)
    curve = " ".join(
        "{:.2f},{:.2f}".format(*to_px(analytic.semicircle_density(t), t))
        for t in ts
    )
    parts.append(
        f'<polyline points="{curve}" fill="none" stroke="#2060c0" stroke-width="1.5"/>'
    )
    for x1, x2 in config.positions:
        px, py = to_px(x1, x2)
        parts.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="#c03020" '
            f'fill-opacity="0.8"/>'
        )
    parts.append(
        f'<text x="{pad}" y="{pad - 12}" font-family="monospace" font-size="12">'
        f"n={config.n} seed={config.seed} init={config.label}</text>"
    )
    parts.append("</svg>")
    write_text(path, "\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_constants(args) -> int:
    c = analytic.constants()
    _write_report(
        getattr(args, "report", None),
        {
            "schema_version": 1,
            "el_constant": c.el_constant,
            "minimal_energy": c.minimal_energy,
            "confinement_moment": c.confinement_moment,
            "support_halfwidth": c.support_halfwidth,
            "lower_bound_coeff": c.lower_bound_coeff,
        },
    )
    return 0


def _cmd_simulate(args, config: dict) -> int:
    defaults = {
        "n": None,
        "seed": 0,
        "init": "uniform_disk",
        "max_iters": 50_000,
        "grad_tol": None,
    }
    opts = _merge(defaults, config, args)
    if opts["n"] is None:
        raise ValueError("simulate requires --n")
    if int(opts["n"]) < 1:
        raise ValueError("--n must be at least 1")
    if opts["init"] not in particle.INIT_KINDS:
        raise ValueError(f"--init must be one of {particle.INIT_KINDS}")
    grad_tol = None if opts["grad_tol"] is None else float(opts["grad_tol"])
    if (grad_tol is not None and grad_tol <= 0) or int(opts["max_iters"]) < 1:
        raise ValueError("--grad-tol and --max-iters must be positive")

    c0 = particle.init_configuration(int(opts["n"]), int(opts["seed"]), opts["init"])
    result = particle.minimize(
        c0,
        particle.MinimizeOptions(
            max_iters=int(opts["max_iters"]), grad_tol=grad_tol
        ),
    )
    final = result.config
    if args.out:
        particle.save_configuration(final, args.out)
    if args.trajectory:
        particle.save_trajectory(result, args.trajectory)
    if args.svg:
        _svg_scatter(final, args.svg)

    violations = []
    if not result.converged:
        shown = "auto" if grad_tol is None else f"{grad_tol:g}"
        violations.append(
            f"descent did not reach grad_tol={shown} "
            f"within {opts['max_iters']} iterations"
        )
    payload = {"schema_version": 1}
    if final.n >= 2:
        payload.update(measure.report(final).to_dict())
    else:
        payload.update(
            {
                "ks_distance": measure.ks_semicircle(final),
                "wall_width": measure.wall_width(final),
                "energy_gap": None,
                "n": final.n,
            }
        )
    payload.update(
        {
            "converged": result.converged,
            "iterations": result.iterations,
            "energy": result.energy,
            "scaled_energy": result.energy / final.n**2,
            "violations": violations,
        }
    )
    _write_report(args.report, payload)
    return VIOLATION if violations else 0


def _cmd_verify_el(args, config: dict) -> int:
    defaults = {
        "xmax": 3.0,
        "step": 0.05,
        "tol": 1e-6,
        "quad_tol": 1e-9,
        "support_points": 101,
        "threads": os.cpu_count() or 1,
    }
    opts = _merge(defaults, config, args)
    if opts["xmax"] <= 0 or not 0 < opts["step"] < opts["xmax"]:
        raise ValueError("need xmax > 0 and 0 < step < xmax")
    if opts["tol"] <= 0 or opts["quad_tol"] <= 0:
        raise ValueError("tolerances must be positive")
    if int(opts["support_points"]) < 2:
        raise ValueError("--support-points must be at least 2")

    support = elcheck.check_support(
        int(opts["support_points"]), tol=opts["tol"], quad_tol=opts["quad_tol"]
    )
    global_ = elcheck.check_global(
        opts["xmax"],
        opts["step"],
        tol=opts["tol"],
        quad_tol=opts["quad_tol"],
        threads=int(opts["threads"]),
    )
    violations = []
    if not support.passed:
        violations.append(
            f"support deviation {support.max_deviation:.3e} exceeds tol "
            f"{opts['tol']:g} at t={support.worst_t:.6f}"
        )
    if global_.min_margin < -opts["tol"]:
        violations.append(
            f"F - c1 = {global_.min_margin:.3e} below -tol at {global_.worst_point}"
        )
    if global_.off_tube_min_margin <= 0.0:
        violations.append(
            f"margin off the support tube not strictly positive: "
            f"{global_.off_tube_min_margin:.3e}"
        )
    if global_.dfdx1_min <= 0.0:
        violations.append(f"dF/dx1 not positive off axis: {global_.dfdx1_min:.3e}")

    payload = json.loads(elcheck.el_report_json(support, global_))
    payload.update(
        {
            "off_tube_min_margin": global_.off_tube_min_margin,
            "dfdx1_min": global_.dfdx1_min,
            "violations": violations,
        }
    )
    _write_report(args.report, payload)
    return VIOLATION if violations else 0


def _neutral_test_density(seed: int, box: float, grid: int) -> fourier.GridDensity:
    """Difference of two unit-mass Gaussian bumps with seeded geometry."""
    rng = np.random.default_rng(20_000 + seed)
    centers = rng.uniform(-1.2, 1.2, size=(2, 2))
    sigmas = rng.uniform(0.3, 0.5, size=2)

    def make(center, sigma):
        gd = fourier.GridDensity.from_function(
            lambda x1, x2: np.exp(
                -((x1 - center[0]) ** 2 + (x2 - center[1]) ** 2) / (2 * sigma**2)
            ),
            L=box,
            N=grid,
        )
        return gd.samples / gd.mass()

    samples = make(centers[0], sigmas[0]) - make(centers[1], sigmas[1])
    return fourier.GridDensity(L=box, N=grid, samples=samples, neutral=True)


def _cmd_verify_fourier(args, config: dict) -> int:
    defaults = {"grid": 512, "box": 4.0, "cases": 5, "rel_tol": 0.02}
    opts = _merge(defaults, config, args)
    if int(opts["grid"]) < 16 or opts["box"] <= 0 or int(opts["cases"]) < 1:
        raise ValueError("need grid >= 16, box > 0, cases >= 1")

    violations = []
    cases = []
    for case in range(int(opts["cases"])):
        f = _neutral_test_density(case, opts["box"], int(opts["grid"]))
        direct = fourier.interaction_direct(f)
        spectral = fourier.interaction_spectral(f)
        rel = abs(direct - spectral) / abs(spectral)
        cases.append(
            {"case": case, "direct": direct, "spectral": spectral, "rel_diff": rel}
        )
        if rel > opts["rel_tol"]:
            violations.append(
                f"case {case}: direct/spectral relative difference {rel:.4f} "
                f"exceeds {opts['rel_tol']:g}"
            )
        if direct < 0.0:
            violations.append(f"case {case}: neutral interaction negative: {direct:g}")

    # Sign structure of the transformed potential (witness grid L=1.25).
    r0 = 0.04
    bump = fourier.GridDensity.from_function(
        lambda x1, x2: _mollifier(np.hypot(x1, x2), r0), L=1.25, N=512
    )
    negative = fourier.vhat_pairing(bump)
    shifted = fourier.GridDensity.from_function(
        lambda x1, x2: _mollifier(np.hypot(x1 - 0.4, x2 - 0.4), r0 * 5), L=1.25, N=512
    )
    positive = fourier.vhat_pairing(shifted)
    if not negative < 0.0:
        violations.append(f"origin bump pairing not negative: {negative:g}")
    if not positive > 0.0:
        violations.append(f"shifted bump pairing not positive: {positive:g}")

    payload = {
        "schema_version": 1,
        "grid": int(opts["grid"]),
        "box": float(opts["box"]),
        "cases": cases,
        "witness": {"origin_bump_pairing": negative, "shifted_bump_pairing": positive},
        "violations": violations,
    }
    _write_report(args.report, payload)
    return VIOLATION if violations else 0


def _mollifier(r, r0: float):
    """Smooth radial bump supported on r < r0 with value 1 at the centre."""
    s2 = np.minimum((np.asarray(r) / r0) ** 2, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        out = np.exp(1.0 - 1.0 / (1.0 - s2))
    return np.where(s2 < 1.0, out, 0.0)


def _cmd_field(args, config: dict) -> int:
    defaults = {"tol": quadrature.DEFAULT_TOL}
    opts = _merge(defaults, config, args)
    if opts["tol"] <= 0:
        raise ValueError("--tol must be positive")
    points = []
    with open(args.points, "r", encoding="utf-8") as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = [col.strip() for col in line.split(",")]
                if "x1" not in header or "x2" not in header:
                    raise ValueError("points CSV needs x1 and x2 columns")
                i1, i2 = header.index("x1"), header.index("x2")
                continue
            cols = line.split(",")
            points.append((float(cols[i1]), float(cols[i2])))
    lines = ["x1,x2,F"]
    for x1, x2 in points:
        val = quadrature.F_field((x1, x2), opts["tol"])
        lines.append(f"{fmt_float(x1)},{fmt_float(x2)},{fmt_float(val)}")
    write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _circle_law_density(box: float, grid: int) -> fourier.GridDensity:
    gd = fourier.GridDensity.from_function(
        lambda x1, x2: np.where(x1**2 + x2**2 <= 1.0, 1.0 / math.pi, 0.0),
        L=box,
        N=grid,
    )
    return fourier.GridDensity(
        L=box, N=grid, samples=gd.samples / gd.mass()
    )


def _mollified_wall_density(
    box: float, grid: int, sigma: float = 0.1
) -> fourier.GridDensity:
    def fn(x1, x2):
        profile = np.sqrt(np.maximum(2.0 - x2**2, 0.0)) / math.pi
        ridge = np.exp(-(x1**2) / (2 * sigma**2)) / (sigma * math.sqrt(2 * math.pi))
        return profile * ridge

    gd = fourier.GridDensity.from_function(fn, L=box, N=grid)
    return fourier.GridDensity(L=box, N=grid, samples=gd.samples / gd.mass())


def _cmd_convexity(args, config: dict) -> int:
    defaults = {"k": 10, "grid": 256, "box": 2.0}
    opts = _merge(defaults, config, args)
    if int(opts["k"]) < 1:
        raise ValueError("--k must be at least 1")
    if int(opts["grid"]) < 16 or opts["box"] <= 1.5:
        raise ValueError("need grid >= 16 and box > 1.5 (support must fit)")
    k = int(opts["k"])
    f0 = _circle_law_density(opts["box"], int(opts["grid"]))
    f1 = _mollified_wall_density(opts["box"], int(opts["grid"]))
    values = fourier.convexity_probe(f0, f1, k)
    second = values[:-2] - 2.0 * values[1:-1] + values[2:] if k >= 2 else np.array([])
    violations = []
    if k >= 2 and not np.all(second > 0.0):
        violations.append(
            f"second differences not strictly positive (min {second.min():.3e})"
        )
    payload = {
        "schema_version": 1,
        "k": k,
        "t": [i / k for i in range(k + 1)],
        "energy": list(values),
        "second_differences": list(second),
        "argmin_t": float(np.argmin(values)) / k,
        "violations": violations,
    }
    _write_report(args.report, payload)
    return VIOLATION if violations else 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dislab",
        description="Anisotropic dislocation energy laboratory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print exact problem constants as JSON")
    p.add_argument("--report", help="write JSON here instead of stdout")

    p = sub.add_parser("simulate", help="minimize the n-particle energy")
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--init", choices=particle.INIT_KINDS)
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.add_argument("--grad-tol", dest="grad_tol", type=float)
    p.add_argument("--out", help="final configuration CSV")
    p.add_argument("--trajectory", help="per-iteration CSV")
    p.add_argument("--svg", help="static scatter plot")
    p.add_argument("--report", help="empirical report JSON")

    p = sub.add_parser("verify-el", help="verify the Euler-Lagrange conditions")
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--xmax", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--quad-tol", dest="quad_tol", type=float)
    p.add_argument("--support-points", dest="support_points", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--report", help="EL report JSON")

    p = sub.add_parser(
        "verify-fourier", help="direct vs spectral energies and sign witness"
    )
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--grid", type=int)
    p.add_argument("--box", type=float)
    p.add_argument("--cases", type=int)
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--report", help="report JSON")

    p = sub.add_parser("field", help="evaluate F at points from a CSV")
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--points", required=True, help="input CSV with x1,x2 columns")
    p.add_argument("--out", required=True, help="output CSV (x1,x2,F)")
    p.add_argument("--tol", type=float)

    p = sub.add_parser("convexity", help="energy convexity probe")
    p.add_argument("--config", help="JSON config file (flags override)")
    p.add_argument("--k", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--box", type=float)
    p.add_argument("--report", help="report JSON")

    return parser


def run(argv=None) -> int:
    """Dispatch a command line; returns the process exit code."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "simulate":
            return _cmd_simulate(args, config)
        if args.command == "verify-el":
            return _cmd_verify_el(args, config)
        if args.command == "verify-fourier":
            return _cmd_verify_fourier(args, config)
        if args.command == "field":
            return _cmd_field(args, config)
        if args.command == "convexity":
            return _cmd_convexity(args, config)
        raise AssertionError(f"unhandled command {args.command}")
    except (ValueError, OSError, KeyError) as exc:
        print(f"dislab: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
