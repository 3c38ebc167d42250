"""Command-line front end.

Every command writes its result to ``--out`` (or stdout) and, when writing
to a file, a ``<out>.manifest.json`` sidecar recording the inputs, the
constants version and a SHA-256 digest of the output bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from . import analysis as an
from . import coherence as coh
from . import feasibility as fz
from .catalog import format_quantity, get_entry, load_catalog, parse_quantity
from .radiometry import CONSTANTS, CONSTANTS_VERSION, DEFAULT_V_REFERENCE_FLUX, flux_from_magnitude
from .verify import SUITES, run_suite

SCHEMA_VERSION = "nehbt-output/1"
CSV_HEADER = ("baseline_m", "gamma2", "gamma2_single")


def _fmt(v):
    return f"{v:.17g}"


def parse_grid(text):
    """``start:stop:points[:log]`` in metres (unit suffixes allowed on start/stop)."""
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected start:stop:points[:log]")
    start = parse_quantity(parts[0], "length")[0]
    stop = parse_quantity(parts[1], "length")[0]
    points = int(parts[2])
    if points < 1 or start < 0 or stop < start:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}")
    if len(parts) == 4:
        if start <= 0:
            raise argparse.ArgumentTypeError("log grids need start > 0")
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def _frequency(text):
    return parse_quantity(text, "frequency")[0]


def _length(text):
    return parse_quantity(text, "length")[0]


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serialisable: {type(o)}")


def _manifest(command, inputs, seed=None):
    m = {"command": command, "inputs": inputs, "constants_version": CONSTANTS_VERSION,
         "schema": SCHEMA_VERSION, "tool_version": __version__}
    if seed is not None:
        m["seed"] = seed
    return m


def _emit(args, text, manifest):
    data = text.encode()
    if args.out:
        out = Path(args.out)
        out.write_bytes(data)
        side = dict(manifest, output_digest="sha256:" + hashlib.sha256(data).hexdigest())
        Path(str(out) + ".manifest.json").write_text(_json(side))
    else:
        sys.stdout.write(text)


def _system_from_args(args):
    entry = get_entry(args.system)
    return entry, entry.system()


# -- commands ---------------------------------------------------------------------


def cmd_curve(args):
    entry, system = _system_from_args(args)
    grid = args.grid if args.grid is not None else np.array([0.0])
    omega = coh.angular_frequency(args.nu)
    g = np.atleast_1d(coh.gamma2_binary(grid, system, args.nu, args.alpha))
    gs = np.atleast_1d(coh.gamma2_single(grid, system.body_a.radius, system.observer_distance_D, omega))
    inputs = {"system": entry.key, "nu_Hz": args.nu, "alpha_rad": args.alpha,
              "grid": args.grid_text or "0:0:1"}
    manifest = _manifest("curve", inputs)
    if args.format == "json":
        body = {"manifest": manifest, "columns": list(CSV_HEADER),
                "rows": [[float(a), float(b), float(c)] for a, b, c in zip(grid, g, gs)]}
        text = _json(body)
    else:
        lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(manifest.items())]
        lines.append(",".join(CSV_HEADER))
        lines += [",".join(_fmt(v) for v in row) for row in zip(grid, g, gs)]
        text = "\n".join(lines) + "\n"
    _emit(args, text, manifest)
    return 0


def _features_dict(fs):
    d = asdict(fs)
    return {
        "gamma_min": d["gamma_min"], "gamma_min_source": d["gamma_min_source"],
        "gamma_inf": d["gamma_inf"], "x_osc_m": d["x_osc"], "x_asy_m": d["x_asy"],
        "f_osc": d["f_osc"], "f_asy": d["f_asy"], "usable_minima": d["usable_minima"],
    }


def cmd_features(args):
    entry, system = _system_from_args(args)
    out = {
        "closed_form": _features_dict(an.forward_features(system, args.nu, args.alpha, "closed_form")),
        "curve_at_x_osc": _features_dict(an.forward_features(system, args.nu, args.alpha, "curve")),
    }
    if args.grid is not None:
        curve = coh.sample_curve(system, args.nu, args.grid, args.alpha)
        omega = coh.angular_frequency(args.nu)
        try:
            out["extracted"] = _features_dict(
                an.extract_features(curve, (omega, system.observer_distance_D)))
        except an.PlateauNotReached as exc:
            out["extracted"] = {"error": str(exc)}
    r = coh.derived_ratios(system, args.nu)
    out["ratios"] = {"s": r.s, "N": r.N}
    manifest = _manifest("features", {"system": entry.key, "nu_Hz": args.nu, "alpha_rad": args.alpha,
                                      "grid": args.grid_text})
    _emit(args, _json({"manifest": manifest, "features": out}), manifest)
    return 0


def cmd_decide(args):
    if args.system:
        entry, system = _system_from_args(args)
        res = an.classify_strategy(system, args.nu, args.threshold)
        inputs = {"system": entry.key, "nu_Hz": args.nu}
        label, f_osc, f_asy, N = res.dominant_feature, res.f_osc, res.f_asy, res.N
        t_minus, t_plus, size_ok = res.T_minus, res.T_plus, res.size_bound_ok
    else:
        if args.TA is None or args.TB is None:
            raise SystemExit("decide needs --system or both --TA and --TB")
        from .radiometry import occupation_ratio
        N = float(occupation_ratio(args.nu, args.TB, args.TA))
        s = args.radius_ratio**2
        label, f_osc, f_asy = an.classify_by_ratios(s, N, args.threshold)
        t_minus, t_plus = an.decision_boundaries(coh.angular_frequency(args.nu), args.TA)
        size_ok = an.size_bound_check(1.0, args.radius_ratio)
        inputs = {"T_A_K": args.TA, "T_B_K": args.TB, "nu_Hz": args.nu, "radius_ratio": args.radius_ratio}
    body = {
        "dominant_feature": label, "T_minus_K": t_minus, "T_plus_K": t_plus,
        "size_bound_ok": size_ok, "f_osc": f_osc, "f_asy": f_asy, "N": N,
        "appreciability_threshold": args.threshold,
    }
    manifest = _manifest("decide", inputs)
    _emit(args, _json({"manifest": manifest, "decision": body}), manifest)
    return 0


def _estimate_dict(est):
    return {
        "R_A_m": est.R_A, "d_m": est.d, "d_apparent_m": est.d_apparent,
        "s_branches": list(est.s_branches), "N_branches": list(est.N_branches),
        "T_B_branches_K": list(est.T_B) if est.T_B is not None else None,
        "selected_s": est.selected_s, "selected_branch_rule": est.selected_branch_rule,
        "flags": list(est.flags),
    }


def cmd_estimate(args):
    omega = coh.angular_frequency(args.nu)
    alpha = None if args.alpha_unknown else (args.alpha if args.alpha is not None else math.pi / 2)
    if args.system:
        entry, system = _system_from_args(args)
        fs = an.forward_features(system, args.nu, minimum=args.minimum)
        D = system.observer_distance_D
        T_A = args.TA if args.TA is not None else system.body_a.temperature
        est = an.estimate_parameters(fs, omega, D, T_A, alpha=alpha)
        r = coh.derived_ratios(system, args.nu)
        truth = {"R_A_m": system.body_a.radius, "d_m": system.separation_d, "s": r.s, "N": r.N,
                 "T_B_K": system.body_b.temperature}
        rel = lambda a, b: abs(a - b) / abs(b)
        checks = {
            "R_A_rel_error": rel(est.R_A, truth["R_A_m"]),
            "d_rel_error": rel(est.d, truth["d_m"]) if est.d is not None else None,
            "s_best_rel_error": min(rel(v, r.s) for v in est.s_branches),
            "N_best_rel_error": min(rel(v, r.N) for v in est.N_branches),
        }
        tol = args.round_trip_tol
        checks["success"] = bool(
            checks["R_A_rel_error"] <= tol
            and (checks["d_rel_error"] is None or checks["d_rel_error"] <= tol)
            and checks["s_best_rel_error"] <= tol and checks["N_best_rel_error"] <= tol
        )
        body = {"features": _features_dict(fs), "estimate": _estimate_dict(est),
                "truth": truth, "round_trip": checks}
        inputs = {"system": entry.key, "nu_Hz": args.nu, "minimum": args.minimum}
        status = 0 if checks["success"] else 1
    else:
        need = ("gamma_min", "gamma_inf", "x_osc", "x_asy", "D")
        missing = [n for n in need if getattr(args, n) is None]
        if missing:
            raise SystemExit(f"estimate needs --system or all of: {', '.join('--' + m.replace('_', '-') for m in missing)}")
        fs = an.FeatureSet(args.gamma_min, args.gamma_inf, args.x_osc, args.x_asy,
                           math.nan, math.nan, 0, "measured")
        est = an.estimate_parameters(fs, omega, args.D, args.TA, alpha=alpha)
        body = {"estimate": _estimate_dict(est)}
        inputs = {k: getattr(args, k) for k in need + ("TA", "nu")}
        status = 0
    manifest = _manifest("estimate", inputs)
    _emit(args, _json({"manifest": manifest, **body}), manifest)
    return status


FEASIBILITY_GAP_NOTE = (
    "Integration times scale with the reference flux, dead time and flux "
    "convention given here; treat them as formula-level estimates."
)


def cmd_feasibility(args):
    entry, system = _system_from_args(args)
    inst = fz.InstrumentConfig.from_dead_time(
        args.dead_time, telescope_radius=args.telescope_radius,
        quantum_efficiency=args.efficiency,
    )
    nu = CONSTANTS.c / inst.filter_center_wavelength
    omega = coh.angular_frequency(nu)
    x_osc = coh.baseline_osc(omega, system.observer_distance_D, system.separation_d)
    g = coh.gamma2_binary(x_osc, system, nu)
    flux = flux_from_magnitude(entry.apparent_magnitude_V, args.reference_flux)
    rep = fz.budget(inst, flux, g, args.target_snr, args.attenuated_rate)
    tau_coh, p_pair = fz.timing_budget(system.body_a.temperature, args.binning_time)
    body = {
        "system": entry.key,
        "reference_flux_W_m2_nm": args.reference_flux,
        "flux_W_m2_nm": flux,
        "photon_rate_per_s": rep.photon_rate,
        "attenuated_rate_per_s": rep.attenuated_rate,
        "frequency_Hz": nu,
        "baseline_x_osc_m": x_osc,
        "gamma2_at_x_osc": g,
        "target_snr": args.target_snr,
        "integration_time_s": rep.integration_time,
        "electronic_bandwidth_Hz": inst.electronic_bandwidth,
        "coherence_time_s": tau_coh,
        "pair_probability": p_pair,
        "note": FEASIBILITY_GAP_NOTE,
    }
    inputs = {"system": entry.key, "dead_time_s": args.dead_time, "target_snr": args.target_snr,
              "attenuated_rate": args.attenuated_rate, "reference_flux": args.reference_flux}
    manifest = _manifest("feasibility", inputs)
    _emit(args, _json({"manifest": manifest, "feasibility": body}), manifest)
    return 0


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, seed=args.seed, samples=args.samples, workers=args.workers,
                         frequency=args.nu) for n in names]
    passed = all(r["passed"] for r in reports)
    manifest = _manifest("verify", {"suite": args.suite, "samples": args.samples, "nu_Hz": args.nu},
                         seed=args.seed)
    _emit(args, _json({"manifest": manifest, "passed": passed, "reports": reports}), manifest)
    for r in reports:
        print(f"{r['suite']}: {'PASS' if r['passed'] else 'FAIL'}", file=sys.stderr)
    return 0 if passed else 1


def cmd_catalog(args):
    cat = load_catalog()
    if args.action == "list":
        text = "".join(f"{k}\t{v.name}\n" for k, v in sorted(cat.items()))
    else:
        if args.name not in cat:
            raise SystemExit(f"unknown system {args.name!r}")
        text = _json(cat[args.name].as_display())
    sys.stdout.write(text)
    return 0


# -- parser ------------------------------------------------------------------------


class _GridAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        try:
            setattr(namespace, self.dest, parse_grid(values))
        except (argparse.ArgumentTypeError, ValueError) as exc:
            parser.error(str(exc))
        namespace.grid_text = values


def build_parser():
    p = argparse.ArgumentParser(prog="nehbt", description="Nonequilibrium HBT coherence toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, system=True, nu=True, grid=False):
        if system:
            sp.add_argument("--system", help="catalog key (see `catalog list`)")
        if nu:
            sp.add_argument("--nu", type=_frequency, default=600e12, help="frequency, e.g. 6e14 or '600 THz'")
        sp.add_argument("--alpha", type=float, default=None, help="orbital phase angle (rad)")
        if grid:
            sp.add_argument("--grid", action=_GridAction, default=None,
                            help="baseline grid start:stop:points[:log] (m)")
        sp.set_defaults(grid_text=None, grid=None)
        sp.add_argument("--format", choices=("csv", "json"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("curve", help="coherence curve on a baseline grid")
    common(sp, grid=True)
    sp.set_defaults(func=cmd_curve, format="csv")

    sp = sub.add_parser("features", help="characteristic features of a system")
    common(sp, grid=True)
    sp.set_defaults(func=cmd_features)

    sp = sub.add_parser("decide", help="which feature dominates the measurement")
    common(sp)
    sp.add_argument("--TA", type=float)
    sp.add_argument("--TB", type=float)
    sp.add_argument("--radius-ratio", type=float, default=1.0, help="R_B/R_A when no --system")
    sp.add_argument("--threshold", type=float, default=an.APPRECIABLE)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("estimate", help="invert features to system parameters")
    common(sp)
    sp.add_argument("--gamma-min", type=float)
    sp.add_argument("--gamma-inf", type=float)
    sp.add_argument("--x-osc", type=_length)
    sp.add_argument("--x-asy", type=_length)
    sp.add_argument("--D", type=_length, help="observer distance, e.g. '250 ly'")
    sp.add_argument("--TA", type=float)
    sp.add_argument("--alpha-unknown", action="store_true", help="report only the apparent separation")
    sp.add_argument("--minimum", choices=("closed_form", "curve"), default="closed_form")
    sp.add_argument("--round-trip-tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("feasibility", help="photon rate and integration-time budget")
    common(sp, nu=False)
    sp.add_argument("--dead-time", type=float, required=True, help="detector dead time (s)")
    sp.add_argument("--target-snr", type=float, default=50.0)
    sp.add_argument("--attenuated-rate", type=float, default=None, help="cap on detected rate (1/s)")
    sp.add_argument("--reference-flux", type=float, default=DEFAULT_V_REFERENCE_FLUX,
                    help="V-band zero point F' (W m^-2 nm^-1)")
    sp.add_argument("--telescope-radius", type=float, default=0.6)
    sp.add_argument("--efficiency", type=float, default=0.3)
    sp.add_argument("--binning-time", type=float, default=1e-8)
    sp.set_defaults(func=cmd_feasibility)

    sp = sub.add_parser("verify", help="run oracle verification suites")
    common(sp, system=False)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", help="inspect the system catalog")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_system = args.command in ("curve", "features", "feasibility")
    if needs_system and not getattr(args, "system", None):
        parser.error(f"{args.command} requires --system")
    try:
        return args.func(args)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
