"""Command-line interface.

One subcommand per computation family: scalar symmetric rates, g.d.o.f.
curves, rate regions with gap certificates, scheme simulations, and dB
grid scans of the gap.  Artifacts are CSV (RFC-4180, header row) or JSON
(pretty-printed, sorted keys); identical invocations produce byte-identical
output.

Gains are accepted in dB via --*-db or linear via --*; giving both forms
of the same gain is a usage error.  Exit codes: 0 success, 1 a computed
contract or simulation check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds, deterministic, gdof, geometry, montecarlo
from .channel import GaussianChannelParams, SymmetricGaussianParams, from_db

DEFAULT_SEED = 7419  # arbitrary fixed constant, documented in the README
_TOL = 1e-9


class UsageError(Exception):
    pass


def _gain(args, name: str, required: bool = True):
    lin = getattr(args, name.replace("-", "_"))
    db = getattr(args, name.replace("-", "_") + "_db")
    if lin is not None and db is not None:
        raise UsageError(f"give --{name} or --{name}-db, not both")
    if db is not None:
        return from_db(db)
    if lin is None and required:
        raise UsageError(f"missing --{name} (or --{name}-db)")
    return lin


def _add_gain(parser, name: str, help_noun: str) -> None:
    dest = name.replace("-", "_")
    parser.add_argument(f"--{name}", type=float, dest=dest, default=None,
                        help=f"{help_noun} as a linear power ratio")
    parser.add_argument(f"--{name}-db", type=float, dest=dest + "_db",
                        default=None, help=f"{help_noun} in dB")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_rates(args) -> int:
    p = SymmetricGaussianParams(_gain(args, "snr"), _gain(args, "inr"))
    ach = bounds.symmetric_achievable_rate(p)
    outer, _ = bounds.symmetric_outer_bound(p)
    gap = outer - ach
    print(f"achievable={ach:.6f}")
    print(f"outer={outer:.6f}")
    print(f"gap={gap:.6f}")
    return 0 if -_TOL <= gap <= 1.0 + _TOL else 1


def _cmd_gdof(args) -> int:
    names = [c.strip() for c in args.curves.split(",") if c.strip()]
    if not names:
        raise UsageError("--curves must name at least one curve")
    try:
        text = gdof.gdof_csv(names, step=args.step, alpha_max=args.alpha_max)
    except ValueError as e:
        raise UsageError(str(e))
    _emit(text, args.out)
    return 0


def _gaussian_params(args) -> GaussianChannelParams:
    sym = [_gain(args, "snr", required=False),
           _gain(args, "inr", required=False)]
    asym = [_gain(args, "snr1", required=False),
            _gain(args, "snr2", required=False),
            _gain(args, "inr12", required=False),
            _gain(args, "inr21", required=False)]
    if any(v is not None for v in sym):
        if any(v is not None for v in asym):
            raise UsageError("give symmetric --snr/--inr or the four "
                             "asymmetric gains, not both")
        if any(v is None for v in sym):
            raise UsageError("symmetric channels need both --snr and --inr")
        return SymmetricGaussianParams(*sym).full()
    if any(v is None for v in asym):
        raise UsageError("need --snr/--inr or all of --snr1 --snr2 "
                         "--inr12 --inr21")
    return GaussianChannelParams(*asym)


def _cmd_region(args) -> int:
    if args.deterministic is not None:
        p = deterministic.DeterministicChannelParams(*args.deterministic)
        region = deterministic.det_capacity_region(p)
        corners = region.corner_points()
        if args.json_out:
            _emit(json.dumps(geometry.system_to_dict(region.system),
                             indent=2, sort_keys=True) + "\n", args.json_out)
        _emit(geometry.corners_to_csv(corners), args.corners_out)
        return 0

    p = _gaussian_params(args)
    rho = bounds.default_rho_grid(args.rho_grid)
    report = bounds.region_gap_report(p, rho)
    print(f"gap_sym={report.gap_sym:.6f}")
    print(f"delta1={report.delta1:.6f}")
    print(f"delta2={report.delta2:.6f}")
    print(f"delta12={report.delta12:.6f}")
    print(f"rho_at_max={report.rho_at_max:.6f}")
    if args.json_out or args.corners_out:
        ach = bounds.achievable_region(p, rho)
        out = bounds.outer_region(p, rho)
        if args.json_out:
            doc = {"achievable": json.loads(geometry.region_to_json(ach)),
                   "outer": json.loads(geometry.region_to_json(out))}
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                  args.json_out)
        if args.corners_out:
            _emit(geometry.region_corners_csv(ach), args.corners_out)
    ok = report.max_delta <= 2.0 + _TOL
    if not math.isnan(report.gap_sym):
        ok = ok and -_TOL <= report.gap_sym <= 1.0 + _TOL
    return 0 if ok else 1


def _sim_summary(name: str, extra: dict, res: dict,
                 transcript=None, path=None) -> int:
    if path and transcript is not None:
        _emit(transcript.to_json() + "\n", path)
    doc = {"scheme": name, **extra, **res}
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0 if res["failures"] == 0 else 1


def _cmd_sim_det(args) -> int:
    n, m = args.n, args.m
    if m >= n:
        sim = lambda seed: deterministic.simulate_two_stage_strong(
            n, m, seed=seed)
    else:
        sim = lambda seed: deterministic.simulate_two_stage_weak(
            n, m, seed=seed)
    res = deterministic.run_trials(sim, args.trials, args.seed)
    last = sim(args.seed)
    return _sim_summary("two_stage_strong" if m >= n else "two_stage_weak",
                        {"n": n, "m": m}, res, last, args.transcript)


def _cmd_sim_corner(args) -> int:
    t = deterministic.simulate_corner_point(args.B, seed=args.seed)
    res = {"trials": 1, "failures": 0 if t.success else 1,
           "rates": [float(r) for r in t.rates]}
    return _sim_summary("corner_point", {"B": args.B}, res, t,
                        args.transcript)


def _cmd_sim_sk(args) -> int:
    sim = lambda seed: deterministic.simulate_sk_binary(
        args.levels, args.noise_level, args.slots, seed=seed)
    res = deterministic.run_trials(sim, args.trials, args.seed)
    return _sim_summary("sk_binary",
                        {"levels": args.levels,
                         "noise_level": args.noise_level,
                         "slots": args.slots},
                        res, sim(args.seed), args.transcript)


def _cmd_sim_af_binary(args) -> int:
    sim = lambda seed: deterministic.simulate_af_binary(seed=seed)
    res = deterministic.run_trials(sim, args.trials, args.seed)
    return _sim_summary("af_binary", {}, res, sim(args.seed),
                        args.transcript)


def _cmd_sim_alamouti(args) -> int:
    gains = montecarlo.ComplexGains.from_snr_inr(_gain(args, "snr"),
                                                 _gain(args, "inr"))
    report = montecarlo.alamouti_combine_check(gains, args.samples, args.seed)
    print(report.to_json())
    return 0 if report.passed else 1


def _cmd_sim_af_gaussian(args) -> int:
    gains = montecarlo.ComplexGains.from_snr_inr(_gain(args, "snr"),
                                                 _gain(args, "inr"))
    report = montecarlo.af_weak_mc_check(gains, args.samples, args.seed)
    print(report.to_json())
    return 0 if report.passed else 1


def _db_grid(rng, step: float) -> list:
    lo, hi = rng
    if step <= 0 or hi < lo:
        raise UsageError("need step-db > 0 and max >= min")
    return [float(v) for v in np.arange(lo, hi + step / 2.0, step)]


def _cmd_gap_scan(args) -> int:
    snrs = _db_grid(args.snr_range, args.step_db)
    inrs = _db_grid(args.inr_range, args.step_db)
    if args.mode == "sym":
        rows, best = bounds.sym_gap_scan(snrs, inrs)
        header = ("snr_db", "inr_db", "achievable", "outer", "gap")
        limit, label = 1.0, "max_gap"
    else:
        rho = bounds.default_rho_grid(args.rho_grid)
        rows, best = bounds.region_gap_scan(snrs, inrs, rho)
        header = ("snr_db", "inr_db", "delta1", "delta2", "delta12")
        limit, label = 2.0, "max_delta"
    _emit(bounds.scan_rows_to_csv(header, rows), args.out)
    print(f"{label}={best[0]:.6f} at snr_db={best[1]:g} inr_db={best[2]:g}",
          file=sys.stderr)
    return 0 if best[0] <= limit + _TOL else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icfb",
        description="Feedback-capacity bounds, regions, and scheme "
                    "simulations for the two-user interference channel.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rates = sub.add_parser(
        "rates", help="symmetric achievable rate, outer bound, and gap")
    _add_gain(p_rates, "snr", "direct-link gain")
    _add_gain(p_rates, "inr", "cross-link gain")
    p_rates.set_defaults(func=_cmd_rates)

    p_gdof = sub.add_parser("gdof", help="g.d.o.f. curves as CSV")
    p_gdof.add_argument("--curves", default="fb,no,kramer",
                        help="comma list from {fb,no,kramer}")
    p_gdof.add_argument("--step", type=float, default=0.01)
    p_gdof.add_argument("--alpha-max", type=float, default=3.0)
    p_gdof.add_argument("--out", default=None, help="write CSV here")
    p_gdof.set_defaults(func=_cmd_gdof)

    p_region = sub.add_parser(
        "region", help="rate regions: gap report, region JSON, corner CSV")
    _add_gain(p_region, "snr", "symmetric direct gain")
    _add_gain(p_region, "inr", "symmetric cross gain")
    for name, noun in (("snr1", "user-1 direct gain"),
                       ("snr2", "user-2 direct gain"),
                       ("inr12", "tx1-to-rx2 cross gain"),
                       ("inr21", "tx2-to-rx1 cross gain")):
        _add_gain(p_region, name, noun)
    p_region.add_argument("--deterministic", type=int, nargs=4, default=None,
                          metavar=("N11", "N12", "N21", "N22"),
                          help="deterministic channel level counts")
    p_region.add_argument("--rho-grid", type=float, default=0.01,
                          help="correlation grid step in [0,1]")
    p_region.add_argument("--json-out", default=None)
    p_region.add_argument("--corners-out", default=None)
    p_region.set_defaults(func=_cmd_region)

    p_sim = sub.add_parser("simulate", help="run a scheme simulation")
    sim_sub = p_sim.add_subparsers(dest="scheme", required=True)

    s_det = sim_sub.add_parser(
        "det", help="two-stage deterministic scheme (strong or weak)")
    s_det.add_argument("--n", type=int, required=True,
                       help="direct-link level count")
    s_det.add_argument("--m", type=int, required=True,
                       help="cross-link level count")
    s_det.add_argument("--trials", type=int, default=1000)
    s_det.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_det.add_argument("--transcript", default=None,
                       help="write one full transcript JSON here")
    s_det.set_defaults(func=_cmd_sim_det)

    s_corner = sim_sub.add_parser(
        "corner", help="corner-point scheme on the (2,1,1,2) channel")
    s_corner.add_argument("--B", type=int, default=1000, help="slot count")
    s_corner.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_corner.add_argument("--transcript", default=None)
    s_corner.set_defaults(func=_cmd_sim_corner)

    s_sk = sim_sub.add_parser(
        "sk", help="single-user noisy-binary refinement scheme")
    s_sk.add_argument("--levels", type=int, default=3)
    s_sk.add_argument("--noise-level", type=int, default=1)
    s_sk.add_argument("--slots", type=int, default=100)
    s_sk.add_argument("--trials", type=int, default=1)
    s_sk.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_sk.add_argument("--transcript", default=None)
    s_sk.set_defaults(func=_cmd_sim_sk)

    s_afb = sim_sub.add_parser(
        "af-binary", help="two-user noisy-binary amplify-and-forward")
    s_afb.add_argument("--trials", type=int, default=1)
    s_afb.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_afb.add_argument("--transcript", default=None)
    s_afb.set_defaults(func=_cmd_sim_af_binary)

    s_al = sim_sub.add_parser(
        "alamouti", help="orthogonal-combining cancellation check")
    _add_gain(s_al, "snr", "direct-link gain")
    _add_gain(s_al, "inr", "cross-link gain")
    s_al.add_argument("--samples", type=int, default=100000)
    s_al.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_al.set_defaults(func=_cmd_sim_alamouti)

    s_afg = sim_sub.add_parser(
        "af-gaussian", help="amplify-and-forward covariance check")
    _add_gain(s_afg, "snr", "direct-link gain")
    _add_gain(s_afg, "inr", "cross-link gain")
    s_afg.add_argument("--samples", type=int, default=100000)
    s_afg.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s_afg.set_defaults(func=_cmd_sim_af_gaussian)

    p_scan = sub.add_parser("gap-scan", help="dB-grid scan of gap widths")
    p_scan.add_argument("--snr-range", type=float, nargs=2,
                        default=[-10.0, 60.0], metavar=("MIN", "MAX"))
    p_scan.add_argument("--inr-range", type=float, nargs=2,
                        default=[-10.0, 60.0], metavar=("MIN", "MAX"))
    p_scan.add_argument("--step-db", type=float, default=2.0)
    p_scan.add_argument("--mode", choices=("sym", "region"), default="sym")
    p_scan.add_argument("--rho-grid", type=float, default=0.01,
                        help="correlation step for region mode")
    p_scan.add_argument("--out", default=None, help="write CSV here")
    p_scan.set_defaults(func=_cmd_gap_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"invalid parameter: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
