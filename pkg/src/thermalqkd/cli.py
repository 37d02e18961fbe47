"""Command-line driver: simulation runs, parameter sweeps, table output.

Subcommands
    simulate        one Monte Carlo run, bit strings and key-rate summary
    sweep-eve       Shannon and von Neumann summaries over Eve's t^2 grid
    sweep-variance  both analytic MI routes over a source-variance grid
    offset          correlation of Alice's against Bob's stream at offsets

Tables go to stdout, or to --out as CSV/JSON with a JSON run manifest
written alongside.  All simulation output is reproducible from the seed;
the manifest's timestamp is the only field that varies between reruns.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .infotheory import bootstrap_errors, offset_correlation, shannon_summary
from .montecarlo import run_protocol, derive_bits
from .protocol import ProtocolConfig, protocol_mutual_informations
from .uncertainty import NoiseModel, estimate

_BOOTSTRAP_TAG = 0x626F6F74  # keeps bootstrap streams clear of block streams

SWEEP_EVE_HEADER = (
    "eve_t2,flavor,H_A,H_B,H_E,I_AB,I_AE,I_BE,K_DR,K_RR,"
    "err_I_AB,err_I_AE,err_I_BE"
)


@dataclass(frozen=True)
class RunManifest:
    """Record of one CLI invocation, written next to its output files."""

    command: str
    parameters: dict
    version: str = __version__
    created_utc: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(
            timespec="seconds"
        )
    )


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.9g" % value
    return str(value)


def _write_table(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _rows_as_dicts(header, rows):
    keys = header.split(",")
    out = []
    for row in rows:
        d = {}
        for k, v in zip(keys, row):
            if isinstance(v, (np.floating, np.integer)):
                v = v.item()
            d[k] = v
        out.append(d)
    return out


def _emit(args, command, header, rows, extra=None):
    """Write the table to --out (with manifest) or print it to stdout."""
    if args.out is None:
        if args.format == "json":
            json.dump(_rows_as_dicts(header, rows), sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            sys.stdout.write(header + "\n")
            for row in rows:
                sys.stdout.write(",".join(_fmt(v) for v in row) + "\n")
        return

    if args.format == "json":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            json.dump(_rows_as_dicts(header, rows), fh, indent=2)
            fh.write("\n")
    else:
        _write_table(args.out, header, rows)
    if extra is not None:
        extra(args.out)
    manifest = RunManifest(command=command, parameters=_manifest_params(args))
    with open(args.out + ".manifest.json", "w", encoding="utf-8",
              newline="") as fh:
        json.dump(asdict(manifest), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _manifest_params(args):
    skip = {"func", "out", "command"}
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, np.ndarray):
            value = [float(v) for v in value]
        params[key] = value
    return params


def _bootstrap_seed(seed):
    ss = np.random.SeedSequence([int(seed), _BOOTSTRAP_TAG])
    return int(ss.generate_state(1, np.uint64)[0])


def _summary_columns(summary, errs):
    return [
        summary.h_a, summary.h_b, summary.h_e,
        summary.i_ab, summary.i_ae, summary.i_be,
        summary.k_dr, summary.k_rr,
        errs.get("i_ab") if errs else None,
        errs.get("i_ae") if errs else None,
        errs.get("i_be") if errs else None,
    ]


def cmd_simulate(args):
    cfg = ProtocolConfig.from_power_transmittance(args.mean_photon, args.eve_t2)
    ens = run_protocol(cfg, args.trials, args.seed, args.measurement)
    bits = {p: derive_bits(getattr(ens, p).values)
            for p in ("alice", "bob", "eve")}
    summary = shannon_summary(bits["alice"].bits, bits["bob"].bits,
                              bits["eve"].bits)
    errs = bootstrap_errors(bits["alice"].bits, bits["bob"].bits,
                            bits["eve"].bits, seed=_bootstrap_seed(args.seed))
    header = ("flavor,H_A,H_B,H_E,I_AB,I_AE,I_BE,I_AB_given_E,K_DR,K_RR,"
              "lower,upper,err_I_AB,err_I_AE,err_I_BE,err_K_DR,err_K_RR")
    row = [
        summary.flavor,
        summary.h_a, summary.h_b, summary.h_e,
        summary.i_ab, summary.i_ae, summary.i_be, summary.i_ab_given_e,
        summary.k_dr, summary.k_rr,
        summary.lower_bound, summary.upper_bound,
        errs["i_ab"], errs["i_ae"], errs["i_be"], errs["k_dr"], errs["k_rr"],
    ]

    def write_trials(out_path):
        head = ("trial,source_n,a_det1,a_det2,a_value,b_det1,b_det2,b_value,"
                "e_det1,e_det2,e_value,a_bit,b_bit,e_bit")
        with open(out_path + ".trials.csv", "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(head + "\n")
            for t in range(ens.trials):
                cells = [
                    t, ens.source_counts[t],
                    ens.alice.detector_one[t], ens.alice.detector_two[t],
                    float(ens.alice.values[t]),
                    ens.bob.detector_one[t], ens.bob.detector_two[t],
                    float(ens.bob.values[t]),
                    ens.eve.detector_one[t], ens.eve.detector_two[t],
                    float(ens.eve.values[t]),
                    bits["alice"].bits[t], bits["bob"].bits[t],
                    bits["eve"].bits[t],
                ]
                fh.write(",".join(_fmt(c) for c in cells) + "\n")

    _emit(args, "simulate", header, [row], extra=write_trials)


def cmd_sweep_eve(args):
    grid = args.sweep if args.sweep is not None else np.linspace(0.0, 1.0, 11)
    point_seeds = np.random.SeedSequence(args.seed).generate_state(
        len(grid), np.uint64
    )
    rows = []
    for t2, pseed in zip(grid, point_seeds):
        cfg = ProtocolConfig.from_power_transmittance(args.mean_photon,
                                                      float(t2))
        ens = run_protocol(cfg, args.trials, int(pseed), args.measurement)
        ba = derive_bits(ens.alice.values).bits
        bb = derive_bits(ens.bob.values).bits
        be = derive_bits(ens.eve.values).bits
        summary = shannon_summary(ba, bb, be)
        errs = bootstrap_errors(ba, bb, be, seed=_bootstrap_seed(int(pseed)))
        rows.append([float(t2), "shannon"] + _summary_columns(summary, errs))
        vn = protocol_mutual_informations(cfg)
        rows.append([float(t2), "von_neumann"] + _summary_columns(vn, None))
    _emit(args, "sweep-eve", SWEEP_EVE_HEADER, rows)


def cmd_sweep_variance(args):
    grid = args.sweep if args.sweep is not None else np.linspace(1.0, 10.0, 10)
    nm = NoiseModel()
    tau = float(np.sqrt(args.eve_t2))
    rows = []
    for v in grid:
        v = float(v)
        unc = estimate(nm, tau, v)
        cfg = ProtocolConfig(mean_photon=(v - 1.0) / 2.0, eve_tau=tau)
        vn = protocol_mutual_informations(cfg)
        rows.append([v, unc.i_ab, unc.i_be, vn.i_ab, vn.i_be, vn.k_rr])
    header = "V,unc_I_AB,unc_I_BE,cov_I_AB,cov_I_BE,cov_K_RR"
    _emit(args, "sweep-variance", header, rows)


def cmd_offset(args):
    cfg = ProtocolConfig.from_power_transmittance(args.mean_photon, args.eve_t2)
    ens = run_protocol(cfg, args.trials, args.seed, args.measurement)
    a = ens.alice.values
    b = a if args.self_correlation else ens.bob.values
    table = offset_correlation(a, b, args.max_offset)
    rows = [
        [int(k), float(r), int(d)]
        for k, r, d in zip(table.offsets, table.r, table.degenerate)
    ]
    _emit(args, "offset", "offset,r,degenerate", rows)


def _parse_sweep(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("sweep must look like start:stop:steps")
    start, stop = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    if steps < 1:
        raise ValueError("sweep needs at least one step")
    return np.linspace(start, stop, steps)


def _add_common(sub):
    sub.add_argument("--mean-photon", type=float, default=200.0,
                     dest="mean_photon",
                     help="source mean photon number (default 200)")
    sub.add_argument("--eve-t2", type=float, default=0.5, dest="eve_t2",
                     help="power transmittance of Eve's splitter (default 0.5)")
    sub.add_argument("--trials", type=int, default=100000,
                     help="Monte Carlo trials (default 100000)")
    sub.add_argument("--seed", type=int, default=20210,
                     help="64-bit RNG seed (default 20210)")
    sub.add_argument("--measurement", choices=("photon", "heterodyne"),
                     default="photon",
                     help="measurement model (default photon)")
    sub.add_argument("--out", default=None,
                     help="output file path; stdout when omitted")
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="table format (default csv)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thermalqkd",
        description="thermal-state broadcast protocol simulator and "
                    "analytic calculator",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("simulate", help="single run with key-rate summary")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("sweep-eve",
                        help="sweep Eve's power transmittance")
    _add_common(p)
    p.add_argument("--sweep", type=str, default=None,
                   help="grid start:stop:steps (default 0:1:11)")
    p.set_defaults(func=cmd_sweep_eve)

    p = subs.add_parser("sweep-variance",
                        help="sweep source quadrature variance")
    _add_common(p)
    p.add_argument("--sweep", type=str, default=None,
                   help="grid start:stop:steps (default 1:10:10)")
    p.set_defaults(func=cmd_sweep_variance)

    p = subs.add_parser("offset", help="offset correlation table")
    _add_common(p)
    p.add_argument("--max-offset", type=int, default=10, dest="max_offset",
                   help="largest |offset| to evaluate (default 10)")
    p.add_argument("--self", action="store_true", dest="self_correlation",
                   help="correlate Alice's stream with itself")
    p.set_defaults(func=cmd_offset)
    return parser


def _validate(parser, args):
    if args.mean_photon < 0 or not np.isfinite(args.mean_photon):
        parser.error("--mean-photon must be finite and nonnegative")
    if not 0.0 <= args.eve_t2 <= 1.0:
        parser.error("--eve-t2 must lie in [0, 1]")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    if not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must fit in 64 bits")
    if getattr(args, "sweep", None) is not None:
        try:
            args.sweep = _parse_sweep(args.sweep)
        except ValueError as exc:
            parser.error(str(exc))
    if args.command == "sweep-eve" and args.sweep is not None:
        if args.sweep.min() < 0 or args.sweep.max() > 1:
            parser.error("sweep grid for eve-t2 must stay inside [0, 1]")
    if args.command == "sweep-variance":
        if args.eve_t2 == 0:
            parser.error("sweep-variance needs --eve-t2 above 0")
        if args.sweep is not None and args.sweep.min() < 1:
            parser.error("variance grid cannot go below the vacuum's 1")
    if args.command == "offset":
        if args.max_offset < 0:
            parser.error("--max-offset must be nonnegative")
        if args.trials <= 2 * args.max_offset:
            parser.error("--trials must exceed twice --max-offset")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        args.func(args)
    except Exception as exc:  # runtime failures map to exit status 1
        print("error: %s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
