"""Command-line entry point.

Subcommands:
    sweep        compose per-ratio mixtures, score SNR, write JSON/CSV/SVG
    rs           robustness-score curve from an MSE table, CSV on stdout
    oracle       run the closed-form verification suites
    gen-fixture  write synthetic FVEC pools plus a manifest

Exit codes: 0 success, 1 oracle failure, 2 configuration/usage error,
3 data error. All outputs are deterministic given flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from cift.composition import (
    MixRatio,
    MixturePlan,
    SubsampleSeeded,
    TakeAll,
    run_sweep,
)
from cift.errors import CiftError
from cift.feature_store import (
    FileFormat,
    Manifest,
    ManifestEntry,
    SourceTag,
    load_manifest,
    write_features,
    write_manifest,
)
from cift.robustness import read_mse_csv, rs_curve_csv_text
from cift.svg_chart import render_snr_chart
from cift.theory_oracle import (
    CollapseSpec,
    SUITES,
    build_staged_pools,
    generate_collapse_pools,
    run_suites,
)

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DATA = 3

# Demo sweep targets: per-ratio (mu, sigma) of the reference cloth-folding
# sweep, reproduced by the staged fixture generator.
DEMO_STAGED_MU = (0.79, 1.17, 0.85, 0.05, 0.30, 0.73)
DEMO_STAGED_SIGMA = (5.55, 5.39, 5.17, 5.18, 5.10, 5.04)


@dataclass(frozen=True)
class RunConfig:
    manifest_path: Path
    ratios: tuple[MixRatio, ...]
    seed: int | None
    output_path: Path
    plot_path: Path | None = None

    def plan(self) -> MixturePlan:
        sampling = SubsampleSeeded(self.seed) if self.seed is not None else TakeAll()
        return MixturePlan(ratios=self.ratios, sampling=sampling)


def _parse_ratio_grid(text: str) -> tuple[MixRatio, ...]:
    return tuple(MixRatio.parse(tok) for tok in text.split(",") if tok.strip())


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = RunConfig(
            manifest_path=Path(args.manifest),
            ratios=_parse_ratio_grid(args.ratios),
            seed=args.seed,
            output_path=Path(args.out),
            plot_path=Path(args.plot) if args.plot else None,
        )
        plan = config.plan()
    except CiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        manifest = load_manifest(config.manifest_path)
        report = run_sweep(manifest, plan)
    except OSError as exc:
        print(f"error: cannot read {config.manifest_path}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        config.output_path.write_bytes(report.to_json_bytes())
        config.output_path.with_suffix(".csv").write_text(report.to_csv_text(), encoding="utf-8")
        if config.plot_path is not None:
            config.plot_path.write_text(render_snr_chart(report), encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(
        f"lambda_star {report.lambda_star}  "
        f"decoherence "
        + (
            str(report.points[report.decoherence_index].ratio)
            if report.decoherence_index is not None
            else "none"
        )
    )
    return EXIT_OK


def cmd_rs(args: argparse.Namespace) -> int:
    try:
        table = read_mse_csv(args.mse_table)
        sys.stdout.write(rs_curve_csv_text(table))
    except OSError as exc:
        print(f"error: cannot read {args.mse_table}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cases = run_suites(args.selector)
    for case in cases:
        status = "PASS" if case.passed else "FAIL"
        print(
            f"{status} {case.name}: analytic={case.analytic!r} "
            f"brute_force={case.brute_force!r} abs_diff={case.abs_diff:.3e}"
        )
    failed = sum(not c.passed for c in cases)
    print(f"{len(cases) - failed}/{len(cases)} oracle cases passed")
    if args.out:
        doc = {"selector": args.selector, "cases": [c.to_dict() for c in cases]}
        Path(args.out).write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return EXIT_OK if failed == 0 else EXIT_ORACLE_FAILURE


def cmd_gen_fixture(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.kind == "collapse":
            spec = CollapseSpec(
                mu_real=args.mu_real,
                mu_synth=args.mu_synth,
                sigma_real=args.sigma,
                sigma_synth=args.sigma,
                d=args.dims,
                noise_dims_sigma=args.sigma,
            )
            real, synth = generate_collapse_pools(spec, args.rows, args.rows, args.seed)
        else:
            real, synth = build_staged_pools(
                DEMO_STAGED_MU, DEMO_STAGED_SIGMA, block_rows=args.rows, seed=args.seed
            )
    except CiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    write_features(real, out_dir / "real.fvec", FileFormat.FVEC)
    write_features(synth, out_dir / "synth.fvec", FileFormat.FVEC)
    manifest = Manifest(
        entries=(
            ManifestEntry("real.fvec", SourceTag.REAL, real.dataset_id, FileFormat.FVEC),
            ManifestEntry("synth.fvec", SourceTag.SYNTHETIC, synth.dataset_id, FileFormat.FVEC),
        ),
        root=out_dir,
    )
    write_manifest(manifest, out_dir / "manifest.json")
    print(f"wrote {out_dir}/real.fvec {out_dir}/synth.fvec {out_dir}/manifest.json")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cift",
        description="Dataset-composition tuning via feature-space SNR.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep",
        help="per-ratio SNR sweep over a manifest; writes JSON, CSV, and optional SVG",
    )
    p_sweep.add_argument("--manifest", required=True, help="manifest JSON path")
    p_sweep.add_argument(
        "--ratios",
        required=True,
        help='comma-separated R:S grid, e.g. "100:0,100:100,100:200"; must start at lambda = 0',
    )
    p_sweep.add_argument(
        "--seed",
        type=int,
        default=None,
        help="draw exact-ratio blocks without replacement with this seed; omit to take all real rows",
    )
    p_sweep.add_argument("--out", required=True, help="report JSON path (CSV written alongside)")
    p_sweep.add_argument("--plot", default=None, help="optional SVG chart path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_rs = sub.add_parser(
        "rs",
        help="robustness scores from a condition,kind,ratio,mse CSV (any consistent MSE unit)",
    )
    p_rs.add_argument("--mse-table", required=True, help="MSE table CSV path")
    p_rs.set_defaults(func=cmd_rs)

    p_oracle = sub.add_parser("oracle", help="run closed-form verification suites")
    p_oracle.add_argument(
        "selector",
        choices=["all", *SUITES],
        help="which suite to run",
    )
    p_oracle.add_argument("--out", default=None, help="optional JSON results path")
    p_oracle.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser(
        "gen-fixture", help="write synthetic FVEC pools and a manifest for demos/tests"
    )
    p_gen.add_argument(
        "--kind",
        choices=["collapse", "staged"],
        default="collapse",
        help="collapse: opposed-mean pools; staged: pools hitting the demo per-ratio stats",
    )
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--rows", type=int, default=10_000, help="rows per pool (per block for staged)")
    p_gen.add_argument("--dims", type=int, default=8)
    p_gen.add_argument("--mu-real", type=float, default=2.0)
    p_gen.add_argument("--mu-synth", type=float, default=-1.0)
    p_gen.add_argument("--sigma", type=float, default=1.0)
    p_gen.set_defaults(func=cmd_gen_fixture)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
