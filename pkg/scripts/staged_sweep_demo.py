"""Reference-curve sweep demo.

Builds pools whose nested TakeAll mixtures reproduce the demo per-ratio
(mu, sigma) sequence (cloth-folding reference sweep), runs the pipeline, and
shows the decoherence point at 100:300 with 100:100 selected.

Example:
    python scripts/staged_sweep_demo.py --out /tmp/staged
"""

import argparse
from pathlib import Path

from cift.cli import DEMO_STAGED_MU, DEMO_STAGED_SIGMA
from cift.composition import MixRatio, MixturePlan, sweep_features
from cift.svg_chart import render_snr_chart
from cift.theory_oracle import build_staged_pools


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--block-rows", type=int, default=100)
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--out", type=Path, default=Path("staged_demo"))
    args = parser.parse_args()

    real, synth = build_staged_pools(
        DEMO_STAGED_MU, DEMO_STAGED_SIGMA, block_rows=args.block_rows, seed=args.seed
    )
    ratios = tuple(MixRatio(100, 100 * k) for k in range(len(DEMO_STAGED_MU)))
    report = sweep_features(real, synth, MixturePlan(ratios=ratios))

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "report.json").write_bytes(report.to_json_bytes())
    (args.out / "chart.svg").write_text(render_snr_chart(report, title="Reference sweep (staged fixture)"))

    print(f"{'ratio':>8} {'mu':>8} {'sigma':>8} {'snr':>8}")
    for p, mu, sigma in zip(report.points, DEMO_STAGED_MU, DEMO_STAGED_SIGMA):
        print(
            f"{str(p.ratio):>8} {p.mu:8.4f} {p.sigma:8.4f} {p.snr:8.4f}"
            f"   (targets: mu={mu} sigma={sigma})"
        )
    dc = report.points[report.decoherence_index].ratio if report.decoherence_index is not None else None
    print(f"\ndecoherence point: {dc}")
    print(f"selected ratio:    {report.lambda_star}")
    print(f"report written under {args.out}/")


if __name__ == "__main__":
    main()
