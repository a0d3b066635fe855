"""Run every config in configs/ into an output directory and print the summaries."""
import argparse
import shutil
import sys
from pathlib import Path

from localdetect.cli import main

ROOT = Path(__file__).resolve().parent.parent


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--configs", type=Path, default=ROOT / "configs")
    ap.add_argument("--outdir", type=Path, default=ROOT / "results")
    return ap.parse_args()


if __name__ == "__main__":
    args = parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    status = 0
    for cfg in sorted(args.configs.glob("*.cfg")):
        print(f"# {cfg.name}")
        target = args.outdir / cfg.name
        shutil.copy(cfg, target)
        code = main(["run", str(target)])
        status = status or code
        print()
    sys.exit(status)
