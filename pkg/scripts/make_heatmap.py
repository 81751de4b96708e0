#!/usr/bin/env python3
"""Generate the success-probability heatmap data p(n, r) for uniform search.

Writes a CSV table and a PGM image (white = probability 1) and prints where
the r = 1 column peaks.  Thin wrapper over the library; equivalent to
`gqsearch heatmap` run twice with different formats.
"""

import argparse
import math
from pathlib import Path

import numpy as np

from gqsearch import rotation_angle
from gqsearch.cli import default_heatmap_n_max, heatmap_grid, heatmap_to_pgm


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-items", type=int, default=64)
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--out-dir", type=Path, default=Path("out"))
    args = parser.parse_args()

    n_max = args.n_max if args.n_max is not None else default_heatmap_n_max(args.n_items)
    grid = heatmap_grid(args.n_items, n_max)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = args.out_dir / "heatmap.csv"
    header = "n," + ",".join(f"r={r}" for r in range(1, args.n_items + 1))
    lines = [header]
    for n in range(n_max + 1):
        lines.append(f"{n}," + ",".join(repr(float(x)) for x in grid[n]))
    csv_path.write_text("\n".join(lines) + "\n")
    pgm_path = args.out_dir / "heatmap.pgm"
    pgm_path.write_bytes(heatmap_to_pgm(grid))

    phi = rotation_angle(math.sqrt(1.0 / args.n_items))
    column = grid[:, 0]
    peak = int(np.argmax(column))
    print(f"wrote {csv_path} and {pgm_path} ({n_max + 1} x {args.n_items})")
    print(
        f"r=1 column: first maximum at n={peak} with p={column[peak]:.6f}, "
        f"period pi/phi = {math.pi / phi:.4f} iterations"
    )


if __name__ == "__main__":
    main()
