#!/usr/bin/env python3
"""Writes the 48x48 rank-10 test image used by the demo and acceptance suite.

The image is nine separable Gaussian blobs (each one rank one) on a constant
background (one more rank), stored as a 16-bit PGM whose grey levels are used directly
as Poisson rates (about 800 to 24800 counts). Rounding to integers perturbs
the exact rank only at the quantization level.
"""
import argparse

import numpy as np

MAXVAL = 25000


def flare(size=48, blobs=9, seed=20140301):
    rng = np.random.default_rng(seed)
    x = np.arange(size, dtype=float)
    img = np.zeros((size, size))
    for _ in range(blobs):
        cy, cx = rng.uniform(8, size - 8, 2)
        sy, sx = rng.uniform(2.0, 9.0, 2)
        amp = rng.uniform(0.3, 1.0)
        img += amp * np.outer(np.exp(-0.5 * ((x - cy) / sy) ** 2), np.exp(-0.5 * ((x - cx) / sx) ** 2))
    img = 800.0 + 24000.0 * img / img.max()
    return np.clip(np.floor(img + 0.5), 0, MAXVAL).astype(int)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out")
    args = parser.parse_args()
    img = flare()
    with open(args.out, "w") as f:
        f.write(f"P2\n# synthetic rank-10 flare, 48x48\n{img.shape[1]} {img.shape[0]}\n{MAXVAL}\n")
        for row in img:
            f.write(" ".join(str(v) for v in row) + "\n")


if __name__ == "__main__":
    main()
