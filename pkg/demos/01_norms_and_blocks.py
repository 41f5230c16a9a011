"""Norm layer tour: dyadic blocks telescope exactly, Besov tracks Sobolev.

Run:  python3 demos/01_norms_and_blocks.py
"""

import numpy as np

from nlszp import (
    Field,
    Grid,
    besov_norm,
    hom_sobolev_norm,
    l2_norm,
    littlewood_paley_block,
    lp_norm,
    zhidkov_band_norm,
    zhidkov_norm,
)
from nlszp.norms import dyadic_range


def main() -> None:
    grid = Grid(dim=1, n=512, box_length=64.0)
    rng = np.random.default_rng(1)
    values = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    f = Field(grid, values - values.mean())  # mean-free: zero mode is quotient-ed out

    print("== frequency decomposition ==")
    j_min, j_max = dyadic_range(grid)
    print(f"dyadic range on this grid: j in [{j_min}, {j_max}]")
    total = np.zeros(grid.shape, dtype=complex)
    for j in range(j_min, j_max + 1):
        block = littlewood_paley_block(f, j)
        total += block.values
        print(f"  block j={j:+d}:  ||Delta_j f||_2 = {l2_norm(block):.4f}")
    err = np.max(np.abs(total - f.values))
    print(f"partition-of-unity reconstruction error: {err:.2e}  (machine precision)")

    print("\n== norm comparisons ==")
    s = 0.5
    print(f"L^4 norm              : {lp_norm(f, 4.0):.6f}")
    print(f"Hdot^{s} norm          : {hom_sobolev_norm(f, s):.6f}")
    print(f"Besov Bdot^{s}_2,2 norm : {besov_norm(f, s, 2.0, 2.0):.6f}  "
          "(comparable to Hdot^s by almost-orthogonality)")
    print(f"Z^{s}_4 norm           : {zhidkov_norm(f, s, 4.0):.6f}  (= L^4 + Hdot^s)")
    print(f"band sup Z^alpha_4, alpha in [{s}, {s + 2}]: "
          f"{zhidkov_band_norm(f, s, 2, 4.0):.6f}")


if __name__ == "__main__":
    main()
