"""Exact exponent arithmetic: admissible pairs, regimes, the 9/2 threshold.

Everything is rational (fractions.Fraction), so scaling relations are
checked exactly rather than to floating-point tolerance.

Run:  python3 demos/04_exponent_calculus.py
"""

import math
from fractions import Fraction

from nlszp import (
    check_admissible,
    derive_lwp_exponents,
    is_globalizable,
    truncation_beta,
    truncation_theta,
)


def main() -> None:
    print("== Strichartz admissibility (2/q = d(1/2 - 1/r)) ==")
    cases = [
        (Fraction(8, 3), Fraction(4), 3),
        (math.inf, Fraction(2), 3),
        (Fraction(2), Fraction(6), 3),
        (math.inf, math.inf, 2),
        (Fraction(4), Fraction(4), 2),
    ]
    for q, r, d in cases:
        verdict = "admissible" if check_admissible(q, r, d) else "rejected"
        print(f"  (q, r) = ({q}, {r}), d = {d}: {verdict}")

    print("\n== local-solving exponents, both regimes ==")
    small = derive_lwp_exponents(Fraction(1, 2), 4, 2, 3)
    print(f"  s=1/2, p=4, sigma=2, d=3  -> regime {small.regime}, "
          f"(q1, r1) = ({small.q1}, {small.r1})")
    large = derive_lwp_exponents(Fraction(1, 2), 4, Fraction(1, 2), 3)
    print(f"  s=1/2, p=4, sigma=1/2, d=3 -> regime {large.regime}")
    print(f"    r1 = 2p/(p - 2 sigma) = {large.r1}")
    print(f"    r2 (just below d/s)   = {large.r2}  (q2 = {large.q2})")
    print(f"    r3 = 2p/(p - sigma)   = {large.r3}")
    print(f"    interpolation theta   = {large.theta_interp}")
    print(f"    conditions: {large.conditions_ok}")

    print("\n== truncation exponents and the globalization threshold ==")
    for p in (Fraction(17, 4), Fraction(22, 5), Fraction(9, 2), Fraction(19, 4)):
        theta, beta = truncation_theta(p), truncation_beta(p)
        verdict = "globalizable" if is_globalizable(p) else "NOT globalizable"
        print(f"  p = {str(p):5s}: theta = {theta}, beta = {beta}, "
              f"beta - 7 theta = {beta - 7 * theta}  -> {verdict}")
    print("\nThe boundary beta = 7 theta sits exactly at p = 9/2; rational")
    print("arithmetic resolves it with no tolerance.")


if __name__ == "__main__":
    main()
