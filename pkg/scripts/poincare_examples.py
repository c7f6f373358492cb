#!/usr/bin/env python3
"""Poincare polynomials of X[n] for the built-in sample spaces.

Usage: python scripts/poincare_examples.py [MAX_N]
"""

import sys

from fmc.polyseries import IntPoly, format_poly
from fmc.theory import betti_of_fm

SPACES = {
    "projective line": (1, IntPoly([1, 0, 1])),
    "projective plane": (2, IntPoly([1, 0, 1, 0, 1])),
    "quadric surface": (2, IntPoly([1, 0, 2, 0, 1])),
}


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    for name, (d, betti) in SPACES.items():
        print(f"== {name} (betti {format_poly(betti, 'q')}) ==")
        for n in range(1, max_n + 1):
            poly = betti_of_fm(betti, d, n)
            chi = poly(-1)
            print(f"X[{n}]: {format_poly(poly, 'q')}   (chi = {chi})")
        print()


if __name__ == "__main__":
    main()
