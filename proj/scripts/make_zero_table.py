#!/usr/bin/env python3
"""Generate a table of nontrivial zeta-zero ordinates (imaginary parts).

Writes one ordinate per line, 9 decimal places, matching the layout of the
widely distributed public tables. Requires mpmath.

Usage: python3 make_zero_table.py [count] [outfile]
"""
import sys
from multiprocessing import Pool

from mpmath import mp, zetazero

mp.dps = 15


def ordinate(n: int) -> str:
    return mp.nstr(zetazero(n).imag, 14, strip_zeros=False)


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 10000
    out = sys.argv[2] if len(sys.argv) > 2 else "zeros_10k.txt"
    with Pool() as pool:
        vals = pool.map(ordinate, range(1, count + 1), chunksize=50)
    with open(out, "w") as f:
        f.write("# imaginary parts of the first %d nontrivial zeta zeros\n" % count)
        f.write("# computed with mpmath.zetazero, 9 decimal places\n")
        for v in vals:
            f.write("%.9f\n" % float(v))


if __name__ == "__main__":
    main()
