"""Tail slopes of the folded-cylinder Fourier modes and a plot-free table of log-amplitudes."""

import argparse
from fractions import Fraction

from origami_rr.cylinder import kernel_dimension, log_mode_amplitude


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", default="0")
    ap.add_argument("--modes", type=int, default=3, help="show m in -M..M")
    args = ap.parse_args()
    t = Fraction(args.t)
    report = kernel_dimension(t, range(-args.modes, args.modes + 1))
    radii = [Fraction(r) for r in (-8, -2, -1, 0, 1, 2, 8)]
    print("log|a_m(r)| / 2pi")
    print("   m " + "".join(f"{str(r):>10}" for r in radii))
    for m in report.modes:
        row = "".join(f"{float(log_mode_amplitude(m, t, r)):>10.4f}" for r in radii)
        print(f"{m:>4} {row}")
    print()
    print(f"kernel {report.dimension}, index {report.index}, certificates valid: {report.valid}")


if __name__ == "__main__":
    main()
