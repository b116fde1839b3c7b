"""Character of the two-simplex sphere templates for a grid of dimensions and scales.

Each line shows the per-copy lattice count and the total, which should be 0.
"""

import argparse

from origami_rr import danilov_template, dimension_of
from origami_rr.template import gen_sphere_template


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=4)
    args = ap.parse_args()
    print(f"{'n':>2} {'k':>2} {'dim+':>7} {'dim-':>7}  total")
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            r = danilov_template(gen_sphere_template(n, k))
            plus, minus = (dimension_of(r.per_polytope[s]) for s in ("plus", "minus"))
            print(f"{n:>2} {k:>2} {plus:>7} {minus:>7}  {r.character.to_text()}")


if __name__ == "__main__":
    main()
