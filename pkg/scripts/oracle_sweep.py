"""Compare the vertex-cone sum with the lattice-point sum over the polytope corpus."""

import argparse
import itertools
import time

from origami_rr.characters import specialize
from origami_rr.corpus import polytope_corpus
from origami_rr.oracle import fixed_point_character, generic_directions
from origami_rr.quantization import danilov_polytope


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--directions", type=int, default=3, help="generic directions per polytope")
    args = ap.parse_args()
    failures = 0
    for name, P in polytope_corpus().items():
        start = time.perf_counter()
        lattice = danilov_polytope(P)
        dirs = list(itertools.islice(generic_directions([P]), args.directions))
        ok = all(fixed_point_character(P, a).to_laurent() == specialize(lattice, a) for a in dirs)
        failures += not ok
        elapsed = time.perf_counter() - start
        shown = " ".join(",".join(map(str, a)) for a in dirs)
        print(f"{name:<20} {len(P.vertices):>3} vertices  {shown:<22} {'PASS' if ok else 'FAIL'}  {elapsed:.3f}s")
    print(f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
