"""Localization audit over the template corpus at a ladder of radii.

For each template the largest admissible radius of the form 1/2^k is found and
the audit is repeated at that radius divided by 1, 2, 4. With ``--overshoot``
the first inadmissible radius is also audited in override mode.
"""

import argparse

from origami_rr.corpus import template_corpus
from origami_rr.localization import CoveringParams, audit_localization, max_admissible_epsilon


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--overshoot", action="store_true")
    args = ap.parse_args()
    bad = 0
    for name, t in template_corpus().items():
        bound = max_admissible_epsilon(t)
        eps = bound.suggested_epsilon()
        verdicts = []
        for div in (1, 2, 4):
            r = audit_localization(t, CoveringParams(eps / div))
            verdicts.append("PASS" if r.passed else "FAIL")
            bad += not r.passed
        line = f"{name:<24} eps^2 < {str(bound.squared_bound):<6} eps = {str(eps):<5} {' '.join(verdicts)}"
        if args.overshoot:
            r = audit_localization(t, CoveringParams(eps * 2), override=True)
            line += f"  x2: {len(r.failures)} failures, crack pairing {r.checks['crack_pairing']}"
        print(line)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
