"""From grid census to crossing threshold: how the area certificates work.

Four families of regions around a normalized crossing are measured by an
exhaustive census over an s-grid of squares: two families where points must
be absent (lower area bounds L+, L-) and two where points must be present
(upper area bounds H+, H-).  The occupied/total area ratio bounds the
probability that a crossing survives, and -1/log(ratio) converts it into a
coefficient threshold: for k = c log n with c below that threshold,
cross-component crossings vanish.

Coarser grids give weaker bounds in a known direction, so refining the grid
tightens every certificate monotonically; this demo shows two refinement
steps and then the closed-form certificate suite for the connectivity
threshold.

Run:  python demos/certificate_walkthrough.py [step1] [step2]
"""

from __future__ import annotations

import sys

from knnlab.bounds import (
    crossing_ratio,
    threshold_suite,
    verify_H_minus,
    verify_H_plus,
    verify_L_minus,
    verify_L_plus,
)


def census_row(step: float):
    parts = {
        "lplus": verify_L_plus(step),
        "lminus": verify_L_minus(step),
        "hplus": verify_H_plus(step),
        "hminus": verify_H_minus(step),
    }
    ratio = crossing_ratio(step, components=parts)
    return parts, ratio


def main(coarse: float = 0.008, fine: float = 0.004) -> None:
    print("census refinement (areas; L are lower bounds, H upper bounds)")
    print("%8s %10s %10s %10s %10s %10s %12s" %
          ("step", "L+", "L-", "H+", "H-", "ratio", "threshold"))
    for step in (coarse, fine):
        parts, ratio = census_row(step)
        print("%8g %10.6f %10.6f %10.6f %10.6f %10.6f %12.6f" %
              (step, parts["lplus"].computed, parts["lminus"].computed,
               parts["hplus"].computed, parts["hminus"].computed,
               ratio.computed, ratio.witness))
    print()
    print("the committed step-0.001 census gives ratio 0.240643 and")
    print("threshold 0.702030, certifying the 0.7102 crossing threshold")
    print()

    print("closed-form certificate suite at the connectivity threshold:")
    certs = threshold_suite()
    width = max(len(c.name) for c in certs)
    for cert in certs:
        print("  %-*s  %-4s  %.10g %s %.10g" %
              (width, cert.name, "PASS" if cert.passed else "FAIL",
               cert.computed, cert.comparator, cert.target))
    print("  -> %d/%d certificates pass" %
          (sum(c.passed for c in certs), len(certs)))


if __name__ == "__main__":
    args = sys.argv[1:]
    coarse = float(args[0]) if args else 0.008
    fine = float(args[1]) if len(args) > 1 else 0.004
    main(coarse, fine)
