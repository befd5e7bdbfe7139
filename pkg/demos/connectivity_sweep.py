"""Sweep the neighbour-count coefficient across the connectivity threshold.

The mutual k-nearest-neighbour graph on a Poisson process of intensity n in
a square of area n, with k = ceil(c log n), goes from shattered to connected
as c crosses a constant; the certified window for that constant is
(0.7209, 0.9684].  This demo estimates the connection probability on a grid
of coefficients and prints the empirical transition alongside the certified
window.

Run:  python demos/connectivity_sweep.py [n] [trials]
"""

from __future__ import annotations

import math
import sys

from knnlab.bounds import CONNECTIVITY_LOWER_C, CONNECTIVITY_THRESHOLD
from knnlab.sim import estimate_connectivity


def main(n: float = 4000.0, trials: int = 40) -> None:
    c_values = [0.2, 0.4, 0.6, 0.72, 0.85, 0.97, 1.1, 1.3, 1.5]
    print("mutual kNN connectivity, n = %g, %d trials per coefficient"
          % (n, trials))
    print("certified window for the threshold constant: (%.4f, %.4f]"
          % (CONNECTIVITY_LOWER_C, CONNECTIVITY_THRESHOLD))
    print()
    print("%6s %4s %10s %19s %12s %10s" %
          ("c", "k", "P(conn)", "Wilson 95% CI", "mean comps", "crossings"))
    estimates = estimate_connectivity(n, c_values, trials=trials,
                                      master_seed=2026)
    for i, est in enumerate(estimates):
        nxt = c_values[i + 1] if i + 1 < len(c_values) else math.inf
        marker = ""
        if est.c <= CONNECTIVITY_LOWER_C < nxt:
            marker = "  <- certified lower end"
        elif est.c <= CONNECTIVITY_THRESHOLD < nxt:
            marker = "  <- certified threshold"
        print("%6.2f %4d %10.3f    [%.3f, %.3f] %12.2f %10d%s"
              % (est.c, est.k, est.connected_frac, est.wilson_lo,
                 est.wilson_hi, est.mean_components,
                 est.crossing_pairs_total, marker))
    print()
    k_star = math.ceil(CONNECTIVITY_THRESHOLD * math.log(n))
    print("at n = %g the certified threshold coefficient means k = %d "
          "suffices with high probability" % (n, k_star))


if __name__ == "__main__":
    args = sys.argv[1:]
    n = float(args[0]) if args else 4000.0
    trials = int(args[1]) if len(args) > 1 else 40
    main(n, trials)
