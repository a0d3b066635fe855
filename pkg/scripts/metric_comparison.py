"""Compare the five distance measures and the Helstrom increase per prior on
the correlated scenarios."""
import argparse
import math

from localdetect.linalg import METRICS
from localdetect.protocol import eigenbasis_dephasing, metric_comparison
from localdetect.scenarios import (
    Correlation,
    JCParams,
    QubitQubitParams,
    SpectrumParams,
    continuum_scenario,
    jc_scenario,
    qubit_qubit_scenario,
)


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--priors", type=float, nargs="+", default=[0.3, 0.4, 0.5, 0.6, 0.7])
    return ap.parse_args()


SCENARIOS = {
    "jc nbar=0": lambda: jc_scenario(JCParams(4, 0.0, 1.0, math.pi / 4)),
    "jc nbar=1": lambda: jc_scenario(JCParams(20, 1.0, 1.0, math.pi / 4)),
    "bell v=1": lambda: qubit_qubit_scenario(QubitQubitParams("bell_mixture", 1.0)),
    "bell v=0.5": lambda: qubit_qubit_scenario(QubitQubitParams("bell_mixture", 0.5)),
    "continuum": lambda: continuum_scenario(SpectrumParams(1.0, 1.0), Correlation()),
}

if __name__ == "__main__":
    args = parse_args()
    print(f"{'scenario':<12}" + "".join(f"{m:>11}" for m in METRICS)
          + "".join(f"{'p=' + format(p, 'g'):>10}" for p in args.priors))
    for name, build in SCENARIOS.items():
        scn = build()
        cmp = metric_comparison(scn.state, eigenbasis_dephasing(scn.state), scn.hamiltonian, scn.times,
                                priors=tuple(args.priors))
        print(f"{name:<12}" + "".join(f"{cmp.records[m].max_d:11.4f}" for m in METRICS)
              + "".join(f"{cmp.helstrom_increase[p]:10.4f}" for p in args.priors))
