"""Relative systems of sigma-data and the quasi-split criterion, with chain-step statistics.

A "direct" step starts from a dominant anchor and uses find_gamma plus the
game; a "fiber" step had no dominant anchor and was resolved by searching
P_mu over the next cover.
"""

import sys
from itertools import combinations, product

from krconverse.quasisplit import build_coinvariants, verify_conjecture2
from krconverse.rootdata import build, from_dynkin

CASES = [("A", 3, (2, 1, 0)), ("A", 4, (3, 2, 1, 0)), ("A", 5, (4, 3, 2, 1, 0)), ("D", 4, (0, 1, 3, 2)), ("D", 4, (2, 1, 3, 0))]


def main(bound):
    for fam, n, sigma in CASES:
        R = build(fam, n)
        D = build_coinvariants(R, sigma)
        runs = bad = 0
        kinds = {"direct": 0, "fiber": 0}
        for mu in product(range(bound + 1), repeat=n):
            for r in range(1, len(D.orbits)):
                for Js in combinations(D.orbits, r):
                    rep = verify_conjecture2(D, tuple(sorted(sum(Js, ()))), from_dynkin(R, mu))
                    runs += 1
                    bad += bool(rep.counterexamples) or not rep.equal
                    for w in rep.witnesses:
                        for s in w.steps:
                            kinds[s["kind"]] += 1
        print(f"{fam}{n} sigma={sigma} -> {D.relative_type:<4} runs={runs} failures={bad} steps={kinds}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
