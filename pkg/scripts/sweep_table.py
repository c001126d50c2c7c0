"""Main-equality sweep with per-type timings.

    python scripts/sweep_table.py A2 B3 G2 --bound 2
"""

import argparse
import time
from itertools import combinations, product

from krconverse.engine import verify_theorem
from krconverse.rootdata import from_dynkin, parse_type


def sweep(R, bound):
    runs = certs = bad = same = 0
    for mu in product(range(bound + 1), repeat=R.rank):
        m = from_dynkin(R, mu)
        for r in range(1, R.rank):
            for J in combinations(range(R.rank), r):
                rep = verify_theorem(R, J, m)
                runs += 1
                certs += len(rep.certificates)
                bad += bool(rep.counterexamples) or not rep.equal
                # folded certificates carry the orbit verdict on their source witness
                same += sum(1 for c in rep.certificates if getattr(c, "source_certificate", c).same_orbit)
    return runs, certs, bad, same


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("types", nargs="+")
    ap.add_argument("--bound", type=int, default=2)
    args = ap.parse_args()
    print(f"{'type':<5} {'runs':>6} {'certs':>7} {'fail':>5} {'z~z_prime':>10} {'sec':>7}")
    for label in args.types:
        R = parse_type(label)
        t = time.time()
        runs, certs, bad, same = sweep(R, args.bound)
        print(f"{R.name:<5} {runs:>6} {certs:>7} {bad:>5} {same:>10} {time.time() - t:>7.1f}")


if __name__ == "__main__":
    main()
