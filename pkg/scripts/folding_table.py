"""Folded types and folding-lemma verdicts for the standard diagram automorphisms."""

import time

from krconverse.folding import build_folding, standard_theta, verify_folding_lemmas
from krconverse.rootdata import build

CASES = [
    ("A", 3, "involution", None),
    ("A", 5, "involution", None),
    ("A", 7, "involution", 1),
    ("D", 4, "involution", None),
    ("D", 4, "triality", None),
    ("D", 5, "involution", None),
    ("E", 6, "involution", 3),
]


def main(bound=2):
    for fam, n, kind, cap in CASES:
        F = build_folding(build(fam, n), standard_theta(fam, n, kind))
        t = time.time()
        rep = verify_folding_lemmas(F, bound=bound, mu_sum_cap=cap)
        verdicts = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in rep.passed.items())
        print(f"{fam}{n} {kind:<10} -> {F.folded_type:<4} {verdicts}  ({time.time() - t:.1f}s)")


if __name__ == "__main__":
    main()
