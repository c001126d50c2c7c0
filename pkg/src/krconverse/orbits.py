"""Weyl orbits, convex-hull membership, the sets P_mu and their images in X_M.

Hot loops run on integer Dynkin labels; the public functions take and return
root-coordinate weights.
"""

from dataclasses import dataclass
from itertools import product

from .errors import PreconditionError
from .lattices import check_levi, class_rep, orth_project_complement, quotient_G, quotient_M
from .lp import in_convex_hull
from .rootdata import (
    as_vec,
    dominant_dynkin,
    dominant_rep,
    from_dynkin,
    is_dominant,
    is_weight,
    reflect_dynkin,
    to_dynkin,
)


@dataclass(frozen=True)
class OrbitSet:
    seed: tuple
    elements: frozenset

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return as_vec(x) in self.elements


@dataclass(frozen=True)
class PMuSet:
    mu: tuple
    points: frozenset

    def __len__(self):
        return len(self.points)


def _require_dominant(R, mu):
    mu = as_vec(mu)
    if len(mu) != R.rank:
        raise PreconditionError(f"weight has length {len(mu)}, expected {R.rank}")
    if not is_dominant(R, mu):
        raise PreconditionError(f"{tuple(str(v) for v in mu)} is not dominant for {R.name}")
    return mu


def orbit_dynkin(R, d):
    """Orbit of a Dynkin-label vector under W, by breadth-first closure."""
    d = tuple(d)
    key = ("orbit", d)
    cached = R._cache.get(key)
    if cached is not None:
        return cached
    seen = {d}
    frontier = [d]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(R.rank):
                if v[i]:
                    w = reflect_dynkin(R, i, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    out = frozenset(seen)
    if len(R._cache) < 20000:
        R._cache[key] = out
    return out


def weyl_orbit(R, mu):
    mu = _require_dominant(R, mu)
    elems = orbit_dynkin(R, to_dynkin(R, mu))
    return OrbitSet(mu, frozenset(from_dynkin(R, d) for d in elems))


def conv_membership(R, mu, x):
    """x in Conv(W mu) iff mu minus the dominant representative of x is a nonnegative real combination of simple roots."""
    mu = _require_dominant(R, mu)
    xd, _ = dominant_rep(R, as_vec(x))
    return all(a - b >= 0 for a, b in zip(mu, xd))


def conv_membership_lp(R, mu, x):
    """Same question answered by exact linear feasibility over the orbit vertices."""
    mu = _require_dominant(R, mu)
    return in_convex_hull(weyl_orbit(R, mu).elements, as_vec(x))


def hull_contains_dynkin(R, mu_dyn, d, scale=1):
    """Integer fast path: is d/scale in Conv(W mu)? Both given by Dynkin labels (d may be scaled)."""
    dom, _ = dominant_dynkin(R, d)
    diff = [scale * a - b for a, b in zip(mu_dyn, dom)]
    adj = R.adjugate
    return all(sum(adj[i][j] * diff[j] for j in range(R.rank)) >= 0 for i in range(R.rank))


def dominant_weights_below(R, mu):
    """Dominant lambda <= mu, as Dynkin labels.

    Breadth-first from mu subtracting positive roots while staying dominant;
    complete because every dominant lambda < mu lies below some dominant
    mu - beta (Stembridge).
    """
    mu_dyn = tuple(int(v) for v in to_dynkin(R, mu))
    key = ("dombelow", mu_dyn)
    if key in R._cache:
        return R._cache[key]
    seen = {mu_dyn}
    frontier = [mu_dyn]
    roots = R.positive_root_dynkin
    while frontier:
        nxt = []
        for v in frontier:
            for r in roots:
                w = tuple(a - b for a, b in zip(v, r))
                if min(w) >= 0 and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    out = sorted(seen)
    R._cache[key] = out
    return out


def pmu_dynkin(R, mu):
    """P_mu as a frozenset of Dynkin-label tuples."""
    mu = _require_dominant(R, mu)
    if not is_weight(R, mu):
        raise PreconditionError("mu must lie in the weight lattice")
    key = ("pmu", tuple(to_dynkin(R, mu)))
    if key in R._cache:
        return R._cache[key]
    pts = set()
    for lam in dominant_weights_below(R, mu):
        pts |= orbit_dynkin(R, lam)
    out = frozenset(pts)
    R._cache[key] = out
    return out


def enumerate_Pmu(R, mu):
    mu = _require_dominant(R, mu)
    return PMuSet(mu, frozenset(from_dynkin(R, d) for d in pmu_dynkin(R, mu)))


def coordinate_bounds(R, mu):
    """Per-coordinate (min, max) of the root coordinates over W mu."""
    pts = [from_dynkin(R, d) for d in orbit_dynkin(R, to_dynkin(R, _require_dominant(R, mu)))]
    return [(min(p[i] for p in pts), max(p[i] for p in pts)) for i in range(R.rank)]


def pmu_bruteforce(R, mu):
    """Independent oracle for P_mu: scan the coset mu + Q(R) inside the orbit's bounding box."""
    mu = _require_dominant(R, mu)
    bounds = coordinate_bounds(R, mu)
    ranges = []
    for i, (lo, hi) in enumerate(bounds):
        # coordinates congruent to mu_i mod 1
        start = mu[i] - ((mu[i] - lo) // 1)
        vals = []
        v = start
        while v <= hi:
            vals.append(v)
            v += 1
        ranges.append(vals)
    orbit = weyl_orbit(R, mu).elements
    out = set()
    for x in product(*ranges):
        if in_convex_hull(orbit, x):
            out.add(tuple(x))
    return frozenset(out)


def projected_point(R, J, y):
    """Real image of a class y of X_M, realized in the orthogonal complement of span R_J."""
    p, _ = orth_project_complement(R, J, class_rep(R, y, J))
    return p


def projected_hull_membership(R, J, mu, y, method="lp"):
    """Does the image of y in (P/Q(R_J)) (x) R lie in pr_J(Conv(W mu))?

    ``method="lp"``: exact feasibility of a convex combination of the
    projected orbit vertices. ``method="dominance"``: the projected hull is
    Conv(W mu) intersected with the complement of span R_J, so test the
    projected point by the dominance criterion.
    """
    J = check_levi(R, J)
    mu = _require_dominant(R, mu)
    p = projected_point(R, J, y)
    if method == "dominance":
        return conv_membership(R, mu, p)
    if method != "lp":
        raise PreconditionError(f"unknown method {method!r}")
    outside = [i for i in range(R.rank) if i not in J]
    # two points share a projection iff they agree off J
    verts = {tuple(v[i] for i in outside) for v in weyl_orbit(R, mu).elements}
    return in_convex_hull(verts, tuple(p[i] for i in outside))


def oracle_phi_Pmu(R, J, mu):
    """phi_J(P_mu) by direct image of the enumerated set."""
    J = check_levi(R, J)
    q = quotient_M(R, J)
    return frozenset(q.class_of(d) for d in pmu_dynkin(R, mu))


def same_X_G(R, x, mu):
    q = quotient_G(R)
    return q.class_of(to_dynkin(R, x)) == q.class_of(to_dynkin(R, mu))


def in_Pmu(R, mu, x):
    x = as_vec(x)
    return is_weight(R, x) and same_X_G(R, x, mu) and conv_membership(R, mu, x)
