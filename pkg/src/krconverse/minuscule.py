"""lambda-minuscule words, the numbers game that produces them, and the fractional lift.

A word ``(i_1, ..., i_t)`` acts right to left: ``i_t`` fires first. Firing node
i at a weight with ``<x, alpha_i^vee> = -1`` replaces x by ``s_i(x) = x + alpha_i``.
"""

from dataclasses import dataclass
from math import floor

from .errors import ConsistencyError, CutoffViolation, PreconditionError
from .rootdata import as_vec, is_dominant, scaled_root_coords, to_dynkin


@dataclass(frozen=True)
class GameWord:
    word: tuple
    start: tuple
    end: tuple

    @property
    def firing_order(self):
        return tuple(reversed(self.word))

    def states(self):
        """Weights visited, from start to end."""
        x = list(self.start)
        out = [tuple(x)]
        for i in self.firing_order:
            x[i] += 1
            out.append(tuple(x))
        return out

    def validate(self, R):
        """Every step fires at pairing exactly -1 and the states chain from start to end."""
        x = self.start
        for i in self.firing_order:
            if to_dynkin(R, x)[i] != -1:
                return False
            x = tuple(v + (k == i) for k, v in enumerate(x))
        return x == self.end


def _pairings_dynkin(R, d):
    return [sum(c * d[k] for k, c in cov) for cov in _sparse_coroots(R)]


def _sparse_coroots(R):
    key = ("sparse-coroots",)
    if key not in R._cache:
        R._cache[key] = tuple(tuple((k, int(c) if c.denominator == 1 else c) for k, c in enumerate(cov) if c) for cov in R.positive_coroots)
    return R._cache[key]


def coroot_pairings(R, lam):
    return _pairings_dynkin(R, to_dynkin(R, lam))


def negative_count(R, lam):
    """|S_lambda|: positive coroots pairing negatively with lambda."""
    return sum(1 for v in coroot_pairings(R, lam) if v < 0)


def cutoff_witness_dynkin(R, d):
    for cov, v in zip(R.positive_coroots, _pairings_dynkin(R, d)):
        if v <= -2:
            return cov, v
    return None


def cutoff_witness(R, lam):
    """First positive coroot with pairing <= -2, or None."""
    return cutoff_witness_dynkin(R, to_dynkin(R, as_vec(lam)))


def cutoff_condition(R, lam):
    return cutoff_witness(R, lam) is None


def in_cone(R, mu, x):
    """x in C+_mu. Pairing with omega_i^vee reads off the i-th root coordinate."""
    mu, x = as_vec(mu), as_vec(x)
    if not is_dominant(R, mu):
        raise PreconditionError("cone apex must be dominant")
    return all(a <= b for a, b in zip(x, mu))


def in_cone_dynkin(R, mu_d, d):
    return all(v >= 0 for v in scaled_root_coords(R, [a - b for a, b in zip(mu_d, d)]))


def play_dynkin(R, d, mu_d=None, policy="lowest"):
    """Game on integer Dynkin labels; returns (firing sequence, end labels).

    The caller has checked the cutoff. Raises ConsistencyError if the game
    stalls, if |S_lambda| fails to drop by one, or (with ``mu_d``) if a step
    leaves C+_mu after starting inside it.
    """
    track_cone = mu_d is not None and in_cone_dynkin(R, mu_d, d)
    x = list(d)
    fired = []
    count = sum(1 for v in _pairings_dynkin(R, x) if v < 0)
    while count:
        eligible = [i for i, v in enumerate(x) if v == -1]
        if not eligible:
            raise ConsistencyError("game stuck below a simple coroot", check="game-stuck", witness=tuple(x))
        i = eligible[0] if policy == "lowest" else eligible[-1]
        col = R.simple_root_dynkin[i]
        x = [v + c for v, c in zip(x, col)]
        fired.append(i)
        new = sum(1 for v in _pairings_dynkin(R, x) if v < 0)
        if new != count - 1:
            raise ConsistencyError("|S_lambda| did not drop by one", check="game-count", witness=tuple(x))
        count = new
        if track_cone and not in_cone_dynkin(R, mu_d, x):
            raise ConsistencyError("step left the cone C+_mu", check="cone-step", witness=tuple(x))
    return fired, tuple(x)


def play_to_dominant(R, lam, mu=None, policy="lowest"):
    """Fire nodes with pairing -1 until the weight is dominant.

    With ``mu`` given, every visited state is asserted to stay in C+_mu if the
    start does. ``policy`` picks the lowest or highest eligible node.
    """
    lam = as_vec(lam)
    d = to_dynkin(R, lam)
    bad = cutoff_witness_dynkin(R, d)
    if bad is not None:
        cov, v = bad
        raise CutoffViolation(f"coroot {cov} pairs to {v} with the start", coroot=cov, value=v)
    mu_d = None
    if mu is not None:
        if not is_dominant(R, mu):
            raise PreconditionError("cone apex must be dominant")
        mu_d = to_dynkin(R, as_vec(mu))
    fired, _ = play_dynkin(R, d, mu_d, policy)
    end = list(lam)
    for i in fired:
        end[i] += 1
    return GameWord(tuple(reversed(fired)), lam, tuple(end))


def reachable_dominant(R, lam, depth=None):
    """Exhaustive search over all minuscule firing sequences for a dominant end.

    Returns the end weight or None. Every firing drops |S_lambda| by one, so
    sequences have length at most |S_lambda|; ``depth`` can cap it further.
    """
    start = as_vec(lam)
    limit = negative_count(R, start) if depth is None else depth
    frontier = {start}
    seen = {start}
    for _ in range(limit + 1):
        nxt = set()
        for x in frontier:
            d = to_dynkin(R, x)
            if all(v >= 0 for v in d):
                return x
            for i, v in enumerate(d):
                if v == -1:
                    y = tuple(c + (k == i) for k, c in enumerate(x))
                    if y not in seen:
                        seen.add(y)
                        nxt.add(y)
        frontier = nxt
        if not frontier:
            break
    return None


def fractional_part(R, u):
    u = as_vec(u)
    if len(u) != R.rank:
        raise PreconditionError(f"expected {R.rank} coordinates")
    if any(v < 0 for v in u):
        raise PreconditionError("fractional part needs nonnegative root coordinates")
    return tuple(v - floor(v) for v in u)


def is_minuscule_weight(R, u):
    return all(v in (-1, 0, 1) for v in coroot_pairings(R, as_vec(u)))


def lift_fractional(R, u):
    """Word w with w(frac u) = u, w being (frac u)-minuscule; simply-laced R only.

    Descends from u by subtracting alpha_i at a node with <u, alpha_i^vee> = 1
    and integer part of the i-th coordinate at least 1.
    """
    if not R.is_simply_laced:
        raise PreconditionError(f"{R.name} is not simply laced")
    u = as_vec(u)
    if not is_minuscule_weight(R, u):
        raise PreconditionError("u is not minuscule")
    target = fractional_part(R, u)
    x = list(u)
    descent = []
    while tuple(x) != target:
        d = to_dynkin(R, x)
        i = next((k for k in range(R.rank) if d[k] == 1 and x[k] >= 1), None)
        if i is None:
            raise ConsistencyError("no descent node before reaching the fractional part",
                                   check="lift-fractional", witness=tuple(x))
        x[i] -= 1
        descent.append(i)
    g = GameWord(tuple(descent), target, u)
    if not g.validate(R):
        raise ConsistencyError("lifted word is not minuscule", check="lift-fractional", witness=g)
    return g
