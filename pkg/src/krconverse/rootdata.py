"""Irreducible root systems with exact Cartan data.

Weights are tuples of :class:`~fractions.Fraction` holding coordinates in the
simple-root basis (``x = sum x[i] * alpha_i``). Node indices are 0-based.
The Cartan matrix convention is ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so
the Dynkin labels of ``x`` are ``cartan @ x``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .errors import PreconditionError
from .linalg import determinant, inverse

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "BC")


def as_vec(x):
    return tuple(Fraction(v) for v in x)


def zero(n):
    return (Fraction(0),) * n


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def _check_type(family, rank):
    rules = {
        "A": (rank >= 1, "A_n needs n >= 1"),
        "B": (rank >= 2, "B_n needs n >= 2"),
        "C": (rank >= 3, "C_n needs n >= 3 (C2 is B2)"),
        "D": (rank >= 4, "D_n needs n >= 4"),
        "E": (rank in (6, 7, 8), "E_n needs n in {6, 7, 8}"),
        "F": (rank == 4, "F_n needs n = 4"),
        "G": (rank == 2, "G_n needs n = 2"),
        "BC": (rank >= 1, "BC_n needs n >= 1"),
    }
    if family not in rules:
        raise PreconditionError(f"unknown family {family!r}; expected one of {FAMILIES}")
    ok, msg = rules[family]
    if not ok:
        raise PreconditionError(f"invalid type {family}{rank}: {msg}")


def cartan_matrix(family, rank):
    """Bourbaki-numbered Cartan matrix, without range validation."""
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        c[i][j] = c[j][i] = -1

    if family in ("A", "B", "C", "BC", "F"):
        for i in range(n - 1):
            link(i, i + 1)
        if family in ("B", "BC") and n >= 2:
            c[n - 1][n - 2] = -2
        elif family == "C" and n >= 2:
            c[n - 2][n - 1] = -2
        elif family == "F":
            c[2][1] = -2
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            link(i, j)
    elif family == "G":
        c = [[2, -1], [-3, 2]]
    else:
        raise PreconditionError(f"unknown family {family!r}")
    return tuple(tuple(row) for row in c)


def _symmetrizer(cartan):
    n = len(cartan)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                # d_i c_ij = d_j c_ji
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    if any(v is None for v in d):
        raise PreconditionError("Cartan matrix is not connected")
    m = min(d)
    d = [v / m for v in d]
    den = 1
    for v in d:
        den = den * v.denominator // gcd(den, v.denominator)
    return tuple(int(v * den) for v in d)


def _generate_positive_roots(cartan):
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = list(simple)
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                if beta == simple[i]:
                    continue
                p = sum(cartan[i][j] * beta[j] for j in range(n))
                r = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in seen:
                        r += 1
                    else:
                        break
                q = r - p
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in seen:
                        seen.add(up)
                        roots.append(up)
                        nxt.append(up)
        frontier = nxt
    roots.sort(key=lambda r: (sum(r), tuple(-v for v in r)))
    return roots


@dataclass(frozen=True, eq=False)
class RootDatum:
    family: str
    rank: int
    cartan: tuple
    symmetrizer: tuple
    positive_roots: tuple
    positive_coroots: tuple
    fundamental_weights: tuple
    fundamental_coweights: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def name(self):
        return f"{self.family}{self.rank}"

    def __repr__(self):
        return f"RootDatum({self.name})"

    @cached_property
    def cartan_inverse(self):
        return tuple(tuple(row) for row in inverse(self.cartan))

    @cached_property
    def det(self):
        return int(determinant(self.cartan))

    @cached_property
    def adjugate(self):
        """Integer matrix ``det * cartan^{-1}``; maps Dynkin labels to ``det`` times root coords."""
        return tuple(tuple(int(v * self.det) for v in row) for row in self.cartan_inverse)

    @cached_property
    def cartan_rows(self):
        return tuple(tuple((j, c) for j, c in enumerate(row) if c) for row in self.cartan)

    @cached_property
    def adjugate_rows(self):
        return tuple(tuple((j, c) for j, c in enumerate(row) if c) for row in self.adjugate)

    @cached_property
    def simple_roots(self):
        return tuple(tuple(Fraction(int(i == j)) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def simple_root_dynkin(self):
        # Dynkin labels of alpha_i: column i of the Cartan matrix
        return tuple(tuple(self.cartan[k][i] for k in range(self.rank)) for i in range(self.rank))

    @cached_property
    def positive_root_dynkin(self):
        return tuple(
            tuple(sum(self.cartan[k][j] * r[j] for j in range(self.rank)) for k in range(self.rank))
            for r in self.positive_roots
        )

    @cached_property
    def is_simply_laced(self):
        return self.family in ("A", "D", "E")

    @cached_property
    def rho(self):
        return as_vec(Fraction(sum(r[i] for r in self.reduced_positive_roots), 2) for i in range(self.rank))

    @cached_property
    def reduced_positive_roots(self):
        """Positive roots whose halves are not roots (drops the doubled roots of BC_n)."""
        roots = set(self.positive_roots)
        out = []
        for r in self.positive_roots:
            if all(v % 2 == 0 for v in r) and tuple(v // 2 for v in r) in roots:
                continue
            out.append(r)
        return tuple(out)

    def highest_root(self):
        return max(self.reduced_positive_roots, key=sum)


def root_norm2(cartan, symmetrizer, root):
    """(alpha, alpha) for an integer root in root coordinates."""
    n = len(cartan)
    return sum(root[i] * root[j] * symmetrizer[i] * cartan[i][j] for i in range(n) for j in range(n))


def from_cartan(cartan, family="?", doubled=False):
    """Build a root datum from a Cartan matrix of finite type.

    With ``doubled=True`` the doubles 2*beta of the short positive roots are
    appended to ``positive_roots`` (the non-reduced BC_n case).
    """
    cartan = tuple(tuple(int(v) for v in row) for row in cartan)
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise PreconditionError("Cartan diagonal entries must be 2")
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise PreconditionError(f"invalid off-diagonal Cartan entries at ({i}, {j})")
    sym = _symmetrizer(cartan)
    for i in range(n):
        for j in range(n):
            if sym[i] * cartan[i][j] != sym[j] * cartan[j][i]:
                raise PreconditionError("Cartan matrix is not symmetrizable")
    roots = _generate_positive_roots(cartan)
    coroots = []
    for r in roots:
        half = Fraction(root_norm2(cartan, sym, r), 2)
        coroots.append(tuple(Fraction(r[j] * sym[j]) / half for j in range(n)))
    if doubled:
        shortest = min(root_norm2(cartan, sym, r) for r in roots)
        extra = [r for r in roots if root_norm2(cartan, sym, r) == shortest]
        for r, cr in list(zip(roots, coroots)):
            if r in extra:
                roots.append(tuple(2 * v for v in r))
                coroots.append(tuple(v / 2 for v in cr))
    inv = inverse(cartan)
    fw = tuple(tuple(inv[i][k] for i in range(n)) for k in range(n))
    # coweight w_k in coroot coords v: sum_i v_i c[i][j] = delta_kj
    invT = inverse([[cartan[j][i] for j in range(n)] for i in range(n)])
    fcw = tuple(tuple(invT[i][k] for i in range(n)) for k in range(n))
    return RootDatum(
        family=family,
        rank=n,
        cartan=cartan,
        symmetrizer=sym,
        positive_roots=tuple(roots),
        positive_coroots=tuple(tuple(Fraction(v) for v in c) for c in coroots),
        fundamental_weights=fw,
        fundamental_coweights=fcw,
    )


@lru_cache(maxsize=None)
def build(family, rank):
    """Irreducible root datum of the given type (Bourbaki numbering, 0-based nodes)."""
    family = family.upper()
    _check_type(family, rank)
    return from_cartan(cartan_matrix(family, rank), family, doubled=(family == "BC"))


def parse_type(label):
    """``'A3'`` -> ``build('A', 3)``; ``'BC2'`` also accepted."""
    label = label.strip().upper()
    fam = label.rstrip("0123456789")
    digits = label[len(fam):]
    if not digits:
        raise PreconditionError(f"cannot parse type {label!r}")
    return build(fam, int(digits))


def _scaled_ints(x):
    """Common denominator D and integer numerators of x over D."""
    D = 1
    for v in x:
        den = getattr(v, "denominator", 1)
        if den != 1:
            D = D * den // gcd(D, den)
    return D, [v.numerator * (D // v.denominator) if isinstance(v, Fraction) else int(v) * D for v in x]


def _sparse_apply(rows, x, scale=1):
    D, xi = _scaled_ints(x)
    D *= scale
    if D == 1:
        return tuple(sum(c * xi[j] for j, c in row) for row in rows)
    return tuple(Fraction(sum(c * xi[j] for j, c in row), D) for row in rows)


def to_dynkin(R, x):
    """Dynkin labels <x, alpha_i^vee> of a weight given in root coordinates."""
    return _sparse_apply(R.cartan_rows, x)


def from_dynkin(R, d):
    return _sparse_apply(R.adjugate_rows, d, R.det)


def _check_len(R, v, what):
    if len(v) != R.rank:
        raise PreconditionError(f"{what} has length {len(v)}, expected rank {R.rank}")


def pairing(R, x, cov):
    """<x, cov> for a weight x (root coords) and a coweight cov (coroot coords)."""
    _check_len(R, x, "weight")
    _check_len(R, cov, "coweight")
    d = to_dynkin(R, x)
    return sum(Fraction(a) * b for a, b in zip(cov, d))


def simple_coroot(R, i):
    return tuple(int(i == j) for j in range(R.rank))


def inner(R, x, y):
    """W-invariant symmetric form with (alpha_i, alpha_j) = d_i * c_ij."""
    n = R.rank
    return sum(x[i] * y[j] * R.symmetrizer[i] * R.cartan[i][j] for i in range(n) for j in range(n) if x[i] and y[j])


def scaled_root_coords(R, d):
    """det * (root coordinates) of the integer Dynkin vector d."""
    return tuple(sum(c * d[j] for j, c in row) for row in R.adjugate_rows)


def scaled_norm2(R, d):
    """det * (x, x) for the weight with integer Dynkin labels d."""
    X = scaled_root_coords(R, d)
    return sum(X[i] * R.symmetrizer[i] * d[i] for i in range(R.rank))


def is_weight(R, x):
    return all(Fraction(v).denominator == 1 for v in to_dynkin(R, x))


def in_root_lattice(R, x):
    return all(Fraction(v).denominator == 1 for v in x)


def is_dominant(R, x):
    return all(v >= 0 for v in to_dynkin(R, x))


def reflect(R, i, x):
    """s_i(x) = x - <x, alpha_i^vee> alpha_i."""
    if not 0 <= i < R.rank:
        raise PreconditionError(f"node index {i} out of range for {R.name}")
    _check_len(R, x, "weight")
    p = sum(R.cartan[i][j] * x[j] for j in range(R.rank))
    out = list(x)
    out[i] = out[i] - p
    return tuple(out)


def apply_word(R, word, x):
    """Apply simple reflections in list order (word[0] first)."""
    for i in word:
        x = reflect(R, i, x)
    return x


def reflect_dynkin(R, i, d):
    a = d[i]
    if not a:
        return d
    col = R.simple_root_dynkin[i]
    return tuple(v - a * c for v, c in zip(d, col))


def dominant_dynkin(R, d):
    """Dominant representative of a Dynkin-label vector plus the firing word."""
    word = []
    d = tuple(d)
    while True:
        i = next((k for k, v in enumerate(d) if v < 0), None)
        if i is None:
            return d, word
        d = reflect_dynkin(R, i, d)
        word.append(i)


def dominant_rep(R, x):
    """Unique dominant element of W.x and a word taking x to it.

    The word is applied left to right; the lowest-index node with a negative
    label fires first.
    """
    _check_len(R, x, "weight")
    x = as_vec(x)
    d, word = dominant_dynkin(R, to_dynkin(R, x))
    # root coords change only at fired nodes; replaying is cheap and exact
    return apply_word(R, word, x), word
