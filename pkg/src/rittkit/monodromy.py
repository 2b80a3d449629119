"""Permutation monodromy tuples and the fiber-product construction.

Conventions, fixed once:

* Internally points are 0..n-1 and a permutation is a tuple of images.
  JSON uses 1-based images.
* Products are read left to right: (p q)(x) = q(p(x)).  A tuple
  (a_1, ..., a_r) satisfies a_1 a_2 ... a_r = 1 in this order.
* The label "inf" stands for infinity and always sorts last.
"""

from collections import deque
from fractions import Fraction
from math import gcd

from .errors import InvalidTuple, BoundExceeded

INF = "inf"
DEFAULT_GROUP_CAP = 10 ** 6
DEFAULT_BLOCK_BOUND = 64


# -- permutations --------------------------------------------------------

def identity(n):
    return tuple(range(n))


def mul(p, q):
    """Left-to-right product: apply p, then q."""
    return tuple(q[x] for x in p)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p):
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if not seen[s]:
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = p[x]
            out.append(cyc)
    return out


def cycle_type(p):
    return tuple(sorted(len(c) for c in cycles(p)))


def from_cycles(n, cycs):
    """Permutation of 0..n-1 from 0-based cycles."""
    img = list(range(n))
    for c in cycs:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


def orbits(n, gens):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[a] = b
    groups = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


# -- labels --------------------------------------------------------------

def parse_label(s):
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = str(s).strip()
    if s.lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    try:
        return Fraction(s)
    except ValueError:
        return s


def label_str(x):
    return str(x)


def label_key(x):
    if x == INF:
        return (2, 0, "")
    if isinstance(x, Fraction):
        return (0, x, "")
    return (1, 0, str(x))


# -- tuples ---------------------------------------------------------------

class MonodromyTuple:
    """Degree-n permutation r-tuple over branch labels."""

    __slots__ = ("degree", "labels", "perms")

    def __init__(self, degree, labels, perms):
        self.degree = int(degree)
        self.labels = tuple(parse_label(x) for x in labels)
        self.perms = tuple(tuple(int(v) for v in p) for p in perms)
        if len(self.labels) != len(self.perms):
            raise InvalidTuple("labels and permutations differ in number")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidTuple("branch labels must be distinct")
        for p in self.perms:
            if len(p) != self.degree or sorted(p) != list(range(self.degree)):
                raise InvalidTuple("entry is not a permutation of degree %d" % self.degree)

    @property
    def r(self):
        return len(self.perms)

    def product(self):
        acc = identity(self.degree)
        for p in self.perms:
            acc = mul(acc, p)
        return acc

    def perm_at(self, label):
        label = parse_label(label)
        for x, p in zip(self.labels, self.perms):
            if x == label:
                return p
        return identity(self.degree)

    def cycle_types(self):
        return [cycle_type(p) for p in self.perms]

    def is_transitive(self):
        return len(orbits(self.degree, self.perms)) == 1

    def is_generalized_polynomial(self):
        """One full cycle over infinity."""
        return cycle_type(self.perm_at(INF)) == (self.degree,)

    def to_json(self):
        return {
            "degree": self.degree,
            "branch_labels": [label_str(x) for x in self.labels],
            "perms": [[v + 1 for v in p] for p in self.perms],
        }

    @classmethod
    def from_json(cls, obj, check=True):
        t = cls(obj["degree"], obj["branch_labels"],
                [[v - 1 for v in p] for p in obj["perms"]])
        if check:
            rep = validate(t)
            if not rep["ok"]:
                raise InvalidTuple("; ".join(rep["violations"]))
        return t

    def __eq__(self, o):
        return (isinstance(o, MonodromyTuple) and self.degree == o.degree
                and self.labels == o.labels and self.perms == o.perms)

    def __hash__(self):
        return hash((self.degree, self.labels, self.perms))

    def __repr__(self):
        return "MonodromyTuple(%d, %s)" % (self.degree, list(zip(self.labels, self.cycle_types())))


def validate(t):
    """{'ok': bool, 'violations': [...]} for product-one and transitivity."""
    v = []
    if t.product() != identity(t.degree):
        v.append("product of permutations is not the identity")
    if not t.is_transitive():
        v.append("generated group is not transitive")
    return {"ok": not v, "violations": v}


def _cycle_perm(n):
    return tuple((i + 1) % n for i in range(n))


def _chebyshev_pair(n):
    a = from_cycles(n, [[i, i + 1] for i in range(0, n - 1, 2)])
    b = from_cycles(n, [[i, i + 1] for i in range(1, n - 1, 2)])
    return a, b


def builtin_tuple(kind, n, sign=1):
    """Tuples of z^n, T_n, D_n; ``sign=-1`` gives the tuple of -F.

    The sign twist relabels the branch values w -> -w instead of conjugating.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind in ("power", "pow"):
        c = _cycle_perm(n)
        # w -> -w fixes 0 and infinity, so the sign changes nothing here
        return MonodromyTuple(n, [0, INF], [c, inv(c)])
    if kind in ("chebyshev", "T"):
        a, b = _chebyshev_pair(n)
        deg = n
    elif kind in ("laurent_D", "D"):
        deg = 2 * n
        a = from_cycles(deg, [[i, i + 1] for i in range(0, deg, 2)])
        b = from_cycles(deg, [[i, (i + 1) % deg] for i in range(1, deg, 2)])
    else:
        raise ValueError("unknown tuple kind %r" % kind)
    if sign == -1:
        a, b = b, a
    return MonodromyTuple(deg, [-1, 1, INF], [a, b, inv(mul(a, b))])


def merge_labels(*tuples):
    """Common label order: union sorted canonically, infinity last.

    Every tuple's own order must be a subsequence of the merged order,
    otherwise padding would change the meaning of its product relation.
    """
    labels = set()
    for t in tuples:
        labels.update(t.labels)
    order = sorted(labels, key=label_key)
    pos = {x: i for i, x in enumerate(order)}
    for t in tuples:
        idx = [pos[x] for x in t.labels]
        if idx != sorted(idx):
            raise InvalidTuple("label order %s is not compatible with the canonical order"
                               % [label_str(x) for x in t.labels])
    return order


def pad(t, labels):
    return MonodromyTuple(t.degree, labels, [t.perm_at(x) for x in labels])


def merged(f, g):
    labels = merge_labels(f, g)
    return pad(f, labels), pad(g, labels)


def genus_of_tuple(t):
    """Riemann-Hurwitz: 2 - 2g = sum of cycle counts - (r - 2) n."""
    chi = sum(len(cycles(p)) for p in t.perms) - (t.r - 2) * t.degree
    if chi % 2:
        raise InvalidTuple("Euler characteristic %d is odd" % chi)
    g = 1 - chi // 2
    if g < 0:
        raise InvalidTuple("negative genus %d" % g)
    return g


def induced_tuple(t, blocks):
    """Action of t on a block system (list of blocks)."""
    where = {}
    for i, b in enumerate(blocks):
        for x in b:
            where[x] = i
    perms = []
    for p in t.perms:
        img = [where[p[b[0]]] for b in blocks]
        perms.append(tuple(img))
    return MonodromyTuple(len(blocks), t.labels, perms)


def restrict(t, points):
    """Restriction of t to an invariant subset, relabelled 0..k-1 in order."""
    idx = {x: i for i, x in enumerate(points)}
    return MonodromyTuple(len(points), t.labels, [tuple(idx[p[x]] for x in points) for p in t.perms])


# -- fiber product ---------------------------------------------------------

class Component:
    __slots__ = ("pairs", "tuple", "genus", "blocks_f", "blocks_g")

    def __init__(self, pairs, tup, genus, blocks_f, blocks_g):
        self.pairs, self.tuple, self.genus = pairs, tup, genus
        self.blocks_f, self.blocks_g = blocks_f, blocks_g

    def to_json(self):
        return {
            "size": len(self.pairs),
            "pairs": [[a + 1, b + 1] for a, b in self.pairs],
            "genus": self.genus,
            "tuple": self.tuple.to_json(),
            "blocks_f": [[x + 1 for x in b] for b in self.blocks_f],
            "blocks_g": [[x + 1 for x in b] for b in self.blocks_g],
        }


class FiberComponents:
    __slots__ = ("f", "g", "components")

    def __init__(self, f, g, components):
        self.f, self.g, self.components = f, g, components

    @property
    def count(self):
        return len(self.components)

    o = count

    def euler_sum(self):
        return sum(2 - 2 * c.genus for c in self.components)

    def to_json(self):
        return {"o": self.count, "euler_sum": self.euler_sum(),
                "components": [c.to_json() for c in self.components]}


def fiber_product(f, g):
    """Orbits of delta_i = (alpha_i(f), alpha_i(g)) on pairs, with their tuples."""
    f, g = merged(f, g)
    n, m = f.degree, g.degree
    gens = [tuple(fp[a] * m + gp[b] for a in range(n) for b in range(m))
            for fp, gp in zip(f.perms, g.perms)]
    comps = []
    for orb in orbits(n * m, gens):
        pairs = [(x // m, x % m) for x in orb]
        sub = restrict(MonodromyTuple(n * m, f.labels, gens), orb)
        bf, bg = {}, {}
        for i, (a, b) in enumerate(pairs):
            bf.setdefault(a, []).append(i)
            bg.setdefault(b, []).append(i)
        comps.append(Component(pairs, sub, genus_of_tuple(sub),
                               [bf[a] for a in sorted(bf)], [bg[b] for b in sorted(bg)]))
    return FiberComponents(f, g, comps)


def o_count(f, g):
    f, g = merged(f, g)
    n, m = f.degree, g.degree
    gens = [tuple(fp[a] * m + gp[b] for a in range(n) for b in range(m))
            for fp, gp in zip(f.perms, g.perms)]
    return len(orbits(n * m, gens))


# -- block systems -----------------------------------------------------------

def _closure(n, gens, pairs):
    """Finest invariant partition in which every given pair is joined."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            queue.append((a, b))
    while queue:
        a, b = queue.popleft()
        for g in gens:
            x, y = find(g[a]), find(g[b])
            if x != y:
                parent[x] = y
                queue.append((g[a], g[b]))
    groups = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(v) for v in groups.values()))


def block_systems(t, bound=DEFAULT_BLOCK_BOUND):
    """Every block system of the group generated by t, trivial ones included."""
    n = t.degree
    if n > bound:
        raise BoundExceeded("degree %d exceeds block enumeration bound %d" % (n, bound))
    gens = [p for p in t.perms]
    found = {tuple((x,) for x in range(n))}
    minimal = [_closure(n, gens, [(0, b)]) for b in range(1, n)]
    found.update(minimal)
    frontier = list(found)
    while frontier:
        new = []
        for s in frontier:
            for mn in minimal:
                pairs = [(blk[0], x) for blk in s for x in blk[1:]]
                pairs += [(blk[0], x) for blk in mn for x in blk[1:]]
                j = _closure(n, gens, pairs)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return sorted(found, key=lambda s: (len(s[0]), s))


# -- pair reduction ------------------------------------------------------------

def group_elements(gens, cap=DEFAULT_GROUP_CAP):
    """All elements of the group generated by gens, by breadth-first closure."""
    n = len(gens[0])
    e = identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise BoundExceeded("group has more than %d elements" % cap)
                queue.append(y)
    return seen


def _kernel_blocks(f, g, cap, side):
    n, m = f.degree, g.degree
    gens = [fp + tuple(n + y for y in gp) for fp, gp in zip(f.perms, g.perms)]
    G = group_elements(gens, cap)
    if side == "f":
        # elements trivial on g; orbits on f's points
        K = [x[:n] for x in G if all(x[n + j] == n + j for j in range(m))]
        return orbits(n, K) if K else [[i] for i in range(n)]
    K = [tuple(v - n for v in x[n:]) for x in G if all(x[i] == i for i in range(n))]
    return orbits(m, K) if K else [[j] for j in range(m)]


def reduce_pair(f, g, cap=DEFAULT_GROUP_CAP):
    """Replace f by f N_g and g by g N_f until both kernels are trivial.

    Returns (f1, g1, witnesses); o(f, g) = o(f1, g1) is checked at every step.
    """
    f, g = merged(f, g)
    o0 = o_count(f, g)
    steps = []
    while True:
        changed = False
        blocks = _kernel_blocks(f, g, cap, "f")
        if len(blocks) < f.degree:
            f = induced_tuple(f, blocks)
            steps.append({"side": "f", "block_size": len(blocks[0]), "degree": f.degree})
            changed = True
        blocks = _kernel_blocks(f, g, cap, "g")
        if len(blocks) < g.degree:
            g = induced_tuple(g, blocks)
            steps.append({"side": "g", "block_size": len(blocks[0]), "degree": g.degree})
            changed = True
        o1 = o_count(f, g)
        if o1 != o0:
            raise AssertionError("reduction changed the component count")
        if not changed:
            break
    return f, g, {"o": o0, "steps": steps}


def passport_of_tuple(t):
    """Finite branch entries (label, partition) of a tuple."""
    from .genus import Passport
    entries = [(x, cycle_type(p)) for x, p in zip(t.labels, t.perms) if x != INF]
    return Passport(t.degree, entries)
