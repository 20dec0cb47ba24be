"""Edge labelings, balanced labelings, ratio charts, and collar maps.

Labels are exact nonnegative rationals on the interior edges of a tree.
On colored trees the balanced condition pins the products of labels along
every root-to-color path to a common value.  The collar maps chi push a
labeling away from the deepest corner; on the quilted side their values
involve the symbols eps^(M_l) with fractional M_l, so the computations run
in an exact field of rational functions in a formal power of eps.
"""

from fractions import Fraction

from . import trees
from .errors import (
    BalanceError,
    DegenerateError,
    OrderError,
    RangeError,
    ShapeError,
)
from .trees import LEAF, PlanarTree

# -- exact arithmetic in formal powers of eps -------------------------------


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            c = out.get(e, 0) + c1 * c2
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def _poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        c2 = out.get(e, 0) + c
        if c2:
            out[e] = c2
        elif e in out:
            del out[e]
    return out


class EpsFrac:
    """Exact rational function in a formal symbol eps with rational
    exponents, stored as a numerator/denominator pair of finite sums
    {exponent: coefficient}.  Equality is decided by cross-multiplication,
    so no normal form is needed."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = {Fraction(0): Fraction(1)}
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = {Fraction(e): Fraction(c) for e, c in num.items() if c}
        self.den = {Fraction(e): Fraction(c) for e, c in den.items() if c}

    @classmethod
    def rational(cls, q):
        q = Fraction(q)
        return cls({Fraction(0): q} if q else {})

    @classmethod
    def eps_power(cls, m):
        return cls({Fraction(m): Fraction(1)})

    def __mul__(self, other):
        other = _coerce(other)
        return EpsFrac(_poly_mul(self.num, other.num),
                       _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero labeling value")
        return EpsFrac(_poly_mul(self.num, other.den),
                       _poly_mul(self.den, other.num))

    def __add__(self, other):
        other = _coerce(other)
        return EpsFrac(
            _poly_add(
                _poly_mul(self.num, other.den),
                _poly_mul(other.num, self.den),
            ),
            _poly_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return self + (-1) * other

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _poly_mul(self.num, other.den) == _poly_mul(other.num, self.den)

    def __hash__(self):
        raise TypeError("EpsFrac is not hashable (no normal form)")

    def is_zero(self):
        return not self.num

    def as_rational(self):
        """The value as a Fraction, when no eps symbol actually occurs."""
        if any(e for e in self.num) or any(e for e in self.den):
            raise ShapeError("value involves a formal power of eps")
        num = self.num.get(Fraction(0), Fraction(0))
        den = self.den.get(Fraction(0), Fraction(0))
        return num / den

    def __repr__(self):
        def side(p):
            if not p:
                return "0"
            return " + ".join(
                "%s*eps^%s" % (c, e) if e else str(c)
                for e, c in sorted(p.items())
            )

        if self.den == {Fraction(0): Fraction(1)}:
            return side(self.num)
        return "(%s)/(%s)" % (side(self.num), side(self.den))


def _coerce(x):
    if isinstance(x, EpsFrac):
        return x
    if isinstance(x, (int, Fraction)):
        return EpsFrac.rational(x)
    raise TypeError("cannot coerce %r" % (x,))


# -- labelings ---------------------------------------------------------------


class EdgeLabeling:
    """Map from the interior edges of a tree to exact values."""

    def __init__(self, tree, labels):
        edges = set(tree.edges())
        labels = {tuple(e): v for e, v in labels.items()}
        if set(labels) != edges:
            raise ShapeError("labels must cover the interior edges exactly")
        self.tree = tree
        self.labels = labels

    def __getitem__(self, edge):
        return self.labels[tuple(edge)]

    def __eq__(self, other):
        return (
            isinstance(other, EdgeLabeling)
            and self.tree == other.tree
            and all(self.labels[e] == other.labels[e] for e in self.labels)
            and set(self.labels) == set(other.labels)
        )

    def __repr__(self):
        return "EdgeLabeling(%r, %r)" % (self.tree, self.labels)


def _colored_paths(tree):
    """Edge paths from the root up to each colored vertex, as lists of
    edge identifiers (bottom-up)."""
    out = []

    def rec(v, prefix, chain):
        if v[1]:
            out.append(chain)
            return
        for idx, item in enumerate(v[2]):
            if isinstance(item, tuple):
                path = prefix + (idx,)
                rec(item, path, chain + [path])

    rec(tree.root, (), [])
    return out


def color_products(lab):
    """Product of labels along each root-to-color path."""
    return [
        _prod(lab[e] for e in chain) for chain in _colored_paths(lab.tree)
    ]


def _prod(values):
    out = Fraction(1)
    for v in values:
        out = v * out
    return out


def is_balanced(lab):
    prods = color_products(lab)
    if not prods:
        raise BalanceError("tree has no colored vertex")
    return all(p == prods[0] for p in prods[1:])


def restrict_plain(lab, t1, t2, witness=None):
    """Restrict a labeling on t2 to a contraction t1 <= t2: surviving
    labels are unchanged."""
    witness = _check_witness(t1, t2, witness)
    new_tree, emap = trees.contract_set(t2, witness)
    if new_tree != t1:
        raise OrderError("witness does not contract t2 to t1")
    return EdgeLabeling(t1, {emap[e]: lab[e] for e in emap})


def _check_witness(t1, t2, witness):
    if witness is None:
        witness = trees.contraction_witness(t1, t2)
        if witness is None:
            raise OrderError("t1 is not a contraction of t2")
        return witness
    witness = frozenset(tuple(e) for e in witness)
    cand, _ = trees.contract_set(t2, witness)
    if cand != t1:
        raise OrderError("witness does not contract t2 to t1")
    return witness


def _down_chain(edge, contracted):
    """Contracted edges strictly below ``edge`` reachable through
    contracted edges (the bottom endpoint's rootward chain)."""
    out = []
    e = tuple(edge)
    while len(e) > 1:
        parent = e[:-1]
        if parent in contracted:
            out.append(parent)
            e = parent
        else:
            break
    return out


def _up_chains(tree, edge, contracted):
    """Products of contracted edges above ``edge`` reaching a colored
    vertex through contracted edges: lists of edge paths, one per
    reachable colored vertex."""
    top = tree.vertex_at(edge)
    if top[1]:
        return []
    found = []

    def rec(v, path, acc):
        for idx, item in enumerate(v[2]):
            if not isinstance(item, tuple):
                continue
            child_edge = path + (idx,)
            if child_edge not in contracted:
                continue
            chain = acc + [child_edge]
            if item[1]:
                found.append(chain)
            else:
                rec(item, child_edge, chain)

    rec(top, tuple(edge), [])
    return found


def restrict_balanced(lab, t1, t2, witness=None):
    """Balanced restriction: each surviving label is multiplied by the
    contracted labels below it and by the contracted labels leading up to
    a colored vertex, keeping the color products intact."""
    if not is_balanced(lab):
        raise BalanceError("input labeling is not balanced")
    witness = _check_witness(t1, t2, witness)
    new_tree, emap = trees.contract_set(t2, witness)
    if new_tree != t1:
        raise OrderError("witness does not contract t2 to t1")
    out = {}
    for e, new_e in emap.items():
        value = lab[e]
        for lp in _down_chain(e, witness):
            value = value * lab[lp]
        ups = _up_chains(lab.tree, e, witness)
        if ups:
            prods = [_prod(lab[x] for x in chain) for chain in ups]
            assert all(p == prods[0] for p in prods[1:]), (
                "balanced input must give equal upward products"
            )
            value = value * prods[0]
        out[new_e] = value
    result = EdgeLabeling(t1, out)
    assert is_balanced(result), "restriction must preserve balancedness"
    return result


# -- exponent calculus -------------------------------------------------------


def _edge_regions(tree):
    """Classify each edge: 'above' (a colored vertex lies strictly below
    it or at its bottom endpoint), 'touch' (its top endpoint is colored),
    or 'below'."""
    regions = {}

    def rec(v, prefix, seen_color):
        for idx, item in enumerate(v[2]):
            if not isinstance(item, tuple):
                continue
            e = prefix + (idx,)
            if seen_color:
                regions[e] = "above"
            elif item[1]:
                regions[e] = "touch"
            else:
                regions[e] = "below"
            rec(item, e, seen_color or item[1])

    rec(tree.root, (), tree.root[1])
    return regions


class ExponentData:
    def __init__(self, b, m, n):
        self.b = b
        self.m = m
        self.n = n


def exponents(tree, tmax=None, witness=None):
    """Per-edge exponent calculus on a colored tree.

    b_l counts the edges below l (inclusive); M_l is 1/2^b_l below the
    colors, 1/2^(b_l - 1) just below a colored vertex, and 1 above.  When
    ``tmax >= tree`` is given, N_l accumulates the M of the contracted
    edges entering the balanced restriction at l; otherwise N_l = M_l.
    """
    target = tmax if tmax is not None else tree
    regions = _edge_regions(target)
    b = {}
    m = {}
    for e in target.edges():
        b[e] = len(e)
        if regions[e] == "above":
            m[e] = Fraction(1)
        elif regions[e] == "touch":
            m[e] = Fraction(1, 2 ** (b[e] - 1))
        else:
            m[e] = Fraction(1, 2 ** b[e])
    if tmax is None:
        return ExponentData(b, m, dict(m))
    witness = _check_witness(tree, tmax, witness)
    _, emap = trees.contract_set(tmax, witness)
    n = {}
    for e, new_e in emap.items():
        total = m[e]
        for lp in _down_chain(e, witness):
            total += m[lp]
        ups = _up_chains(tmax, e, witness)
        if ups:
            total += sum(m[x] for x in ups[0])
        n[new_e] = total
    return ExponentData(b, m, n)


# -- collar maps chi ---------------------------------------------------------


def _check_eps(eps):
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise RangeError("eps must lie in (0, 1]")
    return eps


def chi_unquilted(lab, eps):
    """Shift every label by eps: pushes the labeling off all corners."""
    eps = _check_eps(eps)
    return EdgeLabeling(
        lab.tree, {e: v + eps for e, v in lab.labels.items()}
    )


def chi_quilted(lab, eps):
    """Collar map on balanced labelings.

    Above the colors the label just shifts by eps.  Below, writing
    F(l) = eps^(M_l) + X(l)^2, each edge gets F(l) corrected by the
    telescoping quotient eps^(M_l')/F(l') of the edge l' just below it,
    and an edge touching a colored vertex instead gets (1 + Y) eps^(M_l)
    times that quotient, Y being the common color product of the input.
    Root-to-color products then telescope to eps*(1 + Y), chi(0) is the
    labeling l -> eps^(M_l), and the input is recovered bottom-up.
    """
    _check_eps(eps)
    if not is_balanced(lab):
        raise BalanceError("chi_quilted needs a balanced labeling")
    tree = lab.tree
    regions = _edge_regions(tree)
    exp = exponents(tree)
    y = color_products(lab)[0]
    out = {}
    for e in tree.edges():
        x = lab[e]
        if regions[e] == "above":
            out[e] = EpsFrac.rational(x) + EpsFrac.eps_power(1)
            continue
        below = e[:-1] if len(e) > 1 else None
        quotient = EpsFrac.rational(1)
        if below is not None:
            xb = lab[below]
            quotient = EpsFrac.eps_power(exp.m[below]) / (
                EpsFrac.eps_power(exp.m[below]) + EpsFrac.rational(xb * xb)
            )
        if regions[e] == "touch":
            out[e] = (
                EpsFrac.rational(1 + y)
                * EpsFrac.eps_power(exp.m[e])
                * quotient
            )
        else:
            out[e] = (
                EpsFrac.eps_power(exp.m[e]) + EpsFrac.rational(x * x)
            ) * quotient
    return EdgeLabeling(tree, out)


def color_products_sym(lab):
    """Color products for labelings with symbolic values."""
    out = []
    for chain in _colored_paths(lab.tree):
        p = EpsFrac.rational(1)
        for e in chain:
            p = p * lab[e]
        out.append(p)
    return out


# -- simple-ratio charts -----------------------------------------------------


class MarkedDisk:
    """Normalized coordinates of a marked (optionally quilted) disk in the
    upper-half-plane model: boundary positions x_1 < ... < x_l on the real
    line (the root marking at infinity), interior marks as (re, im) pairs
    with im > 0 listed in the planar order of the tree, and an optional
    seam height."""

    def __init__(self, xs, zs=(), seam=None):
        self.xs = [Fraction(x) for x in xs]
        self.zs = [(Fraction(a), Fraction(b)) for a, b in zs]
        self.seam = Fraction(seam) if seam is not None else None
        if any(
            self.xs[i] >= self.xs[i + 1] for i in range(len(self.xs) - 1)
        ):
            raise OrderError("boundary positions must increase")
        if any(b <= 0 for _, b in self.zs):
            raise DegenerateError("interior marks need positive height")


def _marking_sequence(tree):
    """Planar sequence of markings: ('x', leaf#) and ('z', vertex path)."""
    seq = []
    counter = [0]

    def rec(v, prefix):
        if v[0] == 1 and not v[2]:
            seq.append(("z", prefix))
            return
        for idx, item in enumerate(v[2]):
            if item == LEAF:
                counter[0] += 1
                seq.append(("x", counter[0]))
            else:
                rec(item, prefix + (idx,))

    rec(tree.root, ())
    return seq


def _is_chart_maximal(tree):
    for _, (i, col, slots) in tree.vertices():
        if col:
            if (len(slots), i) != (1, 0):
                return False
        elif (len(slots), i) not in ((2, 0), (0, 1)):
            return False
    return True


def simple_ratio_chart(disk, tree):
    """Edge labels X(l) = Delta(top)/Delta(bottom) of a maximal type.

    Delta of a two-slot vertex is the horizontal gap between the last
    marking of its first branch and the first marking of its second; Delta
    of a mark vertex is the height of its mark; Delta of a quilted vertex
    is the seam height.
    """
    if not _is_chart_maximal(tree):
        raise ShapeError("chart needs a maximal combinatorial type")
    seq = _marking_sequence(tree)
    l = tree.num_leaves
    k = tree.num_marks
    if len(disk.xs) != l or len(disk.zs) != k:
        raise ShapeError("disk does not match the tree's marking counts")
    z_order = [p for kind, p in seq if kind == "z"]
    z_at = {p: disk.zs[h] for h, p in enumerate(z_order)}
    pos = []
    for kind, ref in seq:
        if kind == "x":
            pos.append(disk.xs[ref - 1])
        else:
            pos.append(z_at[ref][0])
    if any(pos[i] >= pos[i + 1] for i in range(len(pos) - 1)):
        raise OrderError("marking positions violate the planar order")

    delta = {}

    def span(v, prefix, start):
        """Returns (count of markings in subtree); fills delta."""
        i, col, slots = v
        if col:
            if disk.seam is None:
                raise ShapeError("quilted type needs a seam height")
            if disk.seam == 0:
                raise DegenerateError("zero seam height")
            delta[prefix] = disk.seam
            item = slots[0]
            if item == LEAF:
                return 1
            return span(item, prefix + (0,), start)
        if i == 1 and not slots:
            h = z_at[prefix][1]
            if h == 0:
                raise DegenerateError("zero mark height")
            delta[prefix] = h
            return 1
        n1 = (
            1
            if slots[0] == LEAF
            else span(slots[0], prefix + (0,), start)
        )
        n2 = (
            1
            if slots[1] == LEAF
            else span(slots[1], prefix + (1,), start + n1)
        )
        gap = pos[start + n1] - pos[start + n1 - 1]
        if gap == 0:
            raise DegenerateError("coincident markings")
        delta[prefix] = gap
        return n1 + n2

    span(tree.root, (), 0)
    labels = {}
    for e in tree.edges():
        labels[e] = delta[e] / delta[e[:-1]]
    return EdgeLabeling(tree, labels)


def chart_inverse(lab):
    """Reconstruct normalized disk coordinates from chart labels: the root
    Delta is 1 and the first marking sits at 0."""
    tree = lab.tree
    if not _is_chart_maximal(tree):
        raise ShapeError("chart needs a maximal combinatorial type")
    delta = {(): Fraction(1)}
    for e in tree.edges():
        delta[e] = lab[e] * delta[e[:-1]]
        if delta[e] == 0:
            raise DegenerateError("zero label")
    seq = _marking_sequence(tree)
    n = len(seq)
    # gap between consecutive markings = Delta of their meet vertex
    gaps = {}

    def walk(v, prefix, start):
        i, col, slots = v
        if col:
            item = slots[0]
            return 1 if item == LEAF else walk(item, prefix + (0,), start)
        if i == 1 and not slots:
            return 1
        n1 = 1 if slots[0] == LEAF else walk(slots[0], prefix + (0,), start)
        n2 = (
            1
            if slots[1] == LEAF
            else walk(slots[1], prefix + (1,), start + n1)
        )
        gaps[start + n1 - 1] = delta[prefix]
        return n1 + n2

    walk(tree.root, (), 0)
    pos = [Fraction(0)]
    for j in range(n - 1):
        pos.append(pos[-1] + gaps[j])
    xs = []
    zs = []
    z_heights = {}
    seam = None
    for path, (i, col, slots) in tree.vertices():
        if col:
            seam = delta[path]
        elif i == 1 and not slots:
            z_heights[path] = delta[path]
    for idx, (kind, ref) in enumerate(seq):
        if kind == "x":
            xs.append(pos[idx])
        else:
            zs.append((pos[idx], z_heights[ref]))
    return MarkedDisk(xs, zs, seam)


# -- serialization -----------------------------------------------------------


def edge_id(edge):
    return ".".join(str(i) for i in edge) if edge else ""


def edge_from_id(s):
    return tuple(int(p) for p in s.split(".")) if s else ()


def labeling_to_obj(lab, eps=None):
    out = {}
    for e, v in lab.labels.items():
        key = edge_id(e)
        if isinstance(v, EpsFrac):
            mono = _as_monomial(v)
            if mono is not None and eps is not None:
                out[key] = {"base": str(eps), "exp": str(mono)}
            else:
                out[key] = {
                    "num": [[str(x), str(c)] for x, c in sorted(v.num.items())],
                    "den": [[str(x), str(c)] for x, c in sorted(v.den.items())],
                }
        else:
            out[key] = str(Fraction(v))
    return out


def _as_monomial(v):
    if len(v.num) == 1 and len(v.den) == 1:
        (en, cn), = v.num.items()
        (ed, cd), = v.den.items()
        if cn == cd:
            return en - ed
    return None


def labeling_from_obj(tree, obj):
    labels = {}
    for key, v in obj.items():
        e = edge_from_id(key)
        if isinstance(v, str):
            labels[e] = Fraction(v)
        elif "base" in v:
            labels[e] = EpsFrac.eps_power(Fraction(v["exp"]))
        else:
            labels[e] = EpsFrac(
                {Fraction(x): Fraction(c) for x, c in v["num"]},
                {Fraction(x): Fraction(c) for x, c in v["den"]},
            )
    return EdgeLabeling(tree, labels)


# -- random balanced labelings (test/CLI support) ---------------------------


def random_balanced(tree, rng, max_num=8):
    """A random balanced labeling: free positive labels everywhere except
    each color-touching edge, which is solved for the common product."""
    paths = _colored_paths(tree)
    if not paths:
        raise BalanceError("tree has no colored vertex")

    def rnd():
        return Fraction(rng.randint(1, max_num), rng.randint(1, max_num))

    target = rnd()
    labels = {}
    for e in tree.edges():
        labels[e] = rnd()
    for chain in paths:
        if chain:
            partial = _prod(labels[e] for e in chain[:-1])
            labels[chain[-1]] = target / partial
    return EdgeLabeling(tree, labels)
