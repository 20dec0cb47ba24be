"""Face posets and corner structure of the disk moduli families.

Three families share one combinatorial backbone:

* ``K``  -- stable disks with ordered boundary markings; strata are planar
  trees, codim = number of interior edges.
* ``Q``  -- quilted disks; strata are colored trees, codim = interior edges
  minus (colored vertices - 1), the colored count being forced by the
  one-color-per-leaf-path axiom.
* ``Ks`` -- the symmetric family: one tile per permutation of the boundary
  markings, glued along transposition strata over ghost components.

A stratum's closed cell is the ordered product of one moduli factor per
vertex, taken in depth-first preorder; all orientation bookkeeping below
is relative to that product orientation.
"""

import json
from itertools import combinations, permutations

from . import trees
from .errors import CapError, GhostCornerError, ShapeError, StabilityError
from .signs import sign_concat, sign_lower_quilt, sign_upper_quilt, perm_parity
from .trees import LEAF, PlanarTree, vertex

FAMILIES = ("K", "Q", "Ks")


def _norm_family(family):
    f = str(family)
    if f in ("K", "K*", "Kx"):
        return "K"
    if f in ("Q",):
        return "Q"
    if f in ("Ks", "K.", "Kdot", "Kb"):
        return "Ks"
    raise ShapeError("unknown family %r" % (family,))


def dimension(family, l, k):
    """Dimension of the smooth locus: l - 2 + 2k for K/Ks, l - 1 + 2k for Q."""
    family = _norm_family(family)
    if family == "Q":
        if l < 1:
            raise StabilityError("quilted family needs l >= 1")
        return l - 1 + 2 * k
    if not trees.params_stable(l, k):
        raise StabilityError("no stable disk with l=%d, k=%d" % (l, k))
    return l - 2 + 2 * k


def vertex_dim(v):
    """Moduli dimension of one component: slots - 2 + 2i, plus 1 if quilted."""
    i, col, slots = v
    d = len(slots) - 2 + 2 * i
    return d + 1 if col else d


def _subtree_factor_dim(v):
    return vertex_dim(v) + sum(
        _subtree_factor_dim(s) for s in v[2] if isinstance(s, tuple)
    )


class Stratum:
    """One combinatorial stratum: a family tag, a tree, and for the
    symmetric family a tile permutation."""

    __slots__ = ("family", "tree", "perm")

    def __init__(self, family, tree, perm=None):
        self.family = _norm_family(family)
        self.tree = tree
        self.perm = tuple(perm) if perm is not None else None

    def __eq__(self, other):
        return (
            isinstance(other, Stratum)
            and self.family == other.family
            and self.tree == other.tree
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash((self.family, self.tree, self.perm))

    def __repr__(self):
        extra = ", perm=%r" % (self.perm,) if self.perm else ""
        return "Stratum(%r, %r%s)" % (self.family, self.tree, extra)

    @property
    def l(self):
        return self.tree.num_leaves

    @property
    def k(self):
        return self.tree.num_marks

    @property
    def codim(self):
        if self.family == "Q":
            return self.tree.n_edges - (self.tree.n_colored - 1)
        return self.tree.n_edges

    @property
    def dim(self):
        return sum(vertex_dim(v) for _, v in self.tree.vertices())

    def dim_by_vertices(self):
        return self.dim

    def ghost_paths(self):
        """Components without interior marks (identification loci in Ks)."""
        return [p for p, v in self.tree.vertices() if v[0] == 0]


class FacePoset:
    """All strata of one family at fixed (l, k), with covering relations.

    ``coverings`` lists index pairs (a, b) where stratum b lies in the
    closed cell of stratum a with codim(b) = codim(a) + 1.
    """

    def __init__(self, family, l, k, strata, coverings=None):
        self.family = family
        self.l = l
        self.k = k
        self.strata = strata
        self._coverings = coverings
        self._index = {s: i for i, s in enumerate(strata)}

    @property
    def coverings(self):
        if self._coverings is None:
            self._coverings = _compute_coverings(self)
        return self._coverings

    def index(self, stratum):
        return self._index[stratum]

    def by_codim(self):
        out = {}
        for i, s in enumerate(self.strata):
            out.setdefault(s.codim, []).append(i)
        return out

    def f_vector(self):
        """Cell counts in ascending dimension."""
        counts = {}
        for s in self.strata:
            counts[s.dim] = counts.get(s.dim, 0) + 1
        return tuple(counts[d] for d in sorted(counts))


def _k_strata(l, k):
    out = []
    top = dimension("K", l, k)
    for codim in range(top + 1):
        for t in trees.enumerate_types(l, k, codim):
            out.append(Stratum("K", t))
    return out


def _q_strata(l, k):
    out = []
    top = dimension("Q", l, k)
    # codim = edges - (colored - 1) and colored <= l bounds the edge count
    for e in range(top + l):
        for t in trees.enumerate_colored_types(l, k, e):
            s = Stratum("Q", t)
            if 0 <= s.codim <= top:
                out.append(s)
    out.sort(key=lambda s: s.codim)
    return out


def _compute_coverings(poset):
    strata = poset.strata
    if poset.family in ("K", "Ks"):
        coverings = []
        by_cd = {}
        for i, s in enumerate(strata):
            by_cd.setdefault(s.codim, []).append(i)
        for cd, idxs in sorted(by_cd.items()):
            for i in idxs:
                for j in by_cd.get(cd + 1, ()):
                    if trees.leq(strata[i].tree, strata[j].tree):
                        coverings.append((i, j))
        return coverings
    # quilted: full order then Hasse reduction, since a single covering
    # step can contract several edges when it merges away a colored layer
    n = len(strata)
    less = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if strata[a].codim < strata[b].codim:
                if trees.leq(strata[a].tree, strata[b].tree):
                    less[a][b] = True
    coverings = []
    for a in range(n):
        for b in range(n):
            if less[a][b] and not any(
                less[a][c] and less[c][b] for c in range(n)
            ):
                coverings.append((a, b))
    return coverings


def face_poset(family, l, k):
    """Poset of all strata at (l, k); covering relations computed lazily."""
    family = _norm_family(family)
    trees.check_caps(l, k)
    strata = _k_strata(l, k) if family in ("K", "Ks") else _q_strata(l, k)
    return FacePoset(family, l, k, strata)


def f_vector(family, l, k):
    return face_poset(family, l, k).f_vector()


# -- grading profile without materializing strata --------------------------
#
# A counting recursion mirroring the tree enumeration, tallying strata by
# (codim, sum of per-vertex dimensions).  The dimension sum is accumulated
# vertex by vertex, independently of the codim bookkeeping, so comparing
# the profile against dimension(family, l, k) checks the poset grading on
# families far too large to list.

from functools import lru_cache


def _acc(out, key, n):
    out[key] = out.get(key, 0) + n


@lru_cache(maxsize=None)
def _pv_profile(l, k, emax):
    """{(e, dimsum): count} over stable uncolored subtrees."""
    out = {}
    for i in range(k + 1):
        for (e, s, d), n in _pss_profile(l, k - i, emax).items():
            if s + 1 + 2 * i >= 3:
                _acc(out, (e, d + s - 2 + 2 * i), n)
    return out


@lru_cache(maxsize=None)
def _pss_profile(l, k, emax):
    """{(e, slots, dimsum): count} over uncolored slot sequences."""
    out = {}
    if l == 0 and k == 0:
        out[(0, 0, 0)] = 1
    if l >= 1:
        for (e, s, d), n in _pss_profile(l - 1, k, emax).items():
            _acc(out, (e, s + 1, d), n)
    if emax < 1:
        return out
    for lc in range(l + 1):
        for kc in range(k + 1):
            for (ec, dc), nc in _pv_profile(lc, kc, emax - 1).items():
                rest = _pss_profile(l - lc, k - kc, emax - 1 - ec)
                for (e, s, d), n in rest.items():
                    _acc(out, (e + 1 + ec, s + 1, d + dc), n * nc)
    return out


@lru_cache(maxsize=None)
def _cb_profile(l, k, emax):
    """{(e, ncol, dimsum): count} over below-color colored subtrees."""
    out = {}
    for i in range(k + 1):
        for (e, s, d), n in _pss_profile(l, k - i, emax).items():
            if s + 1 + 2 * i >= 2:
                _acc(out, (e, 1, d + s - 1 + 2 * i), n)
        for (e, nc, s, d), n in _bss_profile(l, k - i, emax).items():
            if s + 1 + 2 * i >= 3:
                _acc(out, (e, nc, d + s - 2 + 2 * i), n)
    return out


@lru_cache(maxsize=None)
def _bss_profile(l, k, emax):
    """{(e, ncol, slots, dimsum): count} over below-color slot sequences."""
    out = {}
    if l == 0 and k == 0:
        out[(0, 0, 0, 0)] = 1
    if emax < 1:
        return out
    for lc in range(l + 1):
        for kc in range(k + 1):
            if lc >= 1:
                child = _cb_profile(lc, kc, emax - 1)
            else:
                child = {
                    (e, 0, d): n
                    for (e, d), n in _pv_profile(0, kc, emax - 1).items()
                }
            for (ec, ncc, dc), nc in child.items():
                rest = _bss_profile(l - lc, k - kc, emax - 1 - ec)
                for (e, ncr, s, d), n in rest.items():
                    _acc(
                        out,
                        (e + 1 + ec, ncc + ncr, s + 1, d + dc),
                        n * nc,
                    )
    return out


def grading_profile(family, l, k):
    """Stratum counts by (codim, dimension-sum-over-vertices).

    Agrees with counting the materialized poset, but runs on families with
    millions of strata; the dimension tally is accumulated per vertex, so
    it independently cross-checks the dim/codim grading.
    """
    family = _norm_family(family)
    trees.check_caps(l, k)
    out = {}
    if family in ("K", "Ks"):
        top = dimension("K", l, k)
        for (e, d), n in _pv_profile(l, k, top).items():
            _acc(out, (e, d), n)
        return out
    top = dimension("Q", l, k)
    emax = top + max(l - 1, 0)
    for (e, ncol, d), n in _cb_profile(l, k, emax).items():
        codim = e - (ncol - 1)
        if 0 <= codim <= top:
            _acc(out, (codim, d), n)
    return out


def facet_kind(stratum):
    """Classify a codim-1 quilted stratum: 'lower' if an unquilted component
    bubbled off a quilted one, 'upper' if the seam split into several."""
    if stratum.family != "Q" or stratum.codim != 1:
        raise ShapeError("facet_kind applies to codim-1 Q strata")
    return "lower" if stratum.tree.root[1] else "upper"


# -- boundary faces with orientation signs -------------------------------


def _splits_of_vertex(v, colored_family):
    """All one-step refinements of a single vertex.

    Yields (new_vertex, local_sign, dmid, db) where new_vertex replaces v,
    local_sign is the facet sign of the split, dmid the total dimension of
    the factors the new child factor gets moved past, and db the moved
    factor's dimension (0 for seam splits, which insert factors in place).
    """
    i, col, slots = v
    s = len(slots)
    if not col:
        # plain split: a consecutive window becomes an uncolored child
        for w in range(s + 1):
            for a in range(s - w + 1):
                for ib in range(i + 1):
                    ia = i - ib
                    window = slots[a : a + w]
                    va_slots = s - w + 1
                    vb = vertex(ib, False, window)
                    va = vertex(
                        ia, False, slots[:a] + (vb,) + slots[a + w :]
                    )
                    if not (
                        trees._stable_vertex(va) and trees._stable_vertex(vb)
                    ):
                        continue
                    j = a + 1
                    local = sign_concat(va_slots, j, w)
                    dmid = sum(
                        _subtree_factor_dim(x)
                        for x in slots[:a]
                        if isinstance(x, tuple)
                    )
                    yield va, local, dmid, vertex_dim(vb)
        return
    # colored vertex: unquilted bubble (lower facet shape)
    for w in range(s + 1):
        for a in range(s - w + 1):
            for ib in range(i + 1):
                ia = i - ib
                window = slots[a : a + w]
                vb = vertex(ib, False, window)
                va = vertex(ia, True, slots[:a] + (vb,) + slots[a + w :])
                if not (
                    trees._stable_vertex(va) and trees._stable_vertex(vb)
                ):
                    continue
                j = a + 1
                local = sign_lower_quilt(s - w + 1, j, w)
                dmid = sum(
                    _subtree_factor_dim(x)
                    for x in slots[:a]
                    if isinstance(x, tuple)
                )
                yield va, local, dmid, vertex_dim(vb)
    # seam split (upper facet shape): the slots partition into q >= 2
    # consecutive blocks, each becoming a colored child of an uncolored hub
    for q in range(2, s + 1):
        for cuts in combinations(range(1, s), q - 1):
            bounds = (0,) + cuts + (s,)
            blocks = [
                slots[bounds[t] : bounds[t + 1]] for t in range(q)
            ]
            for marks in _distribute(i, q + 1):
                ia, child_marks = marks[0], marks[1:]
                children = [
                    vertex(child_marks[t], True, blocks[t]) for t in range(q)
                ]
                va = vertex(ia, False, tuple(children))
                if not trees._stable_vertex(va):
                    continue
                if not all(trees._stable_vertex(c) for c in children):
                    continue
                local = sign_upper_quilt([len(b) for b in blocks])
                # reorder correction: child factor t moves past the subtree
                # factors of the earlier blocks
                corr = 0
                acc = 0
                for t in range(q):
                    corr += vertex_dim(children[t]) * acc
                    acc += sum(
                        _subtree_factor_dim(x)
                        for x in blocks[t]
                        if isinstance(x, tuple)
                    )
                local *= -1 if corr % 2 else 1
                yield va, local, 0, 0


def _distribute(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _distribute(total - first, parts - 1):
            yield (first,) + rest


def boundary_faces(stratum):
    """Codim+1 faces of a stratum's closed cell with incidence signs.

    Returns a list of (Stratum, sign).  The sign composes the facet sign of
    the split vertex with the product-orientation prefix of the earlier
    factors and the reordering of the inserted factor into preorder.
    """
    fam = stratum.family
    colored_family = fam == "Q"
    tree = stratum.tree
    verts = tree.vertices()
    out = []
    prefix = 0
    for path, v in verts:
        for va, local, dmid, db in _splits_of_vertex(v, colored_family):
            sign = local
            if prefix % 2:
                sign = -sign
            if (dmid * db) % 2:
                sign = -sign
            new_tree = _replace_vertex(tree, path, va)
            cand = Stratum(fam, PlanarTree(new_tree), stratum.perm)
            if colored_family and not cand.tree.check_colored_axiom():
                continue
            out.append((cand, sign))
        prefix += vertex_dim(v)
    return out


def _replace_vertex(tree, path, new_v):
    def rec(v, depth):
        if depth == len(path):
            return new_v
        i, col, slots = v
        idx = path[depth]
        slots = (
            slots[:idx] + (rec(slots[idx], depth + 1),) + slots[idx + 1 :]
        )
        return vertex(i, col, slots)

    return rec(tree.root, 0)


def boundary_matrix(poset):
    """Signed incidence coefficients {(coarse_idx, fine_idx): int}."""
    coeffs = {}
    for a, s in enumerate(poset.strata):
        for face, sign in boundary_faces(s):
            b = poset.index(face)
            key = (a, b)
            coeffs[key] = coeffs.get(key, 0) + sign
    return {k: v for k, v in coeffs.items() if v}


def boundary_squares_to_zero(family, l, k):
    """Exact check that the signed cellular boundary composes to zero."""
    poset = face_poset(family, l, k)
    d = boundary_matrix(poset)
    by_src = {}
    for (a, b), c in d.items():
        by_src.setdefault(a, []).append((b, c))
    for a in range(len(poset.strata)):
        acc = {}
        for b, c1 in by_src.get(a, ()):
            for c, c2 in by_src.get(b, ()):
                acc[c] = acc.get(c, 0) + c1 * c2
        if any(vv != 0 for vv in acc.values()):
            return False
    return True


# -- corner products ------------------------------------------------------


class CornerProduct:
    """Factorization of a stratum into per-component moduli factors.

    ``factors`` lists (family, l, k) per vertex in preorder; ``grafts``
    lists (parent_factor, slot_j, child_factor) with 1-based slots.  Quilted
    codim-1 strata also carry ``kind`` ('lower'/'upper'); symmetric strata
    carry the induced tile orderings and the leaf shuffle.
    """

    def __init__(self, factors, grafts, kind=None, orderings=None, shuffle=None):
        self.factors = factors
        self.grafts = grafts
        self.kind = kind
        self.orderings = orderings
        self.shuffle = shuffle

    def __repr__(self):
        return "CornerProduct(factors=%r, grafts=%r, kind=%r)" % (
            self.factors,
            self.grafts,
            self.kind,
        )


def _graft_standard(l1, l2, j):
    """Permutation of 1..(l1+l2-1) realizing the grafted standard orderings:
    identity, since grafting standard orderings in planar order is ordered."""
    return tuple(range(1, l1 + l2))


def corner_decomposition(stratum):
    """Product decomposition of a positive-codimension stratum."""
    if stratum.codim < 1:
        raise ShapeError("corner_decomposition needs codim >= 1")
    tree = stratum.tree
    verts = tree.vertices()
    pmap = {path: idx for idx, (path, _) in enumerate(verts)}
    factors = []
    for _, v in verts:
        i, col, slots = v
        fam = "Q" if col else ("Ks" if stratum.family == "Ks" else "K")
        factors.append((fam, len(slots), i))
    grafts = []
    for path, v in verts:
        for idx, item in enumerate(v[2]):
            if isinstance(item, tuple):
                grafts.append((pmap[path], idx + 1, pmap[path + (idx,)]))
    kind = None
    if stratum.family == "Q" and stratum.codim == 1:
        kind = facet_kind(stratum)
    if stratum.family != "Ks":
        return CornerProduct(factors, grafts, kind=kind)
    # symmetric family: no product structure over ghost components
    ghosts = stratum.ghost_paths()
    if ghosts:
        raise GhostCornerError(
            "stratum has ghost components at %r" % (ghosts,)
        )
    if stratum.perm is None:
        raise ShapeError("symmetric stratum needs a tile permutation")
    orderings = [
        _induced_ordering(tree, path, stratum.perm) for path, _ in verts
    ]
    shuffle = _corner_shuffle(tree, stratum.perm)
    return CornerProduct(
        factors, grafts, orderings=orderings, shuffle=shuffle
    )


def _slot_leaf_keys(tree, path, perm):
    """Per-slot key of one vertex: the tile-ordering value of a leaf slot,
    or the minimum value over the subtree of a child slot."""
    v = tree.vertex_at(path)
    nums = iter(tree.leaf_numbers_under(path))
    keys = []
    for idx, item in enumerate(v[2]):
        if item == LEAF:
            keys.append(perm[next(nums) - 1])
        else:
            sub = tree.leaf_numbers_under(path + (idx,))
            keys.append(min(perm[a - 1] for a in sub))
            for _ in sub:
                next(nums)
    return keys


def _induced_ordering(tree, path, perm):
    """Rank-normalized ordering of one component's slots (minimum rule)."""
    keys = _slot_leaf_keys(tree, path, perm)
    ranked = sorted(range(len(keys)), key=lambda t: keys[t])
    order = [0] * len(keys)
    for rank, t in enumerate(ranked, start=1):
        order[t] = rank
    return tuple(order)


def _corner_shuffle(tree, perm):
    """Leaf shuffle comparing the tile ordering with the one obtained by
    grafting the induced component orderings in planar order."""
    l = tree.num_leaves
    grafted = _grafted_ordering(tree, perm)
    inv = [0] * l
    for a in range(1, l + 1):
        inv[grafted[a - 1] - 1] = a
    return tuple(perm[inv[a - 1] - 1] for a in range(1, l + 1))


def _grafted_ordering(tree, perm):
    """Global ordering induced by composing the per-component orderings
    down the tree, the minimum rule deciding each component's slot order."""
    def rec(path):
        v = tree.vertex_at(path)
        keys = _slot_leaf_keys(tree, path, perm)
        slot_rank = _induced_ordering(tree, path, perm)
        # per-slot lists of leaf numbers in planar order
        groups = []
        nums = iter(tree.leaf_numbers_under(path))
        for idx, item in enumerate(v[2]):
            if item == LEAF:
                groups.append([next(nums)])
            else:
                sub = rec(path + (idx,))
                groups.append(sub)
                for _ in sub:
                    next(nums)
        ordered = [None] * len(groups)
        for t, rank in enumerate(slot_rank):
            ordered[rank - 1] = groups[t]
        out = []
        for g in ordered:
            out.extend(g)
        return out

    seq = rec(())
    l = tree.num_leaves
    order = [0] * l
    for rank, leaf in enumerate(seq, start=1):
        order[leaf - 1] = rank
    return tuple(order)


# -- symmetric tile complex ----------------------------------------------


class TileComplex:
    def __init__(self, l, k, perms, poset, identifications):
        self.l = l
        self.k = k
        self.perms = perms
        self.poset = poset
        self.identifications = identifications

    @property
    def n_tiles(self):
        return len(self.perms)


def _transposition_moves(tree):
    """Transposition strata: two-slot ghost components and the move data.

    Yields (type_tag, ghost_path, new_tree, leaf_renumbering) where the
    renumbering nu sends old leaf numbers to their planar position after
    swapping the ghost's two slots.
    """
    for path, v in tree.vertices():
        i, col, slots = v
        if i != 0 or len(slots) != 2 or not path:
            continue
        a, b = slots
        if a == LEAF and b == LEAF:
            tag = "I"
        elif a == LEAF or b == LEAF:
            tag = "II"
        else:
            tag = "III"
        swapped = vertex(0, col, (b, a))
        new_tree = PlanarTree(_replace_vertex(tree, path, swapped))
        lo = tree.leaf_numbers_under(path)
        if not lo:
            continue
        first = lo[0]
        na = 1 if a == LEAF else trees._count_leaves(a)
        nb = 1 if b == LEAF else trees._count_leaves(b)
        nu = {}
        n_total = tree.num_leaves
        for x in range(1, n_total + 1):
            nu[x] = x
        for off in range(na):
            nu[first + off] = first + nb + off
        for off in range(nb):
            nu[first + na + off] = first + off
        yield tag, path, new_tree, nu


def tile_complex(l, k):
    """All tiles of the symmetric family with their identification pairs."""
    trees.check_caps(l, k)
    poset = face_poset("Ks", l, k)
    perms = list(permutations(range(1, l + 1))) if l >= 1 else [()]
    tidx = {p: n for n, p in enumerate(perms)}
    sidx = {s.tree: n for n, s in enumerate(poset.strata)}
    pairs = set()
    records = []
    for s_i, s in enumerate(poset.strata):
        for tag, path, new_tree, nu in _transposition_moves(s.tree):
            if new_tree not in sidx:
                continue
            t_i = sidx[new_tree]
            for p_i, p in enumerate(perms):
                # marking labels follow the leaves: p'(nu(a)) = p(a)
                q = [0] * l
                for a in range(1, l + 1):
                    q[nu[a] - 1] = p[a - 1]
                q = tuple(q)
                key = frozenset(((p_i, s_i), (tidx[q], t_i)))
                if key in pairs:
                    continue
                pairs.add(key)
                records.append((tag, (p_i, s_i), (tidx[q], t_i)))
    return TileComplex(l, k, perms, poset, records)


def orientation_consistency(tc):
    """True iff the per-tile signs (-1)^sg(p) make every type-I
    identification orientation-reversing across the glued facet."""
    for tag, (p_i, _), (q_i, _) in tc.identifications:
        if tag != "I":
            continue
        if perm_parity(tc.perms[p_i]) == perm_parity(tc.perms[q_i]):
            return False
    return True


class LocalGroupModel:
    """Product of Z/2 factors acting on the normal coordinates of a
    symmetric stratum: one generator per ghost component, flipping the
    coordinates of its incident interior edges."""

    def __init__(self, codim, generators):
        self.codim = codim
        self.generators = generators

    @property
    def order(self):
        return 2 ** len(self.generators)


def local_group_model(stratum):
    tree = stratum.tree
    edges = tree.edges()
    eidx = {e: n for n, e in enumerate(edges)}
    gens = []
    for path, v in tree.vertices():
        if v[0] != 0:
            continue
        flips = set()
        if path:
            flips.add(eidx[path])
        for idx, item in enumerate(v[2]):
            if isinstance(item, tuple):
                flips.add(eidx[path + (idx,)])
        gens.append((path, frozenset(flips)))
    return LocalGroupModel(len(edges), gens)


# -- collars and cluster types --------------------------------------------


class ClusterType:
    """A stratum plus a state per interior edge: 'node', 'line' (with a
    label in (0,1)), or 'broken'.  Complex (interior) nodes are tracked as
    a count."""

    def __init__(self, stratum, edge_states, n_complex_nodes=0):
        edges = set(stratum.tree.edges())
        if set(edge_states) != edges:
            raise ShapeError("edge states must cover the interior edges")
        self.stratum = stratum
        self.edge_states = dict(edge_states)
        self.n_complex_nodes = n_complex_nodes

    def count(self, state):
        return sum(1 for s in self.edge_states.values() if s == state)

    @property
    def n_breakings(self):
        return self.count("broken")

    @property
    def n_real_nodes(self):
        return self.count("node")


class CollarCell:
    """Closure of one stratum crossed with [0,1] labels on its edges."""

    def __init__(self, stratum):
        self.stratum = stratum
        self.labeled_edges = tuple(stratum.tree.edges())


def collar_cells(l, k):
    """One cell per stratum; cells glue along covering relations, where the
    finer cell's labeling extends the coarser one by 1-labels."""
    if dimension("K", l, k) < 1:
        raise StabilityError("collar needs positive dimension")
    poset = face_poset("K", l, k)
    cells = [CollarCell(s) for s in poset.strata]
    gluings = list(poset.coverings)
    return cells, gluings


# -- export ----------------------------------------------------------------


def export_poset(poset, fmt="json"):
    if fmt == "json":
        payload = {
            "schema": "clustercx.face_poset/1",
            "family": poset.family,
            "l": poset.l,
            "k": poset.k,
            "strata": [
                {
                    "id": i,
                    "dim": s.dim,
                    "codim": s.codim,
                    "tree": trees.to_obj(s.tree),
                }
                for i, s in enumerate(poset.strata)
            ],
            "coverings": [list(c) for c in poset.coverings],
        }
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "dot":
        lines = ["digraph faces {"]
        for i, s in enumerate(poset.strata):
            lines.append(
                '  s%d [label="dim %d / codim %d"];' % (i, s.dim, s.codim)
            )
        for a, b in poset.coverings:
            lines.append("  s%d -> s%d;" % (a, b))
        lines.append("}")
        return "\n".join(lines)
    raise ShapeError("unknown export format %r" % (fmt,))
