"""Fredholm-index and cokernel bookkeeping over cluster types.

Everything here is exact integer arithmetic on eigenvalue-sign counts:
endpoint conditions are stored as co-index counts mu+ (the number of
positive Hessian directions, 0 <= mu+ <= n), boundary conditions as
Maslov integers, and reduction surgeries as cut-and-paste operations on
planar trees plus the counters (removed marks, interior incidences,
complex nodes) the index-drop inequalities consume.
"""

from .errors import (
    DegenerateError,
    MonotoneError,
    ShapeError,
    SurgeryError,
)
from .trees import LEAF, PlanarTree, vertex


class EndpointCondition:
    """Co-index counts at the root and each leaf of a cluster type."""

    def __init__(self, mu_root, mu_leaves, n=2):
        self.mu_root = int(mu_root)
        self.mu_leaves = tuple(int(m) for m in mu_leaves)
        self.n = n
        for m in (self.mu_root,) + self.mu_leaves:
            if not 0 <= m <= n:
                raise ShapeError("co-index %d outside 0..%d" % (m, n))


class BoundaryConditionIndex:
    """Total Maslov index with its per-disk contributions."""

    def __init__(self, per_disk, NL=2, monotone=False):
        self.per_disk = tuple(int(m) for m in per_disk)
        self.total = sum(self.per_disk)
        self.NL = NL
        if monotone:
            for m in self.per_disk:
                if m < 0 or m % NL:
                    raise MonotoneError(
                        "disk contribution %d not in %d*Z>=0" % (m, NL)
                    )


def _as_tree(ct):
    if isinstance(ct, PlanarTree):
        return ct
    return ct.stratum.tree


def index_cr(ct, ec, muF, n=2, interior_incidences=0, complex_nodes=None):
    """Index of the linearized operator over a cluster type:
    mu+(root) - sum of leaf mu+ + Maslov, minus n per interior incidence
    point and per complex node."""
    tree = _as_tree(ct)
    l = tree.num_leaves
    if len(ec.mu_leaves) != l:
        raise ShapeError(
            "endpoint condition has %d leaves, type has %d"
            % (len(ec.mu_leaves), l)
        )
    if complex_nodes is None:
        complex_nodes = getattr(ct, "n_complex_nodes", 0)
    total = muF.total if isinstance(muF, BoundaryConditionIndex) else int(muF)
    return (
        ec.mu_root
        - sum(ec.mu_leaves)
        + total
        - n * interior_incidences
        - n * complex_nodes
    )


def coker_dim(ct, l, k):
    """Cokernel dimension of the tangent-space inclusion at a cluster
    type: ambient dimension l - 2 + 2k minus one per breaking and real
    node and two per complex node.  The two unstable smooth cases are an
    isomorphism ((0,0)) and a one-dimensional kernel ((1,0))."""
    if (l, k) == (0, 0) or (l, k) == (1, 0):
        return 0
    if l + 1 + 2 * k < 3:
        raise DegenerateError("unstable parameters (%d, %d)" % (l, k))
    value = (
        l
        - 2
        + 2 * k
        - ct.n_breakings
        - ct.n_real_nodes
        - 2 * ct.n_complex_nodes
    )
    if value < 0:
        raise DegenerateError(
            "overdegenerate type: %d breakings/%d real/%d complex on "
            "ambient dimension %d"
            % (ct.n_breakings, ct.n_real_nodes, ct.n_complex_nodes, l - 2 + 2 * k)
        )
    return value


def kernel_dim(l, k):
    """Kernel of the same inclusion: one translation direction survives
    exactly in the (1, 0) case."""
    return 1 if (l, k) == (1, 0) else 0


def trajectory_index(mu_minus, mu_plus, muF):
    """mu(x-) - mu(x+) + mu(F)."""
    total = muF.total if isinstance(muF, BoundaryConditionIndex) else int(muF)
    return int(mu_minus) - int(mu_plus) + total


def trajectory_energy(muF, tau, NL):
    """Energy exponent d with omega = tau * mu(F) = d * tau * N_L."""
    total = muF.total if isinstance(muF, BoundaryConditionIndex) else int(muF)
    if total % NL:
        raise MonotoneError(
            "Maslov %d not divisible by N_L = %d" % (total, NL)
        )
    return total // NL


# -- reduction surgeries -----------------------------------------------------


class ClusterSurgeryRecord:
    """Before/after trees plus the counters the audit inequalities use."""

    def __init__(
        self,
        before,
        after,
        tag,
        removed_marks=0,
        interior_incidences=0,
        complex_nodes=0,
        maslov_before=None,
        maslov_after=None,
    ):
        self.before = before
        self.after = after
        self.tag = tag
        self.removed_marks = removed_marks
        self.interior_incidences = interior_incidences
        self.complex_nodes = complex_nodes
        self.maslov_before = maslov_before
        self.maslov_after = maslov_after

    @property
    def trivial(self):
        return (
            self.after.root == self.before.root
            and self.removed_marks == 0
            and self.complex_nodes == 0
            and self.interior_incidences == 0
        )


def _vertex_at(tree, path):
    try:
        return tree.vertex_at(tuple(path))
    except Exception:
        raise SurgeryError("no vertex at path %r" % (path,))


def _marks_total(tree):
    return tree.num_marks


def _prune_leafless(v):
    i, col, slots = v
    kept = []
    for s in slots:
        if s == LEAF:
            kept.append(s)
            continue
        sub = _prune_leafless(s)
        if sub is not None:
            kept.append(sub)
    if not kept:
        return None
    return vertex(i, col, tuple(kept))


def _replace_at(root, path, new_v):
    if not path:
        return new_v
    i, col, slots = root
    idx = path[0]
    return vertex(
        i,
        col,
        slots[:idx] + (_replace_at(slots[idx], path[1:], new_v),) + slots[idx + 1 :],
    )


def _drop_child(root, path):
    """Remove the subtree at path, returning the new root."""
    parent = path[:-1]
    idx = path[-1]

    def rec(v, depth):
        i, col, slots = v
        if depth == len(parent):
            return vertex(i, col, slots[:idx] + slots[idx + 1 :])
        j = parent[depth]
        return vertex(
            i, col, slots[:j] + (rec(slots[j], depth + 1),) + slots[j + 1 :]
        )

    return rec(root, 0)


def reduce(ct, spec):
    """Apply one elementary (or generalized) reduction.

    spec is a dict with a ``type`` tag:
      I     -- {"type": "I", "disk": path, "d": int}: the disk's interior
               marks are divided by the covering degree d (d | k(D)).
      IIa   -- {"disk": D2 path, "dest": D1 path, "at": slot}: remove the
               higher disk D2 together with its root line and reattach
               the lines above it to D1 at the given slot position.
      IIb   -- {"disk": D2 path, "dest": child slot of D2, "at": slot}:
               remove the lower disk D2; its direct child D1 takes its
               place and inherits D2's other branches at slot ``at``.
      III   -- {}: keep only the union of root-to-leaf cores, dropping
               every leafless side branch.
      gen-I / gen-II / gen-III -- bookkeeping-only records carrying
               {"removed_marks", "interior_incidences", "complex_nodes"}.
    """
    before = _as_tree(ct)
    tag = spec.get("type")
    if tag == "I":
        path = tuple(spec.get("disk", ()))
        d = int(spec.get("d", 1))
        i, col, slots = _vertex_at(before, path)
        if d < 1 or (d > 1 and (i == 0 or i % d)):
            raise SurgeryError(
                "type I needs d | k(D); got d=%d, k(D)=%d" % (d, i)
            )
        new_v = vertex(i // d, col, slots)
        after = PlanarTree(_replace_at(before.root, path, new_v))
        return ClusterSurgeryRecord(
            before, after, "I(%d)" % d, removed_marks=i - i // d
        )
    if tag == "IIa":
        path = tuple(spec["disk"])
        dest = tuple(spec["dest"])
        at = int(spec.get("at", 0))
        if not path:
            raise SurgeryError("type IIa cannot remove the root disk")
        if dest == path or dest[: len(path)] == path:
            raise SurgeryError("destination lies inside the removed disk")
        i, col, slots = _vertex_at(before, path)
        root = _drop_child(before.root, path)
        # paths before the removed slot are unchanged; the destination
        # must not pass through the removed branch
        parent, idx = path[:-1], path[-1]
        if dest[: len(parent)] == parent and len(dest) > len(parent):
            step = dest[len(parent)]
            if step > idx:
                dest = dest[: len(parent)] + (step - 1,) + dest[len(parent) + 1 :]
        di, dcol, dslots = PlanarTree(root).vertex_at(dest)
        if not 0 <= at <= len(dslots):
            raise SurgeryError("slot position %d out of range" % at)
        new_dest = vertex(di, dcol, dslots[:at] + slots + dslots[at:])
        after = PlanarTree(_replace_at(root, dest, new_dest))
        return ClusterSurgeryRecord(
            before, after, "IIa", removed_marks=i
        )
    if tag == "IIb":
        path = tuple(spec["disk"])
        child = int(spec["dest"])
        at = int(spec.get("at", 0))
        i, col, slots = _vertex_at(before, path)
        if not 0 <= child < len(slots) or slots[child] == LEAF:
            raise SurgeryError("type IIb needs a disk child to promote")
        ci, ccol, cslots = slots[child]
        rest = slots[:child] + slots[child + 1 :]
        if not 0 <= at <= len(cslots):
            raise SurgeryError("slot position %d out of range" % at)
        new_v = vertex(ci, ccol, cslots[:at] + rest + cslots[at:])
        after = PlanarTree(_replace_at(before.root, path, new_v))
        return ClusterSurgeryRecord(
            before, after, "IIb", removed_marks=i
        )
    if tag == "III":
        pruned = _prune_leafless(before.root)
        if pruned is None:
            raise SurgeryError("type III needs at least one leaf")
        after = PlanarTree(pruned)
        return ClusterSurgeryRecord(
            before,
            after,
            "III",
            removed_marks=_marks_total(before) - after.num_marks,
        )
    if tag in ("gen-I", "gen-II", "gen-III"):
        return ClusterSurgeryRecord(
            before,
            before,
            tag,
            removed_marks=int(spec.get("removed_marks", 0)),
            interior_incidences=int(spec.get("interior_incidences", 0)),
            complex_nodes=int(spec.get("complex_nodes", 0)),
        )
    raise SurgeryError("unknown surgery type %r" % (tag,))


def reduction_index_audit(rec, assumed_index, n=3, NL=2):
    """Walk the index-drop argument for one reduction record.

    Inputs: the assumed trajectory index (must satisfy the a-priori bound
    <= -(l-2)+1), the target dimension n and minimal Maslov N_L >= 2.
    Output: the chain of inequalities with the final quotient-index bound
    2k(r(C)) - 1 (minus (n-1)N when n <= 2) and whether the forced
    cokernel contradiction applies.
    """
    l = rec.before.num_leaves
    k_before = rec.before.num_marks
    k_after = rec.after.num_marks
    if rec.tag.startswith("gen"):
        k_after = k_before - rec.removed_marks
    apriori = -(l - 2) + 1
    applicable = assumed_index <= apriori and not rec.trivial and NL >= 2
    # monotone drop: a nontrivial reduction removes at least one disk
    # contribution, each a positive multiple of N_L >= 2
    index_drop = 2 if applicable else 0
    index_after = assumed_index - index_drop
    # Ind over the reduced source: -(l - 2 + 2 k(r(C)))
    source_index = -(l - 2 + 2 * k_after)
    quotient_bound = index_after - source_index
    penalty = (n - 1) * rec.interior_incidences if n <= 2 else 0
    final_bound = 2 * k_after - 1 - penalty
    kernel_lower = 2 * k_after
    return {
        "applicable": applicable,
        "l": l,
        "k_before": k_before,
        "k_after": k_after,
        "assumed_index": assumed_index,
        "apriori_bound": apriori,
        "index_drop": index_drop,
        "quotient_index_bound": min(quotient_bound, final_bound)
        if applicable
        else None,
        "final_bound": final_bound if applicable else None,
        "kernel_lower_bound": kernel_lower,
        "forces_cokernel": applicable and final_bound < kernel_lower,
    }


# -- end labelings -----------------------------------------------------------


def enumerate_end_labelings(l, c, family):
    """All end labelings of length l over colors 0..c (or 1..c+1).

    Chained-pair labelings are stored as the underlying chain
    j_0 <= j_1 <= ... <= j_l <= c, with the constant (trivial) chains
    identified to the single all-zero representative.  Pointed labelings
    are the maps {1..l} -> {1..c+1} whose values below c+1 are strictly
    increasing.
    """
    if c < 0:
        raise ShapeError("c must be nonnegative")
    if family in ("otimes", "x"):
        out = set()

        def rec(chain):
            if len(chain) == l + 1:
                if len(set(chain)) == 1:
                    out.add((0,) * (l + 1))
                else:
                    out.add(tuple(chain))
                return
            lo = chain[-1] if chain else 0
            for j in range(lo, c + 1):
                rec(chain + [j])

        rec([])
        return out
    if family in ("bullet", "."):
        out = set()

        def rec(vals, last_small):
            if len(vals) == l:
                out.add(tuple(vals))
                return
            rec(vals + [c + 1], last_small)
            for j in range(last_small + 1, c + 1):
                rec(vals + [j], j)

        rec([], 0)
        return out
    raise ShapeError("family must be otimes or bullet")


def chain_pairs(chain):
    """The pair form of a chained labeling: position i carries
    (j_{i-1}, j_i) and position 0 carries (j_0, j_l)."""
    l = len(chain) - 1
    pairs = {0: (chain[0], chain[l])}
    for i in range(1, l + 1):
        pairs[i] = (chain[i - 1], chain[i])
    return pairs


def induced_component_labeling(lab, intervals, family, c=None):
    """Labeling induced on an irreducible component.

    ``intervals`` lists, one per component leaf in planar order, the
    range (lo, hi) of input positions lying above that leaf (inclusive);
    an empty attachment between positions p and p+1 is written (p+1, p).
    Chained labelings restrict to the chain values just outside each
    range; pointed labelings take the label of the lowest position above
    (or c+1 for a leafless branch).
    """
    prev_hi = 0
    for lo, hi in intervals:
        if lo - 1 < prev_hi or (hi >= lo and lo < 1):
            raise ShapeError("intervals must be increasing and disjoint")
        prev_hi = max(prev_hi, hi, lo - 1)
    if family in ("otimes", "x"):
        chain = tuple(lab)
        new = [chain[intervals[0][0] - 1] if intervals else chain[0]]
        for lo, hi in intervals:
            if hi > len(chain) - 1:
                raise ShapeError("interval beyond the labeling length")
            new.append(chain[hi] if hi >= lo else chain[lo - 1])
        if len(set(new)) == 1:
            return (0,) * len(new)
        return tuple(new)
    if family in ("bullet", "."):
        if c is None:
            raise ShapeError("pointed induction needs c")
        vals = tuple(lab)
        out = []
        for lo, hi in intervals:
            if hi < lo:
                out.append(c + 1)
                continue
            if hi > len(vals):
                raise ShapeError("interval beyond the labeling length")
            out.append(vals[lo - 1])
        return tuple(out)
    raise ShapeError("family must be otimes or bullet")
