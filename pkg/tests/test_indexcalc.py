"""Index formulas, reduction surgeries, audits, and end labelings."""

import random
from math import comb

import pytest

from clustercx import indexcalc as I, strata as S
from clustercx.errors import MonotoneError, ShapeError, SurgeryError
from clustercx.trees import LEAF, PlanarTree, vertex


class TestIndexCr:
    def test_trivial_values(self):
        t = PlanarTree(vertex(0, False, (LEAF, LEAF)))
        assert I.index_cr(t, I.EndpointCondition(0, [0, 0]), 0) == 0
        assert I.index_cr(t, I.EndpointCondition(2, [0, 0]), 0) == 2

    def test_endpoint_mismatch(self):
        t = PlanarTree(vertex(0, False, (LEAF, LEAF)))
        with pytest.raises(ShapeError):
            I.index_cr(t, I.EndpointCondition(0, [0, 0, 0]), 0)

    def test_additivity_random(self):
        rng = random.Random(3)
        for _ in range(500):
            n = rng.randint(1, 4)
            l1, l2 = rng.randint(1, 5), rng.randint(1, 5)
            mus1 = [rng.randint(0, n) for _ in range(l1 + 1)]
            mus2 = [rng.randint(0, n) for _ in range(l2 + 1)]
            f1, f2 = rng.randint(0, 8), rng.randint(0, 8)
            j = rng.randint(1, l1)
            mus2[0] = mus1[j]
            i1 = mus1[0] - sum(mus1[1:]) + f1
            i2 = mus2[0] - sum(mus2[1:]) + f2
            glued = mus1[1:j] + mus2[1:] + mus1[j + 1 :]
            assert mus1[0] - sum(glued) + f1 + f2 == i1 + i2


class TestCokerDim:
    def test_examples(self):
        top = [
            s for s in S.face_poset("K", 2, 1).strata if s.codim == 0
        ][0]
        assert I.coker_dim(S.ClusterType(top, {}), 2, 1) == 2
        s1 = [s for s in S.face_poset("K", 3, 1).strata if s.codim == 1][0]
        e = list(s1.tree.edges())[0]
        assert I.coker_dim(S.ClusterType(s1, {e: "broken"}), 3, 1) == 2
        assert I.coker_dim(S.ClusterType(s1, {e: "node"}), 3, 1) == 2
        assert I.coker_dim(S.ClusterType(top, {}, n_complex_nodes=1), 2, 1) == 0

    def test_unstable_special_cases(self):
        top = [
            s for s in S.face_poset("K", 2, 1).strata if s.codim == 0
        ][0]
        ct = S.ClusterType(top, {})
        assert I.coker_dim(ct, 1, 0) == 0
        assert I.coker_dim(ct, 0, 0) == 0
        assert I.kernel_dim(1, 0) == 1
        assert I.kernel_dim(3, 0) == 0


class TestTrajectory:
    def test_index(self):
        assert I.trajectory_index(5, 5, 0) == 0
        assert I.trajectory_index(3, 1, 0) == 2 - 0  # rigid m_2

    def test_energy(self):
        assert I.trajectory_energy(4, 1, 2) == 2
        with pytest.raises(MonotoneError):
            I.trajectory_energy(3, 1, 2)
        muF = I.BoundaryConditionIndex([2, 4], NL=2, monotone=True)
        assert I.trajectory_energy(muF, 1, 2) == 3
        with pytest.raises(MonotoneError):
            I.BoundaryConditionIndex([3], NL=2, monotone=True)


class TestSurgeries:
    def test_type_I(self):
        t = PlanarTree(vertex(4, False, (LEAF, LEAF)))
        rec = I.reduce(t, {"type": "I", "disk": (), "d": 1})
        assert rec.trivial
        rec = I.reduce(t, {"type": "I", "disk": (), "d": 2})
        assert rec.after.root == vertex(2, False, (LEAF, LEAF))
        assert rec.removed_marks == 2
        with pytest.raises(SurgeryError):
            I.reduce(t, {"type": "I", "disk": (), "d": 3})

    def test_type_III(self):
        t = PlanarTree(vertex(0, False, (LEAF, vertex(1, False, ()), LEAF)))
        rec = I.reduce(t, {"type": "III"})
        assert rec.after.root == vertex(0, False, (LEAF, LEAF))
        assert rec.after.num_leaves == t.num_leaves
        rec2 = I.reduce(rec.after, {"type": "III"})
        assert rec2.after.root == rec.after.root  # idempotent

    def test_type_II(self):
        t = PlanarTree(vertex(0, False, (LEAF, vertex(1, False, (LEAF, LEAF)))))
        rec = I.reduce(t, {"type": "IIa", "disk": (1,), "dest": (), "at": 1})
        assert rec.after.root == vertex(0, False, (LEAF, LEAF, LEAF))
        t = PlanarTree(vertex(2, False, (LEAF, vertex(0, False, (LEAF, LEAF)))))
        rec = I.reduce(t, {"type": "IIb", "disk": (), "dest": 1, "at": 0})
        assert rec.after.root == vertex(0, False, (LEAF, LEAF, LEAF))

    def test_generalized_bookkeeping(self):
        t = PlanarTree(vertex(2, False, (LEAF, LEAF)))
        rec = I.reduce(
            t, {"type": "gen-II", "interior_incidences": 1, "removed_marks": 1}
        )
        assert rec.interior_incidences == 1
        assert rec.after.root == t.root


class TestAudit:
    def test_noop_not_triggered(self):
        t = PlanarTree(vertex(4, False, (LEAF, LEAF)))
        rec = I.reduce(t, {"type": "I", "disk": (), "d": 1})
        assert not I.reduction_index_audit(rec, 1, n=3)["applicable"]

    def test_maslov_drop(self):
        t = PlanarTree(vertex(4, False, (LEAF, LEAF)))
        rec = I.reduce(t, {"type": "I", "disk": (), "d": 2})
        rep = I.reduction_index_audit(rec, 1, n=3)
        assert rep["applicable"] and rep["index_drop"] >= 2
        assert rep["final_bound"] == 2 * 2 - 1
        assert rep["forces_cokernel"]

    def test_n_le_2_penalty(self):
        t = PlanarTree(vertex(4, False, (LEAF, LEAF)))
        rec = I.reduce(
            t, {"type": "gen-II", "interior_incidences": 1, "removed_marks": 2}
        )
        rep = I.reduction_index_audit(rec, 1, n=2)
        assert rep["final_bound"] == 2 * 2 - 1 - 1
        assert rep["forces_cokernel"]


class TestEndLabelings:
    def test_trivial_classes(self):
        assert I.enumerate_end_labelings(3, 0, "otimes") == {(0, 0, 0, 0)}
        assert I.enumerate_end_labelings(3, 0, "bullet") == {(1, 1, 1)}

    def test_counts(self):
        for l in range(1, 5):
            for c in range(0, 4):
                got = len(I.enumerate_end_labelings(l, c, "otimes"))
                assert got == comb(l + 1 + c, c) - (c + 1) + 1
                gotb = len(I.enumerate_end_labelings(l, c, "bullet"))
                want = sum(
                    comb(l, s) * comb(c, s) for s in range(0, min(l, c) + 1)
                )
                assert gotb == want

    def test_brute_force_l1_c1(self):
        brute = set()
        for j0 in range(2):
            for j1 in range(j0, 2):
                brute.add((0, 0) if j0 == j1 else (j0, j1))
        assert I.enumerate_end_labelings(1, 1, "otimes") == brute


def _random_partition(rng, l):
    cuts = sorted(rng.sample(range(1, l), rng.randint(0, l - 2))) if l > 2 else []
    bounds = [1] + [x + 1 for x in cuts] + [l + 1]
    return [(bounds[i], bounds[i + 1] - 1) for i in range(len(bounds) - 1)]


def _merge_groups(rng, outer):
    groups, i = [], 0
    while i < len(outer):
        if i + 1 < len(outer) and rng.random() < 0.5:
            groups.append((i, i + 1))
            i += 2
        else:
            groups.append((i, i))
            i += 1
    return groups


class TestInducedLabelings:
    def test_chain_example(self):
        chain = (0, 1, 1, 2, 3)
        assert I.induced_component_labeling(chain, [(1, 2), (3, 4)], "otimes") == (
            0,
            1,
            3,
        )
        assert I.induced_component_labeling(
            chain, [(1, 2), (3, 2), (3, 4)], "otimes"
        ) == (0, 1, 1, 3)

    @pytest.mark.parametrize("family", ["otimes", "bullet"])
    def test_coherence(self, family):
        rng = random.Random(5)
        for _ in range(150):
            c = rng.randint(0, 3)
            l = rng.randint(2, 6)
            if family == "otimes":
                lab = tuple(sorted(rng.choices(range(c + 1), k=l + 1)))
            else:
                lab = rng.choice(
                    sorted(I.enumerate_end_labelings(l, c, "bullet"))
                )
            outer = _random_partition(rng, l)
            mid = I.induced_component_labeling(lab, outer, family, c=c)
            groups = _merge_groups(rng, outer)
            inner = [(a + 1, b + 1) for a, b in groups]
            two_step = I.induced_component_labeling(mid, inner, family, c=c)
            direct = [(outer[a][0], outer[b][1]) for a, b in groups]
            one_step = I.induced_component_labeling(lab, direct, family, c=c)
            assert two_step == one_step
