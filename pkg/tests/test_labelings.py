"""Edge labelings, balance, collar smoothing maps, and charts."""

import itertools
import random
from fractions import Fraction

import pytest

from clustercx import labelings as L, trees
from clustercx.errors import BalanceError, RangeError


def colored_pool():
    out = []
    for e in range(0, 7):
        out += trees.enumerate_colored_types(3, 0, e)
        out += trees.enumerate_colored_types(4, 0, e)
    return [t for t in out if t.n_edges >= 1]


class TestBalance:
    def test_random_balanced_is_balanced(self):
        rng = random.Random(0)
        for t in colored_pool()[:30]:
            assert L.is_balanced(L.random_balanced(t, rng))

    def test_restriction_preserves_balance(self):
        rng = random.Random(1)
        checked = 0
        for t in colored_pool()[:40]:
            lab = L.random_balanced(t, rng)
            edges = t.edges()
            for r in range(1, len(edges)):
                for S in itertools.combinations(edges, r):
                    c, _ = trees.contract_set(t, S)
                    if not c.check_colored_axiom() or c.n_colored == 0:
                        continue
                    res = L.restrict_balanced(lab, c, t, S)
                    assert L.is_balanced(res)
                    checked += 1
        assert checked > 30

    def test_restrict_plain_keeps_values(self):
        t = colored_pool()[4]
        lab = L.EdgeLabeling(t, {e: Fraction(1, 2) for e in t.edges()})
        e0 = t.edges()[0]
        c, emap = trees.contract_set(t, {e0})
        res = L.restrict_plain(lab, c, t, {e0})
        for old, new in emap.items():
            assert res[new] == lab[old]


class TestChi:
    def test_unquilted_zero_labeling(self):
        t = trees.enumerate_types(3, 0, 1)[0]
        lab = L.EdgeLabeling(t, {e: Fraction(0) for e in t.edges()})
        out = L.chi_unquilted(lab, Fraction(1, 2))
        assert all(out[e] == Fraction(1, 2) for e in t.edges())
        with pytest.raises(RangeError):
            L.chi_unquilted(lab, Fraction(2))

    def test_quilted_fixed_point(self):
        for t in colored_pool()[:25]:
            lab0 = L.EdgeLabeling(t, {e: Fraction(0) for e in t.edges()})
            exp = L.exponents(t)
            chi0 = L.chi_quilted(lab0, Fraction(1, 2))
            for e in t.edges():
                assert chi0[e] == L.EpsFrac.eps_power(exp.m[e])

    def test_quilted_output_balanced(self):
        rng = random.Random(2)
        for t in colored_pool()[:25]:
            if t.root[1]:
                continue
            lab = L.random_balanced(t, rng)
            chi = L.chi_quilted(lab, Fraction(1, 2))
            y = L.color_products(lab)[0]
            want = L.EpsFrac.rational(1 + y) * L.EpsFrac.eps_power(1)
            assert all(p == want for p in L.color_products_sym(chi))

    def test_quilted_rejects_unbalanced(self):
        pool = [t for t in colored_pool() if not t.root[1] and t.n_edges >= 2]
        t = pool[0]
        labels = {e: Fraction(i + 2) for i, e in enumerate(t.edges())}
        lab = L.EdgeLabeling(t, labels)
        if not L.is_balanced(lab):
            with pytest.raises(BalanceError):
                L.chi_quilted(lab, Fraction(1, 2))

    def test_injectivity_sample(self):
        rng = random.Random(3)
        t = colored_pool()[5]
        seen = []
        for _ in range(25):
            lab = L.random_balanced(t, rng)
            chi = L.chi_quilted(lab, Fraction(1, 2))
            for prev_lab, prev_chi in seen:
                same_in = prev_lab == lab
                same_out = all(prev_chi[e] == chi[e] for e in t.edges())
                assert same_in == same_out
            seen.append((lab, chi))


def _random_disk(rng, t, seam=None):
    seq = L._marking_sequence(t)
    posn = sorted(rng.sample(range(-60, 60), len(seq)))
    xs, zs = [], []
    for idx, (kind, ref) in enumerate(seq):
        if kind == "x":
            xs.append(Fraction(posn[idx]))
        else:
            zs.append((Fraction(posn[idx]), Fraction(rng.randint(1, 20))))
    return L.MarkedDisk(xs, zs, seam=seam)


class TestCharts:
    def test_round_trip_plain(self):
        rng = random.Random(4)
        for t in trees.maximal_types(4, 0) + trees.maximal_types(3, 1):
            for _ in range(3):
                d = _random_disk(rng, t)
                lab = L.simple_ratio_chart(d, t)
                lab2 = L.simple_ratio_chart(L.chart_inverse(lab), t)
                assert lab == lab2

    def test_round_trip_quilted(self):
        rng = random.Random(5)
        qt = []
        for e in range(1, 6):
            qt += [
                t
                for t in trees.enumerate_colored_types(2, 0, e)
                if L._is_chart_maximal(t)
            ]
        assert len(qt) == 2
        for t in qt:
            d = _random_disk(rng, t, seam=Fraction(3, 2))
            lab = L.simple_ratio_chart(d, t)
            lab2 = L.simple_ratio_chart(L.chart_inverse(lab), t)
            assert lab == lab2


class TestSerialization:
    def test_round_trip(self):
        rng = random.Random(6)
        t = colored_pool()[5]
        lab = L.random_balanced(t, rng)
        chi = L.chi_quilted(lab, Fraction(1, 2))
        back = L.labeling_from_obj(t, L.labeling_to_obj(chi, eps=Fraction(1, 2)))
        assert all(back[e] == chi[e] for e in t.edges())
        back2 = L.labeling_from_obj(t, L.labeling_to_obj(lab))
        assert back2 == lab


class TestExponents:
    def test_m_sums_to_one_per_color_chain(self):
        for t in colored_pool()[:30]:
            if t.root[1]:
                continue
            exp = L.exponents(t)
            paths = L._colored_paths(t)
            for chain in paths:
                if chain:
                    assert sum(exp.m[e] for e in chain) == 1
