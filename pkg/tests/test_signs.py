"""Orientation-sign formulas and Koszul bookkeeping."""

import pytest
from hypothesis import given, settings, strategies as st

from clustercx import signs
from clustercx.errors import ShapeError, ShuffleError


class TestClosedForms:
    def test_concat_values(self):
        assert signs.sign_concat(2, 2, 2) == -1
        assert signs.sign_concat(2, 1, 2) == 1

    def test_lower_upper(self):
        assert signs.sign_lower_quilt(2, 2, 2) == 1
        assert signs.sign_upper_quilt([1] * 5) == 1
        assert signs.sign_upper_quilt([2, 3]) == (-1) ** ((2 - 1) * (2 - 1) + 1 * (3 - 1))

    def test_bullet_reduces_to_concat(self):
        for l1 in range(1, 5):
            for l2 in range(1, 5):
                for j in range(1, l1 + 1):
                    ident = list(range(1, l1 + l2))
                    assert signs.sign_bullet(l1, j, l2, ident) == signs.sign_concat(
                        l1, j, l2
                    )

    def test_bullet_bad_shuffle(self):
        with pytest.raises(ShuffleError):
            signs.sign_bullet(2, 2, 2, [2, 1, 3])

    def test_perm_parity(self):
        assert signs.perm_parity((1, 2, 3)) == 0
        assert signs.perm_parity((2, 1, 3)) == 1


class TestKoszul:
    def test_apply_window(self):
        with pytest.raises(ShapeError):
            signs.koszul_apply(1, 3, 2, [0, 1, 0])

    def test_epsilon_bar_matches_gj_mod_suspension(self):
        # moving a degree-shifted operation past shifted degrees
        for degs in ([0, 1, 0], [1, 1, 1], [2, 0, 1]):
            for j in range(1, 3):
                bar = signs.epsilon_bar(j, [d - 1 for d in degs])
                assert bar in (0, 1)

    @given(st.lists(st.integers(0, 3), min_size=1, max_size=6))
    @settings(max_examples=50, deadline=None)
    def test_suspension_involution(self, degs):
        s = signs.suspension_sign(degs)
        assert s * s == 1
