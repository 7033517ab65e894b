"""Multipartition combinatorics: enumeration, slicing, dominance."""

import pytest
from hypothesis import given, strategies as st

from qfock import (
    alpha_p,
    as_multicharge,
    as_multipartition,
    beta_greater,
    dagger,
    enumerate_block,
    is_M_dominant,
    join,
    mp_size,
    split,
    split_charge,
)
from qfock.multipartitions import (
    as_partition,
    check_grouping,
    conjugate,
    enumerate_partitions,
    mp_from_json,
    mp_level,
    mp_to_json,
    mp_to_text,
)


class TestNormalization:
    def test_as_partition_strips_and_checks(self):
        assert as_partition([3, 1, 0, 0]) == (3, 1)
        assert as_partition([]) == ()
        with pytest.raises(ValueError):
            as_partition([1, 2])
        with pytest.raises(ValueError):
            as_partition([2, -1])

    def test_as_multipartition(self):
        assert as_multipartition([[2, 1], []]) == ((2, 1), ())
        assert as_multipartition([[3, 0], [1]]) == ((3,), (1,))

    def test_as_multicharge(self):
        assert as_multicharge([12, 0]) == (12, 0)
        with pytest.raises(ValueError):
            as_multicharge([])

    def test_size_and_level(self):
        mp = as_multipartition([[2, 1], [1]])
        assert mp_size(mp) == 4
        assert mp_level(mp) == 2


class TestConjugation:
    def test_conjugate(self):
        assert conjugate((3, 1)) == (2, 1, 1)
        assert conjugate(()) == ()
        assert conjugate(conjugate((4, 2, 2, 1))) == (4, 2, 2, 1)

    def test_dagger_conjugates_and_reverses(self):
        mp = as_multipartition([[3, 1], [1]])
        assert dagger(mp) == ((1,), (2, 1, 1))
        assert dagger(dagger(mp)) == mp


class TestEnumeration:
    def test_partition_counts(self):
        # p(0..6) = 1, 1, 2, 3, 5, 7, 11
        for n, count in enumerate([1, 1, 2, 3, 5, 7, 11]):
            assert len(enumerate_partitions(n)) == count

    @pytest.mark.parametrize("l,n,count", [
        (1, 4, 5), (2, 1, 2), (2, 2, 5), (2, 3, 10), (2, 4, 20),
        (3, 1, 3), (3, 2, 9),
    ])
    def test_block_counts(self, l, n, count):
        block = enumerate_block(l, n)
        assert len(block) == count
        assert len(set(block)) == count
        assert all(mp_size(mp) == n and mp_level(mp) == l for mp in block)

    def test_block_is_sorted_descending(self):
        block = enumerate_block(2, 3)
        assert list(block) == sorted(block, reverse=True)


class TestGroupingAndSlices:
    def test_check_grouping(self):
        assert check_grouping((1, 1), 2) == (1, 1)
        assert check_grouping([2, 1], 3) == (2, 1)
        with pytest.raises(ValueError):
            check_grouping((1, 2), 2)
        with pytest.raises(ValueError):
            check_grouping((0, 2), 2)

    def test_split_and_join_round_trip(self):
        mp = as_multipartition([[3], [2, 1], [1]])
        parts = split(mp, (1, 2))
        assert parts == (((3,),), ((2, 1), (1,)))
        assert join(parts) == mp

    def test_split_charge(self):
        assert split_charge((16, 8, 0), (1, 2)) == ((16,), (8, 0))
        assert split_charge((16, 8, 0), (2, 1)) == ((16, 8), (0,))

    def test_alpha_records_slice_sizes(self):
        mp = as_multipartition([[3], [2, 1], [1]])
        assert alpha_p(mp, (1, 2)) == (3, 4)
        assert alpha_p(mp, (1, 1, 1)) == (3, 3, 1)

    def test_beta_greater_is_strict_first_slice_dominance(self):
        la = as_multipartition([[2], [1]])
        mu = as_multipartition([[1], [2]])
        assert beta_greater(la, mu, (1, 1))
        assert not beta_greater(mu, la, (1, 1))
        assert not beta_greater(la, la, (1, 1))


class TestDominance:
    def test_gap_must_exceed_M_plus_size(self):
        assert is_M_dominant(4, (12, 0), 5)      # 12 > 5 + 4
        assert not is_M_dominant(7, (12, 0), 5)  # 12 = 5 + 7 fails (strict)
        assert is_M_dominant(6, (12, 0), 5)
        assert is_M_dominant(0, (16, 8, 0), 7)
        assert not is_M_dominant(1, (16, 8, 0), 7)

    def test_level_one_is_always_dominant(self):
        assert is_M_dominant(100, (0,), 5)


class TestSerialization:
    @given(st.lists(
        st.lists(st.integers(min_value=1, max_value=5), max_size=3)
        .map(lambda xs: sorted(xs, reverse=True)),
        min_size=1, max_size=3,
    ))
    def test_json_round_trip(self, comps):
        mp = as_multipartition(comps)
        assert mp_from_json(mp_to_json(mp)) == mp

    def test_text_form(self):
        assert mp_to_text(as_multipartition([[2, 1], []])) == "2-1.0"
