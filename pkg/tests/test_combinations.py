import pytest

import oracles
from covcomb.analysis import upper_triangle_size
from covcomb.combinations import (
    Combination,
    element_pairs,
    is_unique_combination,
    max_writes,
    pair_count,
    unique_combinations,
    write_indices,
)
from covcomb.core import WindowSpec

SMALL_WINDOWS = [(1, 1), (1, 3), (2, 2), (3, 2), (2, 4), (3, 3)]


class TestEnumeration:
    def test_reference_counts(self):
        assert len(unique_combinations(WindowSpec(13, 13))) == 313
        assert len(unique_combinations(WindowSpec(8, 8))) == 113
        assert len(unique_combinations(WindowSpec(2, 2))) == 5
        assert unique_combinations(WindowSpec(1, 1)) == [Combination(0, 0)]

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS + [(8, 8), (13, 13), (5, 9)])
    def test_count_formula(self, p, q):
        assert len(unique_combinations(WindowSpec(p, q))) == p * q + (p - 1) * (q - 1)

    def test_enumeration_order(self):
        combos = unique_combinations(WindowSpec(3, 2))
        assert [(c.dr, c.dc) for c in combos] == [
            (0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (-2, 1), (-1, 1),
        ]

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_no_duplicates_and_membership(self, p, q):
        window = WindowSpec(p, q)
        combos = unique_combinations(window)
        assert len(set(combos)) == len(combos)
        for comb in combos:
            assert is_unique_combination(comb.dr, comb.dc, window)
            assert comb.dc >= 0
            assert abs(comb.dr) <= p - 1 and comb.dc <= q - 1
        assert not is_unique_combination(0, -1, window)
        assert not is_unique_combination(-1, 0, window)
        assert not is_unique_combination(p, 0, window)

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_mirror_closure_covers_all_offsets(self, p, q):
        # every realizable in-window offset is either stored or the mirror of one
        window = WindowSpec(p, q)
        stored = {(c.dr, c.dc) for c in unique_combinations(window)}
        for dr, dc in oracles.offsets_in_matrix(p, q):
            assert (dr, dc) in stored or (-dr, -dc) in stored
            assert ((dr, dc) in stored) + ((-dr, -dc) in stored) == (1 if (dr, dc) != (0, 0) else 1) \
                or (dr, dc) == (0, 0)


class TestPairCount:
    def test_reference_values(self):
        assert pair_count(Combination(0, 0), 32, 32) == 1024
        assert pair_count(Combination(1, 1), 4, 4) == 9
        assert pair_count(Combination(-2, 1), 5, 3) == 6

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_matches_brute_force_scan(self, p, q):
        window = WindowSpec(p, q)
        for n, m in [(p, q), (p + 1, q), (p + 2, q + 3), (2 * p + 1, 2 * q)]:
            for comb in unique_combinations(window):
                pairs = oracles.pairs_at_offset(n, m, comb.dr, comb.dc)
                assert pair_count(comb, n, m) == len(pairs)


class TestMaxWrites:
    def test_reference_values(self):
        window = WindowSpec(3, 2)
        assert max_writes(Combination(0, 0), window) == 6
        assert max_writes(Combination(2, 1), window) == 1
        assert sum(max_writes(c, window) for c in unique_combinations(window)) == 21

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS + [(8, 8), (13, 13)])
    def test_totals_cover_triangle_exactly(self, p, q):
        window = WindowSpec(p, q)
        total = sum(max_writes(c, window) for c in unique_combinations(window))
        assert total == upper_triangle_size(p, q)

    def test_offset_too_large_rejected(self):
        with pytest.raises(ValueError):
            max_writes(Combination(3, 0), WindowSpec(3, 2))
        with pytest.raises(ValueError):
            max_writes(Combination(0, 2), WindowSpec(3, 2))


class TestElementPairs:
    def test_reference_pairs(self):
        pairs = element_pairs(Combination(1, 1), 3, 3)
        assert [(p.first, p.second) for p in pairs] == [
            ((1, 1), (2, 2)), ((1, 2), (2, 3)), ((2, 1), (3, 2)), ((2, 2), (3, 3))
        ]

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_matches_brute_force_scan(self, p, q):
        for n, m in [(p, q), (p + 2, q + 1), (2 * p, 2 * q + 1)]:
            for comb in unique_combinations(WindowSpec(p, q)):
                expected = oracles.pairs_at_offset(n, m, comb.dr, comb.dc)
                got = [(pr.first, pr.second) for pr in element_pairs(comb, n, m)]
                assert got == expected  # same set, same row-major order
                assert len(got) == pair_count(comb, n, m)


class TestWriteIndices:
    def test_self_pair_hits_diagonal(self):
        idx = write_indices((( 2, 2), (2, 2)), WindowSpec(2, 2), 3, 3)
        assert all(r == c for r, c in idx)
        assert len(idx) == 4  # the window catches an interior element 4 ways

    def test_reference_single_window(self):
        assert write_indices(((1, 1), (2, 2)), WindowSpec(2, 2), 2, 2) == [(1, 4)]

    def test_reference_order_two_windows(self):
        # two stacked windows catch the pair; emission is bottom window first
        assert write_indices(((2, 1), (2, 2)), WindowSpec(2, 2), 3, 2) == [(1, 3), (2, 4)]

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_matches_brute_force_window_scan(self, p, q):
        window = WindowSpec(p, q)
        for n, m in [(p, q), (p + 1, q + 2), (2 * p, 2 * q)]:
            for comb in unique_combinations(window):
                for pair in element_pairs(comb, n, m):
                    got = write_indices(pair, window, n, m)
                    assert len(set(got)) == len(got)
                    assert set(got) == oracles.writes_for_pair(pair, n, m, p, q)

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_all_on_class_diagonal_and_bounded(self, p, q):
        window = WindowSpec(p, q)
        n, m = 2 * p + 1, 2 * q + 1
        for comb in unique_combinations(window):
            cap = max_writes(comb, window)
            for pair in element_pairs(comb, n, m):
                idx = write_indices(pair, window, n, m)
                assert 1 <= len(idx) <= cap
                for row, col in idx:
                    assert col - row == comb.diag_offset(p)
                    assert 1 <= row <= col <= p * q

    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_interior_pair_reaches_full_capacity(self, p, q):
        window = WindowSpec(p, q)
        n, m = 3 * p, 3 * q
        for comb in unique_combinations(window):
            # anchor the pair so every surrounding placement stays in bounds
            r1 = p + 1 + max(-comb.dr, 0)
            c1 = q + 1
            pair = ((r1, c1), (r1 + comb.dr, c1 + comb.dc))
            assert len(write_indices(pair, window, n, m)) == max_writes(comb, window)

    def test_consecutive_on_diagonal_within_column_strip(self):
        # upward window steps emit consecutive slots on the class diagonal
        idx = write_indices(((3, 2), (3, 2)), WindowSpec(2, 2), 5, 5)
        by_strip = {}
        for row, col in idx:
            by_strip.setdefault(col - row, []).append(row)
        for rows in by_strip.values():
            assert rows == list(range(rows[0], rows[0] + len(rows)))

    def test_rejects_non_class_offsets(self):
        with pytest.raises(ValueError):
            write_indices(((1, 2), (1, 1)), WindowSpec(2, 2), 3, 3)  # (0, -1)
        with pytest.raises(ValueError):
            write_indices(((2, 1), (1, 1)), WindowSpec(2, 2), 3, 3)  # (-1, 0)
        with pytest.raises(ValueError):
            write_indices(((1, 1), (4, 1)), WindowSpec(2, 2), 5, 5)  # |dr| >= p

    def test_rejects_out_of_bounds_pair(self):
        with pytest.raises(IndexError):
            write_indices(((1, 1), (2, 4)), WindowSpec(2, 2), 3, 3)


class TestDisjointCoverage:
    @pytest.mark.parametrize("p,q", SMALL_WINDOWS)
    def test_classes_tile_the_triangle(self, p, q):
        # small-scale version of the exhaustive acceptance sweep
        window = WindowSpec(p, q)
        n, m = 2 * p, 2 * q
        owner = {}
        for comb in unique_combinations(window):
            seen = set()
            for pair in element_pairs(comb, n, m):
                for idx in write_indices(pair, window, n, m):
                    assert owner.setdefault(idx, comb) == comb
                    seen.add(idx)
            assert len(seen) == max_writes(comb, window)
        assert len(owner) == upper_triangle_size(p, q)
