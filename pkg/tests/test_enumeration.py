import pytest

from medialq import (EnumerationSpec, OrderTooLargeError, census_pairs,
                     census_single, count_quasigroups_colwise,
                     count_quasigroups_rowwise, enumerate_quasigroups,
                     parse_equation, run_spec)

KNOWN_COUNTS = {1: 1, 2: 2, 3: 12, 4: 576}


class TestEnumerate:
    def test_known_counts(self):
        for n, expect in KNOWN_COUNTS.items():
            assert sum(1 for _ in enumerate_quasigroups(n)) == expect

    def test_tables_are_distinct_and_sorted(self):
        seen = [q.cells for q in enumerate_quasigroups(3)]
        assert len(set(seen)) == 12
        assert seen == sorted(seen)

    def test_cap(self):
        with pytest.raises(OrderTooLargeError):
            next(enumerate_quasigroups(6))

    def test_invalid_order(self):
        from medialq import MedialqError
        with pytest.raises(MedialqError):
            next(enumerate_quasigroups(0))


class TestCounters:
    def test_counters_agree_with_each_other(self):
        for n in range(1, 5):
            assert count_quasigroups_rowwise(n) == \
                count_quasigroups_colwise(n) == KNOWN_COUNTS[n]

    def test_caps(self):
        with pytest.raises(OrderTooLargeError):
            count_quasigroups_rowwise(6)
        with pytest.raises(OrderTooLargeError):
            count_quasigroups_colwise(6)


class TestRunSpec:
    def test_count_mode(self):
        assert run_spec(EnumerationSpec(order=3, mode="count")) == 12

    def test_filtered_count(self):
        eq = parse_equation("f(x,y)=f(y,x)")
        assert run_spec(EnumerationSpec(order=3, equation=eq, mode="count")) == 6

    def test_stream_filter(self):
        eq = parse_equation("f(x,y)=f(y,x)")
        for q in run_spec(EnumerationSpec(order=3, equation=eq)):
            assert q.cells == tuple(zip(*q.cells))

    def test_pair_equation_rejected_in_stream(self):
        from medialq import MedialqError, catalog_entry
        eq = catalog_entry("2-1").equation
        with pytest.raises(MedialqError):
            run_spec(EnumerationSpec(order=3, equation=eq))

    def test_census_mode(self):
        assert run_spec(EnumerationSpec(order=3, mode="census")) == \
            census_single(3)

    def test_unknown_mode(self):
        from medialq import MedialqError
        with pytest.raises(MedialqError):
            run_spec(EnumerationSpec(order=3, mode="tally"))


class TestCensusSingle:
    def test_order_3_frozen_counts(self):
        counts = census_single(3)
        # every order-3 square is medial, paramedial and 4-palindromic;
        # exactly half are commutative
        expect = {}
        for label in counts:
            expect[label] = 12 if label in {"1-0", "1-1", "1-16", "1-016"} else 6
        assert counts == expect

    def test_order_2(self):
        counts = census_single(2)
        assert all(v == 2 for v in counts.values())

    def test_label_order_matches_catalog(self):
        from medialq import single_catalog
        assert list(census_single(2)) == [e.label for e in single_catalog()]

    def test_entry_subset(self):
        from medialq import catalog_entry
        entries = [catalog_entry("1-1"), catalog_entry("1-16")]
        assert census_single(3, entries) == {"1-1": 12, "1-16": 12}


class TestCensusPairs:
    def test_order_2_frozen_counts(self):
        rows = census_pairs(2)
        assert len(rows) == 24
        for row in rows.values():
            assert (row.count, row.commutative_pairs, row.linear_pairs) == \
                (2, 2, 2)

    def test_cap(self):
        with pytest.raises(OrderTooLargeError):
            census_pairs(4)

    def test_order_3_spot_checks(self):
        from medialq import catalog_entry
        entries = [catalog_entry("2-0"), catalog_entry("2-1")]
        rows = census_pairs(3, entries)
        # 2-0 is f(g(x,y),g(u,v)) = g(f(x,y),f(u,v)); every satisfying pair
        # here is linearizable at 0 since all order-3 squares are
        assert rows["2-0"].count == rows["2-0"].linear_pairs
        assert rows["2-1"].count == rows["2-1"].linear_pairs
        assert 0 < rows["2-1"].count < 144
