import pytest

from tuplegaps.patterns import BUILTIN_IDS, get_pattern
from tuplegaps.records import GapRecord
from tuplegaps.reference import reference_table, verify_against_reference
from tuplegaps.scanner import find_maximal_gaps

# rows per printed table, both columns together
ROW_COUNTS = {"1": 75, "2": 72, "3a": 72, "3b": 79, "4": 71, "5a": 64, "5b": 71, "6": 56, "7a": 52, "7b": 36}


def test_row_counts():
    assert {pid: len(reference_table(pid).rows) for pid in BUILTIN_IDS} == ROW_COUNTS


def test_known_rows():
    t6 = reference_table("6").rows
    assert [(r.p_start, r.p_next, r.gap) for r in t6[:3]] == [
        (7, 97, 90), (97, 16057, 15960), (19417, 43777, 24360)
    ]
    assert reference_table("3b").rows[0] == GapRecord("3b", 7, 13, 6)
    assert reference_table("5b").rows[-1] == GapRecord("5b", 991851356676277, 991851464273767, 107597490)
    assert reference_table("1").rows[-1].p_next == 1425172824437700887
    assert "A113274" in reference_table("2").source


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_rows_consistent(pid):
    rows = reference_table(pid).rows
    for r in rows:
        assert r.gap == r.p_next - r.p_start and r.pattern_id == pid
    assert all(a.p_start < b.p_start and a.gap < b.gap for a, b in zip(rows, rows[1:]))
    assert all(a.p_next <= b.p_start for a, b in zip(rows, rows[1:]))


def test_beyond_scan_limit_flag():
    t = reference_table("1")
    flagged = [r for r in t.rows if t.beyond_paper_scan_limit(r)]
    assert len(flagged) == 14 and flagged[0].p_start == 1189459969825483
    # the twin table also ends slightly past 10^15
    t = reference_table("2")
    assert [r.p_start for r in t.rows if t.beyond_paper_scan_limit(r)] == [1121784847637957]


def test_unknown_table():
    with pytest.raises(KeyError):
        reference_table("8")


def test_self_comparison():
    prefix = reference_table("4").prefix(10**6)
    report = verify_against_reference(prefix, "4", 10**6)
    assert report.ok and report.matched == len(prefix) == 14
    assert report.missing == report.extra == []


def test_mutated_row_is_missing_and_extra():
    prefix = list(reference_table("4").prefix(10**6))
    bad = GapRecord("4", prefix[5].p_start, prefix[5].p_next + 2, prefix[5].gap + 2)
    prefix[5] = bad
    report = verify_against_reference(prefix, "4", 10**6)
    assert not report.ok
    assert report.missing == [reference_table("4").rows[5]]
    assert report.extra == [bad]
    assert report.matched == 13


def test_order_matters():
    prefix = list(reference_table("2").prefix(10**4))
    prefix[0], prefix[1] = prefix[1], prefix[0]
    report = verify_against_reference(prefix, "2", 10**4)
    assert not report.missing and not report.extra and not report.ok


def test_truncated_output_reports_missing():
    prefix = reference_table("2").prefix(10**6)
    report = verify_against_reference(prefix[:-2], "2", 10**6)
    assert report.missing == prefix[-2:] and report.extra == []


def test_real_scan_twins_to_1e7():
    records, _ = find_maximal_gaps(get_pattern("2"), 10**7)
    report = verify_against_reference(records, "2", 10**7)
    assert report.ok and report.matched == 21
