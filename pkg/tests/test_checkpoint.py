import json

import pytest
from hypothesis import given, settings, strategies as st

from tuplegaps.checkpoint import CheckpointError, ScanCheckpoint, load_checkpoint, save_checkpoint
from tuplegaps.records import GapRecord
from tuplegaps.patterns import get_pattern
from tuplegaps.scanner import find_maximal_gaps


@pytest.fixture
def cp():
    return find_maximal_gaps(get_pattern("2"), 10**5)[1]


def test_round_trip(tmp_path, cp):
    path = tmp_path / "cp.json"
    save_checkpoint(cp, path)
    assert load_checkpoint(path) == cp


def test_field_names(tmp_path, cp):
    path = tmp_path / "cp.json"
    save_checkpoint(cp, path)
    data = json.loads(path.read_text())
    assert set(data) == {"version", "pattern_id", "offsets", "scanned_to",
                         "last_tuple_start", "current_max_gap", "records"}
    assert data["records"][0] == {"p_start": 3, "p_next": 5, "gap": 2}


def test_overwrite_leaves_no_temp_files(tmp_path, cp):
    path = tmp_path / "cp.json"
    save_checkpoint(cp, path)
    save_checkpoint(cp, path)
    assert [p.name for p in tmp_path.iterdir()] == ["cp.json"]


def test_truncated_file(tmp_path, cp):
    path = tmp_path / "cp.json"
    save_checkpoint(cp, path)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def _mutate(tmp_path, cp, change):
    path = tmp_path / "cp.json"
    data = cp.to_dict()
    change(data)
    path.write_text(json.dumps(data))
    return path


@pytest.mark.parametrize(
    "change",
    [
        lambda d: d.update(version=2),
        lambda d: d.pop("scanned_to"),
        lambda d: d.update(scanned_to="100"),
        lambda d: d.update(current_max_gap=True),
        lambda d: d["records"][1].update(gap=7),
        lambda d: d["records"].reverse(),
        lambda d: d.update(current_max_gap=d["current_max_gap"] + 2),
        lambda d: d.update(last_tuple_start=d["scanned_to"]),
        lambda d: d["records"][0].pop("p_next"),
    ],
)
def test_corrupt_content(tmp_path, cp, change):
    with pytest.raises(CheckpointError):
        load_checkpoint(_mutate(tmp_path, cp, change))


def test_not_an_object(tmp_path):
    path = tmp_path / "cp.json"
    path.write_text("[1, 2]")
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 10**15), st.integers(1, 10**6)), max_size=20),
       st.integers(0, 10**6))
def test_round_trip_property(tmp_path_factory, rows, extra):
    records, best, pos = [], 0, 0
    for start_step, gap in rows:
        if gap <= best:
            continue
        pos += start_step
        records.append(GapRecord("7a", pos, pos + gap, gap))
        best = gap
        pos += gap
    cp = ScanCheckpoint("7a", (0, 2, 8, 12, 14, 18, 20), pos + extra + 1,
                        pos if records else None, best, records)
    path = tmp_path_factory.mktemp("cp") / "cp.json"
    save_checkpoint(cp, path)
    assert load_checkpoint(path) == cp
