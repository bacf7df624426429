import json

import pytest

from src.measure import BoundReport
from src.storage import ReportStore


def test_rows_keep_insertion_order_and_extras():
    store = ReportStore()
    store.add("runs", {"seed": 1})
    store.add("runs", {"seed": 2}, status="ok")
    assert store.rows("runs") == [{"seed": 1}, {"seed": 2, "status": "ok"}]
    assert store.rows("runs", n=1) == [{"seed": 2, "status": "ok"}]
    assert store.rows("missing") == []


def test_objects_with_to_dict_are_stored():
    store = ReportStore()
    store.add("bounds", BoundReport(lam=0.9, lambda_sq=0.81, achieved=0.85, upper=0.9, label="x"))
    row = store.rows("bounds")[0]
    assert row["lambda"] == 0.9
    assert row["label"] == "x"
    with pytest.raises(TypeError):
        store.add("bounds", 3)


def test_sections_are_pruned_independently():
    store = ReportStore(max_rows=2)
    for i in range(3):
        store.add("a", {"i": i})
    store.add("b", {"i": 0})
    assert [row["i"] for row in store.rows("a")] == [1, 2]
    assert store.row_count("a") == 2
    assert store.row_count() == 3
    assert store.sections == ["a", "b"]


def test_csv_is_six_significant_digits():
    store = ReportStore()
    store.add("t", {"x": 0.123456789, "n": 3})
    lines = store.to_csv_text("t").splitlines()
    assert lines == ["x,n", "0.123457,3"]


def test_json_keeps_full_precision():
    store = ReportStore()
    store.add("t", {"x": 0.1234567890123456})
    store.add("u", {"y": None})
    payload = json.loads(store.to_json_text())
    assert payload["t"][0]["x"] == 0.1234567890123456
    assert set(json.loads(store.to_json_text(["u"]))) == {"u"}


def test_exports(tmp_path):
    store = ReportStore()
    assert store.export_to_csv("t", str(tmp_path / "empty.csv")) is False
    store.add("t", {"x": 1.5})
    assert store.export_to_csv("t", str(tmp_path / "t.csv")) is True
    assert (tmp_path / "t.csv").read_text().splitlines() == ["x", "1.5"]
    store.export_to_json(str(tmp_path / "t.json"))
    assert json.loads((tmp_path / "t.json").read_text()) == {"t": [{"x": 1.5}]}


def test_clear():
    store = ReportStore()
    store.add("a", {"i": 1})
    store.add("b", {"i": 2})
    store.clear("a")
    assert store.sections == ["b"]
    store.clear()
    assert store.row_count() == 0
    assert store.get_dataframe("b").empty
