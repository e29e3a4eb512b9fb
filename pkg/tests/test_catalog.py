"""Catalog loading, round-trips, verification and negative controls."""

import json

import pytest

from lgforge import load_catalog, verify_all, verify_entry
from lgforge.catalog import CatalogError, default_catalog_path


@pytest.fixture(scope="module")
def entries():
    return load_catalog()


def test_counts(entries):
    by_prefix = {
        "rank1": [e for e in entries if e.dim == 3 and e.picard_rank == 1],
        "dP": [e for e in entries if e.id.startswith("dP-")],
        "MM-2": [e for e in entries if e.id.startswith("MM-2.")],
        "MM-3": [e for e in entries if e.id.startswith("MM-3.")],
        "MM-4": [e for e in entries if e.id.startswith("MM-4.")],
    }
    assert len(by_prefix["rank1"]) == 17
    assert len(by_prefix["dP"]) == 8
    assert len(by_prefix["MM-2"]) == 36
    assert len(by_prefix["MM-3"]) == 31
    assert len(by_prefix["MM-4"]) == 2
    assert len(entries) == 94


def test_ids_unique_and_sorted(entries):
    ids = [e.id for e in entries]
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids))


def test_models_parse(entries):
    for e in entries:
        f = e.parse_model()
        if e.model is not None:
            assert f is not None and not f.is_zero
        g = e.parse_param_model()
        if e.param_model is not None:
            assert g is not None


def test_round_trip(entries, tmp_path):
    path = tmp_path / "copy.json"
    path.write_text(json.dumps([e.to_json() for e in entries]), encoding="utf-8")
    again = load_catalog(path)
    assert again == entries


def test_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]", encoding="utf-8")
    assert load_catalog(path) == []


def test_unparseable_model_names_entry(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            [
                {
                    "id": "broken",
                    "dim": 2,
                    "picard_rank": 1,
                    "model": "x + (",
                    "params": [],
                    "checks": [],
                }
            ]
        ),
        encoding="utf-8",
    )
    with pytest.raises(CatalogError, match="broken"):
        load_catalog(path)


def test_duplicate_ids_rejected(tmp_path):
    entry = {
        "id": "dup",
        "dim": 2,
        "picard_rank": 1,
        "model": "x + 1/x",
        "params": [],
        "checks": [],
    }
    path = tmp_path / "dup.json"
    path.write_text(json.dumps([entry, dict(entry)]), encoding="utf-8")
    with pytest.raises(CatalogError, match="dup"):
        load_catalog(path)


def test_verify_single_identification(entries):
    by_id = {e.id: e for e in entries}
    report = verify_entry(by_id["MM-2.8"], 10, entries)
    assert report.ok
    kinds = [c.kind for c in report.checks]
    assert "period_match" in kinds


def test_vacuous_at_order_zero(entries):
    by_id = {e.id: e for e in entries}
    report = verify_entry(by_id["MM-3.21"], 0, entries)
    assert report.ok


def test_prefix_filter():
    reports = verify_all(order=0, id_filter="MM-2.")
    assert len(reports) == 36
    assert all(r.entry_id.startswith("MM-2.") for r in reports)


def test_corrupted_coefficient_fails_with_witness(entries, tmp_path):
    """Bumping one coefficient of the identification source must break the
    period match with a witness degree within the comparison order."""
    raw = json.loads(default_catalog_path().read_text(encoding="utf-8"))
    target = next(e for e in raw if e["id"] == "MM-2.8")
    for check in target["checks"]:
        if check["kind"] == "period_match":
            check["source"] = "(x*y+y*z+x*z+2)^2/(x*y*z)"
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    corrupted = load_catalog(path)
    by_id = {e.id: e for e in corrupted}
    report = verify_entry(by_id["MM-2.8"], 10, corrupted)
    assert not report.ok
    bad = [c for c in report.checks if c.kind == "period_match" and not c.ok]
    assert bad and bad[0].witness_degree is not None
    assert bad[0].witness_degree <= 10
