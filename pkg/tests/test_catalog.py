"""Catalog files: parsing, normalization, directory loading."""
import json

import pytest

from cepp.catalog import (
    Catalog,
    DuplicateVariantId,
    ParseError,
    catalog_name,
    load_catalog,
    load_catalog_dir,
    merged_variants,
    parse_catalog,
)
from cepp.fixtures import vendors_raw_catalog
from cepp.model import ZERO_VARIANT, ContainerVariant


def doc(*variants, source="test"):
    return {
        "source": source,
        "variants": [
            {"id": i, "cap_mb": c, "cost_eur_mo": e} for (i, c, e) in variants
        ],
    }


def test_parse_happy_path():
    cat = parse_catalog(doc(("small", 1024, 12.0), ("large", 4096, 28.08)))
    assert cat.source == "test"
    assert cat.variants[0] == ZERO_VARIANT  # synthesized
    assert [v.variant_id for v in cat.variants[1:]] == ["small", "large"]
    assert cat.variants[2].cost_cents == 2808


def test_parse_accepts_json_text():
    cat = parse_catalog(json.dumps(doc(("a", 100, 1.0))))
    assert len(cat.variants) == 2


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_catalog("")
    with pytest.raises(ParseError):
        parse_catalog("{not json")
    with pytest.raises(ParseError):
        parse_catalog({"source": "x", "variants": []})
    with pytest.raises(ParseError):
        parse_catalog({"source": "x", "variants": [{"id": "a"}]})
    with pytest.raises(ParseError):
        parse_catalog(doc(("a", -5, 1.0)))


def test_parse_rejects_duplicate_ids():
    with pytest.raises(DuplicateVariantId):
        parse_catalog(doc(("a", 100, 1.0), ("a", 200, 2.0)))


def test_parse_keeps_explicit_zero_unique():
    d = doc(("zero", 0, 0.0), ("a", 100, 1.0))
    cat = parse_catalog(d)
    assert sum(1 for v in cat.variants if v.is_zero) == 1
    d["variants"].append({"id": "zero2", "cap_mb": 0, "cost_eur_mo": 0.0})
    with pytest.raises(ParseError):
        parse_catalog(d)


def test_normalized_prunes_dominated_and_sorts():
    cat = parse_catalog(
        doc(("big-cheap", 2000, 10.0), ("small-dear", 1000, 12.0), ("mid", 1500, 8.0))
    )
    norm = cat.normalized()
    assert norm.variants[0] == ZERO_VARIANT
    # big-cheap dominates small-dear; mid is cheaper still at lower capacity
    assert [v.variant_id for v in norm.variants[1:]] == ["mid", "big-cheap"]
    assert norm.normalized() == norm  # idempotent


def test_normalized_twin_tie_break_is_lexicographic():
    cat = parse_catalog(doc(("b-twin", 1000, 5.0), ("a-twin", 1000, 5.0)))
    norm = cat.normalized()
    assert [v.variant_id for v in norm.variants[1:]] == ["a-twin"]


def test_catalog_name_strips_suffix(tmp_path):
    assert catalog_name("aws_t2.catalog.json") == "aws_t2"
    assert catalog_name("/x/y/edocs.catalog.json") == "edocs"
    assert catalog_name("plain.json") == "plain"


def test_load_catalog_dir(tmp_path, data_dir):
    cats = load_catalog_dir(data_dir / "catalogs")
    assert set(cats) == {"example1", "aws_t2", "edocs", "vendors_raw"}
    assert all(c.variants[0].is_zero for c in cats.values())
    # source falls back to the file name when absent in the document
    bare = {"variants": [{"id": "v", "cap_mb": 10, "cost_eur_mo": 1.0}]}
    (tmp_path / "bare.catalog.json").write_text(json.dumps(bare))
    assert load_catalog(tmp_path / "bare.catalog.json").source == "bare"


def test_merged_variants_prefixes_ids():
    a = parse_catalog(doc(("v", 100, 1.0), source="one"))
    b = parse_catalog(doc(("v", 200, 2.0), source="two"))
    pool = merged_variants([a, b])
    assert [v.variant_id for v in pool] == ["one:v", "two:v"]
    assert not any(v.is_zero for v in pool)


def test_vendor_dump_normalizes_to_frontier():
    raw = vendors_raw_catalog()
    assert len([v for v in raw.variants if not v.is_zero]) == 111
    norm = raw.normalized()
    kept = [v for v in norm.variants if not v.is_zero]
    assert len(kept) == 14
    assert all(v.vendor == "vendor-a" for v in kept)
    caps = [v.capacity_mb for v in kept]
    costs = [v.cost_cents for v in kept]
    assert caps == sorted(caps) and len(set(caps)) == len(caps)
    assert costs == sorted(costs)


def test_disk_round_trip(tmp_path):
    cat = parse_catalog(doc(("a", 100, 1.0), ("b", 300, 2.5)))
    path = tmp_path / "rt.catalog.json"
    path.write_text(json.dumps(cat.to_json()))
    again = load_catalog(path)
    assert again.variants == cat.variants
    assert again.source == cat.source
