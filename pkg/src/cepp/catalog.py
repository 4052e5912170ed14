"""Container catalogs: vendor offerings as sized, priced variants.

A catalog file is a JSON document:

    {
      "source": "aws-t2-line",
      "variants": [
        {"id": "t2.micro", "vendor": "aws", "cap_mb": 1024, "cost_eur_mo": 7.97, "cpu": 1},
        ...
      ]
    }

Costs are Euro per month in the file and integer cents in memory. ``cpu`` is
parsed and kept but plays no role in pricing — capacity is RAM only.
Loading guarantees exactly one zero-capacity/zero-cost variant; ``normalize``
prunes dominated offerings and orders the rest by ascending capacity, which
is the variant-id ordering the shrink transformation of the search relies on.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .heuristic import prune_dominated_variants
from .model import ContainerVariant, ZERO_VARIANT, to_cents

CURRENCY = "EUR/mo"

CATALOG_SUFFIX = ".catalog.json"


class ParseError(ValueError):
    pass


class DuplicateVariantId(ParseError):
    pass


@dataclass(frozen=True)
class Catalog:
    source: str
    variants: tuple[ContainerVariant, ...]
    currency: str = CURRENCY

    def normalized(self) -> "Catalog":
        """Dominated variants pruned, zero variant first, remainder by
        ascending capacity. Idempotent; after it, capacity is strictly
        increasing and cost non-decreasing across the non-zero variants."""
        kept = prune_dominated_variants([v for v in self.variants if not v.is_zero])
        kept.sort(key=lambda v: (v.capacity_mb, v.cost_cents, v.variant_id))
        return Catalog(self.source, (ZERO_VARIANT,) + tuple(kept), self.currency)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "variants": [v.to_json() for v in self.variants],
        }


def parse_catalog(doc: str | bytes | dict) -> Catalog:
    if isinstance(doc, (str, bytes)):
        if not str(doc).strip():
            raise ParseError("catalog file is empty")
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("catalog document must be a JSON object")
    source = doc.get("source", "")
    if not isinstance(source, str):
        raise ParseError("'source' must be a string")
    raw = doc.get("variants")
    if not isinstance(raw, list) or not raw:
        raise ParseError("catalog needs a non-empty 'variants' list")
    variants = []
    seen = set()
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ParseError(f"variants[{k}] must be an object")
        try:
            vid = entry["id"]
            cap = float(entry["cap_mb"])
            cost = to_cents(entry["cost_eur_mo"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"variants[{k}]: {exc}") from exc
        if not isinstance(vid, str) or not vid:
            raise ParseError(f"variants[{k}]: id must be a non-empty string")
        if vid in seen:
            raise DuplicateVariantId(f"duplicate variant id {vid!r}")
        seen.add(vid)
        if cap < 0:
            raise ParseError(f"variant {vid!r}: cap_mb must be non-negative")
        if cost < 0:
            raise ParseError(f"variant {vid!r}: cost_eur_mo must be non-negative")
        vendor = entry.get("vendor", source or "unknown")
        if not isinstance(vendor, str):
            raise ParseError(f"variant {vid!r}: vendor must be a string")
        cpu = entry.get("cpu")
        if cpu is not None:
            cpu = float(cpu)
        variants.append(ContainerVariant(vid, vendor, cap, cost, cpu))
    zeros = [v for v in variants if v.is_zero]
    if len(zeros) > 1:
        raise ParseError("catalog may carry at most one zero-cost variant")
    if not zeros:
        variants.insert(0, ZERO_VARIANT)
    return Catalog(source, tuple(variants))


def load_catalog(path: str | Path) -> Catalog:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read catalog {p}: {exc}") from exc
    cat = parse_catalog(text)
    if not cat.source:
        cat = Catalog(catalog_name(p), cat.variants, cat.currency)
    return cat


def catalog_name(path: str | Path) -> str:
    """Catalog id for a file: basename with the .catalog.json suffix gone."""
    name = Path(path).name
    if name.endswith(CATALOG_SUFFIX):
        return name[: -len(CATALOG_SUFFIX)]
    return Path(path).stem


def load_catalog_dir(path: str | Path) -> dict[str, Catalog]:
    """All catalogs in a directory, keyed by catalog id."""
    out: dict[str, Catalog] = {}
    for p in sorted(Path(path).glob(f"*{CATALOG_SUFFIX}")):
        out[catalog_name(p)] = load_catalog(p)
    return out


def merged_variants(catalogs: Sequence[Catalog]) -> list[ContainerVariant]:
    """Variants of several catalogs pooled for a multi-vendor instance.

    Ids get a catalog prefix to stay unique across sources.
    """
    pool = []
    for cat in catalogs:
        for v in cat.variants:
            if v.is_zero:
                continue
            pool.append(
                ContainerVariant(
                    f"{cat.source}:{v.variant_id}", v.vendor, v.capacity_mb, v.cost_cents, v.cpu
                )
            )
    return pool
