"""Domain-to-company attribution database.

Records map registrable domains to the services that operate them and
chain each service up through its corporate parents, so a policy audit
can search for every name a data flow could reasonably be disclosed
under (e.g. convertro.com -> Convertro -> Aol -> Oath -> Verizon).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

MAX_CHAIN_DEPTH = 8

CATEGORIES = ("tracker", "cdn", "ddos_mitigation", "other")


class OwnershipError(ValueError):
    """Raised when the attribution database violates its invariants."""


@dataclass(frozen=True)
class OwnerRecord:
    id: str
    name: str
    aliases: tuple[str, ...] = ()
    parent_id: str | None = None
    domains: tuple[str, ...] = ()
    category: str = "tracker"
    has_consumer_services: bool = False
    policy_url: str | None = None
    report_as_self: bool = False
    as_of: str | None = None


class OwnershipGraph:
    """Validated, immutable forest of owner records."""

    def __init__(self, records: dict[str, OwnerRecord]):
        self.records = dict(records)
        self.domain_index: dict[str, str] = {}
        for record in self.records.values():
            for domain in record.domains:
                self.domain_index[domain] = record.id
        self._validate()

    def _validate(self) -> None:
        claimed: dict[str, str] = {}
        for record in self.records.values():
            if not record.name:
                raise OwnershipError(f"record {record.id!r} has an empty name")
            if any(not alias for alias in record.aliases):
                raise OwnershipError(f"record {record.id!r} has an empty alias")
            if record.category not in CATEGORIES:
                raise OwnershipError(
                    f"record {record.id!r} has unknown category {record.category!r}"
                )
            for domain in record.domains:
                if domain in claimed and claimed[domain] != record.id:
                    raise OwnershipError(
                        f"domain {domain!r} claimed by both "
                        f"{claimed[domain]!r} and {record.id!r}"
                    )
                claimed[domain] = record.id
        for record in self.records.values():
            self._walk_parents(record)

    def _walk_parents(self, record: OwnerRecord) -> list[OwnerRecord]:
        chain = [record]
        seen = {record.id}
        current = record
        while current.parent_id is not None:
            parent = self.records.get(current.parent_id)
            if parent is None:
                raise OwnershipError(
                    f"record {current.id!r} names unknown parent {current.parent_id!r}"
                )
            if parent.id in seen:
                cycle = [r.id for r in chain] + [parent.id]
                raise OwnershipError(f"ownership cycle: {' -> '.join(cycle)}")
            chain.append(parent)
            seen.add(parent.id)
            if len(chain) > MAX_CHAIN_DEPTH:
                raise OwnershipError(
                    f"ownership chain for {record.id!r} exceeds depth {MAX_CHAIN_DEPTH}"
                )
            current = parent
        return chain


def load_ownership_db(path) -> OwnershipGraph:
    """Load a line-delimited JSON attribution database.

    See data/ownership.schema.json for the record format. Blank lines and
    '#' comments are allowed.
    """
    records: dict[str, OwnerRecord] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise OwnershipError(f"{path}: line {line_no}: invalid JSON: {exc}")
            try:
                record = OwnerRecord(
                    id=raw["id"],
                    name=raw["name"],
                    aliases=tuple(raw.get("aliases", ())),
                    parent_id=raw.get("parent_id"),
                    domains=tuple(raw.get("domains", ())),
                    category=raw.get("category", "tracker"),
                    has_consumer_services=bool(raw.get("has_consumer_services", False)),
                    policy_url=raw.get("policy_url"),
                    report_as_self=bool(raw.get("report_as_self", False)),
                    as_of=raw.get("as_of"),
                )
            except KeyError as exc:
                raise OwnershipError(f"{path}: line {line_no}: missing field {exc}")
            if record.id in records:
                raise OwnershipError(f"{path}: line {line_no}: duplicate id {record.id!r}")
            records[record.id] = record
    return OwnershipGraph(records)


def resolve_owner(domain: str, graph: OwnershipGraph) -> OwnerRecord | None:
    """Owner record for a registrable domain, or None when unattributed."""
    owner_id = graph.domain_index.get(domain)
    return graph.records[owner_id] if owner_id else None


def ownership_chain(owner_id: str, graph: OwnershipGraph) -> list[OwnerRecord]:
    """The record followed by each ancestor up to the root."""
    record = graph.records.get(owner_id)
    if record is None:
        raise OwnershipError(f"unknown owner id {owner_id!r}")
    return graph._walk_parents(record)


def search_terms(chain: list[OwnerRecord]) -> list[str]:
    """Name and alias strings to search a policy for, child before parent."""
    terms: list[str] = []
    seen: set[str] = set()
    for record in chain:
        for term in (record.name, *record.aliases):
            key = term.casefold()
            if key not in seen:
                seen.add(key)
                terms.append(term)
    return terms


def composite_entities(owner_ids: set[str], graph: OwnershipGraph) -> set[str]:
    """Union of the given owners and all their ancestors.

    A site observed sending data to Aol and Yahoo counts once each for
    Aol, Yahoo, Oath, and Verizon.
    """
    result: set[str] = set()
    for owner_id in owner_ids:
        for record in ownership_chain(owner_id, graph):
            result.add(record.id)
    return result
