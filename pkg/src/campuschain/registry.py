"""Document registry: the campus-side collections behind the node.

The store is deliberately small: id-keyed documents, field-equality
queries, and three integrity rules enforced at write time (schema shape,
unique keys, resolvable references). Deletes are tombstones so history is
never physically lost, and a delete that would orphan a live reference is
refused.

Two backends share all of that logic. MemoryStore keeps everything in
process for tests; FileStore additionally appends every write to an
NDJSON log and can compact into a snapshot, so a reopened store replays to
exactly the state it was closed with.
"""
from __future__ import annotations

import copy
import os
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import canonical
from .errors import DomainError

Types = tuple[type, ...]

STUDENTS = "students"
FACULTY = "faculty"
SUPERVISORS = "supervisors"
PROJECTS = "projects"
REPORTS = "reports"
POSITIONS = "positions"
APPLICATION_HISTORY = "application_history"
CAMPAIGNS = "campaigns"
LEDGER_EVENTS = "ledger_events"
OUTBOX = "outbox"

NOTIFICATION_KINDS = (
    "REPORT_GRADED",
    "PUBLICATION_VERIFIED",
    "JOB_POSTED",
    "JOB_ASSIGNED",
    "RATING_RECEIVED",
    "CAMPAIGN_UPDATE",
    "REWARD_PAID",
)


@dataclass(frozen=True)
class Unique:
    """Composite key that must be unique among live documents matching `where`."""

    fields: tuple[str, ...]
    where: tuple[tuple[str, Any], ...] = ()


@dataclass(frozen=True)
class Reference:
    """Field (string id or list of ids) that must resolve in another collection."""

    field: str
    collection: str
    where: tuple[tuple[str, Any], ...] = ()


@dataclass(frozen=True)
class Variant:
    """Extra shape requirements selected by the document's `kind` field."""

    required: dict[str, Types]
    optional: dict[str, Types] = field(default_factory=dict)


@dataclass(frozen=True)
class Schema:
    collection: str
    id_field: str
    required: dict[str, Types]
    optional: dict[str, Types] = field(default_factory=dict)
    unique: tuple[Unique, ...] = ()
    references: tuple[Reference, ...] = ()
    variants: dict[str, Variant] | None = None

    def known_fields(self) -> set[str]:
        names = {self.id_field, *self.required, *self.optional}
        for variant in (self.variants or {}).values():
            names.update(variant.required)
            names.update(variant.optional)
        return names


def _matches(document: dict, conditions: tuple[tuple[str, Any], ...]) -> bool:
    return all(document.get(name) == value for name, value in conditions)


def _type_ok(value: Any, types: Types) -> bool:
    # bool is an int subclass; only accept it where bool is named.
    if isinstance(value, bool):
        return bool in types
    return isinstance(value, types)


def default_schemas() -> tuple[Schema, ...]:
    """Collection catalog: campus identities, research work, the job
    pipeline, campaigns, and two plumbing collections (event audit trail
    and the notification outbox)."""
    return (
        Schema(
            collection=STUDENTS,
            id_field="student_id",
            required={
                "name": (str,),
                "email": (str,),
                "wallet_address": (str,),
                "enrolled": (bool,),
            },
            unique=(Unique(("wallet_address",)),),
        ),
        Schema(
            collection=FACULTY,
            id_field="faculty_id",
            required={"name": (str,), "email": (str,)},
            optional={"wallet_address": (str, type(None))},
        ),
        Schema(
            collection=SUPERVISORS,
            id_field="supervisor_id",
            required={"name": (str,), "email": (str,)},
            optional={"wallet_address": (str, type(None))},
        ),
        Schema(
            collection=PROJECTS,
            id_field="project_id",
            required={
                "topic": (str,),
                "faculty_id": (str,),
                "student_ids": (list,),
                "approved": (bool,),
            },
            optional={"publications": (list,)},
            references=(
                Reference("faculty_id", FACULTY),
                Reference("student_ids", STUDENTS),
            ),
        ),
        Schema(
            collection=REPORTS,
            id_field="report_id",
            required={
                "project_id": (str,),
                "submitted_at": (int,),
                "content_ref": (str,),
            },
            optional={"grade": (dict, type(None)), "feedback": (str,)},
            references=(Reference("project_id", PROJECTS),),
        ),
        Schema(
            collection=POSITIONS,
            id_field="position_id",
            required={
                "supervisor_id": (str,),
                "position_type": (str,),
                "hourly_rate": (int,),
                "weekly_hour_cap": (str,),
                "status": (str,),
                "applicant_ids": (list,),
            },
            optional={"description": (str,), "created_at": (int,)},
            references=(Reference("supervisor_id", SUPERVISORS),),
        ),
        Schema(
            collection=APPLICATION_HISTORY,
            id_field="record_id",
            required={"kind": (str,)},
            variants={
                "application": Variant(
                    required={
                        "position_id": (str,),
                        "student_id": (str,),
                        "applied_at": (int,),
                    }
                ),
                "assignment": Variant(
                    required={
                        "position_id": (str,),
                        "student_id": (str,),
                        "supervisor_id": (str,),
                        "position_type": (str,),
                        "hourly_rate": (int,),
                        "weekly_hour_cap": (str,),
                        "started_at": (int,),
                        "status": (str,),
                    },
                    # Allocation audit trail (probabilities, seed, draw) rides
                    # along with the assignment it produced.
                    optional={"allocation": (dict,)},
                ),
                "rating": Variant(
                    required={
                        "student_id": (str,),
                        "position_id": (str,),
                        "position_type": (str,),
                        "rating": (int,),
                        "rated_by": (str,),
                        "rated_at": (int,),
                    }
                ),
                "timesheet": Variant(
                    required={
                        "assignment_id": (str,),
                        "week_start": (str,),
                        "hours": (str,),
                    },
                    optional={"paid_tx_id": (str, type(None))},
                ),
            },
            unique=(
                Unique(("position_id", "student_id"), where=(("kind", "application"),)),
                Unique(("position_id",), where=(("kind", "assignment"),)),
                Unique(("position_id",), where=(("kind", "rating"),)),
                Unique(("assignment_id", "week_start"), where=(("kind", "timesheet"),)),
            ),
            references=(
                Reference("position_id", POSITIONS),
                Reference("student_id", STUDENTS),
                Reference("supervisor_id", SUPERVISORS),
                Reference("assignment_id", APPLICATION_HISTORY),
            ),
        ),
        Schema(
            collection=CAMPAIGNS,
            id_field="campaign_id",
            required={
                "beneficiary": (str,),
                "title": (str,),
                "goal": (int,),
                "raised": (int,),
                "status": (str,),
            },
            optional={
                "description": (str,),
                "created_at": (int,),
                "beneficiary_id": (str, type(None)),
            },
        ),
        Schema(
            collection=LEDGER_EVENTS,
            id_field="event_id",
            required={
                "kind": (str,),
                "memo": (str,),
                "tx_id": (str,),
                "created_at": (int,),
            },
            optional={"details": (dict,)},
        ),
        Schema(
            collection=OUTBOX,
            id_field="notification_id",
            required={
                "recipient_email": (str,),
                "event_kind": (str,),
                "body": (str,),
                "created_at": (int,),
                "delivered": (bool,),
            },
        ),
    )


class MemoryStore:
    """In-process backend; also the shared validation engine."""

    def __init__(self, schemas: Iterable[Schema] | None = None):
        self.schemas = {s.collection: s for s in (schemas or default_schemas())}
        # collection -> id -> {"version": int, "tombstone": bool, "body": dict}
        self._entries: dict[str, dict[str, dict[str, Any]]] = {
            name: {} for name in self.schemas
        }

    # -- validation ---------------------------------------------------

    def _schema(self, collection: str) -> Schema:
        schema = self.schemas.get(collection)
        if schema is None:
            raise DomainError("UNKNOWN_COLLECTION", f"no collection {collection!r}")
        return schema

    def _validate_shape(self, schema: Schema, document: dict) -> None:
        if not isinstance(document, dict):
            raise DomainError("SCHEMA_VIOLATION", "document must be an object")
        doc_id = document.get(schema.id_field)
        if not isinstance(doc_id, str) or not doc_id:
            raise DomainError(
                "SCHEMA_VIOLATION", f"{schema.id_field} must be a non-empty string"
            )
        required = dict(schema.required)
        optional = dict(schema.optional)
        if schema.variants is not None:
            kind = document.get("kind")
            variant = schema.variants.get(kind) if isinstance(kind, str) else None
            if variant is None:
                raise DomainError(
                    "SCHEMA_VIOLATION",
                    f"unknown {schema.collection} kind {kind!r}",
                )
            required.update(variant.required)
            optional.update(variant.optional)
        for name, types in required.items():
            if name not in document:
                raise DomainError("SCHEMA_VIOLATION", f"missing field {name!r}")
            if not _type_ok(document[name], types):
                raise DomainError("SCHEMA_VIOLATION", f"field {name!r} has wrong type")
        for name, value in document.items():
            if name == schema.id_field or name in required:
                continue
            if name not in optional:
                raise DomainError("SCHEMA_VIOLATION", f"unexpected field {name!r}")
            if not _type_ok(value, optional[name]):
                raise DomainError("SCHEMA_VIOLATION", f"field {name!r} has wrong type")

    def _validate_references(self, schema: Schema, document: dict) -> None:
        for ref in schema.references:
            if not _matches(document, ref.where):
                continue
            value = document.get(ref.field)
            if value is None:
                continue
            targets = value if isinstance(value, list) else [value]
            live = self._entries[ref.collection]
            for target in targets:
                entry = live.get(target)
                if entry is None or entry["tombstone"]:
                    raise DomainError(
                        "BROKEN_REFERENCE",
                        f"{ref.field} -> {ref.collection}/{target} does not resolve",
                        field=ref.field,
                    )

    def _validate_unique(self, schema: Schema, document: dict) -> None:
        doc_id = document[schema.id_field]
        for rule in schema.unique:
            if not _matches(document, rule.where):
                continue
            key = tuple(document.get(name) for name in rule.fields)
            if any(part is None for part in key):
                continue
            for other_id, entry in self._entries[schema.collection].items():
                if other_id == doc_id or entry["tombstone"]:
                    continue
                body = entry["body"]
                if not _matches(body, rule.where):
                    continue
                if tuple(body.get(name) for name in rule.fields) == key:
                    raise DomainError(
                        "DUPLICATE_UNIQUE_KEY",
                        f"{'+'.join(rule.fields)} already taken by {other_id}",
                    )

    def _referencing_documents(self, collection: str, doc_id: str) -> list[str]:
        hits = []
        for schema in self.schemas.values():
            for ref in schema.references:
                if ref.collection != collection:
                    continue
                for other_id, entry in self._entries[schema.collection].items():
                    if entry["tombstone"] or not _matches(entry["body"], ref.where):
                        continue
                    value = entry["body"].get(ref.field)
                    targets = value if isinstance(value, list) else [value]
                    if doc_id in targets:
                        hits.append(f"{schema.collection}/{other_id}")
        return hits

    # -- operations ---------------------------------------------------

    def put(self, collection: str, document: dict) -> str:
        """Validated upsert; returns the document id."""
        schema = self._schema(collection)
        self._validate_shape(schema, document)
        self._validate_references(schema, document)
        self._validate_unique(schema, document)
        doc_id = document[schema.id_field]
        previous = self._entries[collection].get(doc_id)
        version = (previous["version"] + 1) if previous else 1
        entry = {
            "version": version,
            "tombstone": False,
            "body": copy.deepcopy(document),
        }
        self._entries[collection][doc_id] = entry
        self._persist(collection, doc_id, entry)
        return doc_id

    def get(self, collection: str, doc_id: str) -> dict | None:
        self._schema(collection)
        entry = self._entries[collection].get(doc_id)
        if entry is None or entry["tombstone"]:
            return None
        return copy.deepcopy(entry["body"])

    def query(self, collection: str, filters: dict[str, Any] | None = None) -> list[dict]:
        """All live documents matching every filter, ordered by id."""
        schema = self._schema(collection)
        filters = filters or {}
        known = schema.known_fields()
        for name in filters:
            if name not in known:
                raise DomainError("UNKNOWN_FIELD", f"no field {name!r} in {collection}")
        results = []
        for doc_id in sorted(self._entries[collection]):
            entry = self._entries[collection][doc_id]
            if entry["tombstone"]:
                continue
            body = entry["body"]
            if all(body.get(k) == v for k, v in filters.items()):
                results.append(copy.deepcopy(body))
        return results

    def delete(self, collection: str, doc_id: str) -> bool:
        """Tombstone a document; refused while anything live points at it."""
        self._schema(collection)
        entry = self._entries[collection].get(doc_id)
        if entry is None or entry["tombstone"]:
            return False
        holders = self._referencing_documents(collection, doc_id)
        if holders:
            raise DomainError(
                "STILL_REFERENCED",
                f"{collection}/{doc_id} is referenced by {', '.join(holders)}",
            )
        entry["tombstone"] = True
        entry["version"] += 1
        self._persist(collection, doc_id, entry)
        return True

    def _persist(self, collection: str, doc_id: str, entry: dict) -> None:
        """Hook for durable backends; the in-memory store does nothing."""

    def close(self) -> None:
        pass


class FileStore(MemoryStore):
    """Durable backend: snapshot plus append-only NDJSON log.

    Every write is flushed and fsynced before put/delete returns, so a
    process killed right after a successful call loses nothing.
    """

    SNAPSHOT = "snapshot.ndjson"
    LOG = "log.ndjson"

    def __init__(self, directory: str, schemas: Iterable[Schema] | None = None):
        super().__init__(schemas)
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self._snapshot_path = os.path.join(directory, self.SNAPSHOT)
        self._log_path = os.path.join(directory, self.LOG)
        self._replay(self._snapshot_path)
        self._replay(self._log_path)
        self._log = open(self._log_path, "ab")

    def _replay(self, path: str) -> None:
        if not os.path.exists(path):
            return
        with open(path, "rb") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = canonical.decode(line)
                entry = {
                    "version": record["version"],
                    "tombstone": record["tombstone"],
                    "body": record["body"],
                }
                self._entries[record["collection"]][record["id"]] = entry

    def _persist(self, collection: str, doc_id: str, entry: dict) -> None:
        record = {
            "collection": collection,
            "id": doc_id,
            "version": entry["version"],
            "tombstone": entry["tombstone"],
            "body": entry["body"],
        }
        self._log.write(canonical.encode(record) + b"\n")
        self._log.flush()
        os.fsync(self._log.fileno())

    def compact(self) -> None:
        """Fold the log into the snapshot; the log starts over empty."""
        tmp_path = self._snapshot_path + ".tmp"
        with open(tmp_path, "wb") as handle:
            for collection in sorted(self._entries):
                for doc_id in sorted(self._entries[collection]):
                    entry = self._entries[collection][doc_id]
                    record = {
                        "collection": collection,
                        "id": doc_id,
                        "version": entry["version"],
                        "tombstone": entry["tombstone"],
                        "body": entry["body"],
                    }
                    handle.write(canonical.encode(record) + b"\n")
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_path, self._snapshot_path)
        self._log.close()
        self._log = open(self._log_path, "wb")
        self._log.flush()

    def close(self) -> None:
        if not self._log.closed:
            self._log.close()
