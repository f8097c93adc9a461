"""Notification outbox: events are recorded first, delivered maybe.

Every user-facing event lands in the registry's outbox collection with
delivered=False. Actual mail delivery is an adapter plugged in at
deployment time; the default setup has none, so tests and offline nodes
accumulate an inspectable outbox and never touch the network.
"""
from __future__ import annotations

import smtplib
from email.message import EmailMessage
from typing import Protocol

from . import registry
from .errors import DomainError


def enqueue(
    store: registry.MemoryStore,
    recipient_email: str,
    event_kind: str,
    body: str,
    created_at: int,
) -> dict:
    """Append one outbox record; returns the stored document."""
    if event_kind not in registry.NOTIFICATION_KINDS:
        raise DomainError("BAD_EVENT_KIND", f"unknown event kind {event_kind!r}")
    if not recipient_email:
        raise DomainError("UNKNOWN_RECIPIENT", "recipient has no email on file")
    document = {
        "notification_id": f"ntf-{len(store.query(registry.OUTBOX)) + 1:06d}",
        "recipient_email": recipient_email,
        "event_kind": event_kind,
        "body": body,
        "created_at": created_at,
        "delivered": False,
    }
    store.put(registry.OUTBOX, document)
    return document


class DeliveryAdapter(Protocol):
    def deliver(self, record: dict) -> None:
        """Send one notification; raise to leave it queued."""


class SmtpDeliveryAdapter:
    """Optional real delivery over SMTP; constructed only when configured."""

    def __init__(self, host: str, port: int, sender: str):
        self.host = host
        self.port = port
        self.sender = sender

    def deliver(self, record: dict) -> None:
        message = EmailMessage()
        message["From"] = self.sender
        message["To"] = record["recipient_email"]
        message["Subject"] = record["event_kind"].replace("_", " ").title()
        message.set_content(record["body"])
        with smtplib.SMTP(self.host, self.port, timeout=10) as client:
            client.send_message(message)


def drain(store: registry.MemoryStore, adapter: DeliveryAdapter) -> int:
    """Deliver everything pending; records that fail stay undelivered."""
    delivered = 0
    for record in store.query(registry.OUTBOX, {"delivered": False}):
        try:
            adapter.deliver(record)
        except Exception:
            continue
        record["delivered"] = True
        store.put(registry.OUTBOX, record)
        delivered += 1
    return delivered
