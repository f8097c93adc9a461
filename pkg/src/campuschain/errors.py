"""Error and verdict types shared across the package.

State-changing operations raise DomainError with a stable machine-readable
code; pure validation paths return a Verdict instead of raising, so callers
can branch without exception plumbing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class DomainError(Exception):
    """An operation was rejected; `code` is stable, `details` structured."""

    def __init__(self, code: str, message: str = "", **details: Any):
        super().__init__(message or code)
        self.code = code
        self.message = message or code
        self.details = details

    def __repr__(self) -> str:  # pragma: no cover
        return f"DomainError({self.code!r}, {self.message!r})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validation check. Falsy iff rejected."""

    ok: bool
    code: str | None = None
    detail: str = ""
    height: int | None = None  # failing block height, for chain-level checks

    def __bool__(self) -> bool:
        return self.ok


ACCEPT = Verdict(True)


def reject(code: str, detail: str = "", height: int | None = None) -> Verdict:
    return Verdict(False, code, detail, height)
