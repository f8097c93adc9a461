"""Temporary campus positions: postings, the allocation lottery, ratings, wages.

Allocation runs in two regimes. While fewer than ten distinct students have
ever been rated for a position type, history is too thin to mean anything
and the winner is drawn uniformly. Once the type is warmed up, each
applicant's chance is their rating weight mixed with a floor of randomness:

    p_i = (1 - epsilon) * w_i / sum(w) + epsilon / n

with epsilon fixed at 0.20, so a perfect rating helps but never locks
others out. Probabilities are computed in exact rational arithmetic and the
draw itself comes from a seedable generator, which makes every allocation
reproducible from its audit record.

A student with no ratings yet competes with a default weight of 9; the
default is a stand-in, never data, and is excluded from any stored average.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import wallet
from .errors import DomainError
from .ledger import Transaction, make_mint
from .research import quantize
from .rng import SplitMix64

EPSILON = Fraction(1, 5)
DEFAULT_RATING = Decimal(9)
COLD_START_THRESHOLD = 10
WEEKLY_HOUR_CAP = Decimal(10)
QUARTER_HOUR = Decimal("0.25")

POSTING_OPEN = "OPEN"
POSTING_ASSIGNED = "ASSIGNED"
POSTING_COMPLETED = "COMPLETED"

ASSIGNMENT_ACTIVE = "ACTIVE"
ASSIGNMENT_COMPLETED = "COMPLETED"


@dataclass
class PositionPosting:
    position_id: str
    supervisor_id: str
    position_type: str
    hourly_rate: int
    weekly_hour_cap: Decimal = WEEKLY_HOUR_CAP
    status: str = POSTING_OPEN
    applicant_ids: list[str] = field(default_factory=list)
    description: str = ""
    created_at: int = 0

    def __post_init__(self):
        if self.hourly_rate < 1:
            raise DomainError("BAD_POSTING", "hourly rate must be at least 1 coin")
        if not Decimal(0) < self.weekly_hour_cap <= WEEKLY_HOUR_CAP:
            raise DomainError(
                "BAD_POSTING", f"weekly hour cap must be in (0, {WEEKLY_HOUR_CAP}]"
            )

    def to_json(self) -> dict[str, Any]:
        return {
            "position_id": self.position_id,
            "supervisor_id": self.supervisor_id,
            "position_type": self.position_type,
            "hourly_rate": self.hourly_rate,
            "weekly_hour_cap": str(self.weekly_hour_cap),
            "status": self.status,
            "applicant_ids": list(self.applicant_ids),
            "description": self.description,
            "created_at": self.created_at,
        }


@dataclass(frozen=True)
class Application:
    application_id: str
    position_id: str
    student_id: str
    applied_at: int

    def to_json(self) -> dict[str, Any]:
        return {
            "application_id": self.application_id,
            "position_id": self.position_id,
            "student_id": self.student_id,
            "applied_at": self.applied_at,
        }


@dataclass(frozen=True)
class RatingRecord:
    student_id: str
    position_id: str
    position_type: str
    rating: int
    rated_by: str
    rated_at: int

    def __post_init__(self):
        if isinstance(self.rating, bool) or not isinstance(self.rating, int) or not (
            1 <= self.rating <= 10
        ):
            raise DomainError("OUT_OF_RANGE", "rating must be an integer in [1, 10]")

    def to_json(self) -> dict[str, Any]:
        return {
            "student_id": self.student_id,
            "position_id": self.position_id,
            "position_type": self.position_type,
            "rating": self.rating,
            "rated_by": self.rated_by,
            "rated_at": self.rated_at,
        }


@dataclass(frozen=True)
class Assignment:
    """A filled posting: who works it, under which terms, since when."""

    assignment_id: str
    position_id: str
    student_id: str
    supervisor_id: str
    position_type: str
    hourly_rate: int
    weekly_hour_cap: Decimal
    started_at: int
    status: str = ASSIGNMENT_ACTIVE

    def to_json(self) -> dict[str, Any]:
        return {
            "assignment_id": self.assignment_id,
            "position_id": self.position_id,
            "student_id": self.student_id,
            "supervisor_id": self.supervisor_id,
            "position_type": self.position_type,
            "hourly_rate": self.hourly_rate,
            "weekly_hour_cap": str(self.weekly_hour_cap),
            "started_at": self.started_at,
            "status": self.status,
        }


@dataclass(frozen=True)
class Timesheet:
    assignment_id: str
    week_start: str  # ISO date of the Monday the sheet covers
    hours: Decimal

    def __post_init__(self):
        try:
            date.fromisoformat(self.week_start)
        except (TypeError, ValueError):
            raise DomainError("BAD_TIMESHEET", "week_start must be an ISO date")
        if self.hours <= 0 or self.hours % QUARTER_HOUR != 0:
            raise DomainError(
                "BAD_TIMESHEET", "hours must be a positive multiple of 0.25"
            )

    def to_json(self) -> dict[str, Any]:
        return {
            "assignment_id": self.assignment_id,
            "week_start": self.week_start,
            "hours": str(self.hours),
        }


def effective_rating(student_id: str, history: Iterable[RatingRecord]) -> Decimal:
    """Mean received rating, or the default 9 for a student with none.

    The default applies only when the history is empty; a single real
    rating replaces it entirely rather than being averaged with it.
    """
    ratings = [r.rating for r in history if r.student_id == student_id]
    if not ratings:
        return DEFAULT_RATING
    return quantize(Decimal(sum(ratings)) / Decimal(len(ratings)))


def is_cold_start(position_type: str, history: Iterable[RatingRecord]) -> bool:
    """True until ten distinct students have been rated for this type."""
    rated = {r.student_id for r in history if r.position_type == position_type}
    return len(rated) < COLD_START_THRESHOLD


def selection_probabilities(
    applicants: Sequence[str], history: Sequence[RatingRecord]
) -> dict[str, Fraction]:
    """Exact warm-mode probabilities; they sum to 1 by construction."""
    weights = {
        student: Fraction(effective_rating(student, history)) for student in applicants
    }
    total = sum(weights.values())
    n = len(applicants)
    return {
        student: (1 - EPSILON) * weight / total + EPSILON / n
        for student, weight in weights.items()
    }


@dataclass(frozen=True)
class AllocationResult:
    """Audit record of one draw; enough to replay and verify the outcome."""

    position_id: str
    winner: str
    cold_start: bool
    seed: int
    applicants: tuple[str, ...]
    probabilities: dict[str, str]  # exact fractions, rendered as "num/den"

    def to_json(self) -> dict[str, Any]:
        return {
            "position_id": self.position_id,
            "winner": self.winner,
            "cold_start": self.cold_start,
            "seed": self.seed,
            "applicants": list(self.applicants),
            "probabilities": dict(self.probabilities),
        }


def allocate(
    posting: PositionPosting,
    applicants: Sequence[str],
    history: Sequence[RatingRecord],
    seed: int,
) -> AllocationResult:
    """Draw a winner for the posting and mark it assigned."""
    if posting.status != POSTING_OPEN:
        raise DomainError(
            "POSTING_NOT_OPEN", f"posting {posting.position_id} is {posting.status}"
        )
    if not applicants:
        raise DomainError("NO_APPLICANTS", "cannot allocate without applicants")
    rng = SplitMix64(seed)
    if is_cold_start(posting.position_type, history):
        cold = True
        winner = applicants[rng.below(len(applicants))]
        probabilities = {a: Fraction(1, len(applicants)) for a in applicants}
    else:
        cold = False
        type_history = [r for r in history if r.position_type == posting.position_type]
        probabilities = selection_probabilities(applicants, type_history)
        # Inverse-CDF draw: the 53-bit uniform converts to a Fraction
        # exactly, so the comparison against cumulative weights is exact.
        u = Fraction(rng.random())
        cumulative = Fraction(0)
        winner = applicants[-1]
        for student in applicants:
            cumulative += probabilities[student]
            if u < cumulative:
                winner = student
                break
    posting.status = POSTING_ASSIGNED
    return AllocationResult(
        position_id=posting.position_id,
        winner=winner,
        cold_start=cold,
        seed=seed,
        applicants=tuple(applicants),
        probabilities={s: str(p) for s, p in probabilities.items()},
    )


def record_rating(
    assignment: Assignment,
    rating: int,
    supervisor_id: str,
    rated_at: int,
    existing: Iterable[RatingRecord] = (),
) -> RatingRecord:
    """Rate a completed assignment; one rating per assignment, supervisor only."""
    if supervisor_id != assignment.supervisor_id:
        raise DomainError(
            "NOT_SUPERVISOR", f"{supervisor_id} does not supervise this assignment"
        )
    if assignment.status != ASSIGNMENT_COMPLETED:
        raise DomainError("INACTIVE_ASSIGNMENT", "only completed assignments are rated")
    for record in existing:
        if record.position_id == assignment.position_id and (
            record.student_id == assignment.student_id
        ):
            raise DomainError("ALREADY_RATED", "this assignment already has a rating")
    return RatingRecord(
        student_id=assignment.student_id,
        position_id=assignment.position_id,
        position_type=assignment.position_type,
        rating=rating,
        rated_by=supervisor_id,
        rated_at=rated_at,
    )


def wage_memo(assignment_id: str, week_start: str) -> str:
    return f"wage:{assignment_id}:{week_start}"


def compute_payout(timesheet: Timesheet, posting_cap: Decimal, hourly_rate: int) -> int:
    """Coins owed for one week: hours times rate, floored to whole coins."""
    if timesheet.hours > posting_cap:
        raise DomainError(
            "HOURS_EXCEED_CAP",
            f"{timesheet.hours} hours exceeds the weekly cap of {posting_cap}",
        )
    return int(timesheet.hours * Decimal(hourly_rate))


def make_wage_mint(
    keypair: wallet.KeyPair,
    student_wallet: str,
    timesheet: Timesheet,
    assignment: Assignment,
    nonce: int,
    timestamp: int,
) -> Transaction:
    """Signed wage issuance for an active assignment's weekly timesheet."""
    if assignment.status != ASSIGNMENT_ACTIVE:
        raise DomainError("INACTIVE_ASSIGNMENT", "wages accrue only while active")
    amount = compute_payout(timesheet, assignment.weekly_hour_cap, assignment.hourly_rate)
    return make_mint(
        keypair,
        to=student_wallet,
        amount=amount,
        nonce=nonce,
        timestamp=timestamp,
        memo=wage_memo(timesheet.assignment_id, timesheet.week_start),
    )
