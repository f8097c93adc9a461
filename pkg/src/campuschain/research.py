"""Research projects, grading, impact scoring, and rank-based coin awards.

Scores are computed with decimal arithmetic, quantized to four fractional
digits with round-half-up at every operation boundary, so every node and
every rerun produces bit-identical ranklists.

Students split into two ranklists: anyone with a verified publication is
ranked by impact score (the sum over publications of the journal's impact
factor divided by its author count), everyone else by the mean of their
mentors' report grades. A student never appears in both, which also means
nobody is rewarded twice in one period.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal, ROUND_HALF_UP
from typing import Any, Iterable, Mapping, Sequence

from . import wallet
from .errors import DomainError
from .ledger import Transaction, make_mint

FOUR_PLACES = Decimal("0.0001")
MENTOR_RATED = "MENTOR_RATED"
PUBLISHED = "PUBLISHED"
RANKLIST_KINDS = (MENTOR_RATED, PUBLISHED)

# Rank-to-coins map; ranks missing from the map fall back to "default".
DEFAULT_AWARD_SCHEDULE: dict[str, int] = {"1": 100, "2": 60, "3": 30, "default": 10}


def quantize(value: Decimal) -> Decimal:
    return value.quantize(FOUR_PLACES, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class Grade:
    """Faculty marks for one report, each criterion on an integer 0-10 scale."""

    novelty: int
    effort: int
    relevance: int

    def __post_init__(self):
        for name in ("novelty", "effort", "relevance"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 10:
                raise DomainError(
                    "COMPONENT_OUT_OF_RANGE", f"{name} must be an integer in [0, 10]"
                )

    def score(self) -> Decimal:
        return quantize(
            Decimal(self.novelty + self.effort + self.relevance) / Decimal(3)
        )

    def to_json(self) -> dict[str, int]:
        return {
            "novelty": self.novelty,
            "effort": self.effort,
            "relevance": self.relevance,
        }


@dataclass(frozen=True)
class Publication:
    journal_name: str
    impact_factor: Decimal
    n_authors: int
    verified: bool = False

    def __post_init__(self):
        if self.n_authors < 1:
            raise DomainError("ZERO_AUTHORS", "a publication needs at least one author")
        if self.impact_factor < 0:
            raise DomainError("BAD_PUBLICATION", "impact factor cannot be negative")

    def to_json(self) -> dict[str, Any]:
        return {
            "journal_name": self.journal_name,
            "impact_factor": str(self.impact_factor),
            "n_authors": self.n_authors,
            "verified": self.verified,
        }


@dataclass(frozen=True)
class BiweeklyReport:
    report_id: str
    project_id: str
    submitted_at: int
    content_ref: str
    grade: Grade | None = None
    feedback: str = ""

    @property
    def graded(self) -> bool:
        return self.grade is not None


def grade_report(report: BiweeklyReport, grade: Grade, feedback: str = "") -> BiweeklyReport:
    """Attach a grade exactly once; grades are immutable afterwards."""
    if report.graded:
        raise DomainError("ALREADY_GRADED", f"report {report.report_id} already graded")
    return replace(report, grade=grade, feedback=feedback)


def mentor_rating(report_scores: Sequence[Decimal]) -> Decimal:
    """Mean of a project's graded report scores."""
    if not report_scores:
        raise DomainError("NO_GRADED_REPORTS", "cannot rate a project with no grades")
    return quantize(sum(report_scores, Decimal(0)) / Decimal(len(report_scores)))


def research_rating(pub: Publication) -> Decimal:
    """Per-publication credit: journal impact factor split across authors."""
    if not pub.verified:
        raise DomainError(
            "UNVERIFIED_PUBLICATION", f"{pub.journal_name} has not been verified"
        )
    return quantize(pub.impact_factor / Decimal(pub.n_authors))


def student_impact_score(pubs: Sequence[Publication]) -> Decimal:
    """Sum of research ratings over verified publications; empty sum is 0."""
    total = Decimal(0)
    for pub in pubs:
        total += research_rating(pub)
    return quantize(total)


@dataclass(frozen=True)
class RanklistEntry:
    student_id: str
    score: Decimal
    rank: int

    def to_json(self) -> dict[str, Any]:
        return {"student_id": self.student_id, "score": str(self.score), "rank": self.rank}


@dataclass(frozen=True)
class Ranklist:
    kind: str
    entries: tuple[RanklistEntry, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "entries": [e.to_json() for e in self.entries]}


@dataclass(frozen=True)
class StudentResearchProfile:
    """One student's scoring inputs for a period.

    project_ratings holds the mentor rating of each of the student's
    projects that has at least one graded report; publications is the raw
    list, verification is filtered here.
    """

    student_id: str
    project_ratings: tuple[Decimal, ...] = ()
    publications: tuple[Publication, ...] = ()

    def verified_publications(self) -> tuple[Publication, ...]:
        return tuple(p for p in self.publications if p.verified)


def _rank(scored: list[tuple[str, Decimal]]) -> tuple[RanklistEntry, ...]:
    """Competition ranking: ties share the smaller rank, the next rank skips."""
    scored.sort(key=lambda item: (-item[1], item[0]))
    entries: list[RanklistEntry] = []
    for position, (student_id, score) in enumerate(scored, start=1):
        if entries and score == entries[-1].score:
            rank = entries[-1].rank
        else:
            rank = position
        entries.append(RanklistEntry(student_id=student_id, score=score, rank=rank))
    return tuple(entries)


def build_ranklists(
    profiles: Iterable[StudentResearchProfile],
) -> tuple[Ranklist, Ranklist]:
    """Partition students into the two ranklists and rank each.

    Having any verified publication moves a student wholly onto the
    published list; everyone else is ranked by the mean of their project
    mentor ratings (no graded work scores 0, which still earns a rank).
    """
    mentor_scored: list[tuple[str, Decimal]] = []
    published_scored: list[tuple[str, Decimal]] = []
    for profile in profiles:
        verified = profile.verified_publications()
        if verified:
            published_scored.append(
                (profile.student_id, student_impact_score(verified))
            )
        elif profile.project_ratings:
            mean = sum(profile.project_ratings, Decimal(0)) / Decimal(
                len(profile.project_ratings)
            )
            mentor_scored.append((profile.student_id, quantize(mean)))
        else:
            mentor_scored.append((profile.student_id, quantize(Decimal(0))))
    return (
        Ranklist(kind=MENTOR_RATED, entries=_rank(mentor_scored)),
        Ranklist(kind=PUBLISHED, entries=_rank(published_scored)),
    )


def amount_for_rank(schedule: Mapping[str, int], rank: int) -> int:
    return schedule.get(str(rank), schedule["default"])


def reward_memo(kind: str, period: str) -> str:
    return f"reward:research:{kind}:{period}"


def award_for_ranklist(
    ranklist: Ranklist,
    schedule: Mapping[str, int],
    period: str,
    wallets: Mapping[str, str],
    keypair: wallet.KeyPair,
    start_nonce: int,
    timestamp: int,
    budget: int | None = None,
) -> list[Transaction]:
    """Mint one reward per entry; tied students each get the full rank amount."""
    amounts: list[tuple[str, str, int]] = []
    total = 0
    for entry in ranklist.entries:
        address = wallets.get(entry.student_id)
        if address is None:
            raise DomainError(
                "MISSING_WALLET",
                f"student {entry.student_id} has no wallet address",
                student_id=entry.student_id,
            )
        amount = amount_for_rank(schedule, entry.rank)
        amounts.append((entry.student_id, address, amount))
        total += amount
    if budget is not None and total > budget:
        raise DomainError(
            "BUDGET_EXCEEDED", f"award run needs {total}, budget is {budget}"
        )
    memo = reward_memo(ranklist.kind, period)
    return [
        make_mint(
            keypair,
            to=address,
            amount=amount,
            nonce=start_nonce + i,
            timestamp=timestamp,
            memo=memo,
        )
        for i, (_, address, amount) in enumerate(amounts)
    ]
