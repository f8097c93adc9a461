"""Campus service: every use case, wired from registry to ledger.

This layer owns identity (bearer tokens to principals), enforces who may
act on what, keeps registry documents and chain transactions in step, and
leaves an audit trail: each coin-moving action records exactly one ledger
event whose memo matches the transaction it produced, which is what makes
end-to-end reconciliation a mechanical check.

Pure domain rules live in their own modules; everything here is the glue
the REST layer calls into.
"""
from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from typing import Any, Callable, Iterable, Mapping

from . import economy, notify, positions, registry, research
from .errors import DomainError
from .ledger import Block, Transaction
from .node import Node

ROLES = ("STUDENT", "FACULTY", "SUPERVISOR", "VALIDATOR")


@dataclass(frozen=True)
class Principal:
    subject_id: str
    role: str
    token: str


def _new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


def _decimal(value: Any, what: str) -> Decimal:
    """Parse client-supplied numbers; floats go through str to keep digits."""
    try:
        return Decimal(str(value))
    except InvalidOperation:
        raise DomainError("SCHEMA_VIOLATION", f"{what} is not a valid decimal")


class CampusService:
    def __init__(
        self,
        store: registry.MemoryStore,
        node: Node,
        accounts: Iterable[Mapping[str, Any]] = (),
        award_schedule: Mapping[str, int] | None = None,
        award_budget: int | None = None,
        auto_produce: bool = True,
        clock: Callable[[], int] | None = None,
    ):
        self.store = store
        self.node = node
        self.award_schedule = dict(award_schedule or research.DEFAULT_AWARD_SCHEDULE)
        self.award_budget = award_budget
        self.auto_produce = auto_produce
        self._clock = clock or (lambda: int(time.time()))
        self._tokens: dict[str, dict[str, Any]] = {}
        for account in accounts:
            self.add_account(**dict(account))

    def _now(self) -> int:
        return self._clock()

    def _produce(self) -> Block | None:
        if self.auto_produce:
            return self.node.maybe_produce()
        return None

    # -- identity -----------------------------------------------------------

    def add_account(
        self,
        subject_id: str,
        role: str,
        token: str,
        expires_at: int | None = None,
        **_extra: Any,
    ) -> None:
        if role not in ROLES:
            raise DomainError("SCHEMA_VIOLATION", f"unknown role {role!r}")
        self._tokens[token] = {
            "subject_id": subject_id,
            "role": role,
            "expires_at": expires_at,
        }

    def authenticate(self, token: str) -> Principal:
        entry = self._tokens.get(token)
        if entry is None:
            raise DomainError("UNAUTHENTICATED", "unknown token")
        expires = entry["expires_at"]
        if expires is not None and self._now() > expires:
            raise DomainError("EXPIRED_TOKEN", "token has expired")
        return Principal(subject_id=entry["subject_id"], role=entry["role"], token=token)

    def login(self, token: str) -> dict[str, Any]:
        principal = self.authenticate(token)
        return {
            "subject_id": principal.subject_id,
            "role": principal.role,
            "wallet_address": self._wallet_of(principal.subject_id),
        }

    def _person(self, subject_id: str) -> tuple[str, dict] | None:
        for collection in (registry.STUDENTS, registry.FACULTY, registry.SUPERVISORS):
            doc = self.store.get(collection, subject_id)
            if doc is not None:
                return collection, doc
        return None

    def _wallet_of(self, subject_id: str) -> str | None:
        found = self._person(subject_id)
        if found is None:
            return None
        return found[1].get("wallet_address")

    def _email_of(self, subject_id: str) -> str | None:
        found = self._person(subject_id)
        if found is None:
            return None
        return found[1].get("email")

    # -- registration (bootstrap/admin surface, not a public endpoint) -------

    def register_student(
        self, student_id: str, name: str, email: str, wallet_address: str,
        enrolled: bool = True,
    ) -> dict:
        doc = {
            "student_id": student_id,
            "name": name,
            "email": email,
            "wallet_address": wallet_address,
            "enrolled": enrolled,
        }
        self.store.put(registry.STUDENTS, doc)
        return doc

    def register_faculty(
        self, faculty_id: str, name: str, email: str, wallet_address: str | None = None
    ) -> dict:
        doc = {
            "faculty_id": faculty_id,
            "name": name,
            "email": email,
            "wallet_address": wallet_address,
        }
        self.store.put(registry.FACULTY, doc)
        return doc

    def register_supervisor(
        self, supervisor_id: str, name: str, email: str, wallet_address: str | None = None
    ) -> dict:
        doc = {
            "supervisor_id": supervisor_id,
            "name": name,
            "email": email,
            "wallet_address": wallet_address,
        }
        self.store.put(registry.SUPERVISORS, doc)
        return doc

    # -- plumbing -------------------------------------------------------------

    def _record_event(self, kind: str, memo: str, tx_id: str, **details: Any) -> dict:
        doc = {
            "event_id": _new_id("evt"),
            "kind": kind,
            "memo": memo,
            "tx_id": tx_id,
            "created_at": self._now(),
            "details": details,
        }
        self.store.put(registry.LEDGER_EVENTS, doc)
        return doc

    def _notify(self, subject_id: str, event_kind: str, body: str) -> None:
        email = self._email_of(subject_id)
        if email is None:
            raise DomainError(
                "UNKNOWN_RECIPIENT", f"{subject_id} has no email on file"
            )
        notify.enqueue(self.store, email, event_kind, body, self._now())

    # -- research lifecycle ----------------------------------------------------

    def create_project(
        self, principal: Principal, topic: str, student_ids: list[str]
    ) -> dict:
        if self.store.get(registry.FACULTY, principal.subject_id) is None:
            raise DomainError("NOT_FOUND", f"no faculty record for {principal.subject_id}")
        doc = {
            "project_id": _new_id("prj"),
            "topic": topic,
            "faculty_id": principal.subject_id,
            "student_ids": list(student_ids),
            "approved": True,  # creating the project IS the faculty's approval
            "publications": [],
        }
        self.store.put(registry.PROJECTS, doc)
        return doc

    def _project_or_404(self, project_id: str) -> dict:
        doc = self.store.get(registry.PROJECTS, project_id)
        if doc is None:
            raise DomainError("NOT_FOUND", f"no project {project_id}")
        return doc

    def submit_report(
        self, principal: Principal, project_id: str, content_ref: str
    ) -> dict:
        project = self._project_or_404(project_id)
        if principal.subject_id not in project["student_ids"]:
            raise DomainError(
                "NOT_PROJECT_MEMBER", f"{principal.subject_id} is not on this project"
            )
        if not project["approved"]:
            raise DomainError("PROJECT_NOT_APPROVED", "project awaits faculty approval")
        doc = {
            "report_id": _new_id("rpt"),
            "project_id": project_id,
            "submitted_at": self._now(),
            "content_ref": content_ref,
            "grade": None,
            "feedback": "",
        }
        self.store.put(registry.REPORTS, doc)
        return doc

    def grade_report(
        self,
        principal: Principal,
        report_id: str,
        novelty: int,
        effort: int,
        relevance: int,
        feedback: str = "",
    ) -> dict:
        doc = self.store.get(registry.REPORTS, report_id)
        if doc is None:
            raise DomainError("NOT_FOUND", f"no report {report_id}")
        project = self._project_or_404(doc["project_id"])
        if project["faculty_id"] != principal.subject_id:
            raise DomainError(
                "NOT_PROJECT_FACULTY", "only the project's faculty may grade"
            )
        if doc["grade"] is not None:
            raise DomainError("ALREADY_GRADED", f"report {report_id} already graded")
        grade = research.Grade(novelty=novelty, effort=effort, relevance=relevance)
        doc["grade"] = grade.to_json()
        doc["feedback"] = feedback
        self.store.put(registry.REPORTS, doc)
        for student_id in project["student_ids"]:
            self._notify(
                student_id,
                "REPORT_GRADED",
                f"Report {report_id} graded: {grade.score()} ({feedback})".strip(),
            )
        return doc

    def add_publication(
        self,
        principal: Principal,
        project_id: str,
        journal_name: str,
        impact_factor: Any,
        n_authors: int,
    ) -> dict:
        project = self._project_or_404(project_id)
        if principal.subject_id not in project["student_ids"]:
            raise DomainError(
                "NOT_PROJECT_MEMBER", f"{principal.subject_id} is not on this project"
            )
        factor = _decimal(impact_factor, "impact_factor")
        pub = research.Publication(
            journal_name=journal_name, impact_factor=factor, n_authors=n_authors
        )
        record = pub.to_json()
        record["publication_id"] = _new_id("pub")
        record["submitted_by"] = principal.subject_id
        project["publications"].append(record)
        self.store.put(registry.PROJECTS, project)
        return record

    def _find_publication(self, publication_id: str) -> tuple[dict, dict]:
        for project in self.store.query(registry.PROJECTS):
            for record in project.get("publications", []):
                if record["publication_id"] == publication_id:
                    return project, record
        raise DomainError("NOT_FOUND", f"no publication {publication_id}")

    def verify_publication(self, principal: Principal, publication_id: str) -> dict:
        project, record = self._find_publication(publication_id)
        if project["faculty_id"] != principal.subject_id:
            raise DomainError(
                "NOT_PROJECT_FACULTY", "only the project's faculty may verify"
            )
        if record["verified"]:
            raise DomainError("ALREADY_VERIFIED", "publication is already verified")
        record["verified"] = True
        self.store.put(registry.PROJECTS, project)
        for student_id in project["student_ids"]:
            self._notify(
                student_id,
                "PUBLICATION_VERIFIED",
                f"Publication in {record['journal_name']} verified",
            )
        return record

    # -- ranklists and awards ----------------------------------------------------

    def _research_profiles(self) -> list[research.StudentResearchProfile]:
        students = self.store.query(registry.STUDENTS, {"enrolled": True})
        projects = self.store.query(registry.PROJECTS)
        reports = self.store.query(registry.REPORTS)
        scores_by_project: dict[str, list[Decimal]] = {}
        for report in reports:
            if report["grade"] is not None:
                grade = research.Grade(**report["grade"])
                scores_by_project.setdefault(report["project_id"], []).append(
                    grade.score()
                )
        rating_by_project = {
            pid: research.mentor_rating(scores)
            for pid, scores in scores_by_project.items()
        }
        profiles = []
        for student in students:
            sid = student["student_id"]
            own = [p for p in projects if sid in p["student_ids"]]
            ratings = tuple(
                rating_by_project[p["project_id"]]
                for p in own
                if p["project_id"] in rating_by_project
            )
            pubs = tuple(
                research.Publication(
                    journal_name=record["journal_name"],
                    impact_factor=Decimal(record["impact_factor"]),
                    n_authors=record["n_authors"],
                    verified=record["verified"],
                )
                for p in own
                for record in p.get("publications", [])
            )
            profiles.append(
                research.StudentResearchProfile(
                    student_id=sid, project_ratings=ratings, publications=pubs
                )
            )
        return profiles

    def ranklists(self) -> dict[str, Any]:
        mentor, published = research.build_ranklists(self._research_profiles())
        return {mentor.kind: mentor.to_json(), published.kind: published.to_json()}

    def award_ranklists(
        self,
        principal: Principal,
        period: str,
        schedule: Mapping[str, int] | None = None,
        budget: int | None = None,
    ) -> dict[str, Any]:
        """Mint the period's rewards for both ranklists in one atomic run."""
        schedule = dict(schedule or self.award_schedule)
        if "default" not in schedule:
            raise DomainError("SCHEMA_VIOLATION", "schedule needs a 'default' amount")
        budget = budget if budget is not None else self.award_budget
        mentor, published = research.build_ranklists(self._research_profiles())
        wallets = {
            doc["student_id"]: doc["wallet_address"]
            for doc in self.store.query(registry.STUDENTS)
        }
        minted: list[dict[str, Any]] = []
        timestamp = self._now()
        for ranklist in (mentor, published):
            start = self.node.reserve_mint_nonces(len(ranklist.entries))
            txs = research.award_for_ranklist(
                ranklist,
                schedule,
                period,
                wallets,
                self.node.validator_key,
                start_nonce=start,
                timestamp=timestamp,
                budget=budget,
            )
            for entry, tx in zip(ranklist.entries, txs):
                self.node.submit(tx)
                self._record_event(
                    "REWARD",
                    tx.memo,
                    tx.tx_id,
                    student_id=entry.student_id,
                    ranklist=ranklist.kind,
                    rank=entry.rank,
                    amount=tx.amount,
                    period=period,
                )
                self._notify(
                    entry.student_id,
                    "REWARD_PAID",
                    f"Rank {entry.rank} on {ranklist.kind}: {tx.amount} coins",
                )
                minted.append(
                    {
                        "student_id": entry.student_id,
                        "ranklist": ranklist.kind,
                        "rank": entry.rank,
                        "amount": tx.amount,
                        "tx_id": tx.tx_id,
                    }
                )
        self._produce()
        return {"period": period, "minted": minted, "count": len(minted)}

    # -- positions ------------------------------------------------------------

    def create_position(
        self,
        principal: Principal,
        position_type: str,
        hourly_rate: int,
        weekly_hour_cap: Any = "10",
        description: str = "",
    ) -> dict:
        if self.store.get(registry.SUPERVISORS, principal.subject_id) is None:
            raise DomainError(
                "NOT_FOUND", f"no supervisor record for {principal.subject_id}"
            )
        posting = positions.PositionPosting(
            position_id=_new_id("pos"),
            supervisor_id=principal.subject_id,
            position_type=position_type,
            hourly_rate=hourly_rate,
            weekly_hour_cap=_decimal(weekly_hour_cap, "weekly_hour_cap"),
            description=description,
            created_at=self._now(),
        )
        doc = posting.to_json()
        self.store.put(registry.POSITIONS, doc)
        for student in self.store.query(registry.STUDENTS, {"enrolled": True}):
            self._notify(
                student["student_id"],
                "JOB_POSTED",
                f"New {position_type} position at {hourly_rate} coins/hour",
            )
        return doc

    def list_positions(self, status: str | None = None) -> list[dict]:
        filters = {"status": status} if status else None
        return self.store.query(registry.POSITIONS, filters)

    def _position_or_404(self, position_id: str) -> dict:
        doc = self.store.get(registry.POSITIONS, position_id)
        if doc is None:
            raise DomainError("NOT_FOUND", f"no position {position_id}")
        return doc

    def apply_to_position(self, principal: Principal, position_id: str) -> dict:
        posting = self._position_or_404(position_id)
        if posting["status"] != positions.POSTING_OPEN:
            raise DomainError(
                "POSTING_NOT_OPEN", f"position {position_id} is {posting['status']}"
            )
        application = positions.Application(
            application_id=_new_id("app"),
            position_id=position_id,
            student_id=principal.subject_id,
            applied_at=self._now(),
        )
        record = application.to_json()
        record["record_id"] = record.pop("application_id")
        record["kind"] = "application"
        self.store.put(registry.APPLICATION_HISTORY, record)
        posting["applicant_ids"].append(principal.subject_id)
        self.store.put(registry.POSITIONS, posting)
        return record

    def _rating_history(self) -> list[positions.RatingRecord]:
        return [
            positions.RatingRecord(
                student_id=doc["student_id"],
                position_id=doc["position_id"],
                position_type=doc["position_type"],
                rating=doc["rating"],
                rated_by=doc["rated_by"],
                rated_at=doc["rated_at"],
            )
            for doc in self.store.query(
                registry.APPLICATION_HISTORY, {"kind": "rating"}
            )
        ]

    def allocate_position(self, principal: Principal, position_id: str) -> dict:
        doc = self._position_or_404(position_id)
        if doc["supervisor_id"] != principal.subject_id:
            raise DomainError("NOT_SUPERVISOR", "only the posting supervisor allocates")
        posting = positions.PositionPosting(
            position_id=doc["position_id"],
            supervisor_id=doc["supervisor_id"],
            position_type=doc["position_type"],
            hourly_rate=doc["hourly_rate"],
            weekly_hour_cap=Decimal(doc["weekly_hour_cap"]),
            status=doc["status"],
            applicant_ids=list(doc["applicant_ids"]),
            description=doc.get("description", ""),
            created_at=doc.get("created_at", 0),
        )
        result = positions.allocate(
            posting,
            posting.applicant_ids,
            self._rating_history(),
            seed=self.node.next_allocation_seed(),
        )
        doc["status"] = posting.status
        self.store.put(registry.POSITIONS, doc)
        assignment = positions.Assignment(
            assignment_id=_new_id("asg"),
            position_id=position_id,
            student_id=result.winner,
            supervisor_id=doc["supervisor_id"],
            position_type=doc["position_type"],
            hourly_rate=doc["hourly_rate"],
            weekly_hour_cap=Decimal(doc["weekly_hour_cap"]),
            started_at=self._now(),
        )
        record = assignment.to_json()
        record["record_id"] = record.pop("assignment_id")
        record["kind"] = "assignment"
        record["allocation"] = result.to_json()
        self.store.put(registry.APPLICATION_HISTORY, record)
        self._notify(
            result.winner, "JOB_ASSIGNED", f"You got the {doc['position_type']} position"
        )
        # Callers address assignments by id in follow-up routes, so present
        # the stored record_id under that name.
        response = dict(record)
        response["assignment_id"] = response.pop("record_id")
        return response

    def _assignment_or_404(self, assignment_id: str) -> dict:
        doc = self.store.get(registry.APPLICATION_HISTORY, assignment_id)
        if doc is None or doc.get("kind") != "assignment":
            raise DomainError("NOT_FOUND", f"no assignment {assignment_id}")
        return doc

    def _assignment_from_doc(self, doc: dict) -> positions.Assignment:
        return positions.Assignment(
            assignment_id=doc["record_id"],
            position_id=doc["position_id"],
            student_id=doc["student_id"],
            supervisor_id=doc["supervisor_id"],
            position_type=doc["position_type"],
            hourly_rate=doc["hourly_rate"],
            weekly_hour_cap=Decimal(doc["weekly_hour_cap"]),
            started_at=doc["started_at"],
            status=doc["status"],
        )

    def submit_timesheet(
        self, principal: Principal, assignment_id: str, week_start: str, hours: Any
    ) -> dict:
        doc = self._assignment_or_404(assignment_id)
        if doc["student_id"] != principal.subject_id:
            raise DomainError("FORBIDDEN", "not your assignment")
        assignment = self._assignment_from_doc(doc)
        timesheet = positions.Timesheet(
            assignment_id=assignment_id,
            week_start=week_start,
            hours=_decimal(hours, "hours"),
        )
        student = self.store.get(registry.STUDENTS, doc["student_id"])
        tx = positions.make_wage_mint(
            self.node.validator_key,
            student["wallet_address"],
            timesheet,
            assignment,
            nonce=self.node.reserve_mint_nonces(1),
            timestamp=self._now(),
        )
        record = timesheet.to_json()
        record["record_id"] = _new_id("tsh")
        record["kind"] = "timesheet"
        record["paid_tx_id"] = tx.tx_id
        self.store.put(registry.APPLICATION_HISTORY, record)
        self.node.submit(tx)
        self._record_event(
            "WAGE",
            tx.memo,
            tx.tx_id,
            assignment_id=assignment_id,
            student_id=doc["student_id"],
            week_start=week_start,
            amount=tx.amount,
        )
        self._notify(
            doc["student_id"], "REWARD_PAID", f"Wages paid: {tx.amount} coins"
        )
        self._produce()
        return {"timesheet": record, "amount": tx.amount, "tx_id": tx.tx_id}

    def rate_assignment(
        self, principal: Principal, assignment_id: str, rating: int
    ) -> dict:
        doc = self._assignment_or_404(assignment_id)
        # Rating is the close-out act: it completes the assignment and
        # its posting, then records the score.
        assignment = self._assignment_from_doc(doc)
        completed = replace(assignment, status=positions.ASSIGNMENT_COMPLETED)
        record = positions.record_rating(
            completed,
            rating,
            supervisor_id=principal.subject_id,
            rated_at=self._now(),
            existing=self._rating_history(),
        )
        doc["status"] = positions.ASSIGNMENT_COMPLETED
        self.store.put(registry.APPLICATION_HISTORY, doc)
        posting = self._position_or_404(doc["position_id"])
        posting["status"] = positions.POSTING_COMPLETED
        self.store.put(registry.POSITIONS, posting)
        rating_doc = record.to_json()
        rating_doc["record_id"] = _new_id("rat")
        rating_doc["kind"] = "rating"
        self.store.put(registry.APPLICATION_HISTORY, rating_doc)
        self._notify(
            doc["student_id"], "RATING_RECEIVED", f"You were rated {rating}/10"
        )
        return rating_doc

    # -- campaigns --------------------------------------------------------------

    def create_campaign(
        self, principal: Principal, title: str, goal: int, description: str = ""
    ) -> dict:
        wallet_address = self._wallet_of(principal.subject_id)
        if wallet_address is None:
            raise DomainError(
                "UNKNOWN_BENEFICIARY",
                f"{principal.subject_id} has no wallet on record",
            )
        campaign = economy.create_campaign(
            beneficiary=wallet_address,
            goal=goal,
            title=title,
            campaign_id=_new_id("cmp"),
            description=description,
            created_at=self._now(),
        )
        doc = campaign.to_json()
        doc["beneficiary_id"] = principal.subject_id
        self.store.put(registry.CAMPAIGNS, doc)
        return doc

    def list_campaigns(self, status: str | None = None) -> list[dict]:
        filters = {"status": status} if status else None
        return self.store.query(registry.CAMPAIGNS, filters)

    def _submit_donation(self, tx: Transaction) -> dict:
        campaign_id = economy.parse_campaign_memo(tx.memo)
        doc = self.store.get(registry.CAMPAIGNS, campaign_id)
        if doc is None:
            raise DomainError("NOT_FOUND", f"no campaign {campaign_id}")
        campaign = economy.Campaign.from_json(doc)
        # A replayed donation was already admitted and counted; re-running
        # admission against the updated tally would wrongly report OVERSHOOT.
        already_known = self.node.tx_status(tx.tx_id) is not None
        if not already_known:
            verdict = economy.admit_donation(campaign, tx)
            if not verdict:
                raise DomainError(verdict.code, verdict.detail)
        response = self.node.submit(tx)
        if not already_known:
            economy.record_donation(campaign, tx.amount)
            doc.update(campaign.to_json())
            self.store.put(registry.CAMPAIGNS, doc)
            self._record_event(
                "DONATION",
                tx.memo,
                tx.tx_id,
                campaign_id=campaign.campaign_id,
                amount=tx.amount,
                donor=tx.sender,
            )
            beneficiary_id = doc.get("beneficiary_id")
            if beneficiary_id and self._email_of(beneficiary_id):
                status_note = (
                    "goal reached, campaign closed"
                    if campaign.status == economy.CAMPAIGN_CLOSED
                    else f"{campaign.raised}/{campaign.goal} raised"
                )
                self._notify(
                    beneficiary_id,
                    "CAMPAIGN_UPDATE",
                    f"Donation of {tx.amount}: {status_note}",
                )
        self._produce()
        status = self.node.tx_status(tx.tx_id) or response["status"]
        return {"campaign": doc, "tx_id": response["tx_id"], "status": status}

    def donate(self, campaign_id: str, tx_json: Mapping[str, Any]) -> dict:
        tx = Transaction.from_json(dict(tx_json))
        if economy.parse_campaign_memo(tx.memo) != campaign_id:
            raise DomainError(
                "BAD_DONATION", f"memo must be {economy.donation_memo(campaign_id)!r}"
            )
        return self._submit_donation(tx)

    # -- chain surface ------------------------------------------------------------

    def submit_transaction(self, tx_json: Mapping[str, Any]) -> dict:
        tx = Transaction.from_json(dict(tx_json))
        if economy.parse_campaign_memo(tx.memo) is not None:
            # Donations are policed no matter which door they come in.
            return self._submit_donation(tx)
        response = self.node.submit(tx)
        self._produce()
        status = self.node.tx_status(tx.tx_id) or response["status"]
        return {"tx_id": response["tx_id"], "status": status}

    def balance(self, address: str) -> dict:
        return {
            "address": address,
            "balance": self.node.state.balance(address),
            "nonce": self.node.state.next_nonce(address),
        }

    def chain_json(self) -> dict:
        return {
            "height": self.node.height,
            "blocks": [block.to_json() for block in self.node.chain],
        }

    def block_json(self, height: int) -> dict:
        block = self.node.block_at(height)
        if block is None:
            raise DomainError("NOT_FOUND", f"no block at height {height}")
        return block.to_json()

    def receive_peer_blocks(self, blocks_json: list[dict]) -> dict:
        blocks = [Block.from_json(item) for item in blocks_json]
        adopted, reason = self.node.receive_chain(blocks)
        return {"adopted": adopted, "reason": reason, "height": self.node.height}

    def outbox(self) -> list[dict]:
        return self.store.query(registry.OUTBOX)

    def events(self) -> list[dict]:
        return self.store.query(registry.LEDGER_EVENTS)
