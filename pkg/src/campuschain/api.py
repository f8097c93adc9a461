"""REST surface over the campus service.

Every response body, success or error, is canonical JSON. Errors always
carry {code, message, details} so clients can branch on the code without
parsing prose. Role gates are enforced here; deeper ownership checks
(is this YOUR project?) live in the service layer.
"""
from __future__ import annotations

from typing import Any

from fastapi import Depends, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.security import HTTPAuthorizationCredentials, HTTPBearer
from pydantic import BaseModel

from . import canonical
from .errors import DomainError
from .service import CampusService, Principal

_STATUS_401 = {"UNAUTHENTICATED", "EXPIRED_TOKEN"}
_STATUS_403 = {
    "FORBIDDEN",
    "NOT_PROJECT_FACULTY",
    "NOT_PROJECT_MEMBER",
    "NOT_SUPERVISOR",
    "UNAUTHORIZED_MINT",
}
_STATUS_404 = {"NOT_FOUND"}
_STATUS_409 = {
    "ALREADY_GRADED",
    "ALREADY_VERIFIED",
    "ALREADY_RATED",
    "DUPLICATE_UNIQUE_KEY",
    "CAMPAIGN_CLOSED",
    "OVERSHOOT",
    "POSTING_NOT_OPEN",
    "PROJECT_NOT_APPROVED",
    "NOT_SCHEDULED",
    "BAD_NONCE",
    "INSUFFICIENT_BALANCE",
    "STILL_REFERENCED",
}


def status_for(code: str) -> int:
    if code in _STATUS_401:
        return 401
    if code in _STATUS_403:
        return 403
    if code in _STATUS_404:
        return 404
    if code in _STATUS_409:
        return 409
    return 400


class CanonicalJSONResponse(Response):
    media_type = "application/json"

    def render(self, content: Any) -> bytes:
        return canonical.encode(content)


class LoginBody(BaseModel):
    token: str


class ProjectBody(BaseModel):
    topic: str
    student_ids: list[str]


class ReportBody(BaseModel):
    content_ref: str


class GradeBody(BaseModel):
    novelty: int
    effort: int
    relevance: int
    feedback: str = ""


class PublicationBody(BaseModel):
    journal_name: str
    impact_factor: int | str | float
    n_authors: int


class AwardBody(BaseModel):
    period: str
    schedule: dict[str, int] | None = None
    budget: int | None = None


class PositionBody(BaseModel):
    position_type: str
    hourly_rate: int
    weekly_hour_cap: int | str | float = "10"
    description: str = ""


class TimesheetBody(BaseModel):
    week_start: str
    hours: int | str | float


class RateBody(BaseModel):
    rating: int


class CampaignBody(BaseModel):
    title: str
    goal: int
    description: str = ""


class PeerBlocksBody(BaseModel):
    blocks: list[dict]


def create_app(service: CampusService) -> FastAPI:
    app = FastAPI(
        title="campuschain",
        default_response_class=CanonicalJSONResponse,
        docs_url=None,
        redoc_url=None,
    )
    bearer = HTTPBearer(auto_error=False)

    def gate(*roles: str):
        def dependency(
            credentials: HTTPAuthorizationCredentials | None = Depends(bearer),
        ) -> Principal:
            if credentials is None:
                raise DomainError("UNAUTHENTICATED", "missing bearer token")
            principal = service.authenticate(credentials.credentials)
            if roles and principal.role not in roles:
                raise DomainError(
                    "FORBIDDEN", f"requires role {' or '.join(roles)}"
                )
            return principal

        return Depends(dependency)

    @app.exception_handler(DomainError)
    async def on_domain_error(request: Request, exc: DomainError):
        body = {"code": exc.code, "message": exc.message, "details": exc.details}
        return CanonicalJSONResponse(body, status_code=status_for(exc.code))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        problems = [
            {"at": [str(part) for part in error["loc"]], "message": error["msg"]}
            for error in exc.errors()
        ]
        body = {
            "code": "VALIDATION_ERROR",
            "message": "request body does not match the expected shape",
            "details": {"problems": problems},
        }
        return CanonicalJSONResponse(body, status_code=400)

    # -- auth and wallets -------------------------------------------------

    @app.post("/auth/login")
    def login(body: LoginBody):
        return service.login(body.token)

    @app.get("/wallets/{address}/balance")
    def balance(address: str):
        return service.balance(address)

    # -- chain ---------------------------------------------------------------

    @app.post("/transactions")
    def submit_transaction(body: dict):
        return service.submit_transaction(body)

    @app.get("/chain")
    def chain():
        return service.chain_json()

    @app.get("/blocks/{height}")
    def block(height: int):
        return service.block_json(height)

    @app.post("/peer/blocks")
    def peer_blocks(body: PeerBlocksBody, principal: Principal = gate("VALIDATOR")):
        return service.receive_peer_blocks(body.blocks)

    # -- research ---------------------------------------------------------------

    @app.post("/projects")
    def create_project(body: ProjectBody, principal: Principal = gate("FACULTY")):
        return service.create_project(principal, body.topic, body.student_ids)

    @app.post("/projects/{project_id}/reports")
    def submit_report(
        project_id: str, body: ReportBody, principal: Principal = gate("STUDENT")
    ):
        return service.submit_report(principal, project_id, body.content_ref)

    @app.post("/reports/{report_id}/grade")
    def grade_report(
        report_id: str, body: GradeBody, principal: Principal = gate("FACULTY")
    ):
        return service.grade_report(
            principal,
            report_id,
            novelty=body.novelty,
            effort=body.effort,
            relevance=body.relevance,
            feedback=body.feedback,
        )

    @app.post("/projects/{project_id}/publications")
    def add_publication(
        project_id: str, body: PublicationBody, principal: Principal = gate("STUDENT")
    ):
        return service.add_publication(
            principal,
            project_id,
            journal_name=body.journal_name,
            impact_factor=body.impact_factor,
            n_authors=body.n_authors,
        )

    @app.post("/publications/{publication_id}/verify")
    def verify_publication(
        publication_id: str, principal: Principal = gate("FACULTY")
    ):
        return service.verify_publication(principal, publication_id)

    @app.get("/ranklists")
    def ranklists():
        return service.ranklists()

    @app.post("/ranklists/award")
    def award(body: AwardBody, principal: Principal = gate("VALIDATOR")):
        return service.award_ranklists(
            principal, body.period, schedule=body.schedule, budget=body.budget
        )

    # -- positions -----------------------------------------------------------

    @app.post("/positions")
    def create_position(body: PositionBody, principal: Principal = gate("SUPERVISOR")):
        return service.create_position(
            principal,
            position_type=body.position_type,
            hourly_rate=body.hourly_rate,
            weekly_hour_cap=body.weekly_hour_cap,
            description=body.description,
        )

    @app.get("/positions")
    def list_positions(status: str | None = None):
        return {"positions": service.list_positions(status)}

    @app.post("/positions/{position_id}/apply")
    def apply_to_position(position_id: str, principal: Principal = gate("STUDENT")):
        return service.apply_to_position(principal, position_id)

    @app.post("/positions/{position_id}/allocate")
    def allocate_position(
        position_id: str, principal: Principal = gate("SUPERVISOR")
    ):
        return service.allocate_position(principal, position_id)

    @app.post("/assignments/{assignment_id}/timesheets")
    def submit_timesheet(
        assignment_id: str, body: TimesheetBody, principal: Principal = gate("STUDENT")
    ):
        return service.submit_timesheet(
            principal, assignment_id, week_start=body.week_start, hours=body.hours
        )

    @app.post("/assignments/{assignment_id}/rate")
    def rate_assignment(
        assignment_id: str, body: RateBody, principal: Principal = gate("SUPERVISOR")
    ):
        return service.rate_assignment(principal, assignment_id, body.rating)

    # -- campaigns ------------------------------------------------------------

    @app.post("/campaigns")
    def create_campaign(body: CampaignBody, principal: Principal = gate()):
        return service.create_campaign(
            principal, title=body.title, goal=body.goal, description=body.description
        )

    @app.get("/campaigns")
    def list_campaigns(status: str | None = None):
        return {"campaigns": service.list_campaigns(status)}

    @app.post("/campaigns/{campaign_id}/donate")
    def donate(campaign_id: str, body: dict):
        return service.donate(campaign_id, body)

    # -- operations hooks --------------------------------------------------------

    @app.get("/outbox")
    def outbox(principal: Principal = gate("VALIDATOR")):
        return {"notifications": service.outbox()}

    return app
