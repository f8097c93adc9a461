"""Account-based token state and crowdfunding campaign rules.

The monetary invariant is that the sum of all balances equals the total
ever minted. Transfers move value and therefore cannot break it; mints
grow both sides together. State transitions are pure: applying a
transaction returns a fresh state and a rejection leaves the input
bit-identical, which is what makes replay deterministic across nodes.

Campaign donations are ordinary transfers to the beneficiary tagged by
memo, with one extra admission rule: a donation that would push a campaign
past its goal is rejected outright rather than clamped, and hitting the
goal exactly closes the campaign for good.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import wallet
from .errors import ACCEPT, DomainError, Verdict, reject
from .ledger import AUTHORITY, Block, Transaction

CAMPAIGN_MEMO_PREFIX = "campaign:"
CAMPAIGN_OPEN = "OPEN"
CAMPAIGN_CLOSED = "CLOSED"


@dataclass
class AccountState:
    """Balances, per-sender transfer nonces, and the cumulative mint total."""

    balances: dict[str, int] = field(default_factory=dict)
    nonces: dict[str, int] = field(default_factory=dict)
    total_minted: int = 0

    def copy(self) -> "AccountState":
        return AccountState(dict(self.balances), dict(self.nonces), self.total_minted)

    def balance(self, address: str) -> int:
        return self.balances.get(address, 0)

    def next_nonce(self, address: str) -> int:
        return self.nonces.get(address, 0)

    def total_balance(self) -> int:
        return sum(self.balances.values())

    def conservation_ok(self) -> bool:
        return self.total_balance() == self.total_minted

    def to_json(self) -> dict[str, Any]:
        return {
            "balances": dict(sorted(self.balances.items())),
            "nonces": dict(sorted(self.nonces.items())),
            "total_minted": self.total_minted,
        }


def apply_transaction(
    state: AccountState, tx: Transaction, validators: Iterable[str]
) -> AccountState:
    """One state transition; the input state is never modified.

    Assumes the signature already checked out. Mint nonces are
    informational (validators number their own issuances); transfer nonces
    must be exactly the sender's next, which kills replays and gaps alike.
    """
    new = state.copy()
    if tx.kind == "MINT":
        if tx.sender != AUTHORITY:
            raise DomainError(
                "UNAUTHORIZED_MINT", "mints must originate from the authority account"
            )
        try:
            minter = wallet.derive_address(bytes.fromhex(tx.public_key))
        except (DomainError, ValueError):
            raise DomainError("UNAUTHORIZED_MINT", "mint carries an invalid public key")
        if minter not in validators:
            raise DomainError(
                "UNAUTHORIZED_MINT", f"{minter} is not in the validator set"
            )
        new.balances[tx.to] = new.balances.get(tx.to, 0) + tx.amount
        new.total_minted += tx.amount
        return new

    # TRANSFER: the authority sentinel holds no balance, so a forged
    # transfer "from" it dies on the balance check like any other.
    expected = new.nonces.get(tx.sender, 0)
    if tx.nonce != expected:
        raise DomainError("BAD_NONCE", f"expected nonce {expected}, got {tx.nonce}")
    held = new.balances.get(tx.sender, 0)
    if held < tx.amount:
        raise DomainError(
            "INSUFFICIENT_BALANCE", f"{tx.sender} holds {held}, needs {tx.amount}"
        )
    new.balances[tx.sender] = held - tx.amount
    if new.balances[tx.sender] == 0:
        del new.balances[tx.sender]
    new.balances[tx.to] = new.balances.get(tx.to, 0) + tx.amount
    new.nonces[tx.sender] = expected + 1
    return new


def apply_block(
    state: AccountState, block: Block, validators: Iterable[str]
) -> AccountState:
    """Fold a block's transactions; failures name the offending position."""
    current = state
    for index, tx in enumerate(block.transactions):
        try:
            current = apply_transaction(current, tx, validators)
        except DomainError as exc:
            raise DomainError(
                exc.code,
                exc.message,
                height=block.header.height,
                tx_index=index,
                **{k: v for k, v in exc.details.items() if k not in ("height", "tx_index")},
            )
    return current


def replay_chain(chain: Sequence[Block], validators: Iterable[str]) -> AccountState:
    """Rebuild account state from scratch by replaying every block."""
    state = AccountState()
    validators = tuple(validators)
    for block in chain:
        state = apply_block(state, block, validators)
    return state


@dataclass
class Campaign:
    """A fundraising drive with a hard goal; never holds more than it asks."""

    campaign_id: str
    beneficiary: str
    title: str
    goal: int
    raised: int = 0
    status: str = CAMPAIGN_OPEN
    description: str = ""
    created_at: int = 0

    def __post_init__(self):
        if self.goal < 1:
            raise DomainError("ZERO_GOAL", "goal must be a positive amount")
        if not 0 <= self.raised <= self.goal:
            raise DomainError("BAD_CAMPAIGN", "raised must stay within [0, goal]")
        closed = self.status == CAMPAIGN_CLOSED
        if closed != (self.raised == self.goal):
            raise DomainError("BAD_CAMPAIGN", "closed exactly when raised equals goal")

    @property
    def remaining(self) -> int:
        return self.goal - self.raised

    def to_json(self) -> dict[str, Any]:
        return {
            "campaign_id": self.campaign_id,
            "beneficiary": self.beneficiary,
            "title": self.title,
            "description": self.description,
            "goal": self.goal,
            "raised": self.raised,
            "status": self.status,
            "created_at": self.created_at,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Campaign":
        return cls(
            campaign_id=data["campaign_id"],
            beneficiary=data["beneficiary"],
            title=data["title"],
            goal=data["goal"],
            raised=data.get("raised", 0),
            status=data.get("status", CAMPAIGN_OPEN),
            description=data.get("description", ""),
            created_at=data.get("created_at", 0),
        )


def create_campaign(
    beneficiary: str,
    goal: int,
    title: str,
    campaign_id: str,
    description: str = "",
    created_at: int = 0,
) -> Campaign:
    if goal < 1:
        raise DomainError("ZERO_GOAL", "goal must be a positive amount")
    return Campaign(
        campaign_id=campaign_id,
        beneficiary=beneficiary,
        title=title,
        goal=goal,
        description=description,
        created_at=created_at,
    )


def donation_memo(campaign_id: str) -> str:
    return CAMPAIGN_MEMO_PREFIX + campaign_id


def parse_campaign_memo(memo: str) -> str | None:
    """Campaign id carried by a donation memo, or None for ordinary memos."""
    if memo.startswith(CAMPAIGN_MEMO_PREFIX):
        return memo[len(CAMPAIGN_MEMO_PREFIX) :]
    return None


def admit_donation(campaign: Campaign, tx: Transaction) -> Verdict:
    """Gate a donation transfer before it may enter a block.

    Overshoots are refused with the exact remaining capacity so the donor
    can retry with a smaller amount; nothing is ever partially accepted.
    """
    if tx.kind != "TRANSFER":
        return reject("BAD_DONATION", "donations are transfers, not mints")
    if tx.to != campaign.beneficiary:
        return reject("BAD_DONATION", "donation must pay the campaign beneficiary")
    if tx.memo != donation_memo(campaign.campaign_id):
        return reject("BAD_DONATION", "donation memo does not name this campaign")
    if campaign.status != CAMPAIGN_OPEN:
        return reject("CAMPAIGN_CLOSED", f"campaign {campaign.campaign_id} is closed")
    if tx.amount > campaign.remaining:
        return reject(
            "OVERSHOOT",
            f"donation {tx.amount} exceeds remaining {campaign.remaining}",
        )
    return ACCEPT


def record_donation(campaign: Campaign, amount: int) -> None:
    """Credit an admitted donation; closing happens exactly at the goal."""
    if campaign.status != CAMPAIGN_OPEN or amount > campaign.remaining:
        raise DomainError("OVERSHOOT", "donation was recorded without admission")
    campaign.raised += amount
    if campaign.raised == campaign.goal:
        campaign.status = CAMPAIGN_CLOSED


def donate(
    campaign: Campaign,
    keypair: wallet.KeyPair,
    amount: int,
    state: AccountState,
    nonce: int,
    timestamp: int,
) -> tuple[Campaign, Transaction]:
    """Client-side donation: build the transfer and record it on the campaign."""
    from .ledger import make_transfer

    if campaign.status != CAMPAIGN_OPEN:
        raise DomainError(
            "CAMPAIGN_CLOSED", f"campaign {campaign.campaign_id} is closed"
        )
    if amount > campaign.remaining:
        raise DomainError(
            "OVERSHOOT",
            f"donation {amount} exceeds remaining {campaign.remaining}",
            remaining=campaign.remaining,
        )
    if state.balance(keypair.address) < amount:
        raise DomainError(
            "INSUFFICIENT_BALANCE",
            f"{keypair.address} holds {state.balance(keypair.address)}, needs {amount}",
        )
    tx = make_transfer(
        keypair,
        to=campaign.beneficiary,
        amount=amount,
        nonce=nonce,
        timestamp=timestamp,
        memo=donation_memo(campaign.campaign_id),
    )
    record_donation(campaign, amount)
    return campaign, tx
