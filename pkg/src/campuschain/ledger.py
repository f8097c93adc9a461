"""Blocks, transactions, and structural chain validation.

Every hash in the system is SHA-256 over canonical JSON bytes:

* a transaction id commits to all fields except the id itself and the
  signature, and doubles as the digest the sender signs
* a Merkle leaf is the hash of the full transaction (signature included), so
  any post-seal byte flip anywhere in a transaction breaks the root
* a block hash covers the whole header including the seal, chaining each
  block to every byte of its predecessor

Blocks and transactions are immutable after construction; "mutating" one in
tests means building a changed copy, which by design never hashes the same.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from . import canonical, wallet
from .errors import ACCEPT, DomainError, Verdict, reject

AUTHORITY = "AUTHORITY"  # sentinel `from` for mint transactions
TRANSACTION_KINDS = ("TRANSFER", "MINT")
MAX_MEMO_BYTES = 256
ZERO_HASH = "0" * 64
EMPTY_ROOT = hashlib.sha256(b"").hexdigest()

_TX_WIRE_KEYS = frozenset(
    ("kind", "from", "to", "amount", "nonce", "timestamp",
     "memo", "public_key", "signature", "tx_id")
)
_HEADER_WIRE_KEYS = frozenset(
    ("height", "prev_hash", "merkle_root", "timestamp", "proposer", "seal_signature")
)


def _sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Transaction:
    """A signed value movement: TRANSFER between wallets or validator MINT."""

    kind: str
    sender: str  # serialized as "from"; AUTHORITY for mints
    to: str
    amount: int
    nonce: int
    timestamp: int
    memo: str = ""
    public_key: str = ""
    signature: str = ""
    tx_id: str = ""

    def __post_init__(self):
        if self.kind not in TRANSACTION_KINDS:
            raise DomainError("INVALID_TRANSACTION", f"unknown kind {self.kind!r}")
        # bool is an int subclass but would serialize as true/false
        for name in ("amount", "nonce", "timestamp"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError("INVALID_TRANSACTION", f"{name} must be an integer")
        if self.amount < 1:
            raise DomainError("INVALID_TRANSACTION", "amount must be a positive integer")
        if self.nonce < 0:
            raise DomainError("INVALID_TRANSACTION", "nonce must be non-negative")
        if len(self.memo.encode("utf-8")) > MAX_MEMO_BYTES:
            raise DomainError("INVALID_TRANSACTION", f"memo exceeds {MAX_MEMO_BYTES} bytes")

    def unsigned_payload(self) -> dict[str, Any]:
        """Everything the signature and the id commit to."""
        return {
            "kind": self.kind,
            "from": self.sender,
            "to": self.to,
            "amount": self.amount,
            "nonce": self.nonce,
            "timestamp": self.timestamp,
            "memo": self.memo,
            "public_key": self.public_key,
        }

    def signing_digest(self) -> bytes:
        return hashlib.sha256(canonical.encode(self.unsigned_payload())).digest()

    def to_json(self) -> dict[str, Any]:
        payload = self.unsigned_payload()
        payload["signature"] = self.signature
        payload["tx_id"] = self.tx_id
        return payload

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Transaction":
        # Exact key set, no tolerance: a lenient parser would let two byte
        # strings decode to the same transaction, and hashes sign bytes.
        if not isinstance(data, dict) or set(data) != _TX_WIRE_KEYS:
            raise DomainError("INVALID_TRANSACTION", "unexpected transaction fields")
        try:
            return cls(
                kind=data["kind"],
                sender=data["from"],
                to=data["to"],
                amount=data["amount"],
                nonce=data["nonce"],
                timestamp=data["timestamp"],
                memo=data["memo"],
                public_key=data["public_key"],
                signature=data["signature"],
                tx_id=data["tx_id"],
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise DomainError("INVALID_TRANSACTION", f"malformed transaction: {exc}")

    def canonical_bytes(self) -> bytes:
        return canonical.encode(self.to_json())


def make_transfer(
    keypair: wallet.KeyPair,
    to: str,
    amount: int,
    nonce: int,
    timestamp: int,
    memo: str = "",
) -> Transaction:
    """Build and sign a transfer from the key's own address."""
    tx = Transaction(
        kind="TRANSFER",
        sender=keypair.address,
        to=to,
        amount=amount,
        nonce=nonce,
        timestamp=timestamp,
        memo=memo,
    )
    return wallet.sign_transaction(tx, keypair)


def make_mint(
    keypair: wallet.KeyPair,
    to: str,
    amount: int,
    nonce: int,
    timestamp: int,
    memo: str = "",
) -> Transaction:
    """Build and sign an issuance; only accepted on-chain from validators."""
    tx = Transaction(
        kind="MINT",
        sender=AUTHORITY,
        to=to,
        amount=amount,
        nonce=nonce,
        timestamp=timestamp,
        memo=memo,
    )
    return wallet.sign_transaction(tx, keypair)


@dataclass(frozen=True)
class BlockHeader:
    height: int
    prev_hash: str
    merkle_root: str
    timestamp: int
    proposer: str
    seal_signature: str = ""

    def seal_payload(self) -> dict[str, Any]:
        """Header fields the proposer signs (everything but the seal)."""
        return {
            "height": self.height,
            "prev_hash": self.prev_hash,
            "merkle_root": self.merkle_root,
            "timestamp": self.timestamp,
            "proposer": self.proposer,
        }

    def seal_digest(self) -> bytes:
        return hashlib.sha256(canonical.encode(self.seal_payload())).digest()

    def to_json(self) -> dict[str, Any]:
        payload = self.seal_payload()
        payload["seal_signature"] = self.seal_signature
        return payload

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "BlockHeader":
        if not isinstance(data, dict) or set(data) != _HEADER_WIRE_KEYS:
            raise DomainError("INVALID_BLOCK", "unexpected header fields")
        try:
            return cls(
                height=data["height"],
                prev_hash=data["prev_hash"],
                merkle_root=data["merkle_root"],
                timestamp=data["timestamp"],
                proposer=data["proposer"],
                seal_signature=data["seal_signature"],
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise DomainError("INVALID_BLOCK", f"malformed header: {exc}")

    def canonical_bytes(self) -> bytes:
        return canonical.encode(self.to_json())


@dataclass(frozen=True)
class Block:
    header: BlockHeader
    transactions: tuple[Transaction, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "header": self.header.to_json(),
            "transactions": [tx.to_json() for tx in self.transactions],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Block":
        if not isinstance(data, dict) or set(data) != {"header", "transactions"}:
            raise DomainError("INVALID_BLOCK", "unexpected block fields")
        try:
            header = BlockHeader.from_json(data["header"])
            txs = tuple(Transaction.from_json(t) for t in data["transactions"])
        except (KeyError, TypeError) as exc:
            raise DomainError("INVALID_BLOCK", f"malformed block: {exc}")
        return cls(header=header, transactions=txs)

    def canonical_bytes(self) -> bytes:
        return canonical.encode(self.to_json())

    @property
    def hash(self) -> str:
        return hash_block(self.header)


def compute_merkle_root(txs: Sequence[Transaction]) -> str:
    """Root of the transaction tree; duplicates the odd node out per level.

    An empty block commits to SHA-256 of the empty string so the root is
    total over all transaction lists.
    """
    if not txs:
        return EMPTY_ROOT
    level = [hashlib.sha256(tx.canonical_bytes()).digest() for tx in txs]
    while len(level) > 1:
        if len(level) % 2:
            level.append(level[-1])
        level = [
            hashlib.sha256(level[i] + level[i + 1]).digest()
            for i in range(0, len(level), 2)
        ]
    return level[0].hex()


def hash_block(header: BlockHeader) -> str:
    """SHA-256 over the full canonical header, seal included."""
    return _sha256_hex(header.canonical_bytes())


def validate_block(block: Block, prev: Block) -> Verdict:
    """Structural check of a successor block; names the first failed check."""
    header = block.header
    if header.height != prev.header.height + 1:
        return reject(
            "BAD_HEIGHT",
            f"expected height {prev.header.height + 1}, got {header.height}",
        )
    if header.prev_hash != hash_block(prev.header):
        return reject("BAD_PREV_HASH", "prev_hash does not match the chain tip")
    if header.merkle_root != compute_merkle_root(block.transactions):
        return reject("BAD_MERKLE", "merkle_root does not match the block body")
    if header.timestamp < prev.header.timestamp:
        return reject("BAD_TIMESTAMP", "block timestamp precedes its parent")
    for index, tx in enumerate(block.transactions):
        verdict = wallet.verify_signature(tx)
        if not verdict:
            return reject(
                "BAD_SIGNATURE", f"transaction {index}: {verdict.code} {verdict.detail}"
            )
    return ACCEPT


def verify_chain(
    chain: Sequence[Block],
    genesis: Block,
    seal_check: Callable[[Block], Verdict] | None = None,
) -> Verdict:
    """Validate a whole chain against the configured genesis.

    Consensus-level seal verification is injected by the caller so this
    module stays agnostic of the validator schedule.
    """
    if not chain:
        return reject("EMPTY_CHAIN", "a chain contains at least the genesis block")
    if chain[0].canonical_bytes() != genesis.canonical_bytes():
        return reject("BAD_GENESIS", "first block is not the configured genesis", 0)
    for i in range(1, len(chain)):
        verdict = validate_block(chain[i], chain[i - 1])
        if not verdict:
            return reject(verdict.code or "INVALID", verdict.detail, chain[i].header.height)
        if seal_check is not None:
            verdict = seal_check(chain[i])
            if not verdict:
                return reject(
                    verdict.code or "INVALID", verdict.detail, chain[i].header.height
                )
    return ACCEPT


def chain_to_json(chain: Iterable[Block]) -> list[dict[str, Any]]:
    return [block.to_json() for block in chain]


def chain_from_json(data: Iterable[dict[str, Any]]) -> list[Block]:
    return [Block.from_json(item) for item in data]
