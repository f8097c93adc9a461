"""Proof-of-authority: a fixed validator set takes turns sealing blocks.

The proposer for height h is validators[h % n], so a correct schedule is
checkable from the genesis configuration alone. Seals are recoverable
signatures over the header; verification recovers the signer's public key
and compares its derived address against the scheduled proposer, which is
why the configuration only ever needs to carry addresses.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence

from . import canonical, curve, wallet
from .errors import ACCEPT, DomainError, Verdict, reject
from .ledger import Block, BlockHeader, Transaction, ZERO_HASH, EMPTY_ROOT
from .ledger import compute_merkle_root, hash_block, verify_chain as _verify_structure


@dataclass(frozen=True)
class GenesisConfig:
    """Chain identity: an ordered validator roster plus a chain id."""

    validators: tuple[str, ...]
    chain_id: str

    def __post_init__(self):
        if not self.validators:
            raise DomainError("EMPTY_VALIDATOR_SET", "validator set must not be empty")
        if len(set(self.validators)) != len(self.validators):
            raise DomainError("INVALID_CONFIG", "duplicate validator address")
        for addr in self.validators:
            if not wallet.is_address(addr):
                raise DomainError("INVALID_CONFIG", f"bad validator address {addr!r}")

    def to_json(self) -> dict[str, Any]:
        return {"validators": list(self.validators), "chain_id": self.chain_id}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "GenesisConfig":
        try:
            return cls(validators=tuple(data["validators"]), chain_id=data["chain_id"])
        except (KeyError, TypeError) as exc:
            raise DomainError("INVALID_CONFIG", f"malformed genesis config: {exc}")

    def expected_proposer(self, height: int) -> str:
        return self.validators[height % len(self.validators)]

    def is_validator(self, address: str) -> bool:
        return address in self.validators

    def fingerprint(self) -> str:
        """Address-shaped digest of the config; used as the genesis proposer.

        Folding the fingerprint into the genesis header means two chains
        with different rosters or ids can never share a genesis hash.
        """
        digest = hashlib.sha256(canonical.encode(self.to_json())).digest()
        return wallet.ADDRESS_PREFIX + digest[-20:].hex()


def build_genesis(config: GenesisConfig) -> Block:
    header = BlockHeader(
        height=0,
        prev_hash=ZERO_HASH,
        merkle_root=EMPTY_ROOT,
        timestamp=0,
        proposer=config.fingerprint(),
        seal_signature="",
    )
    return Block(header=header, transactions=())


def seal_block(
    config: GenesisConfig,
    keypair: wallet.KeyPair,
    prev: Block,
    transactions: Sequence[Transaction],
    timestamp: int | None = None,
) -> Block:
    """Assemble and sign the next block; the key must hold the current slot."""
    height = prev.header.height + 1
    scheduled = config.expected_proposer(height)
    if keypair.address != scheduled:
        raise DomainError(
            "NOT_SCHEDULED",
            f"height {height} belongs to {scheduled}, not {keypair.address}",
        )
    if timestamp is None:
        timestamp = max(int(time.time()), prev.header.timestamp)
    header = BlockHeader(
        height=height,
        prev_hash=hash_block(prev.header),
        merkle_root=compute_merkle_root(transactions),
        timestamp=timestamp,
        proposer=keypair.address,
    )
    seal = wallet.sign_digest(header.seal_digest(), keypair)
    sealed = BlockHeader(
        height=header.height,
        prev_hash=header.prev_hash,
        merkle_root=header.merkle_root,
        timestamp=header.timestamp,
        proposer=header.proposer,
        seal_signature=seal,
    )
    return Block(header=sealed, transactions=tuple(transactions))


@lru_cache(maxsize=1 << 14)
def _seal_verdict(validators: tuple[str, ...], header: BlockHeader) -> Verdict:
    n = len(validators)
    scheduled = validators[header.height % n]
    if header.proposer != scheduled:
        return reject(
            "WRONG_PROPOSER",
            f"height {header.height} belongs to {scheduled}, not {header.proposer}",
        )
    try:
        r, s, v = wallet.decode_signature(header.seal_signature)
        point = curve.recover(header.seal_digest(), r, s, v)
    except (DomainError, ValueError) as exc:
        return reject("BAD_SEAL_SIGNATURE", f"unrecoverable seal: {exc}")
    public_key = curve.compress(point)
    if wallet.derive_address(public_key) != header.proposer:
        return reject("BAD_SEAL_SIGNATURE", "seal was not signed by the proposer")
    # Recovery alone proves the signature verifies under the recovered key,
    # but run it through the second backend anyway before trusting the seal.
    if not wallet._openssl_verify(header.seal_digest(), r, s, public_key):
        return reject("BAD_SEAL_SIGNATURE", "seal rejected by signature backend")
    return ACCEPT


def verify_seal(config: GenesisConfig, block: Block) -> Verdict:
    """Check the block was sealed by the validator the schedule assigns."""
    return _seal_verdict(config.validators, block.header)


def verify_chain(config: GenesisConfig, chain: Sequence[Block]) -> Verdict:
    """Full structural plus seal validation from genesis to tip."""
    genesis = build_genesis(config)
    return _verify_structure(
        chain, genesis, seal_check=lambda block: verify_seal(config, block)
    )


def fork_choice(
    config: GenesisConfig, a: Sequence[Block], b: Sequence[Block]
) -> Sequence[Block]:
    """Pick the winning branch of a fork.

    Longest valid chain wins; an equal-length tie goes to the
    lexicographically smaller tip hash so all honest nodes converge on the
    same branch without exchanging votes. Symmetric in its arguments.
    """
    for label, chain in (("first", a), ("second", b)):
        verdict = verify_chain(config, chain)
        if not verdict:
            raise DomainError(
                "INVALID_CHAIN",
                f"{label} chain fails at height {verdict.height}: {verdict.code}",
            )
    if len(a) != len(b):
        return a if len(a) > len(b) else b
    a_tip = hash_block(a[-1].header)
    b_tip = hash_block(b[-1].header)
    return a if a_tip <= b_tip else b
