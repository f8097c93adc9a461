"""Single-node runtime: chain, derived state, mempool, and peer sync.

The node owns the only mutable copies of the chain and the account state.
Transactions are admitted against the *pending* state (tip state plus the
mempool applied in order), so a transaction that cannot possibly commit is
refused at the door rather than discovered at sealing time.

Production is turn-based: a node seals only at heights the round-robin
schedule assigns to its validator key, and only when transactions are
waiting. Sync is deliberately naive: peers swap whole chains and both
sides keep whatever fork choice prefers.
"""
from __future__ import annotations

import os
import secrets
import time
from typing import Callable, Sequence

from . import canonical, consensus, economy, wallet
from .errors import DomainError
from .ledger import Block, Transaction, make_mint
from .rng import SplitMix64

TX_PENDING = "PENDING"
TX_CONFIRMED = "CONFIRMED"
TX_DROPPED = "DROPPED"

CHAIN_FILE = "chain.ndjson"


class Node:
    def __init__(
        self,
        config: consensus.GenesisConfig,
        validator_key: wallet.KeyPair | None = None,
        data_dir: str | None = None,
        seed: int | None = None,
        clock: Callable[[], int] | None = None,
    ):
        self.config = config
        self.validator_key = validator_key
        self.genesis = consensus.build_genesis(config)
        self.chain: list[Block] = [self.genesis]
        self.state = economy.AccountState()
        self.mempool: dict[str, Transaction] = {}
        self._tx_status: dict[str, str] = {}
        self._clock = clock or (lambda: int(time.time()))
        self._rng = SplitMix64(seed if seed is not None else secrets.randbits(64))
        self._chain_path = os.path.join(data_dir, CHAIN_FILE) if data_dir else None
        if self._chain_path and os.path.exists(self._chain_path):
            self._load_chain()
        elif self._chain_path:
            os.makedirs(data_dir, exist_ok=True)
            self._rewrite_chain_file()
        self._mint_nonce = self._count_own_mints()

    # -- persistence ----------------------------------------------------

    def _load_chain(self) -> None:
        blocks = []
        with open(self._chain_path, "rb") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    blocks.append(Block.from_json(canonical.decode(line)))
        verdict = consensus.verify_chain(self.config, blocks)
        if not verdict:
            raise DomainError(
                "CORRUPT_CHAIN",
                f"stored chain fails at height {verdict.height}: {verdict.code}",
            )
        self.chain = blocks
        self.state = economy.replay_chain(blocks, self.config.validators)
        for block in blocks:
            for tx in block.transactions:
                self._tx_status[tx.tx_id] = TX_CONFIRMED

    def _rewrite_chain_file(self) -> None:
        if not self._chain_path:
            return
        tmp = self._chain_path + ".tmp"
        with open(tmp, "wb") as handle:
            for block in self.chain:
                handle.write(canonical.encode(block.to_json()) + b"\n")
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, self._chain_path)

    def _append_chain_file(self, block: Block) -> None:
        if not self._chain_path:
            return
        with open(self._chain_path, "ab") as handle:
            handle.write(canonical.encode(block.to_json()) + b"\n")
            handle.flush()
            os.fsync(handle.fileno())

    # -- views ------------------------------------------------------------

    @property
    def tip(self) -> Block:
        return self.chain[-1]

    @property
    def height(self) -> int:
        return self.tip.header.height

    def block_at(self, height: int) -> Block | None:
        if 0 <= height < len(self.chain):
            return self.chain[height]
        return None

    def pending_state(self) -> economy.AccountState:
        """Tip state with the current mempool applied in arrival order."""
        state = self.state
        for tx in self.mempool.values():
            state = economy.apply_transaction(state, tx, self.config.validators)
        return state

    def tx_status(self, tx_id: str) -> str | None:
        return self._tx_status.get(tx_id)

    def next_allocation_seed(self) -> int:
        return self._rng.next_u64()

    def _count_own_mints(self) -> int:
        if self.validator_key is None:
            return 0
        own = self.validator_key.public_hex
        return sum(
            1
            for block in self.chain
            for tx in block.transactions
            if tx.kind == "MINT" and tx.public_key == own
        )

    # -- transaction intake -----------------------------------------------

    def submit(self, tx: Transaction) -> dict[str, str]:
        """Admit a signed transaction; resubmission of a known id is a no-op."""
        known = self._tx_status.get(tx.tx_id)
        if known is not None:
            return {"tx_id": tx.tx_id, "status": known}
        verdict = wallet.verify_signature(tx)
        if not verdict:
            raise DomainError("BAD_SIGNATURE", f"{verdict.code}: {verdict.detail}")
        # Dry-run against the pending state so a hopeless transaction
        # never occupies the mempool.
        economy.apply_transaction(self.pending_state(), tx, self.config.validators)
        self.mempool[tx.tx_id] = tx
        self._tx_status[tx.tx_id] = TX_PENDING
        return {"tx_id": tx.tx_id, "status": TX_PENDING}

    def reserve_mint_nonces(self, count: int) -> int:
        """Claim a contiguous run of mint nonces; returns the first one.

        Batch jobs (award runs) number their mints up front so two batches
        can never collide into identical transaction ids.
        """
        if self.validator_key is None:
            raise DomainError("NO_VALIDATOR_KEY", "this node cannot mint")
        start = self._mint_nonce
        self._mint_nonce += count
        return start

    def mint(self, to: str, amount: int, memo: str = "", timestamp: int | None = None) -> Transaction:
        """Issue coins from this node's validator key and queue the mint."""
        tx = make_mint(
            self.validator_key,
            to=to,
            amount=amount,
            nonce=self.reserve_mint_nonces(1),
            timestamp=timestamp if timestamp is not None else self._clock(),
            memo=memo,
        )
        self.submit(tx)
        return tx

    # -- block production ---------------------------------------------------

    def produce_block(self, timestamp: int | None = None) -> Block | None:
        """Seal pending transactions into the next block, if any are waiting.

        Raises NOT_SCHEDULED when it is another validator's turn; callers
        that poll should use maybe_produce instead.
        """
        if self.validator_key is None:
            raise DomainError("NO_VALIDATOR_KEY", "this node cannot seal blocks")
        if not self.mempool:
            return None
        applied = self.state
        included: list[Transaction] = []
        for tx in list(self.mempool.values()):
            try:
                applied = economy.apply_transaction(applied, tx, self.config.validators)
            except DomainError:
                # Stale after a fork switch or a competing spend; drop it.
                del self.mempool[tx.tx_id]
                self._tx_status[tx.tx_id] = TX_DROPPED
                continue
            included.append(tx)
        if not included:
            return None
        if timestamp is None:
            timestamp = max(self._clock(), self.tip.header.timestamp)
        block = consensus.seal_block(
            self.config, self.validator_key, self.tip, included, timestamp
        )
        self.chain.append(block)
        self.state = applied
        for tx in included:
            del self.mempool[tx.tx_id]
            self._tx_status[tx.tx_id] = TX_CONFIRMED
        self._append_chain_file(block)
        return block

    def maybe_produce(self, timestamp: int | None = None) -> Block | None:
        """produce_block, but quietly defer when off schedule or keyless."""
        if self.validator_key is None:
            return None
        try:
            return self.produce_block(timestamp)
        except DomainError as exc:
            if exc.code == "NOT_SCHEDULED":
                return None
            raise

    # -- peer sync ----------------------------------------------------------

    def receive_chain(self, remote: Sequence[Block]) -> tuple[bool, str]:
        """Consider a peer's full chain; adopt it if fork choice prefers it."""
        verdict = consensus.verify_chain(self.config, remote)
        if not verdict:
            return False, f"INVALID_CHAIN:{verdict.code}@{verdict.height}"
        if len(remote) < len(self.chain):
            return False, "NOT_BETTER"
        if len(remote) == len(self.chain):
            if remote[-1].hash >= self.tip.hash:
                reason = "NOT_BETTER"
                if remote[-1].hash == self.tip.hash:
                    reason = "ALREADY_CURRENT"
                return False, reason
            reason = "TIE_BREAK"
        else:
            reason = "LONGER"
        self.chain = list(remote)
        self.state = economy.replay_chain(self.chain, self.config.validators)
        for block in self.chain:
            for tx in block.transactions:
                self._tx_status[tx.tx_id] = TX_CONFIRMED
                self.mempool.pop(tx.tx_id, None)
        # Surviving mempool entries must still apply on the new branch.
        retained: dict[str, Transaction] = {}
        state = self.state
        for tx in self.mempool.values():
            try:
                state = economy.apply_transaction(state, tx, self.config.validators)
                retained[tx.tx_id] = tx
            except DomainError:
                self._tx_status[tx.tx_id] = TX_DROPPED
        self.mempool = retained
        self._mint_nonce = self._count_own_mints() + sum(
            1
            for tx in self.mempool.values()
            if self.validator_key is not None
            and tx.kind == "MINT"
            and tx.public_key == self.validator_key.public_hex
        )
        self._rewrite_chain_file()
        return True, reason
