"""Campus token chain: PoA ledger, incentive services, and their REST API."""

from .consensus import GenesisConfig, build_genesis, fork_choice, seal_block
from .economy import AccountState, Campaign, apply_transaction, replay_chain
from .errors import ACCEPT, DomainError, Verdict
from .ledger import Block, BlockHeader, Transaction, make_mint, make_transfer
from .node import Node
from .service import CampusService
from .wallet import KeyPair, generate_keypair

__version__ = "0.1.0"

__all__ = [
    "ACCEPT",
    "AccountState",
    "Block",
    "BlockHeader",
    "Campaign",
    "CampusService",
    "DomainError",
    "GenesisConfig",
    "KeyPair",
    "Node",
    "Transaction",
    "Verdict",
    "apply_transaction",
    "build_genesis",
    "fork_choice",
    "generate_keypair",
    "make_mint",
    "make_transfer",
    "replay_chain",
    "seal_block",
    "__version__",
]
