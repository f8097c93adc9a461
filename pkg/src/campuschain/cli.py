"""Command-line entry points: the node server and the admin bootstrap.

campuschain-node serves the REST API for one node. Where it listens, which
chain it joins, and whether it can seal blocks all come from flags; the
config file adds accounts, the award schedule, and peer addresses. The
CAMPUS_CHAIN_CONFIG environment variable overrides --config so a service
manager can swap configs without editing unit files.

campuschain-bootstrap provisions a fresh deployment: keypairs, keyfiles,
bearer tokens, genesis file, node config, and a seeded registry. Tokens
are printed once; treat the output as secret.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import secrets
import threading
import time
import urllib.error
import urllib.request

from . import canonical, wallet
from .api import create_app
from .consensus import GenesisConfig
from .node import Node
from .registry import FACULTY, FileStore, MemoryStore, STUDENTS, SUPERVISORS
from .research import DEFAULT_AWARD_SCHEDULE
from .service import CampusService

DEFAULT_LISTEN = "127.0.0.1:8545"
DEFAULT_BLOCK_INTERVAL = 5


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise SystemExit(f"--listen expects host:port, got {listen!r}")
    return host, int(port)


def _read_json(path: str) -> dict:
    with open(path, "rb") as handle:
        return canonical.decode(handle.read())


class PeerSync(threading.Thread):
    """Best-effort gossip: push our chain, pull theirs, every interval."""

    daemon = True

    def __init__(self, node: Node, peers: list[str], token: str, interval: int):
        super().__init__(name="peer-sync")
        self.node = node
        self.peers = peers
        self.token = token
        self.interval = interval

    def _push(self, peer: str) -> None:
        payload = canonical.encode(
            {"blocks": [block.to_json() for block in self.node.chain]}
        )
        request = urllib.request.Request(
            peer.rstrip("/") + "/peer/blocks",
            data=payload,
            headers={
                "Content-Type": "application/json",
                "Authorization": f"Bearer {self.token}",
            },
        )
        urllib.request.urlopen(request, timeout=5).close()

    def _pull(self, peer: str) -> None:
        with urllib.request.urlopen(peer.rstrip("/") + "/chain", timeout=5) as reply:
            data = canonical.decode(reply.read())
        from .ledger import Block

        self.node.receive_chain([Block.from_json(item) for item in data["blocks"]])

    def run(self) -> None:
        while True:
            time.sleep(self.interval)
            try:
                self.node.maybe_produce()
            except Exception:
                pass
            for peer in self.peers:
                for action in (self._push, self._pull):
                    try:
                        action(peer)
                    except (urllib.error.URLError, OSError, ValueError):
                        continue


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="campuschain-node", description="Run one campus chain node."
    )
    parser.add_argument("--config", help="node config JSON path")
    parser.add_argument("--genesis", help="genesis config JSON path")
    parser.add_argument("--listen", default=DEFAULT_LISTEN, help="host:port to serve")
    parser.add_argument("--data-dir", help="directory for chain and registry files")
    parser.add_argument("--validator-key", help="keyfile enabling sealing and minting")
    parser.add_argument(
        "--seed", type=int, help="fix the allocation RNG seed (tests only)"
    )
    args = parser.parse_args(argv)

    config_path = os.environ.get("CAMPUS_CHAIN_CONFIG") or args.config
    config: dict = {}
    config_dir = "."
    if config_path:
        config = _read_json(config_path)
        config_dir = os.path.dirname(os.path.abspath(config_path))

    def _resolve(path: str | None) -> str | None:
        if path is None:
            return None
        return path if os.path.isabs(path) else os.path.join(config_dir, path)

    genesis_path = args.genesis or _resolve(config.get("genesis"))
    if genesis_path is None:
        parser.error("a genesis file is required (--genesis or config 'genesis')")
    genesis_config = GenesisConfig.from_json(_read_json(genesis_path))

    data_dir = args.data_dir or _resolve(config.get("data_dir"))
    store = FileStore(os.path.join(data_dir, "registry")) if data_dir else MemoryStore()

    validator_key = None
    key_path = args.validator_key or _resolve(config.get("validator_key"))
    if key_path:
        validator_key = wallet.load_keyfile(key_path)

    node = Node(
        genesis_config, validator_key=validator_key, data_dir=data_dir, seed=args.seed
    )
    service = CampusService(
        store,
        node,
        accounts=config.get("accounts", []),
        award_schedule=config.get("award_schedule"),
        award_budget=config.get("award_budget"),
        auto_produce=config.get("auto_produce", True),
    )
    app = create_app(service)

    interval = config.get("block_interval", DEFAULT_BLOCK_INTERVAL)
    peers = config.get("peers", [])
    if validator_key is not None and interval > 0:
        PeerSync(node, peers, config.get("peer_token", ""), interval).start()

    import uvicorn

    host, port = _parse_listen(args.listen)
    uvicorn.run(app, host=host, port=port, log_level="info")


def _derived_seed(base: int, label: str) -> int:
    digest = hashlib.sha256(f"{base}:{label}".encode()).digest()
    return int.from_bytes(digest, "big")


def _token(base: int | None, label: str) -> str:
    if base is None:
        return secrets.token_urlsafe(24)
    return hashlib.sha256(f"{base}:token:{label}".encode()).hexdigest()[:32]


def bootstrap_main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(
        prog="campuschain-bootstrap",
        description="Provision keys, tokens, genesis, and registry for a deployment.",
    )
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--students", type=int, default=6)
    parser.add_argument("--faculty", type=int, default=2)
    parser.add_argument("--supervisors", type=int, default=2)
    parser.add_argument("--validators", type=int, default=1)
    parser.add_argument("--chain-id", default="campus-1")
    parser.add_argument(
        "--seed", type=int, help="derive keys and tokens deterministically (tests only)"
    )
    args = parser.parse_args(argv)

    out = os.path.abspath(args.out)
    keys_dir = os.path.join(out, "keys")
    os.makedirs(keys_dir, exist_ok=True)
    store = FileStore(os.path.join(out, "data", "registry"))

    def make_identity(subject_id: str) -> wallet.KeyPair:
        seed = _derived_seed(args.seed, subject_id) if args.seed is not None else None
        keypair = wallet.generate_keypair(seed)
        wallet.save_keyfile(os.path.join(keys_dir, f"{subject_id}.json"), keypair)
        return keypair

    accounts = []
    validators = []
    lines = []

    for i in range(1, args.validators + 1):
        subject_id = f"validator-{i:02d}"
        keypair = make_identity(subject_id)
        validators.append(keypair.address)
        token = _token(args.seed, subject_id)
        accounts.append({"subject_id": subject_id, "role": "VALIDATOR", "token": token})
        lines.append(f"{subject_id:16} VALIDATOR   {keypair.address}  token={token}")

    for i in range(1, args.students + 1):
        subject_id = f"student-{i:02d}"
        keypair = make_identity(subject_id)
        store.put(
            STUDENTS,
            {
                "student_id": subject_id,
                "name": f"Student {i:02d}",
                "email": f"{subject_id}@campus.example",
                "wallet_address": keypair.address,
                "enrolled": True,
            },
        )
        token = _token(args.seed, subject_id)
        accounts.append({"subject_id": subject_id, "role": "STUDENT", "token": token})
        lines.append(f"{subject_id:16} STUDENT     {keypair.address}  token={token}")

    for i in range(1, args.faculty + 1):
        subject_id = f"faculty-{i:02d}"
        keypair = make_identity(subject_id)
        store.put(
            FACULTY,
            {
                "faculty_id": subject_id,
                "name": f"Faculty {i:02d}",
                "email": f"{subject_id}@campus.example",
                "wallet_address": keypair.address,
            },
        )
        token = _token(args.seed, subject_id)
        accounts.append({"subject_id": subject_id, "role": "FACULTY", "token": token})
        lines.append(f"{subject_id:16} FACULTY     {keypair.address}  token={token}")

    for i in range(1, args.supervisors + 1):
        subject_id = f"supervisor-{i:02d}"
        keypair = make_identity(subject_id)
        store.put(
            SUPERVISORS,
            {
                "supervisor_id": subject_id,
                "name": f"Supervisor {i:02d}",
                "email": f"{subject_id}@campus.example",
                "wallet_address": keypair.address,
            },
        )
        token = _token(args.seed, subject_id)
        accounts.append(
            {"subject_id": subject_id, "role": "SUPERVISOR", "token": token}
        )
        lines.append(f"{subject_id:16} SUPERVISOR  {keypair.address}  token={token}")

    store.compact()
    store.close()

    genesis = {"validators": validators, "chain_id": args.chain_id}
    with open(os.path.join(out, "genesis.json"), "wb") as handle:
        handle.write(canonical.encode(genesis) + b"\n")

    config = {
        "genesis": "genesis.json",
        "data_dir": "data",
        "validator_key": os.path.join("keys", "validator-01.json"),
        "accounts": accounts,
        "award_schedule": DEFAULT_AWARD_SCHEDULE,
        "award_budget": None,
        "auto_produce": True,
        "block_interval": DEFAULT_BLOCK_INTERVAL,
        "peers": [],
        "peer_token": accounts[0]["token"] if validators else "",
    }
    with open(os.path.join(out, "config.json"), "w", encoding="utf-8") as handle:
        json.dump(config, handle, indent=2, sort_keys=True)
        handle.write("\n")

    print(f"wrote {out}/genesis.json, config.json, keys/, data/registry/")
    print("identities (tokens are secrets, store them safely):")
    for line in lines:
        print(" ", line)
    print("\nstart the node with:")
    print(f"  campuschain-node --config {out}/config.json --listen {DEFAULT_LISTEN}")


if __name__ == "__main__":
    main()
