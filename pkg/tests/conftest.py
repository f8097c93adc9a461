"""Shared fixtures: deterministic keys, a small validator set, node builders.

Key generation dominates fixture cost, so keypairs are derived once per
session from fixed seeds. Tests that need fresh state build their own Node
or CampusService from these.
"""
from __future__ import annotations

import sys
import time

import pytest

from campuschain import wallet
from campuschain.consensus import GenesisConfig
from campuschain.node import Node
from campuschain.registry import MemoryStore
from campuschain.service import CampusService

SUITE_BUDGET_SECONDS = 120.0


def pytest_sessionstart(session):
    session.config._wall_start = time.monotonic()


def pytest_sessionfinish(session, exitstatus):
    started = getattr(session.config, "_wall_start", None)
    if started is None:
        return
    elapsed = time.monotonic() - started
    ok = elapsed < SUITE_BUDGET_SECONDS
    status = "PASS" if ok else "FAIL"
    # Written to the real stdout so the verdict survives output capture.
    print(
        f"\n[{status}] whole suite wall time {elapsed:.1f}s"
        f" (budget {SUITE_BUDGET_SECONDS:.0f}s)",
        file=sys.__stdout__,
        flush=True,
    )
    if not ok:
        session.exitstatus = 1


@pytest.fixture(scope="session")
def validator_keys():
    return tuple(wallet.generate_keypair(seed=1000 + i) for i in range(3))


@pytest.fixture(scope="session")
def student_keys():
    return tuple(wallet.generate_keypair(seed=2000 + i) for i in range(6))


@pytest.fixture(scope="session")
def genesis_config(validator_keys):
    return GenesisConfig(
        validators=tuple(k.address for k in validator_keys), chain_id="test-chain"
    )


@pytest.fixture(scope="session")
def solo_config(validator_keys):
    """One validator, so every height is its turn."""
    return GenesisConfig(validators=(validator_keys[0].address,), chain_id="solo")


@pytest.fixture
def solo_node(solo_config, validator_keys):
    return Node(solo_config, validator_key=validator_keys[0], seed=7)


def build_service(node, people=()):
    """CampusService over a MemoryStore with (subject_id, role, token, key) rows."""
    accounts = [
        {"subject_id": sid, "role": role, "token": token}
        for sid, role, token, _ in people
    ]
    service = CampusService(MemoryStore(), node, accounts=accounts)
    for sid, role, _, key in people:
        address = key.address if key is not None else None
        if role == "STUDENT":
            service.register_student(sid, sid.title(), f"{sid}@campus.example", address)
        elif role == "FACULTY":
            service.register_faculty(sid, sid.title(), f"{sid}@campus.example", address)
        elif role == "SUPERVISOR":
            service.register_supervisor(
                sid, sid.title(), f"{sid}@campus.example", address
            )
    return service
