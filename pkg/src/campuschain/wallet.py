"""Keys, addresses, and client-side transaction signing.

Private keys are a client concern: node-side code paths only ever see public
keys and signatures, and nothing in this module is required to run on a node
except verification.  Signing is deterministic (RFC 6979 nonces via curve.py)
so a fixed key and transaction always produce identical signature bytes.

Verification is routed through OpenSSL (the `cryptography` package) because a
node verifies orders of magnitude more signatures than a client creates; the
pure-Python path in curve.py stays available as an independent cross-check.
"""
from __future__ import annotations

import hashlib
import json
import os
import secrets
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import TYPE_CHECKING

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed,
    encode_dss_signature,
)

from . import canonical, curve
from .errors import ACCEPT, DomainError, Verdict, reject

if TYPE_CHECKING:  # avoid a runtime cycle; ledger imports this module
    from .ledger import Transaction

ADDRESS_PREFIX = "vj1"
ADDRESS_HEX_LEN = 40  # 20 bytes
SIGNATURE_BYTES = 65  # r(32) || s(32) || recovery id(1)


@dataclass(frozen=True)
class KeyPair:
    """A secp256k1 private scalar and its compressed public point."""

    private_key: int
    public_key: bytes

    @property
    def address(self) -> str:
        return derive_address(self.public_key)

    @property
    def public_hex(self) -> str:
        return self.public_key.hex()


def generate_keypair(seed: int | None = None) -> KeyPair:
    """Create a key pair; a fixed seed gives a fixed key (test mode only).

    Scalar candidates outside [1, n-1] are resampled: randomly when unseeded,
    by hashing the rejected candidate when seeded, so seeded generation stays
    deterministic without ever returning an invalid scalar.
    """
    if seed is None:
        scalar = secrets.randbits(256)
        while not 1 <= scalar < curve.N:
            scalar = secrets.randbits(256)
    else:
        scalar = seed & (2**256 - 1)
        while not 1 <= scalar < curve.N:
            scalar = int.from_bytes(
                hashlib.sha256(scalar.to_bytes(32, "big")).digest(), "big"
            )
    public = curve.scalar_mult(scalar)
    assert public is not None
    return KeyPair(private_key=scalar, public_key=curve.compress(public))


def derive_address(public_key: bytes) -> str:
    """Address = prefix + last 20 bytes of SHA-256 of the compressed point."""
    try:
        curve.decompress(public_key)
    except (ValueError, TypeError) as exc:
        raise DomainError("INVALID_PUBKEY", str(exc)) from exc
    return ADDRESS_PREFIX + hashlib.sha256(public_key).digest()[-20:].hex()


def is_address(value: str) -> bool:
    if not isinstance(value, str) or not value.startswith(ADDRESS_PREFIX):
        return False
    body = value[len(ADDRESS_PREFIX):]
    return len(body) == ADDRESS_HEX_LEN and all(c in "0123456789abcdef" for c in body)


def save_keyfile(path: str, keypair: KeyPair) -> None:
    """Write a key file readable only by its owner."""
    payload = {
        "private_key": keypair.private_key.to_bytes(32, "big").hex(),
        "public_key": keypair.public_hex,
        "address": keypair.address,
    }
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
    with os.fdopen(fd, "w") as fh:
        fh.write(canonical.encode(payload).decode("utf-8"))
    os.chmod(path, 0o600)


def load_keyfile(path: str) -> KeyPair:
    with open(path) as fh:
        payload = json.load(fh)
    keypair = KeyPair(
        private_key=int(payload["private_key"], 16),
        public_key=bytes.fromhex(payload["public_key"]),
    )
    if payload.get("address") not in (None, keypair.address):
        raise DomainError("CORRUPT_KEYFILE", f"address mismatch in {path}")
    return keypair


def sign_digest(digest: bytes, keypair: KeyPair) -> str:
    """Compact 65-byte recoverable signature over a 32-byte digest, as hex."""
    r, s, v = curve.sign(digest, keypair.private_key)
    return (r.to_bytes(32, "big") + s.to_bytes(32, "big") + bytes([v])).hex()


def decode_signature(signature: str) -> tuple[int, int, int]:
    raw = bytes.fromhex(signature)
    if len(raw) != SIGNATURE_BYTES:
        raise ValueError(f"expected {SIGNATURE_BYTES} signature bytes")
    return (
        int.from_bytes(raw[:32], "big"),
        int.from_bytes(raw[32:64], "big"),
        raw[64],
    )


@lru_cache(maxsize=1 << 16)
def _openssl_verify(digest: bytes, r: int, s: int, public_key: bytes) -> bool:
    """OpenSSL-backed ECDSA check, memoized (all arguments are immutable)."""
    try:
        pub = ec.EllipticCurvePublicKey.from_encoded_point(ec.SECP256K1(), public_key)
        pub.verify(
            encode_dss_signature(r, s), digest, ec.ECDSA(Prehashed(hashes.SHA256()))
        )
        return True
    except (InvalidSignature, ValueError):
        return False


def verify_digest(digest: bytes, signature: str, public_key: bytes) -> bool:
    try:
        r, s, _ = decode_signature(signature)
    except ValueError:
        return False
    if not (1 <= r < curve.N and 1 <= s < curve.N):
        return False
    return _openssl_verify(digest, r, s, public_key)


def sign_transaction(tx: "Transaction", keypair: KeyPair) -> "Transaction":
    """Attach public key, signature, and id to an unsigned transaction.

    For transfers the key must own tx.from; a mint may be signed by any key
    (whether that key belongs to a validator is the state machine's check).
    """
    if tx.kind == "TRANSFER" and keypair.address != tx.sender:
        raise DomainError(
            "ADDRESS_MISMATCH",
            f"key owns {keypair.address}, transaction is from {tx.sender}",
        )
    prepared = replace(tx, public_key=keypair.public_hex)
    digest = prepared.signing_digest()
    return replace(
        prepared,
        signature=sign_digest(digest, keypair),
        tx_id=digest.hex(),
    )


@lru_cache(maxsize=1 << 16)
def verify_signature(tx: "Transaction") -> Verdict:
    """Check a transaction's id, key/address binding, and ECDSA signature.

    Mint transactions skip the address binding (their `from` is the authority
    sentinel); whether the signer is an approved validator is checked when
    the transaction is applied to account state.
    """
    digest = tx.signing_digest()
    if tx.tx_id != digest.hex():
        return reject("BAD_SIG", "tx_id does not match canonical bytes")
    try:
        public_key = bytes.fromhex(tx.public_key)
        curve.decompress(public_key)
    except (ValueError, TypeError):
        return reject("BAD_SIG", "malformed public key")
    if tx.kind == "TRANSFER" and derive_address(public_key) != tx.sender:
        return reject("ADDRESS_MISMATCH", "public key does not own the from address")
    if not verify_digest(digest, tx.signature, public_key):
        return reject("BAD_SIG", "signature does not verify")
    return ACCEPT
