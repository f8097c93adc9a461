"""Keys, addresses, and signatures, cross-checked against OpenSSL.

Two independent oracles anchor this file:

* the RFC 6979 appendix vector for secp256k1 with SHA-256 (key = 1,
  message "Satoshi Nakamoto"), widely reproduced in other implementations;
* the `cryptography` package (OpenSSL), which both verifies our signatures
  and produces signatures for our verifier.  The two code paths share no
  arithmetic, so agreement is meaningful.
"""
import hashlib

import pytest
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed,
    decode_dss_signature,
)
from hypothesis import given, settings
from hypothesis import strategies as st

from campuschain import curve, wallet
from campuschain.ledger import make_transfer

# RFC 6979, appendix A.2.5 style vector for secp256k1/SHA-256 (key=1,
# message "Satoshi Nakamoto"); s is the low-s normalization of the
# published value.
VECTOR_DIGEST = hashlib.sha256(b"Satoshi Nakamoto").digest()
VECTOR_R = 0x934B1EA10A4B3C1757E2B0C017D0B6143CE3C9A7E6A4A49860D7A6AB210EE3D8
VECTOR_S_LOW = 0x2442CE9D2B916064108014783E923EC36B49743E2FFA1C4496F01A512AAFD9E5


def test_rfc6979_vector_low_s():
    r, s, _ = curve.sign(VECTOR_DIGEST, 1)
    assert (r, s) == (VECTOR_R, VECTOR_S_LOW)
    assert s <= curve.N // 2


def test_generator_point_golden():
    # public key for private key 1 is the generator itself
    assert (
        curve.compress(curve.scalar_mult(1)).hex()
        == "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798"
    )
    # 2G, computed independently by any EC calculator
    assert (
        curve.scalar_mult(2)[0]
        == 0xC6047F9441ED7D6D3045406E95C07CD85C778E4B8CEF3CA7ABAC09B95C709EE5
    )


def test_openssl_verifies_our_signature():
    keypair = wallet.generate_keypair(seed=11)
    digest = hashlib.sha256(b"cross-check payload").digest()
    r, s, _ = curve.sign(digest, keypair.private_key)
    pub = ec.EllipticCurvePublicKey.from_encoded_point(
        ec.SECP256K1(), keypair.public_key
    )
    from cryptography.hazmat.primitives.asymmetric.utils import encode_dss_signature

    pub.verify(
        encode_dss_signature(r, s), digest, ec.ECDSA(Prehashed(hashes.SHA256()))
    )  # raises on mismatch


def test_our_verifier_accepts_openssl_signature():
    private_value = 0xC0FFEE ^ 0x5EED
    key = ec.derive_private_key(private_value, ec.SECP256K1())
    digest = hashlib.sha256(b"reverse direction").digest()
    der = key.sign(digest, ec.ECDSA(Prehashed(hashes.SHA256())))
    r, s = decode_dss_signature(der)
    point = curve.scalar_mult(private_value)
    assert curve.verify(digest, r, s, point)


def test_recovery_round_trip():
    keypair = wallet.generate_keypair(seed=23)
    digest = hashlib.sha256(b"recover me").digest()
    r, s, v = curve.sign(digest, keypair.private_key)
    recovered = curve.recover(digest, r, s, v)
    assert curve.compress(recovered) == keypair.public_key


def test_fixed_seed_signature_byte_stable():
    # RFC 6979 nonces make signing deterministic: same key + digest,
    # same bytes, across runs and machines.
    keypair = wallet.generate_keypair(seed=99)
    digest = hashlib.sha256(b"stable").digest()
    assert wallet.sign_digest(digest, keypair) == wallet.sign_digest(digest, keypair)


def test_address_shape_and_derivation():
    keypair = wallet.generate_keypair(seed=4)
    assert keypair.address.startswith(wallet.ADDRESS_PREFIX)
    assert len(keypair.address) == len(wallet.ADDRESS_PREFIX) + wallet.ADDRESS_HEX_LEN
    assert wallet.is_address(keypair.address)
    assert not wallet.is_address("vj1notanaddress")
    assert wallet.derive_address(keypair.public_key) == keypair.address


def test_derive_address_rejects_garbage():
    from campuschain.errors import DomainError

    with pytest.raises(DomainError) as err:
        wallet.derive_address(b"\x02" + b"\x00" * 32)
    assert err.value.code == "INVALID_PUBKEY"


def test_keyfile_round_trip(tmp_path):
    keypair = wallet.generate_keypair(seed=31)
    path = tmp_path / "key.json"
    wallet.save_keyfile(str(path), keypair)
    loaded = wallet.load_keyfile(str(path))
    assert loaded == keypair
    assert (path.stat().st_mode & 0o777) == 0o600


def test_transaction_signature_verdict():
    keypair = wallet.generate_keypair(seed=12)
    other = wallet.generate_keypair(seed=13)
    tx = make_transfer(keypair, other.address, 5, nonce=0, timestamp=1000)
    assert wallet.verify_signature(tx)

    # flipping any signed field must fail
    from dataclasses import replace

    assert wallet.verify_signature(replace(tx, amount=6)).code == "BAD_SIG"
    assert wallet.verify_signature(replace(tx, to=keypair.address)).code == "BAD_SIG"
    assert wallet.verify_signature(replace(tx, nonce=1)).code == "BAD_SIG"


def test_wrong_key_claims_are_caught():
    keypair = wallet.generate_keypair(seed=14)
    imposter = wallet.generate_keypair(seed=15)
    tx = make_transfer(keypair, imposter.address, 5, nonce=0, timestamp=1000)
    # swap in the imposter's pubkey: digest no longer matches tx_id
    forged = tx.to_json()
    forged["public_key"] = imposter.public_hex
    from campuschain.ledger import Transaction

    verdict = wallet.verify_signature(Transaction.from_json(forged))
    assert not verdict and verdict.code == "BAD_SIG"


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=curve.N - 1), st.binary(min_size=1))
def test_sign_verify_recover_property(private_key, message):
    digest = hashlib.sha256(message).digest()
    r, s, v = curve.sign(digest, private_key)
    point = curve.scalar_mult(private_key)
    assert curve.verify(digest, r, s, point)
    assert curve.recover(digest, r, s, v) == point
    assert s <= curve.N // 2
