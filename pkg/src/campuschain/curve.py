"""secp256k1 arithmetic and deterministic ECDSA.

Self-contained implementation of the curve operations the wallet and the
block sealer need:

* point addition / doubling in Jacobian coordinates (one field inversion per
  scalar multiplication instead of one per step)
* compressed point encode/decode
* RFC 6979 deterministic nonces, so a given key and message always produce
  the same signature bytes
* compact 65-byte signatures ``r || s || v`` with ``s`` normalized to the low
  half of the group order and ``v`` the recovery id, so a verifier can
  recover the signing public key from the signature alone

Production verification goes through OpenSSL (see wallet.py) for speed; the
pure-Python ``verify`` here is the independent second route used by tests and
by public-key recovery.
"""
from __future__ import annotations

import hashlib
import hmac

# Curve: y^2 = x^3 + 7 over F_P, group order N, generator G.
P = 2**256 - 2**32 - 977
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
B = 7
GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8

Point = tuple[int, int]  # affine; None encodes the point at infinity

_JINF = (0, 0, 0)


def _jdouble(p):
    x1, y1, z1 = p
    if not y1:
        return _JINF
    s = (4 * x1 * y1 * y1) % P
    m = (3 * x1 * x1) % P  # a = 0 for this curve
    x3 = (m * m - 2 * s) % P
    y3 = (m * (s - x3) - 8 * pow(y1, 4, P)) % P
    z3 = (2 * y1 * z1) % P
    return (x3, y3, z3)


def _jadd(p, q):
    if not p[2]:
        return q
    if not q[2]:
        return p
    x1, y1, z1 = p
    x2, y2, z2 = q
    z1z1 = z1 * z1 % P
    z2z2 = z2 * z2 % P
    u1 = x1 * z2z2 % P
    u2 = x2 * z1z1 % P
    s1 = y1 * z2 * z2z2 % P
    s2 = y2 * z1 * z1z1 % P
    if u1 == u2:
        if s1 != s2:
            return _JINF
        return _jdouble(p)
    h = (u2 - u1) % P
    r = (s2 - s1) % P
    hh = h * h % P
    hhh = h * hh % P
    v = u1 * hh % P
    x3 = (r * r - hhh - 2 * v) % P
    y3 = (r * (v - x3) - s1 * hhh) % P
    z3 = z1 * z2 * h % P
    return (x3, y3, z3)


def _jmul(k, point):
    acc = _JINF
    addend = point
    while k:
        if k & 1:
            acc = _jadd(acc, addend)
        addend = _jdouble(addend)
        k >>= 1
    return acc


def _to_affine(p) -> Point | None:
    if not p[2]:
        return None
    zinv = pow(p[2], P - 2, P)
    zinv2 = zinv * zinv % P
    return (p[0] * zinv2 % P, p[1] * zinv2 * zinv % P)


def _from_affine(point: Point | None):
    if point is None:
        return _JINF
    return (point[0], point[1], 1)


def scalar_mult(k: int, point: Point | None = None) -> Point | None:
    """k * point (generator when point omitted), in affine coordinates."""
    base = _from_affine(point) if point is not None else (GX, GY, 1)
    return _to_affine(_jmul(k % N, base))


def point_add(a: Point | None, b: Point | None) -> Point | None:
    return _to_affine(_jadd(_from_affine(a), _from_affine(b)))


def on_curve(point: Point) -> bool:
    x, y = point
    return 0 <= x < P and 0 <= y < P and (y * y - x * x * x - B) % P == 0


def compress(point: Point) -> bytes:
    """33-byte SEC1 compressed encoding: parity prefix plus big-endian x."""
    x, y = point
    return bytes([2 + (y & 1)]) + x.to_bytes(32, "big")


def decompress(data: bytes) -> Point:
    """Inverse of compress. Raises ValueError for anything not a curve point."""
    if len(data) != 33 or data[0] not in (2, 3):
        raise ValueError("not a 33-byte compressed point")
    x = int.from_bytes(data[1:], "big")
    if x >= P:
        raise ValueError("x out of field range")
    y_sq = (pow(x, 3, P) + B) % P
    y = pow(y_sq, (P + 1) // 4, P)  # P % 4 == 3, so this is a square root
    if y * y % P != y_sq:
        raise ValueError("x is not on the curve")
    if (y & 1) != (data[0] & 1):
        y = P - y
    return (x, y)


def rfc6979_nonce(digest: bytes, private_key: int) -> int:
    """Deterministic ECDSA nonce per RFC 6979 (HMAC-SHA256 construction)."""
    qlen_bytes = 32
    x = private_key.to_bytes(qlen_bytes, "big")
    h1 = int.from_bytes(digest, "big") % N
    bits2octets = h1.to_bytes(qlen_bytes, "big")
    v = b"\x01" * 32
    k = b"\x00" * 32
    k = hmac.new(k, v + b"\x00" + x + bits2octets, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    k = hmac.new(k, v + b"\x01" + x + bits2octets, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    while True:
        v = hmac.new(k, v, hashlib.sha256).digest()
        candidate = int.from_bytes(v, "big")
        if 1 <= candidate < N:
            return candidate
        k = hmac.new(k, v + b"\x00", hashlib.sha256).digest()
        v = hmac.new(k, v, hashlib.sha256).digest()


def sign(digest: bytes, private_key: int) -> tuple[int, int, int]:
    """Sign a 32-byte digest; returns (r, s, recovery_id) with low s.

    The recovery id packs the parity of the nonce point's y and whether its x
    overflowed the group order, which is what `recover` needs to rebuild the
    public key without trial and error.
    """
    if len(digest) != 32:
        raise ValueError("digest must be 32 bytes")
    if not 1 <= private_key < N:
        raise ValueError("private key out of range")
    z = int.from_bytes(digest, "big") % N
    k = rfc6979_nonce(digest, private_key)
    while True:
        rx, ry = scalar_mult(k)
        r = rx % N
        s = pow(k, N - 2, N) * (z + r * private_key) % N
        if r and s:
            break
        # astronomically unlikely; re-derive k from a tweaked digest
        k = rfc6979_nonce(hashlib.sha256(digest).digest(), private_key)
    v = (ry & 1) | (2 if rx >= N else 0)
    if s > N // 2:  # canonical low-s form; flips the nonce point's parity
        s = N - s
        v ^= 1
    return r, s, v


def verify(digest: bytes, r: int, s: int, public_key: Point) -> bool:
    """Textbook ECDSA verification. Pure-Python route, used as an oracle."""
    if not (1 <= r < N and 1 <= s < N) or not on_curve(public_key):
        return False
    z = int.from_bytes(digest, "big") % N
    w = pow(s, N - 2, N)
    u1 = z * w % N
    u2 = r * w % N
    pt = _to_affine(_jadd(_jmul(u1, (GX, GY, 1)), _jmul(u2, _from_affine(public_key))))
    if pt is None:
        return False
    return pt[0] % N == r


def recover(digest: bytes, r: int, s: int, v: int) -> Point:
    """Recover the signing public key from a compact signature.

    Raises ValueError when (r, s, v) cannot have signed this digest.
    """
    if not (1 <= r < N and 1 <= s < N and 0 <= v <= 3):
        raise ValueError("signature components out of range")
    x = r + (N if v & 2 else 0)
    if x >= P:
        raise ValueError("recovery x out of field range")
    point_r = decompress(bytes([2 + (v & 1)]) + x.to_bytes(32, "big"))
    z = int.from_bytes(digest, "big") % N
    r_inv = pow(r, N - 2, N)
    # Q = r^-1 (s*R - z*G)
    q = _jadd(_jmul(s, _from_affine(point_r)), _jmul((N - z) % N, (GX, GY, 1)))
    public = _to_affine(_jmul(r_inv, q))
    if public is None:
        raise ValueError("recovered the point at infinity")
    return public
