// secp256k1 arithmetic and deterministic ECDSA, ported from the node's
// pure-Python route so a browser signs byte-identically to the reference:
// RFC 6979 nonces, low-s normalization, 65-byte r || s || v signatures.
// bigint keeps this honest; no Number ever touches field elements.

import { hmacSha256, sha256 } from './sha256.js';

export const P = (1n << 256n) - (1n << 32n) - 977n;
export const N = 0xfffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141n;
const B = 7n;
const GX = 0x79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798n;
const GY = 0x483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8n;

export type Point = readonly [bigint, bigint];
type Jacobian = readonly [bigint, bigint, bigint];

const JINF: Jacobian = [0n, 0n, 0n];

const mod = (a: bigint, m: bigint): bigint => ((a % m) + m) % m;

function modPow(base: bigint, exp: bigint, m: bigint): bigint {
  let result = 1n;
  let b = mod(base, m);
  let e = exp;
  while (e > 0n) {
    if (e & 1n) result = (result * b) % m;
    b = (b * b) % m;
    e >>= 1n;
  }
  return result;
}

const inv = (a: bigint, m: bigint): bigint => modPow(a, m - 2n, m);

function jDouble(p: Jacobian): Jacobian {
  const [x1, y1, z1] = p;
  if (y1 === 0n) return JINF;
  const s = mod(4n * x1 * y1 * y1, P);
  const m = mod(3n * x1 * x1, P); // a = 0 for this curve
  const x3 = mod(m * m - 2n * s, P);
  const y3 = mod(m * (s - x3) - 8n * modPow(y1, 4n, P), P);
  const z3 = mod(2n * y1 * z1, P);
  return [x3, y3, z3];
}

function jAdd(p: Jacobian, q: Jacobian): Jacobian {
  if (p[2] === 0n) return q;
  if (q[2] === 0n) return p;
  const [x1, y1, z1] = p;
  const [x2, y2, z2] = q;
  const z1z1 = mod(z1 * z1, P);
  const z2z2 = mod(z2 * z2, P);
  const u1 = mod(x1 * z2z2, P);
  const u2 = mod(x2 * z1z1, P);
  const s1 = mod(y1 * z2 * z2z2, P);
  const s2 = mod(y2 * z1 * z1z1, P);
  if (u1 === u2) {
    if (s1 !== s2) return JINF;
    return jDouble(p);
  }
  const h = mod(u2 - u1, P);
  const r = mod(s2 - s1, P);
  const hh = mod(h * h, P);
  const hhh = mod(h * hh, P);
  const v = mod(u1 * hh, P);
  const x3 = mod(r * r - hhh - 2n * v, P);
  const y3 = mod(r * (v - x3) - s1 * hhh, P);
  const z3 = mod(z1 * z2 * h, P);
  return [x3, y3, z3];
}

function jMul(k: bigint, point: Jacobian): Jacobian {
  let acc = JINF;
  let addend = point;
  let e = k;
  while (e > 0n) {
    if (e & 1n) acc = jAdd(acc, addend);
    addend = jDouble(addend);
    e >>= 1n;
  }
  return acc;
}

function toAffine(p: Jacobian): Point | null {
  if (p[2] === 0n) return null;
  const zinv = inv(p[2], P);
  const zinv2 = mod(zinv * zinv, P);
  return [mod(p[0] * zinv2, P), mod(p[1] * zinv2 * zinv, P)];
}

const fromAffine = (point: Point): Jacobian => [point[0], point[1], 1n];

export function scalarMult(k: bigint, point?: Point): Point | null {
  const base: Jacobian = point ? fromAffine(point) : [GX, GY, 1n];
  return toAffine(jMul(mod(k, N), base));
}

const bytesToBig = (bytes: Uint8Array): bigint => {
  let out = 0n;
  for (const b of bytes) out = (out << 8n) | BigInt(b);
  return out;
};

export function bigToBytes(value: bigint, length: number): Uint8Array {
  const out = new Uint8Array(length);
  let v = value;
  for (let i = length - 1; i >= 0; i--) {
    out[i] = Number(v & 0xffn);
    v >>= 8n;
  }
  if (v !== 0n) throw new RangeError('value does not fit');
  return out;
}

export function compress(point: Point): Uint8Array {
  const out = new Uint8Array(33);
  out[0] = point[1] & 1n ? 3 : 2;
  out.set(bigToBytes(point[0], 32), 1);
  return out;
}

export function decompress(data: Uint8Array): Point {
  if (data.length !== 33 || (data[0] !== 2 && data[0] !== 3)) {
    throw new Error('not a 33-byte compressed point');
  }
  const x = bytesToBig(data.subarray(1));
  if (x >= P) throw new Error('x out of field range');
  const ySq = mod(modPow(x, 3n, P) + B, P);
  let y = modPow(ySq, (P + 1n) / 4n, P); // P % 4 == 3
  if (mod(y * y, P) !== ySq) throw new Error('x is not on the curve');
  if ((y & 1n) !== BigInt(data[0]! & 1)) y = P - y;
  return [x, y];
}

function rfc6979Nonce(digest: Uint8Array, privateKey: bigint): bigint {
  const x = bigToBytes(privateKey, 32);
  const h1 = mod(bytesToBig(digest), N);
  const bits2octets = bigToBytes(h1, 32);
  let v: Uint8Array = new Uint8Array(32).fill(0x01);
  let k: Uint8Array = new Uint8Array(32);
  const concat = (...parts: Uint8Array[]) => {
    const total = parts.reduce((n, p) => n + p.length, 0);
    const out = new Uint8Array(total);
    let off = 0;
    for (const p of parts) { out.set(p, off); off += p.length; }
    return out;
  };
  k = hmacSha256(k, concat(v, Uint8Array.of(0x00), x, bits2octets));
  v = hmacSha256(k, v);
  k = hmacSha256(k, concat(v, Uint8Array.of(0x01), x, bits2octets));
  v = hmacSha256(k, v);
  for (;;) {
    v = hmacSha256(k, v);
    const candidate = bytesToBig(v);
    if (candidate >= 1n && candidate < N) return candidate;
    k = hmacSha256(k, concat(v, Uint8Array.of(0x00)));
    v = hmacSha256(k, v);
  }
}

export interface CompactSignature {
  r: bigint;
  s: bigint;
  v: number; // recovery id: nonce point y parity, bit 1 set when x >= N
}

export function sign(digest: Uint8Array, privateKey: bigint): CompactSignature {
  if (digest.length !== 32) throw new Error('digest must be 32 bytes');
  if (privateKey < 1n || privateKey >= N) throw new Error('private key out of range');
  const z = mod(bytesToBig(digest), N);
  let k = rfc6979Nonce(digest, privateKey);
  let r = 0n, s = 0n, rx = 0n, ry = 0n;
  for (;;) {
    const pt = scalarMult(k);
    if (pt) {
      [rx, ry] = pt;
      r = mod(rx, N);
      s = mod(inv(k, N) * (z + r * privateKey), N);
      if (r !== 0n && s !== 0n) break;
    }
    // astronomically unlikely; re-derive k from a tweaked digest
    k = rfc6979Nonce(sha256(digest), privateKey);
  }
  let v = Number(ry & 1n) | (rx >= N ? 2 : 0);
  if (s > N / 2n) { // canonical low-s form; flips the nonce point's parity
    s = N - s;
    v ^= 1;
  }
  return { r, s, v };
}

export function verify(digest: Uint8Array, r: bigint, s: bigint, publicKey: Point): boolean {
  if (r < 1n || r >= N || s < 1n || s >= N) return false;
  const [x, y] = publicKey;
  if (mod(y * y - x * x * x - B, P) !== 0n) return false;
  const z = mod(bytesToBig(digest), N);
  const w = inv(s, N);
  const u1 = mod(z * w, N);
  const u2 = mod(r * w, N);
  const pt = toAffine(jAdd(jMul(u1, [GX, GY, 1n]), jMul(u2, fromAffine(publicKey))));
  if (!pt) return false;
  return mod(pt[0], N) === r;
}
