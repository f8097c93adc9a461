// Keys stay in the browser. This module derives addresses, signs
// transactions, and keeps the private key in localStorage under an explicit
// export/import flow; no other module reads the key, and nothing here ever
// puts it in a request. Acceptable for a campus pilot, not hardened custody.

import { CanonicalValue, encode } from './canonical.js';
import * as curve from './secp256k1.js';
import { fromHex, sha256, toHex } from './sha256.js';

export const ADDRESS_PREFIX = 'vj1';

export interface KeyPair {
  privateKey: bigint;
  publicKeyHex: string; // 33-byte compressed point
  address: string;
}

export interface UnsignedTransfer {
  kind: 'TRANSFER' | 'MINT';
  from: string;
  to: string;
  amount: number;
  nonce: number;
  timestamp: number;
  memo: string;
}

export interface SignedTransaction extends UnsignedTransfer {
  public_key: string;
  signature: string;
  tx_id: string;
}

export function keypairFromPrivate(privateKey: bigint): KeyPair {
  const point = curve.scalarMult(privateKey);
  if (!point) throw new Error('private key out of range');
  const publicKey = curve.compress(point);
  return {
    privateKey,
    publicKeyHex: toHex(publicKey),
    address: deriveAddress(publicKey),
  };
}

export function keypairFromHex(privateHex: string): KeyPair {
  return keypairFromPrivate(BigInt('0x' + privateHex));
}

export function generateKeypair(): KeyPair {
  // rejection-sample a scalar in [1, N)
  const buf = new Uint8Array(32);
  for (;;) {
    crypto.getRandomValues(buf);
    let scalar = 0n;
    for (const b of buf) scalar = (scalar << 8n) | BigInt(b);
    if (scalar >= 1n && scalar < curve.N) return keypairFromPrivate(scalar);
  }
}

export function deriveAddress(publicKey: Uint8Array): string {
  curve.decompress(publicKey); // refuse non-points early
  return ADDRESS_PREFIX + toHex(sha256(publicKey).subarray(12));
}

export function signDigest(digest: Uint8Array, keypair: KeyPair): string {
  const { r, s, v } = curve.sign(digest, keypair.privateKey);
  const out = new Uint8Array(65);
  out.set(curve.bigToBytes(r, 32), 0);
  out.set(curve.bigToBytes(s, 32), 32);
  out[64] = v;
  return toHex(out);
}

export function signTransaction(tx: UnsignedTransfer, keypair: KeyPair): SignedTransaction {
  if (tx.kind === 'TRANSFER' && tx.from !== keypair.address) {
    throw new Error(`key owns ${keypair.address}, transaction is from ${tx.from}`);
  }
  const payload: Record<string, CanonicalValue> = {
    kind: tx.kind,
    from: tx.from,
    to: tx.to,
    amount: tx.amount,
    nonce: tx.nonce,
    timestamp: tx.timestamp,
    memo: tx.memo,
    public_key: keypair.publicKeyHex,
  };
  const digest = sha256(encode(payload));
  return {
    ...tx,
    public_key: keypair.publicKeyHex,
    signature: signDigest(digest, keypair),
    tx_id: toHex(digest),
  };
}

// The signed object spreads `from` as a property name, which is what the
// node's wire format wants; this helper exists so call sites do not build
// the dict by hand and drift from the expected key set.
export function wireFormat(tx: SignedTransaction): Record<string, CanonicalValue> {
  return {
    kind: tx.kind,
    from: tx.from,
    to: tx.to,
    amount: tx.amount,
    nonce: tx.nonce,
    timestamp: tx.timestamp,
    memo: tx.memo,
    public_key: tx.public_key,
    signature: tx.signature,
    tx_id: tx.tx_id,
  };
}

// -- keystore ----------------------------------------------------------------

const STORE_KEY = 'campuschain.keystore';

export interface StoredKey {
  label: string;
  privateHex: string;
  address: string;
}

function storage(): Storage | null {
  try {
    return typeof localStorage === 'undefined' ? null : localStorage;
  } catch {
    return null;
  }
}

export function loadKeys(): StoredKey[] {
  const raw = storage()?.getItem(STORE_KEY);
  if (!raw) return [];
  try {
    const parsed = JSON.parse(raw) as StoredKey[];
    return Array.isArray(parsed) ? parsed : [];
  } catch {
    return [];
  }
}

export function saveKey(label: string, keypair: KeyPair): StoredKey {
  const entry: StoredKey = {
    label,
    privateHex: toHex(curve.bigToBytes(keypair.privateKey, 32)),
    address: keypair.address,
  };
  const keys = loadKeys().filter((k) => k.address !== entry.address);
  keys.push(entry);
  storage()?.setItem(STORE_KEY, JSON.stringify(keys));
  return entry;
}

export function keyForAddress(address: string): KeyPair | null {
  const entry = loadKeys().find((k) => k.address === address);
  if (!entry) return null;
  const keypair = keypairFromHex(entry.privateHex);
  // a tampered store must not silently sign for the wrong address
  if (keypair.address !== entry.address) return null;
  return keypair;
}

export function exportKey(address: string): string | null {
  const entry = loadKeys().find((k) => k.address === address);
  return entry ? entry.privateHex : null;
}

export function importKey(label: string, privateHex: string): StoredKey {
  fromHex(privateHex); // validates format before touching the store
  return saveKey(label, keypairFromHex(privateHex));
}
