// Cross-implementation vectors: every hex constant below was produced by
// the node this dashboard talks to. If any of these drift, transactions
// signed in the browser will be rejected on submit, so these are the first
// tests to read when signing breaks.

import { describe, expect, it } from 'vitest';

import { encode } from '../src/canonical.js';
import * as curve from '../src/secp256k1.js';
import { fromHex, hmacSha256, sha256, toHex, utf8 } from '../src/sha256.js';
import {
  deriveAddress,
  keypairFromHex,
  keypairFromPrivate,
  signDigest,
  signTransaction,
  wireFormat,
} from '../src/wallet.js';

describe('sha256', () => {
  it('matches the reference vectors', () => {
    expect(toHex(sha256(utf8('')))).toBe(
      'e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855',
    );
    expect(toHex(sha256(utf8('abc')))).toBe(
      'ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad',
    );
    // two-block input: padding boundary exercised
    expect(toHex(sha256(utf8('a'.repeat(64))))).toBe(
      'ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb',
    );
  });

  it('hmac matches RFC 4231 case 2', () => {
    const mac = hmacSha256(utf8('Jefe'), utf8('what do ya want for nothing?'));
    expect(toHex(mac)).toBe(
      '5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843',
    );
  });
});

describe('canonical encoding', () => {
  it('sorts keys and strips whitespace', () => {
    expect(toHex(encode({ b: 2, a: 1 }))).toBe('7b2261223a312c2262223a327d');
  });

  it('round-trips the node vectors byte for byte', () => {
    expect(
      toHex(encode({ kind: 'TRANSFER', from: 'vj1ab', amount: 120, memo: '', ok: true, nil: null })),
    ).toBe(
      '7b22616d6f756e74223a3132302c2266726f6d223a22766a316162222c226b696e64223a225452414e53464552222c226d656d6f223a22222c226e696c223a6e756c6c2c226f6b223a747275657d',
    );
    // non-ASCII travels raw, not as \u escapes
    expect(toHex(encode({ memo: 'café ☕ donation', n: 0 }))).toBe(
      '7b226d656d6f223a22636166c3a920e2989520646f6e6174696f6e222c226e223a307d',
    );
    expect(
      toHex(encode({ nested: { z: [1, 2, { y: 'x' }], a: 's"la\\sh\n\t' } })),
    ).toBe(
      '7b226e6573746564223a7b2261223a22735c226c615c5c73685c6e5c74222c227a223a5b312c322c7b2279223a2278227d5d7d7d',
    );
  });

  it('refuses floats', () => {
    expect(() => encode({ amount: 1.5 })).toThrow(TypeError);
  });
});

describe('keys and addresses', () => {
  // fixed scalar 31415, as provisioned by the node's seeded test mode
  const kp = keypairFromPrivate(0x7ab7n);

  it('derives the compressed point and address', () => {
    expect(kp.publicKeyHex).toBe(
      '0388809c8deaf75c1819fc91964f533f1f46de5b3ff82b5e2b739ff5bfe374937f',
    );
    expect(kp.address).toBe('vj1c2090abe8bad5bdf4e61176ac38fbd1dd6b7f20f');
  });

  it('refuses to derive an address from a non-point', () => {
    const bad = fromHex(
      '02ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff',
    );
    expect(() => deriveAddress(bad)).toThrow();
  });

  it('compress and decompress are inverses', () => {
    const point = curve.scalarMult(12345n)!;
    expect(curve.decompress(curve.compress(point))).toEqual(point);
  });
});

describe('deterministic signing', () => {
  const kp = keypairFromPrivate(0x7ab7n);

  it('reproduces the node signature for a fixed digest', () => {
    const digest = sha256(utf8('vector digest input'));
    expect(toHex(digest)).toBe(
      '83c239a78a4a96e746f84febfd78898dc1b82734d16a6cb7eaecf11cc8801f14',
    );
    expect(signDigest(digest, kp)).toBe(
      'd2a5d4749bedf27c8eb2541e28f93ae946eebbed49f5bbd29ac6a7da5a047d82522122839be7d2289d5d8285947b50673debfb83f8098668d06e479a09e7997900',
    );
  });

  it('always produces low-s signatures that verify', () => {
    const point = curve.scalarMult(kp.privateKey)!;
    for (let i = 0; i < 8; i++) {
      const digest = sha256(utf8(`message ${i}`));
      const { r, s } = curve.sign(digest, kp.privateKey);
      expect(s <= curve.N / 2n).toBe(true);
      expect(curve.verify(digest, r, s, point)).toBe(true);
      // a flipped digest must not verify
      expect(curve.verify(sha256(digest), r, s, point)).toBe(false);
    }
  });

  it('signs a transfer byte-identically to the node', () => {
    const signed = signTransaction(
      {
        kind: 'TRANSFER',
        from: kp.address,
        to: 'vj1c4199c5cee057e07694e86b1dd284b0a0633b01b',
        amount: 120,
        nonce: 3,
        timestamp: 1700000000,
        memo: 'campaign:cmp-ა',
      },
      kp,
    );
    expect(signed.tx_id).toBe(
      '479524cf58fd87aaeb2fd7b753b1158550632bdaee3a50eac33202d494f58309',
    );
    expect(signed.signature).toBe(
      '0600e1ac40f060e12ccebc96d3e98e86284d8403f9e4721b19e4bbe0e4b8f6f316e4f631c8c0988f3bd18807f5a3ea51445080d56ab4ff88f477a6ae76a4383001',
    );
    expect(toHex(encode(wireFormat(signed)))).toBe(
      '7b22616d6f756e74223a3132302c2266726f6d223a22766a3163323039306162653862616435626466346536313137366163333866626431646436623766323066222c226b696e64223a225452414e53464552222c226d656d6f223a2263616d706169676e3a636d702de18390222c226e6f6e6365223a332c227075626c69635f6b6579223a22303338383830396338646561663735633138313966633931393634663533336631663436646535623366663832623565326237333966663562666533373439333766222c227369676e6174757265223a2230363030653161633430663036306531326363656263393664336539386538363238346438343033663965343732316231396534626265306534623866366633313665346636333163386330393838663362643138383037663561336561353134343530383064353661623466663838663437376136616537366134333833303031222c2274696d657374616d70223a313730303030303030302c22746f223a22766a3163343139396335636565303537653037363934653836623164643238346230613036333362303162222c2274785f6964223a2234373935323463663538666438376161656232666437623735336231313538353530363332626461656533613530656163333332303264343934663538333039227d',
    );
  });

  it('signs a mint with the authority sender', () => {
    const signed = signTransaction(
      {
        kind: 'MINT',
        from: 'AUTHORITY',
        to: 'vj1c4199c5cee057e07694e86b1dd284b0a0633b01b',
        amount: 55,
        nonce: 0,
        timestamp: 1700000500,
        memo: 'reward:research:PUBLISHED:2026-T1',
      },
      kp,
    );
    expect(signed.tx_id).toBe(
      'e48c66b639d0f0e9cda02268d45a80e8e0fb05ddec2704862dfec4ca90f094d8',
    );
    expect(signed.signature).toBe(
      'aa0ca7235519d07dd4e433ef5a0f8cce7f7815adeea7114f0d611c7df6b341c112707ede49bdcb7b600d3801245e58d2f3a81b9d09e25f7206a8e984eb721b4f01',
    );
  });

  it('refuses to sign a transfer from an address the key does not own', () => {
    expect(() =>
      signTransaction(
        {
          kind: 'TRANSFER',
          from: 'vj1' + 'ab'.repeat(20),
          to: kp.address,
          amount: 1,
          nonce: 0,
          timestamp: 1,
          memo: '',
        },
        kp,
      ),
    ).toThrow(/owns/);
  });

  it('keypairFromHex accepts the exported form', () => {
    const twin = keypairFromHex(
      '0000000000000000000000000000000000000000000000000000000000007ab7',
    );
    expect(twin.address).toBe(kp.address);
  });
});
