// Canonical JSON bytes, matching the node exactly.
//
// The node hashes and signs canonical bytes: object keys sorted by code
// point, no whitespace, integers unquoted, floats refused, strings as raw
// UTF-8. Anything we sign here must re-encode to the identical bytes on the
// node or the transaction id will not match, so this module is the only
// JSON writer the signing path is allowed to use.

import { utf8 } from './sha256.js';

export type CanonicalValue =
  | string
  | number
  | boolean
  | null
  | CanonicalValue[]
  | { [key: string]: CanonicalValue };

// JSON string escaping shared by the node's encoder and JSON.stringify:
// short escapes for the common controls, \u00XX for the rest, everything
// else (including non-ASCII) written raw.
function quote(text: string): string {
  let out = '"';
  for (const ch of text) {
    const code = ch.codePointAt(0)!;
    if (ch === '"') out += '\\"';
    else if (ch === '\\') out += '\\\\';
    else if (code >= 0x20) out += ch;
    else if (ch === '\n') out += '\\n';
    else if (ch === '\t') out += '\\t';
    else if (ch === '\r') out += '\\r';
    else if (ch === '\b') out += '\\b';
    else if (ch === '\f') out += '\\f';
    else out += '\\u' + code.toString(16).padStart(4, '0');
  }
  return out + '"';
}

// Key order must be code-point order; String.prototype.sort compares UTF-16
// units, which disagrees above the BMP.
function byCodePoint(a: string, b: string): number {
  const as = [...a], bs = [...b];
  for (let i = 0; i < Math.min(as.length, bs.length); i++) {
    const d = as[i]!.codePointAt(0)! - bs[i]!.codePointAt(0)!;
    if (d !== 0) return d;
  }
  return as.length - bs.length;
}

function write(value: CanonicalValue): string {
  if (value === null) return 'null';
  if (typeof value === 'boolean') return value ? 'true' : 'false';
  if (typeof value === 'number') {
    if (!Number.isSafeInteger(value)) {
      throw new TypeError(`${value} has no canonical form`);
    }
    return String(value);
  }
  if (typeof value === 'string') return quote(value);
  if (Array.isArray(value)) return '[' + value.map(write).join(',') + ']';
  const keys = Object.keys(value).sort(byCodePoint);
  return '{' + keys.map((k) => quote(k) + ':' + write(value[k]!)).join(',') + '}';
}

export function encode(value: CanonicalValue): Uint8Array {
  return utf8(write(value));
}
