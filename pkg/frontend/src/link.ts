/** Share-link encoding.
 *
 * The service only exposes the grid at creation time and in the final
 * result, so the interview link carries the grid itself (base64url
 * JSON) next to the session id. Any device opening the link can then
 * bound the answer controls to the right scales; session state is
 * still read exclusively from the GET endpoints.
 */
import type { GridPayload } from "./types.js";

const ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

export function base64url(bytes: Uint8Array): string {
  let out = "";
  for (let k = 0; k < bytes.length; k += 3) {
    const b0 = bytes[k];
    const b1: number | undefined = bytes[k + 1];
    const b2: number | undefined = bytes[k + 2];
    out += ALPHABET[b0 >> 2];
    out += ALPHABET[((b0 & 3) << 4) | ((b1 ?? 0) >> 4)];
    if (b1 !== undefined) out += ALPHABET[((b1 & 15) << 2) | ((b2 ?? 0) >> 6)];
    if (b2 !== undefined) out += ALPHABET[b2 & 63];
  }
  return out;
}

export function base64urlDecode(text: string): Uint8Array {
  const values = Array.from(text, (ch) => {
    const v = ALPHABET.indexOf(ch);
    if (v < 0) throw new RangeError("invalid link encoding");
    return v;
  });
  const bytes: number[] = [];
  for (let k = 0; k < values.length; k += 4) {
    const a = values[k];
    const b: number | undefined = values[k + 1];
    const c: number | undefined = values[k + 2];
    const d: number | undefined = values[k + 3];
    if (b === undefined) throw new RangeError("invalid link encoding");
    bytes.push((a << 2) | (b >> 4));
    if (c !== undefined) bytes.push(((b & 15) << 4) | (c >> 2));
    if (d !== undefined) bytes.push(((c! & 3) << 6) | d);
  }
  return new Uint8Array(bytes);
}

/** Hash body (no leading "#") identifying a session, grid included. */
export function encodeSessionHash(sessionId: string, grid: GridPayload | null): string {
  const base = `s=${encodeURIComponent(sessionId)}`;
  if (!grid) return base;
  return `${base}&g=${base64url(new TextEncoder().encode(JSON.stringify(grid)))}`;
}

export function parseSessionHash(
  hash: string,
): { sessionId: string; grid: GridPayload | null } | null {
  const body = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!body) return null;
  const params = new URLSearchParams(body);
  const sessionId = params.get("s");
  if (!sessionId) return null;
  let grid: GridPayload | null = null;
  const encoded = params.get("g");
  if (encoded) {
    try {
      grid = JSON.parse(new TextDecoder().decode(base64urlDecode(encoded))) as GridPayload;
    } catch {
      grid = null;
    }
  }
  return { sessionId, grid };
}
