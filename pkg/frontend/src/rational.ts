/** Exact rational numbers over bigint.
 *
 * The session service speaks rationals as strings: terminating decimals
 * ("2.5") when the reduced denominator is 2^a*5^b, "8/3" otherwise.
 * Everything entered by a user is converted to this form before any
 * comparison, so scale bounds are checked exactly, never in floats.
 */

function gcd(a: bigint, b: bigint): bigint {
  while (b !== 0n) {
    const r = a % b;
    a = b;
    b = r;
  }
  return a;
}

const DECIMAL = /^([+-]?)(\d+)(?:\.(\d+))?$/;
const FRACTION = /^([+-]?)(\d+)\s*\/\s*(\d+)$/;

export class Rational {
  readonly num: bigint;
  readonly den: bigint;

  constructor(num: bigint, den: bigint = 1n) {
    if (den === 0n) throw new RangeError("zero denominator");
    if (den < 0n) {
      num = -num;
      den = -den;
    }
    const g = gcd(num < 0n ? -num : num, den) || 1n;
    this.num = num / g;
    this.den = den / g;
  }

  /** Accepts "3", "-2.5", "7/4" (integer parts only around the slash). */
  static parse(text: string): Rational {
    const t = text.trim();
    let m = DECIMAL.exec(t);
    if (m) {
      const sign = m[1] === "-" ? -1n : 1n;
      const frac = m[3] ?? "";
      const den = 10n ** BigInt(frac.length);
      const num = BigInt(m[2]) * den + (frac ? BigInt(frac) : 0n);
      return new Rational(sign * num, den);
    }
    m = FRACTION.exec(t);
    if (m) {
      const sign = m[1] === "-" ? -1n : 1n;
      return new Rational(sign * BigInt(m[2]), BigInt(m[3]));
    }
    throw new RangeError(`not a rational number: ${JSON.stringify(text)}`);
  }

  add(other: Rational): Rational {
    return new Rational(this.num * other.den + other.num * this.den, this.den * other.den);
  }

  sub(other: Rational): Rational {
    return new Rational(this.num * other.den - other.num * this.den, this.den * other.den);
  }

  mul(other: Rational): Rational {
    return new Rational(this.num * other.num, this.den * other.den);
  }

  div(other: Rational): Rational {
    if (other.num === 0n) throw new RangeError("division by zero");
    return new Rational(this.num * other.den, this.den * other.num);
  }

  cmp(other: Rational): -1 | 0 | 1 {
    const d = this.num * other.den - other.num * this.den;
    return d < 0n ? -1 : d > 0n ? 1 : 0;
  }

  equals(other: Rational): boolean {
    return this.cmp(other) === 0;
  }

  toNumber(): number {
    return Number(this.num) / Number(this.den);
  }

  toString(): string {
    if (this.den === 1n) return this.num.toString();
    let d = this.den;
    let twos = 0n;
    let fives = 0n;
    while (d % 2n === 0n) {
      d /= 2n;
      twos += 1n;
    }
    while (d % 5n === 0n) {
      d /= 5n;
      fives += 1n;
    }
    if (d !== 1n) return `${this.num}/${this.den}`;
    const places = twos > fives ? twos : fives;
    const scale = 2n ** (places - twos) * 5n ** (places - fives);
    const digits = ((this.num < 0n ? -this.num : this.num) * scale).toString();
    const padded = digits.padStart(Number(places) + 1, "0");
    const cut = padded.length - Number(places);
    const sign = this.num < 0n ? "-" : "";
    return `${sign}${padded.slice(0, cut)}.${padded.slice(cut)}`;
  }
}
