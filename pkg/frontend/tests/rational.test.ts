import { describe, expect, it } from "vitest";
import { Rational } from "../src/rational.js";

const parse = (t: string) => Rational.parse(t);

describe("parsing", () => {
  it("reads integers, decimals and fractions", () => {
    expect(parse("7").num).toBe(7n);
    expect(parse("7").den).toBe(1n);
    expect(parse("-3").num).toBe(-3n);
    expect(parse("2.5").num).toBe(5n);
    expect(parse("2.5").den).toBe(2n);
    expect(parse("-0.125").num).toBe(-1n);
    expect(parse("-0.125").den).toBe(8n);
    expect(parse("8/3").num).toBe(8n);
    expect(parse("8/3").den).toBe(3n);
    expect(parse(" 3 / 4 ").num).toBe(3n);
    expect(parse("-6/4").num).toBe(-3n);
    expect(parse("-6/4").den).toBe(2n);
  });

  it("rejects malformed input", () => {
    for (const bad of ["", "abc", "2.5.1", "1/0", "1/2/3", "2.5/3", "1//2", "--1", "0x10"]) {
      expect(() => parse(bad), bad).toThrow(RangeError);
    }
  });
});

describe("formatting", () => {
  it("uses decimals exactly when the denominator is 2^a 5^b", () => {
    expect(parse("5/2").toString()).toBe("2.5");
    expect(parse("1/8").toString()).toBe("0.125");
    expect(parse("-3/10").toString()).toBe("-0.3");
    expect(parse("2/25").toString()).toBe("0.08");
    expect(parse("4/2").toString()).toBe("2");
    expect(parse("0").toString()).toBe("0");
    expect(parse("8/3").toString()).toBe("8/3");
    expect(parse("-7/12").toString()).toBe("-7/12");
  });

  it("round-trips through its own string form", () => {
    for (let num = -30; num <= 30; num++) {
      for (const den of [1n, 2n, 3n, 7n, 10n, 16n, 40n, 81n]) {
        const value = new Rational(BigInt(num), den);
        const back = Rational.parse(value.toString());
        expect(back.num).toBe(value.num);
        expect(back.den).toBe(value.den);
      }
    }
  });
});

describe("arithmetic", () => {
  it("stays exact", () => {
    const a = parse("1/3");
    const b = parse("1/6");
    expect(a.add(b).toString()).toBe("0.5");
    expect(a.sub(b).toString()).toBe("1/6");
    expect(a.mul(b).toString()).toBe("1/18");
    expect(a.div(b).toString()).toBe("2");
    expect(() => a.div(parse("0"))).toThrow(RangeError);
  });

  it("compares without floating error", () => {
    expect(parse("1/3").cmp(parse("0.3333"))).toBe(1);
    expect(parse("1/3").cmp(parse("0.34"))).toBe(-1);
    expect(parse("2/6").cmp(parse("1/3"))).toBe(0);
    expect(parse("2/6").equals(parse("1/3"))).toBe(true);
  });
});
