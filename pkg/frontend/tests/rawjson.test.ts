import { describe, expect, it } from "vitest";

import { rawNumberMatrix, rawNumberScalar } from "../src/rawjson.js";

describe("rawNumberMatrix", () => {
  it("preserves number literals exactly as serialized", () => {
    const body = '{"grid":{"sunlit_hours": [[17.0, 16], [1e2, -0.5], [2.50, 0]]}}';
    expect(rawNumberMatrix(body, "sunlit_hours")).toEqual([
      ["17.0", "16"],
      ["1e2", "-0.5"],
      ["2.50", "0"],
    ]);
  });

  it("keeps formatting that a parse/stringify round trip would lose", () => {
    const body = '{"sunlit_hours":[[17.0]]}';
    const parsed = JSON.parse(body) as { sunlit_hours: number[][] };
    // The motivating case: JS renders the parsed value differently.
    expect(JSON.stringify(parsed.sunlit_hours[0][0])).toBe("17");
    expect(rawNumberMatrix(body, "sunlit_hours")[0][0]).toBe("17.0");
  });

  it("tolerates arbitrary whitespace", () => {
    const body = '{ "sunlit_hours" :\n [ [ 1.0 ,\t2 ] ,\n [ 3 , 4 ] ] }';
    expect(rawNumberMatrix(body, "sunlit_hours")).toEqual([
      ["1.0", "2"],
      ["3", "4"],
    ]);
  });

  it("skips a key-shaped string value and finds the real key", () => {
    const body = '{"k": "sunlit_hours", "sunlit_hours": [[3.25]]}';
    expect(rawNumberMatrix(body, "sunlit_hours")).toEqual([["3.25"]]);
  });

  it("handles an empty outer array", () => {
    expect(rawNumberMatrix('{"sunlit_hours": []}', "sunlit_hours")).toEqual([]);
  });

  it("throws when the key is absent", () => {
    expect(() => rawNumberMatrix('{"other": [[1]]}', "sunlit_hours")).toThrow(/sunlit_hours/);
  });

  it("throws on a non-matrix value", () => {
    expect(() => rawNumberMatrix('{"sunlit_hours": 3}', "sunlit_hours")).toThrow();
    expect(() => rawNumberMatrix('{"sunlit_hours": [[true]]}', "sunlit_hours")).toThrow();
  });
});

describe("rawNumberScalar", () => {
  it("returns the literal including trailing zeros", () => {
    expect(rawNumberScalar('{"daylight_hours": 16.50}', "daylight_hours")).toBe("16.50");
    expect(rawNumberScalar('{"daylight_hours":0}', "daylight_hours")).toBe("0");
  });

  it("reads negative and exponent forms", () => {
    expect(rawNumberScalar('{"x": -1.5e-3}', "x")).toBe("-1.5e-3");
  });

  it("throws when the key is absent", () => {
    expect(() => rawNumberScalar("{}", "daylight_hours")).toThrow(/daylight_hours/);
  });
});
