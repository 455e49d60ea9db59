import { describe, expect, it } from "vitest";

import {
  validateLatitude,
  validateLongitude,
  validateNumber,
  validateSiteName,
} from "../src/validate.js";

describe("site name validation", () => {
  it("accepts the documented pattern", () => {
    expect(validateSiteName("edif_adm")).toBeNull();
    expect(validateSiteName("A1")).toBeNull();
  });

  it("rejects spaces, symbols and overlong names", () => {
    expect(validateSiteName("a b")).not.toBeNull();
    expect(validateSiteName("")).not.toBeNull();
    expect(validateSiteName("x".repeat(33))).not.toBeNull();
    expect(validateSiteName("nope!")).not.toBeNull();
  });
});

describe("coordinate validation", () => {
  it("accepts valid ranges", () => {
    expect(validateLatitude(8.5931)).toBeNull();
    expect(validateLongitude(-71.1469)).toBeNull();
    expect(validateLatitude(-90)).toBeNull();
  });

  it("rejects latitude 95 and other out-of-range values", () => {
    expect(validateLatitude(95)).not.toBeNull();
    expect(validateLatitude(NaN)).not.toBeNull();
    expect(validateLongitude(180)).not.toBeNull();
    expect(validateLongitude(-200)).not.toBeNull();
  });
});

describe("numeric field validation", () => {
  it("flags non-numbers with the field label", () => {
    expect(validateNumber(Number("abc"), "tx power")).toContain("tx power");
    expect(validateNumber(20, "tx power")).toBeNull();
  });
});
