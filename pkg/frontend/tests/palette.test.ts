import { describe, expect, it } from "vitest";

import { OUTLIER_GRAY, PALETTE, stratumColor, topicColor } from "../src/palette.js";

describe("topicColor", () => {
  it("is a pure function of the topic id", () => {
    for (let t = 0; t < 60; t++) {
      expect(topicColor(t)).toBe(topicColor(t));
    }
  });

  it("cycles a fixed palette of 20 colors", () => {
    expect(PALETTE).toHaveLength(20);
    expect(topicColor(0)).toBe(PALETTE[0]);
    expect(topicColor(19)).toBe(PALETTE[19]);
    expect(topicColor(20)).toBe(PALETTE[0]);
    expect(topicColor(43)).toBe(PALETTE[3]);
  });

  it("renders tiny outlier topics gray", () => {
    expect(topicColor(2, 3)).toBe(OUTLIER_GRAY);
    expect(topicColor(2, 4)).toBe(PALETTE[2]);
    expect(topicColor(2)).toBe(PALETTE[2]);
  });

  it("distinct topics within one palette cycle get distinct colors", () => {
    const colors = new Set<string>();
    for (let t = 0; t < 20; t++) colors.add(topicColor(t));
    expect(colors.size).toBe(20);
  });
});

describe("stratumColor", () => {
  it("cycles deterministically", () => {
    expect(stratumColor(0)).toBe(stratumColor(8));
    expect(stratumColor(1)).not.toBe(stratumColor(2));
  });
});
