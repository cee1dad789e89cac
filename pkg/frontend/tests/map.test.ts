import { describe, expect, it } from "vitest";
import { fitTransform, worldToCanvas } from "../src/map.js";

describe("fitTransform", () => {
  it("centers the bounding box and preserves aspect ratio", () => {
    const t = fitTransform(
      [
        { x: 0, y: 0 },
        { x: 10, y: 10 },
      ],
      200,
      200,
      40,
    );
    expect(t.scale).toBeCloseTo(12); // (200 - 80) / 10
    expect(worldToCanvas(t, 5, 5)).toEqual([100, 100]);
    expect(worldToCanvas(t, 0, 0)).toEqual([40, 160]);
    expect(worldToCanvas(t, 10, 10)).toEqual([160, 40]);
  });

  it("flips y so world up is canvas up", () => {
    const t = fitTransform(
      [
        { x: 0, y: 0 },
        { x: 4, y: 4 },
      ],
      400,
      300,
    );
    const [, yLow] = worldToCanvas(t, 2, 0);
    const [, yHigh] = worldToCanvas(t, 2, 4);
    expect(yHigh).toBeLessThan(yLow);
  });

  it("uses the tighter axis when the scene is wide", () => {
    const t = fitTransform(
      [
        { x: 0, y: 0 },
        { x: 100, y: 1 },
      ],
      400,
      400,
      40,
    );
    expect(t.scale).toBeCloseTo((400 - 80) / 100);
  });

  it("caps the zoom for tiny scenes", () => {
    const t = fitTransform([{ x: 3, y: 0 }], 800, 600);
    expect(t.scale).toBeLessThanOrEqual(200);
    expect(worldToCanvas(t, 3, 0)).toEqual([400, 300]); // lone point sits centered
  });

  it("falls back to a unit transform with no points", () => {
    const t = fitTransform([], 640, 480);
    expect(worldToCanvas(t, 0, 0)).toEqual([320, 240]);
    expect(t.scale).toBe(1);
  });
});
