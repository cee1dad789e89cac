// Validates the shared wire fixtures against the TypeScript guards.
// The gateway test suite checks the same file against its pydantic
// models, so a drift on either side fails somewhere.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import {
  isCommandFrame,
  isControlFrame,
  isErrorFrame,
  isInboundFrame,
  isSnapshot,
  parseErrorFrame,
  parseSnapshot,
} from "../src/protocol.js";

const fixtures = JSON.parse(
  readFileSync(new URL("../../docs/wire_fixtures.json", import.meta.url), "utf8"),
) as Record<string, unknown>;

describe("shared fixtures", () => {
  it("snapshot fixture is a valid snapshot", () => {
    expect(isSnapshot(fixtures.snapshot)).toBe(true);
    const parsed = parseSnapshot(JSON.stringify(fixtures.snapshot));
    expect(parsed).not.toBeNull();
    expect(parsed!.robots.map((r) => r.id)).toEqual(["r1", "r2"]);
    expect(parsed!.robots[1].ap).toBeNull();
    expect(parsed!.counters.delivered).toBe(11);
  });

  it("command fixtures are valid inbound frames", () => {
    expect(isCommandFrame(fixtures.cmd_vel)).toBe(true);
    expect(isCommandFrame(fixtures.cmd_vel_minimal)).toBe(true);
    expect(isInboundFrame(fixtures.cmd_vel)).toBe(true);
    expect(isInboundFrame(fixtures.cmd_vel_minimal)).toBe(true);
  });

  it("control fixtures are valid inbound frames", () => {
    for (const name of ["pause", "resume", "reset"]) {
      expect(isControlFrame(fixtures[name]), name).toBe(true);
      expect(isInboundFrame(fixtures[name]), name).toBe(true);
      expect(isCommandFrame(fixtures[name]), name).toBe(false);
    }
  });

  it("error fixture parses as an error frame", () => {
    expect(isErrorFrame(fixtures.error)).toBe(true);
    const parsed = parseErrorFrame(JSON.stringify(fixtures.error));
    expect(parsed?.message).toBe("unknown robot");
  });

  it("health fixtures carry the two documented statuses", () => {
    expect(fixtures.health_ok).toEqual({ status: "ok" });
    expect(fixtures.health_stopped).toEqual({ status: "stopped" });
  });

  it("every invalid_inbound entry is rejected", () => {
    const invalid = fixtures.invalid_inbound as unknown[];
    expect(invalid.length).toBeGreaterThan(0);
    for (const frame of invalid) {
      expect(isInboundFrame(frame), JSON.stringify(frame)).toBe(false);
    }
  });
});

describe("guard edge cases", () => {
  const good = fixtures.snapshot as Record<string, unknown>;

  it("rejects snapshots with broken fields", () => {
    expect(isSnapshot({ ...good, t_ns: "120" })).toBe(false);
    expect(isSnapshot({ ...good, robots: {} })).toBe(false);
    expect(isSnapshot({ ...good, aps: [{ id: "ap1", x: 0 }] })).toBe(false);
    expect(isSnapshot({ ...good, counters: { steps: "12" } })).toBe(false);
    expect(isSnapshot({ ...good, t_ns: Infinity })).toBe(false);
    expect(isSnapshot(null)).toBe(false);
    expect(isSnapshot([good])).toBe(false);
  });

  it("rejects robots with a missing or non-finite field", () => {
    const robot = { id: "r1", x: 0, y: 0, theta: 0, rssi: -50, ap: null };
    expect(isSnapshot({ ...good, robots: [{ ...robot, rssi: NaN }] })).toBe(false);
    const { theta, ...noTheta } = robot;
    void theta;
    expect(isSnapshot({ ...good, robots: [noTheta] })).toBe(false);
    expect(isSnapshot({ ...good, robots: [{ ...robot, ap: 7 }] })).toBe(false);
  });

  it("rejects commands with non-finite numbers", () => {
    expect(isCommandFrame({ type: "cmd_vel", robot: "r1", v: NaN, w: 0 })).toBe(false);
    expect(isCommandFrame({ type: "cmd_vel", robot: "r1", v: 0, w: Infinity })).toBe(false);
    expect(isCommandFrame({ type: "cmd_vel", robot: "r1", v: 0, w: 0, stamp: NaN })).toBe(false);
  });

  it("parse helpers return null on junk", () => {
    expect(parseSnapshot("not json at all")).toBeNull();
    expect(parseSnapshot('{"type": "error", "message": "x"}')).toBeNull();
    expect(parseErrorFrame("{{{{")).toBeNull();
    expect(parseErrorFrame(JSON.stringify(good))).toBeNull();
  });
});
