// UI state and the rules guarding what goes out on the wire: commands
// are emitted only for a robot present in the latest snapshot, frames
// with a regressing clock are ignored, and a quiet socket turns stale.

import { CommandFrame, Snapshot } from "./protocol.js";
import { Direction } from "./keys.js";

export const STALE_AFTER_MS = 1000;

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface UiModel {
  latest: Snapshot | null;
  selected: string | null;
  held: Set<Direction>;
  status: ConnectionStatus;
  lastFrameAtMs: number | null;
  regressions: number; // frames ignored because t_ns went backwards
}

export function createModel(): UiModel {
  return {
    latest: null,
    selected: null,
    held: new Set(),
    status: "connecting",
    lastFrameAtMs: null,
    regressions: 0,
  };
}

/** New connection, new clock: drop the old baseline. */
export function onConnectionOpen(model: UiModel): void {
  model.status = "open";
  model.latest = null;
  model.lastFrameAtMs = null;
}

export function onConnectionClosed(model: UiModel): void {
  model.status = "closed";
}

/**
 * Take one snapshot in. Returns false (and counts a regression) when
 * the frame's clock runs backwards against what we already displayed.
 */
export function acceptSnapshot(model: UiModel, snap: Snapshot, nowMs: number): boolean {
  if (model.latest !== null && snap.t_ns < model.latest.t_ns) {
    model.regressions += 1;
    return false;
  }
  model.latest = snap;
  model.lastFrameAtMs = nowMs;
  if (model.selected === null || !snap.robots.some((r) => r.id === model.selected)) {
    model.selected = snap.robots.length > 0 ? snap.robots[0].id : null;
  }
  return true;
}

/** Pick a robot; ignored unless it exists in the latest snapshot. */
export function selectRobot(model: UiModel, id: string): boolean {
  if (model.latest === null || !model.latest.robots.some((r) => r.id === id)) {
    return false;
  }
  model.selected = id;
  return true;
}

/**
 * Build the command frame for the currently selected robot, or null
 * when there is no snapshot yet or the robot vanished from it.
 */
export function commandFor(model: UiModel, v: number, w: number, stampMs?: number): CommandFrame | null {
  if (model.latest === null || model.selected === null) return null;
  if (!model.latest.robots.some((r) => r.id === model.selected)) return null;
  const frame: CommandFrame = { type: "cmd_vel", robot: model.selected, v, w };
  if (stampMs !== undefined) frame.stamp = stampMs;
  return frame;
}

export function isStale(model: UiModel, nowMs: number): boolean {
  if (model.lastFrameAtMs === null) return true;
  return nowMs - model.lastFrameAtMs > STALE_AFTER_MS;
}
