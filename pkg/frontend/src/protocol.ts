// Wire types for the gateway socket, mirrored from docs/wire_protocol.md.
// The guards are deliberately strict (exact field sets for outbound
// frames) because the server rejects anything with extra or missing
// fields; docs/wire_fixtures.json pins both sides to the same shapes.

export interface RobotSnapshot {
  id: string;
  x: number;
  y: number;
  theta: number;
  rssi: number; // 0 means "not associated", real values are far below zero
  ap: string | null;
}

export interface ApSnapshot {
  id: string;
  x: number;
  y: number;
}

export interface Snapshot {
  t_ns: number;
  robots: RobotSnapshot[];
  aps: ApSnapshot[];
  counters: Record<string, number>;
}

export interface CommandFrame {
  type: "cmd_vel";
  robot: string;
  v: number;
  w: number;
  stamp?: number;
}

export interface ControlFrame {
  type: "pause" | "resume" | "reset";
}

export type InboundFrame = CommandFrame | ControlFrame;

export interface ErrorFrame {
  type: "error";
  message: string;
}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function isNum(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

function isRobotSnapshot(x: unknown): x is RobotSnapshot {
  if (!isRecord(x)) return false;
  return (
    typeof x.id === "string" &&
    isNum(x.x) &&
    isNum(x.y) &&
    isNum(x.theta) &&
    isNum(x.rssi) &&
    (x.ap === null || typeof x.ap === "string")
  );
}

function isApSnapshot(x: unknown): x is ApSnapshot {
  if (!isRecord(x)) return false;
  return typeof x.id === "string" && isNum(x.x) && isNum(x.y);
}

export function isSnapshot(x: unknown): x is Snapshot {
  if (!isRecord(x)) return false;
  if (!isNum(x.t_ns)) return false;
  if (!Array.isArray(x.robots) || !x.robots.every(isRobotSnapshot)) return false;
  if (!Array.isArray(x.aps) || !x.aps.every(isApSnapshot)) return false;
  if (!isRecord(x.counters)) return false;
  return Object.values(x.counters).every((v) => isNum(v));
}

export function isErrorFrame(x: unknown): x is ErrorFrame {
  return isRecord(x) && x.type === "error" && typeof x.message === "string";
}

function keysExactly(x: Record<string, unknown>, required: string[], optional: string[] = []): boolean {
  const keys = Object.keys(x);
  if (!required.every((k) => keys.includes(k))) return false;
  return keys.every((k) => required.includes(k) || optional.includes(k));
}

export function isCommandFrame(x: unknown): x is CommandFrame {
  if (!isRecord(x) || x.type !== "cmd_vel") return false;
  if (!keysExactly(x, ["type", "robot", "v", "w"], ["stamp"])) return false;
  if (typeof x.robot !== "string" || !isNum(x.v) || !isNum(x.w)) return false;
  return x.stamp === undefined || isNum(x.stamp);
}

export function isControlFrame(x: unknown): x is ControlFrame {
  if (!isRecord(x)) return false;
  if (x.type !== "pause" && x.type !== "resume" && x.type !== "reset") return false;
  return keysExactly(x, ["type"]);
}

export function isInboundFrame(x: unknown): x is InboundFrame {
  return isCommandFrame(x) || isControlFrame(x);
}

/** Parse one socket frame; null for anything that is not a snapshot. */
export function parseSnapshot(text: string): Snapshot | null {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    return null;
  }
  return isSnapshot(data) ? data : null;
}

export function parseErrorFrame(text: string): ErrorFrame | null {
  try {
    const data: unknown = JSON.parse(text);
    return isErrorFrame(data) ? data : null;
  } catch {
    return null;
  }
}
