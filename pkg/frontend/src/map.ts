// 2D canvas map: robots red, APs blue, association shown as a line.
// Pure math (world-to-canvas fit) is separated out for testing.

import { Snapshot } from "./protocol.js";

export interface Transform {
  scale: number;
  ox: number;
  oy: number;
}

/**
 * Fit a set of world points into a width x height canvas with a margin,
 * preserving aspect ratio. y is flipped (world y up, canvas y down).
 */
export function fitTransform(
  points: Array<{ x: number; y: number }>,
  width: number,
  height: number,
  margin = 40,
): Transform {
  if (points.length === 0) {
    return { scale: 1, ox: width / 2, oy: height / 2 };
  }
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY, 200);
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  return { scale, ox: width / 2 - cx * scale, oy: height / 2 + cy * scale };
}

export function worldToCanvas(t: Transform, x: number, y: number): [number, number] {
  return [t.ox + x * t.scale, t.oy - y * t.scale];
}

const ROBOT_RADIUS = 9;
const AP_RADIUS = 11;

export function renderScene(
  ctx: CanvasRenderingContext2D,
  snap: Snapshot | null,
  selected: string | null,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, width, height);
  if (snap === null) {
    ctx.fillStyle = "#888";
    ctx.font = "16px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText("waiting for snapshots", width / 2, height / 2);
    return;
  }

  const t = fitTransform([...snap.robots, ...snap.aps], width, height);
  const apAt = new Map(snap.aps.map((ap) => [ap.id, ap]));

  // association lines under the glyphs
  ctx.strokeStyle = "#b0c4de";
  ctx.lineWidth = 1.5;
  for (const robot of snap.robots) {
    if (robot.ap === null) continue;
    const ap = apAt.get(robot.ap);
    if (ap === undefined) continue;
    const [rx, ry] = worldToCanvas(t, robot.x, robot.y);
    const [ax, ay] = worldToCanvas(t, ap.x, ap.y);
    ctx.beginPath();
    ctx.moveTo(rx, ry);
    ctx.lineTo(ax, ay);
    ctx.stroke();
  }

  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";

  for (const ap of snap.aps) {
    const [x, y] = worldToCanvas(t, ap.x, ap.y);
    ctx.fillStyle = "#2060c0";
    ctx.beginPath();
    ctx.arc(x, y, AP_RADIUS, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#333";
    ctx.fillText(ap.id, x, y - AP_RADIUS - 4);
  }

  for (const robot of snap.robots) {
    const [x, y] = worldToCanvas(t, robot.x, robot.y);
    ctx.beginPath();
    ctx.arc(x, y, ROBOT_RADIUS, 0, 2 * Math.PI);
    if (robot.ap === null) {
      // unassociated: hollow outline
      ctx.strokeStyle = "#c02020";
      ctx.lineWidth = 2;
      ctx.stroke();
    } else {
      ctx.fillStyle = "#c02020";
      ctx.fill();
    }
    // heading tick
    const hx = x + Math.cos(robot.theta) * ROBOT_RADIUS * 1.8;
    const hy = y - Math.sin(robot.theta) * ROBOT_RADIUS * 1.8;
    ctx.strokeStyle = "#801010";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(x, y);
    ctx.lineTo(hx, hy);
    ctx.stroke();

    if (robot.id === selected) {
      ctx.strokeStyle = "#222";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.arc(x, y, ROBOT_RADIUS + 4, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.fillStyle = "#333";
    ctx.fillText(robot.id, x, y + ROBOT_RADIUS + 14);
  }
}
