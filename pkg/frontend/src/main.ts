// Entry point: wires the socket, keyboard, sliders, and canvas together.
// One 10 Hz loop repeats the current command while keys are held; a
// single (0, 0) goes out when the last key is released or the socket
// drops, so a robot is never left running on a stale keypress.

import { directionOf, keysToCommand } from "./keys.js";
import { renderScene } from "./map.js";
import {
  acceptSnapshot,
  commandFor,
  createModel,
  isStale,
  onConnectionClosed,
  onConnectionOpen,
  selectRobot,
} from "./model.js";
import { parseErrorFrame, parseSnapshot } from "./protocol.js";
import { TeleopSocket } from "./net.js";

const COMMAND_PERIOD_MS = 100; // 10 Hz while driving

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = byId<HTMLCanvasElement>("map");
const ctx = canvas.getContext("2d");
if (!ctx) throw new Error("2D context unavailable");

const statusEl = byId<HTMLSpanElement>("status");
const staleEl = byId<HTMLSpanElement>("stale");
const robotSelect = byId<HTMLSelectElement>("robot");
const telemetryEl = byId<HTMLDivElement>("telemetry");
const countersEl = byId<HTMLDivElement>("counters");
const errorsEl = byId<HTMLDivElement>("errors");
const vSlider = byId<HTMLInputElement>("v-scale");
const wSlider = byId<HTMLInputElement>("w-scale");
const vReadout = byId<HTMLSpanElement>("v-readout");
const wReadout = byId<HTMLSpanElement>("w-readout");

const model = createModel();

const socket = new TeleopSocket(`ws://${window.location.host}/ws`, {
  onFrame(text) {
    const snap = parseSnapshot(text);
    if (snap !== null) {
      if (acceptSnapshot(model, snap, performance.now())) {
        syncRobotOptions();
        renderTelemetry();
      }
      return;
    }
    const err = parseErrorFrame(text);
    if (err !== null) {
      errorsEl.textContent = `server: ${err.message}`;
      console.warn("gateway error:", err.message);
    }
    // anything else: malformed frame, skip
  },
  onStatus(status) {
    if (status === "open") {
      onConnectionOpen(model);
    } else if (status === "closed") {
      onConnectionClosed(model);
      model.held.clear(); // keyup may never arrive once focus is lost
    } else {
      model.status = status;
    }
    statusEl.textContent = status;
    statusEl.className = status;
  },
});
socket.start();

// -- keyboard ---------------------------------------------------------------

function currentScale() {
  return { v: Number(vSlider.value), w: Number(wSlider.value) };
}

function sendDriveCommand(): void {
  const { v, w } = keysToCommand(model.held, currentScale());
  const frame = commandFor(model, v, w, Date.now());
  if (frame !== null) socket.send(frame);
}

window.addEventListener("keydown", (ev) => {
  const dir = directionOf(ev.key);
  if (dir === null) return;
  ev.preventDefault();
  if (!model.held.has(dir)) {
    model.held.add(dir);
    sendDriveCommand(); // react immediately, don't wait for the tick
  }
});

window.addEventListener("keyup", (ev) => {
  const dir = directionOf(ev.key);
  if (dir === null) return;
  ev.preventDefault();
  model.held.delete(dir);
  if (model.held.size === 0) {
    const frame = commandFor(model, 0, 0, Date.now());
    if (frame !== null) socket.send(frame); // single stop frame
  }
});

window.setInterval(() => {
  if (model.held.size > 0) sendDriveCommand();
}, COMMAND_PERIOD_MS);

// -- controls ---------------------------------------------------------------

for (const kind of ["pause", "resume", "reset"] as const) {
  byId<HTMLButtonElement>(kind).addEventListener("click", () => {
    socket.send({ type: kind });
  });
}

robotSelect.addEventListener("change", () => {
  selectRobot(model, robotSelect.value);
});

vSlider.addEventListener("input", () => {
  vReadout.textContent = `${Number(vSlider.value).toFixed(1)} m/s`;
});
wSlider.addEventListener("input", () => {
  wReadout.textContent = `${Number(wSlider.value).toFixed(1)} rad/s`;
});

function syncRobotOptions(): void {
  const snap = model.latest;
  if (snap === null) return;
  const ids = snap.robots.map((r) => r.id);
  const existing = Array.from(robotSelect.options).map((o) => o.value);
  if (ids.length === existing.length && ids.every((id, i) => id === existing[i])) {
    if (model.selected !== null) robotSelect.value = model.selected;
    return;
  }
  robotSelect.innerHTML = "";
  for (const id of ids) {
    const option = document.createElement("option");
    option.value = id;
    option.textContent = id;
    robotSelect.appendChild(option);
  }
  if (model.selected !== null) robotSelect.value = model.selected;
}

function renderTelemetry(): void {
  const snap = model.latest;
  if (snap === null) return;
  const robot = snap.robots.find((r) => r.id === model.selected);
  if (robot) {
    const rssi = robot.ap === null ? "—" : `${robot.rssi.toFixed(1)} dBm via ${robot.ap}`;
    telemetryEl.textContent =
      `t=${(snap.t_ns / 1e9).toFixed(1)}s  ` +
      `x=${robot.x.toFixed(2)} y=${robot.y.toFixed(2)}  rssi: ${rssi}`;
  }
  const c = snap.counters;
  countersEl.textContent =
    `packets ${c.packets_sent ?? 0} | delivered ${c.delivered ?? 0} | ` +
    `dropped ${c.dropped ?? 0} | discarded ${c.discarded ?? 0}` +
    (model.regressions > 0 ? ` | ${model.regressions} out-of-order frames ignored` : "");
}

// -- render loop ------------------------------------------------------------

function resize(): void {
  const rect = canvas.getBoundingClientRect();
  canvas.width = rect.width;
  canvas.height = rect.height;
}
window.addEventListener("resize", resize);
resize();

function frame(): void {
  renderScene(ctx!, model.latest, model.selected, canvas.width, canvas.height);
  staleEl.hidden = !isStale(model, performance.now());
  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
