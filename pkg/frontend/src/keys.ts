// Keyboard to velocity mapping: arrows or WASD, scaled by the speed
// sliders. Opposing keys cancel instead of fighting.

export type Direction = "up" | "down" | "left" | "right";

export interface SpeedScale {
  v: number; // m/s at full deflection
  w: number; // rad/s at full deflection
}

const KEY_DIRECTIONS: Record<string, Direction> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
  w: "up",
  s: "down",
  a: "left",
  d: "right",
};

/** Canonical direction for a KeyboardEvent.key value, or null. */
export function directionOf(key: string): Direction | null {
  const normalized = key.length === 1 ? key.toLowerCase() : key;
  return KEY_DIRECTIONS[normalized] ?? null;
}

export function keysToCommand(held: ReadonlySet<Direction>, scale: SpeedScale): { v: number; w: number } {
  let v = 0;
  let w = 0;
  if (held.has("up")) v += scale.v;
  if (held.has("down")) v -= scale.v;
  if (held.has("left")) w += scale.w;
  if (held.has("right")) w -= scale.w;
  return { v, w };
}
