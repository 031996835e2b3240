// Drag driver for the lens overlay: throttles live updates to about ten
// service calls a second and always flushes the final position on release.

export interface Region {
  x: number;
  y: number;
  w: number;
  h: number;
}

export const DRAG_MIN_INTERVAL_MS = 100;

export class LensDragDriver {
  private lastSent = -Infinity;
  private pending: Region | null = null;

  constructor(
    private send: (region: Region) => void,
    private now: () => number = () => Date.now(),
    private minInterval: number = DRAG_MIN_INTERVAL_MS,
  ) {}

  /** Called on every pointer move while dragging. */
  drag(region: Region): void {
    const t = this.now();
    if (t - this.lastSent >= this.minInterval) {
      this.lastSent = t;
      this.pending = null;
      this.send(region);
    } else {
      this.pending = region; // keep only the newest position
    }
  }

  /** Called on pointer release: the final region always goes out. */
  dragEnd(region: Region): void {
    this.pending = null;
    this.lastSent = this.now();
    this.send(region);
  }

  /** The most recent throttled-away region, if any (for timers to flush). */
  takePending(): Region | null {
    const p = this.pending;
    this.pending = null;
    return p;
  }
}
