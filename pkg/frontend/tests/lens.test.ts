import { describe, expect, it } from "vitest";

import { LensDragDriver, Region } from "../src/lens.js";

const region = (x: number): Region => ({ x, y: 0, w: 100, h: 100 });

describe("lens drag throttling", () => {
  it("limits live drag updates to about ten per second", () => {
    let clock = 0;
    const sent: Region[] = [];
    const driver = new LensDragDriver((r) => sent.push(r), () => clock, 100);

    for (let i = 0; i <= 1000; i += 10) {
      clock = i;
      driver.drag(region(i));
    }
    expect(sent.length).toBeLessThanOrEqual(11); // ~10 req/s over one second
    expect(sent.length).toBeGreaterThanOrEqual(10);
  });

  it("drag end always sends the final region", () => {
    let clock = 0;
    const sent: Region[] = [];
    const driver = new LensDragDriver((r) => sent.push(r), () => clock, 100);
    driver.drag(region(0)); // t=0 sends
    clock = 20;
    driver.drag(region(20)); // throttled away
    clock = 30;
    driver.dragEnd(region(30)); // release: must go out
    expect(sent.map((r) => r.x)).toEqual([0, 30]);
  });

  it("keeps only the newest throttled position", () => {
    let clock = 0;
    const sent: Region[] = [];
    const driver = new LensDragDriver((r) => sent.push(r), () => clock, 100);
    driver.drag(region(0));
    clock = 10;
    driver.drag(region(10));
    clock = 20;
    driver.drag(region(20));
    expect(driver.takePending()?.x).toBe(20);
    expect(driver.takePending()).toBeNull();
  });
});
