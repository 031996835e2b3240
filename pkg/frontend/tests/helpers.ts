// Replay transport: serves responses recorded from the real layout service
// (see scripts/make_frontend_fixtures.py at the repo root).

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Transport } from "../src/api.js";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export const manifest: Record<string, string> = JSON.parse(
  readFileSync(join(FIXTURE_DIR, "manifest.json"), "utf8"),
);

export const datasetIds: { titanic: string; airline: string } = JSON.parse(
  manifest["dataset_ids"],
);

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURE_DIR, name), "utf8")) as T;
}

export function fixtureTransport(log?: string[]): Transport {
  return async (url, init) => {
    const method = init?.method ?? "GET";
    const key = method === "GET" ? `GET ${url}` : `${method} ${url} ${init?.body ?? ""}`;
    log?.push(key);
    const file = manifest[key];
    if (!file) {
      return {
        status: 404,
        text: async () => JSON.stringify({ detail: `no fixture for ${key}` }),
      };
    }
    const body = readFileSync(join(FIXTURE_DIR, file), "utf8");
    return { status: 200, text: async () => body };
  };
}

/** Transport whose responses resolve only when released; for supersede tests. */
export function gatedTransport(inner: Transport) {
  const gates: Array<() => void> = [];
  const transport: Transport = (url, init) => {
    const gate = new Promise<void>((resolve) => gates.push(resolve)); // registered synchronously
    return (async () => {
      const resp = await inner(url, init);
      await gate;
      return resp;
    })();
  };
  return {
    transport,
    release(index: number) {
      gates[index]();
    },
    pending: () => gates.length,
  };
}
