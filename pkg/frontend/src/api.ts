// Service client with an injectable transport so the UI core is testable
// against recorded responses. The live transport is plain fetch.

import { Controls, LensControls, layoutUrl, lensBody } from "./state.js";
import { DatasetHandle, LayoutDocument, LensDocument } from "./types.js";

export interface TransportResponse {
  status: number;
  text(): Promise<string>;
}

export type Transport = (
  url: string,
  init?: { method?: string; body?: string; headers?: Record<string, string> },
) => Promise<TransportResponse>;

export function fetchTransport(base: string): Transport {
  return (url, init) => fetch(base + url, init);
}

// Stable serialization for request bodies: object keys sorted recursively,
// no whitespace. Used both for sending and as the replay-fixture key.
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([k, v]) => JSON.stringify(k) + ":" + canonicalJson(v));
    return "{" + entries.join(",") + "}";
  }
  return JSON.stringify(value);
}

export class ServiceError extends Error {
  constructor(public status: number, detail: string) {
    super(`service error ${status}: ${detail}`);
  }
}

async function parse<T>(resp: TransportResponse): Promise<T> {
  const body = await resp.text();
  if (resp.status >= 400) {
    let detail = body;
    try {
      detail = JSON.parse(body).detail ?? body;
    } catch {
      // leave raw body as the detail
    }
    throw new ServiceError(resp.status, detail);
  }
  return JSON.parse(body) as T;
}

export class ServiceClient {
  constructor(private transport: Transport) {}

  async postDataset(name: string, csv: string): Promise<DatasetHandle> {
    const resp = await this.transport(`/datasets?name=${encodeURIComponent(name)}`, {
      method: "POST",
      body: csv,
      headers: { "content-type": "text/csv" },
    });
    return parse<DatasetHandle>(resp);
  }

  async getDataset(id: string): Promise<DatasetHandle> {
    return parse<DatasetHandle>(await this.transport(`/datasets/${id}`));
  }

  async getLayout(controls: Controls): Promise<LayoutDocument> {
    return parse<LayoutDocument>(await this.transport(layoutUrl(controls)));
  }

  async postLens(datasetId: string, controls: LensControls): Promise<LensDocument> {
    const resp = await this.transport(`/datasets/${datasetId}/lens`, {
      method: "POST",
      body: canonicalJson(lensBody(controls)),
      headers: { "content-type": "application/json" },
    });
    return parse<LensDocument>(resp);
  }
}
