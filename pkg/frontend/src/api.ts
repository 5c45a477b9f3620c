/** Thin typed client over the cadscript HTTP JSON API. */

import type {
  CommandMode,
  CommandResponse,
  ExportFormat,
  HistoryResponse,
  SceneEnvelope,
  SessionInfo,
  SunStudyRequest,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** A sun-study reply together with the raw body text it was parsed from,
 *  so the heatmap can show the server's numbers byte-for-byte. */
export interface SunStudyCapture {
  response: CommandResponse;
  body: string;
}

const JSON_HEADERS = { "content-type": "application/json" };

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchImpl(this.base + path, init);
    if (!resp.ok) {
      const detail = await resp.text().catch(() => "");
      throw new ApiError(resp.status, detail || `HTTP ${resp.status}`);
    }
    return resp;
  }

  private async requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.request(path, init);
    return (await resp.json()) as T;
  }

  createSession(seed?: number): Promise<SessionInfo> {
    return this.requestJson("/sessions", {
      method: "POST",
      headers: JSON_HEADERS,
      body: JSON.stringify(seed === undefined ? {} : { seed }),
    });
  }

  async deleteSession(id: string): Promise<void> {
    await this.request(`/sessions/${id}`, { method: "DELETE" });
  }

  submit(id: string, text: string, mode: CommandMode): Promise<CommandResponse> {
    return this.requestJson(`/sessions/${id}/commands`, {
      method: "POST",
      headers: JSON_HEADERS,
      body: JSON.stringify({ text, mode }),
    });
  }

  scene(id: string): Promise<SceneEnvelope> {
    return this.requestJson(`/sessions/${id}/scene`);
  }

  history(id: string): Promise<HistoryResponse> {
    return this.requestJson(`/sessions/${id}/history`);
  }

  undo(id: string): Promise<CommandResponse> {
    return this.requestJson(`/sessions/${id}/undo`, {
      method: "POST",
      headers: JSON_HEADERS,
      body: "{}",
    });
  }

  async sunStudy(id: string, req: SunStudyRequest): Promise<SunStudyCapture> {
    const resp = await this.request(`/sessions/${id}/sun-study`, {
      method: "POST",
      headers: JSON_HEADERS,
      body: JSON.stringify(req),
    });
    const body = await resp.text();
    return { response: JSON.parse(body) as CommandResponse, body };
  }

  exportUrl(id: string, format: ExportFormat): string {
    return `${this.base}/sessions/${id}/export?format=${format}`;
  }
}
