/** Thin typed client for the session service.
 *
 * Every failure body is kept verbatim (raw text) so views can show the
 * service's error payload exactly as it came over the wire.
 */
import type {
  AnswerAck,
  CreatedSession,
  GridPayload,
  PendingQuery,
  ResultPayload,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly context: unknown,
    readonly raw: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class SessionApi {
  constructor(
    readonly base: string = "",
    private readonly fetchImpl?: FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const doFetch = this.fetchImpl ?? ((url: string, init?: RequestInit) => fetch(url, init));
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await doFetch(this.base + path, init);
    const text = await res.text();
    let data: unknown = null;
    try {
      data = text ? JSON.parse(text) : null;
    } catch {
      data = null;
    }
    if (!res.ok) {
      const payload = (data ?? {}) as { code?: string; message?: string; context?: unknown };
      throw new ApiError(
        res.status,
        payload.code ?? "http_error",
        payload.message ?? `${res.status} ${res.statusText}`,
        payload.context ?? null,
        text,
      );
    }
    return data as T;
  }

  createSession(grid: GridPayload, epsilon?: string): Promise<CreatedSession> {
    const body = epsilon === undefined ? { grid } : { grid, epsilon };
    return this.request<CreatedSession>("POST", "/sessions", body);
  }

  getQuery(sessionId: string): Promise<PendingQuery> {
    return this.request<PendingQuery>("GET", `/sessions/${sessionId}/query`);
  }

  postAnswer(sessionId: string, value: string | null): Promise<AnswerAck> {
    return this.request<AnswerAck>("POST", `/sessions/${sessionId}/answers`, { value });
  }

  getResult(sessionId: string): Promise<ResultPayload> {
    return this.request<ResultPayload>("GET", `/sessions/${sessionId}/result`);
  }
}
