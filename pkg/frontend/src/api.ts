import type { CreateSessionRequest, SessionSummary } from './types.js';

export class ServiceError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ServiceError(
      response.status,
      (body as { code?: string }).code ?? 'unknown_error',
      (body as { message?: string }).message ?? response.statusText,
    );
  }
  return body as T;
}

/** Thin typed client for the session service. */
export class SessionApi {
  constructor(private readonly baseUrl: string) {}

  async health(): Promise<boolean> {
    try {
      const r = await fetch(`${this.baseUrl}/health`);
      return r.ok;
    } catch {
      return false;
    }
  }

  createSession(req: CreateSessionRequest): Promise<SessionSummary> {
    return fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(req),
    }).then((r) => expectJson<SessionSummary>(r));
  }

  getSession(id: string): Promise<SessionSummary> {
    return fetch(`${this.baseUrl}/sessions/${id}`).then((r) => expectJson<SessionSummary>(r));
  }

  playMove(id: string, move: number): Promise<SessionSummary> {
    return fetch(`${this.baseUrl}/sessions/${id}/moves`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ move }),
    }).then((r) => expectJson<SessionSummary>(r));
  }

  deleteSession(id: string): Promise<unknown> {
    return fetch(`${this.baseUrl}/sessions/${id}`, { method: 'DELETE' }).then((r) =>
      expectJson<unknown>(r),
    );
  }
}
