import type { CreateSessionBody, FamilyInfo, MoveBody, SessionState } from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service returned ${status}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    throw new ApiError(response.status, body ? (body as { detail?: unknown }).detail : null);
  }
  return body as T;
}

export class Client {
  constructor(readonly base: string) {}

  health(): Promise<{ status: string }> {
    return request(`${this.base}/health`);
  }

  families(): Promise<{ families: FamilyInfo[] }> {
    return request(`${this.base}/families`);
  }

  createSession(body: CreateSessionBody): Promise<SessionState> {
    return request(`${this.base}/sessions`, { method: "POST", body: JSON.stringify(body) });
  }

  getSession(id: string): Promise<SessionState> {
    return request(`${this.base}/sessions/${id}`);
  }

  move(id: string, body: MoveBody): Promise<SessionState> {
    return request(`${this.base}/sessions/${id}/moves`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }
}
