/** Thin client for the genrebar HTTP API (see docs/http-api.md). */

export interface GenresResponse {
  genres: string[];
  count: number;
}

export interface SearchEntry {
  id: string;
  title: string;
  artist: string;
  proportions: number[];
  distance: number;
}

export interface SearchResponse {
  query: number[];
  k: number;
  entries: SearchEntry[];
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly detail: string,
    readonly status: number,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let code = `HTTP${response.status}`;
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.error === 'string') {
        code = body.error;
        detail = body.detail ?? detail;
      }
    } catch {
      // non-JSON error body; keep the status fallback
    }
    throw new ApiError(code, detail, response.status);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly base: string = '') {}

  genres(): Promise<GenresResponse> {
    return request<GenresResponse>(`${this.base}/api/genres`);
  }

  search(proportions: readonly number[], k: number, signal?: AbortSignal): Promise<SearchResponse> {
    return request<SearchResponse>(`${this.base}/api/search`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ proportions, k }),
      signal,
    });
  }
}
