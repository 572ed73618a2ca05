/** Typed client for the routing service's review endpoints. */
import { QueueEntry } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** 409: the item moved on while we were looking at it. */
export class ConflictError extends ApiError {
  constructor(message: string) {
    super(message, 409);
    this.name = "ConflictError";
  }
}

export interface ApiClient {
  fetchQueue(): Promise<QueueEntry[]>;
  submitLabel(id: string, reader: string, round: number, cls: number): Promise<QueueEntry>;
}

export interface HttpApiOptions {
  baseUrl?: string;
  apiToken?: string;
}

export class HttpApiClient implements ApiClient {
  private readonly baseUrl: string;
  private readonly headers: Record<string, string>;

  constructor(options: HttpApiOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
    this.headers = { "Content-Type": "application/json" };
    if (options.apiToken) {
      this.headers["X-Api-Token"] = options.apiToken;
    }
  }

  private async handle(response: Response): Promise<unknown> {
    if (response.ok) {
      return response.json();
    }
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    if (response.status === 409) {
      throw new ConflictError(detail);
    }
    throw new ApiError(detail, response.status);
  }

  async fetchQueue(): Promise<QueueEntry[]> {
    const response = await fetch(`${this.baseUrl}/v1/review/queue`, { headers: this.headers });
    return (await this.handle(response)) as QueueEntry[];
  }

  async submitLabel(id: string, reader: string, round: number, cls: number): Promise<QueueEntry> {
    const response = await fetch(`${this.baseUrl}/v1/review/${encodeURIComponent(id)}/label`, {
      method: "POST",
      headers: this.headers,
      body: JSON.stringify({ reader, round, class: cls }),
    });
    return (await this.handle(response)) as QueueEntry;
  }
}
