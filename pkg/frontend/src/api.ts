import type {
  CatalogResponse,
  MetricsResponse,
  QuestionnaireResponse,
  RatingsResponse,
  SessionResponse,
  TranscriptResponse,
} from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(response.status, (body as { error?: string }).error ?? response.statusText);
  }
  return body as T;
}

/** What the app needs from the service; ApiClient is the HTTP implementation. */
export interface DialogueApi {
  catalog(): Promise<CatalogResponse>;
  questionnaire(): Promise<QuestionnaireResponse>;
  createSession(
    choiceA: string,
    choiceB: string,
    options?: { seed?: number; venue?: string },
  ): Promise<SessionResponse>;
  sendUtterance(sessionId: string, text?: string): Promise<SessionResponse>;
  submitRatings(
    sessionId: string,
    pre: number,
    post: number,
    impressions: number[],
  ): Promise<RatingsResponse>;
  transcript(sessionId: string): Promise<TranscriptResponse>;
  metrics(): Promise<MetricsResponse>;
}

/** Thin typed client over the dialogue service; one method per endpoint. */
export class ApiClient implements DialogueApi {
  constructor(private baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private get(path: string): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${path}`);
  }

  private post(path: string, body: unknown): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async catalog(): Promise<CatalogResponse> {
    return asJson(await this.get("/catalog"));
  }

  async questionnaire(): Promise<QuestionnaireResponse> {
    return asJson(await this.get("/questionnaire"));
  }

  async createSession(
    choiceA: string,
    choiceB: string,
    options: { seed?: number; venue?: string } = {},
  ): Promise<SessionResponse> {
    return asJson(
      await this.post("/sessions", {
        choice_a: choiceA,
        choice_b: choiceB,
        ...(options.seed !== undefined ? { seed: options.seed } : {}),
        ...(options.venue !== undefined ? { venue: options.venue } : {}),
      }),
    );
  }

  /** text omitted = the customer stayed silent */
  async sendUtterance(sessionId: string, text?: string): Promise<SessionResponse> {
    return asJson(
      await this.post(`/sessions/${sessionId}/utterance`, text === undefined ? {} : { text }),
    );
  }

  async submitRatings(
    sessionId: string,
    pre: number,
    post: number,
    impressions: number[],
  ): Promise<RatingsResponse> {
    return asJson(
      await this.post(`/sessions/${sessionId}/ratings`, { pre, post, impressions }),
    );
  }

  async transcript(sessionId: string): Promise<TranscriptResponse> {
    return asJson(await this.get(`/sessions/${sessionId}/transcript`));
  }

  async metrics(): Promise<MetricsResponse> {
    return asJson(await this.get("/metrics"));
  }
}
