/** Typed client for the verification service REST API. */

export interface VerifyResponse {
  label: string;
  confidence: number;
  class_probabilities: number[];
  evidence_id: string;
  evidence_text: string;
  evidence_url: string;
  retrieval_distance: number;
  explanation: string;
  rouge_l: number;
  latency_ms: number;
}

export interface HealthResponse {
  status: string;
  index_size: number;
  model_loaded: boolean;
}

export interface StatsResponse {
  n_records: number;
  avg_claim_tokens: number;
  avg_evidence_tokens: number;
  claim_english_ratio: number;
  evidence_english_ratio: number;
  label_histogram: Record<string, number>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
  ) {
    super(`${status}: ${code}`);
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async verify(claim: string): Promise<VerifyResponse> {
    let resp: Response;
    try {
      resp = await fetch(`${this.baseUrl}/api/verify`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ claim }),
      });
    } catch {
      throw new ApiError(0, "network_failure");
    }
    if (!resp.ok) {
      let code = `http_${resp.status}`;
      try {
        const body = await resp.json();
        if (typeof body?.error === "string") code = body.error;
      } catch {
        // keep the status-based code
      }
      throw new ApiError(resp.status, code);
    }
    return (await resp.json()) as VerifyResponse;
  }

  async health(): Promise<HealthResponse> {
    const resp = await fetch(`${this.baseUrl}/api/health`);
    if (!resp.ok) throw new ApiError(resp.status, `http_${resp.status}`);
    return (await resp.json()) as HealthResponse;
  }

  async stats(): Promise<StatsResponse> {
    const resp = await fetch(`${this.baseUrl}/api/stats`);
    if (!resp.ok) throw new ApiError(resp.status, `http_${resp.status}`);
    return (await resp.json()) as StatsResponse;
  }
}
