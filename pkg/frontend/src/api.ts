/** Typed client for the reprolint HTTP API (all paths under /api/v1). */

import type {
  AppInfo,
  AssessOverrides,
  JobRecord,
  MachineReport,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    detail = body.detail ?? body.error ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(String(detail), response.status);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return `${this.baseUrl}/api/v1${path}`;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.url(path));
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  async listApps(): Promise<AppInfo[]> {
    const body = await this.getJson<{ apps: AppInfo[] }>("/apps");
    return body.apps;
  }

  async submitAssessment(
    reportText: string,
    appId: string,
    config: AssessOverrides = {},
  ): Promise<string> {
    const response = await this.fetchImpl(this.url("/assess"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ reportText, appId, config }),
    });
    if (!response.ok) throw await parseError(response);
    const body = (await response.json()) as { jobId: string };
    return body.jobId;
  }

  getJob(jobId: string): Promise<JobRecord> {
    return this.getJson<JobRecord>(`/jobs/${jobId}`);
  }

  /**
   * Poll a job until it is done or failed. The signal aborts the loop, used
   * when a newer assessment supersedes this one.
   */
  async pollJob(
    jobId: string,
    intervalMs = 250,
    signal?: AbortSignal,
  ): Promise<JobRecord> {
    for (;;) {
      if (signal?.aborted) throw new DOMException("superseded", "AbortError");
      const job = await this.getJob(jobId);
      if (job.status === "done") return job;
      if (job.status === "failed") {
        throw new ApiError(job.error ?? "assessment failed", 500);
      }
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  getReport(reportId: string): Promise<MachineReport> {
    return this.getJson<MachineReport>(`/reports/${reportId}`);
  }

  wireframeUrl(ref: string, highlightComponentId?: string | null): string {
    const suffix = highlightComponentId
      ? `?highlight=${encodeURIComponent(highlightComponentId)}`
      : "";
    return this.url(`/wireframes/${encodeURIComponent(ref)}${suffix}`);
  }

  /** SVG markup of a wireframe, or null when the reference is stale (404). */
  async fetchWireframe(
    ref: string,
    highlightComponentId?: string | null,
  ): Promise<string | null> {
    const response = await this.fetchImpl(this.wireframeUrl(ref, highlightComponentId));
    if (response.status === 404) return null;
    if (!response.ok) throw await parseError(response);
    return response.text();
  }
}
