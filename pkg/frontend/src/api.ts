// Typed client for the project service. All state mutations go through
// the documented endpoints; nothing is computed client-side.

import type {
  ApiError,
  ComparisonReportInfo,
  Granularity,
  GranularitySetInfo,
  JobInfo,
  NoveltyLevel,
  OpportunityInfo,
  OpportunityKind,
  ProjectInfo,
  RatingInfo,
} from './types';

export class ApiRequestError extends Error {
  constructor(public readonly status: number, public readonly body: ApiError) {
    super(`${body.code}: ${body.message}`);
  }
}

export interface GenerateParams {
  kind: OpportunityKind;
  space_ids: string[];
  novelty_level: NoveltyLevel;
  qualities: string[];
  custom_text: string;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let body: ApiError;
      try {
        body = (await response.json()) as ApiError;
      } catch {
        body = { code: 'HttpError', message: response.statusText, details: {} };
      }
      throw new ApiRequestError(response.status, body);
    }
    return (await response.json()) as T;
  }

  private postJson<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  createProject(name: string, config?: Record<string, unknown>): Promise<ProjectInfo> {
    return this.postJson('/projects', { name, config });
  }

  listProjects(): Promise<ProjectInfo[]> {
    return this.request('/projects');
  }

  getProject(projectId: string): Promise<ProjectInfo> {
    return this.request(`/projects/${projectId}`);
  }

  uploadAsset(projectId: string, file: File): Promise<Record<string, unknown>> {
    const form = new FormData();
    form.append('file', file, file.name);
    return this.request(`/projects/${projectId}/assets`, { method: 'POST', body: form });
  }

  startJob(projectId: string, kind: string, params: Record<string, unknown> = {}): Promise<JobInfo> {
    return this.postJson(`/projects/${projectId}/jobs`, { kind, params });
  }

  getJob(projectId: string, jobId: string): Promise<JobInfo> {
    return this.request(`/projects/${projectId}/jobs/${jobId}`);
  }

  async pollJob(
    projectId: string,
    jobId: string,
    intervalMs = 150,
    timeoutMs = 120_000,
  ): Promise<JobInfo> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(projectId, jobId);
      if (job.state === 'succeeded' || job.state === 'failed') return job;
      if (Date.now() > deadline) throw new Error(`job ${jobId} timed out`);
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  spaces(projectId: string, granularity: Granularity): Promise<GranularitySetInfo> {
    return this.request(`/projects/${projectId}/spaces?granularity=${granularity}`);
  }

  opportunities(
    projectId: string,
    filters: { kind?: string; depth?: number; space?: string } = {},
  ): Promise<OpportunityInfo[]> {
    const params = new URLSearchParams();
    if (filters.kind) params.set('kind', filters.kind);
    if (filters.depth !== undefined) params.set('depth', String(filters.depth));
    if (filters.space) params.set('space', filters.space);
    const query = params.toString();
    return this.request(`/projects/${projectId}/opportunities${query ? `?${query}` : ''}`);
  }

  generate(projectId: string, params: GenerateParams): Promise<JobInfo> {
    return this.postJson(`/projects/${projectId}/generate`, params);
  }

  pivot(
    projectId: string,
    params: GenerateParams & { parent_opportunity_id: string },
  ): Promise<JobInfo> {
    return this.postJson(`/projects/${projectId}/pivot`, params);
  }

  rate(
    projectId: string,
    params: { opportunity_ids: string[]; challenge: string; kind: OpportunityKind },
  ): Promise<JobInfo> {
    return this.postJson(`/projects/${projectId}/rate`, params);
  }

  ratings(projectId: string): Promise<RatingInfo[]> {
    return this.request(`/projects/${projectId}/ratings`);
  }

  compare(
    projectId: string,
    params: { set_a?: string[]; set_b?: string[]; groups?: string[][] },
  ): Promise<{ reports: ComparisonReportInfo[] }> {
    return this.postJson(`/projects/${projectId}/compare`, params);
  }
}
