// Typed client over the service's JSON API. Every server error body is
// {code, message}; it surfaces here as an ApiError.

import type {
  CloudConfig,
  Consolidated,
  CsvDoc,
  EventRow,
  ExperimentDetail,
  FileDetail,
  FileSummary,
  Options,
  QuantifyPreview,
  Results,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ReqsimClient {
  constructor(public baseUrl: string = "http://127.0.0.1:8000") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const contentType = response.headers.get("content-type") ?? "";
    if (!response.ok) {
      if (contentType.includes("application/json")) {
        const body = (await response.json()) as { code?: string; message?: string };
        throw new ApiError(body.code ?? "HTTP", body.message ?? response.statusText, response.status);
      }
      throw new ApiError("HTTP", await response.text(), response.status);
    }
    if (contentType.includes("application/json")) {
      return (await response.json()) as T;
    }
    return (await response.text()) as unknown as T;
  }

  listFiles(): Promise<FileSummary[]> {
    return this.request("/files");
  }

  createFile(name: string): Promise<FileSummary> {
    return this.request("/files", { method: "POST", body: JSON.stringify({ name }) });
  }

  getFile(name: string): Promise<FileDetail> {
    return this.request(`/files/${encodeURIComponent(name)}`);
  }

  nextExperiment(
    name: string,
    addedDemands: Record<number, number>,
    newArrivalHi: number,
  ): Promise<ExperimentDetail> {
    return this.request(`/files/${encodeURIComponent(name)}/experiments`, {
      method: "POST",
      body: JSON.stringify({ added_demands: addedDemands, new_arrival_hi: newArrivalHi }),
    });
  }

  putConfig(name: string, experimentId: number, config: CloudConfig): Promise<ExperimentDetail> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/config`,
      { method: "PUT", body: JSON.stringify(config) },
    );
  }

  generate(name: string, experimentId: number, seed?: number): Promise<ExperimentDetail> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/generate`,
      { method: "POST", body: JSON.stringify(seed === undefined ? {} : { seed }) },
    );
  }

  refresh(name: string, experimentId: number): Promise<ExperimentDetail> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/refresh`,
      { method: "POST" },
    );
  }

  run(
    name: string,
    experimentId: number,
    strategies: string[],
    mode: string,
    options?: Options,
  ): Promise<Results> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/run`,
      { method: "POST", body: JSON.stringify({ strategies, mode, options: options ?? null }) },
    );
  }

  results(name: string, experimentId: number): Promise<Results> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/results`,
    );
  }

  csv(name: string, experimentId: number, doc: CsvDoc): Promise<string> {
    return this.request(
      `/files/${encodeURIComponent(name)}/experiments/${experimentId}/csv/${doc}`,
    );
  }

  consolidated(name: string): Promise<Consolidated> {
    return this.request(`/files/${encodeURIComponent(name)}/consolidated`);
  }

  consolidatedCsv(name: string): Promise<string> {
    return this.request(`/files/${encodeURIComponent(name)}/consolidated.csv`);
  }

  events(name: string): Promise<EventRow[]> {
    return this.request(`/files/${encodeURIComponent(name)}/events`);
  }

  quantify(capacities: number[], mode: string, requests?: number): Promise<QuantifyPreview> {
    const params = new URLSearchParams({ capacities: capacities.join(","), mode });
    if (requests !== undefined) params.set("requests", String(requests));
    return this.request(`/quantify?${params}`);
  }

  zipUrl(name: string, experimentId: number): string {
    return `${this.baseUrl}/files/${encodeURIComponent(name)}/experiments/${experimentId}/results.csv`;
  }
}
