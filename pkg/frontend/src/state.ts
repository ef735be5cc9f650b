// ViewState and the controller driving it. The state mirrors server
// responses; nothing here computes a metric locally — every number the
// views show came out of an API response.

import { ApiError, ReqsimClient } from "./api.js";
import type {
  CloudConfig,
  Consolidated,
  ErrorBody,
  EventRow,
  ExperimentDetail,
  FileDetail,
  FileSummary,
  Options,
  QuantifyPreview,
  Results,
} from "./types.js";

export type Panel = "data_centers" | "vms" | "services" | "requests";

export type ChartKind =
  | "avg_wait"
  | "avg_response"
  | "mean_ruf"
  | "rejections"
  | "value_per_node"
  | "consolidated_response";

export interface ViewState {
  files: FileSummary[];
  fileName: string | null;
  file: FileDetail | null;
  experimentId: number | null;
  panel: Panel;
  selectedStrategies: string[];
  mode: "exact" | "paper_compat";
  chart: ChartKind;
  results: Results | null;
  consolidated: Consolidated | null;
  preview: QuantifyPreview | null;
  events: EventRow[];
  error: ErrorBody | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    files: [],
    fileName: null,
    file: null,
    experimentId: null,
    panel: "data_centers",
    selectedStrategies: [],
    mode: "exact",
    chart: "avg_wait",
    results: null,
    consolidated: null,
    preview: null,
    events: [],
    error: null,
    busy: false,
  };
}

export function currentExperiment(state: ViewState): ExperimentDetail | null {
  if (!state.file || state.experimentId === null) return null;
  return (
    state.file.experiments.find((e) => e.experiment_id === state.experimentId) ?? null
  );
}

export class DashboardController {
  state: ViewState = initialState();

  constructor(
    private client: ReqsimClient,
    private onChange: (state: ViewState) => void = () => {},
  ) {}

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  /** Run an API call, stowing {code, message} on failure instead of throwing. */
  private async guard<T>(operation: () => Promise<T>): Promise<T | null> {
    this.update({ busy: true, error: null });
    try {
      const value = await operation();
      this.update({ busy: false });
      return value;
    } catch (error) {
      if (error instanceof ApiError) {
        this.update({ busy: false, error: { code: error.code, message: error.message } });
        return null;
      }
      this.update({
        busy: false,
        error: { code: "NETWORK", message: String(error) },
      });
      return null;
    }
  }

  async loadFiles(): Promise<void> {
    const files = await this.guard(() => this.client.listFiles());
    if (files) this.update({ files });
  }

  async createFile(name: string): Promise<void> {
    const created = await this.guard(() => this.client.createFile(name));
    if (!created) return;
    await this.loadFiles();
    await this.openFile(name);
  }

  async openFile(name: string): Promise<void> {
    const file = await this.guard(() => this.client.getFile(name));
    if (!file) return;
    const last = file.experiments[file.experiments.length - 1];
    this.update({
      fileName: name,
      file,
      experimentId: last.experiment_id,
      results: null,
      consolidated: null,
      events: [],
    });
    if (last.status === "completed") {
      await this.loadResults();
    }
  }

  private async reloadFile(): Promise<void> {
    if (!this.state.fileName) return;
    const file = await this.guard(() => this.client.getFile(this.state.fileName!));
    if (file) this.update({ file });
  }

  async selectExperiment(experimentId: number): Promise<void> {
    this.update({ experimentId, results: null });
    const experiment = currentExperiment(this.state);
    if (experiment?.status === "completed") {
      await this.loadResults();
    }
  }

  setPanel(panel: Panel): void {
    this.update({ panel });
  }

  setChart(chart: ChartKind): void {
    this.update({ chart });
  }

  setMode(mode: "exact" | "paper_compat"): void {
    this.update({ mode });
  }

  toggleStrategy(strategy: string): void {
    const selected = this.state.selectedStrategies.includes(strategy)
      ? this.state.selectedStrategies.filter((s) => s !== strategy)
      : [...this.state.selectedStrategies, strategy];
    this.update({ selectedStrategies: selected });
  }

  async saveConfig(config: CloudConfig): Promise<boolean> {
    const { fileName, experimentId } = this.state;
    if (!fileName || experimentId === null) return false;
    const detail = await this.guard(() =>
      this.client.putConfig(fileName, experimentId, config),
    );
    if (!detail) return false;
    await this.reloadFile();
    return true;
  }

  async generatePool(seed?: number): Promise<void> {
    const { fileName, experimentId } = this.state;
    if (!fileName || experimentId === null) return;
    const detail = await this.guard(() =>
      this.client.generate(fileName, experimentId, seed),
    );
    if (detail) await this.reloadFile();
  }

  async refreshPool(): Promise<void> {
    const { fileName, experimentId } = this.state;
    if (!fileName || experimentId === null) return;
    const detail = await this.guard(() => this.client.refresh(fileName, experimentId));
    if (detail) await this.reloadFile();
  }

  async runSelected(options?: Options): Promise<void> {
    const { fileName, experimentId, selectedStrategies, mode } = this.state;
    if (!fileName || experimentId === null) return;
    const results = await this.guard(() =>
      this.client.run(fileName, experimentId, selectedStrategies, mode, options),
    );
    if (!results) return;
    this.update({ results });
    await this.reloadFile();
    await this.loadConsolidated();
  }

  async loadResults(): Promise<void> {
    const { fileName, experimentId } = this.state;
    if (!fileName || experimentId === null) return;
    const results = await this.guard(() => this.client.results(fileName, experimentId));
    if (results) this.update({ results });
  }

  async loadConsolidated(): Promise<void> {
    if (!this.state.fileName) return;
    const consolidated = await this.guard(() =>
      this.client.consolidated(this.state.fileName!),
    );
    if (consolidated) this.update({ consolidated });
  }

  async loadEvents(): Promise<void> {
    if (!this.state.fileName) return;
    const events = await this.guard(() => this.client.events(this.state.fileName!));
    if (events) this.update({ events });
  }

  async openNextExperiment(
    addedDemands: Record<number, number>,
    newArrivalHi: number,
  ): Promise<void> {
    if (!this.state.fileName) return;
    const experiment = await this.guard(() =>
      this.client.nextExperiment(this.state.fileName!, addedDemands, newArrivalHi),
    );
    if (!experiment) return;
    await this.reloadFile();
    this.update({ experimentId: experiment.experiment_id, results: null });
  }

  async quantifyPreview(
    capacities: number[],
    mode: string,
    requests?: number,
  ): Promise<void> {
    const preview = await this.guard(() =>
      this.client.quantify(capacities, mode, requests),
    );
    if (preview) this.update({ preview });
  }

  /** Chart CSVs come straight from the server: single source of truth. */
  async downloadCsv(doc: "metrics_per_strategy" | "per_node_value"): Promise<string | null> {
    const { fileName, experimentId } = this.state;
    if (!fileName || experimentId === null) return null;
    return this.guard(() => this.client.csv(fileName, experimentId, doc));
  }

  async downloadConsolidatedCsv(): Promise<string | null> {
    if (!this.state.fileName) return null;
    return this.guard(() => this.client.consolidatedCsv(this.state.fileName!));
  }
}
