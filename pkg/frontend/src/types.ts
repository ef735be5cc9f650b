// Wire types mirroring the service's JSON schemas.

export interface DataCenter {
  zone_id: number;
  dc_id: number;
  country: string;
  city: string;
}

export interface VirtualMachine {
  dc_id: number;
  vm_id: number;
  processor: string;
  ram_gb: number;
  hdd_gb: number;
  connections: number;
  nic: number;
  traffic: number;
  bandwidth: number;
  os: string;
  max_users: number;
  faulty: boolean;
}

export interface Service {
  service_id: number;
  file_name: string;
  size: number;
  type_label: string;
  value: number;
  weightage: number;
}

export interface ServiceDemand {
  service_id: number;
  count: number;
}

export interface Options {
  priority_enabled: boolean;
  faulty_handling_enabled: boolean;
  zone_affinity_enabled: boolean;
}

export interface TimeRangeSettings {
  arrival_lo: number;
  arrival_hi: number;
  process_lo: number;
  process_hi: number;
}

export interface CloudConfig {
  data_centers: DataCenter[];
  vms: VirtualMachine[];
  services: Service[];
  demands: ServiceDemand[];
  options: Options;
  time_settings: TimeRangeSettings;
}

export interface Violation {
  code: string;
  message: string;
}

export interface RequestRow {
  request_id: number;
  service_id: number;
  ip: string;
  zone_id: number;
  arrival_time: number;
  process_time: number;
  priority: number;
}

export interface ExperimentDetail {
  experiment_id: number;
  status: "draft" | "generated" | "completed";
  seed: number | null;
  config: CloudConfig;
  violations: Violation[];
  pool: RequestRow[];
}

export interface FileSummary {
  name: string;
  created_at: string;
  experiments: number;
}

export interface FileDetail {
  name: string;
  created_at: string;
  experiments: ExperimentDetail[];
}

export interface PlanEntry {
  request_id: number;
  vm_id: number;
}

export interface RejectionRow {
  request_id: number;
  reason: string;
}

export interface Quantification {
  capacities: number[];
  mean: number;
  stddev: number;
  z_values: number[];
  percentages: number[];
  total_percentage: number;
  mode: string;
}

export interface Plan {
  strategy: string;
  entries: PlanEntry[];
  rejections: RejectionRow[];
  quantification: Quantification | null;
}

export interface Timing {
  request_id: number;
  vm_id: number;
  arrival_time: number;
  start_time: number;
  completion_time: number;
  wait_time: number;
  response_time: number;
}

export interface SimResult {
  strategy: string;
  timings: Timing[];
  rejections: RejectionRow[];
  makespan: number;
  per_vm_busy: Record<string, number>;
}

export interface Metrics {
  strategy: string;
  avg_wait: number;
  avg_response: number;
  per_node_value: Record<string, number>;
  per_node_service_value: [number, number, number][];
  per_node_ruf: Record<string, number>;
  mean_ruf: number;
  rejection_count: number;
  flags: string[];
}

export interface StrategyRun {
  plan: Plan;
  result: SimResult;
  metrics: Metrics;
}

export interface Results {
  experiment_id: number;
  status: string;
  seed: number | null;
  mode_used: string | null;
  options_used: Options | null;
  ranking: string[];
  pool: RequestRow[];
  runs: StrategyRun[];
}

export interface Aggregate {
  strategy: string;
  experiments: number;
  mean_avg_wait: number;
  mean_avg_response: number;
  mean_mean_ruf: number;
  mean_rejection_count: number;
  win_count: number;
}

export interface ConsolidatedRow {
  experiment_id: number;
  metrics: Metrics;
}

export interface Consolidated {
  file_name: string;
  rows: ConsolidatedRow[];
  aggregates: Aggregate[];
}

export interface QuantifyPreview extends Quantification {
  requests: number | null;
  counts: number[] | null;
}

export interface EventRow {
  timestamp: string;
  actor: string;
  action: string;
  detail: string;
}

export interface ErrorBody {
  code: string;
  message: string;
}

export const ALL_STRATEGIES = [
  "ROUND_ROBIN",
  "ORDERLY_CIRCULAR",
  "CAPACITY_FILL_IN",
  "THROTTLED",
  "EQUAL_SPLIT",
  "CAPACITY_PROPORTIONED",
] as const;

export type StrategyName = (typeof ALL_STRATEGIES)[number];

export const CSV_DOCS = [
  "pool",
  "plans",
  "timings",
  "metrics_per_strategy",
  "per_node_value",
] as const;

export type CsvDoc = (typeof CSV_DOCS)[number];
