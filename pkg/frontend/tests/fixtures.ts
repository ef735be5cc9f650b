// Canned wire-shaped data for unit tests.

import type {
  CloudConfig,
  Consolidated,
  ExperimentDetail,
  FileDetail,
  Metrics,
  Results,
  StrategyRun,
} from "../src/types.js";

export function referenceConfig(): CloudConfig {
  return {
    data_centers: [{ zone_id: 4, dc_id: 101, country: "India", city: "Pondicherry" }],
    vms: [
      { dc_id: 101, vm_id: 10001, processor: "Intel", ram_gb: 8, hdd_gb: 500, connections: 9, nic: 32, traffic: 50, bandwidth: 512, os: "Windows 2003", max_users: 5, faulty: false },
      { dc_id: 101, vm_id: 10002, processor: "Intel", ram_gb: 10, hdd_gb: 1024, connections: 7, nic: 64, traffic: 200, bandwidth: 512, os: "Windows 2008", max_users: 9, faulty: false },
      { dc_id: 101, vm_id: 10003, processor: "Dual Core", ram_gb: 12, hdd_gb: 128, connections: 6, nic: 128, traffic: 100, bandwidth: 15, os: "Windows 2012", max_users: 7, faulty: false },
      { dc_id: 101, vm_id: 10004, processor: "Intel", ram_gb: 14, hdd_gb: 500, connections: 8, nic: 32, traffic: 20, bandwidth: 135, os: "Windows 2012", max_users: 7, faulty: false },
    ],
    services: [
      { service_id: 501, file_name: "LOAD", size: 5, type_label: "SERVICE", value: 1, weightage: 5 },
      { service_id: 502, file_name: "PROCESSING", size: 4, type_label: "SERVICE", value: 2, weightage: 2 },
      { service_id: 503, file_name: "RESULT", size: 6, type_label: "WIN SERVICE", value: 3, weightage: 3 },
    ],
    demands: [
      { service_id: 501, count: 14 },
      { service_id: 502, count: 16 },
      { service_id: 503, count: 18 },
    ],
    options: { priority_enabled: false, faulty_handling_enabled: false, zone_affinity_enabled: false },
    time_settings: { arrival_lo: 0, arrival_hi: 18, process_lo: 1, process_hi: 10 },
  };
}

function metricsFor(strategy: string, avgWait: number, avgResponse: number, ruf: number): Metrics {
  return {
    strategy,
    avg_wait: avgWait,
    avg_response: avgResponse,
    per_node_value: { "10001": 30, "10002": 24 },
    per_node_service_value: [
      [10001, 501, 30],
      [10002, 502, 24],
    ],
    per_node_ruf: { "10001": ruf, "10002": ruf / 2 },
    mean_ruf: ruf,
    rejection_count: 2,
    flags: [],
  };
}

function runFor(strategy: string, avgWait: number, avgResponse: number, ruf: number): StrategyRun {
  return {
    plan: {
      strategy,
      entries: [
        { request_id: 1, vm_id: 10001 },
        { request_id: 2, vm_id: 10002 },
      ],
      rejections: [{ request_id: 3, reason: "ALL_FULL" }],
      quantification: null,
    },
    result: {
      strategy,
      timings: [
        { request_id: 1, vm_id: 10001, arrival_time: 0, start_time: 0, completion_time: 5, wait_time: 0, response_time: 5 },
        { request_id: 2, vm_id: 10002, arrival_time: 1, start_time: 5, completion_time: 9, wait_time: 4, response_time: 8 },
      ],
      rejections: [{ request_id: 3, reason: "ALL_FULL" }],
      makespan: 9,
      per_vm_busy: { "10001": 5, "10002": 4 },
    },
    metrics: metricsFor(strategy, avgWait, avgResponse, ruf),
  };
}

export function sampleResults(): Results {
  return {
    experiment_id: 1,
    status: "completed",
    seed: 42,
    mode_used: "exact",
    options_used: { priority_enabled: false, faulty_handling_enabled: false, zone_affinity_enabled: false },
    ranking: ["ORDERLY_CIRCULAR", "ROUND_ROBIN"],
    pool: [],
    runs: [
      runFor("ROUND_ROBIN", 5.821428571, 11.17857142, 0.131114),
      runFor("ORDERLY_CIRCULAR", 7.75, 13.10714285, 0.150652),
    ],
  };
}

export function sampleConsolidated(): Consolidated {
  return {
    file_name: "Test",
    rows: [
      { experiment_id: 1, metrics: metricsFor("ROUND_ROBIN", 5.8, 11.2, 0.13) },
      { experiment_id: 2, metrics: metricsFor("ROUND_ROBIN", 6.2, 12.4, 0.17) },
    ],
    aggregates: [
      {
        strategy: "ROUND_ROBIN",
        experiments: 2,
        mean_avg_wait: 6.0,
        mean_avg_response: 11.8,
        mean_mean_ruf: 0.15,
        mean_rejection_count: 2,
        win_count: 2,
      },
    ],
  };
}

export function draftExperiment(): ExperimentDetail {
  return {
    experiment_id: 1,
    status: "draft",
    seed: null,
    config: referenceConfig(),
    violations: [],
    pool: [],
  };
}

export function sampleFile(): FileDetail {
  return {
    name: "Test",
    created_at: "2026-08-11T00:00:00+00:00",
    experiments: [draftExperiment()],
  };
}

/** Extract the cell texts of the first table carrying the given class. */
export function tableCells(html: string, className: string): string[][] {
  const tableMatch = html.match(
    new RegExp(`<table class="[^"]*${className}[^"]*">([\\s\\S]*?)</table>`),
  );
  if (!tableMatch) return [];
  const rows: string[][] = [];
  for (const rowMatch of tableMatch[1].matchAll(/<tr>([\s\S]*?)<\/tr>/g)) {
    const cells = [...rowMatch[1].matchAll(/<td>([\s\S]*?)<\/td>/g)].map((m) =>
      m[1].replace(/<[^>]+>/g, "").trim(),
    );
    if (cells.length) rows.push(cells);
  }
  return rows;
}
