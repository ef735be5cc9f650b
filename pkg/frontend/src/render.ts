// Pure view functions: ViewState in, HTML string out. No DOM access, no
// API calls, no arithmetic on metrics — values are echoed exactly as the
// server sent them, floats through fmt6 to match the CSV exports.

import { barChart, fmt6, groupedBarChart, type Bar, type BarGroup } from "./charts.js";
import { currentExperiment, type Panel, type ViewState } from "./state.js";
import { ALL_STRATEGIES, type ExperimentDetail, type Results } from "./types.js";

export function esc(text: string | number): string {
  return String(text)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const ZONE_NAMES: Record<number, string> = {
  1: "North America",
  2: "South America",
  3: "Europe",
  4: "Asia",
  5: "Africa",
  6: "Oceania",
};

function table(headers: string[], rows: string[][], className = ""): string {
  const head = headers.map((h) => `<th>${esc(h)}</th>`).join("");
  const body = rows
    .map((row) => `<tr>${row.map((cell) => `<td>${cell}</td>`).join("")}</tr>`)
    .join("");
  return `<table class="${className}"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderError(state: ViewState): string {
  if (!state.error) return "";
  return `<div class="error" role="alert"><strong>${esc(state.error.code)}</strong> ${esc(state.error.message)}</div>`;
}

export function renderFilesPane(state: ViewState): string {
  const rows = state.files.map((f) => [
    `<a href="#" data-action="open-file" data-name="${esc(f.name)}">${esc(f.name)}</a>`,
    esc(f.created_at),
    esc(f.experiments),
  ]);
  return `
  <section class="pane" id="files-pane">
    <h2>Experiment files</h2>
    ${table(["name", "created", "experiments"], rows, "files-table")}
    <form data-action="create-file" class="inline">
      <input name="name" placeholder="new file name" required>
      <button type="submit">Create file</button>
    </form>
  </section>`;
}

export function renderExperimentTabs(state: ViewState): string {
  if (!state.file) return "";
  const tabs = state.file.experiments
    .map((e) => {
      const active = e.experiment_id === state.experimentId ? "active" : "";
      return `<button class="tab ${active}" data-action="select-experiment" data-id="${e.experiment_id}">#${e.experiment_id} <span class="status ${e.status}">${e.status}</span></button>`;
    })
    .join("");
  return `<nav class="experiment-tabs">${tabs}</nav>`;
}

function renderDataCentersPanel(experiment: ExperimentDetail): string {
  const rows = experiment.config.data_centers.map((dc) => [
    esc(dc.zone_id),
    esc(ZONE_NAMES[dc.zone_id] ?? "?"),
    esc(dc.dc_id),
    esc(dc.country),
    esc(dc.city),
    `<button data-action="remove-dc" data-id="${dc.dc_id}">remove</button>`,
  ]);
  const legend = Object.entries(ZONE_NAMES)
    .map(([id, name]) => `<li><span class="zone-chip z${id}">${id}</span> ${esc(name)}</li>`)
    .join("");
  return `
    ${table(["zone", "region", "dc id", "country", "city", ""], rows)}
    <form data-action="add-dc" class="inline">
      <input name="zone_id" type="number" min="1" max="6" placeholder="zone 1-6" required>
      <input name="dc_id" type="number" placeholder="dc id" required>
      <input name="country" placeholder="country" required>
      <input name="city" placeholder="city" required>
      <button type="submit">Add data center</button>
    </form>
    <ul class="zone-legend">${legend}</ul>`;
}

function renderVmsPanel(experiment: ExperimentDetail): string {
  const rows = experiment.config.vms.map((vm) => [
    esc(vm.dc_id),
    esc(vm.vm_id),
    esc(vm.processor),
    esc(vm.ram_gb),
    esc(vm.hdd_gb),
    esc(vm.connections),
    esc(vm.nic),
    esc(vm.traffic),
    esc(vm.bandwidth),
    esc(vm.os),
    esc(vm.max_users),
    `<input type="checkbox" data-action="toggle-faulty" data-id="${vm.vm_id}" ${vm.faulty ? "checked" : ""}>`,
    `<button data-action="remove-vm" data-id="${vm.vm_id}">remove</button>`,
  ]);
  return `
    ${table(
      ["dc", "vm id", "processor", "ram", "hdd", "connections", "nic", "traffic", "bandwidth", "os", "max users", "faulty", ""],
      rows,
    )}
    <form data-action="add-vm" class="inline wrap">
      <input name="dc_id" type="number" placeholder="dc id" required>
      <input name="vm_id" type="number" placeholder="vm id" required>
      <input name="processor" placeholder="processor" value="Intel">
      <input name="ram_gb" type="number" placeholder="ram gb" required>
      <input name="hdd_gb" type="number" placeholder="hdd gb" value="500">
      <input name="connections" type="number" placeholder="connections" required>
      <input name="nic" type="number" placeholder="nic" value="32">
      <input name="traffic" type="number" placeholder="traffic" value="50">
      <input name="bandwidth" type="number" placeholder="bandwidth" value="512">
      <input name="os" placeholder="os" value="Linux">
      <input name="max_users" type="number" placeholder="max users" required>
      <button type="submit">Add VM</button>
    </form>`;
}

function renderServicesPanel(experiment: ExperimentDetail): string {
  const rows = experiment.config.services.map((s) => [
    esc(s.service_id),
    esc(s.file_name),
    esc(s.size),
    esc(s.type_label),
    `<span class="computed">${esc(s.value)}</span>`,
    esc(s.weightage),
    `<button data-action="remove-service" data-id="${s.service_id}">remove</button>`,
  ]);
  return `
    ${table(["service id", "file name", "size", "type", "value (derived)", "weightage", ""], rows)}
    <form data-action="add-service" class="inline wrap">
      <input name="service_id" type="number" placeholder="service id" required>
      <input name="file_name" placeholder="file name" required>
      <input name="size" type="number" placeholder="size" required>
      <input name="type_label" placeholder="type" value="SERVICE">
      <input name="weightage" type="number" placeholder="weightage" required>
      <button type="submit">Add service</button>
    </form>`;
}

function renderRequestsPanel(experiment: ExperimentDetail): string {
  const demandRows = experiment.config.services.map((s) => {
    const demand = experiment.config.demands.find((d) => d.service_id === s.service_id);
    return [
      esc(s.service_id),
      esc(s.file_name),
      esc(s.size),
      `<input type="number" min="0" data-demand="${s.service_id}" value="${demand?.count ?? 0}" ${experiment.status !== "draft" ? "disabled" : ""}>`,
    ];
  });
  const t = experiment.config.time_settings;
  const disabled = experiment.status !== "draft" ? "disabled" : "";
  const poolRows = experiment.pool.map((r) => [
    esc(r.request_id),
    esc(r.service_id),
    esc(r.ip),
    esc(r.zone_id),
    esc(r.arrival_time),
    esc(r.process_time),
    esc(r.priority),
  ]);
  return `
    <h4>Demands per service</h4>
    ${table(["service id", "file name", "size", "no of requests"], demandRows, "demand-table")}
    <h4>Random time settings</h4>
    <form data-action="apply-requests" class="inline">
      <label>arrival <input name="arrival_lo" type="number" value="${t.arrival_lo}" ${disabled}> to
        <input name="arrival_hi" type="number" value="${t.arrival_hi}" ${disabled}></label>
      <label>process <input name="process_lo" type="number" value="${t.process_lo}" ${disabled}> to
        <input name="process_hi" type="number" value="${t.process_hi}" ${disabled}></label>
      <button type="submit" ${disabled}>Apply demands &amp; times</button>
    </form>
    <form data-action="generate" class="inline">
      <input name="seed" type="number" placeholder="seed (optional)">
      <button type="submit" ${experiment.status !== "draft" ? "disabled" : ""}>Generate pool</button>
      <button type="button" data-action="refresh-pool" ${experiment.status !== "generated" ? "disabled" : ""}>Refresh</button>
      <span class="hint">seed ${experiment.seed ?? "-"}, ${experiment.pool.length} requests</span>
    </form>
    ${experiment.pool.length ? `<h4>Generated pool</h4>${table(["id", "service", "ip", "zone", "arrival", "process", "priority"], poolRows, "pool-table")}` : ""}`;
}

export function renderConfigPanels(state: ViewState): string {
  const experiment = currentExperiment(state);
  if (!experiment) return "";
  const tabs: [Panel, string][] = [
    ["data_centers", "Data centers"],
    ["vms", "VM configuration"],
    ["services", "Services"],
    ["requests", "Requests"],
  ];
  const nav = tabs
    .map(
      ([panel, label]) =>
        `<button class="tab ${state.panel === panel ? "active" : ""}" data-action="select-panel" data-panel="${panel}">${label}</button>`,
    )
    .join("");
  const body =
    state.panel === "data_centers"
      ? renderDataCentersPanel(experiment)
      : state.panel === "vms"
        ? renderVmsPanel(experiment)
        : state.panel === "services"
          ? renderServicesPanel(experiment)
          : renderRequestsPanel(experiment);
  const violations = experiment.violations.length
    ? `<ul class="violations">${experiment.violations
        .map((v) => `<li><code>${esc(v.code)}</code> ${esc(v.message)}</li>`)
        .join("")}</ul>`
    : "";
  return `
  <section class="pane" id="config-pane">
    <h2>Cloud dashboard <span class="hint">experiment #${experiment.experiment_id}, ${experiment.status}</span></h2>
    <nav class="panel-tabs">${nav}</nav>
    <div class="panel-body">${body}</div>
    ${violations}
  </section>`;
}

export function renderStrategyAssembly(state: ViewState): string {
  const experiment = currentExperiment(state);
  if (!experiment) return "";
  const options = experiment.config.options;
  const checkboxes = ALL_STRATEGIES.map(
    (s) =>
      `<label><input type="checkbox" data-action="toggle-strategy" data-strategy="${s}" ${state.selectedStrategies.includes(s) ? "checked" : ""}> ${s}</label>`,
  ).join("");
  return `
  <section class="pane" id="assembly-pane">
    <h2>Strategy assembly</h2>
    <div class="strategies">${checkboxes}</div>
    <p class="hint">empty selection runs ROUND_ROBIN and ORDERLY_CIRCULAR</p>
    <div class="options">
      <label><input type="checkbox" id="opt-priority" ${options.priority_enabled ? "checked" : ""}> priority</label>
      <label><input type="checkbox" id="opt-faulty" ${options.faulty_handling_enabled ? "checked" : ""}> faulty handling</label>
      <label><input type="checkbox" id="opt-zone" ${options.zone_affinity_enabled ? "checked" : ""}> zone choice</label>
      <label>mode
        <select data-action="set-mode">
          <option value="exact" ${state.mode === "exact" ? "selected" : ""}>exact</option>
          <option value="paper_compat" ${state.mode === "paper_compat" ? "selected" : ""}>paper_compat</option>
        </select>
      </label>
      <button data-action="run" ${experiment.status !== "generated" ? "disabled" : ""}>Run strategies</button>
    </div>
  </section>`;
}

export function renderAssignmentTables(results: Results): string {
  const blocks = results.runs
    .map((run) => {
      const rows = [
        ...run.plan.entries.map((e) => [esc(e.request_id), esc(e.vm_id), ""]),
        ...run.plan.rejections.map((r) => [esc(r.request_id), "REJECTED", esc(r.reason)]),
      ];
      return `<details><summary>${esc(run.plan.strategy)} (${run.plan.entries.length} assigned, ${run.plan.rejections.length} rejected)</summary>
        ${table(["request", "vm", "reason"], rows, "assignment-table")}</details>`;
    })
    .join("");
  return `<h3>Assignment of requests to nodes</h3>${blocks}`;
}

export function renderTimingTables(results: Results): string {
  const blocks = results.runs
    .map((run) => {
      const rows = run.result.timings.map((t) => [
        esc(t.request_id),
        esc(t.vm_id),
        esc(t.arrival_time),
        esc(t.start_time),
        esc(t.completion_time),
        esc(t.wait_time),
        esc(t.response_time),
      ]);
      return `<details><summary>${esc(run.result.strategy)} timings (makespan ${run.result.makespan})</summary>
        ${table(["request", "vm", "arrival", "start", "completion", "wait", "response"], rows, "timing-table")}</details>`;
    })
    .join("");
  return `<h3>Computed parameters</h3>${blocks}`;
}

export function renderMetricsTable(results: Results): string {
  const rows = results.runs.map((run) => [
    esc(run.metrics.strategy),
    esc(fmt6(run.metrics.avg_wait)),
    esc(fmt6(run.metrics.avg_response)),
    esc(fmt6(run.metrics.mean_ruf)),
    esc(run.metrics.rejection_count),
    esc(run.metrics.flags.join(";")),
  ]);
  return `<h3>Metrics per strategy</h3>${table(
    ["strategy", "avg wait", "avg response", "mean RUF", "rejections", "flags"],
    rows,
    "metrics-table",
  )}`;
}

export function renderRankingTable(results: Results): string {
  const byStrategy = new Map(results.runs.map((run) => [run.metrics.strategy, run.metrics]));
  const rows = results.ranking.map((strategy, index) => {
    const metrics = byStrategy.get(strategy);
    return [
      esc(index + 1),
      esc(strategy),
      metrics ? esc(fmt6(metrics.mean_ruf)) : "",
      metrics ? esc(fmt6(metrics.avg_response)) : "",
    ];
  });
  return `<h3>Strategy ranking</h3>${table(
    ["rank", "strategy", "mean RUF", "avg response"],
    rows,
    "ranking-table",
  )}`;
}

export function renderCharts(state: ViewState): string {
  const results = state.results;
  if (!results) return "";
  const metricBars = (pick: (m: Results["runs"][0]["metrics"]) => number, int = false): Bar[] =>
    results.runs.map((run) => ({
      label: run.metrics.strategy,
      value: pick(run.metrics),
      text: int ? String(pick(run.metrics)) : undefined,
    }));
  let chart: string;
  switch (state.chart) {
    case "avg_wait":
      chart = barChart("Average wait time per strategy", metricBars((m) => m.avg_wait));
      break;
    case "avg_response":
      chart = barChart("Average response time per strategy", metricBars((m) => m.avg_response));
      break;
    case "mean_ruf":
      chart = barChart("Mean resource utilization factor per strategy", metricBars((m) => m.mean_ruf));
      break;
    case "rejections":
      chart = barChart("Rejections per strategy", metricBars((m) => m.rejection_count, true));
      break;
    case "value_per_node": {
      const groups: BarGroup[] = results.runs.map((run) => ({
        group: run.metrics.strategy,
        bars: Object.entries(run.metrics.per_node_value).map(([vmId, earned]) => ({
          label: `vm ${vmId}`,
          value: earned,
          text: String(earned),
        })),
      }));
      chart = groupedBarChart("Value earned by each node", groups);
      break;
    }
    case "consolidated_response": {
      const bars: Bar[] = (state.consolidated?.aggregates ?? []).map((a) => ({
        label: a.strategy,
        value: a.mean_avg_response,
      }));
      chart = barChart("Consolidated mean response across experiments", bars);
      break;
    }
  }
  const chartOptions: [string, string][] = [
    ["avg_wait", "avg wait"],
    ["avg_response", "avg response"],
    ["mean_ruf", "mean RUF"],
    ["rejections", "rejections"],
    ["value_per_node", "value per node"],
    ["consolidated_response", "consolidated response"],
  ];
  const select = chartOptions
    .map(
      ([kind, label]) =>
        `<option value="${kind}" ${state.chart === kind ? "selected" : ""}>${label}</option>`,
    )
    .join("");
  return `
    <h3>Comparison charts</h3>
    <label>chart <select data-action="set-chart">${select}</select></label>
    ${chart}
    <div class="downloads">
      <button data-action="download-csv" data-doc="metrics_per_strategy">metrics CSV</button>
      <button data-action="download-csv" data-doc="per_node_value">per-node value CSV</button>
      <a data-zip-link href="#">full CSV bundle (zip)</a>
    </div>`;
}

export function renderResultsPane(state: ViewState): string {
  if (!state.results) return "";
  const results = state.results;
  return `
  <section class="pane" id="results-pane">
    <h2>Results <span class="hint">experiment #${results.experiment_id}, mode ${esc(results.mode_used ?? "-")}</span></h2>
    ${renderAssignmentTables(results)}
    ${renderTimingTables(results)}
    ${renderMetricsTable(results)}
    ${renderRankingTable(results)}
    ${renderCharts(state)}
  </section>`;
}

export function renderQuantifyPane(state: ViewState): string {
  const preview = state.preview;
  const body = preview
    ? (() => {
        const rows = preview.capacities.map((capacity, i) => [
          esc(`N${i + 1}`),
          esc(capacity),
          esc(fmt6(preview.z_values[i])),
          esc(fmt6(preview.percentages[i])),
          preview.counts ? esc(preview.counts[i]) : "",
        ]);
        return `
        ${table(["node", "capacity", "z-value", "percentage", "requests"], rows, "quantify-table")}
        <p>mean <strong data-field="mean">${esc(fmt6(preview.mean))}</strong>,
           stddev <strong data-field="stddev">${esc(fmt6(preview.stddev))}</strong>,
           total percentage <strong data-field="total">${esc(fmt6(preview.total_percentage))}</strong>
           <span class="hint">(${esc(preview.mode)})</span></p>`;
      })()
    : `<p class="empty">enter capacities to preview</p>`;
  return `
  <section class="pane" id="quantify-pane">
    <h2>VM quantification</h2>
    <form data-action="quantify" class="inline">
      <input name="capacities" placeholder="9,7,6,8" required>
      <select name="mode">
        <option value="exact">exact</option>
        <option value="paper_compat">paper_compat</option>
      </select>
      <input name="requests" type="number" placeholder="requests">
      <button type="submit">Quantify</button>
    </form>
    ${body}
  </section>`;
}

export function renderConsolidatedPane(state: ViewState): string {
  const consolidated = state.consolidated;
  if (!consolidated) return "";
  const aggregateRows = consolidated.aggregates.map((a) => [
    esc(a.strategy),
    esc(a.experiments),
    esc(fmt6(a.mean_avg_wait)),
    esc(fmt6(a.mean_avg_response)),
    esc(fmt6(a.mean_mean_ruf)),
    esc(fmt6(a.mean_rejection_count)),
    esc(a.win_count),
  ]);
  const detailRows = consolidated.rows.map((row) => [
    esc(row.experiment_id),
    esc(row.metrics.strategy),
    esc(fmt6(row.metrics.avg_wait)),
    esc(fmt6(row.metrics.avg_response)),
    esc(fmt6(row.metrics.mean_ruf)),
    esc(row.metrics.rejection_count),
  ]);
  return `
  <section class="pane" id="consolidated-pane">
    <h2>Consolidated across experiments</h2>
    ${table(
      ["strategy", "experiments", "mean avg wait", "mean avg response", "mean RUF", "mean rejections", "wins"],
      aggregateRows,
      "consolidated-table",
    )}
    <details><summary>per-experiment rows</summary>
      ${table(["experiment", "strategy", "avg wait", "avg response", "mean RUF", "rejections"], detailRows, "consolidated-rows")}
    </details>
    <button data-action="download-consolidated-csv">consolidated CSV</button>
  </section>`;
}

export function renderNextExperimentPane(state: ViewState): string {
  const experiment = currentExperiment(state);
  const file = state.file;
  if (!experiment || !file) return "";
  const last = file.experiments[file.experiments.length - 1];
  if (last.status !== "completed") return "";
  const demandInputs = last.config.services
    .map(
      (s) =>
        `<label>service ${s.service_id} <input type="number" min="0" value="0" data-added-demand="${s.service_id}"></label>`,
    )
    .join("");
  return `
  <section class="pane" id="next-pane">
    <h2>Next experiment</h2>
    <p class="hint">arrival range continues from ${last.config.time_settings.arrival_hi}; entered demands add onto the current ones</p>
    <form data-action="next-experiment" class="inline wrap">
      ${demandInputs}
      <label>new arrival upper bound <input name="new_arrival_hi" type="number" required></label>
      <button type="submit">Open experiment #${last.experiment_id + 1}</button>
    </form>
  </section>`;
}

export function renderEventsPane(state: ViewState): string {
  if (!state.fileName) return "";
  const rows = state.events.map((e) => [
    esc(e.timestamp),
    esc(e.actor),
    esc(e.action),
    esc(e.detail),
  ]);
  return `
  <section class="pane" id="events-pane">
    <h2>Event log <button data-action="load-events">reload</button></h2>
    ${state.events.length ? table(["time", "actor", "action", "detail"], rows, "events-table") : '<p class="empty">not loaded</p>'}
  </section>`;
}

export function renderApp(state: ViewState): string {
  return `
    ${renderError(state)}
    ${renderFilesPane(state)}
    ${state.file ? `<section class="pane"><h2>${esc(state.file.name)}</h2>${renderExperimentTabs(state)}</section>` : ""}
    ${renderConfigPanels(state)}
    ${renderStrategyAssembly(state)}
    ${renderResultsPane(state)}
    ${renderConsolidatedPane(state)}
    ${renderNextExperimentPane(state)}
    ${renderQuantifyPane(state)}
    ${renderEventsPane(state)}
  `;
}
