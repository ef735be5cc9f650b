// End-to-end loop against a live service: create file -> configure ->
// generate -> run (empty selection) -> charts for the two default
// strategies -> next experiment with added demands -> consolidated view
// over two experiments. Every rendered metric is checked against the
// corresponding CSV export.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ReqsimClient } from "../src/api.js";
import { DashboardController, currentExperiment } from "../src/state.js";
import {
  renderCharts,
  renderConfigPanels,
  renderConsolidatedPane,
  renderMetricsTable,
  renderQuantifyPane,
} from "../src/render.js";
import { referenceConfig, tableCells } from "./fixtures.js";

const PORT = 8200 + Math.floor(Math.random() * 1500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let dataDir: string;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/files`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "reqsim-ui-"));
  server = spawn(
    "python3",
    ["-m", "uvicorn", "reqsim.api:app", "--port", String(PORT), "--log-level", "warning"],
    { env: { ...process.env, REQSIM_DATA_DIR: dataDir }, stdio: "ignore" },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
  if (dataDir) rmSync(dataDir, { recursive: true, force: true });
});

function csvRows(text: string): string[][] {
  return text
    .trim()
    .split("\n")
    .slice(1)
    .map((line) => line.split(","));
}

describe("dashboard flow against a live service", () => {
  const client = new ReqsimClient(BASE);
  const controller = new DashboardController(client);

  it("completes the whole loop with every rendered metric equal to its CSV value", async () => {
    // create + configure
    await controller.createFile("LoopTest");
    expect(controller.state.error).toBeNull();
    expect(currentExperiment(controller.state)?.status).toBe("draft");
    await controller.saveConfig(referenceConfig());
    expect(controller.state.error).toBeNull();

    // generate a seeded pool; requests panel mirrors it
    await controller.generatePool(42);
    let experiment = currentExperiment(controller.state)!;
    expect(experiment.status).toBe("generated");
    expect(experiment.pool).toHaveLength(48);
    controller.setPanel("requests");
    const requestsPanel = renderConfigPanels(controller.state);
    expect(requestsPanel).toContain('data-demand="501" value="14"');
    const poolRows = tableCells(requestsPanel, "pool-table");
    expect(poolRows).toHaveLength(48);

    // run with empty selection: the two defaults come back
    await controller.runSelected();
    expect(controller.state.error).toBeNull();
    const results = controller.state.results!;
    expect(results.runs.map((run) => run.plan.strategy)).toEqual([
      "ROUND_ROBIN",
      "ORDERLY_CIRCULAR",
    ]);

    // rendered metrics table equals metrics_per_strategy.csv field by field
    const metricsCsv = await client.csv("LoopTest", 1, "metrics_per_strategy");
    const metricsRows = csvRows(metricsCsv);
    const rendered = tableCells(renderMetricsTable(results), "metrics-table");
    expect(rendered).toHaveLength(metricsRows.length);
    for (let i = 0; i < metricsRows.length; i += 1) {
      expect(rendered[i]).toEqual(metricsRows[i]);
    }

    // charts for both strategies; value-per-node labels equal the CSV TOTAL rows
    const chartHtml = renderCharts({ ...controller.state, chart: "value_per_node" });
    const nodeValueCsv = await client.csv("LoopTest", 1, "per_node_value");
    const totals = csvRows(nodeValueCsv).filter((row) => row[2] === "TOTAL");
    expect(totals.length).toBeGreaterThan(0);
    for (const [, vmId, , earned] of totals) {
      expect(chartHtml).toContain(`vm ${vmId}`);
      expect(chartHtml).toContain(`data-value="${earned}"`);
    }
    const waitChart = renderCharts({ ...controller.state, chart: "avg_wait" });
    for (const row of metricsRows) {
      expect(waitChart).toContain(row[1]); // avg_wait, six decimals
    }

    // the download buttons serve the very same CSV bytes
    const downloaded = await controller.downloadCsv("metrics_per_strategy");
    expect(downloaded).toBe(metricsCsv);

    // next experiment: +6 requests for 501, arrival bound 25
    await controller.openNextExperiment({ 501: 6 }, 25);
    expect(controller.state.error).toBeNull();
    experiment = currentExperiment(controller.state)!;
    expect(experiment.experiment_id).toBe(2);
    const demands = Object.fromEntries(
      experiment.config.demands.map((d) => [d.service_id, d.count]),
    );
    expect(demands[501]).toBe(20);
    expect(experiment.config.time_settings.arrival_lo).toBe(18);
    expect(experiment.config.time_settings.arrival_hi).toBe(25);
    const panel2 = renderConfigPanels({ ...controller.state, panel: "requests" });
    expect(panel2).toContain('data-demand="501" value="20"');

    // run experiment 2 and consolidate across both
    await controller.generatePool();
    await controller.runSelected();
    expect(controller.state.error).toBeNull();
    await controller.loadConsolidated();
    const consolidated = controller.state.consolidated!;
    for (const aggregate of consolidated.aggregates) {
      expect(aggregate.experiments).toBe(2);
    }
    expect(new Set(consolidated.rows.map((row) => row.experiment_id))).toEqual(
      new Set([1, 2]),
    );

    // rendered consolidated table equals consolidated.csv
    const consolidatedCsv = await client.consolidatedCsv("LoopTest");
    const aggregateRows = csvRows(consolidatedCsv);
    const renderedAggregates = tableCells(
      renderConsolidatedPane(controller.state),
      "consolidated-table",
    );
    expect(renderedAggregates).toHaveLength(aggregateRows.length);
    for (let i = 0; i < aggregateRows.length; i += 1) {
      expect(renderedAggregates[i]).toEqual(aggregateRows[i]);
    }
  }, 60_000);

  it("quantification preview mirrors the published table", async () => {
    await controller.quantifyPreview([9, 7, 6, 8], "paper_compat", 14);
    const html = renderQuantifyPane(controller.state);
    const rows = tableCells(html, "quantify-table");
    expect(rows.map((row) => row[3])).toEqual([
      "87.697560",
      "35.197271",
      "12.302440",
      "64.802729",
    ]);
    expect(rows.map((row) => row[4])).toEqual(["6", "2", "1", "5"]);
    expect(html).toContain("200.000000");
  });

  it("surfaces API error codes verbatim", async () => {
    await controller.openNextExperiment({}, 1); // bound below previous hi
    expect(controller.state.error?.code).toBe("BAD_RANGE");
  });
});
