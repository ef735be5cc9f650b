// Browser entry point: owns the DOM, delegates every action to the
// controller, and re-renders the whole app from state after each change.

import { ReqsimClient } from "./api.js";
import { DashboardController, currentExperiment, type ChartKind, type Panel } from "./state.js";
import { renderApp } from "./render.js";
import type { CloudConfig, Options } from "./types.js";

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? localStorage.getItem("reqsim.api") ?? "http://127.0.0.1:8000";
}

const root = document.getElementById("app")!;
const client = new ReqsimClient(apiBase());
const controller = new DashboardController(client, (state) => {
  root.innerHTML = renderApp(state);
  const zipLink = root.querySelector<HTMLAnchorElement>("[data-zip-link]");
  if (zipLink && state.fileName && state.experimentId !== null) {
    zipLink.href = client.zipUrl(state.fileName, state.experimentId);
  }
});

function configSnapshot(): CloudConfig | null {
  const experiment = currentExperiment(controller.state);
  if (!experiment) return null;
  // deep copy so edits never touch the mirrored server state
  return JSON.parse(JSON.stringify(experiment.config)) as CloudConfig;
}

function currentOptions(): Options | undefined {
  const priority = document.getElementById("opt-priority") as HTMLInputElement | null;
  const faulty = document.getElementById("opt-faulty") as HTMLInputElement | null;
  const zone = document.getElementById("opt-zone") as HTMLInputElement | null;
  if (!priority || !faulty || !zone) return undefined;
  return {
    priority_enabled: priority.checked,
    faulty_handling_enabled: faulty.checked,
    zone_affinity_enabled: zone.checked,
  };
}

function downloadText(filename: string, text: string): void {
  const blob = new Blob([text], { type: "text/csv" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target || target instanceof HTMLFormElement) return;
  const action = target.dataset.action!;
  if (target instanceof HTMLInputElement && action === "toggle-strategy") {
    controller.toggleStrategy(target.dataset.strategy!);
    return;
  }
  if (target instanceof HTMLInputElement && action === "toggle-faulty") {
    const config = configSnapshot();
    if (!config) return;
    const vm = config.vms.find((v) => v.vm_id === Number(target.dataset.id));
    if (vm) {
      vm.faulty = target.checked;
      void controller.saveConfig(config);
    }
    return;
  }
  if (target instanceof HTMLSelectElement) return; // handled on change
  switch (action) {
    case "open-file":
      event.preventDefault();
      void controller.openFile(target.dataset.name!);
      break;
    case "select-experiment":
      void controller.selectExperiment(Number(target.dataset.id));
      break;
    case "select-panel":
      controller.setPanel(target.dataset.panel as Panel);
      break;
    case "refresh-pool":
      void controller.refreshPool();
      break;
    case "run":
      void controller.runSelected(currentOptions());
      break;
    case "load-events":
      void controller.loadEvents();
      break;
    case "download-csv":
      void controller
        .downloadCsv(target.dataset.doc as "metrics_per_strategy" | "per_node_value")
        .then((text) => text && downloadText(`${target.dataset.doc}.csv`, text));
      break;
    case "download-consolidated-csv":
      void controller
        .downloadConsolidatedCsv()
        .then((text) => text && downloadText("consolidated.csv", text));
      break;
    case "remove-dc":
    case "remove-vm":
    case "remove-service": {
      const config = configSnapshot();
      if (!config) return;
      const id = Number(target.dataset.id);
      if (action === "remove-dc") config.data_centers = config.data_centers.filter((d) => d.dc_id !== id);
      if (action === "remove-vm") config.vms = config.vms.filter((v) => v.vm_id !== id);
      if (action === "remove-service") {
        config.services = config.services.filter((s) => s.service_id !== id);
        config.demands = config.demands.filter((d) => d.service_id !== id);
      }
      void controller.saveConfig(config);
      break;
    }
  }
});

root.addEventListener("change", (event) => {
  const target = event.target as HTMLElement;
  if (!(target instanceof HTMLSelectElement)) return;
  const action = target.dataset.action;
  if (action === "set-mode") controller.setMode(target.value as "exact" | "paper_compat");
  if (action === "set-chart") controller.setChart(target.value as ChartKind);
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  const action = form.dataset.action;
  if (!action) return;
  event.preventDefault();
  const fields = new FormData(form);
  const num = (name: string) => Number(fields.get(name));
  const text = (name: string) => String(fields.get(name) ?? "");
  const config = configSnapshot();
  switch (action) {
    case "create-file":
      void controller.createFile(text("name"));
      form.reset();
      break;
    case "add-dc":
      if (!config) return;
      config.data_centers.push({
        zone_id: num("zone_id"),
        dc_id: num("dc_id"),
        country: text("country"),
        city: text("city"),
      });
      void controller.saveConfig(config);
      break;
    case "add-vm":
      if (!config) return;
      config.vms.push({
        dc_id: num("dc_id"),
        vm_id: num("vm_id"),
        processor: text("processor"),
        ram_gb: num("ram_gb"),
        hdd_gb: num("hdd_gb"),
        connections: num("connections"),
        nic: num("nic"),
        traffic: num("traffic"),
        bandwidth: num("bandwidth"),
        os: text("os"),
        max_users: num("max_users"),
        faulty: false,
      });
      void controller.saveConfig(config);
      break;
    case "add-service":
      if (!config) return;
      config.services.push({
        service_id: num("service_id"),
        file_name: text("file_name"),
        size: num("size"),
        type_label: text("type_label"),
        value: 0,
        weightage: num("weightage"),
      });
      config.demands.push({ service_id: num("service_id"), count: 0 });
      void controller.saveConfig(config);
      break;
    case "apply-requests": {
      if (!config) return;
      config.time_settings = {
        arrival_lo: num("arrival_lo"),
        arrival_hi: num("arrival_hi"),
        process_lo: num("process_lo"),
        process_hi: num("process_hi"),
      };
      const inputs = root.querySelectorAll<HTMLInputElement>("[data-demand]");
      config.demands = Array.from(inputs).map((input) => ({
        service_id: Number(input.dataset.demand),
        count: Number(input.value),
      }));
      void controller.saveConfig(config);
      break;
    }
    case "generate": {
      const seedText = text("seed");
      void controller.generatePool(seedText === "" ? undefined : Number(seedText));
      break;
    }
    case "next-experiment": {
      const added: Record<number, number> = {};
      root.querySelectorAll<HTMLInputElement>("[data-added-demand]").forEach((input) => {
        const count = Number(input.value);
        if (count > 0) added[Number(input.dataset.addedDemand)] = count;
      });
      void controller.openNextExperiment(added, num("new_arrival_hi"));
      break;
    }
    case "quantify": {
      const capacities = text("capacities")
        .split(",")
        .map((part) => Number(part.trim()))
        .filter((value) => !Number.isNaN(value));
      const requestsText = text("requests");
      void controller.quantifyPreview(
        capacities,
        text("mode"),
        requestsText === "" ? undefined : Number(requestsText),
      );
      break;
    }
  }
});

void controller.loadFiles();
