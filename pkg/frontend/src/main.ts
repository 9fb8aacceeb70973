/** Bootstrap: wire the controller to the static page and fill the
 * header health indicator and corpus summary panel. */

import { ApiClient } from "./api.js";
import { ConsoleApp } from "./app.js";

const api = new ApiClient();

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

new ConsoleApp(api, {
  form: byId<HTMLFormElement>("claim-form"),
  input: byId<HTMLTextAreaElement>("claim-input"),
  submit: byId<HTMLButtonElement>("claim-submit"),
  detail: byId("detail-pane"),
  history: byId("history-pane"),
  banner: byId("banner-slot"),
});

async function refreshStatus(): Promise<void> {
  const indicator = byId("health-indicator");
  try {
    const health = await api.health();
    indicator.textContent = health.model_loaded
      ? `ready (${health.index_size} evidence docs)`
      : "service up, model not loaded";
    indicator.className = health.model_loaded ? "health ok" : "health warn";
  } catch {
    indicator.textContent = "service unreachable";
    indicator.className = "health down";
  }
}

async function refreshStats(): Promise<void> {
  const panel = byId("stats-panel");
  try {
    const stats = await api.stats();
    const labels = Object.entries(stats.label_histogram)
      .map(([label, n]) => `${label}: ${n}`)
      .join(", ");
    panel.textContent =
      `${stats.n_records} records | ` +
      `avg claim ${stats.avg_claim_tokens.toFixed(1)} tokens | ` +
      `English ratio ${(stats.claim_english_ratio * 100).toFixed(1)}% | ` +
      labels;
  } catch {
    panel.textContent = "corpus statistics unavailable";
  }
}

void refreshStatus();
void refreshStats();
