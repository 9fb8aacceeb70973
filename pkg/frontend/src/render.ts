/** DOM rendering. Every displayed value comes verbatim from the API
 * response; nothing here recomputes or second-guesses the verdict. */

import type { VerdictView } from "./verdict.js";
import { formatConfidence, labelColor } from "./verdict.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderVerdictCard(view: VerdictView): HTMLElement {
  const card = el("article", "verdict-card");
  const r = view.result;

  const header = el("header", "verdict-header");
  const chip = el("span", `label-chip label-${labelColor(r.label)}`, r.label);
  chip.dataset.label = r.label;
  header.appendChild(chip);
  header.appendChild(
    el("span", "confidence", formatConfidence(r.confidence)),
  );
  card.appendChild(header);

  card.appendChild(el("p", "claim-text", view.claim));

  const evidence = el("div", "evidence");
  evidence.appendChild(el("p", "evidence-text", r.evidence_text));
  if (r.evidence_url !== "") {
    const link = el("a", "evidence-link", r.evidence_id);
    link.href = r.evidence_url;
    link.target = "_blank";
    link.rel = "noopener";
    evidence.appendChild(link);
  }
  card.appendChild(evidence);

  card.appendChild(el("p", "explanation", r.explanation));
  card.appendChild(el("p", "rouge", `ROUGE-L ${r.rouge_l.toFixed(3)}`));
  return card;
}

export function renderErrorBanner(
  code: string,
  onDismiss: () => void,
): HTMLElement {
  const banner = el("div", "error-banner");
  banner.appendChild(el("span", "error-code", `Request failed: ${code}`));
  const dismiss = el("button", "error-dismiss", "dismiss");
  dismiss.type = "button";
  dismiss.addEventListener("click", onDismiss);
  banner.appendChild(dismiss);
  return banner;
}

export function renderHistoryList(
  history: readonly VerdictView[],
  onSelect: (index: number) => void,
): HTMLElement {
  const list = el("ul", "history-list");
  if (history.length === 0) {
    list.appendChild(el("li", "history-empty", "No claims checked yet."));
    return list;
  }
  history.forEach((view, index) => {
    const item = el("li", "history-item");
    item.dataset.index = String(index);
    const button = el("button", "history-entry");
    button.type = "button";
    button.appendChild(
      el("span", `history-label label-${labelColor(view.result.label)}`,
         view.result.label),
    );
    button.appendChild(el("span", "history-claim", view.claim));
    button.appendChild(
      el("time", "history-time", view.submittedAt.toLocaleTimeString()),
    );
    button.addEventListener("click", () => onSelect(index));
    item.appendChild(button);
    list.appendChild(item);
  });
  return list;
}
