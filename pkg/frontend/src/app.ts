/** Console controller: form handling, in-flight gating, session history.
 *
 * History lives in client memory only and is newest-first. Exactly one
 * request may be in flight; submits while busy are ignored, so a rapid
 * double-submit reaches the API once.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderErrorBanner, renderHistoryList, renderVerdictCard } from "./render.js";
import type { VerdictView } from "./verdict.js";
import { makeVerdict } from "./verdict.js";

export interface AppElements {
  form: HTMLFormElement;
  input: HTMLTextAreaElement;
  submit: HTMLButtonElement;
  detail: HTMLElement;
  history: HTMLElement;
  banner: HTMLElement;
}

export class ConsoleApp {
  private readonly history: VerdictView[] = [];
  private inFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly els: AppElements,
    private readonly now: () => Date = () => new Date(),
  ) {
    els.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitClaim();
    });
    els.input.addEventListener("input", () => this.syncSubmitState());
    this.syncSubmitState();
    this.renderHistory();
  }

  get historyEntries(): readonly VerdictView[] {
    return this.history;
  }

  private syncSubmitState(): void {
    this.els.submit.disabled =
      this.inFlight || this.els.input.value.trim() === "";
  }

  async submitClaim(): Promise<void> {
    const claim = this.els.input.value.trim();
    if (claim === "" || this.inFlight) return;

    this.inFlight = true;
    this.syncSubmitState();
    this.clearBanner();
    try {
      const result = await this.api.verify(claim);
      const view = makeVerdict(claim, result, this.now);
      this.history.unshift(view);
      this.showDetail(view);
      this.renderHistory();
      this.els.input.value = "";
    } catch (err) {
      const code = err instanceof ApiError ? err.code : "unexpected_error";
      this.showBanner(code);
    } finally {
      this.inFlight = false;
      this.syncSubmitState();
    }
  }

  selectHistory(index: number): void {
    const view = this.history[index];
    if (view) this.showDetail(view);
  }

  private showDetail(view: VerdictView): void {
    this.els.detail.replaceChildren(renderVerdictCard(view));
  }

  private renderHistory(): void {
    this.els.history.replaceChildren(
      renderHistoryList(this.history, (i) => this.selectHistory(i)),
    );
  }

  private showBanner(code: string): void {
    this.els.banner.replaceChildren(
      renderErrorBanner(code, () => this.clearBanner()),
    );
  }

  private clearBanner(): void {
    this.els.banner.replaceChildren();
  }
}
