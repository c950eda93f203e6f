/**
 * Editor state machine, DOM-free so the feedback loop is unit-testable.
 *
 * Invariants: overlays always reference spans valid in the current draft
 * (any edit clears them and sets the dirty flag); badge kinds are taken
 * verbatim from the machine report, never reclassified; at most one
 * assessment is in flight and a new submission cancels the old poll.
 */

import type { ApiClient } from "./api.js";
import type { AnnotationKind, MachineReport, S2REntry } from "./types.js";

export interface Overlay {
  span: [number, number];
  text: string;
  kinds: AnnotationKind[];
  entries: S2REntry[];
}

export type EditorStatus = "idle" | "running" | "annotated" | "error";

/** Group report entries by sentence span, keeping report order. */
export function computeOverlays(report: MachineReport): Overlay[] {
  const bySpan = new Map<string, Overlay>();
  for (const entry of report.s2rs) {
    const key = entry.sentenceSpan.join(":");
    let overlay = bySpan.get(key);
    if (!overlay) {
      overlay = { span: entry.sentenceSpan, text: entry.text, kinds: [], entries: [] };
      bySpan.set(key, overlay);
    }
    overlay.kinds.push(...entry.annotations.map((a) => a.kind));
    overlay.entries.push(entry);
  }
  return [...bySpan.values()].sort((a, b) => a.span[0] - b.span[0]);
}

export class EditorController {
  draft = "";
  selectedAppId: string | null = null;
  lastReportId: string | null = null;
  overlays: Overlay[] = [];
  dirty = false;
  status: EditorStatus = "idle";
  errorMessage: string | null = null;

  private inflight: AbortController | null = null;

  constructor(private readonly api: ApiClient, private readonly pollIntervalMs = 250) {}

  /** Any edit invalidates the overlays: their spans may no longer hold. */
  setDraft(text: string): void {
    if (text === this.draft) return;
    this.draft = text;
    this.overlays = [];
    this.dirty = true;
    if (this.status === "annotated") this.status = "idle";
  }

  selectApp(appId: string | null): void {
    this.selectedAppId = appId;
  }

  cancel(): void {
    this.inflight?.abort();
    this.inflight = null;
  }

  /**
   * Submit the draft, poll the job, fetch the report and overlay it.
   * Resolves to the report, or null when superseded/invalid; on transport
   * errors the draft is preserved and status becomes "error".
   */
  async runAssessment(): Promise<MachineReport | null> {
    if (!this.draft.trim() || !this.selectedAppId) {
      this.errorMessage = "enter a report and pick an app first";
      this.status = "error";
      return null;
    }
    this.cancel();
    const controller = new AbortController();
    this.inflight = controller;
    const submitted = this.draft;
    this.status = "running";
    this.errorMessage = null;
    try {
      const jobId = await this.api.submitAssessment(submitted, this.selectedAppId);
      const job = await this.api.pollJob(jobId, this.pollIntervalMs, controller.signal);
      const report = await this.api.getReport(job.resultRef as string);
      if (controller.signal.aborted) return null;
      if (this.draft !== submitted) return null; // stale: the draft moved on
      this.applyReport(report);
      return report;
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return null;
      this.status = "error";
      this.errorMessage = err instanceof Error ? err.message : String(err);
      return null;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  applyReport(report: MachineReport): void {
    this.overlays = computeOverlays(report);
    this.lastReportId = report.reportId;
    this.dirty = false;
    this.status = "annotated";
  }
}
