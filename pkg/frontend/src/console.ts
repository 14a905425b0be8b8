/** The sensor/effector console: input panel with live vocabulary checking,
 * a timestamped colour-coded log pane, a disambiguation picker, and a
 * report pane for answers. */

import { Candidate, ConsoleApi, Diagnostic, SubmitResult } from "./api.js";

type Status = "ok" | "error" | "pending-selection" | "answer" | "info";

export interface ConsoleOptions {
  precheckDebounceMs?: number;
}

/** byte offsets (as served) to character offsets in the given text */
export function byteSpanToChars(text: string, span: [number, number]): [number, number] {
  const encoder = new TextEncoder();
  let bytes = 0;
  let startChar = text.length;
  let endChar = text.length;
  for (let i = 0; i < text.length; i++) {
    if (bytes >= span[0] && startChar === text.length) startChar = i;
    if (bytes >= span[1]) {
      endChar = i;
      break;
    }
    bytes += encoder.encode(text[i]).length;
  }
  if (bytes < span[1]) endChar = text.length;
  if (bytes < span[0]) startChar = text.length;
  return [startChar, endChar];
}

export class CnlConsole {
  readonly root: HTMLElement;
  readonly logPane: HTMLElement;
  readonly reportPane: HTMLElement;
  readonly input: HTMLInputElement;
  readonly mirror: HTMLElement;        // underlined copy of the input text
  readonly statusBar: HTMLElement;
  readonly picker: HTMLElement;
  readonly micButton: HTMLButtonElement;
  readonly paragraphButton: HTMLButtonElement;

  private diagnostics: Diagnostic[] = [];
  private overrideArmed = false;
  private debounceMs: number;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private pendingRefs = new Map<string, HTMLElement>();

  constructor(
    parent: HTMLElement,
    readonly api: ConsoleApi,
    options: ConsoleOptions = {},
  ) {
    this.debounceMs = options.precheckDebounceMs ?? 150;
    const doc = parent.ownerDocument;
    this.root = doc.createElement("div");
    this.root.className = "cnl-console";

    const header = doc.createElement("div");
    header.className = "cnl-header";
    this.micButton = doc.createElement("button");
    this.micButton.className = "cnl-mic";
    this.micButton.textContent = "mic";
    this.micButton.disabled = true; // speech input is a stub
    this.micButton.title = "speech input is not available";
    this.paragraphButton = doc.createElement("button");
    this.paragraphButton.className = "cnl-paragraph";
    this.paragraphButton.textContent = "new paragraph";
    this.paragraphButton.addEventListener("click", () => void this.paragraphBreak());
    header.append(this.micButton, this.paragraphButton);

    this.logPane = doc.createElement("div");
    this.logPane.className = "cnl-log";

    this.picker = doc.createElement("div");
    this.picker.className = "cnl-picker";
    this.picker.hidden = true;

    this.reportPane = doc.createElement("div");
    this.reportPane.className = "cnl-report";

    const inputWrap = doc.createElement("div");
    inputWrap.className = "cnl-input-wrap";
    this.mirror = doc.createElement("div");
    this.mirror.className = "cnl-mirror";
    this.input = doc.createElement("input");
    this.input.className = "cnl-input";
    this.input.type = "text";
    this.input.placeholder = "enter a controlled-English sentence";
    this.input.addEventListener("input", () => this.schedulePrecheck());
    this.input.addEventListener("keydown", (e: KeyboardEvent) => {
      if (e.key === "Enter") void this.send();
    });
    this.statusBar = doc.createElement("div");
    this.statusBar.className = "cnl-status";
    inputWrap.append(this.mirror, this.input, this.statusBar);

    this.root.append(header, this.logPane, this.picker, this.reportPane, inputWrap);
    parent.append(this.root);
  }

  // -- live precheck -------------------------------------------------------

  schedulePrecheck(): void {
    this.overrideArmed = false;
    if (this.debounceTimer) clearTimeout(this.debounceTimer);
    this.debounceTimer = setTimeout(() => void this.precheckNow(), this.debounceMs);
  }

  async precheckNow(): Promise<Diagnostic[]> {
    const text = this.input.value;
    if (!text.trim()) {
      this.diagnostics = [];
      this.renderMirror(text);
      return [];
    }
    const result = await this.api.precheck(text);
    // stale response guard: the input may have changed meanwhile
    if (this.input.value !== text) return this.diagnostics;
    this.diagnostics = result.diagnostics;
    this.renderMirror(text);
    return this.diagnostics;
  }

  private renderMirror(text: string): void {
    const doc = this.root.ownerDocument;
    this.mirror.textContent = "";
    const unknown = this.diagnostics.filter((d) => d.severity === "unknown_word");
    if (!unknown.length) {
      this.statusBar.textContent = this.diagnostics.length
        ? this.diagnostics[0].message
        : "";
      this.statusBar.className = "cnl-status" + (this.diagnostics.length ? " warn" : "");
      return;
    }
    const spans = unknown
      .map((d) => ({ span: byteSpanToChars(text, d.span), message: d.message }))
      .sort((a, b) => a.span[0] - b.span[0]);
    let cursor = 0;
    for (const { span, message } of spans) {
      if (span[0] > cursor) {
        this.mirror.append(doc.createTextNode(text.slice(cursor, span[0])));
      }
      const mark = doc.createElement("span");
      mark.className = "oov";
      mark.title = message;
      mark.textContent = text.slice(span[0], span[1]);
      this.mirror.append(mark);
      cursor = span[1];
    }
    if (cursor < text.length) {
      this.mirror.append(doc.createTextNode(text.slice(cursor)));
    }
    this.statusBar.textContent = spans.map((s) => s.message).join("; ");
    this.statusBar.className = "cnl-status warn";
  }

  /** unknown-word underlines currently shown */
  underlinedWords(): string[] {
    return Array.from(this.mirror.querySelectorAll(".oov")).map(
      (el) => el.textContent ?? "",
    );
  }

  // -- submission ----------------------------------------------------------

  async send(): Promise<SubmitResult | null> {
    const text = this.input.value;
    if (!text.trim()) {
      return this.paragraphBreak();
    }
    await this.precheckNow();
    const unknown = this.diagnostics.filter((d) => d.severity === "unknown_word");
    if (unknown.length && !this.overrideArmed) {
      // never submit text with unresolved vocabulary without an explicit
      // override: the next Enter sends anyway
      this.overrideArmed = true;
      this.statusBar.textContent =
        `${unknown.length} unknown word(s); press Enter again to submit anyway`;
      this.statusBar.className = "cnl-status warn";
      return null;
    }
    this.overrideArmed = false;
    const result = await this.api.submit(text);
    this.input.value = "";
    this.diagnostics = [];
    this.renderMirror("");
    this.renderResult(text, result);
    return result;
  }

  async paragraphBreak(): Promise<SubmitResult> {
    const result = await this.api.submit("");
    this.appendLine("info", "", "— new paragraph —");
    return result;
  }

  async choose(sentenceRef: string, index: number): Promise<SubmitResult> {
    const result = await this.api.choose(sentenceRef, index);
    this.picker.hidden = true;
    this.picker.textContent = "";
    const pendingLine = this.pendingRefs.get(sentenceRef);
    if (pendingLine) {
      pendingLine.classList.remove("pending-selection");
      pendingLine.classList.add(result.status === "ok" ? "ok" : "error");
      this.pendingRefs.delete(sentenceRef);
    }
    this.renderResult(`(reading ${index})`, result);
    return result;
  }

  abandon(sentenceRef: string): void {
    const pendingLine = this.pendingRefs.get(sentenceRef);
    if (pendingLine) {
      pendingLine.classList.remove("pending-selection");
      pendingLine.classList.add("error");
      const body = pendingLine.querySelector(".cnl-text");
      if (body) body.append(" (abandoned)");
      this.pendingRefs.delete(sentenceRef);
    }
    this.picker.hidden = true;
    this.picker.textContent = "";
  }

  // -- rendering -------------------------------------------------------------

  private renderResult(text: string, result: SubmitResult): void {
    if (result.kind === "batch" && result.results) {
      for (const r of result.results) this.renderResult(text, r);
      return;
    }
    if (result.kind === "diagnostics") {
      const messages = (result.diagnostics ?? []).map((d) => d.message).join("; ");
      this.appendLine("error", result.timestamp, `${text} — ${messages}`);
      return;
    }
    if (result.kind === "interpretations") {
      const line = this.appendLine(
        "pending-selection",
        result.timestamp,
        `${text} — ambiguous, select a reading`,
      );
      if (result.sentence_ref) this.pendingRefs.set(result.sentence_ref, line);
      this.showPicker(result.sentence_ref ?? "", result.candidates ?? []);
      return;
    }
    if (result.kind === "paragraph") {
      this.appendLine("info", result.timestamp, "— new paragraph —");
      return;
    }
    const status: Status = result.status === "ok" ? "ok" : "error";
    this.appendLine(status, result.timestamp, text);
    for (const answer of result.answers ?? []) {
      this.appendLine("answer", result.timestamp, answer);
      this.appendReport(result.timestamp ?? "", answer);
    }
    if (result.diagnostic) {
      this.appendLine("error", result.timestamp, result.diagnostic);
    }
  }

  private showPicker(sentenceRef: string, candidates: Candidate[]): void {
    const doc = this.root.ownerDocument;
    this.picker.textContent = "";
    this.picker.hidden = false;
    const title = doc.createElement("div");
    title.className = "cnl-picker-title";
    title.textContent = "Select the intended reading:";
    this.picker.append(title);
    for (const candidate of candidates) {
      const button = doc.createElement("button");
      button.className = "cnl-candidate";
      button.dataset.index = String(candidate.index);
      button.textContent = candidate.paraphrase;
      button.addEventListener("click", () =>
        void this.choose(sentenceRef, candidate.index),
      );
      this.picker.append(button);
    }
    const dismiss = doc.createElement("button");
    dismiss.className = "cnl-abandon";
    dismiss.textContent = "abandon";
    dismiss.addEventListener("click", () => this.abandon(sentenceRef));
    this.picker.append(dismiss);
  }

  private appendLine(status: Status, timestamp: string | undefined, text: string): HTMLElement {
    const doc = this.root.ownerDocument;
    const entry = doc.createElement("div");
    entry.className = `cnl-line ${status}`;
    const stamp = doc.createElement("div");
    stamp.className = "cnl-stamp";
    stamp.textContent = timestamp ?? "";
    const body = doc.createElement("div");
    body.className = "cnl-text";
    body.textContent = `${this.api.teller}: ${text}`;
    entry.append(stamp, body);
    this.logPane.append(entry);
    return entry;
  }

  private appendReport(timestamp: string, text: string): void {
    const doc = this.root.ownerDocument;
    const entry = doc.createElement("div");
    entry.className = "cnl-report-line";
    entry.textContent = `[${timestamp}] ${text}`;
    this.reportPane.append(entry);
  }

  logLines(): string[] {
    return Array.from(this.logPane.querySelectorAll(".cnl-text")).map(
      (el) => el.textContent ?? "",
    );
  }

  reportLines(): string[] {
    return Array.from(this.reportPane.querySelectorAll(".cnl-report-line")).map(
      (el) => el.textContent ?? "",
    );
  }

  pickerParaphrases(): string[] {
    return Array.from(this.picker.querySelectorAll(".cnl-candidate")).map(
      (el) => el.textContent ?? "",
    );
  }
}

export function createConsole(
  parent: HTMLElement,
  api: ConsoleApi,
  options?: ConsoleOptions,
): CnlConsole {
  return new CnlConsole(parent, api, options);
}
