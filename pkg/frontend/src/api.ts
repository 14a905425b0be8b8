/** Typed client for the session service; the console talks only to this API. */

export interface Diagnostic {
  severity: string;
  span: [number, number];
  message: string;
  suggestions: string[];
}

export interface Candidate {
  index: number;
  paraphrase: string;
  digest: string;
}

export interface SubmitResult {
  kind: "result" | "interpretations" | "diagnostics" | "paragraph" | "batch";
  timestamp?: string;
  status?: string;
  act?: string;
  form?: string;
  envelope?: string;
  answers?: string[];
  boolean?: boolean;
  sentence_ref?: string;
  candidates?: Candidate[];
  diagnostics?: Diagnostic[];
  diagnostic?: string;
  results?: SubmitResult[];
}

export interface LogEntry {
  timestamp: string;
  teller: string;
  command: string;
  status: string;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface SessionOptions {
  teller: string;
  utcOffset?: string;
  fixedTime?: string;
}

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ConsoleApi {
  sessionId: string | null = null;
  teller = "";

  constructor(
    readonly base: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      const detail = await response.text();
      throw new ServiceError(`${response.status}: ${detail}`, response.status);
    }
    return (await response.json()) as T;
  }

  async open(options: SessionOptions): Promise<string> {
    const body: Record<string, unknown> = {
      teller: options.teller,
      utc_offset: options.utcOffset ?? "0",
    };
    if (options.fixedTime) body.fixed_time = options.fixedTime;
    const created = await this.post<{ id: string }>("/sessions", body);
    this.sessionId = created.id;
    this.teller = options.teller;
    return created.id;
  }

  private sid(): string {
    if (!this.sessionId) throw new Error("session not open");
    return this.sessionId;
  }

  submit(text: string, mode = "auto"): Promise<SubmitResult> {
    return this.post(`/sessions/${this.sid()}/submit`, { text, mode });
  }

  choose(sentenceRef: string, index: number): Promise<SubmitResult> {
    return this.post(`/sessions/${this.sid()}/choose`, {
      sentence_ref: sentenceRef,
      index,
    });
  }

  precheck(text: string): Promise<{ diagnostics: Diagnostic[] }> {
    return this.post(`/sessions/${this.sid()}/precheck`, { text });
  }

  tracks(lines: string[]): Promise<{ accepted: number }> {
    return this.post(`/sessions/${this.sid()}/tracks`, { lines });
  }

  generate(term: string): Promise<{ sentence: string | null; status: string }> {
    return this.post(`/sessions/${this.sid()}/generate`, { term });
  }

  async log(): Promise<LogEntry[]> {
    const response = await this.fetchFn(`${this.base}/sessions/${this.sid()}/log`);
    if (!response.ok) throw new ServiceError(await response.text(), response.status);
    const body = (await response.json()) as { entries: LogEntry[] };
    return body.entries;
  }
}
