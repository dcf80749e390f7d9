/** Typed client over the archive API. All data in the UI flows through here. */

import type {
  ArchiveSummary,
  BitextDetail,
  BitextSummary,
  ConcordanceResponse,
  CountertextResponse,
  CounterwordsResponse,
  ForkReport,
  PhraseEntry,
  Side,
  SideStats,
} from "./types.js";

export interface JsonReply {
  status: number;
  body: unknown;
}

/** Transport hook: the app never calls fetch directly, tests inject fixtures. */
export type FetchJson = (url: string) => Promise<JsonReply>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`API error ${status}`);
  }
}

export function httpTransport(base = ""): FetchJson {
  return async (url: string) => {
    const response = await fetch(base + url);
    return { status: response.status, body: await response.json() };
  };
}

export class ApiClient {
  constructor(private readonly transport: FetchJson) {}

  private async get<T>(url: string): Promise<T> {
    const reply = await this.transport(url);
    if (reply.status !== 200) {
      throw new ApiError(reply.status, reply.body);
    }
    return reply.body as T;
  }

  summary(): Promise<ArchiveSummary> {
    return this.get("/archive/summary");
  }

  async bitexts(): Promise<BitextSummary[]> {
    const body = await this.get<{ bitexts: BitextSummary[] }>("/bitexts");
    return body.bitexts;
  }

  bitext(id: string): Promise<BitextDetail> {
    return this.get(`/bitexts/${id}`);
  }

  countertext(id: string, side: Side, start: number, end: number): Promise<CountertextResponse> {
    return this.get(`/bitexts/${id}/countertext?side=${side}&start=${start}&end=${end}`);
  }

  counterwords(word: string, side: Side): Promise<CounterwordsResponse> {
    return this.get(`/lexicon/counterwords?word=${encodeURIComponent(word)}&side=${side}`);
  }

  concordance(term: string, side: Side, limit: number): Promise<ConcordanceResponse> {
    return this.get(`/concordance?term=${encodeURIComponent(term)}&side=${side}&limit=${limit}`);
  }

  async forks(): Promise<ForkReport[]> {
    const body = await this.get<{ forks: ForkReport[] }>("/reports/forks");
    return body.forks;
  }

  async phrases(side: Side): Promise<PhraseEntry[]> {
    const body = await this.get<{ side: Side; entries: PhraseEntry[] }>(
      `/reports/phrases?side=${side}`,
    );
    return body.entries;
  }

  stats(): Promise<Record<Side, SideStats>> {
    return this.get("/stats");
  }
}
