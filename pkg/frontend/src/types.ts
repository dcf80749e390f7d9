/** Response shapes of the read-only archive API (documented in the repo README). */

export type Side = "source" | "target";

export type Span = [number, number];

export interface DocSummary {
  doc_id: string;
  language: string;
  chars: number;
}

export interface DocFull {
  doc_id: string;
  language: string;
  text: string;
}

export interface BitextSummary {
  id: string;
  source: DocSummary;
  target: DocSummary;
  links: Record<string, number>;
  degraded: string[];
}

export interface ParagraphLink {
  src: Span[];
  tgt: Span[];
}

export interface BitextDetail {
  id: string;
  source: DocFull;
  target: DocFull;
  paragraph_links: ParagraphLink[];
}

export interface Counterpart {
  span: Span;
  text: string;
}

export interface Rung {
  level: string;
  span: Span;
  text: string;
  linked: boolean;
  counterparts: Counterpart[];
  cost: number | null;
}

export interface CountertextResponse {
  bitext: string;
  side: Side;
  span: Span;
  rungs: Rung[];
}

export interface CounterwordEntry {
  source: string;
  target: string;
  score: number;
  pos: number;
  freq: number;
  len: number;
  cooc: number;
}

export interface Evaluation {
  found: boolean;
  frequency: number;
  candidates: number;
  max_score: number | null;
  flags: string[];
}

export interface CounterwordsResponse {
  word: string;
  side: Side;
  threshold: number | null;
  entries: CounterwordEntry[];
  evaluation: Evaluation;
}

export interface ConcordanceCounterpart {
  doc_id: string;
  span: Span;
  text: string;
}

export interface ConcordanceHit {
  doc_id: string;
  phrase_span: Span;
  highlight: Span;
  sentence_span: Span;
  sentence_text: string;
  counterparts: ConcordanceCounterpart[];
}

export interface ConcordanceResponse {
  term: string;
  side: Side;
  total: number;
  limit: number;
  hits: ConcordanceHit[];
}

export interface ForkBranch {
  counterpart: string;
  score: number;
  cooc: number;
}

export interface ForkReport {
  side: Side;
  pivot: string;
  severity: number;
  branches: ForkBranch[];
}

export interface PhraseEntry {
  ngram: string[];
  freq: number;
  sample: { doc_id: string; cid: number };
  paired: { ngram: string[]; score: number } | null;
}

export interface SideStats {
  token_count: number;
  type_count: number;
  hapax_type_ratio: number;
  below5_type_ratio: number;
  hapax_token_ratio: number;
  below5_token_ratio: number;
}

export interface ArchiveSummary {
  format_version: string;
  documents: number;
  bitexts: number;
  lexicon: { entries: number; presented: number; threshold: number } | null;
  phrases: Record<Side, number> | null;
  forks: number | null;
  config_sha256: string;
}

export function otherSide(side: Side): Side {
  return side === "source" ? "target" : "source";
}
