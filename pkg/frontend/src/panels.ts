/** Side panels: countertext ladder, counterword list, reports.
 *
 * Every renderer writes server-provided values verbatim into the DOM;
 * nothing is recomputed client-side.
 */

import type {
  ConcordanceResponse,
  CountertextResponse,
  CounterwordsResponse,
  ForkReport,
  PhraseEntry,
  Side,
  SideStats,
} from "./types.js";

export function renderLadder(
  container: HTMLElement,
  response: CountertextResponse,
  active: number,
  onStep: (index: number) => void,
): void {
  container.textContent = "";
  const list = document.createElement("ol");
  list.className = "ladder";
  response.rungs.forEach((rung, index) => {
    const item = document.createElement("li");
    item.className = "rung" + (index === active ? " active" : "");
    item.dataset.level = rung.level;
    item.dataset.linked = String(rung.linked);

    const level = document.createElement("span");
    level.className = "level";
    level.textContent = rung.level;
    item.appendChild(level);

    const text = document.createElement("span");
    text.className = "rung-text";
    text.textContent = shorten(rung.text);
    item.appendChild(text);

    const mate = document.createElement("span");
    if (rung.linked) {
      mate.className = "counterpart-text";
      mate.textContent = rung.counterparts.map((c) => shorten(c.text)).join(" | ");
    } else {
      mate.className = "no-counterpart";
      mate.textContent = "no counterpart";
    }
    item.appendChild(mate);

    item.addEventListener("click", () => onStep(index));
    list.appendChild(item);
  });
  container.appendChild(list);
}

function shorten(text: string, limit = 80): string {
  return text.length <= limit ? text : text.slice(0, limit - 1) + "…";
}

export function renderCounterwords(
  container: HTMLElement,
  response: CounterwordsResponse | null,
  forks: ForkReport[],
  onPick: (counterpart: string) => void,
): void {
  container.textContent = "";
  if (response === null) {
    const missing = document.createElement("p");
    missing.className = "not-in-corpus";
    missing.textContent = "not in corpus";
    container.appendChild(missing);
    return;
  }
  const evaluation = document.createElement("p");
  evaluation.className = "evaluation";
  const max = response.evaluation.max_score;
  evaluation.textContent =
    `frequency ${response.evaluation.frequency}, candidates ${response.evaluation.candidates}` +
    (max === null ? "" : `, max score ${max}`);
  container.appendChild(evaluation);

  const badges = document.createElement("p");
  badges.className = "badges";
  for (const flag of response.evaluation.flags) {
    const badge = document.createElement("span");
    badge.className = "badge flag";
    badge.textContent = flag;
    badges.appendChild(badge);
  }
  if (forks.some((f) => f.side === response.side && f.pivot === response.word)) {
    const badge = document.createElement("span");
    badge.className = "badge fork";
    badge.textContent = "FORK";
    badges.appendChild(badge);
  }
  container.appendChild(badges);

  const list = document.createElement("ul");
  list.className = "candidates";
  for (const entry of response.entries) {
    const counterpart = response.side === "source" ? entry.target : entry.source;
    const item = document.createElement("li");
    item.className = "candidate";
    item.dataset.counterpart = counterpart;

    const label = document.createElement("span");
    label.className = "counterpart";
    label.textContent = counterpart;
    item.appendChild(label);

    const bar = document.createElement("span");
    bar.className = "bar";
    bar.style.width = `${entry.score * 100}%`;
    item.appendChild(bar);

    const score = document.createElement("span");
    score.className = "score";
    score.textContent = String(entry.score);
    item.appendChild(score);

    item.addEventListener("click", () => onPick(counterpart));
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderConcordance(container: HTMLElement, response: ConcordanceResponse): void {
  container.textContent = "";
  const heading = document.createElement("p");
  heading.className = "concordance-total";
  heading.textContent = `${response.total} occurrence(s) of "${response.term}"`;
  container.appendChild(heading);
  const list = document.createElement("ul");
  list.className = "hits";
  for (const hit of response.hits) {
    const item = document.createElement("li");
    item.className = "hit";
    const sentence = document.createElement("span");
    sentence.className = "hit-sentence";
    sentence.textContent = hit.sentence_text;
    item.appendChild(sentence);
    const mate = document.createElement("span");
    mate.className = hit.counterparts.length ? "hit-counterpart" : "no-counterpart";
    mate.textContent = hit.counterparts.length
      ? hit.counterparts.map((c) => c.text).join(" | ")
      : "no counterpart";
    item.appendChild(mate);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderForks(container: HTMLElement, forks: ForkReport[]): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "forks";
  for (const fork of forks) {
    const item = document.createElement("li");
    item.className = "fork-report";
    item.dataset.pivot = fork.pivot;
    const head = document.createElement("span");
    head.className = "fork-head";
    head.textContent = `${fork.pivot} (${fork.side}) severity ${fork.severity}`;
    item.appendChild(head);
    const branches = document.createElement("span");
    branches.className = "fork-branches";
    branches.textContent = fork.branches
      .map((b) => `${b.counterpart} ${b.score} (${b.cooc})`)
      .join(", ");
    item.appendChild(branches);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderPhrases(container: HTMLElement, entries: PhraseEntry[]): void {
  container.textContent = "";
  const list = document.createElement("ul");
  list.className = "phrases";
  for (const entry of entries) {
    const item = document.createElement("li");
    item.className = "phrase-entry";
    const gram = document.createElement("span");
    gram.className = "ngram";
    gram.textContent = `${entry.ngram.join(" ")} (${entry.freq})`;
    item.appendChild(gram);
    if (entry.paired) {
      const paired = document.createElement("span");
      paired.className = "paired";
      paired.textContent = `${entry.paired.ngram.join(" ")} ${entry.paired.score}`;
      item.appendChild(paired);
    }
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderStats(container: HTMLElement, stats: Record<Side, SideStats>): void {
  container.textContent = "";
  for (const side of ["source", "target"] as Side[]) {
    const s = stats[side];
    const block = document.createElement("p");
    block.className = `stats-${side}`;
    block.textContent =
      `${side}: ${s.token_count} tokens, ${s.type_count} types, ` +
      `hapax ${s.hapax_type_ratio}, below5 ${s.below5_type_ratio}`;
    container.appendChild(block);
  }
}
