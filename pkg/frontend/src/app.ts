/** Application state and wiring.
 *
 * The translator's window: two synchronized panes, a countertext ladder
 * for the current selection, a counterword panel and report tabs. All
 * content comes from the API of the current session; the client renders
 * it verbatim and never derives scores or links itself.
 */

import { ApiClient, ApiError, FetchJson } from "./api.js";
import { Pane } from "./panes.js";
import {
  renderConcordance,
  renderCounterwords,
  renderForks,
  renderLadder,
  renderPhrases,
  renderStats,
} from "./panels.js";
import type {
  BitextDetail,
  CountertextResponse,
  CounterwordsResponse,
  ForkReport,
  Side,
  Span,
} from "./types.js";
import { otherSide } from "./types.js";

export interface ViewState {
  bitextId: string | null;
  selectedSide: Side;
  selectedSpan: Span | null;
  ladder: CountertextResponse | null;
  activeRung: number;
  counterwords: CounterwordsResponse | null;
  reportTab: "forks" | "phrases" | "stats";
}

const TABS = ["forks", "phrases", "stats"] as const;

export class App {
  readonly api: ApiClient;
  readonly state: ViewState = {
    bitextId: null,
    selectedSide: "source",
    selectedSpan: null,
    ladder: null,
    activeRung: 0,
    counterwords: null,
    reportTab: "forks",
  };

  private detail: BitextDetail | null = null;
  private forks: ForkReport[] = [];
  private panes: Record<Side, Pane>;
  private ladderBox: HTMLElement;
  private wordBox: HTMLElement;
  private concordanceBox: HTMLElement;
  private reportBox: HTMLElement;
  private selectToken = 0;
  private lookupToken = 0;

  constructor(
    readonly root: HTMLElement,
    transport: FetchJson,
  ) {
    this.api = new ApiClient(transport);
    root.innerHTML = `
      <div class="panes">
        <div id="pane-source"></div>
        <div id="pane-target"></div>
      </div>
      <div class="side-panels">
        <div id="ladder"></div>
        <div id="word-lookup">
          <input id="word-input" type="text" />
          <button id="word-side">source</button>
          <button id="word-go">counterwords</button>
          <div id="counterwords"></div>
          <div id="concordance"></div>
        </div>
        <div id="reports">
          <nav id="report-tabs"></nav>
          <div id="report-body"></div>
        </div>
      </div>`;
    this.panes = {
      source: new Pane(this.must("pane-source"), "source", (s, a, b) => void this.selectSpan(s, a, b)),
      target: new Pane(this.must("pane-target"), "target", (s, a, b) => void this.selectSpan(s, a, b)),
    };
    this.ladderBox = this.must("ladder");
    this.wordBox = this.must("counterwords");
    this.concordanceBox = this.must("concordance");
    this.reportBox = this.must("report-body");
    this.wireLookupControls();
    this.wireReportTabs();
  }

  private must(id: string): HTMLElement {
    const found = this.root.querySelector(`#${id}`);
    if (!(found instanceof HTMLElement)) {
      throw new Error(`missing element #${id}`);
    }
    return found;
  }

  async init(): Promise<void> {
    const bitexts = await this.api.bitexts();
    this.forks = await this.api.forks();
    if (bitexts.length > 0) {
      await this.openBitext(bitexts[0]!.id);
    }
    await this.showReportTab(this.state.reportTab);
  }

  async openBitext(id: string): Promise<void> {
    this.detail = await this.api.bitext(id);
    this.state.bitextId = id;
    this.state.ladder = null;
    this.state.selectedSpan = null;
    this.panes.source.setText(this.detail.source.text);
    this.panes.target.setText(this.detail.target.text);
    this.ladderBox.textContent = "";
  }

  /** Span selection in either pane: fetch the ladder, highlight rung 0. */
  async selectSpan(side: Side, start: number, end: number): Promise<void> {
    if (!this.state.bitextId) {
      return;
    }
    const token = ++this.selectToken;
    const ladder = await this.api.countertext(this.state.bitextId, side, start, end);
    if (token !== this.selectToken) {
      return; // a later selection won
    }
    this.state.selectedSide = side;
    this.state.selectedSpan = [start, end];
    this.state.ladder = ladder;
    this.setActiveRung(0);
  }

  /** The level stepper: highlight one rung and its counterparts. */
  setActiveRung(index: number): void {
    const ladder = this.state.ladder;
    if (!ladder || index < 0 || index >= ladder.rungs.length) {
      return;
    }
    this.state.activeRung = index;
    const rung = ladder.rungs[index]!;
    const own = this.panes[ladder.side];
    const other = this.panes[otherSide(ladder.side)];
    own.setHighlights([{ start: rung.span[0], end: rung.span[1], cls: "selected" }]);
    other.setHighlights(
      rung.counterparts.map((c) => ({ start: c.span[0], end: c.span[1], cls: "counterpart" })),
    );
    renderLadder(this.ladderBox, ladder, index, (i) => this.setActiveRung(i));
  }

  stepUp(): void {
    this.setActiveRung(this.state.activeRung + 1);
  }

  stepDown(): void {
    this.setActiveRung(this.state.activeRung - 1);
  }

  /** Counterword lookup; a 404 renders the explicit not-in-corpus state. */
  async lookupWord(word: string, side: Side): Promise<void> {
    const token = ++this.lookupToken;
    let response: CounterwordsResponse | null;
    try {
      response = await this.api.counterwords(word, side);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        response = null;
      } else {
        throw error;
      }
    }
    if (token !== this.lookupToken) {
      return;
    }
    this.state.counterwords = response;
    this.concordanceBox.textContent = "";
    renderCounterwords(this.wordBox, response, this.forks, (counterpart) =>
      void this.showConcordance(counterpart, otherSide(side)),
    );
  }

  async showConcordance(term: string, side: Side, limit = 20): Promise<void> {
    const response = await this.api.concordance(term, side, limit);
    renderConcordance(this.concordanceBox, response);
  }

  async showReportTab(tab: (typeof TABS)[number]): Promise<void> {
    this.state.reportTab = tab;
    this.renderTabNav();
    if (tab === "forks") {
      renderForks(this.reportBox, this.forks);
    } else if (tab === "phrases") {
      renderPhrases(this.reportBox, await this.api.phrases(this.state.selectedSide));
    } else {
      renderStats(this.reportBox, await this.api.stats());
    }
  }

  private wireLookupControls(): void {
    const input = this.must("word-input") as HTMLInputElement;
    const sideButton = this.must("word-side");
    const go = this.must("word-go");
    sideButton.addEventListener("click", () => {
      sideButton.textContent = otherSide(sideButton.textContent as Side);
    });
    go.addEventListener("click", () => {
      const word = input.value.trim();
      if (word) {
        void this.lookupWord(word, sideButton.textContent as Side);
      }
    });
  }

  private wireReportTabs(): void {
    const nav = this.must("report-tabs");
    nav.textContent = "";
    for (const tab of TABS) {
      const button = document.createElement("button");
      button.dataset.tab = tab;
      button.textContent = tab;
      button.addEventListener("click", () => void this.showReportTab(tab));
      nav.appendChild(button);
    }
  }

  private renderTabNav(): void {
    for (const button of this.must("report-tabs").querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.tab === this.state.reportTab);
    }
  }

  pane(side: Side): Pane {
    return this.panes[side];
  }
}
