/** One document pane: raw text rendered as offset-addressable segments. */

import { Highlight, renderSegments, selectionOffsets } from "./offsets.js";
import type { Side } from "./types.js";

export class Pane {
  private text = "";
  private highlights: Highlight[] = [];

  constructor(
    readonly element: HTMLElement,
    readonly side: Side,
    onSelect: (side: Side, start: number, end: number) => void,
  ) {
    element.classList.add("pane");
    element.addEventListener("mouseup", () => {
      const span = selectionOffsets(element);
      if (span) {
        onSelect(side, span[0], span[1]);
      }
    });
  }

  setText(text: string): void {
    this.text = text;
    this.highlights = [];
    this.render();
  }

  setHighlights(highlights: Highlight[]): void {
    this.highlights = highlights;
    this.render();
  }

  highlightSpans(): Array<[number, number, string]> {
    return this.highlights.map((h) => [h.start, h.end, h.cls]);
  }

  private render(): void {
    renderSegments(this.element, this.text, this.highlights);
  }
}
