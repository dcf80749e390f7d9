/** Mapping between character offsets and rendered DOM segments.
 *
 * A document pane renders its raw text once per highlight change as a
 * list of segment spans carrying data-start/data-end attributes, so every
 * visible position maps back to an offset in the raw text. This is the
 * single source of truth for spans; the UI never re-tokenizes.
 */

export interface Highlight {
  start: number;
  end: number;
  cls: string;
}

export function renderSegments(container: HTMLElement, text: string, highlights: Highlight[]): void {
  const boundaries = new Set<number>([0, text.length]);
  for (const h of highlights) {
    boundaries.add(Math.max(0, Math.min(h.start, text.length)));
    boundaries.add(Math.max(0, Math.min(h.end, text.length)));
  }
  const cuts = [...boundaries].sort((a, b) => a - b);
  container.textContent = "";
  for (let i = 0; i + 1 < cuts.length; i++) {
    const start = cuts[i]!;
    const end = cuts[i + 1]!;
    if (start === end) continue;
    const segment = document.createElement("span");
    segment.dataset.start = String(start);
    segment.dataset.end = String(end);
    const classes = highlights
      .filter((h) => h.start <= start && end <= h.end)
      .map((h) => h.cls);
    if (classes.length) {
      segment.className = ["seg", ...classes].join(" ");
    } else {
      segment.className = "seg";
    }
    segment.textContent = text.slice(start, end);
    container.appendChild(segment);
  }
}

/** Character offsets of the current selection inside a segment container. */
export function selectionOffsets(container: HTMLElement): [number, number] | null {
  const selection = window.getSelection();
  if (!selection || selection.rangeCount === 0 || selection.isCollapsed) {
    return null;
  }
  const range = selection.getRangeAt(0);
  const from = offsetAt(container, range.startContainer, range.startOffset);
  const to = offsetAt(container, range.endContainer, range.endOffset);
  if (from === null || to === null) {
    return null;
  }
  return from <= to ? [from, to] : [to, from];
}

function offsetAt(container: HTMLElement, node: Node, offset: number): number | null {
  let element: HTMLElement | null = null;
  if (node.nodeType === Node.TEXT_NODE) {
    element = node.parentElement;
  } else if (node instanceof HTMLElement) {
    element = node;
  }
  while (element && element !== container && !element.dataset.start) {
    element = element.parentElement;
  }
  if (!element || element === container || !element.dataset.start) {
    return null;
  }
  return Number(element.dataset.start) + offset;
}
