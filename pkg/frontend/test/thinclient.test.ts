/** Thin-client proof: perturbed API fixtures must surface verbatim.
 *
 * If the client recomputed scores, spans or flags from anything but the
 * response, these perturbations would be corrected or dropped.
 */

import { describe, expect, it } from "vitest";

import type { CountertextResponse, CounterwordsResponse, ForkReport } from "../src/types.js";
import { bootApp, fixture, fixtureTransport } from "./helpers.js";

describe("perturbed responses are displayed verbatim", () => {
  it("counterword scores, max score and flags", async () => {
    const perturbed = fixture<CounterwordsResponse>(
      "/lexicon/counterwords?word=word&side=source",
    );
    perturbed.entries[0]!.score = 0.123456789;
    perturbed.evaluation.max_score = 0.987654321;
    perturbed.evaluation.flags = ["PERTURBED_FLAG"];
    const app = await bootApp(
      fixtureTransport({
        "GET /lexicon/counterwords?word=word&side=source": { status: 200, body: perturbed },
      }),
    );
    await app.lookupWord("word", "source");
    const row = app.root.querySelector(".candidate") as HTMLElement;
    expect(row.querySelector(".score")!.textContent).toBe("0.123456789");
    expect((row.querySelector(".bar") as HTMLElement).style.width).toBe("12.3456789%");
    expect(app.root.querySelector(".evaluation")!.textContent).toContain("0.987654321");
    const flags = [...app.root.querySelectorAll(".badge.flag")].map((b) => b.textContent);
    expect(flags).toEqual(["PERTURBED_FLAG"]);
  });

  it("countertext counterpart spans and text", async () => {
    const url = "/bitexts/guide__manual/countertext?side=source&start=0&end=12";
    const perturbed = fixture<CountertextResponse>(url);
    perturbed.rungs[0]!.counterparts = [{ span: [2, 7], text: "PERTURBED COUNTERPART" }];
    const app = await bootApp(
      fixtureTransport({ [`GET ${url}`]: { status: 200, body: perturbed } }),
    );
    await app.selectSpan("source", 0, 12);
    expect(app.pane("target").highlightSpans()).toEqual([[2, 7, "counterpart"]]);
    expect(app.root.querySelector(".counterpart-text")!.textContent).toBe(
      "PERTURBED COUNTERPART",
    );
  });

  it("fork severities in the report tab", async () => {
    const forks = fixture<{ forks: ForkReport[] }>("/reports/forks");
    forks.forks[0]!.severity = 0.424242;
    const app = await bootApp(
      fixtureTransport({ "GET /reports/forks": { status: 200, body: forks } }),
    );
    await app.showReportTab("forks");
    expect(app.root.querySelector(".fork-head")!.textContent).toContain("0.424242");
  });

  it("the client never requests anything outside the API fixture set", async () => {
    const seen: string[] = [];
    const transport = fixtureTransport();
    const spying = async (url: string) => {
      seen.push(url);
      return transport(url);
    };
    const app = await bootApp(spying);
    await app.selectSpan("source", 0, 12);
    await app.lookupWord("vessel", "source");
    expect(seen.every((url) => url.startsWith("/"))).toBe(true);
    expect(seen).toContain("/bitexts");
    expect(seen).toContain("/reports/forks");
  });
});
