/** Fixture-backed transport: serves captured API responses, optionally
 * perturbed, and fails loudly on any request outside the fixture set so
 * the client provably talks only to the API. */

import fixtures from "../fixtures/responses.json";
import type { FetchJson, JsonReply } from "../src/api.js";
import { App } from "../src/app.js";

type FixtureMap = Record<string, { status: number; body: unknown }>;

export function fixtureTransport(overrides: FixtureMap = {}): FetchJson {
  const table: FixtureMap = { ...(fixtures as FixtureMap), ...overrides };
  return async (url: string): Promise<JsonReply> => {
    const hit = table[`GET ${url}`];
    if (!hit) {
      throw new Error(`no fixture for GET ${url}`);
    }
    // Deep copy so a test cannot mutate the fixture through the response.
    return { status: hit.status, body: JSON.parse(JSON.stringify(hit.body)) };
  };
}

export function fixture<T>(url: string): T {
  const hit = (fixtures as FixtureMap)[`GET ${url}`];
  if (!hit) {
    throw new Error(`no fixture for GET ${url}`);
  }
  return JSON.parse(JSON.stringify(hit.body)) as T;
}

export async function bootApp(transport: FetchJson = fixtureTransport()): Promise<App> {
  document.body.innerHTML = '<div id="app"></div>';
  const app = new App(document.getElementById("app")!, transport);
  await app.init();
  return app;
}
