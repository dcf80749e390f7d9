import { httpTransport } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}
// Same origin by default; ?api=http://127.0.0.1:8620 points elsewhere.
const base = new URLSearchParams(window.location.search).get("api") ?? "";
const app = new App(root, httpTransport(base));
void app.init();

declare global {
  interface Window {
    alignlex: App;
  }
}
window.alignlex = app;
