// Browser entry point. The API base defaults to the same origin and can
// be overridden with ?api=http://host:port; #<session-id> resumes a game.

import { initApp } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "";
const root = document.getElementById("app");
if (root) {
  const app = initApp(document, root, base);
  const sessionId = window.location.hash.slice(1);
  if (sessionId) {
    void app.resume(sessionId);
  }
  (window as unknown as { parweigh: unknown }).parweigh = app;
}
