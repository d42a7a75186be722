/** Browser entry point.
 *
 * The API base defaults to the page origin; `?api=http://host:port`
 * overrides it. The session (and its grid) live in the URL hash, so
 * the same link works on every device and reloads resume in place.
 */
import { SessionApi } from "./api.js";
import { App } from "./app.js";

export function boot(win: Window): App | null {
  const root = win.document.getElementById("app");
  if (!root) return null;
  const base = new URLSearchParams(win.location.search).get("api") ?? "";
  const app = new App(root, new SessionApi(base), (hash) => {
    win.location.hash = hash;
  });
  void app.boot(win.location.hash);
  win.addEventListener("hashchange", () => void app.boot(win.location.hash));
  return app;
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.getElementById("app")) {
  boot(window);
}
