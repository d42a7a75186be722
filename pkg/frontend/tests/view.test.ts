import { beforeEach, describe, expect, it } from "vitest";
import { SessionApi } from "../src/api.js";
import { App } from "../src/app.js";
import { encodeSessionHash, parseSessionHash } from "../src/link.js";
import { renderQueryView } from "../src/render.js";
import { validateAnswer } from "../src/state.js";
import { F1_FIRST, F1_GRID, RESULT_TWO_MODELS } from "./fixtures.js";
import { assertNoIdentityPrompt, fakeFetch, freshRoot } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  root = freshRoot();
});

const noHooks = { onAnswer: () => {}, onNone: () => {} };

describe("query view", () => {
  it("shows the worked example's first question on the crit1 x crit2 plane", () => {
    renderQueryView(root, F1_FIRST, F1_GRID, noHooks);
    const view = root.querySelector('[data-role="query-view"]')!;
    expect(view.getAttribute("data-q-i")).toBe("2");
    expect(view.getAttribute("data-q-j")).toBe("0");
    expect(view.getAttribute("data-p-i")).toBe("0");
    expect(view.getAttribute("data-answers-received")).toBe("0");

    const plane = view.querySelector("svg.plane")!;
    expect(plane.getAttribute("data-axes")).toBe("crit1,crit2");
    expect(plane.getAttribute("data-plane")).toBe("1,2");
    const probe = plane.querySelector('[data-role="probe"]')!;
    expect(probe.getAttribute("data-x")).toBe("2");
    expect(probe.getAttribute("data-y")).toBe("0");
    expect(plane.querySelector('[data-role="target-axis"]')!.textContent).toBe("crit2");

    expect(view.querySelector('[data-role="phrasing"]')!.textContent).toContain("indifferent");
    expect(view.querySelector('[data-role="unknown"]')!.textContent).toContain("crit2");
  });

  it("bounds the slider to the target criterion's scale", () => {
    renderQueryView(root, F1_FIRST, F1_GRID, noHooks);
    const slider = root.querySelector('[data-role="answer-slider"]')!;
    expect(slider.getAttribute("min")).toBe("0");
    expect(slider.getAttribute("max")).toBe("4");
  });

  it("always offers a cannot-compensate control for off-scale answers", () => {
    renderQueryView(root, F1_FIRST, F1_GRID, noHooks);
    const none = root.querySelector('[data-role="none-answer"]')!;
    expect(none.textContent).toBe("cannot compensate");
  });

  it("degrades without the grid: numeric entry stays, the slider goes", () => {
    renderQueryView(root, F1_FIRST, null, noHooks);
    expect(root.querySelector('[data-role="answer-value"]')).toBeTruthy();
    expect(root.querySelector('[data-role="answer-slider"]')).toBeNull();
    expect(root.querySelector("svg.plane")).toBeNull();
  });

  it("never asks who is answering", () => {
    renderQueryView(root, F1_FIRST, F1_GRID, noHooks);
    assertNoIdentityPrompt(root);
  });
});

describe("answer validation", () => {
  const crit2 = F1_GRID.criteria[1];

  it("accepts on-scale rationals as typed", () => {
    expect(validateAnswer("7/4", crit2)).toEqual({ ok: true, value: "7/4" });
    expect(validateAnswer(" 2.5 ", crit2)).toEqual({ ok: true, value: "2.5" });
    expect(validateAnswer("0", crit2)).toEqual({ ok: true, value: "0" });
    expect(validateAnswer("4", crit2)).toEqual({ ok: true, value: "4" });
  });

  it("rejects off-scale and malformed values before any network call", () => {
    for (const bad of ["9", "17/4", "-1", "abc", "", "2.5.1"]) {
      const check = validateAnswer(bad, crit2);
      expect(check.ok, bad).toBe(false);
    }
  });

  it("compares bounds exactly, not in floats", () => {
    const narrow = { name: "crit", breakpoints: ["0", "1/3"] };
    expect(validateAnswer("0.3333", narrow).ok).toBe(true);
    expect(validateAnswer("1/3", narrow).ok).toBe(true);
    expect(validateAnswer("0.34", narrow).ok).toBe(false);
  });
});

describe("submitting answers", () => {
  function appWithSession() {
    let received = 0;
    const { impl, calls } = fakeFetch(({ url, method }) => {
      if (method === "GET" && url === "/sessions/sid/query") {
        return { status: 200, json: { ...F1_FIRST, answers_received: received } };
      }
      if (method === "POST" && url === "/sessions/sid/answers") {
        received += 1;
        return { status: 200, json: { status: "awaiting-answers", answers_received: received } };
      }
      throw new Error(`unexpected ${method} ${url}`);
    });
    const app = new App(root, new SessionApi("", impl));
    return { app, calls };
  }

  it("blocks out-of-scale input client-side", async () => {
    const { app, calls } = appWithSession();
    await app.boot(encodeSessionHash("sid", F1_GRID));
    const input = root.querySelector<HTMLInputElement>('[data-role="answer-value"]')!;
    input.value = "9";
    root.querySelector<HTMLElement>('[data-role="submit-answer"]')!.click();
    await app.idle();
    expect(root.querySelector('[data-role="client-error"]')!.textContent).toContain("crit2");
    expect(calls.filter((c) => c.method === "POST")).toHaveLength(0);
  });

  it("passes a valid rational through unchanged and re-renders progress", async () => {
    const { app, calls } = appWithSession();
    await app.boot(encodeSessionHash("sid", F1_GRID));
    const input = root.querySelector<HTMLInputElement>('[data-role="answer-value"]')!;
    input.value = "7/4";
    root.querySelector<HTMLElement>('[data-role="submit-answer"]')!.click();
    await app.idle();
    const posts = calls.filter((c) => c.method === "POST");
    expect(posts).toHaveLength(1);
    expect(posts[0].body).toEqual({ value: "7/4" });
    const view = root.querySelector('[data-role="query-view"]')!;
    expect(view.getAttribute("data-answers-received")).toBe("1");
    expect(root.querySelector('[data-role="progress"]')!.textContent).toContain("1 of 2");
  });

  it("submits null for cannot-compensate", async () => {
    const { app, calls } = appWithSession();
    await app.boot(encodeSessionHash("sid", F1_GRID));
    root.querySelector<HTMLElement>('[data-role="none-answer"]')!.click();
    await app.idle();
    const posts = calls.filter((c) => c.method === "POST");
    expect(posts).toHaveLength(1);
    expect(posts[0].body).toEqual({ value: null });
  });

  it("shows service error payloads verbatim", async () => {
    const closed = {
      code: "session_closed",
      message: "the interview is already finished",
      context: { status: "done" },
    };
    const { impl } = fakeFetch(({ url, method }) => {
      if (method === "GET" && url === "/sessions/sid/query") return { status: 200, json: F1_FIRST };
      if (method === "POST" && url === "/sessions/sid/answers") return { status: 409, json: closed };
      throw new Error(`unexpected ${method} ${url}`);
    });
    const app = new App(root, new SessionApi("", impl));
    await app.boot(encodeSessionHash("sid", F1_GRID));
    const input = root.querySelector<HTMLInputElement>('[data-role="answer-value"]')!;
    input.value = "1";
    root.querySelector<HTMLElement>('[data-role="submit-answer"]')!.click();
    await app.idle();
    const panel = root.querySelector('[data-role="service-error"]')!;
    expect(panel.textContent).toContain("session_closed");
    expect(panel.textContent).toContain("the interview is already finished");
    expect(panel.querySelector('[data-role="error-raw"]')!.textContent).toBe(JSON.stringify(closed));
  });

  it("redirects a finished session straight to the result view", async () => {
    const { impl } = fakeFetch(({ url, method }) => {
      if (method === "GET" && url === "/sessions/sid/query") {
        return { status: 409, json: { code: "no_pending", message: "no query is pending", context: {} } };
      }
      if (method === "GET" && url === "/sessions/sid/result") {
        return { status: 200, json: RESULT_TWO_MODELS };
      }
      throw new Error(`unexpected ${method} ${url}`);
    });
    const app = new App(root, new SessionApi("", impl));
    await app.boot(encodeSessionHash("sid", F1_GRID));
    expect(root.querySelector('[data-role="result-view"]')).toBeTruthy();
    expect(root.querySelector('[data-role="query-view"]')).toBeNull();
  });
});

describe("creating a session", () => {
  function fillRow(row: Element, label: string, breakpoints: string) {
    row.querySelector<HTMLInputElement>('[data-role="criterion-label"]')!.value = label;
    row.querySelector<HTMLInputElement>('[data-role="criterion-breakpoints"]')!.value = breakpoints;
  }

  it("posts the collected grid and moves to the first question", async () => {
    const { impl, calls } = fakeFetch(({ url, method }) => {
      if (method === "POST" && url === "/sessions") {
        return { status: 201, json: { id: "made", status: "awaiting-answers" } };
      }
      if (method === "GET" && url === "/sessions/made/query") return { status: 200, json: F1_FIRST };
      throw new Error(`unexpected ${method} ${url}`);
    });
    let hash = "";
    const app = new App(root, new SessionApi("", impl), (h) => {
      hash = h;
    });
    await app.boot("");
    assertNoIdentityPrompt(root);
    const rows = root.querySelectorAll(".criterion-row");
    fillRow(rows[0], "crit1", "0, 2, 4");
    fillRow(rows[1], "crit2", "0,2,4");
    root.querySelector<HTMLElement>('[data-role="create-session"]')!.click();
    await app.idle();
    const posts = calls.filter((c) => c.method === "POST");
    expect(posts).toHaveLength(1);
    expect(posts[0].body).toEqual({ grid: F1_GRID });
    expect(parseSessionHash(hash)).toEqual({ sessionId: "made", grid: F1_GRID });
    expect(root.querySelector('[data-role="query-view"]')).toBeTruthy();
  });

  it("rejects an unusable grid without calling the service", async () => {
    const { impl, calls } = fakeFetch(() => {
      throw new Error("no call expected");
    });
    const app = new App(root, new SessionApi("", impl));
    await app.boot("");
    const rows = root.querySelectorAll(".criterion-row");
    fillRow(rows[0], "crit1", "0");
    root.querySelector<HTMLElement>('[data-role="create-session"]')!.click();
    await app.idle();
    expect(root.querySelector('[data-role="client-error"]')!.textContent).not.toBe("");
    expect(calls).toHaveLength(0);
  });
});
