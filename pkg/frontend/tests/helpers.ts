import { expect } from "vitest";
import type { FetchLike } from "../src/api.js";

/* Anonymity: no screen may solicit who is answering. Text asking the
   user to identify themselves and form controls with identity-shaped
   attributes both count as prompts. */
const PROMPT_TEXT = /who\s+are\s+you|your\s+name|identify\s+yourself|log\s*in|sign\s*in/i;
const PROMPT_CONTROL =
  /(your|first|last|full)[\s_-]*name|identity|respondent|participant|e-?mail|log\s*in|sign\s*in|user\s*name/i;

export function assertNoIdentityPrompt(root: HTMLElement): void {
  expect(root.textContent ?? "").not.toMatch(PROMPT_TEXT);
  for (const control of Array.from(root.querySelectorAll("input, select, textarea, button"))) {
    const bits = ["id", "name", "placeholder", "aria-label", "title", "data-role"]
      .map((attr) => control.getAttribute(attr) ?? "")
      .join(" ");
    expect(bits).not.toMatch(PROMPT_CONTROL);
  }
  expect(root.querySelector('[data-identity], [name="identity"]')).toBeNull();
}

export async function waitFor<T>(probe: () => T | null | undefined | false, ms = 10_000): Promise<T> {
  const started = Date.now();
  for (;;) {
    const got = probe();
    if (got) return got;
    if (Date.now() - started > ms) throw new Error("timed out waiting for UI state");
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export interface FetchCall {
  url: string;
  method: string;
  body: unknown;
}

/** In-memory fetch stub recording every call. */
export function fakeFetch(route: (call: FetchCall) => { status: number; json: unknown }): {
  impl: FetchLike;
  calls: FetchCall[];
} {
  const calls: FetchCall[] = [];
  const impl: FetchLike = async (url, init) => {
    const call: FetchCall = {
      url,
      method: init?.method ?? "GET",
      body: init?.body !== undefined ? JSON.parse(String(init.body)) : undefined,
    };
    calls.push(call);
    const out = route(call);
    return new Response(JSON.stringify(out.json), {
      status: out.status,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

export function freshRoot(): HTMLElement {
  document.body.innerHTML = "";
  const root = document.createElement("div");
  root.id = "app";
  document.body.append(root);
  return root;
}
