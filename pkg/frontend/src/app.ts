/** Controller tying the API client, session flow and views together.
 *
 * All user-triggered work funnels through a single promise chain so
 * interactions are serialized (mirroring the service's own per-session
 * lock) and tests can await `idle()` after a click. Every render bumps
 * `data-render-seq` on the root, which is what UI automation watches.
 */
import { ApiError, SessionApi } from "./api.js";
import { encodeSessionHash, parseSessionHash } from "./link.js";
import {
  renderCreateForm,
  renderErrorView,
  renderQueryView,
  renderResultView,
  setClientError,
  showServiceError,
} from "./render.js";
import { SessionFlow, validateAnswer } from "./state.js";
import type { GridPayload, PendingQuery } from "./types.js";

export class App {
  private sessionId: string | null = null;
  private grid: GridPayload | null = null;
  private seq = 0;
  private busy: Promise<void> = Promise.resolve();

  constructor(
    readonly root: HTMLElement,
    readonly api: SessionApi,
    private readonly onLocation?: (hash: string) => void,
  ) {}

  /** Resolves once queued interaction handlers have settled. */
  idle(): Promise<void> {
    return this.busy;
  }

  private enqueue(work: () => Promise<void>): void {
    this.busy = this.busy.then(work).catch((err) => this.fatal(err));
  }

  private bump(): void {
    this.root.dataset.renderSeq = String(++this.seq);
  }

  shareHash(): string {
    return this.sessionId ? encodeSessionHash(this.sessionId, this.grid) : "";
  }

  async boot(hash: string): Promise<void> {
    const parsed = parseSessionHash(hash);
    if (parsed) {
      this.sessionId = parsed.sessionId;
      if (parsed.grid) this.grid = parsed.grid;
      await this.refresh();
      return;
    }
    renderCreateForm(this.root, {
      onCreate: (grid, epsilon) => this.enqueue(() => this.create(grid, epsilon)),
    });
    this.bump();
  }

  private async create(grid: GridPayload, epsilon: string | undefined): Promise<void> {
    try {
      const made = await this.api.createSession(grid, epsilon);
      this.sessionId = made.id;
      this.grid = grid;
      this.onLocation?.(this.shareHash());
      await this.refresh();
    } catch (err) {
      if (err instanceof ApiError) {
        showServiceError(this.root, err);
        this.bump();
        return;
      }
      throw err;
    }
  }

  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const state = await new SessionFlow(this.api, this.sessionId).current();
    if (state.kind === "query") {
      this.showQuery(state.pending);
    } else if (state.kind === "result") {
      renderResultView(this.root, state.result);
      this.bump();
    } else {
      renderErrorView(this.root, state.error);
      this.bump();
    }
  }

  private showQuery(pending: PendingQuery): void {
    renderQueryView(
      this.root,
      pending,
      this.grid,
      {
        onAnswer: (raw) => this.enqueue(() => this.answer(raw, pending)),
        onNone: () => this.enqueue(() => this.post(null)),
      },
      this.sessionId ? `#${this.shareHash()}` : undefined,
    );
    this.bump();
  }

  private async answer(raw: string, pending: PendingQuery): Promise<void> {
    const scale = this.grid?.criteria[pending.query.j - 1] ?? null;
    const check = validateAnswer(raw, scale);
    if (!check.ok) {
      setClientError(this.root, check.reason);
      this.bump();
      return;
    }
    await this.post(check.value);
  }

  private async post(value: string | null): Promise<void> {
    if (!this.sessionId) return;
    try {
      await this.api.postAnswer(this.sessionId, value);
      await this.refresh();
    } catch (err) {
      if (err instanceof ApiError) {
        showServiceError(this.root, err);
        this.bump();
        return;
      }
      throw err;
    }
  }

  private fatal(err: unknown): void {
    const shaped =
      err instanceof ApiError ? err : new ApiError(0, "client_error", String(err), null, String(err));
    renderErrorView(this.root, shaped);
    this.bump();
  }
}
