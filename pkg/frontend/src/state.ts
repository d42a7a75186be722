/** Session flow and client-side answer validation. */
import { ApiError, SessionApi } from "./api.js";
import { Rational } from "./rational.js";
import type { CriterionPayload, PendingQuery, ResultPayload } from "./types.js";

export type ViewState =
  | { kind: "query"; pending: PendingQuery }
  | { kind: "result"; result: ResultPayload }
  | { kind: "error"; error: ApiError };

export class SessionFlow {
  constructor(
    readonly api: SessionApi,
    readonly sessionId: string,
  ) {}

  /** Resolve where the session stands using GET endpoints only, so a
   * page reload lands exactly where the interview is: the pending
   * query, the recovered tables, or the failure report. */
  async current(): Promise<ViewState> {
    try {
      return { kind: "query", pending: await this.api.getQuery(this.sessionId) };
    } catch (err) {
      if (err instanceof ApiError && err.code === "no_pending") {
        try {
          return { kind: "result", result: await this.api.getResult(this.sessionId) };
        } catch (inner) {
          if (inner instanceof ApiError) return { kind: "error", error: inner };
          throw inner;
        }
      }
      if (err instanceof ApiError) return { kind: "error", error: err };
      throw err;
    }
  }
}

export type AnswerCheck = { ok: true; value: string } | { ok: false; reason: string };

/** Validate a typed answer before it is posted.
 *
 * The text is parsed into an exact rational and compared against the
 * target criterion's scale endpoints; anything off the scale is
 * rejected here, never sent. The accepted value is passed through as
 * typed (it already denotes an exact rational).
 */
export function validateAnswer(raw: string, scale: CriterionPayload | null): AnswerCheck {
  const text = raw.trim();
  if (!text) {
    return {
      ok: false,
      reason: 'enter a value, or press "cannot compensate" if no value restores indifference',
    };
  }
  let value: Rational;
  try {
    value = Rational.parse(text);
  } catch {
    return { ok: false, reason: `${JSON.stringify(text)} is not a number; use forms like 3, 2.5 or 7/4` };
  }
  if (scale && scale.breakpoints.length > 0) {
    const first = scale.breakpoints[0];
    const last = scale.breakpoints[scale.breakpoints.length - 1];
    if (value.cmp(Rational.parse(first)) < 0 || value.cmp(Rational.parse(last)) > 0) {
      return { ok: false, reason: `stay on the ${scale.name} scale: between ${first} and ${last}` };
    }
  }
  return { ok: true, value: text };
}
