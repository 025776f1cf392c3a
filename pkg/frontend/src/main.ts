/**
 * Application wiring: an AppController owns the state, talks to the service,
 * and re-renders after every transition. Submissions are optimistic about
 * the *screen* (inputs lock immediately); the state only advances from
 * authoritative service responses, and any failure rolls the screen back to
 * the pre-submit state with a banner.
 */

import { ApiClient, ApiError } from "./api.js";
import { render } from "./render.js";
import {
  AppState,
  initialState,
  validateInputs,
  withBanner,
  withFieldErrors,
  withGhost,
  withInput,
  withSession,
  withSubmitting,
} from "./state.js";

export class AppController {
  private state: AppState = initialState();
  /** chain of in-flight work; tests await settle() */
  private work: Promise<void> = Promise.resolve();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.paint();
  }

  getState(): AppState {
    return this.state;
  }

  settle(): Promise<void> {
    return this.work;
  }

  private set(state: AppState): void {
    this.state = state;
    this.paint();
  }

  private paint(): void {
    render(this.root, this.state, {
      onCreate: (policyType, order, horizon) => this.enqueue(() => this.create(policyType, order, horizon)),
      onInput: (key, text) => this.set(withInput(this.state, key, text)),
      onSubmit: () => this.enqueue(() => this.submit()),
      onRefresh: () => this.enqueue(() => this.refresh()),
      onWhatIfEnter: (cell) => this.enqueue(() => this.preview(cell)),
      onWhatIfLeave: () => this.set(withGhost(this.state, null)),
    });
  }

  private enqueue(job: () => Promise<void>): void {
    this.work = this.work.then(job, job);
  }

  private async create(policyType: string, order: number, horizon: number | null): Promise<void> {
    const policy: Record<string, unknown> = { type: policyType };
    if (policyType !== "golden" && policyType !== "two_test_special") policy.i = order;
    try {
      const view = await this.api.createSession({ policy, horizon });
      this.set(withSession(this.state, view));
    } catch (err) {
      this.set(withBanner(this.state, `could not create session: ${String(err)}`));
    }
  }

  private async submit(): Promise<void> {
    const session = this.state.session;
    if (!session || this.state.submitting) return;
    const check = validateInputs(this.state);
    if (!check.ok) {
      this.set(withFieldErrors(this.state, check.fieldErrors));
      return;
    }
    const before = this.state;
    this.set(withSubmitting(this.state, true));
    try {
      const view = await this.api.submitResults(session.id, check.values);
      this.set(withSession(this.state, view));
    } catch (err) {
      if (err instanceof ApiError && err.isConflict) {
        // another tab advanced the session: force a refresh to the truth
        try {
          const view = await this.api.getSession(session.id);
          this.set(
            withBanner(withSession(this.state, view), "session advanced elsewhere; reloaded latest state"),
          );
        } catch {
          this.set(withBanner(before, "session conflict and refresh failed; retry"));
        }
        return;
      }
      // network or validation failure: restore the screen, keep the inputs
      this.set(withBanner(before, `submission failed, nothing recorded: ${String(err)}`));
    }
  }

  private async refresh(): Promise<void> {
    const session = this.state.session;
    if (!session) {
      this.set(withBanner(this.state, null));
      return;
    }
    try {
      const view = await this.api.getSession(session.id);
      this.set(withSession(this.state, view));
    } catch (err) {
      this.set(withBanner(this.state, `still unreachable: ${String(err)}`));
    }
  }

  private async preview(cell: number): Promise<void> {
    const session = this.state.session;
    if (!session || cell < 0) return;
    try {
      const ghost = await this.api.whatIf(session.id, cell);
      this.set(withGhost(this.state, ghost));
    } catch {
      this.set(withGhost(this.state, null));
    }
  }
}

export function bootstrap(root: HTMLElement, baseUrl: string, fetchImpl?: typeof fetch): AppController {
  return new AppController(root, new ApiClient(baseUrl, fetchImpl));
}
