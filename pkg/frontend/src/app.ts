import { SessionApi, ServiceError } from './api.js';
import type { CreateSessionRequest, SessionSummary } from './types.js';
import { toViewModel } from './viewmodel.js';
import { renderSession } from './view.js';

/**
 * Glue between the service and the page: holds the latest summary, posts
 * one move per click and disables the buttons until the engine's reply
 * has been rendered. All game semantics stay server-side.
 */
export class SessionController {
  private summary: SessionSummary | null = null;
  private pending = false;

  constructor(
    private readonly api: SessionApi,
    private readonly root: HTMLElement,
  ) {
    this.root.addEventListener('click', (ev) => {
      const target = (ev.target as HTMLElement).closest('button[data-move]');
      if (target instanceof HTMLButtonElement && !this.pending) {
        void this.play(Number(target.dataset.move));
      }
    });
  }

  async start(req: CreateSessionRequest): Promise<void> {
    try {
      this.summary = await this.api.createSession(req);
      this.render();
    } catch (err) {
      this.renderError(err);
    }
  }

  private async play(move: number): Promise<void> {
    if (!this.summary) return;
    this.pending = true;
    this.render();
    try {
      this.summary = await this.api.playMove(this.summary.id, move);
    } catch (err) {
      this.renderError(err);
      return;
    } finally {
      this.pending = false;
    }
    this.render();
  }

  private render(): void {
    if (this.summary) {
      this.root.innerHTML = renderSession(toViewModel(this.summary), this.pending);
    }
  }

  private renderError(err: unknown): void {
    const message =
      err instanceof ServiceError ? `${err.code}: ${err.message}` : String(err);
    const box = document.createElement('div');
    box.className = 'error';
    box.textContent = message;
    this.root.prepend(box);
  }
}
