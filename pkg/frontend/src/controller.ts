/** Session state machine over the HTTP API.
 *
 * Tracks the latest known revision and discards any scene fetch that
 * arrives carrying an older one, so a slow response can never roll the
 * viewer backwards. One command is in flight at a time, matching the
 * server's serial session contract; the UI disables submit while busy.
 */

import type { ApiClient } from "./api.js";
import { captureStudy, type StudyData } from "./heatmap.js";
import type {
  CommandMode,
  CommandResponse,
  HistoryResponse,
  RepairAttempt,
  SceneDocument,
  SceneEnvelope,
  SessionInfo,
  SunStudyRequest,
} from "./types.js";

export class Signal<T> {
  private readonly listeners: Array<(value: T) => void> = [];

  on(listener: (value: T) => void): void {
    this.listeners.push(listener);
  }

  emit(value: T): void {
    for (const listener of [...this.listeners]) listener(value);
  }
}

export class SessionController {
  readonly onSession = new Signal<SessionInfo>();
  readonly onScene = new Signal<SceneEnvelope>();
  readonly onHistory = new Signal<HistoryResponse>();
  readonly onBusy = new Signal<boolean>();
  readonly onError = new Signal<string>();
  readonly onAttempts = new Signal<RepairAttempt[]>();
  readonly onStudy = new Signal<StudyData | null>();
  /** Fired with the revision of a discarded (stale) scene fetch. */
  readonly onDiscard = new Signal<number>();

  sessionId: string | null = null;
  seed = 0;
  revision = -1;
  busy = false;
  scene: SceneDocument | null = null;
  study: StudyData | null = null;

  constructor(private readonly api: ApiClient) {}

  private get openId(): string {
    if (this.sessionId === null) throw new Error("no open session");
    return this.sessionId;
  }

  async open(seed?: number): Promise<void> {
    const info = await this.api.createSession(seed);
    this.sessionId = info.session_id;
    this.seed = info.seed;
    this.revision = -1;
    this.scene = null;
    this.study = null;
    this.onSession.emit(info);
    this.onStudy.emit(null);
    await this.refreshScene();
    await this.refreshHistory();
  }

  /** Apply a fetched scene unless a newer revision is already shown. */
  private applyScene(envelope: SceneEnvelope): boolean {
    if (envelope.revision < this.revision) {
      this.onDiscard.emit(envelope.revision);
      return false;
    }
    this.revision = envelope.revision;
    this.scene = envelope.scene;
    this.onScene.emit(envelope);
    return true;
  }

  /** Fetch the scene; false when the reply was stale and discarded. */
  async refreshScene(): Promise<boolean> {
    return this.applyScene(await this.api.scene(this.openId));
  }

  async refreshHistory(): Promise<void> {
    this.onHistory.emit(await this.api.history(this.openId));
  }

  private async guarded<T>(run: () => Promise<T>): Promise<T> {
    if (this.busy) throw new Error("a command is already in flight");
    this.busy = true;
    this.onBusy.emit(true);
    try {
      return await run();
    } finally {
      this.busy = false;
      this.onBusy.emit(false);
    }
  }

  /** Run one command batch; on success re-fetches scene and history. */
  submit(text: string, mode: CommandMode): Promise<CommandResponse> {
    return this.guarded(async () => {
      const resp = await this.api.submit(this.openId, text, mode);
      await this.afterCommand(resp);
      return resp;
    });
  }

  undo(): Promise<CommandResponse> {
    return this.guarded(async () => {
      const resp = await this.api.undo(this.openId);
      await this.afterCommand(resp);
      return resp;
    });
  }

  runSunStudy(req: SunStudyRequest): Promise<CommandResponse> {
    return this.guarded(async () => {
      const capture = await this.api.sunStudy(this.openId, req);
      const resp = capture.response;
      if (resp.error === null && resp.insolation !== undefined) {
        this.study = captureStudy(resp.insolation, capture.body);
        this.onStudy.emit(this.study);
      }
      await this.afterCommand(resp);
      return resp;
    });
  }

  clearStudy(): void {
    this.study = null;
    this.onStudy.emit(null);
  }

  private async afterCommand(resp: CommandResponse): Promise<void> {
    if (resp.error !== null) {
      // Failed batch: the server left the scene untouched, so there is
      // nothing to re-fetch. Surface the message and the repair log.
      this.onError.emit(resp.error);
      if (resp.attempts !== undefined) this.onAttempts.emit(resp.attempts);
      return;
    }
    if (resp.revision > this.revision) this.revision = resp.revision;
    await this.refreshScene();
    await this.refreshHistory();
  }
}
