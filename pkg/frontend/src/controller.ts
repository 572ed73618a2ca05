/**
 * View-model for the review workbench. Holds the reader session, mirrors
 * the service's queue, and submits labels optimistically: the UI advances
 * right away, but every displayed label/status comes from the service's
 * response payloads, and a 409 conflict triggers a full re-sync.
 */
import { ApiClient, ConflictError } from "./api.js";
import { classForKey } from "./keymap.js";
import { ClassCode, QueueEntry, ReaderSession, wireRound } from "./types.js";

export type ViewName = "queue" | "label" | "adjudication";

export interface ControllerState {
  entries: QueueEntry[];
  currentId: string | null;
  banner: string | null;
  notice: string | null;
  loading: boolean;
}

export type Listener = (state: ControllerState) => void;

function byUncertainty(a: QueueEntry, b: QueueEntry): number {
  return a.max_prob - b.max_prob || a.id.localeCompare(b.id);
}

export class ReviewController {
  readonly session: ReaderSession;
  private readonly api: ApiClient;
  private readonly listeners: Listener[] = [];

  state: ControllerState = {
    entries: [],
    currentId: null,
    banner: null,
    notice: null,
    loading: false,
  };

  constructor(api: ApiClient, session: ReaderSession) {
    this.api = api;
    this.session = session;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  /** Items this session may label next, most uncertain first. */
  worklist(): QueueEntry[] {
    const round = wireRound(this.session.round);
    return this.state.entries.filter((entry) => {
      if (entry.pending_round !== round) return false;
      // a reader never labels the same item in both rounds
      if (round === 2 && entry.round1?.reader === this.session.reader) return false;
      return true;
    });
  }

  current(): QueueEntry | null {
    return this.state.entries.find((e) => e.id === this.state.currentId) ?? null;
  }

  view(): ViewName {
    if (this.session.round === "adjudication") return "adjudication";
    return this.state.currentId === null ? "queue" : "label";
  }

  async refresh(): Promise<void> {
    this.state = { ...this.state, loading: true };
    this.emit();
    try {
      const entries = [...(await this.api.fetchQueue())].sort(byUncertainty);
      const pending = entries.filter((e) =>
        this.worklistOf(entries).some((w) => w.id === e.id),
      );
      const keep = pending.some((e) => e.id === this.state.currentId)
        ? this.state.currentId
        : (pending[0]?.id ?? null);
      this.state = { ...this.state, entries, currentId: keep, banner: null, loading: false };
    } catch (error) {
      this.state = {
        ...this.state,
        banner: `service unreachable: ${(error as Error).message}`,
        loading: false,
      };
    }
    this.emit();
  }

  private worklistOf(entries: QueueEntry[]): QueueEntry[] {
    const round = wireRound(this.session.round);
    return entries.filter((entry) => {
      if (entry.pending_round !== round) return false;
      if (round === 2 && entry.round1?.reader === this.session.reader) return false;
      return true;
    });
  }

  /** Submit a label for the current item and advance to the next one. */
  async submit(cls: ClassCode): Promise<void> {
    const item = this.current();
    if (!item) return;

    // optimistic advance; the entry itself only changes on the response
    const remaining = this.worklist().filter((e) => e.id !== item.id);
    this.state = { ...this.state, currentId: remaining[0]?.id ?? null, notice: null };
    this.emit();

    try {
      const updated = await this.api.submitLabel(
        item.id,
        this.session.reader,
        wireRound(this.session.round),
        cls,
      );
      const entries = (
        updated.consensus !== null
          ? this.state.entries.filter((e) => e.id !== updated.id)
          : this.state.entries.map((e) => (e.id === updated.id ? updated : e))
      ).sort(byUncertainty);
      this.state = { ...this.state, entries };
      this.emit();
    } catch (error) {
      if (error instanceof ConflictError) {
        this.state = { ...this.state, notice: `item ${item.id} changed: ${error.message}` };
        this.emit();
        await this.refresh();
        return;
      }
      this.state = { ...this.state, banner: (error as Error).message };
      this.emit();
      await this.refresh();
    }
  }

  /** Keyboard entry point: digits 1-5 label the current item. */
  async keyPressed(key: string): Promise<void> {
    const cls = classForKey(key);
    if (cls === null) return;
    await this.submit(cls);
  }

  /** Select a specific queue row to work on. */
  select(id: string): void {
    if (this.state.entries.some((e) => e.id === id)) {
      this.state = { ...this.state, currentId: id };
      this.emit();
    }
  }
}
