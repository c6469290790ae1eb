import type { ClientMessage, ServerMessage } from './protocol';
import { parseServerMessage } from './protocol';

// Minimal WebSocket surface so tests can inject fakes (and node can inject
// the `ws` package; browsers use the native constructor).
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onclose: ((ev: { code: number }) => void) | null;
  onerror: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionEvents {
  onMessage: (msg: ServerMessage) => void;
  /** status: 'connecting' | 'open' | 'retrying' | 'closed' */
  onStatus: (status: string, detail?: string) => void;
}

const BACKOFF_MS = [500, 1000, 2000, 4000, 8000];
const AUTH_CLOSE = 1008;
// Browsers can't tell a rejected handshake (bad token -> HTTP 403) from a
// dead network: both surface as close 1006. If we have never managed to
// open, give up after a few tries instead of retrying forever.
const MAX_NEVER_OPENED_ATTEMPTS = 3;

export class StudioConnection {
  private socket: SocketLike | null = null;
  private ready = false;
  private queue: string[] = [];
  private attempts = 0;
  private everOpened = false;
  private stopped = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private url: string,
    private events: ConnectionEvents,
    private makeSocket: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {}

  connect(): void {
    this.stopped = false;
    this.open();
  }

  /** Queue-preserving send: messages buffered while disconnected go out
   *  in order on reconnect. */
  send(msg: ClientMessage): void {
    const data = JSON.stringify(msg);
    if (this.socket !== null && this.ready) {
      this.socket.send(data);
    } else {
      this.queue.push(data);
    }
  }

  close(): void {
    this.stopped = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.socket?.close();
    this.socket = null;
  }

  private open(): void {
    this.events.onStatus(this.attempts === 0 ? 'connecting' : 'retrying');
    const sock = this.makeSocket(this.url);
    this.socket = sock;
    sock.onopen = () => {
      this.attempts = 0;
      this.everOpened = true;
      this.ready = true;
      this.events.onStatus('open');
      for (const data of this.queue.splice(0)) sock.send(data);
    };
    sock.onmessage = (ev) => {
      const msg = parseServerMessage(String(ev.data));
      if (msg === null) {
        console.error('dropped malformed server message');
        return;
      }
      this.events.onMessage(msg);
    };
    sock.onerror = () => {
      // close follows; reconnect is handled there
    };
    sock.onclose = (ev) => {
      this.socket = null;
      this.ready = false;
      if (this.stopped) {
        this.events.onStatus('closed');
        return;
      }
      if (ev.code === AUTH_CLOSE) {
        this.events.onStatus('closed', 'rejected (bad token or expired session)');
        return;
      }
      this.attempts += 1;
      if (!this.everOpened && this.attempts >= MAX_NEVER_OPENED_ATTEMPTS) {
        this.events.onStatus('closed', 'could not connect (bad token, stale session, or service down)');
        return;
      }
      const wait = BACKOFF_MS[Math.min(this.attempts - 1, BACKOFF_MS.length - 1)];
      this.events.onStatus('retrying', `reconnecting in ${wait} ms`);
      this.timer = setTimeout(() => this.open(), wait);
    };
  }
}
