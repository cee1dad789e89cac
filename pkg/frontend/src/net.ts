// Socket wrapper: keeps one connection to the gateway alive, retrying
// quickly after drops so driving resumes without a page reload.

export const RECONNECT_DELAY_MS = 1000;

export interface SocketHandlers {
  onFrame(text: string): void;
  onStatus(status: "connecting" | "open" | "closed"): void;
}

// Minimal surface of a WebSocket, so tests can inject a fake.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  readyState: number;
}

export type SocketFactory = (url: string) => SocketLike;

const OPEN = 1;

export class TeleopSocket {
  private socket: SocketLike | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(
    private readonly url: string,
    private readonly handlers: SocketHandlers,
    private readonly makeSocket: SocketFactory = (url) => new WebSocket(url) as unknown as SocketLike,
  ) {}

  start(): void {
    this.stopped = false;
    this.connect();
  }

  stop(): void {
    this.stopped = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    if (this.socket !== null) {
      this.socket.onclose = null;
      this.socket.close();
      this.socket = null;
    }
  }

  /** Send one frame; false when the socket is not open. */
  send(frame: object): boolean {
    if (this.socket === null || this.socket.readyState !== OPEN) {
      return false;
    }
    this.socket.send(JSON.stringify(frame));
    return true;
  }

  private connect(): void {
    this.handlers.onStatus("connecting");
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onopen = () => this.handlers.onStatus("open");
    socket.onmessage = (ev) => {
      if (typeof ev.data === "string") this.handlers.onFrame(ev.data);
    };
    socket.onerror = () => {
      // the close handler does the retry; some browsers fire only error
      socket.close();
    };
    socket.onclose = () => {
      this.socket = null;
      this.handlers.onStatus("closed");
      this.scheduleReconnect();
    };
  }

  private scheduleReconnect(): void {
    if (this.stopped || this.reconnectTimer !== null) return;
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      if (!this.stopped) this.connect();
    }, RECONNECT_DELAY_MS);
  }
}
