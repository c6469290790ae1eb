import type { TrackedPoint } from './landmarks';

// In-browser hand tracking via the MediaPipe Hands CDN build, same shape as
// the usual <script src> integration. Video frames stay on the client; only
// the mapped landmark JSON ever reaches the wire.

declare global {
  interface Window {
    Hands?: new (opts: { locateFile: (f: string) => string }) => MediaPipeHands;
  }
}

interface MediaPipeResults {
  multiHandLandmarks?: TrackedPoint[][];
  multiHandedness?: Array<{ label: string }>;
}

interface MediaPipeHands {
  setOptions(opts: Record<string, unknown>): void;
  onResults(cb: (results: MediaPipeResults) => void): void;
  send(input: { image: HTMLVideoElement }): Promise<void>;
}

export type HandsResult = {
  left: TrackedPoint[] | null;
  right: TrackedPoint[] | null;
};

const CDN = 'https://cdn.jsdelivr.net/npm/@mediapipe/hands';

function loadScript(src: string): Promise<void> {
  return new Promise((resolve, reject) => {
    const el = document.createElement('script');
    el.src = src;
    el.onload = () => resolve();
    el.onerror = () => reject(new Error(`failed to load ${src}`));
    document.head.appendChild(el);
  });
}

export class CameraTracker {
  private video: HTMLVideoElement;
  private hands: MediaPipeHands | null = null;
  private running = false;

  constructor(video: HTMLVideoElement, private onHands: (ts: number, r: HandsResult) => void) {
    this.video = video;
  }

  async start(): Promise<void> {
    if (this.running) return;
    if (!window.Hands) await loadScript(`${CDN}/hands.js`);
    if (!window.Hands) throw new Error('hand tracker unavailable');

    this.hands = new window.Hands({ locateFile: (f) => `${CDN}/${f}` });
    this.hands.setOptions({
      maxNumHands: 2,
      modelComplexity: 1,
      minDetectionConfidence: 0.7,
      minTrackingConfidence: 0.7,
    });
    this.hands.onResults((results) => {
      const out: HandsResult = { left: null, right: null };
      const lists = results.multiHandLandmarks ?? [];
      const labels = results.multiHandedness ?? [];
      lists.forEach((lm, i) => {
        if (labels[i]?.label === 'Left') out.left = lm;
        else out.right = lm;
      });
      this.onHands(performance.now(), out);
    });

    const stream = await navigator.mediaDevices.getUserMedia({
      video: { facingMode: 'user', width: 640, height: 480 },
    });
    this.video.srcObject = stream;
    await this.video.play();
    this.running = true;
    this.pump();
  }

  stop(): void {
    this.running = false;
    const stream = this.video.srcObject as MediaStream | null;
    stream?.getTracks().forEach((t) => t.stop());
    this.video.srcObject = null;
  }

  private async pump(): Promise<void> {
    if (!this.running || this.hands === null) return;
    if (this.video.readyState >= 2) {
      await this.hands.send({ image: this.video });
    }
    requestAnimationFrame(() => this.pump());
  }
}
