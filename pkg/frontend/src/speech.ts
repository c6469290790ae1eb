import { TARGET_RATE, downsample, encodeWav, toBase64 } from './wav';

// Push-to-talk: hold the button, speak, release. One audio message per
// press-release, none for empty recordings. Falls back to the text box
// when the mic is unavailable (that path is just a transcript message).

/** Everything after "release": join, downsample, encode. Null for an empty
 *  recording — the caller sends nothing. */
export function finishRecording(chunks: Float32Array[], sampleRate: number): string | null {
  const total = chunks.reduce((n, c) => n + c.length, 0);
  if (total === 0) return null;
  const all = new Float32Array(total);
  let off = 0;
  for (const c of chunks) {
    all.set(c, off);
    off += c.length;
  }
  return toBase64(encodeWav(downsample(all, sampleRate, TARGET_RATE), TARGET_RATE));
}

export class PushToTalk {
  private context: AudioContext | null = null;
  private source: MediaStreamAudioSourceNode | null = null;
  private processor: ScriptProcessorNode | null = null;
  private stream: MediaStream | null = null;
  private chunks: Float32Array[] = [];
  private recording = false;

  constructor(private onWav: (wavBase64: string) => void) {}

  async start(): Promise<void> {
    if (this.recording) return;
    this.stream = await navigator.mediaDevices.getUserMedia({ audio: true });
    this.context = new AudioContext();
    this.source = this.context.createMediaStreamSource(this.stream);
    this.processor = this.context.createScriptProcessor(4096, 1, 1);
    this.chunks = [];
    this.processor.onaudioprocess = (ev) => {
      if (this.recording) this.chunks.push(new Float32Array(ev.inputBuffer.getChannelData(0)));
    };
    this.source.connect(this.processor);
    this.processor.connect(this.context.destination);
    this.recording = true;
  }

  stop(): void {
    if (!this.recording) return;
    this.recording = false;
    this.processor?.disconnect();
    this.source?.disconnect();
    this.stream?.getTracks().forEach((t) => t.stop());

    const sampleRate = this.context?.sampleRate ?? TARGET_RATE;
    void this.context?.close();
    this.context = null;

    const encoded = finishRecording(this.chunks, sampleRate);
    this.chunks = [];
    if (encoded !== null) this.onWav(encoded);
  }
}
