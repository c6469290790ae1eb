import { StudioConnection } from './connection';
import { FrameBatcher } from './landmarks';
import type { GestureMode } from './protocol';
import { committedValue } from './readout';
import { ClientSceneModel } from './sceneModel';
import { PushToTalk } from './speech';
import { CameraTracker } from './tracker';
import { Hud } from './hud';
import { StudioViewport } from './viewport';

async function createSession(): Promise<{ id: string; ws_url: string }> {
  const res = await fetch('/session', { method: 'POST' });
  if (!res.ok) throw new Error(`session create failed: HTTP ${res.status}`);
  return res.json();
}

async function main() {
  const canvas = document.getElementById('viewport') as HTMLCanvasElement;
  const hud = new Hud();
  const model = new ClientSceneModel();
  const viewport = new StudioViewport(canvas.clientWidth / canvas.clientHeight);
  viewport.attachCanvas(canvas);

  let pinchTarget: 'extrude' | 'scale' = 'extrude';
  let gestureMode: GestureMode = 'pinch_length';

  const render = () => {
    viewport.setEntries(model.entries, model.selection);
    hud.setStage(model.stage, model.revision);
    hud.setSelection(model.selection);
    hud.setReadout(gestureMode, committedValue(model.sdl, model.selection, gestureMode, pinchTarget));
  };

  const session = await createSession();
  const wsUrl = new URL(session.ws_url, window.location.href);
  wsUrl.protocol = wsUrl.protocol === 'https:' ? 'wss:' : 'ws:';

  let pendingSelect: string | null = null;
  const conn = new StudioConnection(wsUrl.toString(), {
    onMessage: (msg) => {
      if (msg.type === 'scene') {
        if (model.apply(msg)) render();
      } else if (msg.type === 'ack') {
        if (msg.for === 'select') {
          // selection confirmed server-side; mirror it (acks carry no scene)
          model.selection = pendingSelect;
          viewport.setSelection(pendingSelect);
          hud.setSelection(pendingSelect);
        }
      } else {
        hud.banner(`${msg.code}: ${msg.message}`);
        setTimeout(() => hud.banner(null), 4000);
      }
    },
    onStatus: (status, detail) => {
      hud.banner(status === 'open' ? null : `connection: ${status}${detail ? ` — ${detail}` : ''}`);
    },
  });
  conn.connect();

  // -- picking ---------------------------------------------------------
  canvas.addEventListener('click', (ev) => {
    const rect = canvas.getBoundingClientRect();
    const ndcX = ((ev.clientX - rect.left) / rect.width) * 2 - 1;
    const ndcY = -(((ev.clientY - rect.top) / rect.height) * 2 - 1);
    const hit = viewport.pick(ndcX, ndcY);
    pendingSelect = hit;
    conn.send({ type: 'select', component: hit });
  });

  // -- text fallback ---------------------------------------------------
  const input = document.getElementById('say') as HTMLInputElement;
  input.addEventListener('keydown', (ev) => {
    if (ev.key !== 'Enter' || input.value.trim() === '') return;
    const text = input.value.trim();
    const bare = text.toLowerCase().replace(/[.!,?\s]+$/, '');
    if (bare === 'scale') pinchTarget = 'scale';
    if (bare === 'depth') pinchTarget = 'extrude';
    conn.send({ type: 'transcript', text });
    input.value = '';
  });

  // -- stage + undo/redo buttons ----------------------------------------
  for (const stage of ['generation', 'segmentation', 'modification']) {
    document.getElementById(`stage-${stage}`)?.addEventListener('click', () => {
      conn.send({ type: 'set_stage', stage });
    });
  }
  document.getElementById('undo')!.addEventListener('click', () => conn.send({ type: 'undo' }));
  document.getElementById('redo')!.addEventListener('click', () => conn.send({ type: 'redo' }));

  // -- push-to-talk ------------------------------------------------------
  const talk = document.getElementById('talk') as HTMLButtonElement;
  const ptt = new PushToTalk((wav_base64) => conn.send({ type: 'audio', wav_base64 }));
  talk.addEventListener('mousedown', () => {
    ptt.start().catch(() => {
      hud.banner('microphone unavailable — use the text box');
      talk.disabled = true;
    });
  });
  talk.addEventListener('mouseup', () => ptt.stop());
  talk.addEventListener('mouseleave', () => ptt.stop());

  // -- hand gestures -----------------------------------------------------
  const batcher = new FrameBatcher(gestureMode, (mode, frames) => {
    conn.send({ type: 'gesture_frames', mode, frames });
  });
  const modeSelect = document.getElementById('gesture-mode') as HTMLSelectElement;
  modeSelect.addEventListener('change', () => {
    gestureMode = modeSelect.value as GestureMode;
    batcher.setMode(gestureMode);
  });

  const handsToggle = document.getElementById('hands') as HTMLButtonElement;
  const video = document.getElementById('camera') as HTMLVideoElement;
  const pausedEl = document.getElementById('paused')!;
  let tracker: CameraTracker | null = null;
  handsToggle.addEventListener('click', async () => {
    if (tracker !== null) {
      tracker.stop();
      batcher.flush();
      tracker = null;
      handsToggle.textContent = 'start hands';
      return;
    }
    tracker = new CameraTracker(video, (ts, hands) => {
      const accepted = batcher.push(ts, hands.left, hands.right);
      pausedEl.style.display = hands.left === null && hands.right === null ? 'inline' : 'none';
      if (!accepted && hands.left === null && hands.right === null) batcher.flush();
    });
    try {
      await tracker.start();
      handsToggle.textContent = 'stop hands';
    } catch {
      hud.banner('camera unavailable — gestures disabled');
      tracker = null;
    }
  });

  // -- draw loop ---------------------------------------------------------
  const resize = () => viewport.resize(canvas.clientWidth, canvas.clientHeight);
  window.addEventListener('resize', resize);
  resize();
  const tick = () => {
    viewport.draw();
    requestAnimationFrame(tick);
  };
  tick();
}

main().catch((err) => {
  const banner = document.getElementById('banner')!;
  banner.textContent = `startup failed: ${err.message}`;
  banner.style.display = 'block';
});
