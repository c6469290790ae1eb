import type { MeshEntry, SceneMessage } from './protocol';

// Client-side mirror of the server's scene. Revision is monotonic: a scene
// message older than what we already rendered is dropped (out-of-order
// delivery after reconnects, or our own echo racing a broadcast).

export class ClientSceneModel {
  revision = -1;
  entries: MeshEntry[] = [];
  stage = 'generation';
  selection: string | null = null;
  sdl = '';

  /** Apply a scene message; returns false if it was stale and dropped. */
  apply(msg: SceneMessage): boolean {
    if (msg.revision <= this.revision && this.revision >= 0) return false;
    this.revision = msg.revision;
    this.entries = msg.mesh;
    this.stage = msg.stage;
    this.selection = msg.selection;
    this.sdl = msg.sdl;
    return true;
  }
}
