import * as THREE from 'three';
import type { MeshEntry } from './protocol';

// Scene-graph + picking layer. Kept separate from the WebGLRenderer so the
// whole thing (object creation, raycasting, outlines) runs headless in tests;
// attachCanvas() is the only part that needs a real browser.

const OUTLINE_SCALE = 1.04;

function entryToMesh(entry: MeshEntry): THREE.Mesh {
  const geom = new THREE.BufferGeometry();
  geom.setAttribute('position', new THREE.Float32BufferAttribute(entry.positions, 3));
  geom.setIndex(entry.indices);
  geom.computeVertexNormals();
  const mat = new THREE.MeshStandardMaterial({ color: new THREE.Color(entry.color) });
  const mesh = new THREE.Mesh(geom, mat);
  // wire transforms are row-major; three's Matrix4.set takes row-major too
  const t = entry.transform;
  const m = new THREE.Matrix4();
  m.set(
    t[0], t[1], t[2], t[3],
    t[4], t[5], t[6], t[7],
    t[8], t[9], t[10], t[11],
    t[12], t[13], t[14], t[15],
  );
  mesh.matrixAutoUpdate = false;
  mesh.matrix.copy(m);
  mesh.name = entry.id;
  return mesh;
}

/** "petal.2" -> "petal": instances pick their component. */
export function componentOf(entryId: string): string {
  const dot = entryId.lastIndexOf('.');
  return dot > 0 && /^\d+$/.test(entryId.slice(dot + 1)) ? entryId.slice(0, dot) : entryId;
}

export class StudioViewport {
  readonly scene = new THREE.Scene();
  readonly camera: THREE.PerspectiveCamera;
  private modelGroup = new THREE.Group();
  private outlines = new THREE.Group();
  private raycaster = new THREE.Raycaster();
  private renderer: THREE.WebGLRenderer | null = null;

  constructor(aspect = 16 / 9) {
    this.camera = new THREE.PerspectiveCamera(40, aspect, 0.01, 100);
    this.camera.position.set(0.9, 0.7, 1.6);
    this.camera.lookAt(0, 0.15, 0);
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
    const key = new THREE.DirectionalLight(0xffffff, 1.2);
    key.position.set(2, 3, 2);
    this.scene.add(key);
    this.scene.add(this.modelGroup);
    this.scene.add(this.outlines);
  }

  /** Rebuild renderable objects from scene-message entries. */
  setEntries(entries: MeshEntry[], selection: string | null): void {
    this.disposeGroup(this.modelGroup);
    for (const entry of entries) {
      this.modelGroup.add(entryToMesh(entry));
    }
    this.setSelection(selection);
  }

  /** Outline every instance of the selected component. */
  setSelection(selection: string | null): void {
    this.disposeGroup(this.outlines);
    if (selection === null) return;
    for (const obj of this.modelGroup.children) {
      const mesh = obj as THREE.Mesh;
      if (componentOf(mesh.name) !== selection) continue;
      const outline = new THREE.Mesh(
        mesh.geometry,
        new THREE.MeshBasicMaterial({ color: 0xffcc00, side: THREE.BackSide }),
      );
      outline.matrixAutoUpdate = false;
      outline.matrix.copy(mesh.matrix).multiply(
        new THREE.Matrix4().makeScale(OUTLINE_SCALE, OUTLINE_SCALE, OUTLINE_SCALE),
      );
      outline.name = `outline:${mesh.name}`;
      this.outlines.add(outline);
    }
  }

  get pickableIds(): string[] {
    return this.modelGroup.children.map((o) => o.name);
  }

  get outlinedIds(): string[] {
    return this.outlines.children.map((o) => o.name.replace(/^outline:/, ''));
  }

  /** Raycast at normalized device coords; returns the hit component id. */
  pick(ndcX: number, ndcY: number): string | null {
    this.scene.updateMatrixWorld();
    this.raycaster.setFromCamera(new THREE.Vector2(ndcX, ndcY), this.camera);
    const hits = this.raycaster.intersectObjects(this.modelGroup.children, false);
    return hits.length > 0 ? componentOf(hits[0].object.name) : null;
  }

  /** Screen-space center of an entry's bounding box, for tests and lab UX. */
  ndcCenterOf(entryId: string): [number, number] | null {
    const obj = this.modelGroup.children.find((o) => o.name === entryId);
    if (!obj) return null;
    this.scene.updateMatrixWorld();
    const box = new THREE.Box3().setFromObject(obj);
    const center = box.getCenter(new THREE.Vector3()).project(this.camera);
    return [center.x, center.y];
  }

  attachCanvas(canvas: HTMLCanvasElement): void {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
  }

  resize(width: number, height: number): void {
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
    this.renderer?.setSize(width, height, false);
  }

  draw(): void {
    this.renderer?.render(this.scene, this.camera);
  }

  private disposeGroup(group: THREE.Group): void {
    for (const obj of [...group.children]) {
      const mesh = obj as THREE.Mesh;
      // outline meshes share the model's geometry; only dispose it once
      if (!mesh.name.startsWith('outline:')) mesh.geometry.dispose();
      (mesh.material as THREE.Material).dispose();
      group.remove(obj);
    }
  }
}
