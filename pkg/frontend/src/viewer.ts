/** WebGL viewport: orbit camera over a z-up scene with a ground grid.
 *
 * The viewer only swaps in groups built by scene-build and answers pick
 * queries; it holds no model state of its own.
 */

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";
import { cellAt } from "./heatmap.js";
import { buildHeatmapGroup, buildObjectsGroup, sceneBounds } from "./scene-build.js";
import type { InsolationPayload, ObjectState, SceneDocument } from "./types.js";

export interface ObjectPick {
  id: string;
  state: ObjectState;
  triangles: number;
}

export interface CellPick {
  ix: number;
  iy: number;
}

export class Viewer {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly camera: THREE.PerspectiveCamera;
  private readonly controls: OrbitControls;
  private readonly scene = new THREE.Scene();
  private readonly raycaster = new THREE.Raycaster();
  private readonly pointer = new THREE.Vector2();
  private objects = new THREE.Group();
  private overlay: THREE.Group | null = null;
  private framed = false;

  constructor(private readonly container: HTMLElement) {
    this.scene.background = new THREE.Color(0x10131a);
    this.scene.add(new THREE.HemisphereLight(0xdde4f0, 0x303438, 1.1));
    const key = new THREE.DirectionalLight(0xffffff, 1.6);
    key.position.set(12, -8, 18);
    this.scene.add(key);

    const grid = new THREE.GridHelper(40, 40, 0x3a4152, 0x262c3a);
    grid.rotation.x = Math.PI / 2; // GridHelper spans XZ; the ground is XY
    this.scene.add(grid);
    this.scene.add(this.objects);

    this.camera = new THREE.PerspectiveCamera(50, 1, 0.05, 2000);
    this.camera.up.set(0, 0, 1);
    this.camera.position.set(8, -10, 7);

    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    container.appendChild(this.renderer.domElement);

    this.controls = new OrbitControls(this.camera, this.renderer.domElement);
    this.controls.enableDamping = true;
    this.controls.dampingFactor = 0.1;

    this.resize();
    window.addEventListener("resize", () => this.resize());
    this.renderer.setAnimationLoop(() => {
      this.controls.update();
      this.renderer.render(this.scene, this.camera);
    });
  }

  private resize(): void {
    const w = this.container.clientWidth || 1;
    const h = this.container.clientHeight || 1;
    this.renderer.setSize(w, h);
    this.camera.aspect = w / h;
    this.camera.updateProjectionMatrix();
  }

  setScene(doc: SceneDocument): void {
    this.scene.remove(this.objects);
    dispose(this.objects);
    this.objects = buildObjectsGroup(doc);
    this.scene.add(this.objects);
    if (!this.framed) {
      const box = sceneBounds(doc);
      if (box !== null) {
        this.frame(box);
        this.framed = true;
      }
    }
  }

  setOverlay(payload: InsolationPayload | null): void {
    if (this.overlay !== null) {
      this.scene.remove(this.overlay);
      dispose(this.overlay);
      this.overlay = null;
    }
    if (payload !== null) {
      this.overlay = buildHeatmapGroup(payload);
      this.scene.add(this.overlay);
    }
  }

  frame(box: THREE.Box3): void {
    const center = box.getCenter(new THREE.Vector3());
    const ext = Math.max(box.getSize(new THREE.Vector3()).length(), 2);
    this.controls.target.copy(center);
    this.camera.position.copy(
      center.clone().add(new THREE.Vector3(0.8, -1.0, 0.7).normalize().multiplyScalar(ext * 1.8)),
    );
    this.controls.update();
  }

  private castFrom(event: MouseEvent): void {
    const rect = this.renderer.domElement.getBoundingClientRect();
    this.pointer.x = ((event.clientX - rect.left) / rect.width) * 2 - 1;
    this.pointer.y = -((event.clientY - rect.top) / rect.height) * 2 + 1;
    this.raycaster.setFromCamera(this.pointer, this.camera);
  }

  pickObject(event: MouseEvent): ObjectPick | null {
    this.castFrom(event);
    const hits = this.raycaster.intersectObjects(this.objects.children, false);
    if (hits.length === 0) return null;
    const mesh = hits[0].object;
    return {
      id: mesh.name,
      state: mesh.userData.state as ObjectState,
      triangles: mesh.userData.triangles as number,
    };
  }

  /** Heatmap cell under the cursor, resolved from the ray hit point. */
  pickCell(event: MouseEvent): CellPick | null {
    if (this.overlay === null) return null;
    const cells = this.overlay.getObjectByName("cells");
    if (cells === undefined) return null;
    this.castFrom(event);
    const hits = this.raycaster.intersectObject(cells, false);
    if (hits.length === 0) return null;
    const payload = this.overlay.userData.payload as InsolationPayload;
    return cellAt(payload, hits[0].point.x, hits[0].point.y);
  }
}

function dispose(group: THREE.Group): void {
  group.traverse((node) => {
    const mesh = node as Partial<THREE.Mesh>;
    if (mesh.geometry !== undefined) mesh.geometry.dispose();
    if (mesh.material !== undefined) {
      const materials = Array.isArray(mesh.material) ? mesh.material : [mesh.material];
      for (const material of materials) material.dispose();
    }
  });
}
