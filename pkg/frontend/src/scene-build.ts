/** three.js object-graph assembly from server documents.
 *
 * Pure construction, no renderer: the viewer swaps these groups into its
 * scene. Draft objects are semi-transparent, baked objects opaque, so a
 * bake is visible at a glance. The insolation overlay is one cell-coloured
 * triangle mesh slightly above the ground plus hatch lines over occupied
 * cells.
 */

import * as THREE from "three";
import type { InsolationPayload, ObjectState, SceneDocument, SceneObject } from "./types.js";
import { cellColor, hoursScale } from "./heatmap.js";

export const DRAFT_OPACITY = 0.45;
const DRAFT_COLOR = 0x7fb3d5;
const BAKED_COLOR = 0xcfc8b0;
const HATCH_COLOR = 0x14161c;
const OVERLAY_Z = 0.02;
const HATCH_Z = 0.04;

export function materialFor(state: ObjectState): THREE.MeshLambertMaterial {
  const baked = state === "baked";
  return new THREE.MeshLambertMaterial({
    color: baked ? BAKED_COLOR : DRAFT_COLOR,
    transparent: !baked,
    opacity: baked ? 1.0 : DRAFT_OPACITY,
    flatShading: true,
  });
}

export function buildObjectMesh(obj: SceneObject): THREE.Mesh {
  const positions = new Float32Array(obj.vertices.length * 3);
  for (let i = 0; i < obj.vertices.length; i++) {
    positions[3 * i] = obj.vertices[i][0];
    positions[3 * i + 1] = obj.vertices[i][1];
    positions[3 * i + 2] = obj.vertices[i][2];
  }
  const index = new Uint32Array(obj.triangles.length * 3);
  for (let i = 0; i < obj.triangles.length; i++) {
    index[3 * i] = obj.triangles[i][0];
    index[3 * i + 1] = obj.triangles[i][1];
    index[3 * i + 2] = obj.triangles[i][2];
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  geometry.setIndex(new THREE.BufferAttribute(index, 1));
  geometry.computeVertexNormals();

  const mesh = new THREE.Mesh(geometry, materialFor(obj.state));
  mesh.name = obj.id;
  mesh.userData.state = obj.state;
  mesh.userData.triangles = obj.triangles.length;
  return mesh;
}

/** One child mesh per scene object, named after its object id. */
export function buildObjectsGroup(doc: SceneDocument): THREE.Group {
  const group = new THREE.Group();
  group.name = "objects";
  for (const obj of doc.objects) group.add(buildObjectMesh(obj));
  return group;
}

/** Combined bounding box of all objects, or null for an empty document. */
export function sceneBounds(doc: SceneDocument): THREE.Box3 | null {
  if (doc.objects.length === 0) return null;
  const box = new THREE.Box3();
  for (const obj of doc.objects) {
    box.expandByPoint(new THREE.Vector3(...obj.aabb.lo));
    box.expandByPoint(new THREE.Vector3(...obj.aabb.hi));
  }
  return box;
}

function cellQuad(
  positions: number[],
  colors: number[],
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  rgb: [number, number, number],
): void {
  const quad = [x0, y0, x1, y0, x1, y1, x0, y0, x1, y1, x0, y1];
  for (let i = 0; i < 6; i++) {
    positions.push(quad[2 * i], quad[2 * i + 1], OVERLAY_Z);
    colors.push(rgb[0], rgb[1], rgb[2]);
  }
}

/** Heatmap overlay: child "cells" (two vertex-coloured triangles per cell)
 *  and child "hatch" (three diagonal strokes per occupied cell). */
export function buildHeatmapGroup(p: InsolationPayload): THREE.Group {
  const scale = hoursScale(p);
  const positions: number[] = [];
  const colors: number[] = [];
  const hatch: number[] = [];
  const [ox, oy] = p.origin;
  const s = p.cell_size_m;

  for (let iy = 0; iy < p.ny; iy++) {
    for (let ix = 0; ix < p.nx; ix++) {
      const x0 = ox + ix * s;
      const y0 = oy + iy * s;
      cellQuad(positions, colors, x0, y0, x0 + s, y0 + s, cellColor(p, scale, ix, iy));
      if (p.occupied[iy][ix]) {
        for (const f of [0.25, 0.5, 0.75]) {
          hatch.push(x0 + f * s, y0, HATCH_Z, x0, y0 + f * s, HATCH_Z);
          hatch.push(x0 + s, y0 + f * s, HATCH_Z, x0 + f * s, y0 + s, HATCH_Z);
        }
      }
    }
  }

  const cellGeometry = new THREE.BufferGeometry();
  cellGeometry.setAttribute("position", new THREE.Float32BufferAttribute(positions, 3));
  cellGeometry.setAttribute("color", new THREE.Float32BufferAttribute(colors, 3));
  const cells = new THREE.Mesh(
    cellGeometry,
    new THREE.MeshBasicMaterial({ vertexColors: true, side: THREE.DoubleSide }),
  );
  cells.name = "cells";

  const hatchGeometry = new THREE.BufferGeometry();
  hatchGeometry.setAttribute("position", new THREE.Float32BufferAttribute(hatch, 3));
  const strokes = new THREE.LineSegments(
    hatchGeometry,
    new THREE.LineBasicMaterial({ color: HATCH_COLOR }),
  );
  strokes.name = "hatch";

  const group = new THREE.Group();
  group.name = "insolation";
  group.userData.payload = p;
  group.add(cells);
  group.add(strokes);
  return group;
}
