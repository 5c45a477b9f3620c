/** Wire types for the cadscript HTTP JSON API.
 *
 * Field names mirror the server payloads exactly. The client treats every
 * value as server-authoritative: it never computes geometry, volumes or
 * sunlit hours on its own, it only arranges what the service sent.
 */

export type ObjectState = "draft" | "baked";
export type CommandMode = "dsl" | "nl";
export type ExportFormat = "obj" | "stl" | "macro";

export interface SessionInfo {
  session_id: string;
  seed: number;
}

/** One scene object: an indexed triangle mesh plus its bounding box. */
export interface SceneObject {
  id: string;
  state: ObjectState;
  vertices: [number, number, number][];
  triangles: [number, number, number][];
  aabb: { lo: [number, number, number]; hi: [number, number, number] };
}

export interface SceneDocument {
  version: number;
  seed: number;
  objects: SceneObject[];
  insolation?: InsolationPayload;
}

/** GET /sessions/{id}/scene reply; `revision` gates stale fetches. */
export interface SceneEnvelope {
  revision: number;
  scene: SceneDocument;
}

/** One round of the NL repair loop, echoed back on translation failure. */
export interface RepairAttempt {
  candidate: string;
  errors: string[];
}

/** Reply to POST commands / undo / sun-study. A failed batch arrives with
 *  HTTP 200, `error` set, and the revision unchanged. */
export interface CommandResponse {
  created: string[];
  deleted: string[];
  baked: string[];
  messages: string[];
  error: string | null;
  revision: number;
  attempts?: RepairAttempt[];
  insolation?: InsolationPayload;
}

export interface HistoryEntry {
  source: string;
  created: string[];
  deleted: string[];
  baked: string[];
  messages: string[];
}

export interface HistoryResponse {
  revision: number;
  entries: HistoryEntry[];
}

/** Sunlit-hours grid. `sunlit_hours[iy][ix]` belongs to the cell whose
 *  centre is (origin[0] + (ix + 0.5) * cell_size_m,
 *             origin[1] + (iy + 0.5) * cell_size_m). */
export interface InsolationPayload {
  origin: [number, number];
  cell_size_m: number;
  nx: number;
  ny: number;
  sunlit_hours: number[][];
  occupied: boolean[][];
  daylight_hours: number;
  interval_min: number;
  date: string;
  latitude_deg: number;
  longitude_deg: number;
}

/** Body of POST /sessions/{id}/sun-study; omitted fields use server
 *  defaults (Derby, June 21 of the current year, 10 min, 1 m cells). */
export interface SunStudyRequest {
  latitude_deg?: number;
  longitude_deg?: number;
  date?: string;
  interval_min?: number;
  cell_size_m?: number;
}
