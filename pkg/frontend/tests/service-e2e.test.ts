/** End-to-end run against the real HTTP service.
 *
 * Spawns the Python server (offline translation, fixed seed), drives it
 * through the same client/controller the page uses, and checks the three
 * behaviours the console exists for: a submitted box shows up as exactly
 * one draft object and turns opaque on bake, heatmap tooltip values are
 * byte-equal to the service's grid data, and a stale scene fetch is
 * discarded instead of rolling the viewer backwards.
 */

import { spawn, type ChildProcess } from "node:child_process";
import * as THREE from "three";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import { legendStrings, rawHoursAt, tooltipText } from "../src/heatmap.js";
import { buildObjectsGroup } from "../src/scene-build.js";
import { rawNumberMatrix } from "../src/rawjson.js";
import { deferred, type Deferred } from "./helpers.js";

const PORT = 18100 + (process.pid % 1800);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let serverLog = "";

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "cadscript.cli", "--listen", `127.0.0.1:${PORT}`, "--offline", "--seed", "17"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stdout?.on("data", (chunk) => (serverLog += String(chunk)));
  server.stderr?.on("data", (chunk) => (serverLog += String(chunk)));
  const deadline = Date.now() + 45_000;
  for (;;) {
    try {
      await fetch(`${BASE}/sessions/probe`); // any HTTP reply means it is up
      return;
    } catch {
      if (server.exitCode !== null) throw new Error(`service exited:\n${serverLog}`);
      if (Date.now() > deadline) throw new Error(`service never came up:\n${serverLog}`);
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
}, 60_000);

afterAll(() => {
  server?.kill();
});

describe("command round trip", () => {
  it("shows one draft object for box 1 1 1, opaque after bake", async () => {
    const c = new SessionController(new ApiClient(BASE));
    await c.open();
    expect(c.seed).toBe(17);
    expect(c.scene?.objects).toEqual([]);

    const resp = await c.submit("box 1 1 1", "dsl");
    expect(resp.error).toBeNull();
    expect(resp.created).toHaveLength(1);
    expect(c.scene?.objects).toHaveLength(1);

    let group = buildObjectsGroup(c.scene!);
    expect(group.children).toHaveLength(1);
    let material = (group.children[0] as THREE.Mesh).material as THREE.MeshLambertMaterial;
    expect(material.transparent).toBe(true);
    expect(material.opacity).toBeLessThan(1.0);

    await c.submit(`bake ${resp.created[0]}`, "dsl");
    expect(c.scene?.objects).toHaveLength(1);
    expect(c.scene?.objects[0].state).toBe("baked");
    group = buildObjectsGroup(c.scene!);
    expect(group.children).toHaveLength(1);
    material = (group.children[0] as THREE.Mesh).material as THREE.MeshLambertMaterial;
    expect(material.transparent).toBe(false);
    expect(material.opacity).toBe(1.0);
  }, 30_000);

  it("reports offline translation failures with the attempt log", async () => {
    const c = new SessionController(new ApiClient(BASE));
    await c.open();
    const errors: string[] = [];
    c.onError.on((message) => errors.push(message));

    const resp = await c.submit("sculpt me a swan", "nl");
    expect(resp.error).toContain("translation failed");
    expect(resp.attempts?.[0].errors[0]).toContain("no offline rule matches");
    expect(errors).toHaveLength(1);
    expect(c.revision).toBe(0);
  }, 30_000);
});

describe("sun study", () => {
  it("tooltip and legend values are byte-equal to the service's grid", async () => {
    const c = new SessionController(new ApiClient(BASE));
    await c.open();
    await c.submit("box 2 2 8 name tower", "dsl");

    const resp = await c.runSunStudy({
      date: "2026-06-21",
      interval_min: 60,
      cell_size_m: 2.0,
    });
    expect(resp.error).toBeNull();
    const study = c.study!;
    const payload = study.payload;

    // Every tooltip shows the literal the service sent, never a re-render.
    const raw = await fetch(`${BASE}/sessions/${c.sessionId}/scene`);
    const sceneBody = await raw.text();
    const sceneHours = rawNumberMatrix(sceneBody, "sunlit_hours");
    expect(sceneHours).toHaveLength(payload.ny);
    for (let iy = 0; iy < payload.ny; iy++) {
      for (let ix = 0; ix < payload.nx; ix++) {
        const literal = rawHoursAt(study, ix, iy);
        expect(literal).toBe(sceneHours[iy][ix]);
        expect(tooltipText(study, ix, iy)).toContain(`: ${literal} h sunlit`);
      }
    }

    const legend = legendStrings(study);
    expect(sceneBody).toContain(legend.min);
    expect(sceneBody).toContain(legend.max);

    // The tower footprint is hatched and flagged in the tooltip.
    const footprint = tooltipText(study, 8, 8);
    expect(footprint).toContain("(occupied)");
  }, 60_000);
});

describe("revision safety", () => {
  it("discards a scene response that arrives after a newer revision", async () => {
    let hold: Deferred<void> | null = null;
    const gatedFetch: FetchLike = async (url, init) => {
      const response = await fetch(url, init);
      // Deliver the (already received) response only once the gate opens,
      // simulating a slow network handing over a stale revision.
      if (hold !== null && (init?.method ?? "GET") === "GET" && url.endsWith("/scene")) {
        const gate = hold;
        hold = null;
        await gate.promise;
      }
      return response;
    };

    const c = new SessionController(new ApiClient(BASE, gatedFetch));
    await c.open();
    const shown: number[] = [];
    const dropped: number[] = [];
    c.onScene.on((envelope) => shown.push(envelope.revision));
    c.onDiscard.on((revision) => dropped.push(revision));

    const gate = deferred<void>();
    hold = gate;
    const stale = c.refreshScene(); // revision 0 response, held back
    await c.submit("box 1 1 1", "dsl"); // advances the server to revision 1
    expect(c.revision).toBe(1);

    gate.resolve();
    expect(await stale).toBe(false);
    expect(c.revision).toBe(1);
    expect(c.scene?.objects).toHaveLength(1);
    expect(shown).toEqual([1]);
    expect(dropped).toEqual([0]);
  }, 30_000);
});
