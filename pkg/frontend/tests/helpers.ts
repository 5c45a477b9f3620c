/** Shared test helpers: fixture loading and a scripted fetch stub.
 *
 * Fixtures are actual response bytes captured from the service
 * (tools/capture-fixtures.py), so byte-level assertions test the real
 * wire format.
 */

import { readFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(path.join(FIXTURES, name), "utf8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (error: unknown) => void;
}

/** Promise with external resolve, for ordering fetch replies in tests. */
export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (error: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

export function jsonResponse(body: string | unknown, status = 200): Response {
  const text = typeof body === "string" ? body : JSON.stringify(body);
  return new Response(text, {
    status,
    headers: { "content-type": "application/json" },
  });
}

type Handler = (body: unknown) => Response | Promise<Response>;

/** Scripted fetch keyed by "METHOD path". Multiple handlers for one key
 *  are consumed in order, with the last one staying in place; every call
 *  is recorded for assertions on what went over the wire. */
export class FakeService {
  readonly calls: Array<{ method: string; path: string; body: unknown }> = [];
  private readonly handlers = new Map<string, Handler[]>();

  on(method: string, path: string, handler: Handler): this {
    const key = `${method} ${path}`;
    const queue = this.handlers.get(key) ?? [];
    queue.push(handler);
    this.handlers.set(key, queue);
    return this;
  }

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const urlPath = url.replace(/^https?:\/\/[^/]+/, "");
    const body =
      typeof init?.body === "string" && init.body !== "" ? JSON.parse(init.body) : null;
    this.calls.push({ method, path: urlPath, body });
    const queue = this.handlers.get(`${method} ${urlPath}`);
    if (queue === undefined || queue.length === 0) {
      throw new Error(`no handler for ${method} ${urlPath}`);
    }
    const handler = queue.length > 1 ? queue.shift()! : queue[0];
    return handler(body);
  };
}
